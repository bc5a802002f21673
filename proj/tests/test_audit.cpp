#include <doctest.h>

#include <algorithm>
#include <set>

#include "dmotto/audit.hpp"
#include "dmotto/error.hpp"

using namespace dmotto;

namespace {

bool notes_mention_point(const ClaimReport& r) {
    return std::any_of(r.notes.begin(), r.notes.end(),
                       [](const std::string& n) { return n.find("T_hot=") != std::string::npos; });
}

}  // namespace

TEST_SUITE("audit") {

TEST_CASE("claim ids") {
    CHECK(parse_claim("C5") == ClaimId::C5);
    CHECK(to_string(ClaimId::C8) == "C8");
    CHECK_THROWS_AS(parse_claim("C9"), UnknownClaim);
    CHECK_THROWS_AS(audit_claim(static_cast<ClaimId>(42), {}), UnknownClaim);
    CHECK(to_string(Verdict::HoldsUnderRelabeling) == "HoldsUnderRelabeling");
}

TEST_CASE("default audit: eight reports in id order") {
    const auto reports = full_audit(AuditConfig{});
    REQUIRE(reports.size() == 8);
    for (std::size_t i = 0; i < 8; ++i) CHECK(reports[i].id == kAllClaims[i]);
    for (const auto& r : reports) {
        CHECK_FALSE(r.sample_points.empty());
        CHECK(r.evaluated_points > 0);
        CHECK_FALSE(r.description.empty());
        if (r.verdict == Verdict::Fails || r.verdict == Verdict::HoldsUnderRelabeling) {
            CHECK(r.worst_point.has_value());
            CHECK(notes_mention_point(r));
        }
    }
}

TEST_CASE("restricted config yields one report") {
    AuditConfig c;
    c.claims = {ClaimId::C4};
    const auto reports = full_audit(c);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].id == ClaimId::C4);
}

TEST_CASE("empty sweep is inconclusive") {
    AuditConfig c;
    c.claims = {ClaimId::C6};
    c.sweeps[ClaimId::C6] = {};
    const auto reports = full_audit(c);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].verdict == Verdict::Inconclusive);
    CHECK(reports[0].evaluated_points == 0);
}

TEST_CASE("C7 holds on the fig1 grid") {
    const auto r = audit_claim(ClaimId::C7, default_sweep(ClaimId::C7));
    CHECK(r.verdict == Verdict::Holds);
    CHECK(r.max_discrepancy == 0.0);
}

TEST_CASE("C8 at the interaction-free reference point") {
    const auto r = audit_claim(ClaimId::C8, default_sweep(ClaimId::C8));
    CHECK(r.verdict == Verdict::Holds);
    REQUIRE(r.canonical_values.size() == 3);
    CHECK(r.canonical_values[0].value == doctest::Approx(0.2573).epsilon(1e-4));
    CHECK(r.canonical_values[1].value == 0.25);
    CHECK(r.canonical_values[2].value == doctest::Approx(0.266667).epsilon(1e-6));
}

TEST_CASE("C2 pairs J with -J") {
    const std::vector<GridPoint> p{{VaryDM{1.0, 4.0, 0.0, 2.0}, {2.0, 1.0}}};
    const auto r = audit_claim(ClaimId::C2, p);
    CHECK(r.evaluated_points == 1);
    CHECK(r.verdict == Verdict::Holds);
    CHECK(r.canonical_values[0].value == doctest::Approx(0.018828).epsilon(1e-5));
    CHECK(r.canonical_values[1].value == doctest::Approx(r.canonical_values[0].value).epsilon(1e-12));
}

TEST_CASE("C1 reports a failing point when the premise breaks") {
    // At weak field the doublet dominates and the sign rule no longer holds.
    std::vector<GridPoint> pts;
    for (double d1 : {0.0, 1.0, 2.0})
        for (double d2 : {0.0, 1.0, 2.0}) pts.push_back({VaryDM{1.0, 0.5, d1, d2}, {2.0, 1.0}});
    const auto r = audit_claim(ClaimId::C1, pts);
    CHECK(r.verdict == Verdict::Fails);
    CHECK(r.worst_point.has_value());
    CHECK(notes_mention_point(r));
}

TEST_CASE("C3 searches all label maps per equation") {
    const auto r = audit_claim(ClaimId::C3, default_sweep(ClaimId::C3));
    CHECK(r.verdict == Verdict::HoldsUnderRelabeling);
    std::set<std::string> names;
    for (const auto& e : r.equations) {
        names.insert(e.name);
        CHECK(e.points > 0);
        CHECK(e.best_residual <= e.identity_residual);
        CHECK(e.best_residual <= kEqualityTolerance);
    }
    for (const char* n : {"heat_hot_vary_dm", "work_vary_dm", "work_vary_field", "density_matrix",
                          "reduced_density", "local_heat_hot", "local_work"})
        CHECK(names.count(n) == 1);
    const auto work = std::find_if(r.equations.begin(), r.equations.end(),
                                   [](const EquationCheck& e) { return e.name == "work_vary_dm"; });
    CHECK(work->identity_residual > 1e-3);
}

TEST_CASE("C5 compares the printed candidate with the numeric root") {
    const auto r = audit_claim(ClaimId::C5, default_sweep(ClaimId::C5));
    CHECK(r.verdict == Verdict::Fails);
    CHECK(r.max_discrepancy == doctest::Approx(255.0 - 7.936552348235223).epsilon(1e-9));
}

TEST_CASE("C4 and C6 hold on their default sweeps") {
    CHECK(audit_claim(ClaimId::C4, default_sweep(ClaimId::C4)).verdict == Verdict::Holds);
    const auto c6 = audit_claim(ClaimId::C6, default_sweep(ClaimId::C6));
    CHECK(c6.verdict == Verdict::Holds);
    CHECK(c6.evaluated_points == 792);
}

TEST_CASE("audit does not mutate its input and is repeatable") {
    const auto sweep = default_sweep(ClaimId::C3);
    const auto copy = sweep;
    const auto a = audit_claim(ClaimId::C3, sweep);
    const auto b = audit_claim(ClaimId::C3, sweep);
    CHECK(sweep == copy);
    CHECK(a.max_discrepancy == b.max_discrepancy);
    CHECK(a.notes == b.notes);
}

}
