// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "dmotto/audit.hpp"
#include "dmotto/bounds.hpp"
#include "dmotto/local.hpp"
#include "dmotto/report.hpp"
#include "dmotto/spectrum.hpp"
#include "dmotto/sweep.hpp"
#include "oracle/oracle.hpp"
#include "oracle/reference_values.hpp"

using namespace dmotto;

namespace {

int failures = 0;

void verdict(int id, const char* name, bool ok, const std::string& detail) {
    std::printf("%s  %2d  %-26s %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
    if (!ok) ++failures;
}

std::string num(double v) { return format_number(v); }

void spectrum_oracle() {
    std::mt19937_64 rng(20261015);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    double worst = 0.0;
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < 1000; ++i) {
        const SystemParams p{u(rng), u(rng), u(rng)};
        const Spectrum a = analytic_spectrum(p);
        const Spectrum n = numeric_spectrum(build_hamiltonian(p));
        for (std::size_t k = 0; k < 4; ++k) worst = std::max(worst, std::abs(a.energies[k] - n.energies[k]));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    verdict(1, "spectrum-oracle", worst <= 1e-10 && secs < 1.0,
            "max |analytic - numeric| = " + num(worst) + " over 1000 draws in " + num(secs) + " s");
}

void first_law() {
    double worst = 0.0;
    std::size_t n = 0;
    for (FigureId id : {FigureId::Fig1, FigureId::Fig4}) {
        for (const auto& g : expand(figure_preset(id))) {
            const CycleResult r = run_cycle(g.protocol, g.baths);
            worst = std::max(worst, std::abs(r.W - (r.Q_hot + r.Q_cold)));
            ++n;
        }
    }
    verdict(2, "first-law", worst <= 1e-12 && n == 3721 + 401,
            "max |W - (Q_hot + Q_cold)| = " + num(worst) + " on " + std::to_string(n) + " points");
}

void second_law() {
    std::size_t violations = 0, engines = 0;
    double max_eta = 0.0;
    for (FigureId id : {FigureId::Fig1, FigureId::Fig2, FigureId::Fig3, FigureId::Fig4, FigureId::Fig5}) {
        const auto grid = expand(figure_preset(id));
        violations += second_law_scan(grid, 2).size();
        for (const auto& g : grid) {
            const CycleResult r = run_cycle(g.protocol, g.baths);
            if (r.mode != Mode::Engine) continue;
            ++engines;
            max_eta = std::max(max_eta, *r.eta);
        }
    }
    verdict(3, "second-law", violations == 0 && max_eta <= 0.5 + 1e-12,
            std::to_string(violations) + " violations; max eta " + num(max_eta) + " over " +
                std::to_string(engines) + " engine points (Carnot 0.5)");
}

void spot_values() {
    const double c = carnot(2.0, 1.0);
    const double l = local_efficiency_reference(8.0, 6.0);
    const double ub = eta_upper_bound(8.0, 6.0, 1.0, 0.0);
    verdict(4, "closed-form-spot-values", c == 0.5 && l == 0.25 && std::abs(ub - 0.266667) <= 1e-6,
            "carnot " + num(c) + ", eta_local " + num(l) + ", eta_ub " + num(ub));
}

void work_additivity() {
    SweepSpec s = figure_preset(FigureId::Fig5);
    s.x.count = 101;
    double worst = 0.0;
    for (const auto& g : expand(s)) {
        const CycleResult r = run_cycle(g.protocol, g.baths);
        const LocalCycleResult w = local_cycle(g.protocol, g.baths);
        worst = std::max(worst, std::abs(r.W - 2.0 * w.w));
    }
    verdict(5, "work-additivity", worst <= 1e-12, "max |W - 2w| = " + num(worst) + " on 101 points");
}

void narrative_at_zero() {
    const CycleResult r = run_cycle(VaryField{1.0, 0.0, 8.0, 6.0}, {2.0, 1.0});
    const double o = static_cast<double>(oracle::vary_field(1, 0, 8, 6, 2, 1).W / oracle::vary_field(1, 0, 8, 6, 2, 1).Q_hot);
    const double eta = r.eta.value_or(NAN);
    const double ub = eta_upper_bound(8.0, 6.0, 1.0, 0.0);
    const bool inside = eta > 0.25 && eta < ub;
    const double rel_oracle = std::abs(eta - o) / o;
    const double rel_quoted = std::abs(eta - 0.2573) / 0.2573;
    verdict(6, "eta-between-bounds-at-D0", inside && rel_oracle <= 1e-4 && rel_quoted <= 1e-4,
            "0.25 < eta " + num(eta) + " < " + num(ub) + "; rel. dev. from oracle " + num(rel_oracle) +
                ", from 0.2573 " + num(rel_quoted));
}

void fig4_transition() {
    const auto grid = expand(figure_preset(FigureId::Fig4));
    std::vector<double> w;
    for (const auto& g : grid) w.push_back(run_cycle(g.protocol, g.baths).W);
    int changes = 0;
    std::size_t at = 0;
    for (std::size_t i = 1; i < w.size(); ++i)
        if ((w[i - 1] > 0.0) != (w[i] > 0.0)) {
            ++changes;
            at = i;
        }
    double root = NAN;
    if (changes == 1) {
        const auto W = [](double D) { return run_cycle(VaryField{1.0, D, 8.0, 6.0}, {2.0, 1.0}).W; };
        double lo = std::get<VaryField>(grid[at - 1].protocol).D;
        double hi = std::get<VaryField>(grid[at].protocol).D;
        for (int k = 0; k < 200; ++k) {
            const double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;
            (W(mid) > 0.0 ? lo : hi) = mid;
        }
        root = 0.5 * (lo + hi);
    }
    const double gap = std::abs(root - reference::kWSignChange);
    verdict(7, "fig4-single-sign-change", changes == 1 && gap <= 1e-9,
            std::to_string(changes) + " sign change(s); D* = " + num(root) + " (locked " +
                num(reference::kWSignChange) + ", gap " + num(gap) + ")");
}

void opposition() {
    const VaryField p{10.0, 0.0, 1.0, 2.0};
    const BathSpec b{2.0, 1.0};
    const CycleResult r = run_cycle(p, b);
    const DirectionFlags f = heat_direction_report(p, b);
    const double o = static_cast<double>(oracle::vary_field(10, 0, 1, 2, 2, 1).W);
    const double rel = std::abs(r.W - o) / o;
    const double rel_quoted = std::abs(r.W - 0.0260844) / 0.0260844;
    const bool signs = f.q1 == Sign::Negative && f.q2 == Sign::Positive && f.Q_hot == Sign::Positive &&
                       f.Q_cold == Sign::Negative;
    verdict(8, "local-global-opposition",
            r.mode == Mode::Engine && rel <= 1e-6 && signs && f.opposed == true,
            std::string(to_string(r.mode)) + ", W " + num(r.W) + " (oracle " + num(o) + ", rel " + num(rel) +
                "; quoted 0.0260844 differs by rel " + num(rel_quoted) + "), signs " + sign_char(f.q1) +
                sign_char(f.q2) + sign_char(f.Q_hot) + sign_char(f.Q_cold) + ", opposed " +
                (f.opposed.value_or(false) ? "true" : "false"));
}

void idle_cases() {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    std::size_t nonzero = 0;
    for (int i = 0; i < 200; ++i) {
        const double J = u(rng), B = u(rng), D = u(rng);
        const BathSpec b{std::abs(u(rng)) + 1.0, std::abs(u(rng)) + 0.1};
        nonzero += run_cycle(VaryDM{J, B, D, D}, b).W != 0.0;
        nonzero += run_cycle(VaryField{J, D, B, B}, b).W != 0.0;
    }
    verdict(9, "idle-equal-parameters", nonzero == 0,
            std::to_string(nonzero) + " of 400 equal-parameter cycles with W != 0");
}

void audit_completeness() {
    RunMetadata meta;
    meta.version = std::string(library_version());
    AuditConfig one;
    AuditConfig four;
    four.workers = 4;
    const auto a = full_audit(one);
    const auto b = full_audit(four);
    const std::string ja = to_json_report(meta, nullptr, a);
    const std::string jb = to_json_report(meta, nullptr, b);
    const std::string jc = to_json_report(meta, nullptr, full_audit(one));

    bool c3_ok = false;
    std::string c2 = "missing";
    std::string verdicts;
    for (const auto& r : a) {
        verdicts += std::string(verdicts.empty() ? "" : " ") + std::string(to_string(r.id)) + "=" +
                    std::string(to_string(r.verdict));
        if (r.id == ClaimId::C2) c2 = std::string(to_string(r.verdict));
        if (r.id == ClaimId::C3) {
            c3_ok = !r.equations.empty();
            for (const auto& e : r.equations) c3_ok = c3_ok && e.points > 0 && std::isfinite(e.identity_residual);
        }
    }
    const bool deterministic = ja == jb && ja == jc;
    verdict(10, "audit-completeness", a.size() == 8 && c3_ok && c2 != "missing" && deterministic,
            std::to_string(a.size()) + " reports, byte-identical " + (deterministic ? "yes" : "no") + "; " +
                verdicts);
}

}  // namespace

int main() {
    spectrum_oracle();
    first_law();
    second_law();
    spot_values();
    work_additivity();
    narrative_at_zero();
    fig4_transition();
    opposition();
    idle_cases();
    audit_completeness();
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
