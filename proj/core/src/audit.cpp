#include "dmotto/audit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <tuple>

#include "dmotto/bounds.hpp"
#include "dmotto/error.hpp"
#include "dmotto/local.hpp"
#include "dmotto/parallel.hpp"
#include "dmotto/sweep.hpp"

namespace dmotto {

namespace {

std::string describe(const GridPoint& g) {
    std::ostringstream os;
    os.precision(17);
    if (const auto* p = std::get_if<VaryDM>(&g.protocol))
        os << "vary-dm J=" << p->J << " B=" << p->B << " D_hot=" << p->D_hot << " D_cold=" << p->D_cold;
    else if (const auto* p = std::get_if<VaryField>(&g.protocol))
        os << "vary-field J=" << p->J << " D=" << p->D << " B_hot=" << p->B_hot << " B_cold=" << p->B_cold;
    os << " T_hot=" << g.baths.T_hot << " T_cold=" << g.baths.T_cold;
    return os.str();
}

std::string describe(const printed::LabelMap& m) {
    std::ostringstream os;
    for (std::size_t k = 0; k < m.size(); ++k) os << (k ? " " : "") << k + 1 << "->L" << m[k] + 1;
    return os.str();
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

// Tracks the largest discrepancy seen and where it happened.
struct Worst {
    double value = 0.0;
    std::optional<GridPoint> point;

    void offer(double v, const GridPoint& g) {
        if (!point || v > value) {
            value = v;
            point = g;
        }
    }
};

void finish(ClaimReport& r, const std::optional<GridPoint>& first, const Worst& worst, bool failed) {
    if (first) r.sample_points.push_back(*first);
    if (failed && worst.point) {
        r.worst_point = worst.point;
        r.max_discrepancy = worst.value;
        if (!first || !(*worst.point == *first)) r.sample_points.push_back(*worst.point);
        r.notes.push_back("largest discrepancy " + fmt(worst.value) + " at " + describe(*worst.point));
    }
}

ClaimReport blank(ClaimId id, std::string description) {
    ClaimReport r;
    r.id = id;
    r.description = std::move(description);
    return r;
}

ClaimReport audit_c1(std::span<const GridPoint> sweep) {
    ClaimReport r = blank(ClaimId::C1, "Fixed-field DM protocol: net work is positive if and only if D_hot < D_cold.");
    Worst worst;
    std::optional<GridPoint> first;
    std::size_t positive = 0, increasing = 0, mismatches = 0;
    double max_w = -std::numeric_limits<double>::infinity();
    for (const auto& g : sweep) {
        const auto* p = std::get_if<VaryDM>(&g.protocol);
        if (p == nullptr || p->D_hot == p->D_cold) continue;
        const CycleResult c = run_cycle(g.protocol, g.baths);
        if (!first) first = g;
        ++r.evaluated_points;
        const bool w_positive = c.W > kIdleTolerance;
        positive += w_positive;
        increasing += p->D_hot < p->D_cold;
        max_w = std::max(max_w, c.W);
        if (w_positive != (p->D_hot < p->D_cold)) {
            ++mismatches;
            worst.offer(std::abs(c.W), g);
        }
    }
    if (r.evaluated_points == 0) {
        r.notes.push_back("no vary-dm point with D_hot != D_cold in the sweep");
        return r;
    }
    r.canonical_values = {{"points_with_positive_work", static_cast<double>(positive)},
                          {"points_with_D_hot_below_D_cold", static_cast<double>(increasing)},
                          {"mismatching_points", static_cast<double>(mismatches)},
                          {"max_W", max_w}};
    r.verdict = mismatches == 0 ? Verdict::Holds : Verdict::Fails;
    r.notes.push_back("for D_hot < D_cold the doublet levels +-J sqrt(1+D^2) spread apart on the hot-to-cold "
                      "stroke; only the two doublet levels move, the field levels are fixed");
    finish(r, first, worst, mismatches != 0);
    return r;
}

OttoProtocol flip_coupling(OttoProtocol proto) {
    std::visit([](auto& p) { p.J = -p.J; }, proto);
    return proto;
}

ClaimReport audit_c2(std::span<const GridPoint> sweep) {
    ClaimReport r = blank(ClaimId::C2, "Reversing the sign of the exchange coupling J leaves heats, work and efficiency "
                                       "unchanged.");
    Worst worst;
    std::optional<GridPoint> first;
    for (const auto& g : sweep) {
        const CycleResult a = run_cycle(g.protocol, g.baths);
        const CycleResult b = run_cycle(flip_coupling(g.protocol), g.baths);
        if (!first) {
            first = g;
            r.canonical_values = {{"W", a.W}, {"W_flipped_J", b.W}, {"Q_hot", a.Q_hot}, {"Q_hot_flipped_J", b.Q_hot}};
        }
        ++r.evaluated_points;
        double d = std::max({std::abs(a.W - b.W), std::abs(a.Q_hot - b.Q_hot), std::abs(a.Q_cold - b.Q_cold)});
        if (a.eta.has_value() != b.eta.has_value())
            d = std::max(d, 1.0);
        else if (a.eta)
            d = std::max(d, std::abs(*a.eta - *b.eta));
        worst.offer(d, g);
    }
    if (r.evaluated_points == 0) return r;
    const bool failed = worst.value > kEqualityTolerance;
    r.verdict = failed ? Verdict::Fails : Verdict::Holds;
    r.max_discrepancy = worst.value;
    if (!failed)
        r.notes.push_back("J -> -J swaps the energies carried by L3 and L4 on both isochores; the Gibbs populations "
                          "follow the energies, so every level sum is permuted term by term");
    finish(r, first, worst, failed);
    if (!failed) r.max_discrepancy = worst.value;
    return r;
}

struct PointData {
    GridPoint point;
    CycleResult cycle;
    std::optional<LocalCycleResult> local;
    Matrix4 hot_density;
    Matrix4 cold_density;
    double hot_low = 0.0;
    double cold_low = 0.0;
};

struct EquationDef {
    std::string name;
    std::string expression;
    bool field;  // vary-field points if true, vary-dm otherwise
    std::function<bool(const PointData&)> applies;
    std::function<double(const PointData&, const printed::LabelMap&)> printed_value;
    std::function<double(const PointData&)> canonical_value;
    // Matrix-valued comparisons override printed/canonical with a residual.
    std::function<double(const PointData&, const printed::LabelMap&)> residual;
};

double modulus_residual(const Matrix4& printed_m, const Matrix4& canonical) {
    double m = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            m = std::max(m, std::abs(std::abs(printed_m(i, j)) - std::abs(canonical(i, j))));
    return m;
}

std::vector<EquationDef> equation_defs() {
    using printed::LabelMap;
    using printed::Terms;
    const auto dm = [](const PointData& d) { return std::get<VaryDM>(d.point.protocol); };
    const auto vf = [](const PointData& d) { return std::get<VaryField>(d.point.protocol); };
    const auto terms = [](const PointData& d, const LabelMap& m) {
        return Terms(d.cycle.cold_populations, d.cycle.hot_populations, m);
    };
    const auto always = [](const PointData&) { return true; };
    const auto engine = [](const PointData& d) { return d.cycle.mode == Mode::Engine; };

    std::vector<EquationDef> defs;
    const std::string dg = "(p3 - p'3 + p'1 - p1)";
    const std::string fg = "(p4 - p'4 + p'2 - p2)";

    defs.push_back({"heat_hot_vary_dm", "J sqrt(D_hot^2+1) " + dg + " + 2B " + fg, false, always,
                    [=](const PointData& d, const LabelMap& m) { return printed::vary_dm_heat_hot(dm(d), terms(d, m)); },
                    [](const PointData& d) { return d.cycle.Q_hot; }, {}});
    defs.push_back({"heat_cold_vary_dm", "-J sqrt(D_cold^2+1) " + dg + " - 2B " + fg, false, always,
                    [=](const PointData& d, const LabelMap& m) { return printed::vary_dm_heat_cold(dm(d), terms(d, m)); },
                    [](const PointData& d) { return d.cycle.Q_cold; }, {}});
    defs.push_back({"work_vary_dm", "J (sqrt(D_hot^2+1) - sqrt(D_cold^2+1)) " + dg, false, always,
                    [=](const PointData& d, const LabelMap& m) { return printed::vary_dm_work(dm(d), terms(d, m)); },
                    [](const PointData& d) { return d.cycle.W; }, {}});
    defs.push_back({"efficiency_vary_dm", "work_vary_dm / heat_hot_vary_dm", false, engine,
                    [=](const PointData& d, const LabelMap& m) {
                        const Terms t = terms(d, m);
                        return printed::vary_dm_work(dm(d), t) / printed::vary_dm_heat_hot(dm(d), t);
                    },
                    [](const PointData& d) { return *d.cycle.eta; }, {}});

    defs.push_back({"heat_hot_vary_field", "J sqrt(D^2+1) " + dg + " + 2B_hot " + fg, true, always,
                    [=](const PointData& d, const LabelMap& m) { return printed::vary_field_heat_hot(vf(d), terms(d, m)); },
                    [](const PointData& d) { return d.cycle.Q_hot; }, {}});
    defs.push_back({"heat_cold_vary_field", "-J sqrt(D^2+1) " + dg + " - 2B_cold " + fg, true, always,
                    [=](const PointData& d, const LabelMap& m) { return printed::vary_field_heat_cold(vf(d), terms(d, m)); },
                    [](const PointData& d) { return d.cycle.Q_cold; }, {}});
    defs.push_back({"work_vary_field", "2 (B_hot - B_cold) " + fg, true, always,
                    [=](const PointData& d, const LabelMap& m) { return printed::vary_field_work(vf(d), terms(d, m)); },
                    [](const PointData& d) { return d.cycle.W; }, {}});
    defs.push_back({"efficiency_vary_field", "work_vary_field / heat_hot_vary_field", true, engine,
                    [=](const PointData& d, const LabelMap& m) {
                        const Terms t = terms(d, m);
                        return printed::vary_field_work(vf(d), t) / printed::vary_field_heat_hot(vf(d), t);
                    },
                    [](const PointData& d) { return *d.cycle.eta; }, {}});

    defs.push_back({"density_matrix",
                    "diag(p2, (p1+p3)/2, (p1+p3)/2, p4) with coherence (p3-p1)/2 on |01><10|, compared in modulus",
                    true, always, {}, {},
                    [](const PointData& d, const LabelMap& m) {
                        return std::max(
                            modulus_residual(printed::density_layout(d.cycle.cold_populations, m), d.cold_density),
                            modulus_residual(printed::density_layout(d.cycle.hot_populations, m), d.hot_density));
                    }});
    defs.push_back({"reduced_density", "low-state population 1/2 - (p2 - p4)/2", true, always, {}, {},
                    [](const PointData& d, const LabelMap& m) {
                        return std::max(
                            std::abs(printed::reduced_low_population(d.cycle.cold_populations, m) - d.cold_low),
                            std::abs(printed::reduced_low_population(d.cycle.hot_populations, m) - d.hot_low));
                    }});

    defs.push_back({"local_heat_hot", "B_hot " + fg, true, always,
                    [=](const PointData& d, const LabelMap& m) { return printed::local_heat_hot(vf(d), terms(d, m)); },
                    [](const PointData& d) { return d.local->q1; }, {}});
    defs.push_back({"local_heat_cold", "-B_cold " + fg, true, always,
                    [=](const PointData& d, const LabelMap& m) { return printed::local_heat_cold(vf(d), terms(d, m)); },
                    [](const PointData& d) { return d.local->q2; }, {}});
    defs.push_back({"local_work", "(B_hot - B_cold) " + fg, true, always,
                    [=](const PointData& d, const LabelMap& m) { return printed::local_work(vf(d), terms(d, m)); },
                    [](const PointData& d) { return d.local->w; }, {}});
    return defs;
}

double equation_residual(const EquationDef& e, const PointData& d, const printed::LabelMap& m) {
    if (e.residual) return e.residual(d, m);
    return std::abs(e.printed_value(d, m) - e.canonical_value(d));
}

ClaimReport audit_c3(std::span<const GridPoint> sweep) {
    ClaimReport r = blank(ClaimId::C3, "Printed heat, work, efficiency, density-matrix and local-heat expressions agree "
                                       "with first-principles level sums (primed populations bound to the hot bath).");
    std::vector<PointData> data;
    data.reserve(sweep.size());
    for (const auto& g : sweep) {
        PointData d;
        d.point = g;
        d.cycle = run_cycle(g.protocol, g.baths);
        if (std::holds_alternative<VaryField>(g.protocol)) {
            d.local = local_cycle(g.protocol, g.baths);
            const ThermalState hot = gibbs_state(analytic_spectrum(hot_side(g.protocol)), g.baths.T_hot);
            const ThermalState cold = gibbs_state(analytic_spectrum(cold_side(g.protocol)), g.baths.T_cold);
            d.hot_density = hot.density;
            d.cold_density = cold.density;
            d.hot_low = partial_trace(hot.density, Spin::First).P_low;
            d.cold_low = partial_trace(cold.density, Spin::First).P_low;
        }
        data.push_back(std::move(d));
    }
    r.evaluated_points = data.size();

    const auto maps = printed::all_label_maps();
    const auto defs = equation_defs();
    // Per map, the largest residual over all evaluated equations.
    std::vector<double> joint(maps.size(), 0.0);
    Worst overall;
    bool all_identity = true;
    bool all_relabel = true;

    for (const auto& e : defs) {
        std::vector<const PointData*> pts;
        for (const auto& d : data)
            if (std::holds_alternative<VaryField>(d.point.protocol) == e.field && e.applies(d)) pts.push_back(&d);
        if (pts.empty()) continue;

        EquationCheck check{e.name, e.expression, pts.size()};
        std::vector<double> res(maps.size(), 0.0);
        Worst eq_worst;
        for (std::size_t k = 0; k < maps.size(); ++k) {
            for (const PointData* d : pts) {
                const double v = equation_residual(e, *d, maps[k]);
                res[k] = std::max(res[k], v);
                if (k == 0) eq_worst.offer(v, d->point);
            }
            joint[k] = std::max(joint[k], res[k]);
        }
        check.identity_residual = res[0];
        const double best = *std::min_element(res.begin(), res.end());
        for (std::size_t k = 0; k < maps.size(); ++k) {
            if (res[k] <= best + 1e-15 * (1.0 + best)) {
                check.best_map = maps[k];
                check.best_residual = res[k];
                break;
            }
        }
        all_identity = all_identity && check.identity_residual <= kEqualityTolerance;
        all_relabel = all_relabel && check.best_residual <= kEqualityTolerance;
        overall.offer(check.identity_residual, *eq_worst.point);

        if (e.printed_value) {
            const PointData* at = pts.front();
            for (const PointData* d : pts)
                if (d->point == *eq_worst.point) at = d;
            r.printed_values.push_back({e.name, e.printed_value(*at, printed::kIdentity)});
            r.canonical_values.push_back({e.name, e.canonical_value(*at)});
        }
        r.equations.push_back(std::move(check));
    }

    if (r.equations.empty()) {
        r.notes.push_back("no sweep point matched any printed expression");
        return r;
    }

    r.verdict = all_identity ? Verdict::Holds : all_relabel ? Verdict::HoldsUnderRelabeling : Verdict::Fails;
    r.max_discrepancy = overall.value;
    const auto best_joint = std::min_element(joint.begin(), joint.end());
    const auto& jm = maps[static_cast<std::size_t>(best_joint - joint.begin())];
    if (*best_joint <= kEqualityTolerance)
        r.notes.push_back("a single label map fits every expression: " + describe(jm));
    else
        r.notes.push_back("no single label map fits every expression; best joint map " + describe(jm) +
                          " leaves residual " + fmt(*best_joint));
    for (const auto& c : r.equations)
        if (c.best_residual <= kEqualityTolerance && c.identity_residual > kEqualityTolerance)
            r.notes.push_back(c.name + " matches after relabeling " + describe(c.best_map));
    r.notes.push_back("density_matrix is compared in modulus: the printed layout carries no e^{-i theta} phase on "
                      "the |01><10| coherence");
    finish(r, data.empty() ? std::nullopt : std::optional<GridPoint>(data.front().point), overall,
           r.verdict != Verdict::Holds);
    r.max_discrepancy = overall.value;
    return r;
}

ClaimReport audit_c4(std::span<const GridPoint> sweep) {
    ClaimReport r = blank(ClaimId::C4, "Where (2B_hot - J r)/T_hot < (2B_cold - J r)/T_cold, eta_ub lies below the "
                                       "Carnot efficiency, and engine efficiencies above the local value stay below "
                                       "eta_ub.");
    Worst worst;
    std::optional<GridPoint> first;
    std::size_t undefined_bound = 0, capped = 0;
    double margin_carnot = -std::numeric_limits<double>::infinity();
    double margin_eta = -std::numeric_limits<double>::infinity();
    bool failed = false;
    for (const auto& g : sweep) {
        const auto* p = std::get_if<VaryField>(&g.protocol);
        if (p == nullptr || !(p->B_hot > p->B_cold) || !(p->B_cold > 0.0) || !(g.baths.T_hot > g.baths.T_cold))
            continue;
        if (!bound_condition(*p, g.baths)) continue;
        double ub = 0.0;
        try {
            ub = eta_upper_bound(p->B_hot, p->B_cold, p->J, p->D);
        } catch (const RegimeError&) {
            ++undefined_bound;
            continue;
        }
        if (!first) first = g;
        ++r.evaluated_points;
        const double ec = carnot(g.baths.T_hot, g.baths.T_cold);
        margin_carnot = std::max(margin_carnot, ub - ec);
        if (ub - ec >= kInequalitySlack) {
            failed = true;
            worst.offer(ub - ec, g);
        }
        const CycleResult c = run_cycle(g.protocol, g.baths);
        const double eta0 = local_efficiency_reference(p->B_hot, p->B_cold);
        if (c.mode == Mode::Engine && *c.eta > eta0) {
            ++capped;
            margin_eta = std::max(margin_eta, *c.eta - ub);
            if (*c.eta - ub >= kInequalitySlack) {
                failed = true;
                worst.offer(*c.eta - ub, g);
            }
        }
    }
    if (undefined_bound)
        r.notes.push_back(std::to_string(undefined_bound) + " points satisfy the condition but have 2B_hot <= J r, "
                                                            "where eta_ub is undefined");
    if (r.evaluated_points == 0) {
        r.notes.push_back("premise empty: no vary-field point with B_hot > B_cold, T_hot > T_cold and the bound "
                          "condition");
        return r;
    }
    r.canonical_values = {{"max_eta_ub_minus_carnot", margin_carnot},
                          {"engine_points_above_local_efficiency", static_cast<double>(capped)}};
    if (capped) r.canonical_values.push_back({"max_eta_minus_eta_ub", margin_eta});
    r.verdict = failed ? Verdict::Fails : Verdict::Holds;
    finish(r, first, worst, failed);
    return r;
}

// First sign change of the printed population function on a D scan, bisected.
std::optional<double> printed_population_root(double B_hot, double B_cold, double J, const BathSpec& baths,
                                              double D_max, std::size_t n) {
    const auto F = [&](double D) {
        const CycleResult c = run_cycle(VaryField{J, D, B_hot, B_cold}, baths);
        const auto& p = c.cold_populations;
        const auto& pp = c.hot_populations;
        return p[2] - p[0] - pp[2] + pp[0];
    };
    double prev_D = 0.0;
    double prev_F = F(0.0);
    for (std::size_t i = 1; i < n; ++i) {
        const double D = D_max * static_cast<double>(i) / static_cast<double>(n - 1);
        const double f = F(D);
        if ((prev_F < 0.0) != (f < 0.0)) {
            double lo = prev_D, hi = D, flo = prev_F;
            for (int k = 0; k < 400; ++k) {
                const double mid = lo + 0.5 * (hi - lo);
                if (mid == lo || mid == hi) break;
                const double fm = F(mid);
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            return lo + 0.5 * (hi - lo);
        }
        prev_D = D;
        prev_F = f;
    }
    return std::nullopt;
}

ClaimReport audit_c5(std::span<const GridPoint> sweep) {
    ClaimReport r = blank(ClaimId::C5, "The global efficiency meets the local efficiency at D_m = 4 B_hot^2 / J^2 - 1.");
    std::set<std::tuple<double, double, double, double, double>> seen;
    Worst worst;
    std::optional<GridPoint> first;
    bool any_root = false;
    bool failed = false;
    for (const auto& g : sweep) {
        const auto* p = std::get_if<VaryField>(&g.protocol);
        if (p == nullptr || !(p->B_hot > p->B_cold) || !(p->B_cold > 0.0)) continue;
        if (!seen.insert({p->J, p->B_hot, p->B_cold, g.baths.T_hot, g.baths.T_cold}).second) continue;

        const GridPoint group{VaryField{p->J, 0.0, p->B_hot, p->B_cold}, g.baths};
        if (!first) first = group;
        ++r.evaluated_points;
        const CrossingResult c = crossing_threshold(p->B_hot, p->B_cold, p->J, g.baths);
        const auto f_root = printed_population_root(p->B_hot, p->B_cold, p->J, g.baths, c.D_max, 2001);
        const std::string tag = r.evaluated_points == 1 ? "" : "#" + std::to_string(r.evaluated_points);

        r.printed_values.push_back({"D_m_printed" + tag, c.printed_candidate});
        if (c.corrected_candidate) r.printed_values.push_back({"D_m_corrected" + tag, *c.corrected_candidate});
        if (f_root) r.printed_values.push_back({"population_function_root" + tag, *f_root});
        r.canonical_values.push_back({"eta_local" + tag, c.eta_local});

        if (!c.D_root) {
            r.notes.push_back("no eta = eta_local crossing in the engine region of D in [0, " + fmt(c.D_max) +
                              "] for " + describe(group));
            continue;
        }
        any_root = true;
        r.canonical_values.push_back({"D_m_numeric" + tag, *c.D_root});
        r.canonical_values.push_back({"crossing_residual" + tag, c.residual});
        const double miss = std::abs(c.printed_candidate - *c.D_root);
        if (miss > kEqualityTolerance) {
            failed = true;
            worst.offer(miss, group);
        }
        if (c.corrected_candidate)
            r.notes.push_back("corrected candidate sqrt(4 B_hot^2/J^2 - 1) = " + fmt(*c.corrected_candidate) +
                              " misses the numeric root " + fmt(*c.D_root) + " by " +
                              fmt(std::abs(*c.corrected_candidate - *c.D_root)));
        if (f_root)
            r.notes.push_back("printed population function p3 - p1 - p'3 + p'1 (canonical labels) first changes "
                              "sign at D = " + fmt(*f_root));
        std::size_t below = 0, below_engine_above = 0;
        for (std::size_t i = 0; i < 2001; ++i) {
            const double D = *c.D_root * static_cast<double>(i) / 2001.0;
            const CycleResult cyc = run_cycle(VaryField{p->J, D, p->B_hot, p->B_cold}, g.baths);
            if (cyc.mode != Mode::Engine) continue;
            ++below;
            below_engine_above += *cyc.eta > c.eta_local;
        }
        r.notes.push_back(std::to_string(below_engine_above) + " of " + std::to_string(below) +
                          " engine points sampled on [0, D_m_numeric) have eta > eta_local");
    }
    if (!any_root) return r;
    r.verdict = failed ? Verdict::Fails : Verdict::Holds;
    finish(r, first, worst, failed);
    return r;
}

ClaimReport audit_c6(std::span<const GridPoint> sweep) {
    ClaimReport r = blank(ClaimId::C6, "For B_hot < B_cold engines, per-spin heats flow opposite to the global heats on "
                                       "both baths.");
    Worst worst;
    std::optional<GridPoint> first;
    bool failed = false;
    for (const auto& g : sweep) {
        const auto* p = std::get_if<VaryField>(&g.protocol);
        if (p == nullptr || !(p->B_hot < p->B_cold)) continue;
        const LocalCycleResult l = local_cycle(g.protocol, g.baths);
        if (l.flags.global_mode != Mode::Engine) continue;
        if (!first) {
            first = g;
            const CycleResult c = run_cycle(g.protocol, g.baths);
            r.canonical_values = {{"q1", l.q1}, {"q2", l.q2}, {"Q_hot", c.Q_hot}, {"Q_cold", c.Q_cold}, {"W", c.W}};
        }
        ++r.evaluated_points;
        if (!l.flags.opposed.value_or(false)) {
            failed = true;
            worst.offer(std::max(std::abs(l.q1), std::abs(l.q2)), g);
        }
    }
    if (r.evaluated_points == 0) {
        r.notes.push_back("premise empty: no B_hot < B_cold point operates as an engine");
        return r;
    }
    r.verdict = failed ? Verdict::Fails : Verdict::Holds;
    finish(r, first, worst, failed);
    return r;
}

ClaimReport audit_c7(std::span<const GridPoint> sweep) {
    ClaimReport r = blank(ClaimId::C7, "Whenever W > 0, Q_hot > -Q_cold > 0.");
    Worst worst;
    std::optional<GridPoint> first;
    bool failed = false;
    double min_release = std::numeric_limits<double>::infinity();
    for (const auto& g : sweep) {
        const CycleResult c = run_cycle(g.protocol, g.baths);
        if (!(c.W > kIdleTolerance)) continue;
        if (!first) first = g;
        ++r.evaluated_points;
        min_release = std::min(min_release, -c.Q_cold);
        const double v = std::max(-c.Q_cold - c.Q_hot, c.Q_cold);
        if (v >= kInequalitySlack) {
            failed = true;
            worst.offer(v, g);
        }
    }
    if (r.evaluated_points == 0) {
        r.notes.push_back("premise empty: no point with W > 0");
        return r;
    }
    r.canonical_values = {{"min_heat_released_to_cold_bath", min_release}};
    r.verdict = failed ? Verdict::Fails : Verdict::Holds;
    finish(r, first, worst, failed);
    return r;
}

ClaimReport audit_c8(std::span<const GridPoint> sweep) {
    ClaimReport r = blank(ClaimId::C8, "With B_hot > B_cold the engine efficiency lies strictly between the local "
                                       "efficiency and eta_ub.");
    Worst worst;
    std::optional<GridPoint> first;
    bool failed = false;
    for (const auto& g : sweep) {
        const auto* p = std::get_if<VaryField>(&g.protocol);
        if (p == nullptr || !(p->B_hot > p->B_cold) || !(p->B_cold > 0.0)) continue;
        const CycleResult c = run_cycle(g.protocol, g.baths);
        if (c.mode != Mode::Engine) continue;
        double ub = 0.0;
        try {
            ub = eta_upper_bound(p->B_hot, p->B_cold, p->J, p->D);
        } catch (const RegimeError&) {
            continue;
        }
        const double eta0 = local_efficiency_reference(p->B_hot, p->B_cold);
        if (!first) {
            first = g;
            r.canonical_values = {{"eta", *c.eta}, {"eta_local", eta0}, {"eta_ub", ub}};
        }
        ++r.evaluated_points;
        const double v = std::max(eta0 - *c.eta, *c.eta - ub);
        if (v >= kInequalitySlack) {
            failed = true;
            worst.offer(v, g);
        }
    }
    if (r.evaluated_points == 0) {
        r.notes.push_back("premise empty: no B_hot > B_cold engine point with a defined eta_ub");
        return r;
    }
    r.verdict = failed ? Verdict::Fails : Verdict::Holds;
    finish(r, first, worst, failed);
    return r;
}

std::vector<GridPoint> concat(std::initializer_list<FigureId> ids) {
    std::vector<GridPoint> out;
    for (FigureId id : ids) {
        auto pts = expand(figure_preset(id));
        out.insert(out.end(), pts.begin(), pts.end());
    }
    return out;
}

}  // namespace

std::string_view to_string(ClaimId id) {
    static constexpr std::array names{"C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8"};
    const auto i = static_cast<std::size_t>(id);
    if (i >= names.size()) throw UnknownClaim("unknown claim id " + std::to_string(i));
    return names[i];
}

ClaimId parse_claim(std::string_view name) {
    for (ClaimId id : kAllClaims)
        if (to_string(id) == name) return id;
    throw UnknownClaim("unknown claim id '" + std::string(name) + "' (expected C1..C8)");
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "Holds";
        case Verdict::Fails: return "Fails";
        case Verdict::HoldsUnderRelabeling: return "HoldsUnderRelabeling";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "Unknown";
}

ClaimReport audit_claim(ClaimId id, std::span<const GridPoint> sweep) {
    switch (id) {
        case ClaimId::C1: return audit_c1(sweep);
        case ClaimId::C2: return audit_c2(sweep);
        case ClaimId::C3: return audit_c3(sweep);
        case ClaimId::C4: return audit_c4(sweep);
        case ClaimId::C5: return audit_c5(sweep);
        case ClaimId::C6: return audit_c6(sweep);
        case ClaimId::C7: return audit_c7(sweep);
        case ClaimId::C8: return audit_c8(sweep);
    }
    throw UnknownClaim("unknown claim id " + std::to_string(static_cast<int>(id)));
}

std::vector<GridPoint> default_sweep(ClaimId id) {
    switch (id) {
        case ClaimId::C1:
        case ClaimId::C7: return concat({FigureId::Fig1, FigureId::Fig2, FigureId::Fig3});
        case ClaimId::C2:
        case ClaimId::C3: return concat({FigureId::Fig1, FigureId::Fig4});
        case ClaimId::C4:
        case ClaimId::C5: return concat({FigureId::Fig4});
        case ClaimId::C6: {
            SweepSpec s;
            s.kind = ProtocolKind::VaryField;
            s.base = VaryField{0.0, 0.0, 1.0, 2.0};
            s.baths = {2.0, 1.0};
            s.x = {"J", -10.0, 10.0, 41};
            s.y = SweepAxis{"D", 0.0, 3.0, 31};
            s.columns = {Column::X};
            return expand(s);
        }
        case ClaimId::C8: return {GridPoint{VaryField{1.0, 0.0, 8.0, 6.0}, BathSpec{2.0, 1.0}}};
    }
    throw UnknownClaim("unknown claim id " + std::to_string(static_cast<int>(id)));
}

AuditConfig AuditConfig::defaults() {
    AuditConfig c;
    for (ClaimId id : kAllClaims) c.sweeps[id] = default_sweep(id);
    return c;
}

std::vector<ClaimReport> full_audit(const AuditConfig& config) {
    std::vector<ClaimId> ids = config.claims;
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    std::vector<ClaimReport> reports(ids.size());
    parallel_for(ids.size(), config.workers, [&](std::size_t i) {
        const auto it = config.sweeps.find(ids[i]);
        if (it != config.sweeps.end()) {
            reports[i] = audit_claim(ids[i], it->second);
        } else {
            const auto sweep = default_sweep(ids[i]);
            reports[i] = audit_claim(ids[i], sweep);
        }
    });
    return reports;
}

}  // namespace dmotto
