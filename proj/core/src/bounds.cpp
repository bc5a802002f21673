#include "dmotto/bounds.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "dmotto/error.hpp"
#include "dmotto/parallel.hpp"

namespace dmotto {

namespace {

constexpr double kSignDeadband = 1e-12;
constexpr double kRootTolerance = 1e-10;
constexpr int kMaxBisections = 400;

struct Probe {
    bool engine = false;
    double G = 0.0;
};

int definite_sign(double g) {
    if (g > kSignDeadband) return 1;
    if (g < -kSignDeadband) return -1;
    return 0;
}

class CrossingScan {
public:
    CrossingScan(double B_hot, double B_cold, double J, const BathSpec& baths, double eta_local)
        : B_hot_(B_hot), B_cold_(B_cold), J_(J), baths_(baths), eta_local_(eta_local) {}

    Probe probe(double D) const {
        const CycleResult r = run_cycle(VaryField{J_, D, B_hot_, B_cold_}, baths_);
        if (r.mode != Mode::Engine) return {};
        return {true, *r.eta - eta_local_};
    }

    // Narrows [engine_side, other_side] onto the last engine-classified D.
    double engine_edge(double engine_side, double other_side) const {
        for (int i = 0; i < kMaxBisections; ++i) {
            const double mid = engine_side + 0.5 * (other_side - engine_side);
            if (mid == engine_side || mid == other_side) break;
            (probe(mid).engine ? engine_side : other_side) = mid;
        }
        return engine_side;
    }

    std::optional<std::pair<double, double>> bisect(double lo, double hi, int sign_lo) const {
        double g_lo = probe(lo).G;
        double g_hi = probe(hi).G;
        for (int i = 0; i < kMaxBisections; ++i) {
            const double mid = lo + 0.5 * (hi - lo);
            if (mid == lo || mid == hi) break;
            const Probe p = probe(mid);
            if (!p.engine) return std::nullopt;
            if ((p.G > 0.0 ? 1 : -1) == sign_lo) {
                lo = mid;
                g_lo = p.G;
            } else {
                hi = mid;
                g_hi = p.G;
            }
        }
        const auto best = std::abs(g_lo) <= std::abs(g_hi) ? std::pair{lo, g_lo} : std::pair{hi, g_hi};
        if (std::abs(best.second) > kRootTolerance) return std::nullopt;
        return std::pair{best.first, std::abs(best.second)};
    }

private:
    double B_hot_;
    double B_cold_;
    double J_;
    BathSpec baths_;
    double eta_local_;
};

}  // namespace

double carnot(double T_hot, double T_cold) {
    if (!(T_cold > 0.0) || !(T_hot > T_cold) || !std::isfinite(T_hot))
        throw InvalidParameter("carnot requires T_hot > T_cold > 0 (T_hot=" + std::to_string(T_hot) +
                               ", T_cold=" + std::to_string(T_cold) + ")");
    return 1.0 - T_cold / T_hot;
}

double local_efficiency_reference(double B_hot, double B_cold) {
    if (!(B_hot > 0.0) || !(B_cold > 0.0) || B_hot == B_cold || !std::isfinite(B_hot) || !std::isfinite(B_cold))
        throw InvalidParameter("local efficiency needs two distinct positive fields");
    return B_hot > B_cold ? 1.0 - B_cold / B_hot : 1.0 - B_hot / B_cold;
}

double eta_upper_bound(double B_hot, double B_cold, double J, double D) {
    if (!(B_cold > 0.0) || !(B_hot > B_cold) || !std::isfinite(B_hot) || !std::isfinite(J) || !std::isfinite(D))
        throw InvalidParameter("eta_upper_bound requires B_hot > B_cold > 0");
    const double denominator = 1.0 - J * std::hypot(1.0, D) / (2.0 * B_hot);
    if (!(denominator > 0.0))
        throw RegimeError("eta_upper_bound: 2 B_hot <= J sqrt(1 + D^2), bound undefined");
    return (1.0 - B_cold / B_hot) / denominator;
}

bool level_ordering_check(double B, double J, double D) { return 2.0 * B > std::abs(J) * std::hypot(1.0, D); }

bool bound_condition(const VaryField& proto, const BathSpec& baths) {
    const double doublet = proto.J * std::hypot(1.0, proto.D);
    return (2.0 * proto.B_hot - doublet) / baths.T_hot < (2.0 * proto.B_cold - doublet) / baths.T_cold;
}

CrossingResult crossing_threshold(double B_hot, double B_cold, double J, const BathSpec& baths,
                                  const CrossingOptions& options) {
    validate(baths);
    if (!(B_hot > B_cold) || !(B_cold > 0.0))
        throw InvalidParameter("crossing_threshold requires B_hot > B_cold > 0");
    if (options.scan_points < 2) throw InvalidParameter("crossing_threshold needs at least 2 scan points");

    CrossingResult out;
    out.eta_local = local_efficiency_reference(B_hot, B_cold);
    out.printed_candidate = J != 0.0 ? 4.0 * B_hot * B_hot / (J * J) - 1.0 : std::numeric_limits<double>::infinity();
    if (std::isfinite(out.printed_candidate) && out.printed_candidate >= 0.0)
        out.corrected_candidate = std::sqrt(out.printed_candidate);

    if (options.D_max)
        out.D_max = *options.D_max;
    else if (out.corrected_candidate && *out.corrected_candidate > 0.0)
        out.D_max = 2.0 * *out.corrected_candidate;
    else
        out.D_max = 20.0;
    if (!(out.D_max > 0.0) || !std::isfinite(out.D_max))
        throw InvalidParameter("crossing_threshold: D_max must be positive and finite");

    const CrossingScan scan(B_hot, B_cold, J, baths, out.eta_local);
    const std::size_t n = options.scan_points;
    const auto grid = [&](std::size_t i) { return out.D_max * static_cast<double>(i) / static_cast<double>(n - 1); };

    // Last engine point with a definite sign inside the current engine segment.
    struct Anchor {
        double D = 0.0;
        int sign = 0;  // 0: no anchor
    } anchor;
    bool prev_engine = false;
    double prev_D = 0.0;

    const auto try_bracket = [&](double lo, int sign_lo, double hi) -> bool {
        if (auto root = scan.bisect(lo, hi, sign_lo)) {
            out.D_root = root->first;
            out.residual = root->second;
            return true;
        }
        return false;
    };

    for (std::size_t i = 0; i < n; ++i) {
        const double D = grid(i);
        const Probe p = scan.probe(D);

        if (p.engine && !prev_engine && i > 0) {
            // Entered the engine region: the efficiency at its edge may
            // already sit on the other side of eta_local.
            const double edge = scan.engine_edge(D, prev_D);
            const int s_edge = definite_sign(scan.probe(edge).G);
            const int s_here = definite_sign(p.G);
            if (s_edge != 0 && s_here != 0 && s_edge != s_here && try_bracket(edge, s_edge, D)) return out;
            anchor = {edge, s_edge};
        }

        if (p.engine) {
            const int s = definite_sign(p.G);
            if (s != 0) {
                if (anchor.sign != 0 && anchor.sign != s && try_bracket(anchor.D, anchor.sign, D)) return out;
                anchor = {D, s};
            }
        } else if (prev_engine) {
            // Left the engine region between prev_D and D.
            const double edge = scan.engine_edge(prev_D, D);
            const int s_edge = definite_sign(scan.probe(edge).G);
            if (anchor.sign != 0 && s_edge != 0 && s_edge != anchor.sign && try_bracket(anchor.D, anchor.sign, edge))
                return out;
            anchor = {};
        }

        prev_engine = p.engine;
        prev_D = D;
    }
    return out;
}

BoundsReport bounds_report(const VaryField& proto, const BathSpec& baths, const CrossingOptions& options) {
    BoundsReport r;
    r.eta_carnot = carnot(baths.T_hot, baths.T_cold);
    r.eta_local_ref = local_efficiency_reference(proto.B_hot, proto.B_cold);
    try {
        r.eta_ub = eta_upper_bound(proto.B_hot, proto.B_cold, proto.J, proto.D);
    } catch (const RegimeError&) {
    }
    const CrossingResult c = crossing_threshold(proto.B_hot, proto.B_cold, proto.J, baths, options);
    r.D_m_numeric = c.D_root;
    r.D_m_printed_candidate = c.printed_candidate;
    r.D_m_corrected_candidate = c.corrected_candidate;
    r.ordering_ok_hot = level_ordering_check(proto.B_hot, proto.J, proto.D);
    r.ordering_ok_cold = level_ordering_check(proto.B_cold, proto.J, proto.D);
    return r;
}

std::string_view to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::EngineAboveCarnot: return "engine-above-carnot";
        case ViolationKind::RefrigeratorAboveCarnotCop: return "refrigerator-above-carnot-cop";
        case ViolationKind::ClausiusInequality: return "clausius-inequality";
    }
    return "unknown";
}

std::vector<Violation> second_law_scan(std::span<const GridPoint> grid, unsigned workers) {
    std::vector<std::vector<Violation>> per_point(grid.size());
    parallel_for(grid.size(), workers, [&](std::size_t i) {
        const GridPoint& g = grid[i];
        const CycleResult r = run_cycle(g.protocol, g.baths);
        const double Th = g.baths.T_hot;
        const double Tc = g.baths.T_cold;
        auto& out = per_point[i];

        if (r.mode == Mode::Engine) {
            const double limit = 1.0 - Tc / Th;
            if (*r.eta > limit + 1e-12) out.push_back({i, g, ViolationKind::EngineAboveCarnot, *r.eta, limit});
        }
        if (r.mode == Mode::Refrigerator && Th > Tc) {
            const double cop = r.Q_cold / std::abs(r.W);
            const double limit = Tc / (Th - Tc);
            if (cop > limit + 1e-9) out.push_back({i, g, ViolationKind::RefrigeratorAboveCarnotCop, cop, limit});
        }
        const double entropy_flow = r.Q_hot / Th + r.Q_cold / Tc;
        if (entropy_flow > 1e-12) out.push_back({i, g, ViolationKind::ClausiusInequality, entropy_flow, 0.0});
    });

    std::vector<Violation> all;
    for (auto& v : per_point) all.insert(all.end(), v.begin(), v.end());
    return all;
}

}  // namespace dmotto
