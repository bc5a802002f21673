#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dmotto/cycle.hpp"

namespace dmotto {

/// 1 - T_cold/T_hot. Throws InvalidParameter unless T_hot > T_cold > 0.
double carnot(double T_hot, double T_cold);

/// Efficiency of the interaction-free (local) engine: 1 - min(B)/max(B).
/// Throws InvalidParameter unless both fields are positive and distinct.
double local_efficiency_reference(double B_hot, double B_cold);

/// (1 - B_cold/B_hot) / (1 - J sqrt(1+D^2) / (2 B_hot)).
/// Throws InvalidParameter unless B_hot > B_cold > 0 and RegimeError when the
/// denominator is not positive.
double eta_upper_bound(double B_hot, double B_cold, double J, double D);

/// True iff 2B > |J| sqrt(1 + D^2), i.e. -2B < -|J|r < |J|r < 2B.
bool level_ordering_check(double B, double J, double D);

/// True iff (2B_hot - J r)/T_hot < (2B_cold - J r)/T_cold with r = sqrt(1+D^2):
/// the regime in which the upper bound is claimed to sit below Carnot.
bool bound_condition(const VaryField& proto, const BathSpec& baths);

struct CrossingOptions {
    // Upper end of the D scan; defaults to twice the corrected candidate (or
    // 20 when that candidate is not a positive finite number).
    std::optional<double> D_max;
    std::size_t scan_points = 2001;
};

struct CrossingResult {
    // First D in [0, D_max] at which the engine efficiency equals the local
    // reference efficiency; unset when no sign change exists in the engine regime.
    std::optional<double> D_root;
    double residual = 0.0;  // |eta - eta_local| at D_root
    double printed_candidate = 0.0;                // 4 B_hot^2 / J^2 - 1
    std::optional<double> corrected_candidate;     // sqrt(4 B_hot^2 / J^2 - 1) when real
    double D_max = 0.0;
    double eta_local = 0.0;
};

/// Locates the crossing of G(D) = eta(D) - eta_local on the engine region of a
/// vary-field cycle (B_hot > B_cold) by scanning, refining engine-region
/// boundaries, and bisecting to |G| <= 1e-10.
CrossingResult crossing_threshold(double B_hot, double B_cold, double J, const BathSpec& baths,
                                  const CrossingOptions& options = {});

struct BoundsReport {
    double eta_carnot = 0.0;
    double eta_local_ref = 0.0;
    std::optional<double> eta_ub;
    std::optional<double> D_m_numeric;
    double D_m_printed_candidate = 0.0;
    std::optional<double> D_m_corrected_candidate;
    bool ordering_ok_hot = false;
    bool ordering_ok_cold = false;
};

/// Collects every reference quantity for one vary-field point (B_hot > B_cold,
/// T_hot > T_cold).
BoundsReport bounds_report(const VaryField& proto, const BathSpec& baths, const CrossingOptions& options = {});

enum class ViolationKind { EngineAboveCarnot, RefrigeratorAboveCarnotCop, ClausiusInequality };

std::string_view to_string(ViolationKind kind);

struct Violation {
    std::size_t index = 0;
    GridPoint point;
    ViolationKind kind = ViolationKind::ClausiusInequality;
    double value = 0.0;
    double limit = 0.0;
};

/// Second-law audit of a grid: Engine points must satisfy
/// eta <= 1 - T_cold/T_hot + 1e-12, Refrigerator points (with T_hot > T_cold)
/// COP = Q_cold/|W| <= T_cold/(T_hot - T_cold) + 1e-9, and every point
/// Q_hot/T_hot + Q_cold/T_cold <= 1e-12. Violations are returned in grid order.
std::vector<Violation> second_law_scan(std::span<const GridPoint> grid, unsigned workers = 1);

}  // namespace dmotto
