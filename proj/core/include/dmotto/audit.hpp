#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dmotto/cycle.hpp"
#include "dmotto/printed_forms.hpp"

namespace dmotto {

/// Claims adjudicated by the audit:
///   C1  net work is positive exactly when D_hot < D_cold (vary-dm, fixed B)
///   C2  W, heats and eta are unchanged under J -> -J
///   C3  printed heat/work/state expressions vs first-principles values
///   C4  the upper bound eta_ub lies below Carnot wherever the bound condition holds,
///       and caps the engine efficiency when it exceeds the local one
///   C5  location of the eta = eta_local crossing (printed formula vs numeric root)
///   C6  for B_hot < B_cold engines, local and global heat flows are opposed
///   C7  Q_hot > -Q_cold > 0 whenever W > 0
///   C8  eta_local < eta < eta_ub at the interaction-free reference point
enum class ClaimId { C1, C2, C3, C4, C5, C6, C7, C8 };

inline constexpr std::array kAllClaims{ClaimId::C1, ClaimId::C2, ClaimId::C3, ClaimId::C4,
                                       ClaimId::C5, ClaimId::C6, ClaimId::C7, ClaimId::C8};

std::string_view to_string(ClaimId id);
// Throws UnknownClaim.
ClaimId parse_claim(std::string_view name);

enum class Verdict { Holds, Fails, HoldsUnderRelabeling, Inconclusive };

std::string_view to_string(Verdict v);

struct NamedValue {
    std::string name;
    double value = 0.0;
};

/// One printed expression compared against its first-principles counterpart
/// over every applicable sweep point.
struct EquationCheck {
    std::string name;
    std::string expression;
    std::size_t points = 0;
    double identity_residual = 0.0;        // max |printed - canonical| under canonical labels
    printed::LabelMap best_map = printed::kIdentity;  // printed label k -> canonical level
    double best_residual = 0.0;            // same, after applying best_map
};

struct ClaimReport {
    ClaimId id = ClaimId::C1;
    std::string description;
    std::size_t evaluated_points = 0;
    std::vector<GridPoint> sample_points;  // first evaluated point, then the worst one if different
    std::vector<NamedValue> canonical_values;
    std::vector<NamedValue> printed_values;
    Verdict verdict = Verdict::Inconclusive;
    double max_discrepancy = 0.0;
    std::optional<GridPoint> worst_point;
    std::vector<std::string> notes;
    std::vector<EquationCheck> equations;  // populated for C3
};

/// Absolute tolerance for equality claims.
inline constexpr double kEqualityTolerance = 1e-9;
/// Slack granted to strict inequalities.
inline constexpr double kInequalitySlack = 1e-12;

/// Evaluates one claim over the given points. Points whose protocol does not
/// apply to the claim are ignored; a claim whose premise is empty on the
/// remaining points is Inconclusive.
ClaimReport audit_claim(ClaimId id, std::span<const GridPoint> sweep);

struct AuditConfig {
    std::vector<ClaimId> claims{kAllClaims.begin(), kAllClaims.end()};
    std::map<ClaimId, std::vector<GridPoint>> sweeps;
    unsigned workers = 1;

    /// The figure parameter sets: maps 1-3 for C1/C3/C7, maps 1 and 3 plus
    /// the field scan for C2, the field scan for C3/C4/C5, a B_hot < B_cold
    /// grid for C6 and the D = 0 field point for C8.
    static AuditConfig defaults();
};

/// One report per requested claim, ordered by claim id regardless of
/// completion order. Claims missing from `sweeps` use the default sweep.
std::vector<ClaimReport> full_audit(const AuditConfig& config);

std::vector<GridPoint> default_sweep(ClaimId id);

}  // namespace dmotto
