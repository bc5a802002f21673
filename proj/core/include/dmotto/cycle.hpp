#pragma once

#include <optional>
#include <string_view>
#include <variant>

#include "dmotto/spectrum.hpp"

namespace dmotto {

// Hot isochore at D_hot, cold isochore at D_cold; J and B shared.
struct VaryDM {
    double J = 0.0;
    double B = 0.0;
    double D_hot = 0.0;
    double D_cold = 0.0;

    friend bool operator==(const VaryDM&, const VaryDM&) = default;
};

// Hot isochore at B_hot, cold isochore at B_cold; J and D shared.
struct VaryField {
    double J = 0.0;
    double D = 0.0;
    double B_hot = 0.0;
    double B_cold = 0.0;

    friend bool operator==(const VaryField&, const VaryField&) = default;
};

/// An ideal Otto cycle: only the designated parameter differs between the
/// two isochores, so the "exactly one structural parameter changes"
/// invariant holds by construction.
using OttoProtocol = std::variant<VaryDM, VaryField>;

struct BathSpec {
    double T_hot = 0.0;
    double T_cold = 0.0;

    friend bool operator==(const BathSpec&, const BathSpec&) = default;
};

struct GridPoint {
    OttoProtocol protocol;
    BathSpec baths;

    friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

enum class Mode { Engine, Refrigerator, Heater, Idle };
enum class Provenance { Canonical, PrintedForm };

std::string_view to_string(Mode mode);
std::string_view protocol_name(const OttoProtocol& proto);

SystemParams hot_side(const OttoProtocol& proto);
SystemParams cold_side(const OttoProtocol& proto);

// Same protocol with the hot-side and cold-side values exchanged.
OttoProtocol swap_sides(const OttoProtocol& proto);

// Throws InvalidParameter for non-finite fields.
void validate(const OttoProtocol& proto);
// Throws InvalidParameter unless both temperatures are positive and finite.
// T_hot > T_cold is deliberately not required.
void validate(const BathSpec& baths);

/// Absolute work threshold below which a cycle is Idle.
inline constexpr double kIdleTolerance = 1e-12;

struct CycleResult {
    double Q_hot = 0.0;   // > 0: absorbed from the hot bath
    double Q_cold = 0.0;  // > 0: absorbed from the cold bath
    double W = 0.0;       // > 0: work performed by the working substance
    std::optional<double> eta;  // set iff mode == Engine
    Energies hot_energies{};
    Energies cold_energies{};
    Populations hot_populations{};
    Populations cold_populations{};
    Mode mode = Mode::Idle;
    Provenance provenance = Provenance::Canonical;
    // |W - (Q_hot + Q_cold)| with W summed independently of the heats.
    double first_law_residual = 0.0;
};

/// p^h - p^c per level. The level carrying the most weight gets minus the sum
/// of the other differences, which avoids cancellation when both populations
/// are within rounding of 1.
Populations population_differences(const Populations& hot, const Populations& cold);

/// First-principles cycle from canonical level sums:
///   Q_hot  = sum_i E^h_i (p^h_i - p^c_i)
///   Q_cold = sum_i E^c_i (p^c_i - p^h_i)
///   W      = sum_i (E^h_i - E^c_i)(p^h_i - p^c_i)
/// with p^h, p^c the Gibbs populations of each side at its own bath. Populations
/// are frozen across both adiabats. Throws InvariantViolation if the
/// independent W disagrees with Q_hot + Q_cold beyond 1e-12 (scaled by the
/// largest level when that exceeds 1).
CycleResult run_cycle(const OttoProtocol& proto, const BathSpec& baths);

/// W / Q_hot. Requires W > kIdleTolerance and Q_hot > 0, otherwise throws
/// UndefinedEfficiency.
double efficiency(const CycleResult& result);

/// Engine: W > tol, Q_hot > 0, Q_cold < 0. Refrigerator: W < -tol, Q_cold > 0,
/// Q_hot < 0. Idle: |W| <= tol. Heater: anything else.
Mode classify(double Q_hot, double Q_cold, double W);

/// Evaluates the printed heat/work expressions, binding primed populations to the hot bath and unprimed ones to
/// the cold bath under canonical labels. Audit use only; carries
/// Provenance::PrintedForm and never throws on first-law mismatch.
CycleResult printed_form_cycle(const OttoProtocol& proto, const BathSpec& baths);

}  // namespace dmotto
