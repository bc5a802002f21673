#pragma once

#include <optional>

#include "dmotto/cycle.hpp"
#include "dmotto/matrix.hpp"

namespace dmotto {

enum class Spin { First = 1, Second = 2 };

/// Single-spin state. Local basis order |0>, |1> with |0> the low-field state.
struct ReducedState {
    Matrix2 density;
    double P_low = 0.0;
    double P_high = 0.0;
};

/// Traces out the complementary spin. Throws InvalidState when the trace of
/// rho differs from 1 by more than 1e-10.
ReducedState partial_trace(const Matrix4& rho, Spin keep);

/// diag(-B, +B): the field part of the two-spin Hamiltonian seen by one spin.
Matrix2 local_field_hamiltonian(double B);

enum class Sign { Negative = -1, Zero = 0, Positive = 1 };

// Zero when |x| <= kIdleTolerance.
Sign sign_of(double x);
char sign_char(Sign s);

struct DirectionFlags {
    Sign q1 = Sign::Zero;
    Sign q2 = Sign::Zero;
    Sign Q_hot = Sign::Zero;
    Sign Q_cold = Sign::Zero;
    // Unset when the global cycle is Idle.
    std::optional<bool> opposed;
    Mode global_mode = Mode::Idle;
};

struct LocalCycleResult {
    double q1 = 0.0;  // local heat at the hot-side field, > 0 absorbed
    double q2 = 0.0;  // local heat at the cold-side field, > 0 absorbed
    double w = 0.0;   // local work of one spin, q1 + q2
    std::optional<double> eta_local;
    DirectionFlags flags;
};

/// Per-spin thermodynamics of a vary-field cycle:
///   q1 = Tr[(rho1_hot - rho1_cold) H_l(B_hot)]
///   q2 = Tr[(rho1_cold - rho1_hot) H_l(B_cold)]
///   evaluated as -2 B_hot dP_low and 2 B_cold dP_low, dP_low = dp1 + (dp3 + dp4)/2
/// eta_local = w/q1 when B_hot > B_cold, w/q2 when B_hot < B_cold; set only
/// when w > 0 and that denominator is positive.
/// Throws UnsupportedProtocol for VaryDM.
LocalCycleResult local_cycle(const OttoProtocol& proto, const BathSpec& baths);

/// Signs of (q1, q2, Q_hot, Q_cold) and whether local and global heat flows
/// point in opposite directions on both sides.
DirectionFlags heat_direction_report(const OttoProtocol& proto, const BathSpec& baths);

}  // namespace dmotto
