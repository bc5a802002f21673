#include "dmotto/local.hpp"

#include <cmath>
#include <string>

#include "dmotto/error.hpp"

namespace dmotto {

ReducedState partial_trace(const Matrix4& rho, Spin keep) {
    const Complex tr = rho.trace();
    if (std::abs(tr - 1.0) > 1e-10)
        throw InvalidState("partial_trace: density matrix trace is " + std::to_string(tr.real()) + " + " +
                           std::to_string(tr.imag()) + "i, expected 1");

    // Basis index = 2*a + b with a the first spin, b the second.
    ReducedState out;
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            Complex s{};
            for (std::size_t k = 0; k < 2; ++k) {
                s += keep == Spin::First ? rho(2 * i + k, 2 * j + k) : rho(2 * k + i, 2 * k + j);
            }
            out.density(i, j) = s;
        }
    }
    out.P_low = out.density(0, 0).real();
    out.P_high = out.density(1, 1).real();
    return out;
}

Matrix2 local_field_hamiltonian(double B) {
    Matrix2 h;
    h(0, 0) = -B;
    h(1, 1) = B;
    return h;
}

Sign sign_of(double x) {
    if (x > kIdleTolerance) return Sign::Positive;
    if (x < -kIdleTolerance) return Sign::Negative;
    return Sign::Zero;
}

char sign_char(Sign s) {
    switch (s) {
        case Sign::Negative: return '-';
        case Sign::Positive: return '+';
        case Sign::Zero: break;
    }
    return '0';
}

LocalCycleResult local_cycle(const OttoProtocol& proto, const BathSpec& baths) {
    const auto* field = std::get_if<VaryField>(&proto);
    if (field == nullptr)
        throw UnsupportedProtocol("local thermodynamics is defined only for the vary-field protocol");

    const CycleResult global = run_cycle(proto, baths);
    // Spin 1 is low in |00> and in half of each doublet state.
    const Populations dp = population_differences(global.hot_populations, global.cold_populations);
    const double d_low = dp[index(Level::L1)] + 0.5 * (dp[index(Level::L3)] + dp[index(Level::L4)]);

    LocalCycleResult r;
    r.q1 = -2.0 * field->B_hot * d_low;
    r.q2 = 2.0 * field->B_cold * d_low;
    r.w = r.q1 + r.q2;

    if (r.w > kIdleTolerance) {
        if (field->B_hot > field->B_cold && r.q1 > 0.0) r.eta_local = r.w / r.q1;
        if (field->B_hot < field->B_cold && r.q2 > 0.0) r.eta_local = r.w / r.q2;
    }

    r.flags.q1 = sign_of(r.q1);
    r.flags.q2 = sign_of(r.q2);
    r.flags.Q_hot = sign_of(global.Q_hot);
    r.flags.Q_cold = sign_of(global.Q_cold);
    r.flags.global_mode = global.mode;
    if (global.mode != Mode::Idle)
        r.flags.opposed = r.flags.q1 != r.flags.Q_hot && r.flags.q2 != r.flags.Q_cold;
    return r;
}

DirectionFlags heat_direction_report(const OttoProtocol& proto, const BathSpec& baths) {
    return local_cycle(proto, baths).flags;
}

}  // namespace dmotto
