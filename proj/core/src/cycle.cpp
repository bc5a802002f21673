#include "dmotto/cycle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dmotto/error.hpp"
#include "dmotto/printed_forms.hpp"

namespace dmotto {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double max_abs_level(const Energies& a, const Energies& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < kLevels; ++i) m = std::max({m, std::abs(a[i]), std::abs(b[i])});
    return m;
}

}  // namespace

std::string_view to_string(Mode mode) {
    switch (mode) {
        case Mode::Engine: return "Engine";
        case Mode::Refrigerator: return "Refrigerator";
        case Mode::Heater: return "Heater";
        case Mode::Idle: return "Idle";
    }
    return "Unknown";
}

std::string_view protocol_name(const OttoProtocol& proto) {
    return std::holds_alternative<VaryDM>(proto) ? "vary-dm" : "vary-field";
}

SystemParams hot_side(const OttoProtocol& proto) {
    return std::visit(overloaded{
                          [](const VaryDM& p) { return SystemParams{p.J, p.D_hot, p.B}; },
                          [](const VaryField& p) { return SystemParams{p.J, p.D, p.B_hot}; },
                      },
                      proto);
}

SystemParams cold_side(const OttoProtocol& proto) {
    return std::visit(overloaded{
                          [](const VaryDM& p) { return SystemParams{p.J, p.D_cold, p.B}; },
                          [](const VaryField& p) { return SystemParams{p.J, p.D, p.B_cold}; },
                      },
                      proto);
}

OttoProtocol swap_sides(const OttoProtocol& proto) {
    return std::visit(overloaded{
                          [](VaryDM p) -> OttoProtocol {
                              std::swap(p.D_hot, p.D_cold);
                              return p;
                          },
                          [](VaryField p) -> OttoProtocol {
                              std::swap(p.B_hot, p.B_cold);
                              return p;
                          },
                      },
                      proto);
}

void validate(const OttoProtocol& proto) {
    validate(hot_side(proto));
    validate(cold_side(proto));
}

void validate(const BathSpec& baths) {
    const auto ok = [](double t) { return std::isfinite(t) && t > 0.0; };
    if (!ok(baths.T_hot) || !ok(baths.T_cold))
        throw InvalidParameter("bath temperatures must be positive and finite (T_hot=" +
                               std::to_string(baths.T_hot) + ", T_cold=" + std::to_string(baths.T_cold) + ")");
}

Mode classify(double Q_hot, double Q_cold, double W) {
    if (std::abs(W) <= kIdleTolerance) return Mode::Idle;
    if (W > kIdleTolerance && Q_hot > 0.0 && Q_cold < 0.0) return Mode::Engine;
    if (W < -kIdleTolerance && Q_cold > 0.0 && Q_hot < 0.0) return Mode::Refrigerator;
    return Mode::Heater;
}

double efficiency(const CycleResult& result) {
    if (!(result.W > kIdleTolerance && result.Q_hot > 0.0))
        throw UndefinedEfficiency("efficiency is defined only for W > 0 and Q_hot > 0 (W=" +
                                  std::to_string(result.W) + ", Q_hot=" + std::to_string(result.Q_hot) + ")");
    return result.W / result.Q_hot;
}

Populations population_differences(const Populations& hot, const Populations& cold) {
    Populations dp{};
    std::size_t bulk = 0;
    for (std::size_t i = 1; i < kLevels; ++i)
        if (hot[i] + cold[i] > hot[bulk] + cold[bulk]) bulk = i;
    double rest = 0.0;
    for (std::size_t i = 0; i < kLevels; ++i) {
        if (i == bulk) continue;
        dp[i] = hot[i] - cold[i];
        rest += dp[i];
    }
    dp[bulk] = -rest;
    return dp;
}

CycleResult run_cycle(const OttoProtocol& proto, const BathSpec& baths) {
    validate(proto);
    validate(baths);

    CycleResult r;
    r.hot_energies = analytic_spectrum(hot_side(proto)).energies;
    r.cold_energies = analytic_spectrum(cold_side(proto)).energies;
    r.hot_populations = gibbs_populations(r.hot_energies, baths.T_hot);
    r.cold_populations = gibbs_populations(r.cold_energies, baths.T_cold);

    const Populations dp = population_differences(r.hot_populations, r.cold_populations);
    for (std::size_t i = 0; i < kLevels; ++i) {
        r.Q_hot += r.hot_energies[i] * dp[i];
        r.Q_cold -= r.cold_energies[i] * dp[i];
        r.W += (r.hot_energies[i] - r.cold_energies[i]) * dp[i];
    }

    r.first_law_residual = std::abs(r.W - (r.Q_hot + r.Q_cold));
    const double tol = 1e-12 * std::max(1.0, max_abs_level(r.hot_energies, r.cold_energies) / 16.0);
    if (r.first_law_residual > tol)
        throw InvariantViolation("first-law identity broken: |W - (Q_hot + Q_cold)| = " +
                                 std::to_string(r.first_law_residual));

    r.mode = classify(r.Q_hot, r.Q_cold, r.W);
    if (r.mode == Mode::Engine) r.eta = r.W / r.Q_hot;
    return r;
}

CycleResult printed_form_cycle(const OttoProtocol& proto, const BathSpec& baths) {
    CycleResult r = run_cycle(proto, baths);
    const printed::Terms t(r.cold_populations, r.hot_populations);
    std::visit(overloaded{
                   [&](const VaryDM& p) {
                       r.Q_hot = printed::vary_dm_heat_hot(p, t);
                       r.Q_cold = printed::vary_dm_heat_cold(p, t);
                       r.W = printed::vary_dm_work(p, t);
                   },
                   [&](const VaryField& p) {
                       r.Q_hot = printed::vary_field_heat_hot(p, t);
                       r.Q_cold = printed::vary_field_heat_cold(p, t);
                       r.W = printed::vary_field_work(p, t);
                   },
               },
               proto);
    r.provenance = Provenance::PrintedForm;
    r.first_law_residual = std::abs(r.W - (r.Q_hot + r.Q_cold));
    r.mode = classify(r.Q_hot, r.Q_cold, r.W);
    r.eta.reset();
    if (r.mode == Mode::Engine) r.eta = r.W / r.Q_hot;
    return r;
}

}  // namespace dmotto
