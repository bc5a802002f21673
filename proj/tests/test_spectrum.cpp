#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dmotto/error.hpp"
#include "dmotto/spectrum.hpp"
#include "oracle/oracle.hpp"
#include "oracle/reference_values.hpp"

using namespace dmotto;

namespace {

double max_entry_gap(const Matrix4& m, const oracle::Mat4& o) {
    double d = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const Complex ref(static_cast<double>(o[i][j].real()), static_cast<double>(o[i][j].imag()));
            d = std::max(d, std::abs(m(i, j) - ref));
        }
    return d;
}

double residual(const Matrix4& h, const Vector4& v, double e) {
    const Vector4 hv = apply(h, v);
    double r = 0.0;
    for (std::size_t i = 0; i < 4; ++i) r = std::max(r, std::abs(hv[i] - e * v[i]));
    return r;
}

}  // namespace

TEST_SUITE("spectrum") {

TEST_CASE("hamiltonian matches the Kronecker-product construction") {
    for (auto [J, D, B] : {std::array{1.0, 0.0, 4.0}, {-2.5, 1.7, 0.3}, {0.0, 3.0, -1.0}, {7.0, -4.0, 2.0}}) {
        const Matrix4 h = build_hamiltonian({J, D, B});
        CHECK(max_entry_gap(h, oracle::hamiltonian(J, D, B)) < 1e-15);
        CHECK(h.hermiticity_defect() <= 1e-14);
    }
}

TEST_CASE("field-only hamiltonian is diagonal (-2, 0, 0, 2)") {
    const Matrix4 h = build_hamiltonian({0.0, 0.0, 1.0});
    const std::array expected{-2.0, 0.0, 0.0, 2.0};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(h(i, j) == Complex(i == j ? expected[i] : 0.0));
}

TEST_CASE("XX-only hamiltonian couples the antialigned states") {
    const Matrix4 h = build_hamiltonian({1.0, 0.0, 0.0});
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const bool coupled = (i == 1 && j == 2) || (i == 2 && j == 1);
            CHECK(h(i, j) == Complex(coupled ? 1.0 : 0.0));
        }
}

TEST_CASE("aligned product states are exact eigenvectors") {
    const Matrix4 h = build_hamiltonian({3.0, 2.0, 1.5});
    Vector4 up{}, down{};
    up[kBasis00] = 1.0;
    down[kBasis11] = 1.0;
    CHECK(residual(h, up, -3.0) == 0.0);
    CHECK(residual(h, down, 3.0) == 0.0);
}

TEST_CASE("non-finite parameters are rejected") {
    CHECK_THROWS_AS(build_hamiltonian({NAN, 0.0, 1.0}), InvalidParameter);
    CHECK_THROWS_AS(analytic_spectrum({1.0, INFINITY, 1.0}), InvalidParameter);
}

TEST_CASE("analytic spectrum closed forms") {
    const Spectrum a = analytic_spectrum({1.0, 0.0, 4.0});
    CHECK(a.energies == Energies{-8.0, 8.0, 1.0, -1.0});
    CHECK(a.theta == 0.0);

    const Spectrum b = analytic_spectrum({1.0, 1.0, 0.0});
    CHECK(b.theta == doctest::Approx(std::numbers::pi / 4).epsilon(1e-15));
    CHECK(b.energy(Level::L3) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(b.energy(Level::L4) == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-15));

    const Spectrum c = analytic_spectrum({-1.0, 2.0, 4.0});
    CHECK(c.energy(Level::L1) == -8.0);
    CHECK(c.energy(Level::L2) == 8.0);
    CHECK(c.energy(Level::L3) == doctest::Approx(-std::sqrt(5.0)).epsilon(1e-15));
    CHECK(c.energy(Level::L4) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
}

TEST_CASE("analytic eigenpairs satisfy H v = E v and are orthonormal") {
    for (auto [J, D, B] : {std::array{1.0, 1.0, 4.0}, {-3.0, -2.2, 0.7}, {0.5, 9.0, -6.0}}) {
        const SystemParams p{J, D, B};
        const Spectrum s = analytic_spectrum(p);
        const Matrix4 h = build_hamiltonian(p);
        double sum = 0.0;
        for (Level l : {Level::L1, Level::L2, Level::L3, Level::L4}) {
            CHECK(residual(h, s.eigenvector(l), s.energy(l)) < 1e-13);
            sum += s.energy(l);
        }
        CHECK(std::abs(sum) <= 1e-12);
        CHECK(s.theta == doctest::Approx(std::atan(D)).epsilon(1e-15));
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                CHECK(std::abs(inner(s.eigenvectors[i], s.eigenvectors[j]) - (i == j ? 1.0 : 0.0)) < 1e-12);
    }
}

TEST_CASE("numeric spectrum agrees with closed forms") {
    const Spectrum n = numeric_spectrum(build_hamiltonian({1.0, 1.0, 4.0}));
    CHECK(n.energy(Level::L1) == doctest::Approx(-8.0).epsilon(1e-12));
    CHECK(n.energy(Level::L2) == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(n.energy(Level::L3) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(n.energy(Level::L4) == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));

    const Spectrum d = numeric_spectrum(build_hamiltonian({1.0, 0.0, 4.0}));
    const Spectrum a = analytic_spectrum({1.0, 0.0, 4.0});
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(d.energies[k] - a.energies[k]) <= 1e-10);

    const Spectrum e = numeric_spectrum(build_hamiltonian({2.5, 1.7, 0.3}));
    const double r = 2.5 * std::sqrt(1.0 + 1.7 * 1.7);
    CHECK(std::abs(e.energy(Level::L1) + 0.6) <= 1e-10);
    CHECK(std::abs(e.energy(Level::L2) - 0.6) <= 1e-10);
    CHECK(std::abs(e.energy(Level::L3) - r) <= 1e-10);
    CHECK(std::abs(e.energy(Level::L4) + r) <= 1e-10);
}

TEST_CASE("zero matrix gives zero energies and an orthonormal basis") {
    const Spectrum z = numeric_spectrum(Matrix4{});
    for (double e : z.energies) CHECK(e == 0.0);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(std::abs(inner(z.eigenvectors[i], z.eigenvectors[j]) - (i == j ? 1.0 : 0.0)) < 1e-12);
}

TEST_CASE("degenerate level crossing 2B = J r is labeled by projection") {
    const double D = 2.0;
    const double B = std::sqrt(5.0) / 2.0;  // L2 = L3 = sqrt5
    const SystemParams p{1.0, D, B};
    const Spectrum n = numeric_spectrum(build_hamiltonian(p));
    const Spectrum a = analytic_spectrum(p);
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(n.energies[k] - a.energies[k]) <= 1e-10);
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(inner(a.eigenvectors[k], n.eigenvectors[k])) > 1.0 - 1e-9);
}

TEST_CASE("jacobi solver returns ascending eigenvalues") {
    const Eigensystem es = jacobi_eigensystem(build_hamiltonian({3.0, -1.0, 0.5}));
    CHECK(std::is_sorted(es.values.begin(), es.values.end()));
    CHECK(es.sweeps > 0);
}

TEST_CASE("non-Hermitian input is a contract error") {
    Matrix4 h = build_hamiltonian({1.0, 1.0, 1.0});
    h(0, 3) = Complex(0.5, 0.0);
    CHECK_THROWS_AS(jacobi_eigensystem(h), ContractError);
    CHECK_THROWS_AS(numeric_spectrum(h), ContractError);
}

TEST_CASE("Gibbs populations at reference points") {
    const Populations p = gibbs_populations({-8.0, 8.0, 1.0, -1.0}, 2.0);
    for (std::size_t k = 0; k < 4; ++k) CHECK(p[k] == doctest::Approx(reference::kPops[k]).epsilon(1e-8));

    const double r5 = std::sqrt(5.0);
    CHECK(gibbs_populations({-8.0, 8.0, r5, -r5}, 1.0)[0] == doctest::Approx(reference::kP1Dm2).epsilon(1e-14));

    const Populations hot = gibbs_populations({-8.0, 8.0, 1.0, -1.0}, 1e9);
    for (double v : hot) CHECK(v == doctest::Approx(0.25).epsilon(1e-7));
}

TEST_CASE("Gibbs populations match the pairwise-ratio oracle") {
    const oracle::Levels e{-3.0L, 5.0L, 0.25L, -0.25L};
    for (double T : {0.01, 0.3, 1.0, 7.0, 1e4}) {
        const Populations p = gibbs_populations({-3.0, 5.0, 0.25, -0.25}, T);
        const auto o = oracle::populations(e, T);
        for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(p[k] - static_cast<double>(o[k])) <= 1e-15);
    }
}

TEST_CASE("large exponents do not overflow") {
    const Populations p = gibbs_populations({-1e4, 1e4, 0.0, 0.0}, 1e-3);
    CHECK(p[0] == 1.0);
    CHECK(std::isfinite(p[1]));
}

TEST_CASE("non-positive temperature is rejected") {
    const Spectrum s = analytic_spectrum({1.0, 0.0, 4.0});
    CHECK_THROWS_AS(gibbs_state(s, 0.0), InvalidTemperature);
    CHECK_THROWS_AS(gibbs_state(s, -1.0), InvalidTemperature);
    CHECK_THROWS_AS(gibbs_populations(s.energies, NAN), InvalidTemperature);
}

TEST_CASE("thermal density has unit trace and commutes with H") {
    const SystemParams p{1.3, -0.8, 2.1};
    const ThermalState t = gibbs_state(analytic_spectrum(p), 1.7);
    CHECK(std::abs(t.density.trace() - 1.0) <= 1e-13);
    CHECK(commutator(t.density, build_hamiltonian(p)).frobenius_norm() <= 1e-12);
    CHECK(t.energy_shift == doctest::Approx(-4.2));
    double z = 0.0;
    for (double e : analytic_spectrum(p).energies) z += std::exp(-(e - t.energy_shift) / 1.7);
    CHECK(t.partition == doctest::Approx(z).epsilon(1e-14));
}

}
