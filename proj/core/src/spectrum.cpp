#include "dmotto/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dmotto/error.hpp"

namespace dmotto {

namespace {

constexpr int kMaxJacobiSweeps = 64;

double matrix_scale(const Matrix4& h) { return std::max(1.0, h.max_abs()); }

std::array<Vector4, kLevels> reference_vectors(double theta) {
    const double r = 1.0 / std::sqrt(2.0);
    const Complex phase = std::polar(1.0, -theta);
    std::array<Vector4, kLevels> v{};
    v[index(Level::L1)][kBasis00] = 1.0;
    v[index(Level::L2)][kBasis11] = 1.0;
    v[index(Level::L3)][kBasis01] = r;
    v[index(Level::L3)][kBasis10] = r * phase;
    v[index(Level::L4)][kBasis01] = r;
    v[index(Level::L4)][kBasis10] = -r * phase;
    return v;
}

double off_diagonal_norm2(const Matrix4& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (i != j) s += std::norm(a(i, j));
    return s;
}

void normalize(Vector4& v) {
    const double n = std::sqrt(std::real(inner(v, v)));
    for (auto& z : v) z /= n;
}

}  // namespace

void validate(const SystemParams& params) {
    if (!std::isfinite(params.J) || !std::isfinite(params.D) || !std::isfinite(params.B))
        throw InvalidParameter("system parameters must be finite (J=" + std::to_string(params.J) +
                               ", D=" + std::to_string(params.D) + ", B=" + std::to_string(params.B) + ")");
}

Matrix4 build_hamiltonian(const SystemParams& params) {
    validate(params);
    Matrix4 h;
    h(kBasis00, kBasis00) = -2.0 * params.B;
    h(kBasis11, kBasis11) = 2.0 * params.B;
    h(kBasis01, kBasis10) = params.J * Complex(1.0, params.D);
    h(kBasis10, kBasis01) = params.J * Complex(1.0, -params.D);
    return h;
}

Spectrum analytic_spectrum(const SystemParams& params) {
    validate(params);
    Spectrum s;
    const double doublet = params.J * std::hypot(1.0, params.D);
    s.energies = {-2.0 * params.B, 2.0 * params.B, doublet, -doublet};
    s.theta = std::atan(params.D);
    s.eigenvectors = reference_vectors(s.theta);
    return s;
}

Eigensystem jacobi_eigensystem(const Matrix4& h) {
    const double scale = matrix_scale(h);
    if (h.hermiticity_defect() > 1e-12 * scale)
        throw ContractError("jacobi_eigensystem: matrix is not Hermitian (defect " +
                            std::to_string(h.hermiticity_defect()) + ")");

    Matrix4 a = h;
    // Symmetrize the diagonal so rounding in the input cannot leak imaginary parts.
    for (std::size_t i = 0; i < 4; ++i) a(i, i) = a(i, i).real();
    Matrix4 v = Matrix4::identity();

    const double target = std::pow(4e-15 * scale, 2);
    int sweep = 0;
    for (; sweep < kMaxJacobiSweeps && off_diagonal_norm2(a) > target; ++sweep) {
        for (std::size_t p = 0; p < 3; ++p) {
            for (std::size_t q = p + 1; q < 4; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= 1e-300) continue;

                // Phase out a_pq, then a real symmetric rotation zeroes it.
                const Complex phase = std::polar(1.0, -std::arg(apq));
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(tau * tau + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                Matrix4 g = Matrix4::identity();
                g(p, p) = c;
                g(p, q) = s;
                g(q, p) = -s * phase;
                g(q, q) = c * phase;

                a = g.adjoint() * a * g;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                v = v * g;
            }
        }
    }
    if (off_diagonal_norm2(a) > target * 1e2)
        throw NumericError("jacobi_eigensystem: no convergence after " + std::to_string(sweep) + " sweeps");

    std::array<std::size_t, 4> order{};
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    Eigensystem out;
    out.sweeps = sweep;
    for (std::size_t k = 0; k < 4; ++k) {
        const std::size_t col = order[k];
        out.values[k] = a(col, col).real();
        for (std::size_t i = 0; i < 4; ++i) out.vectors[k][i] = v(i, col);
    }
    return out;
}

Spectrum numeric_spectrum(const Matrix4& h) {
    const Eigensystem eig = jacobi_eigensystem(h);
    const double scale = matrix_scale(h);

    Spectrum out;
    const Complex coupling = h(kBasis01, kBasis10);
    out.theta = coupling.real() != 0.0 ? std::atan(coupling.imag() / coupling.real()) : 0.0;
    const auto refs = reference_vectors(out.theta);

    // Group numerically degenerate eigenvalues; eigenvectors inside a group are
    // only defined up to a unitary mix, so overlap is measured against the span.
    std::array<std::size_t, 4> cluster{};
    std::size_t clusters = 0;
    for (std::size_t k = 0; k < 4; ++k) {
        if (k > 0 && eig.values[k] - eig.values[k - 1] <= 1e-9 * scale)
            cluster[k] = cluster[k - 1];
        else
            cluster[k] = clusters++;
    }

    std::array<std::size_t, 4> assigned{};
    std::vector<std::size_t> labels_in(clusters, 0);
    for (std::size_t label = 0; label < 4; ++label) {
        std::vector<double> weight(clusters, 0.0);
        for (std::size_t k = 0; k < 4; ++k) weight[cluster[k]] += std::norm(inner(eig.vectors[k], refs[label]));
        const auto best = static_cast<std::size_t>(std::max_element(weight.begin(), weight.end()) - weight.begin());
        if (weight[best] < 0.5)
            throw ContractError("numeric_spectrum: eigenvectors do not match the two-spin DM structure "
                                "(best overlap " + std::to_string(weight[best]) + ")");
        assigned[label] = best;
        ++labels_in[best];
    }
    for (std::size_t c = 0; c < clusters; ++c) {
        const auto size = static_cast<std::size_t>(std::count(cluster.begin(), cluster.end(), c));
        if (labels_in[c] != size)
            throw ContractError("numeric_spectrum: ambiguous level assignment");
    }

    for (std::size_t label = 0; label < 4; ++label) {
        Vector4 u{};
        double energy = 0.0;
        double total = 0.0;
        for (std::size_t k = 0; k < 4; ++k) {
            if (cluster[k] != assigned[label]) continue;
            const Complex w = inner(eig.vectors[k], refs[label]);
            for (std::size_t i = 0; i < 4; ++i) u[i] += w * eig.vectors[k][i];
            energy += std::norm(w) * eig.values[k];
            total += std::norm(w);
        }
        for (std::size_t prev = 0; prev < label; ++prev) {
            if (assigned[prev] != assigned[label]) continue;
            const Complex w = inner(out.eigenvectors[prev], u);
            for (std::size_t i = 0; i < 4; ++i) u[i] -= w * out.eigenvectors[prev][i];
        }
        normalize(u);
        out.eigenvectors[label] = u;
        out.energies[label] = energy / total;
    }
    return out;
}

Populations gibbs_populations(const Energies& energies, double temperature) {
    if (!(temperature > 0.0) || !std::isfinite(temperature))
        throw InvalidTemperature("temperature must be positive and finite, got " + std::to_string(temperature));
    const double shift = *std::min_element(energies.begin(), energies.end());
    Populations p{};
    double z = 0.0;
    for (std::size_t i = 0; i < kLevels; ++i) {
        p[i] = std::exp(-(energies[i] - shift) / temperature);
        z += p[i];
    }
    for (auto& x : p) x /= z;
    return p;
}

ThermalState gibbs_state(const Spectrum& spectrum, double temperature) {
    ThermalState st;
    st.populations = gibbs_populations(spectrum.energies, temperature);
    st.temperature = temperature;
    st.energy_shift = *std::min_element(spectrum.energies.begin(), spectrum.energies.end());
    st.partition = 0.0;
    for (double e : spectrum.energies) st.partition += std::exp(-(e - st.energy_shift) / temperature);
    for (std::size_t i = 0; i < kLevels; ++i)
        st.density = st.density + projector(spectrum.eigenvectors[i], st.populations[i]);
    return st;
}

}  // namespace dmotto
