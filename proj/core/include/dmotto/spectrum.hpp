#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "dmotto/matrix.hpp"

namespace dmotto {

// Product basis order used everywhere: |00>, |01>, |10>, |11>.
// sigma_z |0> = -|0>, so |00> is the field-aligned low state.
inline constexpr std::size_t kBasis00 = 0;
inline constexpr std::size_t kBasis01 = 1;
inline constexpr std::size_t kBasis10 = 2;
inline constexpr std::size_t kBasis11 = 3;

/// Canonical level labels. Labels follow analytic identity, never sorted order:
///   L1 = -2B (|00>), L2 = +2B (|11>),
///   L3 = +J sqrt(1 + D^2), L4 = -J sqrt(1 + D^2)  (sign of J rides on L3).
enum class Level : std::size_t { L1 = 0, L2 = 1, L3 = 2, L4 = 3 };

inline constexpr std::size_t kLevels = 4;

using Energies = std::array<double, kLevels>;
using Populations = std::array<double, kLevels>;

inline constexpr std::size_t index(Level l) { return static_cast<std::size_t>(l); }

/// One thermodynamic configuration of the working substance (k_B = 1).
struct SystemParams {
    double J = 0.0;  // exchange coupling; J > 0 antiferromagnetic, J < 0 ferromagnetic
    double D = 0.0;  // DM strength along z
    double B = 0.0;  // magnetic field

    friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

// Throws InvalidParameter unless J, D and B are finite.
void validate(const SystemParams& params);

/// Four eigenpairs under the canonical labeling, plus the doublet phase theta.
struct Spectrum {
    Energies energies{};
    std::array<Vector4, kLevels> eigenvectors{};
    double theta = 0.0;

    double energy(Level l) const { return energies[index(l)]; }
    const Vector4& eigenvector(Level l) const { return eigenvectors[index(l)]; }
};

/// Gibbs state of a spectrum at temperature T.
///
/// Boltzmann weights are evaluated on energies shifted by `energy_shift`
/// (the minimum level), so `partition` is the shifted partition value
/// sum_i exp(-(E_i - shift)/T). The unshifted value is
/// partition * exp(-shift / T) whenever that is representable.
struct ThermalState {
    double temperature = 0.0;
    Populations populations{};
    double partition = 0.0;
    double energy_shift = 0.0;
    Matrix4 density;

    double population(Level l) const { return populations[index(l)]; }
};

/// H = J[(1 + iD) s1+ s2- + (1 - iD) s1- s2+] + B(sz1 + sz2) in the product basis.
///
/// The ladder operators are taken so that s1+ s2- maps |10> to |01>; with
/// this pairing the doublet eigenvectors are (|01> +- e^{-i theta}|10>)/sqrt 2
/// exactly, with theta = arctan D.
Matrix4 build_hamiltonian(const SystemParams& params);

/// Closed-form eigensystem under the canonical labeling.
Spectrum analytic_spectrum(const SystemParams& params);

/// Eigenpairs from cyclic complex Jacobi rotations, ascending by eigenvalue.
struct Eigensystem {
    std::array<double, kLevels> values{};
    std::array<Vector4, kLevels> vectors{};
    int sweeps = 0;
};

/// Dense Hermitian eigensolver. Throws ContractError on non-Hermitian input
/// (defect above 1e-12 relative to the matrix scale) and NumericError if the
/// rotation budget is exhausted.
Eigensystem jacobi_eigensystem(const Matrix4& h);

/// Numeric eigensystem of a two-spin DM Hamiltonian, relabeled canonically by
/// projecting each reference eigenvector onto the numeric (possibly degenerate)
/// eigenspaces. Reference vectors are rebuilt from the coupling phase of h.
/// Throws ContractError when h does not have the two-spin DM structure.
Spectrum numeric_spectrum(const Matrix4& h);

/// Boltzmann populations and density matrix. Throws InvalidTemperature for
/// T <= 0 or non-finite T.
ThermalState gibbs_state(const Spectrum& spectrum, double temperature);

/// Populations only; same numerics as gibbs_state without the density matrix.
Populations gibbs_populations(const Energies& energies, double temperature);

}  // namespace dmotto
