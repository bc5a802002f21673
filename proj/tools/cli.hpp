#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>

namespace dmotto::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitInvariant = 2;

struct OracleSummary {
    std::size_t draws = 0;
    double max_eigenvalue_deviation = 0.0;
    double seconds = 0.0;
};

// Analytic vs Jacobi spectrum on `draws` random (J, D, B) in [-10, 10]^3.
OracleSummary spectrum_oracle(std::size_t draws, std::uint64_t seed);

// Entry point behind the dmotto executable. Exit codes: 0 success,
// 1 validation or usage error, 2 invariant violation.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dmotto::cli
