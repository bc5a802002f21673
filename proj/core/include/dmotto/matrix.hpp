#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>

namespace dmotto {

using Complex = std::complex<double>;

/// Dense N x N complex matrix with row-major storage.
///
/// Only the handful of operations the two-spin problem needs are provided;
/// anything larger than 4 x 4 is out of scope.
template <std::size_t N>
class ComplexMatrix {
public:
    static constexpr std::size_t dim = N;

    constexpr ComplexMatrix() = default;

    static ComplexMatrix identity() {
        ComplexMatrix m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    Complex& operator()(std::size_t row, std::size_t col) { return data_[row * N + col]; }
    const Complex& operator()(std::size_t row, std::size_t col) const { return data_[row * N + col]; }

    std::span<const Complex, N * N> entries() const { return data_; }

    ComplexMatrix adjoint() const {
        ComplexMatrix out;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) out(i, j) = std::conj((*this)(j, i));
        return out;
    }

    Complex trace() const {
        Complex t{};
        for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& z : data_) s += std::norm(z);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& z : data_) m = std::max(m, std::abs(z));
        return m;
    }

    // Largest |a_ij - conj(a_ji)| over all entries.
    double hermiticity_defect() const {
        double m = 0.0;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = i; j < N; ++j)
                m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return m;
    }

    bool is_hermitian(double tol = 1e-14) const { return hermiticity_defect() <= tol; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        ComplexMatrix out;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t k = 0; k < N; ++k) {
                const Complex aik = a(i, k);
                if (aik == Complex{}) continue;
                for (std::size_t j = 0; j < N; ++j) out(i, j) += aik * b(k, j);
            }
        return out;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
        for (std::size_t i = 0; i < N * N; ++i) a.data_[i] += b.data_[i];
        return a;
    }

    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
        for (std::size_t i = 0; i < N * N; ++i) a.data_[i] -= b.data_[i];
        return a;
    }

    friend ComplexMatrix operator*(double s, ComplexMatrix a) {
        for (auto& z : a.data_) z *= s;
        return a;
    }

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::array<Complex, N * N> data_{};
};

using Matrix4 = ComplexMatrix<4>;
using Matrix2 = ComplexMatrix<2>;
using Vector4 = std::array<Complex, 4>;

inline Complex inner(const Vector4& a, const Vector4& b) {
    Complex s{};
    for (std::size_t i = 0; i < 4; ++i) s += std::conj(a[i]) * b[i];
    return s;
}

inline Vector4 apply(const Matrix4& m, const Vector4& v) {
    Vector4 out{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) out[i] += m(i, j) * v[j];
    return out;
}

// |v><v| scaled by weight.
inline Matrix4 projector(const Vector4& v, double weight = 1.0) {
    Matrix4 out;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) out(i, j) = weight * v[i] * std::conj(v[j]);
    return out;
}

template <std::size_t N>
ComplexMatrix<N> commutator(const ComplexMatrix<N>& a, const ComplexMatrix<N>& b) {
    return a * b - b * a;
}

}  // namespace dmotto
