#pragma once

// Random generators and small oracles shared by the unit tests. They use the
// standard library engines, not the library's own Rng, to stay independent.

#include <cmath>
#include <complex>
#include <random>

#include "qmetro/hilbert.hpp"

namespace testing_support {

using qmetro::Complex;
using qmetro::ComplexMatrix;
using qmetro::ComplexVector;
using qmetro::Index;

class Gen {
  public:
    explicit Gen(std::uint64_t seed) : eng_(seed) {}

    double normal() { return norm_(eng_); }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }

    ComplexMatrix gaussian(Index rows, Index cols) {
        ComplexMatrix m(rows, cols);
        for (Index i = 0; i < rows; ++i) {
            for (Index j = 0; j < cols; ++j) {
                m(i, j) = Complex(normal(), normal());
            }
        }
        return m;
    }

    qmetro::HermitianOperator hermitian(Index d) {
        const ComplexMatrix g = gaussian(d, d);
        return qmetro::HermitianOperator::from_hermitian_part(0.5 * (g + g.adjoint()));
    }

    qmetro::PureState pure(Index d) {
        return qmetro::PureState::normalized(gaussian(d, 1).col(0));
    }

    /// rho = G G^dagger / tr with G of shape d x rank; full rank when rank = d.
    qmetro::DensityOperator density(Index d, Index rank) {
        const ComplexMatrix g = gaussian(d, rank);
        ComplexMatrix rho = g * g.adjoint();
        rho /= rho.trace().real();
        return qmetro::DensityOperator::from_hermitian_part(rho);
    }

    /// Haar-ish unitary from the QR factor of a Gaussian matrix.
    ComplexMatrix unitary(Index d) {
        Eigen::HouseholderQR<ComplexMatrix> qr(gaussian(d, d));
        return qr.householderQ() * ComplexMatrix::Identity(d, d);
    }

  private:
    std::mt19937_64 eng_;
    std::normal_distribution<double> norm_{0.0, 1.0};
};

/// Explicit triple loop product, independent of Eigen's kernels.
inline ComplexMatrix naive_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix c = ComplexMatrix::Zero(a.rows(), b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < b.cols(); ++j) {
            for (Index k = 0; k < a.cols(); ++k) {
                c(i, j) += a(i, k) * b(k, j);
            }
        }
    }
    return c;
}

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}

} // namespace testing_support
