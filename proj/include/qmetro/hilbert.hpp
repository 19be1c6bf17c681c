#pragma once

/**
 * @file
 * Dense complex linear algebra and quantum-state primitives.
 *
 * Matrices are Eigen::MatrixXcd. Row index is the ket index and column index
 * is the bra index, so `m(j, k)` is <j|M|k>. Kronecker products order the
 * left factor as the slow (major) index: the basis state |i>|k> of a
 * (da x db) product sits at index i*db + k.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "qmetro/errors.hpp"

namespace qmetro {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr Complex kI{0.0, 1.0};

/// Largest dimension accepted for a single system.
inline constexpr Index kMaxSystemDim = 256;
/// Largest dimension accepted after tensoring copies together.
inline constexpr Index kMaxTensorDim = 4096;

namespace tolerance {
inline constexpr double kHermitian = 1e-12;
inline constexpr double kTrace = 1e-12;
inline constexpr double kNorm = 1e-12;
inline constexpr double kNegativeEigenvalue = 1e-10;
inline constexpr double kImaginaryResidue = 1e-10;
} // namespace tolerance

inline double max_abs(const ComplexMatrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("max_abs_diff: shape mismatch");
    }
    return max_abs(a - b);
}

inline bool approx_equal(const ComplexMatrix &a, const ComplexMatrix &b,
                         double tol) {
    return a.rows() == b.rows() && a.cols() == b.cols() &&
           max_abs(a - b) <= tol;
}

namespace detail {

inline void require_square(const ComplexMatrix &m, const char *what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw DimensionError(std::string(what) + ": matrix must be square and non-empty");
    }
    if (m.rows() > kMaxTensorDim) {
        throw DimensionError(std::string(what) + ": dimension " +
                             std::to_string(m.rows()) + " exceeds cap " +
                             std::to_string(kMaxTensorDim));
    }
}

inline void require_same_dim(Index a, Index b, const char *what) {
    if (a != b) {
        throw DimensionError(std::string(what) + ": dimension mismatch (" +
                             std::to_string(a) + " vs " + std::to_string(b) + ")");
    }
}

inline double hermiticity_residual(const ComplexMatrix &m) {
    return max_abs(m - m.adjoint());
}

inline ComplexMatrix hermitian_part(const ComplexMatrix &m) {
    return 0.5 * (m + m.adjoint());
}

} // namespace detail

/// Hermitian matrix, checked at construction.
class HermitianOperator {
  public:
    explicit HermitianOperator(ComplexMatrix m) : m_(std::move(m)) {
        detail::require_square(m_, "HermitianOperator");
        const double residual = detail::hermiticity_residual(m_);
        if (!(residual <= tolerance::kHermitian)) {
            throw ValidationError("HermitianOperator: ||A - A^dagger||_max = " +
                                  std::to_string(residual));
        }
    }

    /// Builds from (m + m^dagger)/2. For values produced by floating-point
    /// arithmetic that are Hermitian only up to round-off.
    static HermitianOperator from_hermitian_part(const ComplexMatrix &m) {
        return HermitianOperator(detail::hermitian_part(m));
    }

    static HermitianOperator diagonal(const RealVector &d) {
        return HermitianOperator(d.cast<Complex>().asDiagonal().toDenseMatrix());
    }

    static HermitianOperator identity(Index dim) {
        return HermitianOperator(ComplexMatrix::Identity(dim, dim));
    }

    static HermitianOperator zero(Index dim) {
        return HermitianOperator(ComplexMatrix::Zero(dim, dim));
    }

    const ComplexMatrix &matrix() const noexcept { return m_; }
    Index dim() const noexcept { return m_.rows(); }

  private:
    ComplexMatrix m_;
};

/// Unit-norm state vector.
class PureState {
  public:
    explicit PureState(ComplexVector amplitudes) : v_(std::move(amplitudes)) {
        if (v_.size() == 0 || v_.size() > kMaxTensorDim) {
            throw DimensionError("PureState: invalid dimension " + std::to_string(v_.size()));
        }
        const double n2 = v_.squaredNorm();
        if (!(std::abs(n2 - 1.0) <= tolerance::kNorm)) {
            throw ValidationError("PureState: squared norm " + std::to_string(n2) + " != 1");
        }
    }

    static PureState normalized(const ComplexVector &v) {
        const double n = v.norm();
        if (!(n > 0.0)) {
            throw ValidationError("PureState: cannot normalize the zero vector");
        }
        return PureState(v / n);
    }

    static PureState basis(Index dim, Index k) {
        if (k < 0 || k >= dim) {
            throw DimensionError("PureState::basis: index out of range");
        }
        ComplexVector v = ComplexVector::Zero(dim);
        v(k) = 1.0;
        return PureState(std::move(v));
    }

    const ComplexVector &amplitudes() const noexcept { return v_; }
    Index dim() const noexcept { return v_.size(); }
    ComplexMatrix projector() const { return v_ * v_.adjoint(); }

  private:
    ComplexVector v_;
};

namespace detail {
inline double min_eigenvalue(const ComplexMatrix &m) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("min_eigenvalue: eigensolver did not converge");
    }
    return solver.eigenvalues().minCoeff();
}
} // namespace detail

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityOperator {
  public:
    explicit DensityOperator(ComplexMatrix m) : m_(std::move(m)) {
        detail::require_square(m_, "DensityOperator");
        const double residual = detail::hermiticity_residual(m_);
        if (!(residual <= tolerance::kHermitian)) {
            throw ValidationError("DensityOperator: not Hermitian, residual " +
                                  std::to_string(residual));
        }
        const double tr = m_.trace().real();
        if (!(std::abs(tr - 1.0) <= tolerance::kTrace)) {
            throw ValidationError("DensityOperator: trace " + std::to_string(tr) + " != 1");
        }
        const double lo = detail::min_eigenvalue(m_);
        if (lo < -tolerance::kNegativeEigenvalue) {
            throw ValidationError("DensityOperator: negative eigenvalue " + std::to_string(lo));
        }
    }

    static DensityOperator from_hermitian_part(const ComplexMatrix &m) {
        return DensityOperator(detail::hermitian_part(m));
    }

    static DensityOperator from_pure(const PureState &psi) {
        return DensityOperator(detail::hermitian_part(psi.projector()));
    }

    static DensityOperator maximally_mixed(Index dim) {
        return DensityOperator(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
    }

    /// Diagonal state with the given (non-negative, unit-sum) populations.
    static DensityOperator diagonal(const RealVector &populations) {
        return DensityOperator(populations.cast<Complex>().asDiagonal().toDenseMatrix());
    }

    const ComplexMatrix &matrix() const noexcept { return m_; }
    Index dim() const noexcept { return m_.rows(); }
    double purity() const { return (m_ * m_).trace().real(); }

  private:
    ComplexMatrix m_;
};

using State = std::variant<PureState, DensityOperator>;

inline Index dim_of(const State &s) {
    return std::visit([](const auto &x) { return x.dim(); }, s);
}

inline DensityOperator to_density(const State &s) {
    if (const auto *psi = std::get_if<PureState>(&s)) {
        return DensityOperator::from_pure(*psi);
    }
    return std::get<DensityOperator>(s);
}

/// Spectral decomposition A = V diag(lambda) V^dagger, eigenvalues ascending.
struct EigenDecomposition {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors; // columns

    Index dim() const noexcept { return eigenvalues.size(); }

    PureState vector(Index k) const { return PureState(eigenvectors.col(k)); }

    ComplexMatrix reconstruct() const {
        return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() *
               eigenvectors.adjoint();
    }

    /// V f(Lambda) V^dagger for a scalar function of the eigenvalues.
    template <class F> ComplexMatrix apply(F &&f) const {
        ComplexVector fd(dim());
        for (Index k = 0; k < dim(); ++k) {
            fd(k) = f(eigenvalues(k));
        }
        return eigenvectors * fd.asDiagonal() * eigenvectors.adjoint();
    }
};

namespace detail {

// Makes the largest-magnitude component of v real and positive.
inline void fix_phase(Eigen::Ref<ComplexVector> v) {
    const double top = v.cwiseAbs().maxCoeff();
    for (Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) >= top * (1.0 - 1e-9)) {
            v *= std::conj(v(i)) / std::abs(v(i));
            v(i) = std::abs(v(i));
            return;
        }
    }
}

// Replaces the basis of a degenerate eigenspace by the Gram-Schmidt
// orthonormalization of projected standard basis vectors. At each step the
// standard basis index with the largest remaining projection wins (lowest
// index on exact ties).
inline void canonicalize_subspace(ComplexMatrix &vectors, Index begin, Index end) {
    const Index d = vectors.rows();
    const Index k = end - begin;
    const ComplexMatrix span = vectors.middleCols(begin, k);
    ComplexMatrix out(d, k);
    for (Index step = 0; step < k; ++step) {
        double best_norm = -1.0;
        ComplexVector best_vec;
        for (Index i = 0; i < d; ++i) {
            // Projection of e_i onto the subspace.
            ComplexVector w = span * span.row(i).adjoint();
            for (Index b = 0; b < step; ++b) {
                w -= out.col(b) * out.col(b).dot(w);
            }
            const double n = w.norm();
            if (n > best_norm) {
                best_norm = n;
                best_vec = std::move(w);
            }
        }
        out.col(step) = best_vec / best_norm;
        fix_phase(out.col(step));
    }
    vectors.middleCols(begin, k) = out;
}

inline EigenDecomposition eig_hermitian_matrix(const ComplexMatrix &a) {
    // Eigen's tridiagonal QR stops after 30 sweeps per eigenvalue and then
    // reports NoConvergence.
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("eig_hermitian: tridiagonal QR did not converge within "
                               "30 iterations per eigenvalue (dim " +
                               std::to_string(a.rows()) + ")");
    }
    EigenDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
    const double scale = std::max(1.0, out.eigenvalues.cwiseAbs().maxCoeff());
    const double cluster_tol = 1e-10 * scale;
    const Index d = out.dim();
    Index begin = 0;
    while (begin < d) {
        Index end = begin + 1;
        while (end < d && out.eigenvalues(end) - out.eigenvalues(end - 1) <= cluster_tol) {
            ++end;
        }
        if (end - begin == 1) {
            fix_phase(out.eigenvectors.col(begin));
        } else {
            canonicalize_subspace(out.eigenvectors, begin, end);
        }
        begin = end;
    }
    return out;
}

} // namespace detail

/// Eigendecomposition with ascending eigenvalues and a deterministic basis:
/// nondegenerate eigenvectors have their largest component real positive and
/// degenerate eigenspaces are re-orthonormalized from the standard basis.
inline EigenDecomposition eig_hermitian(const HermitianOperator &a) {
    return detail::eig_hermitian_matrix(a.matrix());
}

namespace detail {
inline Complex trace_product(const ComplexMatrix &rho, const ComplexMatrix &op) {
    // tr(rho op) = sum_jk rho_jk op_kj
    return rho.cwiseProduct(op.transpose()).sum();
}

inline double checked_real(Complex z, double scale, const char *what) {
    if (std::abs(z.imag()) > tolerance::kImaginaryResidue * std::max(1.0, scale)) {
        throw ValidationError(std::string(what) + ": imaginary residue " +
                              std::to_string(z.imag()));
    }
    return z.real();
}
} // namespace detail

inline double expectation(const HermitianOperator &op, const DensityOperator &rho) {
    detail::require_same_dim(op.dim(), rho.dim(), "expectation");
    return detail::checked_real(detail::trace_product(rho.matrix(), op.matrix()),
                                max_abs(op.matrix()), "expectation");
}

inline double expectation(const HermitianOperator &op, const PureState &psi) {
    detail::require_same_dim(op.dim(), psi.dim(), "expectation");
    const Complex z = psi.amplitudes().dot(op.matrix() * psi.amplitudes());
    return detail::checked_real(z, max_abs(op.matrix()), "expectation");
}

inline double expectation(const HermitianOperator &op, const State &s) {
    return std::visit([&](const auto &x) { return expectation(op, x); }, s);
}

namespace detail {
inline ComplexMatrix centered(const HermitianOperator &op, double mean) {
    ComplexMatrix c = op.matrix();
    c.diagonal().array() -= mean;
    return c;
}
} // namespace detail

/// <op^2> - <op>^2, evaluated as <(op - <op>)^2> and clamped at zero.
inline double variance(const HermitianOperator &op, const PureState &psi) {
    const double mean = expectation(op, psi);
    const ComplexVector w = detail::centered(op, mean) * psi.amplitudes();
    return std::max(0.0, w.squaredNorm());
}

inline double variance(const HermitianOperator &op, const DensityOperator &rho) {
    const double mean = expectation(op, rho);
    const ComplexMatrix c = detail::centered(op, mean);
    const double v = detail::checked_real(detail::trace_product(rho.matrix(), c * c),
                                          max_abs(c) * max_abs(c), "variance");
    if (v < -tolerance::kNegativeEigenvalue * std::max(1.0, max_abs(c) * max_abs(c))) {
        throw ValidationError("variance: negative value " + std::to_string(v));
    }
    return std::max(0.0, v);
}

inline double variance(const HermitianOperator &op, const State &s) {
    return std::visit([&](const auto &x) { return variance(op, x); }, s);
}

/// Kronecker product; entry (i*db + k, j*db + l) = a(i,j) * b(k,l).
inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    const Index db_r = b.rows();
    const Index db_c = b.cols();
    if (a.rows() * db_r > kMaxTensorDim || a.cols() * db_c > kMaxTensorDim) {
        throw DimensionError("tensor_product: result dimension " +
                             std::to_string(a.rows() * db_r) + " exceeds cap " +
                             std::to_string(kMaxTensorDim));
    }
    ComplexMatrix out(a.rows() * db_r, a.cols() * db_c);
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * db_r, j * db_c, db_r, db_c) = a(i, j) * b;
        }
    }
    return out;
}

inline DensityOperator tensor_product(const DensityOperator &a, const DensityOperator &b) {
    return DensityOperator::from_hermitian_part(kron(a.matrix(), b.matrix()));
}

inline PureState tensor_product(const PureState &a, const PureState &b) {
    return PureState::normalized(kron(a.amplitudes(), b.amplitudes()));
}

inline HermitianOperator tensor_product(const HermitianOperator &a, const HermitianOperator &b) {
    return HermitianOperator::from_hermitian_part(kron(a.matrix(), b.matrix()));
}

/// Tangent of the unitary path through rho generated by h: -i[h, rho].
inline HermitianOperator commutator_path_tangent(const DensityOperator &rho,
                                                 const HermitianOperator &h) {
    detail::require_same_dim(rho.dim(), h.dim(), "commutator_path_tangent");
    const ComplexMatrix hr = h.matrix() * rho.matrix();
    const ComplexMatrix t = -kI * (hr - hr.adjoint());
    const double scale = std::max(1.0, max_abs(h.matrix()));
    const double residual = detail::hermiticity_residual(t);
    if (!(residual <= tolerance::kHermitian * scale)) {
        throw ValidationError("commutator_path_tangent: result not Hermitian, residual " +
                              std::to_string(residual));
    }
    return HermitianOperator::from_hermitian_part(t);
}

} // namespace qmetro
