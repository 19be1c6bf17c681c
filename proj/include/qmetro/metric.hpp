#pragma once

/**
 * @file
 * Symmetric logarithmic derivative, quantum Fisher information and the
 * Fubini-Study angle for one-parameter unitary state families
 * rho(X) = exp(-iXh) rho(0) exp(iXh).
 */

#include <algorithm>
#include <cmath>
#include <utility>
#include <variant>
#include <vector>

#include "qmetro/hilbert.hpp"

namespace qmetro {

/// Default threshold below which p_j + p_k counts as zero.
inline constexpr double kDefaultZeroTol = 1e-12;

/// States exp(-iXh)|psi_0> (or the mixed analogue) along a parameter X.
class StateFamily {
  public:
    StateFamily(State fiducial, HermitianOperator generator)
        : fiducial_(std::move(fiducial)), generator_(std::move(generator)),
          eig_(eig_hermitian(generator_)) {
        detail::require_same_dim(dim_of(fiducial_), generator_.dim(), "StateFamily");
    }

    const State &fiducial() const noexcept { return fiducial_; }
    const HermitianOperator &generator() const noexcept { return generator_; }
    const EigenDecomposition &generator_eigen() const noexcept { return eig_; }
    Index dim() const noexcept { return generator_.dim(); }
    bool is_pure() const noexcept { return std::holds_alternative<PureState>(fiducial_); }

    /// exp(-iXh).
    ComplexMatrix evolution(double x) const {
        return eig_.apply([x](double h) { return std::exp(-kI * (x * h)); });
    }

    State at(double x) const {
        const ComplexMatrix u = evolution(x);
        if (const auto *psi = std::get_if<PureState>(&fiducial_)) {
            return PureState::normalized(u * psi->amplitudes());
        }
        const auto &rho = std::get<DensityOperator>(fiducial_);
        return DensityOperator::from_hermitian_part(u * rho.matrix() * u.adjoint());
    }

    PureState pure_at(double x) const {
        if (!is_pure()) {
            throw ValidationError("StateFamily::pure_at: fiducial is mixed");
        }
        return std::get<PureState>(at(x));
    }

    DensityOperator density_at(double x) const { return to_density(at(x)); }

  private:
    State fiducial_;
    HermitianOperator generator_;
    EigenDecomposition eig_;
};

/// Output of sld(). `sld` is L with (rho L + L rho)/2 = rho' on the support
/// of rho; `qfi` = tr(rho' L).
struct SLDResult {
    HermitianOperator sld;
    double qfi = 0.0;
    /// Eigenbasis index pairs (j, k) of rho with p_j + p_k <= zero_tol.
    std::vector<std::pair<Index, Index>> excluded;

    /// The shorthand operator L/2.
    HermitianOperator delta_h() const {
        return HermitianOperator(0.5 * sld.matrix());
    }
};

inline SLDResult sld(const DensityOperator &rho, const HermitianOperator &rho_prime,
                     double zero_tol = kDefaultZeroTol) {
    detail::require_same_dim(rho.dim(), rho_prime.dim(), "sld");
    const double tr = std::abs(rho_prime.matrix().trace());
    if (tr > 1e-10) {
        throw ValidationError("sld: rho' must be traceless, |tr| = " + std::to_string(tr));
    }
    const Index d = rho.dim();
    const EigenDecomposition e = detail::eig_hermitian_matrix(rho.matrix());
    const ComplexMatrix &v = e.eigenvectors;
    const ComplexMatrix rp = v.adjoint() * rho_prime.matrix() * v;

    ComplexMatrix l = ComplexMatrix::Zero(d, d);
    std::vector<std::pair<Index, Index>> excluded;
    double kept = 0.0;
    for (Index j = 0; j < d; ++j) {
        for (Index k = 0; k < d; ++k) {
            const double s = e.eigenvalues(j) + e.eigenvalues(k);
            if (s > zero_tol) {
                l(j, k) = 2.0 * rp(j, k) / s;
                kept = std::max(kept, std::abs(rp(j, k)));
            } else {
                excluded.emplace_back(j, k);
            }
        }
    }
    const double total = max_abs(rp);
    if (total > 0.0 && kept <= 1e-12 * total) {
        throw SupportError("sld: path leaves the support of rho");
    }
    const ComplexMatrix l_in = v * l * v.adjoint();
    const double q = detail::trace_product(rho_prime.matrix(), l_in).real();
    return SLDResult{HermitianOperator::from_hermitian_part(l_in), std::max(0.0, q),
                     std::move(excluded)};
}

/// ds^2/dX^2 for a unitary family. Pure fiducials give exactly 4 Var(h);
/// mixed fiducials use 2 sum (p_j - p_k)^2 / (p_j + p_k) |h_jk|^2 in the
/// eigenbasis of rho, dropping pairs with p_j + p_k <= zero_tol.
inline double qfi_unitary(const StateFamily &family, double zero_tol = kDefaultZeroTol) {
    if (const auto *psi = std::get_if<PureState>(&family.fiducial())) {
        return 4.0 * variance(family.generator(), *psi);
    }
    const auto &rho = std::get<DensityOperator>(family.fiducial());
    const EigenDecomposition e = detail::eig_hermitian_matrix(rho.matrix());
    const ComplexMatrix hb = e.eigenvectors.adjoint() * family.generator().matrix() *
                             e.eigenvectors;
    const Index d = family.dim();
    double sum = 0.0;
    for (Index j = 0; j < d; ++j) {
        for (Index k = 0; k < d; ++k) {
            const double pj = std::max(0.0, e.eigenvalues(j));
            const double pk = std::max(0.0, e.eigenvalues(k));
            const double s = pj + pk;
            if (s > zero_tol) {
                const double diff = pj - pk;
                sum += diff * diff / s * std::norm(hb(j, k));
            }
        }
    }
    return 2.0 * sum;
}

/// Both sides of qfi <= 4 Var(h).
struct QfiGap {
    double qfi = 0.0;
    double four_var = 0.0;
    double gap() const noexcept { return four_var - qfi; }
};

inline QfiGap qfi_upper_gap(const StateFamily &family, double zero_tol = kDefaultZeroTol) {
    return QfiGap{qfi_unitary(family, zero_tol),
                  4.0 * variance(family.generator(), family.fiducial())};
}

namespace detail {
inline ComplexMatrix embed_local(const ComplexMatrix &h, Index site, Index copies) {
    const Index d = h.rows();
    ComplexMatrix out = site == 0 ? h : ComplexMatrix::Identity(d, d);
    for (Index i = 1; i < copies; ++i) {
        out = kron(out, i == site ? h : ComplexMatrix::Identity(d, d));
    }
    return out;
}
} // namespace detail

/// The family rho^{(x)copies} with generator sum_i h_i.
inline StateFamily tensor_power(const StateFamily &family, int copies) {
    if (copies < 1) {
        throw ValidationError("tensor_power: copies must be positive");
    }
    Index total = 1;
    for (int i = 0; i < copies; ++i) {
        total *= family.dim();
        if (total > kMaxTensorDim) {
            throw DimensionError("tensor_power: dimension exceeds cap " +
                                 std::to_string(kMaxTensorDim));
        }
    }
    const ComplexMatrix &h = family.generator().matrix();
    ComplexMatrix gen = ComplexMatrix::Zero(total, total);
    for (int i = 0; i < copies; ++i) {
        gen += detail::embed_local(h, i, copies);
    }
    State fid = family.fiducial();
    for (int i = 1; i < copies; ++i) {
        fid = std::visit(
            [&](const auto &acc) -> State {
                using T = std::decay_t<decltype(acc)>;
                return tensor_product(acc, std::get<T>(family.fiducial()));
            },
            fid);
    }
    return StateFamily(std::move(fid), HermitianOperator::from_hermitian_part(gen));
}

struct AdditivityResult {
    double lhs = 0.0; // qfi of the tensored family
    double rhs = 0.0; // copies x single-copy qfi
};

inline AdditivityResult additivity_check(const StateFamily &family, int copies,
                                         double zero_tol = kDefaultZeroTol) {
    if (copies != 2 && copies != 3) {
        throw ValidationError("additivity_check: copies must be 2 or 3");
    }
    const StateFamily big = tensor_power(family, copies);
    return AdditivityResult{qfi_unitary(big, zero_tol), copies * qfi_unitary(family, zero_tol)};
}

/// arccos|<a|b>| in [0, pi/2], evaluated as atan2(|b - a<a|b>|, |<a|b>|)
/// so small angles keep full relative precision.
inline double fubini_angle(const PureState &a, const PureState &b) {
    detail::require_same_dim(a.dim(), b.dim(), "fubini_angle");
    const Complex z = a.amplitudes().dot(b.amplitudes());
    const double perp = (b.amplitudes() - a.amplitudes() * z).norm();
    return std::atan2(perp, std::abs(z));
}

} // namespace qmetro
