#pragma once

/**
 * @file
 * POVMs: validation, outcome statistics, classical Fisher information, and
 * covariant (displacement-generated) measurements built from the spectrum
 * of a generator.
 *
 * Continuous outcome sets are sampled on a uniform midpoint grid
 * x_m = x_lo + (m + 1/2) L / M with weight L / M, so a grid point never lands
 * on the boundary of the period.
 */

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmetro/hilbert.hpp"
#include "qmetro/metric.hpp"

namespace qmetro {

/// Probabilities at or below this value are left out of Fisher sums.
inline constexpr double kProbabilityFloor = 1e-14;

/// Finite family of operators E_k with outcome labels x_k and quadrature
/// weights w_k; outcome k has probability w_k tr(E_k rho).
class DiscretePOVM {
  public:
    DiscretePOVM(std::vector<HermitianOperator> elements, std::vector<double> labels,
                 std::vector<double> weights)
        : elements_(std::move(elements)), labels_(std::move(labels)),
          weights_(std::move(weights)) {
        if (elements_.empty()) {
            throw ValidationError("DiscretePOVM: no elements");
        }
        if (labels_.size() != elements_.size() || weights_.size() != elements_.size()) {
            throw DimensionError("DiscretePOVM: elements, labels and weights differ in length");
        }
        for (const auto &e : elements_) {
            detail::require_same_dim(e.dim(), elements_.front().dim(), "DiscretePOVM");
        }
    }

    /// Unit-weight POVM labelled 0, 1, 2, ...
    static DiscretePOVM unweighted(std::vector<HermitianOperator> elements) {
        std::vector<double> labels(elements.size());
        for (std::size_t k = 0; k < labels.size(); ++k) {
            labels[k] = static_cast<double>(k);
        }
        std::vector<double> weights(elements.size(), 1.0);
        return DiscretePOVM(std::move(elements), std::move(labels), std::move(weights));
    }

    /// Projective measurement onto the columns of an orthonormal basis.
    static DiscretePOVM projective(const ComplexMatrix &basis, std::vector<double> labels = {}) {
        std::vector<HermitianOperator> elements;
        elements.reserve(static_cast<std::size_t>(basis.cols()));
        for (Index k = 0; k < basis.cols(); ++k) {
            elements.push_back(HermitianOperator::from_hermitian_part(
                basis.col(k) * basis.col(k).adjoint()));
        }
        if (labels.empty()) {
            return unweighted(std::move(elements));
        }
        std::vector<double> weights(elements.size(), 1.0);
        return DiscretePOVM(std::move(elements), std::move(labels), std::move(weights));
    }

    std::size_t size() const noexcept { return elements_.size(); }
    Index dim() const noexcept { return elements_.front().dim(); }
    const std::vector<HermitianOperator> &elements() const noexcept { return elements_; }
    const std::vector<double> &labels() const noexcept { return labels_; }
    const std::vector<double> &weights() const noexcept { return weights_; }

    std::vector<double> raw_probabilities(const State &state) const {
        const DensityOperator rho = to_density(state);
        std::vector<double> p(size());
        for (std::size_t k = 0; k < size(); ++k) {
            p[k] = weights_[k] *
                   detail::trace_product(rho.matrix(), elements_[k].matrix()).real();
        }
        return p;
    }

  private:
    std::vector<HermitianOperator> elements_;
    std::vector<double> labels_;
    std::vector<double> weights_;
};

/// Anything that maps a state to unnormalized-by-construction outcome
/// probabilities over a fixed, labelled outcome set.
template <class M>
concept Measurement = requires(const M &m, const State &s) {
    { m.raw_probabilities(s) } -> std::convertible_to<std::vector<double>>;
    { m.size() } -> std::convertible_to<std::size_t>;
    { m.dim() } -> std::convertible_to<Index>;
    { m.labels() } -> std::convertible_to<const std::vector<double> &>;
};

struct POVMReport {
    double completeness_residual = 0.0; // max |sum_k w_k E_k - I|
    double min_eigenvalue = 0.0;        // over all elements
    bool complete = false;
    bool positive = false;
    bool passed() const noexcept { return complete && positive; }
};

inline POVMReport validate_povm(const DiscretePOVM &povm, double completeness_tol = 1e-8,
                                double positivity_tol = 1e-10) {
    const Index d = povm.dim();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < povm.size(); ++k) {
        sum += povm.weights()[k] * povm.elements()[k].matrix();
        lo = std::min(lo, detail::min_eigenvalue(povm.elements()[k].matrix()));
    }
    POVMReport r;
    r.completeness_residual = max_abs(sum - ComplexMatrix::Identity(d, d));
    r.min_eigenvalue = lo;
    r.complete = r.completeness_residual <= completeness_tol;
    r.positive = lo >= -positivity_tol;
    return r;
}

/// Outcome probabilities; entries within 1e-10 below zero are clamped.
template <Measurement M>
std::vector<double> outcome_distribution(const M &povm, const State &state) {
    detail::require_same_dim(povm.dim(), dim_of(state), "outcome_distribution");
    std::vector<double> p = povm.raw_probabilities(state);
    for (double &v : p) {
        if (v < -tolerance::kNegativeEigenvalue) {
            throw ValidationError("outcome_distribution: negative probability " +
                                  std::to_string(v));
        }
        v = std::max(0.0, v);
    }
    return p;
}

/// sum_k ((p+_k - p-_k) / 2 step)^2 / p0_k over outcomes with p0_k > p_floor.
inline double fisher_from_distributions(const std::vector<double> &p0,
                                        const std::vector<double> &pp,
                                        const std::vector<double> &pm, double step,
                                        double p_floor = kProbabilityFloor) {
    if (!(step > 0.0)) {
        throw ValidationError("classical_fisher: step must be positive");
    }
    if (pp.size() != p0.size() || pm.size() != p0.size()) {
        throw DimensionError("classical_fisher: distributions differ in length");
    }
    double f = 0.0;
    bool any = false;
    for (std::size_t k = 0; k < p0.size(); ++k) {
        if (p0[k] <= p_floor) {
            continue;
        }
        any = true;
        const double dp = (pp[k] - pm[k]) / (2.0 * step);
        f += dp * dp / p0[k];
    }
    if (!any) {
        throw ValidationError("classical_fisher: all outcome probabilities below floor");
    }
    return f;
}

/// F(x0) = sum_k (dp_k/dX)^2 / p_k with central differences of width `step`.
template <Measurement M>
double classical_fisher(const M &povm, const StateFamily &family, double x0, double step,
                        double p_floor = kProbabilityFloor) {
    if (!(step > 0.0)) {
        throw ValidationError("classical_fisher: step must be positive");
    }
    return fisher_from_distributions(outcome_distribution(povm, family.at(x0)),
                                     outcome_distribution(povm, family.at(x0 + step)),
                                     outcome_distribution(povm, family.at(x0 - step)), step,
                                     p_floor);
}

/// Eigenvalues and eigenvectors of a generator, with an optional period P
/// such that exp(-iPh) = 1.
class SpectrumModel {
  public:
    SpectrumModel(RealVector eigenvalues, ComplexMatrix eigenvectors,
                  std::optional<double> period = std::nullopt)
        : h_(std::move(eigenvalues)), v_(std::move(eigenvectors)), period_(period) {
        if (h_.size() == 0 || v_.rows() != h_.size() || v_.cols() != h_.size()) {
            throw DimensionError("SpectrumModel: eigenvector matrix must be d x d");
        }
        const Index d = h_.size();
        if (max_abs(v_.adjoint() * v_ - ComplexMatrix::Identity(d, d)) > 1e-10) {
            throw ValidationError("SpectrumModel: eigenvectors are not orthonormal");
        }
        if (period_) {
            if (!(*period_ > 0.0)) {
                throw ValidationError("SpectrumModel: period must be positive");
            }
            for (Index k = 0; k < d; ++k) {
                const double n = h_(k) * *period_ / (2.0 * std::numbers::pi);
                if (std::abs(n - std::round(n)) > 1e-9) {
                    throw ValidationError("SpectrumModel: eigenvalue " + std::to_string(h_(k)) +
                                          " is not a multiple of 2 pi / period");
                }
            }
        }
        // Degeneracy label: position of the eigenvalue within its cluster.
        labels_.assign(static_cast<std::size_t>(d), 0);
        for (Index k = 0; k < d; ++k) {
            for (Index j = 0; j < k; ++j) {
                if (std::abs(h_(j) - h_(k)) <= 1e-9) {
                    ++labels_[static_cast<std::size_t>(k)];
                }
            }
        }
    }

    /// Eigenbasis = standard basis; eigenvalue k belongs to basis state k.
    static SpectrumModel diagonal(RealVector eigenvalues,
                                  std::optional<double> period = std::nullopt) {
        const Index d = eigenvalues.size();
        return SpectrumModel(std::move(eigenvalues), ComplexMatrix::Identity(d, d), period);
    }

    static SpectrumModel from_operator(const HermitianOperator &h,
                                       std::optional<double> period = std::nullopt) {
        EigenDecomposition e = eig_hermitian(h);
        return SpectrumModel(std::move(e.eigenvalues), std::move(e.eigenvectors), period);
    }

    Index dim() const noexcept { return h_.size(); }
    const RealVector &eigenvalues() const noexcept { return h_; }
    const ComplexMatrix &eigenvectors() const noexcept { return v_; }
    const std::vector<int> &degeneracy_labels() const noexcept { return labels_; }
    std::optional<double> period() const noexcept { return period_; }

    bool is_degenerate(double tol = 1e-9) const {
        for (Index j = 0; j < dim(); ++j) {
            for (Index k = j + 1; k < dim(); ++k) {
                if (std::abs(h_(j) - h_(k)) <= tol) {
                    return true;
                }
            }
        }
        return false;
    }

    /// Integers n_h = h P / 2pi; requires a period.
    std::vector<long> integer_labels() const {
        if (!period_) {
            throw ValidationError("SpectrumModel: integer labels need a period");
        }
        std::vector<long> n(static_cast<std::size_t>(dim()));
        for (Index k = 0; k < dim(); ++k) {
            n[static_cast<std::size_t>(k)] =
                std::lround(h_(k) * *period_ / (2.0 * std::numbers::pi));
        }
        return n;
    }

    double span() const { return h_.maxCoeff() - h_.minCoeff(); }

    HermitianOperator generator() const {
        return HermitianOperator::from_hermitian_part(
            v_ * h_.cast<Complex>().asDiagonal() * v_.adjoint());
    }

    /// <h|psi> for every eigenvalue.
    ComplexVector coefficients(const PureState &psi) const {
        detail::require_same_dim(dim(), psi.dim(), "SpectrumModel::coefficients");
        return v_.adjoint() * psi.amplitudes();
    }

  private:
    RealVector h_;
    ComplexMatrix v_;
    std::optional<double> period_;
    std::vector<int> labels_;
};

/// Outcome window of a covariant POVM: [lo, lo + length).
struct Window {
    double lo = 0.0;
    double length = 0.0;
};

/// Rank-one covariant POVM E(x) dx = |x><x| dx / C with
/// |x> = sum_h exp(i f(h)) exp(-i x h) |h>, sampled on a uniform grid.
class CovariantPOVM {
  public:
    CovariantPOVM(SpectrumModel spectrum, RealVector gauge, Window window, Index grid_size,
                  double normalizer)
        : spectrum_(std::move(spectrum)), gauge_(std::move(gauge)), window_(window),
          normalizer_(normalizer) {
        if (gauge_.size() == 0) {
            gauge_ = RealVector::Zero(spectrum_.dim());
        }
        detail::require_same_dim(gauge_.size(), spectrum_.dim(), "CovariantPOVM gauge");
        if (grid_size < 1 || !(window_.length > 0.0) || !(normalizer_ > 0.0)) {
            throw ValidationError("CovariantPOVM: invalid grid, window or normalizer");
        }
        grid_.resize(static_cast<std::size_t>(grid_size));
        const double dx = window_.length / static_cast<double>(grid_size);
        for (Index m = 0; m < grid_size; ++m) {
            grid_[static_cast<std::size_t>(m)] = window_.lo + (static_cast<double>(m) + 0.5) * dx;
        }
        weight_ = dx;
        const Index d = spectrum_.dim();
        // Columns are |x_m> in the original basis.
        ComplexMatrix eig_amp(d, grid_size);
        for (Index m = 0; m < grid_size; ++m) {
            for (Index k = 0; k < d; ++k) {
                eig_amp(k, m) = std::exp(kI * (gauge_(k) - grid_[static_cast<std::size_t>(m)] *
                                                               spectrum_.eigenvalues()(k)));
            }
        }
        states_ = spectrum_.eigenvectors() * eig_amp;
    }

    const SpectrumModel &spectrum() const noexcept { return spectrum_; }
    const RealVector &gauge() const noexcept { return gauge_; }
    const std::vector<double> &grid() const noexcept { return grid_; }
    const std::vector<double> &labels() const noexcept { return grid_; }
    const Window &window() const noexcept { return window_; }
    double normalizer() const noexcept { return normalizer_; }
    double weight() const noexcept { return weight_; }
    double spacing() const noexcept { return weight_; }
    bool periodic() const noexcept { return spectrum_.period().has_value(); }
    std::size_t size() const noexcept { return grid_.size(); }
    Index dim() const noexcept { return spectrum_.dim(); }

    /// |x_m> as columns.
    const ComplexMatrix &states() const noexcept { return states_; }

    /// |x> for arbitrary x.
    ComplexVector state(double x) const {
        const Index d = dim();
        ComplexVector a(d);
        for (Index k = 0; k < d; ++k) {
            a(k) = std::exp(kI * (gauge_(k) - x * spectrum_.eigenvalues()(k)));
        }
        return spectrum_.eigenvectors() * a;
    }

    /// Gauge-stripped eigen-amplitudes exp(-i f(h)) <h|psi>.
    ComplexVector gauged_coefficients(const PureState &psi) const {
        ComplexVector c = spectrum_.coefficients(psi);
        for (Index k = 0; k < dim(); ++k) {
            c(k) *= std::exp(-kI * gauge_(k));
        }
        return c;
    }

    /// psi(x) = <x|psi> / sqrt(C) for gauged coefficients `c`.
    Complex wavefunction(const ComplexVector &c, double x) const {
        Complex s = 0.0;
        for (Index k = 0; k < dim(); ++k) {
            s += c(k) * std::exp(kI * (x * spectrum_.eigenvalues()(k)));
        }
        return s / std::sqrt(normalizer_);
    }

    /// d psi / dx, exact for the trigonometric sum above.
    Complex wavefunction_derivative(const ComplexVector &c, double x) const {
        Complex s = 0.0;
        for (Index k = 0; k < dim(); ++k) {
            const double h = spectrum_.eigenvalues()(k);
            s += kI * h * c(k) * std::exp(kI * (x * h));
        }
        return s / std::sqrt(normalizer_);
    }

    std::vector<double> raw_probabilities(const State &state) const {
        detail::require_same_dim(dim(), dim_of(state), "CovariantPOVM");
        std::vector<double> p(size());
        const double scale = weight_ / normalizer_;
        if (const auto *psi = std::get_if<PureState>(&state)) {
            const ComplexVector amp = states_.adjoint() * psi->amplitudes();
            for (std::size_t m = 0; m < size(); ++m) {
                p[m] = scale * std::norm(amp(static_cast<Index>(m)));
            }
            return p;
        }
        const ComplexMatrix rs = std::get<DensityOperator>(state).matrix() * states_;
        for (std::size_t m = 0; m < size(); ++m) {
            const Index mi = static_cast<Index>(m);
            p[m] = scale * states_.col(mi).dot(rs.col(mi)).real();
        }
        return p;
    }

    /// Explicit element list; memory grows as M d^2.
    DiscretePOVM to_discrete() const {
        std::vector<HermitianOperator> elements;
        elements.reserve(size());
        for (std::size_t m = 0; m < size(); ++m) {
            const auto col = states_.col(static_cast<Index>(m));
            elements.push_back(
                HermitianOperator::from_hermitian_part(col * col.adjoint() / normalizer_));
        }
        return DiscretePOVM(std::move(elements), grid_, std::vector<double>(size(), weight_));
    }

  private:
    SpectrumModel spectrum_;
    RealVector gauge_;
    Window window_;
    double normalizer_;
    std::vector<double> grid_;
    double weight_ = 0.0;
    ComplexMatrix states_;
};

/// Smallest grid admitted by build_covariant: four points per cycle of the
/// fastest relative phase exp(-ix (h_max - h_min)).
inline Index minimum_grid_size(const SpectrumModel &spectrum, double length) {
    const double cycles = spectrum.span() * length / (2.0 * std::numbers::pi);
    return std::max<Index>(1, static_cast<Index>(std::ceil(4.0 * cycles - 1e-9)));
}

/// Covariant POVM of a nondegenerate spectrum. Periodic spectra use the
/// window [-P/2, P/2) and C = P; otherwise `window` is required and C is its
/// length, in which case completeness only holds approximately.
inline CovariantPOVM build_covariant(const SpectrumModel &spectrum, RealVector gauge,
                                     Index grid_size,
                                     std::optional<Window> window = std::nullopt) {
    if (spectrum.is_degenerate()) {
        throw ValidationError(
            "build_covariant: generator spectrum is degenerate; a covariant POVM labelled by "
            "a single real outcome needs distinct eigenvalues");
    }
    Window w;
    if (spectrum.period()) {
        w = Window{-0.5 * *spectrum.period(), *spectrum.period()};
    } else if (window) {
        w = *window;
    } else {
        throw ValidationError("build_covariant: aperiodic spectrum needs a truncation window");
    }
    const Index minimum = minimum_grid_size(spectrum, w.length);
    if (grid_size < minimum) {
        throw ValidationError("build_covariant: grid size " + std::to_string(grid_size) +
                              " below minimum " + std::to_string(minimum));
    }
    return CovariantPOVM(spectrum, std::move(gauge), w, grid_size, w.length);
}

/// D(H) = sum_m w exp(i x_m H) |x_m><x_m| / C.
inline ComplexMatrix displacement_operator(const CovariantPOVM &povm, double shift) {
    const RealVector &h = povm.spectrum().eigenvalues();
    const double tol = 1e-9;
    bool ok = std::abs(shift) <= tol;
    for (Index j = 0; j < h.size() && !ok; ++j) {
        for (Index k = 0; k < h.size() && !ok; ++k) {
            ok = std::abs(h(k) - h(j) - shift) <= tol;
        }
    }
    if (!ok) {
        throw ValidationError("displacement_operator: " + std::to_string(shift) +
                              " is not a difference of eigenvalues");
    }
    const Index m = static_cast<Index>(povm.size());
    ComplexVector diag(m);
    for (Index i = 0; i < m; ++i) {
        diag(i) = povm.weight() / povm.normalizer() *
                  std::exp(kI * (povm.grid()[static_cast<std::size_t>(i)] * shift));
    }
    return povm.states() * diag.asDiagonal() * povm.states().adjoint();
}

struct OptimalityReport {
    double mean_h = 0.0;
    /// max_m |r^2(x_m) (Theta'(x_m) - <h>)| on the grid.
    double phase_residual = 0.0;
    /// max_u | P(<h> + u) - P(<h> - u) | over eigenvalue probabilities.
    double symmetry_residual = 0.0;
    bool passed = false;
};

namespace detail {

inline double mean_eigenvalue(const SpectrumModel &s, const ComplexVector &c) {
    double mean = 0.0;
    for (Index k = 0; k < s.dim(); ++k) {
        mean += std::norm(c(k)) * s.eigenvalues()(k);
    }
    return mean;
}

inline double mirror_residual(const RealVector &h, const std::vector<double> &prob,
                              double mean) {
    const double tol = 1e-9 * std::max(1.0, h.cwiseAbs().maxCoeff());
    double worst = 0.0;
    for (Index k = 0; k < h.size(); ++k) {
        const double mirror = 2.0 * mean - h(k);
        double pm = 0.0;
        for (Index j = 0; j < h.size(); ++j) {
            if (std::abs(h(j) - mirror) <= tol) {
                pm += prob[static_cast<std::size_t>(j)];
            }
        }
        worst = std::max(worst, std::abs(prob[static_cast<std::size_t>(k)] - pm));
    }
    return worst;
}

} // namespace detail

/// Checks r^2 (Theta' - <h>) = 0 on the grid, where psi_0(x) = r e^{i Theta}.
/// r^2 Theta' is evaluated as Im(psi* psi') with the exact derivative of the
/// grid wavefunction, so sign changes of a real amplitude are not penalized.
inline OptimalityReport optimality_test(const CovariantPOVM &povm, const PureState &fiducial,
                                        double tol) {
    detail::require_same_dim(povm.dim(), fiducial.dim(), "optimality_test");
    const ComplexVector c = povm.gauged_coefficients(fiducial);
    OptimalityReport r;
    r.mean_h = detail::mean_eigenvalue(povm.spectrum(), c);
    for (double x : povm.grid()) {
        const Complex psi = povm.wavefunction(c, x);
        const Complex dpsi = povm.wavefunction_derivative(c, x);
        const double value = (std::conj(psi) * dpsi).imag() - r.mean_h * std::norm(psi);
        r.phase_residual = std::max(r.phase_residual, std::abs(value));
    }
    std::vector<double> prob(static_cast<std::size_t>(povm.dim()));
    for (Index k = 0; k < povm.dim(); ++k) {
        prob[static_cast<std::size_t>(k)] = std::norm(c(k));
    }
    r.symmetry_residual = detail::mirror_residual(povm.spectrum().eigenvalues(), prob, r.mean_h);
    r.passed = r.phase_residual <= tol;
    return r;
}

struct VarianceSplit {
    double fisher_quarter = 0.0; // (1/4) int (p')^2 / p dx
    double phase_var = 0.0;      // int p (Theta' - <h>)^2 dx
    double total() const noexcept { return fisher_quarter + phase_var; }
};

/// Splits Var(h) into the Fisher term and the variance of Theta' on the grid.
/// Throws when the grid does not resolve the fiducial (grid normalization off
/// by more than 1e-9, or fewer grid points than the occupied spectral span).
inline VarianceSplit variance_split(const CovariantPOVM &povm, const PureState &fiducial) {
    detail::require_same_dim(povm.dim(), fiducial.dim(), "variance_split");
    const ComplexVector c = povm.gauged_coefficients(fiducial);
    const RealVector &h = povm.spectrum().eigenvalues();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (Index k = 0; k < c.size(); ++k) {
        if (std::norm(c(k)) > 1e-24) {
            lo = std::min(lo, h(k));
            hi = std::max(hi, h(k));
        }
    }
    const double cycles = (hi - lo) * povm.window().length / (2.0 * std::numbers::pi);
    if (static_cast<double>(povm.size()) <= cycles) {
        throw ValidationError("variance_split: grid does not resolve the fiducial");
    }
    const double mean = detail::mean_eigenvalue(povm.spectrum(), c);
    VarianceSplit out;
    double norm = 0.0;
    double pmax = 0.0;
    std::vector<Complex> psi(povm.size());
    std::vector<Complex> dpsi(povm.size());
    for (std::size_t m = 0; m < povm.size(); ++m) {
        psi[m] = povm.wavefunction(c, povm.grid()[m]);
        dpsi[m] = povm.wavefunction_derivative(c, povm.grid()[m]);
        pmax = std::max(pmax, std::norm(psi[m]));
    }
    for (std::size_t m = 0; m < povm.size(); ++m) {
        const double p = std::norm(psi[m]);
        norm += povm.weight() * p;
        const Complex shifted = dpsi[m] - kI * mean * psi[m];
        if (p <= 1e-14 * pmax) {
            // At a node of psi the whole local contribution is amplitude slope.
            out.fisher_quarter += povm.weight() * std::norm(shifted);
            continue;
        }
        const Complex z = std::conj(psi[m]) * shifted;
        out.fisher_quarter += povm.weight() * z.real() * z.real() / p;
        out.phase_var += povm.weight() * z.imag() * z.imag() / p;
    }
    if (std::abs(norm - 1.0) > 1e-9) {
        throw ValidationError("variance_split: grid normalization " + std::to_string(norm));
    }
    return out;
}

/// Projective measurement in the eigenbasis of the SLD of (rho, rho').
inline DiscretePOVM sld_projective_povm(const DensityOperator &rho,
                                        const HermitianOperator &rho_prime,
                                        double zero_tol = kDefaultZeroTol) {
    const SLDResult s = sld(rho, rho_prime, zero_tol);
    const EigenDecomposition e = eig_hermitian(s.sld);
    std::vector<double> labels(e.eigenvalues.data(), e.eigenvalues.data() + e.eigenvalues.size());
    return DiscretePOVM::projective(e.eigenvectors, std::move(labels));
}

} // namespace qmetro
