#pragma once

// Time measurement for a Hamiltonian whose levels come in degenerate pairs
// |eps, sigma>, sigma = +-1, e.g. a particle on a ring with eps_n = n^2 and
// sigma the sign of the momentum. Outcomes are (t, gamma): a time on a
// uniform grid over one period and a sector label mixed per level by an SU(2)
// matrix U(eps) and a phase exp(i f(eps)).
//
// Energies must be integers (period 2 pi). The grid has M > max - min energy
// points, which makes the discrete POVM exactly complete.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qmetro/estimate.hpp"
#include "qmetro/hilbert.hpp"
#include "qmetro/optimize.hpp"
#include "qmetro/povm.hpp"

namespace qmetro {

using Matrix2c = Eigen::Matrix2cd;

/// [[cos t e^{ia}, -sin t e^{-ib}], [sin t e^{ib}, cos t e^{-ia}]], det = 1.
inline Matrix2c su2(double theta, double alpha, double beta) {
    Matrix2c u;
    u << std::cos(theta) * std::exp(kI * alpha), -std::sin(theta) * std::exp(-kI * beta),
        std::sin(theta) * std::exp(kI * beta), std::cos(theta) * std::exp(-kI * alpha);
    return u;
}

class TwoSectorSpectrum {
  public:
    /// Energies of the sigma = +1 and sigma = -1 sectors; they must agree.
    /// An optional nondegenerate level (usually 0) forms its own 1x1 block.
    TwoSectorSpectrum(const std::vector<double> &plus, const std::vector<double> &minus,
                      std::optional<double> single = std::nullopt)
        : single_(single) {
        if (plus.size() != minus.size()) {
            throw ValidationError("TwoSectorSpectrum: sector energy lists differ in length");
        }
        if (plus.empty()) {
            throw ValidationError("TwoSectorSpectrum: no degenerate levels");
        }
        std::vector<double> a(plus);
        std::vector<double> b(minus);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (std::abs(a[i] - b[i]) > 1e-9 * std::max(1.0, std::abs(a[i]))) {
                throw ValidationError("TwoSectorSpectrum: sector energy lists differ");
            }
            if (i > 0 && a[i] - a[i - 1] <= 1e-9) {
                throw ValidationError("TwoSectorSpectrum: repeated energy within a sector");
            }
            if (single_ && std::abs(a[i] - *single_) <= 1e-9) {
                throw ValidationError("TwoSectorSpectrum: single level collides with a pair");
            }
        }
        energies_ = std::move(a);
        mixing_.assign(energies_.size(), Matrix2c::Identity());
        gauge_.assign(energies_.size(), 0.0);
    }

    /// Ring with eps_n = n^2, n = 1..K, optionally with the n = 0 level.
    static TwoSectorSpectrum ring(int k, bool with_zero = false) {
        if (k < 1) {
            throw ValidationError("TwoSectorSpectrum::ring: K must be positive");
        }
        std::vector<double> e(static_cast<std::size_t>(k));
        for (int n = 1; n <= k; ++n) {
            e[static_cast<std::size_t>(n - 1)] = static_cast<double>(n) * n;
        }
        return TwoSectorSpectrum(e, e, with_zero ? std::optional<double>(0.0) : std::nullopt);
    }

    std::size_t levels() const noexcept { return energies_.size(); }
    const std::vector<double> &energies() const noexcept { return energies_; }
    std::optional<double> single_level() const noexcept { return single_; }
    Index offset() const noexcept { return single_ ? 1 : 0; }
    Index dim() const noexcept { return offset() + 2 * static_cast<Index>(levels()); }

    /// Basis index of |eps_level, sigma>; sigma = +1 comes first.
    Index index(std::size_t level, int sigma) const {
        if (level >= levels() || (sigma != 1 && sigma != -1)) {
            throw DimensionError("TwoSectorSpectrum::index: bad level or sector");
        }
        return offset() + 2 * static_cast<Index>(level) + (sigma == 1 ? 0 : 1);
    }

    const Matrix2c &mixing(std::size_t level) const { return mixing_.at(level); }
    double gauge(std::size_t level) const { return gauge_.at(level); }
    double single_gauge() const noexcept { return single_gauge_; }

    void set_mixing(std::size_t level, const Matrix2c &u) {
        if (level >= levels()) {
            throw DimensionError("TwoSectorSpectrum::set_mixing: level out of range");
        }
        if ((u.adjoint() * u - Matrix2c::Identity()).cwiseAbs().maxCoeff() > 1e-12) {
            throw ValidationError("TwoSectorSpectrum: mixing matrix is not unitary");
        }
        if (std::abs(u.determinant() - 1.0) > 1e-12) {
            throw ValidationError("TwoSectorSpectrum: mixing matrix must have unit determinant");
        }
        mixing_[level] = u;
    }

    void set_gauge(std::size_t level, double f) { gauge_.at(level) = f; }
    void set_single_gauge(double f) noexcept { single_gauge_ = f; }

    HermitianOperator hamiltonian() const {
        RealVector d(dim());
        if (single_) {
            d(0) = *single_;
        }
        for (std::size_t l = 0; l < levels(); ++l) {
            d(index(l, 1)) = energies_[l];
            d(index(l, -1)) = energies_[l];
        }
        return HermitianOperator::diagonal(d);
    }

    double span() const {
        double lo = energies_.front();
        double hi = energies_.back();
        if (single_) {
            lo = std::min(lo, *single_);
            hi = std::max(hi, *single_);
        }
        return hi - lo;
    }

  private:
    std::vector<double> energies_;
    std::optional<double> single_;
    std::vector<Matrix2c> mixing_;
    std::vector<double> gauge_;
    double single_gauge_ = 0.0;
};

/// Gauge-stripped amplitudes a_gamma(eps) = e^{-i f} sum_sigma conj(U_{sigma gamma}) c_{eps sigma}
/// for every pair level (rows) and gamma (columns); the single level, if any,
/// is appended as a last row and feeds the first sector only.
inline ComplexMatrix gauged_amplitudes(const TwoSectorSpectrum &s, const ComplexVector &c) {
    detail::require_same_dim(s.dim(), c.size(), "gauged_amplitudes");
    const Index rows = static_cast<Index>(s.levels()) + s.offset();
    ComplexMatrix a = ComplexMatrix::Zero(rows, 2);
    for (std::size_t l = 0; l < s.levels(); ++l) {
        Eigen::Vector2cd v(c(s.index(l, 1)), c(s.index(l, -1)));
        const Eigen::Vector2cd w = std::exp(-kI * s.gauge(l)) * (s.mixing(l).adjoint() * v);
        a(static_cast<Index>(l), 0) = w(0);
        a(static_cast<Index>(l), 1) = w(1);
    }
    if (s.single_level()) {
        a(rows - 1, 0) = std::exp(-kI * s.single_gauge()) * c(0);
    }
    return a;
}

namespace detail {

/// Energies in the row order of gauged_amplitudes().
inline std::vector<double> amplitude_energies(const TwoSectorSpectrum &s) {
    std::vector<double> e(s.energies());
    if (s.single_level()) {
        e.push_back(*s.single_level());
    }
    return e;
}

/// Classical Fisher information of the (t, gamma) grid POVM from the
/// t-wavefunctions psi_gamma(t) = sum_eps a_gamma(eps) e^{i t eps}. Since p(t; X) = p(t - X; 0), dp/dX = -dp/dt and
/// F = sum_{m, gamma} (1/M) (2 Re psi* psi')^2 / |psi|^2.
class TimeFisherKernel {
  public:
    TimeFisherKernel(std::vector<double> energies, Index grid) : eps_(std::move(energies)) {
        const Index s = static_cast<Index>(eps_.size());
        phase_.resize(grid, s);
        for (Index m = 0; m < grid; ++m) {
            const double t = -std::numbers::pi + (m + 0.5) * 2.0 * std::numbers::pi / grid;
            for (Index k = 0; k < s; ++k) {
                phase_(m, k) = std::exp(kI * (t * eps_[static_cast<std::size_t>(k)]));
            }
        }
    }

    double operator()(const ComplexMatrix &a) const {
        const Index grid = phase_.rows();
        ComplexMatrix da = a;
        for (Index k = 0; k < a.rows(); ++k) {
            da.row(k) *= kI * eps_[static_cast<std::size_t>(k)];
        }
        const ComplexMatrix psi = phase_ * a;
        const ComplexMatrix dpsi = phase_ * da;
        const double pmax = psi.cwiseAbs2().maxCoeff();
        double f = 0.0;
        for (Index g = 0; g < 2; ++g) {
            for (Index m = 0; m < grid; ++m) {
                const double p = std::norm(psi(m, g));
                if (p <= 1e-14 * pmax) {
                    continue;
                }
                const double num = 2.0 * (std::conj(psi(m, g)) * dpsi(m, g)).real();
                f += num * num / p;
            }
        }
        return f / static_cast<double>(grid);
    }

  private:
    std::vector<double> eps_;
    ComplexMatrix phase_;
};

} // namespace detail

/// The (t, gamma) grid POVM, outcome index gamma * M + m, labels t_m.
class TwoSectorPOVM {
  public:
    TwoSectorPOVM(TwoSectorSpectrum spectrum, Index grid)
        : spectrum_(std::move(spectrum)), grid_size_(grid) {
        for (double e : detail::amplitude_energies(spectrum_)) {
            if (std::abs(e - std::round(e)) > 1e-9) {
                throw ValidationError("TwoSectorPOVM: energies must be integers");
            }
        }
        if (!(static_cast<double>(grid) > spectrum_.span())) {
            throw ValidationError("TwoSectorPOVM: grid size " + std::to_string(grid) +
                                  " must exceed the energy span " +
                                  std::to_string(spectrum_.span()));
        }
        const double dt = 2.0 * std::numbers::pi / static_cast<double>(grid);
        times_.resize(static_cast<std::size_t>(grid));
        for (Index m = 0; m < grid; ++m) {
            times_[static_cast<std::size_t>(m)] = -std::numbers::pi + (m + 0.5) * dt;
        }
        labels_.reserve(2 * times_.size());
        labels_.insert(labels_.end(), times_.begin(), times_.end());
        labels_.insert(labels_.end(), times_.begin(), times_.end());
        states_.resize(spectrum_.dim(), 2 * grid);
        for (Index g = 0; g < 2; ++g) {
            for (Index m = 0; m < grid; ++m) {
                states_.col(g * grid + m) = state(times_[static_cast<std::size_t>(m)], g);
            }
        }
    }

    const TwoSectorSpectrum &spectrum() const noexcept { return spectrum_; }
    Index grid_size() const noexcept { return grid_size_; }
    const std::vector<double> &times() const noexcept { return times_; }
    const std::vector<double> &labels() const noexcept { return labels_; }
    std::size_t size() const noexcept { return labels_.size(); }
    Index dim() const noexcept { return spectrum_.dim(); }
    double weight() const noexcept { return 2.0 * std::numbers::pi / grid_size_; }
    static double normalizer() noexcept { return 2.0 * std::numbers::pi; }
    static Index sector_of(std::size_t outcome, Index grid) {
        return static_cast<Index>(outcome) / grid;
    }
    const ComplexMatrix &states() const noexcept { return states_; }

    /// |t, gamma> = sum_eps sum_sigma e^{i f} U_{sigma gamma} e^{-i t eps} |eps, sigma>;
    /// gamma is 0 (first sector) or 1.
    ComplexVector state(double t, Index g) const {
        if (g != 0 && g != 1) {
            throw DimensionError("TwoSectorPOVM::state: sector label must be 0 or 1");
        }
        ComplexVector v = ComplexVector::Zero(dim());
        const auto &s = spectrum_;
        for (std::size_t l = 0; l < s.levels(); ++l) {
            const Complex ph = std::exp(kI * (s.gauge(l) - t * s.energies()[l]));
            v(s.index(l, 1)) = ph * s.mixing(l)(0, g);
            v(s.index(l, -1)) = ph * s.mixing(l)(1, g);
        }
        if (s.single_level() && g == 0) {
            v(0) = std::exp(kI * (s.single_gauge() - t * *s.single_level()));
        }
        return v;
    }

    std::vector<double> raw_probabilities(const State &st) const {
        detail::require_same_dim(dim(), dim_of(st), "TwoSectorPOVM");
        std::vector<double> p(size());
        const double scale = weight() / normalizer();
        if (const auto *psi = std::get_if<PureState>(&st)) {
            const ComplexVector amp = states_.adjoint() * psi->amplitudes();
            for (std::size_t k = 0; k < size(); ++k) {
                p[k] = scale * std::norm(amp(static_cast<Index>(k)));
            }
            return p;
        }
        const ComplexMatrix rs = std::get<DensityOperator>(st).matrix() * states_;
        for (std::size_t k = 0; k < size(); ++k) {
            const Index i = static_cast<Index>(k);
            p[k] = scale * states_.col(i).dot(rs.col(i)).real();
        }
        return p;
    }

    DiscretePOVM to_discrete() const {
        std::vector<HermitianOperator> elements;
        elements.reserve(size());
        for (std::size_t k = 0; k < size(); ++k) {
            const auto col = states_.col(static_cast<Index>(k));
            elements.push_back(
                HermitianOperator::from_hermitian_part(col * col.adjoint() / normalizer()));
        }
        return DiscretePOVM(std::move(elements), labels_, std::vector<double>(size(), weight()));
    }

    /// max |sum_{m, gamma} w E(t_m, gamma) - I|.
    double completeness_residual() const {
        const ComplexMatrix sum = states_ * states_.adjoint() * (weight() / normalizer());
        return max_abs(sum - ComplexMatrix::Identity(dim(), dim()));
    }

    /// max |e^{-i T H}|t_m, gamma> - |t_{m + k}, gamma>| with T = k dt, indices mod M.
    double displacement_residual(Index k) const {
        const double shift = static_cast<double>(k) * weight();
        const HermitianOperator h = spectrum_.hamiltonian();
        ComplexVector u(dim());
        for (Index i = 0; i < dim(); ++i) {
            u(i) = std::exp(-kI * (shift * h.matrix()(i, i).real()));
        }
        const Index grid = grid_size_;
        double worst = 0.0;
        for (Index g = 0; g < 2; ++g) {
            for (Index m = 0; m < grid; ++m) {
                const Index target = ((m + k) % grid + grid) % grid;
                const ComplexVector moved = u.asDiagonal() * states_.col(g * grid + m);
                worst = std::max(worst, max_abs(moved - states_.col(g * grid + target)));
            }
        }
        return worst;
    }

    /// Probability of each sector label.
    std::array<double, 2> sector_marginals(const State &st) const {
        const std::vector<double> p = raw_probabilities(st);
        std::array<double, 2> out{0.0, 0.0};
        for (std::size_t k = 0; k < p.size(); ++k) {
            out[static_cast<std::size_t>(sector_of(k, grid_size_))] += p[k];
        }
        return out;
    }

    /// Classical Fisher information of the grid POVM for a pure fiducial.
    double fisher(const PureState &psi) const {
        return detail::TimeFisherKernel(detail::amplitude_energies(spectrum_), grid_size_)(
            gauged_amplitudes(spectrum_, psi.amplitudes()));
    }

  private:
    TwoSectorSpectrum spectrum_;
    Index grid_size_;
    std::vector<double> times_;
    std::vector<double> labels_;
    ComplexMatrix states_;
};

/// Mean energy of a pure state.
inline double mean_energy(const TwoSectorSpectrum &s, const PureState &psi) {
    return expectation(s.hamiltonian(), psi);
}

/// max |P(<H> + u) - P(<H> - u)| over the total energy distribution
/// P(eps) = sum_sigma |c_{eps sigma}|^2. Independent of (U, f).
inline double energy_symmetry_residual(const TwoSectorSpectrum &s, const PureState &psi) {
    const std::vector<double> e = detail::amplitude_energies(s);
    const ComplexMatrix a = gauged_amplitudes(s, psi.amplitudes());
    std::vector<double> prob(e.size());
    for (std::size_t k = 0; k < e.size(); ++k) {
        prob[k] = a.row(static_cast<Index>(k)).squaredNorm();
    }
    RealVector ev = Eigen::Map<const RealVector>(e.data(), static_cast<Index>(e.size()));
    return detail::mirror_residual(ev, prob, mean_energy(s, psi));
}

/// max |b_gamma(<H> + u) - conj b_gamma(<H> - u)| with b_gamma = e^{-i c_gamma} a_gamma
/// for the best constant phase c_gamma: zero exactly when every t-wavefunction
/// is a constant phase times e^{i t <H>} times a real function.
inline double optimality_residual(const TwoSectorSpectrum &s, const PureState &psi) {
    const std::vector<double> e = detail::amplitude_energies(s);
    ComplexMatrix a = gauged_amplitudes(s, psi.amplitudes());
    const double mean = mean_energy(s, psi);
    std::vector<std::optional<std::size_t>> mirror_of(e.size());
    for (std::size_t k = 0; k < e.size(); ++k) {
        const double mirror = 2.0 * mean - e[k];
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (std::abs(e[i] - mirror) <= 1e-9 * std::max(1.0, std::abs(mirror))) {
                mirror_of[k] = i;
            }
        }
    }
    for (Index g = 0; g < 2; ++g) {
        // a(<H>+u) a(<H>-u) = e^{2 i c} |.|^2 at the optimum.
        Complex z = 0.0;
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (mirror_of[k]) {
                z += a(static_cast<Index>(k), g) * a(static_cast<Index>(*mirror_of[k]), g);
            }
        }
        a.col(g) *= std::exp(-kI * (0.5 * std::arg(z)));
    }
    double worst = 0.0;
    for (std::size_t k = 0; k < e.size(); ++k) {
        const auto &j = mirror_of[k];
        for (Index g = 0; g < 2; ++g) {
            const Complex mirrored =
                j ? std::conj(a(static_cast<Index>(*j), g)) : Complex(0.0, 0.0);
            worst = std::max(worst, std::abs(a(static_cast<Index>(k), g) - mirrored));
        }
    }
    return worst;
}

/// Fast likelihood of the (t, gamma) outcomes for a pure fiducial evolved by H.
class TimeLikelihood {
  public:
    TimeLikelihood(const TwoSectorPOVM &povm, const PureState &psi) {
        detail::require_same_dim(povm.dim(), psi.dim(), "TimeLikelihood");
        const ComplexVector &c = psi.amplitudes();
        const RealVector e = povm.spectrum().hamiltonian().matrix().diagonal().real();
        std::vector<Index> keep;
        for (Index i = 0; i < c.size(); ++i) {
            if (std::norm(c(i)) > 1e-30) {
                keep.push_back(i);
            }
        }
        const Index kk = static_cast<Index>(keep.size());
        RealVector h(kk);
        ComplexMatrix table(static_cast<Index>(povm.size()), kk);
        for (Index j = 0; j < kk; ++j) {
            const Index i = keep[static_cast<std::size_t>(j)];
            h(j) = e(i);
            table.col(j) = povm.states().row(i).adjoint() * c(i);
        }
        law_ = detail::ExponentialSumLikelihood(povm.weight() / povm.normalizer(), povm.labels(),
                                                std::move(h), std::move(table));
    }

    std::vector<double> distribution(double t) const { return law_.distribution(t); }
    DiscreteSampler sampler(double t) const { return law_.sampler(t); }
    std::function<double(double)> log_likelihood(const Dataset &data) const {
        return law_.log_likelihood(data);
    }

  private:
    detail::ExponentialSumLikelihood law_;
};

/// 2 pi / g with g the gcd of the occupied integer energy differences: the
/// fiducial returns to itself (up to phase) after this time, so T is only
/// identifiable modulo it.
inline double revival_period(const TwoSectorSpectrum &s, const PureState &psi) {
    const RealVector e = s.hamiltonian().matrix().diagonal().real();
    std::optional<long> first;
    long g = 0;
    for (Index i = 0; i < e.size(); ++i) {
        if (std::norm(psi.amplitudes()(i)) <= 1e-14) {
            continue;
        }
        const long v = std::lround(e(i));
        if (!first) {
            first = v;
        } else {
            g = std::gcd(g, std::abs(v - *first));
        }
    }
    if (g == 0) {
        throw ValidationError("revival_period: fiducial is stationary");
    }
    return 2.0 * std::numbers::pi / static_cast<double>(g);
}

/// Shortest time shift that leaves the outcome law unchanged, to `rel_tol`
/// of the largest probability. It divides the revival period; it can be
/// shorter because only levels that share an outcome sector interfere. A
/// numerically optimized mixing decouples levels only approximately, and laws
/// differing by eps need about 1/eps^2 outcomes to tell apart, hence the
/// loose default.
inline double outcome_period(const TimeLikelihood &model, double revival, int max_divisor = 64,
                             double rel_tol = 1e-6) {
    const std::vector<double> p0 = model.distribution(0.0);
    const double tol = rel_tol * *std::max_element(p0.begin(), p0.end());
    for (int k = max_divisor; k >= 1; --k) {
        const std::vector<double> pk = model.distribution(revival / k);
        double diff = 0.0;
        for (std::size_t i = 0; i < p0.size(); ++i) {
            diff = std::max(diff, std::abs(pk[i] - p0[i]));
        }
        if (diff <= tol) {
            return revival / k;
        }
    }
    return revival;
}

struct MixingSearchResult {
    TwoSectorSpectrum spectrum;   // best (U, f) found
    double ratio = 0.0;           // F / QFI at the best point
    double qfi = 0.0;
    double optimality_residual = 0.0;
    int evaluations = 0;
};

/// Searches SU(2) mixings and gauge phases on the occupied levels for the
/// largest F / QFI. Each occupied pair level contributes (f, theta, alpha,
/// beta). Nelder-Mead is started from the identity and from `restarts`
/// seeded random points, and each run is restarted once from its optimum.
inline MixingSearchResult search_mixing(const TwoSectorSpectrum &spectrum, const PureState &psi,
                                        Index grid, int restarts = 6, std::uint64_t seed = 1,
                                        int max_evals = 20000) {
    detail::require_same_dim(spectrum.dim(), psi.dim(), "search_mixing");
    const double qfi = 4.0 * variance(spectrum.hamiltonian(), psi);
    if (!(qfi > 0.0)) {
        throw ValidationError("search_mixing: fiducial is stationary (zero energy spread)");
    }
    std::vector<std::size_t> occupied;
    for (std::size_t l = 0; l < spectrum.levels(); ++l) {
        const double w = std::norm(psi.amplitudes()(spectrum.index(l, 1))) +
                         std::norm(psi.amplitudes()(spectrum.index(l, -1)));
        if (w > 1e-14) {
            occupied.push_back(l);
        }
    }
    const bool single = spectrum.single_level() && std::norm(psi.amplitudes()(0)) > 1e-14;

    // Reduced problem on the occupied rows only.
    std::vector<double> energies;
    for (std::size_t l : occupied) {
        energies.push_back(spectrum.energies()[l]);
    }
    if (single) {
        energies.push_back(*spectrum.single_level());
    }
    const detail::TimeFisherKernel kernel(energies, grid);
    const Index rows = static_cast<Index>(energies.size());

    auto apply = [&](const std::vector<double> &x, TwoSectorSpectrum &s) {
        for (std::size_t i = 0; i < occupied.size(); ++i) {
            s.set_gauge(occupied[i], x[4 * i]);
            s.set_mixing(occupied[i], su2(x[4 * i + 1], x[4 * i + 2], x[4 * i + 3]));
        }
    };
    auto amplitudes = [&](const std::vector<double> &x) {
        ComplexMatrix a = ComplexMatrix::Zero(rows, 2);
        for (std::size_t i = 0; i < occupied.size(); ++i) {
            const std::size_t l = occupied[i];
            Eigen::Vector2cd v(psi.amplitudes()(spectrum.index(l, 1)),
                               psi.amplitudes()(spectrum.index(l, -1)));
            const Eigen::Vector2cd w = std::exp(-kI * x[4 * i]) *
                                       (su2(x[4 * i + 1], x[4 * i + 2], x[4 * i + 3]).adjoint() * v);
            a(static_cast<Index>(i), 0) = w(0);
            a(static_cast<Index>(i), 1) = w(1);
        }
        if (single) {
            a(rows - 1, 0) = std::exp(-kI * spectrum.single_gauge()) * psi.amplitudes()(0);
        }
        return a;
    };
    int evals = 0;
    auto objective = [&](const std::vector<double> &x) {
        ++evals;
        return 1.0 - kernel(amplitudes(x)) / qfi;
    };

    const std::size_t nparams = 4 * occupied.size();
    std::vector<double> best(nparams, 0.0);
    double best_value = objective(best);
    Rng rng(seed);
    for (int r = 0; r <= restarts && nparams > 0; ++r) {
        std::vector<double> start(nparams, 0.0);
        if (r > 0) {
            for (double &v : start) {
                v = std::numbers::pi * (2.0 * rng.uniform() - 1.0);
            }
        }
        MinimumND m = nelder_mead(objective, start, 0.5, 1e-15, max_evals);
        m = nelder_mead(objective, m.x, 0.05, 1e-16, max_evals);
        if (m.value < best_value) {
            best_value = m.value;
            best = m.x;
        }
    }
    TwoSectorSpectrum out = spectrum;
    if (nparams > 0) {
        apply(best, out);
    }
    return {out, 1.0 - best_value, qfi, optimality_residual(out, psi), evals};
}

} // namespace qmetro
