#pragma once

// Ready-made estimation scenarios with closed-form oracles: displacement of a
// squeezed vacuum, phase shifts of a truncated oscillator and clock-based time
// estimation. Units with hbar = 1 and unit length scale.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmetro/estimate.hpp"
#include "qmetro/hilbert.hpp"
#include "qmetro/metric.hpp"
#include "qmetro/optimize.hpp"
#include "qmetro/povm.hpp"

namespace qmetro {

// ---------------------------------------------------------------------------
// Squeezed vacuum

struct SqueezedParams {
    double r = 0.0;   // squeeze parameter
    double phi = 0.0; // squeeze angle

    void validate() const {
        if (!(r >= 0.0) || !std::isfinite(r) || !std::isfinite(phi)) {
            throw ValidationError("SqueezedParams: need finite r >= 0 and finite phi");
        }
    }
};

/// The Gaussian width constant gamma evaluated three algebraically equal ways.
struct GammaForms {
    Complex ratio;      // (cosh r + e^{2i phi} sinh r) / (cosh r - e^{2i phi} sinh r)
    Complex normalized; // (1 + i sinh 2r sin 2phi) / (cosh 2r - sinh 2r cos 2phi)
    Complex inverted;   // (cosh 2r + sinh 2r cos 2phi) / (1 - i sinh 2r sin 2phi)

    /// Largest pairwise difference relative to |gamma|.
    double disagreement() const {
        const double scale = std::max(1.0, std::abs(ratio));
        return std::max({std::abs(ratio - normalized), std::abs(ratio - inverted),
                         std::abs(normalized - inverted)}) /
               scale;
    }
};

inline GammaForms gamma_forms(const SqueezedParams &p) {
    p.validate();
    const double ch = std::cosh(p.r);
    const double sh = std::sinh(p.r);
    const Complex e = std::exp(2.0 * kI * p.phi);
    const double ch2 = std::cosh(2.0 * p.r);
    const double sh2 = std::sinh(2.0 * p.r);
    const double c2 = std::cos(2.0 * p.phi);
    const double s2 = std::sin(2.0 * p.phi);
    GammaForms g;
    g.ratio = (ch + e * sh) / (ch - e * sh);
    g.normalized = Complex(1.0, sh2 * s2) / (ch2 - sh2 * c2);
    g.inverted = (ch2 + sh2 * c2) / Complex(1.0, -sh2 * s2);
    return g;
}

/// gamma with Re(gamma) > 0.
inline Complex gamma(const SqueezedParams &p) {
    const Complex g = gamma_forms(p).ratio;
    if (!(g.real() > 0.0)) {
        throw ValidationError("gamma: Re(gamma) must be positive");
    }
    return g;
}

struct SqueezedCovariance {
    double var_x = 0.0;
    double var_p = 0.0;
    double cov_xp = 0.0; // symmetrized <xp + px>/2
    double determinant() const noexcept { return var_x * var_p - cov_xp * cov_xp; }
};

inline SqueezedCovariance squeezed_covariance(const SqueezedParams &p) {
    p.validate();
    const double em = std::exp(-2.0 * p.r);
    const double ep = std::exp(2.0 * p.r);
    const double c = std::cos(p.phi);
    const double s = std::sin(p.phi);
    return {0.5 * (em * c * c + ep * s * s), 0.5 * (em * s * s + ep * c * c),
            -0.5 * std::sinh(2.0 * p.r) * std::sin(2.0 * p.phi)};
}

/// Same moments from psi(x) ~ exp(-gamma x^2 / 2).
inline SqueezedCovariance squeezed_covariance_from_gamma(const SqueezedParams &p) {
    const Complex g = gamma(p);
    const Complex gi = 1.0 / g;
    const double var_x = 0.5 / g.real();
    return {var_x, 0.5 / gi.real(), -g.imag() * var_x};
}

struct SqueezedOptimum {
    double gauge_coefficient = 0.0; // f(p) = gauge_coefficient * p^2
    double tan_theta = 0.0;         // measured operator x + tan_theta * p
    double var_xhat = 0.0;          // minimum noise-to-signal ratio
};

inline SqueezedOptimum squeezed_optimal(const SqueezedParams &p) {
    const Complex gi = 1.0 / gamma(p);
    return {-0.5 * gi.imag(), -gi.imag(), 0.5 * gi.real()};
}

/// Noise-to-signal ratio of measuring x + tan(theta) p.
inline double squeezed_nsr(const SqueezedParams &p, double theta) {
    if (!(std::abs(std::cos(theta)) > 1e-9)) {
        throw ValidationError("squeezed_nsr: cos(theta) vanishes");
    }
    const SqueezedCovariance c = squeezed_covariance(p);
    const double t = std::tan(theta);
    return c.var_x + 2.0 * c.cov_xp * t + c.var_p * t * t;
}

/// Golden-section minimization of squeezed_nsr over theta in (-pi/2, pi/2).
inline Minimum1D minimize_squeezed_nsr(const SqueezedParams &p, double tol = 1e-13) {
    const double edge = 0.5 * std::numbers::pi - 1e-7;
    return golden_section_minimize([&](double th) { return squeezed_nsr(p, th); }, -edge, edge,
                                   tol);
}

struct SqueezedMcResult {
    EstimationReport report;
    double expected = 0.0;  // var_xhat
    double n_mse = 0.0;     // N <(delta X)^2>
    double band = 0.0;      // 3 sigma of n_mse
    double product = 0.0;   // 4 N <(delta X)^2> var_p
    bool within_band = false;
    bool product_within_band = false;
};

/// Draws N outcomes of the optimal combination x + tan(theta) p, which are
/// Gaussian with mean X and variance var_xhat, and estimates X by the sample
/// mean.
inline SqueezedMcResult squeezed_mc_scenario(const SqueezedParams &p, double x, int n, int trials,
                                             std::uint64_t seed, unsigned threads = 0) {
    const SqueezedOptimum opt = squeezed_optimal(p);
    const SqueezedCovariance cov = squeezed_covariance(p);
    const double sd = std::sqrt(opt.var_xhat);
    auto make_sampler = [sd](double at) {
        return [sd, at](int count, std::uint64_t s) {
            Dataset d;
            d.true_parameter = at;
            d.seed = s;
            d.outcomes.resize(static_cast<std::size_t>(count));
            Rng rng(s);
            for (double &v : d.outcomes) {
                v = at + sd * rng.normal();
            }
            return d;
        };
    };
    DeviationConfig cfg;
    cfg.parameter = x;
    cfg.n = n;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.threads = threads;
    cfg.slope_step = 1e-3 * std::max(1.0, sd);
    SqueezedMcResult out;
    out.report = deviation_moment(
        make_sampler, [](const Dataset &d) { return sample_mean_estimate(d, 0.0); }, cfg);
    out.report.scenario = "squeezed";
    out.report.estimator = "sample_mean";
    out.report.fisher = 1.0 / opt.var_xhat;
    out.report.qfi = 4.0 * cov.var_p;
    out.report.var_h = cov.var_p;
    out.expected = opt.var_xhat;
    out.n_mse = n * out.report.delta_moment;
    out.band = 3.0 * n * out.report.delta_moment_stderr;
    out.product = 4.0 * out.n_mse * cov.var_p;
    out.within_band = std::abs(out.n_mse - out.expected) <= out.band;
    out.product_within_band =
        std::abs(out.product - 1.0) <= 4.0 * cov.var_p * out.band;
    return out;
}

// ---------------------------------------------------------------------------
// Phase shifts of a truncated oscillator

/// h = -n on levels 0..d-1, period 2 pi.
inline SpectrumModel number_spectrum(Index d) {
    if (d < 1 || d > kMaxSystemDim) {
        throw DimensionError("number_spectrum: dimension must be in [1, " +
                             std::to_string(kMaxSystemDim) + "]");
    }
    RealVector h(d);
    for (Index n = 0; n < d; ++n) {
        h(n) = -static_cast<double>(n);
    }
    return SpectrumModel::diagonal(std::move(h), 2.0 * std::numbers::pi);
}

inline HermitianOperator number_operator(Index d) {
    RealVector n(d);
    for (Index k = 0; k < d; ++k) {
        n(k) = static_cast<double>(k);
    }
    return HermitianOperator::diagonal(n);
}

inline ComplexVector number_state(Index d, Index n) { return PureState::basis(d, n).amplitudes(); }

/// sqrt(binomial(trials, k) / 2^trials) on levels k = 0..trials, centred at trials / 2.
inline ComplexVector binomial_state(Index d, int trials) {
    if (trials < 0 || trials >= d) {
        throw DimensionError("binomial_state: need 0 <= trials < d");
    }
    ComplexVector v = ComplexVector::Zero(d);
    for (int k = 0; k <= trials; ++k) {
        const double logc = std::lgamma(trials + 1.0) - std::lgamma(k + 1.0) -
                            std::lgamma(trials - k + 1.0) - trials * std::numbers::ln2;
        v(k) = std::exp(0.5 * logc);
    }
    return v / v.norm();
}

struct PhaseScenario {
    StateFamily family;
    CovariantPOVM povm;
};

/// Canonical phase measurement (gauge 0 unless given) on a d-level oscillator.
/// `grid` = 0 picks 4 d points.
inline PhaseScenario fock_phase_scenario(Index d, const ComplexVector &amplitudes, Index grid = 0,
                                         RealVector gauge = {}) {
    SpectrumModel spectrum = number_spectrum(d);
    detail::require_same_dim(amplitudes.size(), d, "fock_phase_scenario");
    PureState psi(amplitudes);
    if (grid == 0) {
        grid = 4 * d;
    }
    StateFamily family(std::move(psi), spectrum.generator());
    CovariantPOVM povm = build_covariant(spectrum, std::move(gauge), grid);
    return {std::move(family), std::move(povm)};
}

/// <phi|phi> for the unnormalized phase state at phi; equals d.
inline double phase_state_overlap(const CovariantPOVM &povm, double phi) {
    return povm.state(phi).squaredNorm();
}

// ---------------------------------------------------------------------------
// Mandelstam-Tamm clock

struct MandelstamTamm {
    double delta_a = 0.0; // clock spread
    double speed = 0.0;   // |d<A>/dT|
    double delta_t = 0.0; // delta_a / speed
    double delta_h = 0.0; // energy spread
    double product = 0.0; // delta_t * delta_h, at least 1/2
};

inline MandelstamTamm mandelstam_tamm(const HermitianOperator &a, const HermitianOperator &h,
                                      const State &state) {
    detail::require_same_dim(a.dim(), h.dim(), "mandelstam_tamm");
    detail::require_same_dim(a.dim(), dim_of(state), "mandelstam_tamm");
    const DensityOperator rho = to_density(state);
    const ComplexMatrix comm = a.matrix() * h.matrix() - h.matrix() * a.matrix();
    // <[A, H]> is imaginary and d<A>/dT = -i <[A, H]>.
    const Complex c = detail::trace_product(rho.matrix(), comm);
    if (!(std::abs(c) > 1e-12)) {
        throw ValidationError("mandelstam_tamm: clock does not move");
    }
    MandelstamTamm r;
    r.delta_a = std::sqrt(variance(a, rho));
    r.speed = std::abs((-kI * c).real());
    r.delta_t = r.delta_a / r.speed;
    r.delta_h = std::sqrt(variance(h, rho));
    r.product = r.delta_t * r.delta_h;
    return r;
}

} // namespace qmetro
