#pragma once

/**
 * @file
 * Monte-Carlo measurement simulation and estimator statistics.
 *
 * A trial draws N outcomes at parameter X and forms one estimate. Per-trial
 * seeds are seed ^ splitmix64(trial_index), and the same trial seed is reused
 * at X - step, X and X + step so the slope d<X_est>/dX is estimated with
 * common random numbers. Reductions run in trial order with pairwise
 * summation, so results do not depend on the number of worker threads.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qmetro/hilbert.hpp"
#include "qmetro/metric.hpp"
#include "qmetro/povm.hpp"

namespace qmetro {

/// Slopes with magnitude below this are reported as divergent.
inline constexpr double kDivergentSlope = 1e-6;

// ---------------------------------------------------------------------------
// Random numbers

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
    return seed ^ splitmix64(trial);
}

/// splitmix64 stream; portable bit-for-bit, unlike the std distributions.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller.
    double normal() {
        const double u1 = 1.0 - uniform(); // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

  private:
    std::uint64_t state_;
};

// ---------------------------------------------------------------------------
// Reductions and circular helpers

inline double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) {
            s += x;
        }
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

inline double pairwise_mean(std::span<const double> v) {
    return v.empty() ? 0.0 : pairwise_sum(v) / static_cast<double>(v.size());
}

/// Maps x into [-period/2, period/2).
inline double wrap(double x, double period) {
    const double y = x - period * std::floor(x / period + 0.5);
    return y >= 0.5 * period ? y - period : y;
}

// ---------------------------------------------------------------------------
// Data

struct Dataset {
    std::vector<double> outcomes;     // outcome labels
    std::vector<std::size_t> indices; // outcome indices; empty for continuous data
    double true_parameter = 0.0;
    std::uint64_t seed = 0;
    std::size_t size() const noexcept { return outcomes.size(); }
};

/// Inverse-CDF sampler over a fixed discrete distribution.
class DiscreteSampler {
  public:
    DiscreteSampler(std::vector<double> probabilities, std::vector<double> labels, double x)
        : labels_(std::move(labels)), x_(x) {
        if (probabilities.empty() || probabilities.size() != labels_.size()) {
            throw DimensionError("DiscreteSampler: probabilities and labels differ in length");
        }
        cdf_.resize(probabilities.size());
        double acc = 0.0;
        for (std::size_t k = 0; k < probabilities.size(); ++k) {
            acc += probabilities[k];
            cdf_[k] = acc;
        }
        if (!(acc > 0.0)) {
            throw ValidationError("DiscreteSampler: distribution has zero mass");
        }
        for (double &c : cdf_) {
            c /= acc;
        }
    }

    Dataset operator()(int n, std::uint64_t seed) const {
        Dataset d;
        d.true_parameter = x_;
        d.seed = seed;
        d.outcomes.reserve(static_cast<std::size_t>(n));
        d.indices.reserve(static_cast<std::size_t>(n));
        Rng rng(seed);
        for (int i = 0; i < n; ++i) {
            const double u = rng.uniform();
            auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
            std::size_t k = static_cast<std::size_t>(it - cdf_.begin());
            k = std::min(k, cdf_.size() - 1);
            d.indices.push_back(k);
            d.outcomes.push_back(labels_[k]);
        }
        return d;
    }

  private:
    std::vector<double> cdf_;
    std::vector<double> labels_;
    double x_;
};

/// N i.i.d. outcomes of `povm` on the family state at X.
template <Measurement M>
Dataset sample_outcomes(const M &povm, const StateFamily &family, double x, int n,
                        std::uint64_t seed) {
    if (n < 1) {
        throw ValidationError("sample_outcomes: N must be positive");
    }
    DiscreteSampler sampler(outcome_distribution(povm, family.at(x)), povm.labels(), x);
    return sampler(n, seed);
}

// ---------------------------------------------------------------------------
// Estimators

/// (1/N) sum (x_i - bias); circular mean when a period is given.
inline double sample_mean_estimate(const Dataset &data, double bias,
                                   std::optional<double> period = std::nullopt) {
    if (data.size() == 0) {
        throw ValidationError("sample_mean_estimate: empty dataset");
    }
    if (!period) {
        std::vector<double> shifted(data.outcomes);
        for (double &x : shifted) {
            x -= bias;
        }
        return pairwise_mean(shifted);
    }
    const double k = 2.0 * std::numbers::pi / *period;
    std::vector<double> c(data.size());
    std::vector<double> s(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        c[i] = std::cos(k * (data.outcomes[i] - bias));
        s[i] = std::sin(k * (data.outcomes[i] - bias));
    }
    return std::atan2(pairwise_sum(s), pairwise_sum(c)) / k;
}

struct SearchWindow {
    double lo = 0.0;
    double length = 0.0;
    bool periodic = false;
    double mid() const noexcept { return lo + 0.5 * length; }
};

inline constexpr int kCoarseGridPoints = 64;

/// Maximizes a log-likelihood: 64-point coarse scan, then golden-section
/// refinement to 1e-8 of the window length around the best coarse point.
/// Ties on the coarse scan go to the point nearest the window midpoint.
template <class LogLikelihood>
double maximize_likelihood(LogLikelihood &&loglik, const SearchWindow &w) {
    if (!(w.length > 0.0)) {
        throw ValidationError("maximize_likelihood: empty search window");
    }
    const int n = kCoarseGridPoints;
    const double step = w.periodic ? w.length / n : w.length / (n - 1);
    std::vector<double> xs(n);
    std::vector<double> ls(n);
    for (int i = 0; i < n; ++i) {
        xs[static_cast<std::size_t>(i)] = w.lo + step * i;
        ls[static_cast<std::size_t>(i)] = loglik(xs[static_cast<std::size_t>(i)]);
    }
    const auto [mn, mx] = std::minmax_element(ls.begin(), ls.end());
    if (!std::isfinite(*mx) || *mx - *mn <= 1e-12 * std::max(1.0, std::abs(*mx))) {
        throw IdentifiabilityError("mle_estimate: parameter not identifiable (flat likelihood)");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (ls[i] > ls[best] ||
            (ls[i] == ls[best] && std::abs(xs[i] - w.mid()) < std::abs(xs[best] - w.mid()))) {
            best = i;
        }
    }
    double a = xs[best] - step;
    double b = xs[best] + step;
    if (!w.periodic) {
        a = std::max(a, w.lo);
        b = std::min(b, w.lo + w.length);
    }
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    const double tol = 1e-8 * w.length;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = loglik(c);
    double fd = loglik(d);
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = loglik(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = loglik(d);
        }
    }
    double x = 0.5 * (a + b);
    if (w.periodic) {
        x = w.mid() + wrap(x - w.mid(), w.length);
    }
    return x;
}

namespace detail {
/// Outcome law p_k(X) = scale |sum_j B_kj exp(-i X h_j)|^2, the form taken by
/// any rank-one POVM on a pure unitary family.
class ExponentialSumLikelihood {
  public:
    ExponentialSumLikelihood() = default;
    ExponentialSumLikelihood(double scale, std::vector<double> labels, RealVector h,
                             ComplexMatrix table)
        : scale_(scale), labels_(std::move(labels)), h_(std::move(h)), table_(std::move(table)) {}

    std::size_t size() const noexcept { return labels_.size(); }
    const std::vector<double> &labels() const noexcept { return labels_; }

    std::vector<double> distribution(double x) const {
        const ComplexVector amp = table_ * phases(x);
        std::vector<double> p(size());
        for (std::size_t m = 0; m < size(); ++m) {
            p[m] = scale_ * std::norm(amp(static_cast<Index>(m)));
        }
        return p;
    }

    DiscreteSampler sampler(double x) const { return DiscreteSampler(distribution(x), labels_, x); }

    /// Log-likelihood evaluator bound to one dataset (outcome indices required).
    std::function<double(double)> log_likelihood(const Dataset &data) const {
        if (data.indices.size() != data.outcomes.size()) {
            throw ValidationError("log_likelihood: dataset lacks outcome indices");
        }
        std::vector<std::size_t> sorted(data.indices);
        std::sort(sorted.begin(), sorted.end());
        std::vector<Index> rows;
        std::vector<double> counts;
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (i == 0 || sorted[i] != sorted[i - 1]) {
                rows.push_back(static_cast<Index>(sorted[i]));
                counts.push_back(0.0);
            }
            counts.back() += 1.0;
        }
        ComplexMatrix sub(static_cast<Index>(rows.size()), table_.cols());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            sub.row(static_cast<Index>(r)) = table_.row(rows[r]);
        }
        return [this, sub = std::move(sub), counts = std::move(counts)](double x) {
            const ComplexVector amp = sub * phases(x);
            double s = 0.0;
            for (std::size_t r = 0; r < counts.size(); ++r) {
                const double p = scale_ * std::norm(amp(static_cast<Index>(r)));
                s += counts[r] * std::log(std::max(p, std::numeric_limits<double>::min()));
            }
            return s;
        };
    }

  private:
    ComplexVector phases(double x) const {
        ComplexVector e(h_.size());
        for (Index j = 0; j < h_.size(); ++j) {
            e(j) = std::exp(-kI * (x * h_(j)));
        }
        return e;
    }

    double scale_ = 1.0;
    std::vector<double> labels_;
    RealVector h_;
    ComplexMatrix table_;
};
} // namespace detail

/// Fast likelihood for a covariant POVM measured on a pure unitary family:
/// p_m(X) = (w / C) |sum_h c_h exp(i (x_m - X) h)|^2.
class CovariantLikelihood {
  public:
    CovariantLikelihood(const CovariantPOVM &povm, const StateFamily &family) {
        if (!family.is_pure()) {
            throw ValidationError("CovariantLikelihood: fiducial must be pure");
        }
        if (max_abs_diff(family.generator().matrix(), povm.spectrum().generator().matrix()) >
            1e-9 * std::max(1.0, povm.spectrum().eigenvalues().cwiseAbs().maxCoeff())) {
            throw ValidationError("CovariantLikelihood: family generator differs from POVM spectrum");
        }
        const ComplexVector c = povm.gauged_coefficients(family.pure_at(0.0));
        const double cmax = c.cwiseAbs2().maxCoeff();
        std::vector<Index> keep;
        for (Index k = 0; k < c.size(); ++k) {
            if (std::norm(c(k)) > 1e-30 * cmax) {
                keep.push_back(k);
            }
        }
        const Index kk = static_cast<Index>(keep.size());
        const std::vector<double> &grid = povm.grid();
        RealVector h(kk);
        ComplexMatrix table(static_cast<Index>(grid.size()), kk);
        for (Index j = 0; j < kk; ++j) {
            h(j) = povm.spectrum().eigenvalues()(keep[static_cast<std::size_t>(j)]);
        }
        for (std::size_t m = 0; m < grid.size(); ++m) {
            for (Index j = 0; j < kk; ++j) {
                table(static_cast<Index>(m), j) =
                    c(keep[static_cast<std::size_t>(j)]) * std::exp(kI * (grid[m] * h(j)));
            }
        }
        law_ = detail::ExponentialSumLikelihood(povm.weight() / povm.normalizer(), grid,
                                                std::move(h), std::move(table));
    }

    std::size_t size() const noexcept { return law_.size(); }
    const std::vector<double> &labels() const noexcept { return law_.labels(); }
    std::vector<double> distribution(double x) const { return law_.distribution(x); }
    DiscreteSampler sampler(double x) const { return law_.sampler(x); }
    std::function<double(double)> log_likelihood(const Dataset &data) const {
        return law_.log_likelihood(data);
    }

  private:
    detail::ExponentialSumLikelihood law_;
};

/// MLE over `window` for outcomes of a covariant POVM.
inline double mle_estimate(const Dataset &data, const CovariantLikelihood &model,
                           const SearchWindow &window) {
    return maximize_likelihood(model.log_likelihood(data), window);
}

/// MLE for a general measurement; each likelihood evaluation re-evolves the
/// family, so this is meant for small dimensions.
template <Measurement M>
double mle_estimate(const Dataset &data, const M &povm, const StateFamily &family,
                    const SearchWindow &window) {
    if (data.indices.size() != data.outcomes.size()) {
        throw ValidationError("mle_estimate: dataset lacks outcome indices");
    }
    auto loglik = [&](double x) {
        const std::vector<double> p = povm.raw_probabilities(family.at(x));
        double s = 0.0;
        for (std::size_t k : data.indices) {
            s += std::log(std::max(p[k], std::numeric_limits<double>::min()));
        }
        return s;
    };
    return maximize_likelihood(loglik, window);
}

// ---------------------------------------------------------------------------
// Deviation statistics

struct EstimationReport {
    std::string scenario;
    std::string estimator;
    int trials = 0;
    int n = 0;
    double parameter = 0.0;
    std::uint64_t seed = 0;
    std::optional<double> period;

    double slope = 0.0;      // d<X_est>/dX
    bool divergent = false;  // |slope| below kDivergentSlope
    double delta_moment = 0.0;        // <(delta X)^2>
    double delta_moment_stderr = 0.0; // Monte-Carlo standard error of the above
    double mse = 0.0;                 // plain <(X_est - X)^2>

    double fisher = 0.0;   // classical Fisher information per outcome
    double qfi = 0.0;      // quantum Fisher information
    double var_h = 0.0;    // generator variance

    double ratio_classical() const { return divergent ? inf() : delta_moment * n * fisher; }
    double ratio_quantum() const { return divergent ? inf() : delta_moment * n * qfi; }
    /// 4 N <(delta X)^2> Var(h)
    double ratio_generator() const { return divergent ? inf() : 4.0 * n * delta_moment * var_h; }

  private:
    static double inf() { return std::numeric_limits<double>::infinity(); }
};

struct DeviationConfig {
    double parameter = 0.0;
    int n = 1;
    int trials = 100;
    double slope_step = 1e-3;
    std::uint64_t seed = 0;
    std::optional<double> period; // circular statistics when set
    unsigned threads = 0;         // 0: hardware concurrency
};

namespace detail {
template <class F> void parallel_for(int count, unsigned threads, F &&body) {
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max(1, count)));
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (int i = static_cast<int>(t); i < count; i += static_cast<int>(threads)) {
                body(i);
            }
        });
    }
    for (auto &th : pool) {
        th.join();
    }
}
} // namespace detail

/// Runs `trials` experiments at X, X - step and X + step.
/// `make_sampler(X)` returns a callable (N, seed) -> Dataset and
/// `estimator(Dataset)` returns X_est. delta X = X_est / |slope| - X.
template <class MakeSampler, class Estimator>
EstimationReport deviation_moment(MakeSampler &&make_sampler, Estimator &&estimator,
                                  const DeviationConfig &cfg) {
    if (cfg.trials < 100) {
        throw ValidationError("deviation_moment: at least 100 trials required");
    }
    if (cfg.n < 1 || !(cfg.slope_step > 0.0)) {
        throw ValidationError("deviation_moment: invalid N or slope step");
    }
    const double x = cfg.parameter;
    const auto s0 = make_sampler(x);
    const auto sp = make_sampler(x + cfg.slope_step);
    const auto sm = make_sampler(x - cfg.slope_step);
    const auto t = static_cast<std::size_t>(cfg.trials);
    std::vector<double> e0(t), ep(t), em(t);
    detail::parallel_for(cfg.trials, cfg.threads, [&](int i) {
        const std::uint64_t seed = trial_seed(cfg.seed, static_cast<std::uint64_t>(i));
        const auto k = static_cast<std::size_t>(i);
        e0[k] = estimator(s0(cfg.n, seed));
        ep[k] = estimator(sp(cfg.n, seed));
        em[k] = estimator(sm(cfg.n, seed));
    });

    auto diff = [&](double a, double b) { return cfg.period ? wrap(a - b, *cfg.period) : a - b; };
    std::vector<double> buf(t);
    for (std::size_t i = 0; i < t; ++i) {
        buf[i] = diff(ep[i], em[i]) / (2.0 * cfg.slope_step);
    }
    EstimationReport r;
    r.trials = cfg.trials;
    r.n = cfg.n;
    r.parameter = x;
    r.seed = cfg.seed;
    r.period = cfg.period;
    r.slope = pairwise_mean(buf);

    for (std::size_t i = 0; i < t; ++i) {
        const double d = diff(e0[i], x);
        buf[i] = d * d;
    }
    r.mse = pairwise_mean(buf);

    if (std::abs(r.slope) < kDivergentSlope) {
        r.divergent = true;
        r.delta_moment = std::numeric_limits<double>::infinity();
        r.delta_moment_stderr = 0.0;
        return r;
    }
    const double inv = 1.0 / std::abs(r.slope);
    for (std::size_t i = 0; i < t; ++i) {
        const double d = diff(e0[i] * inv, x);
        buf[i] = d * d;
    }
    r.delta_moment = pairwise_mean(buf);
    for (double &v : buf) {
        v = (v - r.delta_moment) * (v - r.delta_moment);
    }
    r.delta_moment_stderr =
        std::sqrt(pairwise_sum(buf) / static_cast<double>(t - 1) / static_cast<double>(t));
    return r;
}

enum class EstimatorKind { SampleMean, MaximumLikelihood };

inline std::string to_string(EstimatorKind k) {
    return k == EstimatorKind::SampleMean ? "sample_mean" : "mle";
}

/// Deviation statistics for a covariant POVM on a pure unitary family.
/// The sample-mean path removes the fiducial bias <x>_0 (circularly when
/// periodic). Fisher information and QFI are filled in at X.
inline EstimationReport deviation_moment(const CovariantPOVM &povm, const StateFamily &family,
                                         double x, int n, int trials, EstimatorKind kind,
                                         double slope_step, std::uint64_t seed,
                                         unsigned threads = 0) {
    const CovariantLikelihood model(povm, family);
    DeviationConfig cfg;
    cfg.parameter = x;
    cfg.n = n;
    cfg.trials = trials;
    cfg.slope_step = slope_step;
    cfg.seed = seed;
    cfg.threads = threads;
    if (povm.periodic()) {
        cfg.period = povm.window().length;
    }
    const SearchWindow window{povm.window().lo, povm.window().length, povm.periodic()};

    // Bias <x>_0 of the fiducial outcome distribution.
    const std::vector<double> p0 = model.distribution(0.0);
    double bias = 0.0;
    if (cfg.period) {
        const double k = 2.0 * std::numbers::pi / *cfg.period;
        Complex z = 0.0;
        for (std::size_t m = 0; m < p0.size(); ++m) {
            z += p0[m] * std::exp(kI * (k * povm.grid()[m]));
        }
        bias = std::arg(z) / k;
    } else {
        for (std::size_t m = 0; m < p0.size(); ++m) {
            bias += p0[m] * povm.grid()[m];
        }
    }

    auto make_sampler = [&](double at) { return model.sampler(at); };
    EstimationReport r;
    if (kind == EstimatorKind::SampleMean) {
        r = deviation_moment(make_sampler,
                             [&](const Dataset &d) { return sample_mean_estimate(d, bias, cfg.period); },
                             cfg);
    } else {
        r = deviation_moment(make_sampler,
                             [&](const Dataset &d) { return mle_estimate(d, model, window); }, cfg);
    }
    r.estimator = to_string(kind);
    const double step = 1e-5 * povm.window().length / (2.0 * std::numbers::pi);
    r.fisher = classical_fisher(povm, family, x, step);
    r.qfi = qfi_unitary(family);
    r.var_h = variance(family.generator(), family.fiducial());
    return r;
}

// ---------------------------------------------------------------------------
// Audit

struct BoundVerdict {
    double tolerance = 0.0;       // 3 / sqrt(trials)
    bool classical = false;       // <(dX)^2> N F >= 1 - tol
    bool fisher_below_qfi = false; // F <= QFI (1 + 1e-6) + 1e-6
    bool quantum = false;         // <(dX)^2> N QFI >= 1 - tol
    bool generator = false;       // 4 N <(dX)^2> Var(h) >= 1 - tol
    bool passed() const noexcept { return classical && fisher_below_qfi && quantum && generator; }
    std::string failing() const {
        if (!classical) return "<(dX)^2> >= 1/(N F)";
        if (!fisher_below_qfi) return "F <= QFI";
        if (!quantum) return "<(dX)^2> >= 1/(N QFI)";
        if (!generator) return "<(dX)^2> Var(h) >= 1/(4N)";
        return "";
    }
};

inline BoundVerdict bound_audit(const EstimationReport &r) {
    BoundVerdict v;
    v.tolerance = 3.0 / std::sqrt(static_cast<double>(std::max(1, r.trials)));
    v.fisher_below_qfi = r.fisher <= r.qfi * (1.0 + 1e-6) + 1e-6;
    if (r.divergent) {
        v.classical = v.quantum = v.generator = true;
        return v;
    }
    const double lo = 1.0 - v.tolerance;
    v.classical = r.ratio_classical() >= lo;
    v.quantum = r.ratio_quantum() >= lo && r.ratio_quantum() >= r.ratio_classical() * (1.0 - 1e-6);
    v.generator = r.ratio_generator() >= lo;
    return v;
}

// ---------------------------------------------------------------------------
// CSV

/// Column order of csv_row().
inline std::string csv_header() {
    return "scenario,seed,N,trials,mse,slope,fisher,qfi,ratio_classical,ratio_quantum";
}

namespace detail {
inline std::string fmt(double v) {
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    std::ostringstream os;
    os.precision(17);
    os << (v == 0.0 ? 0.0 : v); // no "-0"
    return os.str();
}
} // namespace detail

/// `mse` is the deviation moment <(delta X)^2>.
inline std::string csv_row(const EstimationReport &r) {
    std::ostringstream os;
    os << r.scenario << ',' << r.seed << ',' << r.n << ',' << r.trials << ','
       << detail::fmt(r.delta_moment) << ',' << detail::fmt(r.slope) << ','
       << detail::fmt(r.fisher) << ',' << detail::fmt(r.qfi) << ','
       << detail::fmt(r.ratio_classical()) << ',' << detail::fmt(r.ratio_quantum());
    return os.str();
}

} // namespace qmetro
