#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace qmetro {

struct Minimum1D {
    double x = 0.0;
    double value = 0.0;
};

/// Golden-section search for the minimum of a unimodal f on [a, b].
template <class F> Minimum1D golden_section_minimize(F &&f, double a, double b, double tol) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

struct MinimumND {
    std::vector<double> x;
    double value = 0.0;
    int evaluations = 0;
};

/// Nelder-Mead simplex minimization (standard reflection / expansion /
/// contraction / shrink coefficients 1, 2, 1/2, 1/2). Stops when the spread
/// of simplex values drops below `ftol` or after `max_evals` evaluations.
template <class F>
MinimumND nelder_mead(F &&f, std::vector<double> start, double scale, double ftol,
                      int max_evals) {
    const std::size_t n = start.size();
    std::vector<std::vector<double>> pts(n + 1, start);
    for (std::size_t i = 0; i < n; ++i) {
        pts[i + 1][i] += scale;
    }
    std::vector<double> vals(n + 1);
    int evals = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        vals[i] = f(pts[i]);
        ++evals;
    }
    std::vector<std::size_t> order(n + 1);
    auto point = [&](const std::vector<double> &centroid, const std::vector<double> &from,
                     double t) {
        std::vector<double> p(n);
        for (std::size_t k = 0; k < n; ++k) {
            p[k] = centroid[k] + t * (from[k] - centroid[k]);
        }
        return p;
    };
    while (evals < max_evals) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[n - 1];
        if (std::abs(vals[worst] - vals[best]) <= ftol) {
            break;
        }
        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) {
                continue;
            }
            for (std::size_t k = 0; k < n; ++k) {
                centroid[k] += pts[i][k] / static_cast<double>(n);
            }
        }
        const auto refl = point(centroid, pts[worst], -1.0);
        const double fr = f(refl);
        ++evals;
        if (fr < vals[best]) {
            const auto expd = point(centroid, pts[worst], -2.0);
            const double fe = f(expd);
            ++evals;
            if (fe < fr) {
                pts[worst] = expd;
                vals[worst] = fe;
            } else {
                pts[worst] = refl;
                vals[worst] = fr;
            }
        } else if (fr < vals[second]) {
            pts[worst] = refl;
            vals[worst] = fr;
        } else {
            const bool outside = fr < vals[worst];
            const auto contr = point(centroid, outside ? refl : pts[worst], 0.5);
            const double fc = f(contr);
            ++evals;
            if (fc < std::min(fr, vals[worst])) {
                pts[worst] = contr;
                vals[worst] = fc;
            } else {
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == best) {
                        continue;
                    }
                    pts[i] = point(pts[best], pts[i], 0.5);
                    vals[i] = f(pts[i]);
                    ++evals;
                }
            }
        }
    }
    const auto it = std::min_element(vals.begin(), vals.end());
    const auto idx = static_cast<std::size_t>(it - vals.begin());
    return {pts[idx], *it, evals};
}

} // namespace qmetro
