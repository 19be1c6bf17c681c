#pragma once

// JSON serialization.
//   matrix:          {"dim": [rows, cols], "re": [[...]], "im": [[...]]}
//   spectrum:        {"eigenvalues": [...], "eigenvectors": matrix, "period": x | null}
//   covariant POVM:  {"spectrum", "gauge_samples", "grid": {"lo", "length", "M"}, "C"}
//   report:          {"schema": 1, ...}; infinities are written as null.

#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include <json.hpp>

#include "qmetro/estimate.hpp"
#include "qmetro/hilbert.hpp"
#include "qmetro/povm.hpp"

namespace qmetro::io {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline json matrix_to_json(const ComplexMatrix &m) {
    json re = json::array();
    json im = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json rr = json::array();
        json ii = json::array();
        for (Index j = 0; j < m.cols(); ++j) {
            rr.push_back(m(i, j).real());
            ii.push_back(m(i, j).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ii));
    }
    return json{{"dim", {m.rows(), m.cols()}}, {"re", re}, {"im", im}};
}

inline ComplexMatrix matrix_from_json(const json &j) {
    try {
        Index rows = 0;
        Index cols = 0;
        const json &d = j.at("dim");
        if (d.is_array()) {
            rows = d.at(0).get<Index>();
            cols = d.at(1).get<Index>();
        } else {
            rows = cols = d.get<Index>();
        }
        const json &re = j.at("re");
        const json &im = j.at("im");
        if (rows < 0 || cols < 0 || re.size() != static_cast<std::size_t>(rows) ||
            im.size() != static_cast<std::size_t>(rows)) {
            throw DimensionError("matrix_from_json: row count disagrees with dim");
        }
        ComplexMatrix m(rows, cols);
        for (Index i = 0; i < rows; ++i) {
            const json &rr = re.at(static_cast<std::size_t>(i));
            const json &ii = im.at(static_cast<std::size_t>(i));
            if (rr.size() != static_cast<std::size_t>(cols) ||
                ii.size() != static_cast<std::size_t>(cols)) {
                throw DimensionError("matrix_from_json: column count disagrees with dim");
            }
            for (Index k = 0; k < cols; ++k) {
                m(i, k) = Complex(rr.at(static_cast<std::size_t>(k)).get<double>(),
                                  ii.at(static_cast<std::size_t>(k)).get<double>());
            }
        }
        return m;
    } catch (const json::exception &e) {
        throw ValidationError(std::string("matrix_from_json: ") + e.what());
    }
}

inline json to_json(const HermitianOperator &h) { return matrix_to_json(h.matrix()); }
inline json to_json(const DensityOperator &rho) { return matrix_to_json(rho.matrix()); }
inline json to_json(const PureState &psi) { return matrix_to_json(psi.amplitudes()); }

inline HermitianOperator hermitian_from_json(const json &j) {
    return HermitianOperator(matrix_from_json(j));
}
inline DensityOperator density_from_json(const json &j) {
    return DensityOperator(matrix_from_json(j));
}
inline PureState pure_from_json(const json &j) {
    const ComplexMatrix m = matrix_from_json(j);
    if (m.cols() != 1) {
        throw DimensionError("pure_from_json: expected a column vector");
    }
    return PureState(m.col(0));
}

inline json to_json(const SpectrumModel &s) {
    json ev = json::array();
    for (Index k = 0; k < s.dim(); ++k) {
        ev.push_back(s.eigenvalues()(k));
    }
    return json{{"eigenvalues", ev},
                {"eigenvectors", matrix_to_json(s.eigenvectors())},
                {"period", s.period() ? json(*s.period()) : json(nullptr)}};
}

inline SpectrumModel spectrum_from_json(const json &j) {
    try {
        const auto ev = j.at("eigenvalues").get<std::vector<double>>();
        RealVector h = Eigen::Map<const RealVector>(ev.data(), static_cast<Index>(ev.size()));
        std::optional<double> period;
        if (j.contains("period") && !j.at("period").is_null()) {
            period = j.at("period").get<double>();
        }
        return SpectrumModel(std::move(h), matrix_from_json(j.at("eigenvectors")), period);
    } catch (const json::exception &e) {
        throw ValidationError(std::string("spectrum_from_json: ") + e.what());
    }
}

inline json to_json(const CovariantPOVM &p) {
    json gauge = json::array();
    for (Index k = 0; k < p.gauge().size(); ++k) {
        gauge.push_back(p.gauge()(k));
    }
    return json{{"spectrum", to_json(p.spectrum())},
                {"gauge_samples", gauge},
                {"grid",
                 {{"lo", p.window().lo},
                  {"length", p.window().length},
                  {"M", static_cast<Index>(p.size())}}},
                {"C", p.normalizer()}};
}

inline CovariantPOVM covariant_from_json(const json &j) {
    try {
        SpectrumModel s = spectrum_from_json(j.at("spectrum"));
        const auto g = j.at("gauge_samples").get<std::vector<double>>();
        RealVector gauge = Eigen::Map<const RealVector>(g.data(), static_cast<Index>(g.size()));
        const json &grid = j.at("grid");
        Window w{grid.at("lo").get<double>(), grid.at("length").get<double>()};
        return CovariantPOVM(std::move(s), std::move(gauge), w, grid.at("M").get<Index>(),
                             j.at("C").get<double>());
    } catch (const json::exception &e) {
        throw ValidationError(std::string("covariant_from_json: ") + e.what());
    }
}

namespace detail {
inline json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
inline double from_nullable(const json &j) {
    return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}
} // namespace detail

inline json to_json(const EstimationReport &r) {
    using detail::finite_or_null;
    return json{{"schema", kSchemaVersion},
                {"scenario", r.scenario},
                {"estimator", r.estimator},
                {"trials", r.trials},
                {"N", r.n},
                {"parameter", r.parameter},
                {"seed", r.seed},
                {"period", r.period ? json(*r.period) : json(nullptr)},
                {"slope", r.slope},
                {"divergent", r.divergent},
                {"delta_moment", finite_or_null(r.delta_moment)},
                {"delta_moment_stderr", r.delta_moment_stderr},
                {"mse", r.mse},
                {"fisher", r.fisher},
                {"qfi", r.qfi},
                {"var_h", r.var_h},
                {"ratio_classical", finite_or_null(r.ratio_classical())},
                {"ratio_quantum", finite_or_null(r.ratio_quantum())},
                {"ratio_generator", finite_or_null(r.ratio_generator())}};
}

inline EstimationReport report_from_json(const json &j) {
    try {
        if (j.at("schema").get<int>() != kSchemaVersion) {
            throw ValidationError("report_from_json: unsupported schema version");
        }
        EstimationReport r;
        r.scenario = j.at("scenario").get<std::string>();
        r.estimator = j.at("estimator").get<std::string>();
        r.trials = j.at("trials").get<int>();
        r.n = j.at("N").get<int>();
        r.parameter = j.at("parameter").get<double>();
        r.seed = j.at("seed").get<std::uint64_t>();
        if (!j.at("period").is_null()) {
            r.period = j.at("period").get<double>();
        }
        r.slope = j.at("slope").get<double>();
        r.divergent = j.at("divergent").get<bool>();
        r.delta_moment = detail::from_nullable(j.at("delta_moment"));
        r.delta_moment_stderr = j.at("delta_moment_stderr").get<double>();
        r.mse = j.at("mse").get<double>();
        r.fisher = j.at("fisher").get<double>();
        r.qfi = j.at("qfi").get<double>();
        r.var_h = j.at("var_h").get<double>();
        return r;
    } catch (const json::exception &e) {
        throw ValidationError(std::string("report_from_json: ") + e.what());
    }
}

} // namespace qmetro::io
