// qfi: runs one estimation scenario (or a sweep) and writes a report plus a
// closed-form sidecar.
//
// Exit status: 0 all audits pass, 1 a bound audit failed, 2 invalid input.
// The default output directory is $QMETRO_OUT_DIR, else the working directory.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qmetro/qmetro.hpp"

namespace {

using qmetro::io::json;

struct Config {
    std::string scenario;
    double r = 0.0;
    double phi = 0.0;
    qmetro::Index d = 16;
    int k = 16;
    qmetro::Index m = 0; // 0: scenario default
    double x = 0.0;
    int n = 10;
    int trials = 10000;
    std::uint64_t seed = 1;
    std::optional<qmetro::Index> fock_state;
    std::string fiducial = "symmetric";
    std::string estimator = "mean";
    double omega = 1.0;
    unsigned threads = 0;
    std::string out;
    std::string format = "json";
    std::string sweep;
    double from = 0.0;
    double to = 0.0;
    int points = 11;
    std::vector<double> values; // explicit sweep points; overrides from/to/points
};

std::vector<double> sweep_points(const Config &c) {
    if (!c.values.empty()) return c.values;
    std::vector<double> v(static_cast<std::size_t>(c.points));
    for (int i = 0; i < c.points; ++i) {
        v[static_cast<std::size_t>(i)] =
            c.points == 1 ? c.from : c.from + (c.to - c.from) * i / (c.points - 1);
    }
    return v;
}

/// One scenario run: the report, scenario extras for CSV, and the sidecar.
struct Outcome {
    qmetro::EstimationReport report;
    std::vector<std::pair<std::string, double>> extras;
    json sidecar;
    bool passed = true;
    std::string failing;
    bool has_report = true;
};

std::string fmt(double v) { return qmetro::detail::fmt(v); }

Outcome audit(Outcome o) {
    const qmetro::BoundVerdict v = qmetro::bound_audit(o.report);
    if (!v.passed()) {
        o.passed = false;
        o.failing = v.failing();
    }
    return o;
}

Outcome run_squeezed(const Config &c) {
    const qmetro::SqueezedParams p{c.r, c.phi};
    const qmetro::SqueezedOptimum opt = qmetro::squeezed_optimal(p);
    const qmetro::SqueezedCovariance cov = qmetro::squeezed_covariance(p);
    const qmetro::Complex g = qmetro::gamma(p);
    const qmetro::SqueezedMcResult mc =
        qmetro::squeezed_mc_scenario(p, c.x, c.n, c.trials, c.seed, c.threads);
    Outcome o;
    o.report = mc.report;
    o.extras = {{"var_xhat", opt.var_xhat}, {"tan_theta", opt.tan_theta}, {"n_mse", mc.n_mse}};
    o.sidecar = json{{"gamma", {{"re", g.real()}, {"im", g.imag()}}},
                     {"var_x", cov.var_x},
                     {"var_p", cov.var_p},
                     {"cov_xp", cov.cov_xp},
                     {"gauge_coefficient", opt.gauge_coefficient},
                     {"tan_theta", opt.tan_theta},
                     {"var_xhat", opt.var_xhat},
                     {"n_mse", mc.n_mse},
                     {"n_mse_band", mc.band},
                     {"product_4n_mse_var_p", mc.product}};
    return audit(std::move(o));
}

Outcome run_phase(const Config &c) {
    qmetro::ComplexVector amps;
    if (c.fock_state) {
        amps = qmetro::number_state(c.d, *c.fock_state);
    } else {
        amps = qmetro::binomial_state(c.d, static_cast<int>(c.d / 2));
    }
    const qmetro::PhaseScenario s = qmetro::fock_phase_scenario(c.d, amps, c.m);
    const auto kind = c.estimator == "mle" ? qmetro::EstimatorKind::MaximumLikelihood
                                           : qmetro::EstimatorKind::SampleMean;
    Outcome o;
    o.report = qmetro::deviation_moment(s.povm, s.family, c.x, c.n, c.trials, kind, 1e-3, c.seed,
                                        c.threads);
    o.report.scenario = "phase";
    const qmetro::PureState psi = s.family.pure_at(0.0);
    const qmetro::OptimalityReport opt = qmetro::optimality_test(s.povm, psi, 1e-9);
    o.extras = {{"var_n", o.report.var_h}, {"fisher_over_qfi",
                                            o.report.qfi > 0 ? o.report.fisher / o.report.qfi : 0.0}};
    o.sidecar = json{{"d", c.d},
                     {"M", static_cast<qmetro::Index>(s.povm.size())},
                     {"phase_state_overlap", qmetro::phase_state_overlap(s.povm, 0.0)},
                     {"var_n", o.report.var_h},
                     {"qfi", o.report.qfi},
                     {"fisher", o.report.fisher},
                     {"optimality_phase_residual", opt.phase_residual},
                     {"symmetry_residual", opt.symmetry_residual},
                     {"divergent", o.report.divergent}};
    return audit(std::move(o));
}

qmetro::PureState clock_fiducial(const qmetro::TwoSectorSpectrum &s, const std::string &kind) {
    using qmetro::Complex;
    qmetro::ComplexVector v = qmetro::ComplexVector::Zero(s.dim());
    auto put = [&](int n, Complex plus, Complex minus, double weight) {
        const auto l = static_cast<std::size_t>(n - 1);
        const double norm = std::sqrt(std::norm(plus) + std::norm(minus));
        v(s.index(l, 1)) = plus * std::sqrt(weight) / norm;
        v(s.index(l, -1)) = minus * std::sqrt(weight) / norm;
    };
    if (s.levels() < 7) {
        throw qmetro::ValidationError("clock scenario needs K >= 7");
    }
    if (kind == "symmetric") {
        // Energies 1, 25, 49 with weights 1/4, 1/2, 1/4.
        put(1, {0.3, 0.2}, {-0.1, 0.35}, 0.25);
        put(5, {0.5, -0.1}, {0.2, 0.4}, 0.5);
        put(7, {0.1, 0.4}, {0.25, -0.2}, 0.25);
    } else if (kind == "asymmetric") {
        // Energies 1, 4, 9 with equal weights.
        put(1, {0.4, 0.1}, {0.2, -0.3}, 1.0 / 3.0);
        put(2, {0.1, 0.5}, {-0.3, 0.1}, 1.0 / 3.0);
        put(3, {0.45, 0.0}, {0.1, 0.3}, 1.0 / 3.0);
    } else {
        throw qmetro::ValidationError("unknown clock fiducial '" + kind + "'");
    }
    return qmetro::PureState::normalized(v);
}

Outcome run_clock(const Config &c) {
    const qmetro::TwoSectorSpectrum base = qmetro::TwoSectorSpectrum::ring(c.k);
    const qmetro::Index grid = c.m > 0 ? c.m : static_cast<qmetro::Index>(base.span()) + 1;
    const qmetro::PureState psi = clock_fiducial(base, c.fiducial);
    const qmetro::MixingSearchResult found = qmetro::search_mixing(base, psi, grid, 6, c.seed);
    const qmetro::TwoSectorPOVM povm(found.spectrum, grid);
    const qmetro::StateFamily family(psi, found.spectrum.hamiltonian());

    // T is identifiable only modulo the period of the outcome law, so both
    // estimators work on that circle: a circular mean, or an MLE over one
    // period centred on the true value.
    const qmetro::TimeLikelihood model(povm, psi);
    const double period = qmetro::outcome_period(model, qmetro::revival_period(base, psi));
    const double k = 2.0 * std::numbers::pi / period;
    const std::vector<double> p0 = model.distribution(0.0);
    qmetro::Complex z = 0.0;
    for (std::size_t i = 0; i < p0.size(); ++i) {
        z += p0[i] * std::exp(qmetro::kI * (k * povm.labels()[i]));
    }
    const double bias = std::arg(z) / k;
    qmetro::DeviationConfig cfg;
    cfg.parameter = c.x;
    cfg.n = c.n;
    cfg.trials = c.trials;
    cfg.seed = c.seed;
    cfg.period = period;
    // Outcomes are discrete, so a step far below the grid spacing leaves most
    // paired datasets identical and the slope estimate noisy.
    cfg.slope_step = period / 32.0;
    cfg.threads = c.threads;
    auto make_sampler = [&](double at) { return model.sampler(at); };
    const qmetro::SearchWindow window{c.x - 0.5 * period, period, true};
    Outcome o;
    if (c.estimator == "mle") {
        o.report = qmetro::deviation_moment(
            make_sampler,
            [&](const qmetro::Dataset &d) {
                return qmetro::maximize_likelihood(model.log_likelihood(d), window);
            },
            cfg);
        o.report.estimator = "mle";
    } else {
        o.report = qmetro::deviation_moment(
            make_sampler,
            [&](const qmetro::Dataset &d) { return qmetro::sample_mean_estimate(d, bias, period); },
            cfg);
        o.report.estimator = "sample_mean";
    }
    o.report.scenario = "clock";
    o.report.fisher = povm.fisher(psi);
    o.report.qfi = found.qfi;
    o.report.var_h = found.qfi / 4.0;
    o.extras = {{"fisher_over_qfi", found.ratio}};
    o.sidecar = json{{"K", c.k},
                     {"M", grid},
                     {"fiducial", c.fiducial},
                     {"outcome_period", period},
                     {"completeness_residual", povm.completeness_residual()},
                     {"displacement_residual", povm.displacement_residual(1)},
                     {"energy_symmetry_residual", qmetro::energy_symmetry_residual(base, psi)},
                     {"optimality_residual", found.optimality_residual},
                     {"fisher", o.report.fisher},
                     {"qfi", found.qfi},
                     {"fisher_over_qfi", found.ratio},
                     {"search_evaluations", found.evaluations}};
    return audit(std::move(o));
}

Outcome run_mandelstam(const Config &c) {
    qmetro::RealVector e(2);
    e << 0.0, c.omega;
    const qmetro::HermitianOperator h = qmetro::HermitianOperator::diagonal(e);
    qmetro::ComplexMatrix sx(2, 2);
    sx << 0.0, 1.0, 1.0, 0.0;
    const qmetro::HermitianOperator a(sx);
    qmetro::ComplexVector v(2);
    v << 1.0, std::exp(-qmetro::kI * (c.omega * c.x));
    const qmetro::MandelstamTamm mt =
        qmetro::mandelstam_tamm(a, h, qmetro::PureState::normalized(v));
    Outcome o;
    o.has_report = false;
    o.extras = {{"delta_t", mt.delta_t}, {"product", mt.product}};
    o.sidecar = json{{"omega", c.omega},
                     {"T", c.x},
                     {"delta_a", mt.delta_a},
                     {"speed", mt.speed},
                     {"delta_t", mt.delta_t},
                     {"delta_h", mt.delta_h},
                     {"product", mt.product}};
    if (!(mt.product >= 0.5 - 1e-9)) {
        o.passed = false;
        o.failing = "delta_T delta_H >= 1/2";
    }
    return o;
}

Outcome run(const Config &c) {
    if (c.scenario == "squeezed") return run_squeezed(c);
    if (c.scenario == "phase") return run_phase(c);
    if (c.scenario == "clock") return run_clock(c);
    return run_mandelstam(c);
}

std::filesystem::path output_dir(const Config &c) {
    if (!c.out.empty()) return c.out;
    if (const char *env = std::getenv("QMETRO_OUT_DIR")) return env;
    return std::filesystem::current_path();
}

void write_file(const std::filesystem::path &p, const std::string &text) {
    std::filesystem::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) {
        throw qmetro::ValidationError("cannot write " + p.string());
    }
    f << text;
}

std::string extras_header(const Outcome &o) {
    std::string s;
    for (const auto &[name, value] : o.extras) {
        s += "," + name;
    }
    return s;
}

std::string extras_row(const Outcome &o) {
    std::string s;
    for (const auto &[name, value] : o.extras) {
        s += "," + fmt(value);
    }
    return s;
}

void print_summary(const Config &c, const Outcome &o) {
    std::cout << "scenario=" << c.scenario;
    if (o.has_report) {
        const auto &r = o.report;
        std::cout << " N*MSE=" << fmt(r.n * r.delta_moment) << " F=" << fmt(r.fisher)
                  << " QFI=" << fmt(r.qfi) << " ratio_classical=" << fmt(r.ratio_classical())
                  << " ratio_quantum=" << fmt(r.ratio_quantum());
        if (r.divergent) std::cout << " divergent=true";
    } else {
        for (const auto &[name, value] : o.extras) std::cout << ' ' << name << '=' << fmt(value);
    }
    std::cout << " audit=" << (o.passed ? "PASS" : "FAIL");
    if (!o.passed) std::cout << " failing=\"" << o.failing << '"';
    std::cout << '\n';
}

int single(const Config &c) {
    const Outcome o = run(c);
    const auto dir = output_dir(c);
    if (o.has_report) {
        if (c.format == "csv") {
            write_file(dir / (c.scenario + ".csv"), qmetro::csv_header() + extras_header(o) + "\n" +
                                                        qmetro::csv_row(o.report) + extras_row(o) +
                                                        "\n");
        } else {
            json j = qmetro::io::to_json(o.report);
            for (const auto &[name, value] : o.extras) j["extras"][name] = value;
            write_file(dir / (c.scenario + ".json"), j.dump(2) + "\n");
        }
    }
    json side = o.sidecar;
    side["schema"] = qmetro::io::kSchemaVersion;
    side["scenario"] = c.scenario;
    write_file(dir / (c.scenario + "_closed_form.json"), side.dump(2) + "\n");
    print_summary(c, o);
    if (!o.passed) {
        std::cerr << "bound audit failed: " << o.failing << '\n';
        return 1;
    }
    return 0;
}

int theta_sweep(const Config &c) {
    const qmetro::SqueezedParams p{c.r, c.phi};
    const double closed = qmetro::squeezed_optimal(p).tan_theta;
    std::ostringstream csv;
    csv << "theta,tan_theta,nsr,closed_form_tan_theta\n";
    double best_nsr = std::numeric_limits<double>::infinity();
    double best_tan = 0.0;
    const std::vector<double> thetas = sweep_points(c);
    for (const double th : thetas) {
        const double v = qmetro::squeezed_nsr(p, th);
        csv << fmt(th) << ',' << fmt(std::tan(th)) << ',' << fmt(v) << ',' << fmt(closed) << '\n';
        if (v < best_nsr) {
            best_nsr = v;
            best_tan = std::tan(th);
        }
    }
    write_file(output_dir(c) / "squeezed_theta_sweep.csv", csv.str());
    std::cout << "scenario=squeezed sweep=theta points=" << thetas.size()
              << " min_nsr=" << fmt(best_nsr) << " argmin_tan_theta=" << fmt(best_tan)
              << " closed_form_tan_theta=" << fmt(closed) << " audit=PASS\n";
    return 0;
}

int sweep(const Config &base) {
    if (base.sweep == "theta") {
        if (base.scenario != "squeezed") {
            throw qmetro::ValidationError("theta sweep applies to the squeezed scenario");
        }
        return theta_sweep(base);
    }
    std::ostringstream csv;
    bool header = false;
    bool passed = true;
    std::string failing;
    const std::vector<double> points = sweep_points(base);
    for (const double raw : points) {
        Config c = base;
        double v = raw;
        if (base.sweep == "r") c.r = v;
        else if (base.sweep == "phi") c.phi = v;
        else if (base.sweep == "X") c.x = v;
        else {
            c.n = static_cast<int>(std::lround(v));
            if (c.n < 1) throw qmetro::ValidationError("N sweep values must be >= 1");
            v = c.n;
        }
        const Outcome o = run(c);
        if (!o.has_report) {
            throw qmetro::ValidationError("scenario '" + c.scenario + "' has no estimation report");
        }
        if (!header) {
            csv << qmetro::csv_header() << ",sweep_" << base.sweep << extras_header(o) << '\n';
            header = true;
        }
        csv << qmetro::csv_row(o.report) << ',' << fmt(v) << extras_row(o) << '\n';
        if (!o.passed && passed) {
            passed = false;
            failing = o.failing;
        }
    }
    write_file(output_dir(base) / (base.scenario + "_" + base.sweep + "_sweep.csv"), csv.str());
    std::cout << "scenario=" << base.scenario << " sweep=" << base.sweep
              << " points=" << points.size() << " audit=" << (passed ? "PASS" : "FAIL") << '\n';
    if (!passed) {
        std::cerr << "bound audit failed: " << failing << '\n';
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum parameter-estimation scenarios: Fisher information, bounds and "
                 "Monte-Carlo estimator statistics."};
    Config c;
    std::optional<long> fock;
    app.add_option("--scenario", c.scenario, "squeezed | phase | clock | mandelstam")
        ->required()
        ->check(CLI::IsMember({"squeezed", "phase", "clock", "mandelstam"}));
    app.add_option("--r", c.r, "squeeze parameter (>= 0)");
    app.add_option("--phi", c.phi, "squeeze angle");
    app.add_option("--d", c.d, "oscillator truncation for the phase scenario")
        ->check(CLI::Range(1, 256));
    app.add_option("--K", c.k, "ring levels for the clock scenario")->check(CLI::Range(1, 64));
    app.add_option("--M", c.m, "outcome grid size (0: scenario default)");
    app.add_option("--X", c.x, "true parameter value (elapsed time for mandelstam)");
    app.add_option("--N", c.n, "outcomes per trial")->check(CLI::PositiveNumber);
    app.add_option("--trials", c.trials, "Monte-Carlo trials (>= 100)")->check(CLI::Range(100, 100000000));
    app.add_option("--seed", c.seed, "base random seed");
    app.add_option("--fock-state", fock, "number-state fiducial for the phase scenario");
    app.add_option("--fiducial", c.fiducial, "clock fiducial: symmetric | asymmetric")
        ->check(CLI::IsMember({"symmetric", "asymmetric"}));
    app.add_option("--estimator", c.estimator, "phase and clock estimator: mean | mle")
        ->check(CLI::IsMember({"mean", "mle"}));
    app.add_option("--omega", c.omega, "level splitting for the mandelstam clock");
    app.add_option("--threads", c.threads, "worker threads (0: all cores)");
    app.add_option("--out", c.out, "output directory (default $QMETRO_OUT_DIR or .)");
    app.add_option("--format", c.format, "report format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--sweep", c.sweep, "sweep variable: theta | r | phi | N | X")
        ->check(CLI::IsMember({"theta", "r", "phi", "N", "X"}));
    app.add_option("--from", c.from, "sweep start");
    app.add_option("--to", c.to, "sweep end");
    app.add_option("--points", c.points, "sweep points")->check(CLI::PositiveNumber);
    app.add_option("--values", c.values, "explicit sweep points, comma separated")
        ->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        std::cerr << app.help();
        return 2;
    }
    try {
        if (fock) {
            if (*fock < 0 || *fock >= c.d) {
                throw qmetro::ValidationError("--fock-state must lie in [0, d)");
            }
            c.fock_state = static_cast<qmetro::Index>(*fock);
        }
        if (c.scenario == "mandelstam") {
            if (!(c.omega > 0.0)) throw qmetro::ValidationError("--omega must be positive");
            // Default to the point of fastest change, T = pi / (2 omega).
            if (app.count("--X") == 0) c.x = std::numbers::pi / (2.0 * c.omega);
        }
        if (!c.sweep.empty()) {
            const bool ranged = app.count("--from") > 0 && app.count("--to") > 0;
            if (c.sweep == "theta" && !ranged && c.values.empty()) {
                c.from = -0.5 * std::numbers::pi + 0.05;
                c.to = 0.5 * std::numbers::pi - 0.05;
            } else if (c.values.empty() && (!ranged || (c.points > 1 && c.from == c.to))) {
                throw qmetro::ValidationError("sweep needs --values or a non-empty --from/--to range");
            }
            return sweep(c);
        }
        return single(c);
    } catch (const qmetro::Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
