#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "qmetro/two_sector.hpp"
#include "support.hpp"

using namespace qmetro;
using testing_support::Gen;

namespace {

/// Random amplitudes on the listed ring levels n, with level weights w.
PureState ring_state(const TwoSectorSpectrum &s, const std::vector<int> &ns,
                     const std::vector<double> &w, Gen &g) {
    ComplexVector c = ComplexVector::Zero(s.dim());
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const std::size_t l = static_cast<std::size_t>(ns[i] - 1);
        const Complex a(g.normal(), g.normal());
        const Complex b(g.normal(), g.normal());
        const double norm = std::sqrt(std::norm(a) + std::norm(b));
        c(s.index(l, 1)) = std::sqrt(w[i]) * a / norm;
        c(s.index(l, -1)) = std::sqrt(w[i]) * b / norm;
    }
    return PureState::normalized(c);
}

TwoSectorSpectrum random_mixed(int k, Gen &g) {
    TwoSectorSpectrum s = TwoSectorSpectrum::ring(k);
    for (std::size_t l = 0; l < s.levels(); ++l) {
        s.set_mixing(l, su2(g.uniform(0, 3), g.uniform(-3, 3), g.uniform(-3, 3)));
        s.set_gauge(l, g.uniform(-3, 3));
    }
    return s;
}

} // namespace

TEST_CASE("TwoSectorSpectrum validation", "[two_sector]") {
    REQUIRE_THROWS_WITH(TwoSectorSpectrum({1.0, 4.0}, {1.0, 5.0}),
                        Catch::Matchers::ContainsSubstring("sector energy lists differ"));
    REQUIRE_THROWS_AS(TwoSectorSpectrum({1.0, 4.0}, {1.0}), ValidationError);
    REQUIRE_THROWS_AS(TwoSectorSpectrum::ring(0), ValidationError);

    TwoSectorSpectrum s = TwoSectorSpectrum::ring(3, true);
    REQUIRE(s.dim() == 7);
    REQUIRE(s.index(0, 1) == 1);
    REQUIRE(s.index(2, -1) == 6);
    REQUIRE(s.span() == Catch::Approx(9.0));
    REQUIRE_THROWS_AS(s.index(3, 1), DimensionError);

    Matrix2c bad = Matrix2c::Identity();
    bad(0, 1) = 0.5;
    REQUIRE_THROWS_AS(s.set_mixing(0, bad), ValidationError);
    REQUIRE_THROWS_AS(s.set_mixing(0, Complex(0, 1) * Matrix2c::Identity()), ValidationError);
    REQUIRE_NOTHROW(s.set_mixing(0, su2(0.4, 1.0, -2.0)));
}

TEST_CASE("su2 is special unitary", "[two_sector]") {
    Gen g(3);
    for (int i = 0; i < 20; ++i) {
        const Matrix2c u = su2(g.uniform(-4, 4), g.uniform(-4, 4), g.uniform(-4, 4));
        REQUIRE((u.adjoint() * u - Matrix2c::Identity()).cwiseAbs().maxCoeff() <= 1e-14);
        REQUIRE(std::abs(u.determinant() - 1.0) <= 1e-14);
    }
}

TEST_CASE("TwoSectorPOVM completeness and covariance", "[two_sector]") {
    Gen g(5);
    const TwoSectorSpectrum s = random_mixed(6, g);
    const TwoSectorPOVM p(s, 40);
    REQUIRE(p.completeness_residual() <= 1e-12);
    REQUIRE(validate_povm(p.to_discrete()).passed());
    for (Index k : {1, 7, -3}) REQUIRE(p.displacement_residual(k) <= 1e-12);

    // Direct check of one displaced state against the closed form.
    const double shift = 3 * p.weight();
    const ComplexVector moved =
        (-kI * shift * s.hamiltonian().matrix().diagonal()).array().exp().matrix().asDiagonal() *
        p.state(p.times()[4], 1);
    REQUIRE(max_abs_diff(moved, p.state(p.times()[7], 1)) <= 1e-12);

    // With the nondegenerate zero level.
    TwoSectorSpectrum z = TwoSectorSpectrum::ring(4, true);
    z.set_mixing(1, su2(0.3, 0.2, 0.1));
    REQUIRE(TwoSectorPOVM(z, 17).completeness_residual() <= 1e-12);

    REQUIRE_THROWS_AS(TwoSectorPOVM(TwoSectorSpectrum::ring(4), 15), ValidationError);
    REQUIRE_THROWS_AS(TwoSectorPOVM(TwoSectorSpectrum({0.5}, {0.5}), 8), ValidationError);
}

TEST_CASE("sector marginals do not depend on the time shift", "[two_sector]") {
    Gen g(9);
    const TwoSectorSpectrum s = random_mixed(5, g);
    const TwoSectorPOVM p(s, 32);
    const StateFamily fam(ring_state(s, {1, 2, 4}, {0.3, 0.3, 0.4}, g), s.hamiltonian());
    const auto m0 = p.sector_marginals(fam.at(0.0));
    REQUIRE(m0[0] + m0[1] == Catch::Approx(1.0));
    for (double t : {0.37, 1.9, -2.2}) {
        const auto mt = p.sector_marginals(fam.at(t));
        REQUIRE(std::abs(mt[0] - m0[0]) <= 1e-12);
    }
}

TEST_CASE("fast Fisher matches finite differences", "[two_sector]") {
    Gen g(11);
    for (int trial = 0; trial < 5; ++trial) {
        const TwoSectorSpectrum s = random_mixed(8, g);
        const TwoSectorPOVM p(s, 80);
        const PureState psi = ring_state(s, {1, 3, 6, 8}, {0.2, 0.3, 0.3, 0.2}, g);
        const StateFamily fam(psi, s.hamiltonian());
        const double fast = p.fisher(psi);
        const double fd = classical_fisher(p, fam, 0.0, 1e-5);
        REQUIRE(fast == Catch::Approx(fd).epsilon(1e-6));
        REQUIRE(fast <= 4.0 * variance(s.hamiltonian(), psi) * (1 + 1e-9));
    }
}

TEST_CASE("energy symmetry and optimality residuals", "[two_sector]") {
    const TwoSectorSpectrum s = TwoSectorSpectrum::ring(7);
    ComplexVector c = ComplexVector::Zero(s.dim());
    // Levels 1, 5, 7 (energies 1, 25, 49) with weights 1/4, 1/2, 1/4, real in sector +1.
    c(s.index(0, 1)) = 0.5;
    c(s.index(4, 1)) = std::sqrt(0.5);
    c(s.index(6, 1)) = 0.5;
    const PureState psi(c);
    REQUIRE(mean_energy(s, psi) == Catch::Approx(25.0));
    REQUIRE(energy_symmetry_residual(s, psi) <= 1e-12);
    REQUIRE(optimality_residual(s, psi) <= 1e-12);
    const TwoSectorPOVM p(s, 64);
    REQUIRE(p.fisher(psi) == Catch::Approx(4.0 * variance(s.hamiltonian(), psi)).epsilon(1e-9));

    ComplexVector d = ComplexVector::Zero(s.dim());
    d(s.index(0, 1)) = d(s.index(1, 1)) = d(s.index(2, 1)) = 1.0 / std::sqrt(3.0);
    const PureState asym(d);
    REQUIRE(energy_symmetry_residual(s, asym) > 0.1);
    REQUIRE(optimality_residual(s, asym) > 0.1);
}

TEST_CASE("mixing search", "[two_sector][slow]") {
    const TwoSectorSpectrum s = TwoSectorSpectrum::ring(16);
    Gen g(21);
    SECTION("energy-symmetric fiducial reaches the quantum bound") {
        const PureState psi = ring_state(s, {1, 5, 7}, {0.25, 0.5, 0.25}, g);
        const TwoSectorPOVM id(s, 256);
        REQUIRE(id.fisher(psi) < 0.99 * 4.0 * variance(s.hamiltonian(), psi));
        const MixingSearchResult r = search_mixing(s, psi, 256);
        REQUIRE(r.ratio >= 1.0 - 1e-4);
        REQUIRE(r.optimality_residual <= 1e-4);
        // Independent check with the optimized POVM.
        const TwoSectorPOVM best(r.spectrum, 256);
        REQUIRE(best.fisher(psi) / r.qfi == Catch::Approx(r.ratio).epsilon(1e-12));
        REQUIRE(best.completeness_residual() <= 1e-9);
    }
    SECTION("asymmetric fiducial stays below the bound") {
        const PureState psi = ring_state(s, {1, 2, 3}, {1.0 / 3, 1.0 / 3, 1.0 / 3}, g);
        const MixingSearchResult r = search_mixing(s, psi, 256, 3);
        REQUIRE(r.ratio <= 0.999);
        REQUIRE(r.ratio > 0.5);
    }
    SECTION("stationary fiducial is rejected") {
        ComplexVector c = ComplexVector::Zero(s.dim());
        c(s.index(3, 1)) = 1.0;
        REQUIRE_THROWS_AS(search_mixing(s, PureState(c), 256), ValidationError);
    }
}

TEST_CASE("time likelihood and identifiability period", "[two_sector]") {
    const TwoSectorSpectrum s = TwoSectorSpectrum::ring(8);
    Gen g(31);
    const PureState psi = ring_state(s, {1, 5, 7}, {0.25, 0.5, 0.25}, g);
    TwoSectorSpectrum mixed = s;
    mixed.set_mixing(4, su2(0.7, 0.2, -0.4));
    const TwoSectorPOVM p(mixed, 64);
    const TimeLikelihood model(p, psi);
    const StateFamily fam(psi, mixed.hamiltonian());
    for (double t : {0.0, 0.3, -2.0}) {
        const auto a = model.distribution(t);
        const auto b = outcome_distribution(p, fam.at(t));
        for (std::size_t k = 0; k < a.size(); ++k) REQUIRE(std::abs(a[k] - b[k]) <= 1e-14);
    }
    // Energies 1, 25, 49 differ by multiples of 24.
    const double revival = revival_period(s, psi);
    REQUIRE(revival == Catch::Approx(2 * std::numbers::pi / 24));
    REQUIRE(outcome_period(model, revival) == Catch::Approx(revival));

    // Level 25 alone in sector -1 and levels 1, 49 alone in sector +1: only the
    // difference 48 interferes, so the law repeats twice as fast.
    ComplexVector c = ComplexVector::Zero(s.dim());
    c(s.index(0, 1)) = 0.5;
    c(s.index(4, -1)) = std::sqrt(0.5);
    c(s.index(6, 1)) = Complex(0.0, 0.5);
    const PureState split(c);
    const TimeLikelihood split_model(TwoSectorPOVM(s, 64), split);
    REQUIRE(outcome_period(split_model, revival_period(s, split)) ==
            Catch::Approx(2 * std::numbers::pi / 48));

    ComplexVector one = ComplexVector::Zero(s.dim());
    one(s.index(2, 1)) = 1.0;
    REQUIRE_THROWS_AS(revival_period(s, PureState(one)), ValidationError);
}
