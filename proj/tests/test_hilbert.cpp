#include <catch_amalgamated.hpp>

#include <cmath>

#include "qmetro/hilbert.hpp"
#include "support.hpp"

using namespace qmetro;
using testing_support::Gen;
using testing_support::naive_product;

namespace {
ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
    ComplexMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}
const ComplexMatrix kSigmaX = mat2(0.0, 1.0, 1.0, 0.0);
} // namespace

TEST_CASE("HermitianOperator enforces Hermiticity", "[hilbert]") {
    REQUIRE_NOTHROW(HermitianOperator(kSigmaX));
    REQUIRE_THROWS_AS(HermitianOperator(mat2(0.0, 1.0, 0.0, 0.0)), ValidationError);
    REQUIRE_THROWS_AS(HermitianOperator(mat2(Complex(0, 1e-6), 0.0, 0.0, 0.0)), ValidationError);
    REQUIRE_THROWS_AS(HermitianOperator(ComplexMatrix(2, 3)), DimensionError);
    // A perturbation under the 1e-12 threshold is accepted.
    REQUIRE_NOTHROW(HermitianOperator(mat2(0.0, 1.0, 1.0 + 1e-13, 0.0)));
}

TEST_CASE("PureState and DensityOperator invariants", "[hilbert]") {
    ComplexVector v(2);
    v << 1.0, 1.0;
    REQUIRE_THROWS_AS(PureState(v), ValidationError);
    REQUIRE(PureState::normalized(v).amplitudes().norm() == Catch::Approx(1.0));
    REQUIRE_THROWS_AS(PureState::normalized(ComplexVector::Zero(3)), ValidationError);

    REQUIRE_THROWS_AS(DensityOperator(mat2(0.6, 0.0, 0.0, 0.6)), ValidationError); // trace
    REQUIRE_THROWS_AS(DensityOperator(mat2(1.2, 0.0, 0.0, -0.2)), ValidationError); // negative
    REQUIRE_THROWS_AS(DensityOperator(mat2(0.5, 1.0, 0.0, 0.5)), ValidationError); // Hermitian
    REQUIRE_NOTHROW(DensityOperator(mat2(1.0 + 1e-11, 0.0, 0.0, -1e-11)));
    REQUIRE(DensityOperator::maximally_mixed(4).purity() == Catch::Approx(0.25));
}

TEST_CASE("eig_hermitian on textbook inputs", "[hilbert]") {
    SECTION("diagonal input is sorted ascending") {
        RealVector d(2);
        d << 2.0, 1.0;
        const EigenDecomposition e = eig_hermitian(HermitianOperator::diagonal(d));
        REQUIRE(e.eigenvalues(0) == Catch::Approx(1.0));
        REQUIRE(e.eigenvalues(1) == Catch::Approx(2.0));
        REQUIRE(std::abs(e.eigenvectors(1, 0)) == Catch::Approx(1.0));
        REQUIRE(std::abs(e.eigenvectors(0, 1)) == Catch::Approx(1.0));
    }
    SECTION("sigma_x") {
        const EigenDecomposition e = eig_hermitian(HermitianOperator(kSigmaX));
        REQUIRE(e.eigenvalues(0) == Catch::Approx(-1.0));
        REQUIRE(e.eigenvalues(1) == Catch::Approx(1.0));
        const double s = 1.0 / std::sqrt(2.0);
        // Up to a global phase: |<v|expected>| = 1.
        ComplexVector minus(2), plus(2);
        minus << s, -s;
        plus << s, s;
        REQUIRE(std::abs(e.eigenvectors.col(0).dot(minus)) == Catch::Approx(1.0));
        REQUIRE(std::abs(e.eigenvectors.col(1).dot(plus)) == Catch::Approx(1.0));
    }
}

TEST_CASE("eig_hermitian reconstructs random matrices", "[hilbert][property]") {
    Gen g(11);
    for (int trial = 0; trial < 40; ++trial) {
        const Index d = g.integer(1, 16);
        const HermitianOperator a = g.hermitian(d);
        const EigenDecomposition e = eig_hermitian(a);
        REQUIRE(max_abs_diff(e.reconstruct(), a.matrix()) <= 1e-9);
        REQUIRE(max_abs_diff(e.eigenvectors.adjoint() * e.eigenvectors,
                             ComplexMatrix::Identity(d, d)) <= 1e-10);
        for (Index k = 1; k < d; ++k) {
            REQUIRE(e.eigenvalues(k - 1) <= e.eigenvalues(k));
        }
    }
}

TEST_CASE("eig_hermitian picks a deterministic degenerate basis", "[hilbert]") {
    Gen g(5);
    const ComplexMatrix u = g.unitary(4);
    RealVector d(4);
    d << 1.0, 1.0, 1.0, 3.0;
    const HermitianOperator a = HermitianOperator::from_hermitian_part(
        u * d.cast<Complex>().asDiagonal() * u.adjoint());
    const EigenDecomposition e1 = eig_hermitian(a);
    const EigenDecomposition e2 = eig_hermitian(a);
    REQUIRE(max_abs_diff(e1.eigenvectors, e2.eigenvectors) == 0.0);
    REQUIRE(max_abs_diff(e1.reconstruct(), a.matrix()) <= 1e-9);

    // For an identity block the canonical basis is the standard one.
    const EigenDecomposition id = eig_hermitian(HermitianOperator::identity(3));
    REQUIRE(max_abs_diff(id.eigenvectors, ComplexMatrix::Identity(3, 3)) <= 1e-12);
}

TEST_CASE("expectation matches a double-loop oracle", "[hilbert]") {
    RealVector d(2);
    d << 0.0, 1.0;
    ComplexVector v(2);
    v << 1.0, 1.0;
    const PureState plus = PureState::normalized(v);
    REQUIRE(expectation(HermitianOperator::diagonal(d), plus) == Catch::Approx(0.5));
    REQUIRE(expectation(HermitianOperator::identity(2), plus) == Catch::Approx(1.0));

    Gen g(3);
    for (int trial = 0; trial < 20; ++trial) {
        const Index n = g.integer(1, 8);
        const HermitianOperator op = g.hermitian(n);
        const DensityOperator rho = g.density(n, n);
        Complex s = 0.0;
        for (Index j = 0; j < n; ++j) {
            for (Index k = 0; k < n; ++k) {
                s += rho.matrix()(k, j) * op.matrix()(j, k);
            }
        }
        REQUIRE(expectation(op, rho) == Catch::Approx(s.real()).margin(1e-12));
        REQUIRE(expectation(HermitianOperator::identity(n), rho) == Catch::Approx(1.0));
    }
    REQUIRE_THROWS_AS(expectation(HermitianOperator::identity(3), plus), DimensionError);
}

TEST_CASE("variance matches an eigenbasis oracle", "[hilbert]") {
    RealVector d(2);
    d << 0.0, 1.0;
    ComplexVector v(2);
    v << 1.0, 1.0;
    const HermitianOperator op = HermitianOperator::diagonal(d);
    REQUIRE(variance(op, PureState::normalized(v)) == Catch::Approx(0.25));
    REQUIRE(variance(op, PureState::basis(2, 1)) == 0.0);

    Gen g(8);
    for (int trial = 0; trial < 20; ++trial) {
        const Index n = g.integer(2, 8);
        const HermitianOperator h = g.hermitian(n);
        const PureState psi = g.pure(n);
        const EigenDecomposition e = eig_hermitian(h);
        double m1 = 0.0, m2 = 0.0;
        for (Index k = 0; k < n; ++k) {
            const double p = std::norm(e.eigenvectors.col(k).dot(psi.amplitudes()));
            m1 += p * e.eigenvalues(k);
            m2 += p * e.eigenvalues(k) * e.eigenvalues(k);
        }
        REQUIRE(variance(h, psi) == Catch::Approx(m2 - m1 * m1).margin(1e-10));
        REQUIRE(variance(h, psi) ==
                Catch::Approx(variance(h, DensityOperator::from_pure(psi))).margin(1e-10));
    }
}

TEST_CASE("tensor_product uses the row-major Kronecker ordering", "[hilbert]") {
    const DensityOperator half = DensityOperator::maximally_mixed(2);
    REQUIRE(max_abs_diff(tensor_product(half, half).matrix(),
                         DensityOperator::maximally_mixed(4).matrix()) <= 1e-15);

    const DensityOperator p0 = DensityOperator::from_pure(PureState::basis(2, 0));
    const DensityOperator p1 = DensityOperator::from_pure(PureState::basis(2, 1));
    const ComplexMatrix t = tensor_product(p0, p1).matrix();
    ComplexMatrix want = ComplexMatrix::Zero(4, 4);
    want(1, 1) = 1.0;
    REQUIRE(max_abs_diff(t, want) == 0.0);

    Gen g(21);
    for (int trial = 0; trial < 10; ++trial) {
        const Index da = g.integer(1, 3), db = g.integer(1, 3);
        const DensityOperator a = g.density(da, da);
        const DensityOperator b = g.density(db, db);
        const ComplexMatrix k = tensor_product(a, b).matrix();
        for (Index i = 0; i < da; ++i)
            for (Index j = 0; j < da; ++j)
                for (Index r = 0; r < db; ++r)
                    for (Index s = 0; s < db; ++s)
                        REQUIRE(std::abs(k(i * db + r, j * db + s) -
                                         a.matrix()(i, j) * b.matrix()(r, s)) <= 1e-15);
        REQUIRE(k.trace().real() == Catch::Approx(1.0));
        REQUIRE(detail::min_eigenvalue(k) >= -1e-10);
    }
}

TEST_CASE("kron respects the tensor dimension cap", "[hilbert]") {
    REQUIRE_THROWS_AS(kron(ComplexMatrix::Identity(65, 65), ComplexMatrix::Identity(64, 64)),
                      DimensionError);
    REQUIRE_NOTHROW(kron(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)));
}

TEST_CASE("commutator_path_tangent", "[hilbert]") {
    SECTION("direct 2x2 example") {
        const DensityOperator rho = DensityOperator::from_pure(PureState::basis(2, 0));
        const HermitianOperator t = commutator_path_tangent(rho, HermitianOperator(kSigmaX));
        REQUIRE(max_abs_diff(t.matrix(), mat2(0.0, Complex(0, 1), Complex(0, -1), 0.0)) <= 1e-15);
    }
    SECTION("commuting pair gives zero") {
        RealVector p(2);
        p << 0.3, 0.7;
        RealVector h(2);
        h << 1.0, -2.0;
        const HermitianOperator t =
            commutator_path_tangent(DensityOperator::diagonal(p), HermitianOperator::diagonal(h));
        REQUIRE(max_abs(t.matrix()) == 0.0);
    }
    SECTION("random inputs: Hermitian, traceless, equal to -i[h, rho]") {
        Gen g(13);
        for (int trial = 0; trial < 20; ++trial) {
            const Index n = g.integer(2, 6);
            const DensityOperator rho = g.density(n, n);
            const HermitianOperator h = g.hermitian(n);
            const ComplexMatrix t = commutator_path_tangent(rho, h).matrix();
            const ComplexMatrix oracle = -kI * (naive_product(h.matrix(), rho.matrix()) -
                                                naive_product(rho.matrix(), h.matrix()));
            REQUIRE(max_abs_diff(t, oracle) <= 1e-12);
            REQUIRE(std::abs(t.trace()) <= 1e-12);
            REQUIRE(detail::hermiticity_residual(t) <= 1e-12);
        }
    }
    REQUIRE_THROWS_AS(commutator_path_tangent(DensityOperator::maximally_mixed(2),
                                              HermitianOperator::identity(3)),
                      DimensionError);
}
