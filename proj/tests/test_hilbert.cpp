#include <doctest.h>

#include <Eigen/Dense>
#include <complex>

#include "nlab/hilbert.hpp"

using namespace nlab;
using hilbert::Complex;
using hilbert::Operator;
using hilbert::StateVector;

namespace {

const Complex kI(0.0, 1.0);

Eigen::MatrixXcd pauli_x() {
    Eigen::MatrixXcd m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Eigen::MatrixXcd pauli_y() {
    Eigen::MatrixXcd m(2, 2);
    m << 0, -kI, kI, 0;
    return m;
}

Eigen::MatrixXcd pauli_z() {
    Eigen::MatrixXcd m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

}  // namespace

TEST_CASE("tensor_state basis cases and norm") {
    const auto e0 = StateVector::basis_state(2, 0);
    const auto e1 = StateVector::basis_state(2, 1);

    const auto t00 = hilbert::tensor_state(e0, e0);
    CHECK(t00.dim() == 4);
    CHECK(std::abs(t00[0] - 1.0) == 0.0);
    CHECK(std::abs(t00[1]) == 0.0);

    // Left factor is the slow index: e0 (x) e1 lands on component 1.
    const auto t01 = hilbert::tensor_state(e0, e1);
    CHECK(std::abs(t01[1] - 1.0) == 0.0);
    CHECK(std::abs(t01[0]) == 0.0);
    CHECK(std::abs(t01[2]) == 0.0);
    CHECK(std::abs(t01[3]) == 0.0);

    SeededRng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = StateVector::random(3, rng);
        const auto b = StateVector::random(4, rng);
        const auto t = hilbert::tensor_state(a, b);
        CHECK(t.dim() == 12);
        CHECK(std::abs(t.norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("tensor_op identity, diagonal and mixed-product identity") {
    const auto i2 = Operator::identity(2);
    const auto i4 = hilbert::tensor_op(i2, i2);
    CHECK((i4.dense_entries() - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

    const auto sz = Operator::dense(pauli_z());
    const auto sz_i = hilbert::tensor_op(sz, i2);
    Eigen::VectorXcd expected(4);
    expected << 1, 1, -1, -1;
    CHECK((sz_i.dense_entries().diagonal() - expected).cwiseAbs().maxCoeff() == 0.0);

    SeededRng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::MatrixXcd a(3, 3), b(2, 2);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) a(i, j) = Complex(rng.normal(), rng.normal());
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) b(i, j) = Complex(rng.normal(), rng.normal());
        const auto u = StateVector::random(3, rng);
        const auto v = StateVector::random(2, rng);
        // Both sides computed through independent paths.
        const auto lhs = hilbert::tensor_op(Operator::dense(a), Operator::dense(b))
                             .apply(hilbert::tensor_state(u, v));
        const auto rhs = hilbert::tensor_state(StateVector(a * u.amplitudes()),
                                               StateVector(b * v.amplitudes()));
        CHECK((lhs.amplitudes() - rhs.amplitudes()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("eigendecompose spectra and residuals") {
    const auto spec_z = hilbert::eigendecompose(Operator::dense(pauli_z()));
    CHECK(spec_z.eigenvalues(0) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(spec_z.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-14));

    const auto spec_i3 = hilbert::eigendecompose(Operator::identity(3));
    for (int i = 0; i < 3; ++i) CHECK(spec_i3.eigenvalues(i) == doctest::Approx(1.0));

    SeededRng rng(17);
    const auto h = hilbert::random_hermitian(5, rng);
    const auto op = Operator::dense(h);
    const auto spec = hilbert::eigendecompose(op);
    for (int i = 0; i < 5; ++i) {
        const Eigen::VectorXcd v = spec.eigenvectors.col(i);
        CHECK((h * v - spec.eigenvalues(i) * v).norm() < 1e-10);
    }
    CHECK(spec.reconstruction_residual(op) < 1e-10);

    Eigen::MatrixXcd bad(2, 2);
    bad << 0, 1, 0, 0;
    CHECK_THROWS_AS(hilbert::eigendecompose(Operator::dense(bad)), NotSelfAdjoint);
}

TEST_CASE("commutator identities") {
    SeededRng rng(23);
    const auto x = Operator::dense(hilbert::random_hermitian(4, rng));
    const auto zero = hilbert::commutator(Operator::identity(4), x);
    CHECK(hilbert::operator_norm(zero) < 1e-14);

    // Direct 2x2 multiplication: sigma_x sigma_y - sigma_y sigma_x = 2i sigma_z.
    const auto c = hilbert::commutator(Operator::dense(pauli_x()), Operator::dense(pauli_y()));
    const Eigen::MatrixXcd expected = 2.0 * kI * pauli_z();
    CHECK((c.dense_entries() - expected).cwiseAbs().maxCoeff() < 1e-14);

    for (int trial = 0; trial < 10; ++trial) {
        const auto a = Operator::dense(hilbert::random_hermitian(3, rng));
        const auto b = Operator::dense(hilbert::random_hermitian(3, rng));
        const auto lhs = hilbert::tensor_op(a, Operator::identity(3));
        const auto rhs = hilbert::tensor_op(Operator::identity(3), b);
        CHECK(hilbert::operator_norm(hilbert::commutator(lhs, rhs)) < 1e-12);
    }

    CHECK_THROWS_AS(hilbert::commutator(Operator::identity(2), Operator::identity(3)), DimMismatch);
}

TEST_CASE("diagonal representations densify consistently") {
    const hilbert::AxisSpec axis{7, -3};
    SeededRng rng(31);

    Eigen::VectorXcd diag(7);
    for (int i = 0; i < 7; ++i) diag(i) = rng.normal();

    const auto pos = Operator::position_diagonal(diag, {axis});
    CHECK((pos.dense_entries() - Eigen::MatrixXcd(diag.asDiagonal())).cwiseAbs().maxCoeff() == 0.0);

    // Momentum-diagonal densification must equal F^H D F assembled by hand.
    const auto mom = Operator::momentum_diagonal(diag, {axis});
    const Eigen::MatrixXcd f = hilbert::centered_dft_matrix(axis);
    const Eigen::MatrixXcd expected = f.adjoint() * Eigen::MatrixXcd(diag.asDiagonal()) * f;
    CHECK((mom.dense_entries() - expected).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(mom.is_self_adjoint(1e-12));

    // apply() agrees with the densified matrix.
    const auto v = StateVector::random(7, rng);
    CHECK((mom.apply(v.amplitudes()) - expected * v.amplitudes()).norm() < 1e-12);

    // Structured eigendecomposition: plane-wave eigenvectors.
    const auto spec = hilbert::eigendecompose(mom);
    for (int i = 0; i < 7; ++i) {
        const Eigen::VectorXcd vec = spec.eigenvectors.col(i);
        CHECK((expected * vec - spec.eigenvalues(i) * vec).norm() < 1e-10);
    }
}

TEST_CASE("two-axis grid DFT is unitary and orders axes slow-to-fast") {
    const hilbert::AxisSpec axis{5, -2};
    SeededRng rng(41);
    Eigen::VectorXcd v(25);
    for (int i = 0; i < 25; ++i) v(i) = Complex(rng.normal(), rng.normal());
    const auto fwd = hilbert::apply_grid_dft(v, {axis, axis}, true);
    CHECK(std::abs(fwd.norm() - v.norm()) < 1e-12);
    const auto back = hilbert::apply_grid_dft(fwd, {axis, axis}, false);
    CHECK((back - v).cwiseAbs().maxCoeff() < 1e-12);

    // Axis 0 transform touches the slow index only: a product vector
    // transforms factorwise.
    Eigen::VectorXcd a(5), b(5);
    for (int i = 0; i < 5; ++i) {
        a(i) = Complex(rng.normal(), rng.normal());
        b(i) = Complex(rng.normal(), rng.normal());
    }
    Eigen::VectorXcd prod(25);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) prod(i * 5 + j) = a(i) * b(j);
    const auto axis0 = hilbert::apply_axis_dft(prod, {axis, axis}, 0, true);
    const Eigen::MatrixXcd f = hilbert::centered_dft_matrix(axis);
    const Eigen::VectorXcd fa = f * a;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) CHECK(std::abs(axis0(i * 5 + j) - fa(i) * b(j)) < 1e-12);
}

TEST_CASE("operator algebra respects structured fast paths") {
    const hilbert::AxisSpec axis{4, -2};
    Eigen::VectorXcd d1(4), d2(4);
    d1 << 1, 2, 3, 4;
    d2 << -1, 0.5, 2, 1;
    const auto p1 = Operator::position_diagonal(d1, {axis});
    const auto p2 = Operator::position_diagonal(d2, {axis});
    const auto sum = p1 + p2;
    CHECK(sum.repr() == Operator::Repr::PositionDiagonal);
    CHECK((sum.diagonal() - (d1 + d2)).cwiseAbs().maxCoeff() == 0.0);
    const auto prod = p1 * p2;
    CHECK(prod.repr() == Operator::Repr::PositionDiagonal);
    CHECK((prod.diagonal() - d1.cwiseProduct(d2)).cwiseAbs().maxCoeff() == 0.0);

    // Mixed representations fall back to dense arithmetic.
    const auto m1 = Operator::momentum_diagonal(d1, {axis});
    const auto mixed = p1 * m1;
    CHECK(mixed.repr() == Operator::Repr::Dense);
    CHECK((mixed.dense_entries() - p1.dense_entries() * m1.dense_entries()).cwiseAbs().maxCoeff() <
          1e-12);
}

TEST_CASE("tensor factor operators commute entrywise at small dims") {
    SeededRng rng(59);
    for (int da = 2; da <= 4; ++da)
        for (int db = 2; db <= 4; ++db) {
            const auto a = Operator::dense(hilbert::random_hermitian(da, rng));
            const auto b = Operator::dense(hilbert::random_hermitian(db, rng));
            const auto left = hilbert::tensor_op(a, Operator::identity(db)) *
                              hilbert::tensor_op(Operator::identity(da), b);
            const auto right = hilbert::tensor_op(Operator::identity(da), b) *
                               hilbert::tensor_op(a, Operator::identity(db));
            CHECK((left.dense_entries() - right.dense_entries()).cwiseAbs().maxCoeff() < 1e-12);
        }
}

TEST_CASE("normalize is idempotent bit for bit") {
    SeededRng rng(61);
    for (int trial = 0; trial < 50; ++trial) {
        Eigen::VectorXcd raw(6);
        for (int i = 0; i < 6; ++i) raw(i) = Complex(rng.normal() * 3.0, rng.normal() * 3.0);
        const auto once = StateVector(raw).normalized();
        const auto twice = once.normalized();
        CHECK(std::abs(once.norm() - 1.0) < 1e-12);
        for (int i = 0; i < 6; ++i) {
            CHECK(once[i].real() == twice[i].real());
            CHECK(once[i].imag() == twice[i].imag());
        }
    }
    CHECK_THROWS_AS(StateVector(Eigen::VectorXcd::Zero(3)).normalized(), Error);
}

TEST_CASE("dense cap is enforced") {
    CHECK_THROWS_AS(Operator::dense(Eigen::MatrixXcd::Identity(4097, 4097)), TooLarge);
    // Structured operators above the cap still apply.
    const hilbert::AxisSpec big{5000, -2500};
    Eigen::VectorXcd diag = Eigen::VectorXcd::Ones(5000);
    const auto op = Operator::position_diagonal(diag, {big});
    CHECK_THROWS_AS(op.dense_entries(), TooLarge);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(5000);
    v(0) = 1.0;
    CHECK((op.apply(v) - v).norm() == 0.0);
}

TEST_CASE("hermitian random operators reconstruct under the solver tolerance") {
    SeededRng rng(71);
    for (int dim : {2, 3, 5, 8, 13}) {
        const auto op = Operator::dense(hilbert::random_hermitian(dim, rng));
        const auto spec = hilbert::eigendecompose(op);
        CHECK(spec.reconstruction_residual(op) < 1e-10);
        const Eigen::MatrixXcd gram = spec.eigenvectors.adjoint() * spec.eigenvectors;
        CHECK((gram - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-10);
    }
}
