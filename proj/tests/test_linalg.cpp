#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "entlab/linalg.hpp"
#include "entlab/rng.hpp"
#include "selftest.hpp"

using namespace entlab;

namespace {

ComplexMatrix random_hermitian(RngStream& rng) {
    ComplexMatrix g(4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) g(r, c) = rng.complex_gaussian();
    return hermitize(g);
}

ComplexMatrix reconstruct(const EigenSystem& es) {
    const int n = es.size();
    ComplexMatrix out(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            cplx acc = 0.0;
            for (int k = 0; k < n; ++k)
                acc += es.vectors(r, k) * es.values[static_cast<size_t>(k)] *
                       std::conj(es.vectors(c, k));
            out(r, c) = acc;
        }
    return out;
}

} // namespace

TEST_CASE("matrix shape guards") {
    CHECK_THROWS_AS(ComplexMatrix(3), DomainError);
    CHECK_THROWS_AS(tensor(ComplexMatrix::identity(4), ComplexMatrix::identity(2)), DomainError);
    CHECK_THROWS_AS(partial_transpose_b(ComplexMatrix::identity(2)), DomainError);
}

TEST_CASE("eigensystem: diagonal input") {
    ComplexMatrix d(4);
    d(0, 0) = 0.5;
    d(1, 1) = 0.25;
    d(2, 2) = 0.2;
    d(3, 3) = 0.05;
    const EigenSystem es = hermitian_eigensystem(d);
    CHECK(es.values[0] == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(es.values[1] == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(es.values[2] == doctest::Approx(0.2).epsilon(1e-13));
    CHECK(es.values[3] == doctest::Approx(0.05).epsilon(1e-13));
}

TEST_CASE("eigensystem: pauli tensor spectrum") {
    const EigenSystem es = hermitian_eigensystem(tensor(pauli_x(), ComplexMatrix::identity(2)));
    CHECK(std::abs(es.values[0] - 1.0) < 1e-12);
    CHECK(std::abs(es.values[1] - 1.0) < 1e-12);
    CHECK(std::abs(es.values[2] + 1.0) < 1e-12);
    CHECK(std::abs(es.values[3] + 1.0) < 1e-12);
}

TEST_CASE("eigensystem: random Hermitian vs characteristic polynomial roots") {
    RngStream rng(7001, 0);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const ComplexMatrix h = random_hermitian(rng);
        const EigenSystem es = hermitian_eigensystem(h);
        const std::array<double, 4> ref = selftest::charpoly_eigenvalues(h);
        for (int k = 0; k < 4; ++k)
            worst = std::max(worst, std::abs(es.values[static_cast<size_t>(k)] -
                                             ref[static_cast<size_t>(k)]));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("eigensystem contracts: unitarity, reconstruction, trace, frobenius") {
    RngStream rng(7002, 0);
    for (int i = 0; i < 25; ++i) {
        const ComplexMatrix h = random_hermitian(rng);
        const EigenSystem es = hermitian_eigensystem(h);
        for (int k = 0; k < 3; ++k)
            CHECK(es.values[static_cast<size_t>(k)] >= es.values[static_cast<size_t>(k) + 1]);
        CHECK(max_abs_diff(adjoint(es.vectors) * es.vectors, ComplexMatrix::identity(4)) <= 1e-12);
        CHECK(max_abs_diff(reconstruct(es), h) <= 1e-11);
        double sum = 0.0, sq = 0.0;
        for (int k = 0; k < 4; ++k) {
            sum += es.values[static_cast<size_t>(k)];
            sq += es.values[static_cast<size_t>(k)] * es.values[static_cast<size_t>(k)];
        }
        CHECK(std::abs(sum - trace(h).real()) <= 1e-11);
        CHECK(std::abs(std::sqrt(sq) - frobenius_norm(h)) <= 1e-11);
    }
}

TEST_CASE("eigensystem rejects asymmetric input") {
    ComplexMatrix m = ComplexMatrix::identity(4);
    m(0, 1) = 0.5;
    CHECK_THROWS_AS(hermitian_eigensystem(m), NotHermitian);
}

TEST_CASE("psd_sqrt basics") {
    CHECK(max_abs_diff(psd_sqrt(ComplexMatrix::identity(4)), ComplexMatrix::identity(4)) <= 1e-12);

    ComplexMatrix d(4);
    d(0, 0) = 4.0;
    d(1, 1) = 1.0;
    const ComplexMatrix r = psd_sqrt(d);
    CHECK(r(0, 0).real() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r(1, 1).real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(r(2, 2)) <= 1e-12);

    ComplexMatrix neg(4);
    neg(0, 0) = 1.0;
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(psd_sqrt(neg), NotPSD);
}

TEST_CASE("psd_sqrt: squared result reproduces random PSD input and commutes") {
    RngStream rng(7003, 0);
    for (int i = 0; i < 20; ++i) {
        ComplexMatrix g(4);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) g(r, c) = 0.5 * rng.complex_gaussian();
        const ComplexMatrix rho = hermitize(g * adjoint(g));
        const ComplexMatrix root = psd_sqrt(rho);
        CHECK(max_abs_diff(root * root, rho) <= 1e-10);
        CHECK(max_abs_diff(root * rho, rho * root) <= 1e-10);
    }
}

TEST_CASE("partial transpose: involution, product states, singlet spectrum") {
    RngStream rng(7004, 0);
    const ComplexMatrix h = random_hermitian(rng);
    CHECK(max_abs_diff(partial_transpose_b(partial_transpose_b(h)), h) == 0.0);
    CHECK(std::abs(trace(partial_transpose_b(h)) - trace(h)) == 0.0);
    CHECK(hermiticity_error(partial_transpose_b(h)) <= 1e-15);

    ComplexMatrix a(2), b(2);
    a(0, 0) = 0.7;
    a(1, 1) = 0.3;
    b(0, 0) = cplx(0.6, 0.0);
    b(0, 1) = cplx(0.1, 0.2);
    b(1, 0) = cplx(0.1, -0.2);
    b(1, 1) = 0.4;
    const ComplexMatrix prod = tensor(a, b);
    CHECK(max_abs_diff(partial_transpose_b(prod), tensor(a, transpose(b))) <= 1e-15);
    const EigenSystem es = hermitian_eigensystem(partial_transpose_b(prod));
    CHECK(es.values[3] >= -1e-12); // PSD preserved for product input

    const EigenSystem bell = hermitian_eigensystem(partial_transpose_b(projector(states::psi_minus())));
    CHECK(bell.values[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(bell.values[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(bell.values[2] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(bell.values[3] == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("tensor: identity, pauli antidiagonal, mixed-product property") {
    CHECK(max_abs_diff(tensor(ComplexMatrix::identity(2), ComplexMatrix::identity(2)),
                       ComplexMatrix::identity(4)) == 0.0);

    const ComplexMatrix yy = tensor(pauli_y(), pauli_y());
    CHECK(yy(0, 3) == cplx(-1.0, 0.0));
    CHECK(yy(1, 2) == cplx(1.0, 0.0));
    CHECK(yy(2, 1) == cplx(1.0, 0.0));
    CHECK(yy(3, 0) == cplx(-1.0, 0.0));
    CHECK(std::abs(yy(0, 0)) == 0.0);

    RngStream rng(7005, 0);
    for (int i = 0; i < 10; ++i) {
        ComplexMatrix m[4];
        for (auto& mm : m) {
            mm = ComplexMatrix(2);
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) mm(r, c) = rng.complex_gaussian();
        }
        CHECK(max_abs_diff(tensor(m[0], m[1]) * tensor(m[2], m[3]),
                           tensor(m[0] * m[2], m[1] * m[3])) <= 1e-12);
    }
}

TEST_CASE("partial traces of a product state") {
    ComplexMatrix a(2), b(2);
    a(0, 0) = 0.7;
    a(0, 1) = cplx(0.0, 0.1);
    a(1, 0) = cplx(0.0, -0.1);
    a(1, 1) = 0.3;
    b(0, 0) = 0.6;
    b(1, 1) = 0.4;
    const ComplexMatrix rho = tensor(a, b);
    CHECK(max_abs_diff(partial_trace_b(rho), a) <= 1e-15);
    CHECK(max_abs_diff(partial_trace_a(rho), b) <= 1e-15);
}

TEST_CASE("determinant and solve") {
    RngStream rng(7006, 0);
    ComplexMatrix m(4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m(r, c) = rng.complex_gaussian();
    const ComplexMatrix x = solve(m, ComplexMatrix::identity(4));
    CHECK(max_abs_diff(m * x, ComplexMatrix::identity(4)) <= 1e-12);
    const ComplexMatrix u = sample_cue(rng);
    CHECK(std::abs(std::abs(determinant(u)) - 1.0) <= 1e-10);
}
