#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "entlab/measures.hpp"
#include "entlab/mems.hpp"
#include "entlab/rng.hpp"

using namespace entlab;

namespace {

// Binary entropy of (1 + sqrt(3)/2)/2, frozen from a 30-digit evaluation.
constexpr double kEofAtHalf = 0.354578902665270;

DensityMatrix singlet() { return DensityMatrix(projector(states::psi_minus())); }
DensityMatrix maximally_mixed() { return DensityMatrix(0.25 * ComplexMatrix::identity(4)); }

DensityMatrix random_state(RngStream& rng) { return sample_density(rng, sample_spectrum(rng)); }

ComplexMatrix random_local_unitary(RngStream& rng) {
    return tensor(haar_unitary(rng, 2), haar_unitary(rng, 2));
}

DensityMatrix conjugated(const DensityMatrix& rho, const ComplexMatrix& u) {
    return DensityMatrix::trusted(hermitize(u * rho.mat() * adjoint(u)));
}

} // namespace

TEST_CASE("density matrix validation") {
    CHECK_THROWS_AS(DensityMatrix{ComplexMatrix::identity(4)}, DomainError); // trace 4
    ComplexMatrix m = 0.25 * ComplexMatrix::identity(4);
    m(0, 1) = 0.2; // asymmetric
    CHECK_THROWS_AS(DensityMatrix{m}, DomainError);
    ComplexMatrix neg(4);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix{neg}, DomainError); // eigenvalue below -1e-10
    CHECK_THROWS_AS(DensityMatrix{ComplexMatrix::identity(2)}, DomainError); // wrong shape
}

TEST_CASE("spin flip: singlet invariant, |00> to |11>, identity fixed") {
    CHECK(max_abs_diff(spin_flip(singlet()), projector(states::psi_minus())) <= 1e-15);
    CHECK(max_abs_diff(spin_flip(DensityMatrix(projector(states::ket00()))),
                       projector(states::ket11())) <= 1e-15);
    CHECK(max_abs_diff(spin_flip(maximally_mixed()), 0.25 * ComplexMatrix::identity(4)) <= 1e-15);
}

TEST_CASE("concurrence oracle values") {
    CHECK(std::abs(concurrence(singlet()) - 1.0) <= 1e-8);
    CHECK(concurrence(maximally_mixed()) == 0.0);
    // Werner weight 0.75: concurrence 2 p1 - 1 = 1/2
    CHECK(std::abs(concurrence(build_werner(0.75)) - 0.5) <= 1e-10);
}

TEST_CASE("eof_from_concurrence endpoints and midpoint") {
    CHECK(eof_from_concurrence(0.0) == 0.0);
    CHECK(eof_from_concurrence(1.0) == 1.0);
    CHECK(std::abs(eof_from_concurrence(0.5) - kEofAtHalf) <= 1e-12);
    CHECK_THROWS_AS(eof_from_concurrence(1.5), DomainError);
    CHECK_THROWS_AS(eof_from_concurrence(-0.2), DomainError);
    // monotone increasing
    double prev = -1.0;
    for (int i = 0; i <= 20; ++i) {
        const double e = eof_from_concurrence(i / 20.0);
        CHECK(e >= prev);
        prev = e;
    }
}

TEST_CASE("negativity oracle values") {
    CHECK(std::abs(negativity(singlet()) - 1.0) <= 1e-12);
    CHECK(negativity(DensityMatrix(projector(states::ket00()))) == 0.0);
    // spectrum-determined value for the mixed family point (0.5,0.25,0.2,0.05):
    // sqrt(0.13) - 0.3
    const DensityMatrix m = build_mems(Spectrum(0.5, 0.25, 0.2, 0.05));
    CHECK(std::abs(negativity(m) - 0.060555127546399) <= 1e-6);
}

TEST_CASE("purity report") {
    const PurityReport mixed = purity_report(maximally_mixed());
    CHECK(mixed.purity == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(mixed.participation_ratio == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(mixed.separable_by_purity);

    const PurityReport pure = purity_report(singlet());
    CHECK(pure.purity == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(pure.participation_ratio == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_FALSE(pure.separable_by_purity);

    // Werner weight 1/2: purity exactly 1/3, concurrence 0
    const DensityMatrix w = build_werner(0.5);
    const PurityReport r = purity_report(w);
    CHECK(std::abs(r.purity - 1.0 / 3.0) <= 1e-14);
    CHECK(r.participation_ratio == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(r.separable_by_purity);
    CHECK(concurrence(w) == 0.0);
}

TEST_CASE("fidelity to a pure state") {
    const Vec4 psi = states::psi_minus();
    CHECK(std::abs(fidelity_to_pure(singlet(), psi) - 1.0) <= 1e-14);
    CHECK(fidelity_to_pure(singlet(), states::phi_plus()) <= 1e-14);
    CHECK(std::abs(fidelity_to_pure(maximally_mixed(), psi) - 0.25) <= 1e-14);
    Vec4 unnormalized = psi;
    unnormalized[1] *= 2.0;
    CHECK_THROWS_AS(fidelity_to_pure(singlet(), unnormalized), DomainError);
}

TEST_CASE("report invariants on random states") {
    RngStream rng(8101, 0);
    for (int i = 0; i < 50; ++i) {
        const DensityMatrix rho = random_state(rng);
        const MeasureReport r = measure_report(rho);
        CHECK(std::abs(r.eof - eof_from_concurrence(r.concurrence)) <= 1e-10);
        CHECK(std::abs(r.participation_ratio - 1.0 / r.purity) <= 1e-12);
        CHECK((r.concurrence > 1e-8) == (r.negativity > 1e-8));
        CHECK(r.concurrence >= 0.0);
        CHECK(r.concurrence <= 1.0);
        CHECK(r.purity >= 0.25 - 1e-12);
        CHECK(r.purity <= 1.0 + 1e-12);
    }
}

TEST_CASE("local-unitary invariance of all measures") {
    RngStream rng(8102, 0);
    for (int i = 0; i < 20; ++i) {
        const DensityMatrix rho = random_state(rng);
        const DensityMatrix rot = conjugated(rho, random_local_unitary(rng));
        CHECK(std::abs(concurrence(rho) - concurrence(rot)) <= 1e-10);
        CHECK(std::abs(negativity(rho) - negativity(rot)) <= 1e-10);
        CHECK(std::abs(eof_from_concurrence(concurrence(rho)) -
                       eof_from_concurrence(concurrence(rot))) <= 1e-10);
        CHECK(std::abs(purity_report(rho).purity - purity_report(rot).purity) <= 1e-10);
    }
}

TEST_CASE("concurrence is convex under mixing") {
    RngStream rng(8103, 0);
    for (int i = 0; i < 30; ++i) {
        const DensityMatrix a = random_state(rng);
        const DensityMatrix b = random_state(rng);
        const double q = rng.uniform();
        const DensityMatrix mix =
            DensityMatrix::trusted(hermitize(q * a.mat() + (1.0 - q) * b.mat()));
        CHECK(concurrence(mix) <= q * concurrence(a) + (1.0 - q) * concurrence(b) + 1e-10);
    }
}

TEST_CASE("pure states: eof equals entropy of the reduced state") {
    RngStream rng(8104, 0);
    const Spectrum pure(1.0, 0.0, 0.0, 0.0);
    for (int i = 0; i < 20; ++i) {
        const DensityMatrix rho = sample_density(rng, pure);
        const double eof = eof_from_concurrence(concurrence(rho));
        const EigenSystem red = hermitian_eigensystem(partial_trace_b(rho.mat()));
        const std::array<double, 2> nu{std::max(0.0, red.values[0]), std::max(0.0, red.values[1])};
        CHECK(std::abs(eof - shannon_entropy_bits(nu)) <= 1e-10);
    }
}
