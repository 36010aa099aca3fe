#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "entlab/cnot.hpp"
#include "entlab/quadrature.hpp"

using namespace entlab;

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kInf = std::numeric_limits<double>::infinity();

BathSpec bath(double k, double wc = 1.0, double beta = 10.0) {
    BathSpec b;
    b.coupling_k = k;
    b.cutoff = wc;
    b.inverse_temperature = beta;
    return b;
}

DensityMatrix initial_rho() { return DensityMatrix(projector(initial_state())); }

} // namespace

TEST_CASE("gate timing") {
    CHECK(GateSpec(2.0).gate_time() == kPi / 2.0);
    CHECK_THROWS_AS(GateSpec(0.0), DomainError);
    CHECK_THROWS_AS(GateSpec(-1.0), DomainError);
}

TEST_CASE("decoherence functions: trivial points and closed forms") {
    const DecoherenceFactors zero = decoherence_functions(0.0, bath(0.3));
    CHECK(zero.gamma == 0.0);
    CHECK(zero.phi == 0.0);
    const DecoherenceFactors off = decoherence_functions(2.5, bath(0.0));
    CHECK(off.gamma == 0.0);
    CHECK(off.phi == 0.0);
    CHECK_THROWS_AS(decoherence_functions(-0.1, bath(0.1)), DomainError);

    // zero temperature, K = 0.1, wc t = 1: (K/2) ln 2 and K (1 - pi/4)
    const DecoherenceFactors f = decoherence_functions(1.0, bath(0.1, 1.0, kInf));
    CHECK(std::abs(f.gamma - 0.034657359027997) <= 1e-8);
    CHECK(std::abs(f.phi - 0.021460183660255) <= 1e-8);
}

TEST_CASE("finite-temperature quadrature approaches the cold closed form") {
    for (double t : {0.4, 1.0, kPi}) {
        const DecoherenceFactors cold = decoherence_functions(t, bath(0.25, 1.0, 1e6));
        const DecoherenceFactors exact = decoherence_functions(t, bath(0.25, 1.0, kInf));
        CHECK(std::abs(cold.gamma - exact.gamma) / exact.gamma <= 1e-6);
        CHECK(cold.phi == exact.phi);
    }
    // warmth only increases the decay exponent
    const double warm = decoherence_functions(1.0, bath(0.25, 1.0, 2.0)).gamma;
    const double cold = decoherence_functions(1.0, bath(0.25, 1.0, kInf)).gamma;
    CHECK(warm > cold);
}

TEST_CASE("evolve: identity at t = 0 and ideal gate at K = 0") {
    const GateSpec gate(1.0);
    const DensityMatrix rho0 = initial_rho();

    const DensityMatrix still = evolve(rho0, CouplingKind::ControlDephasing, gate, bath(0.7), 0.0);
    CHECK(max_abs_diff(still.mat(), rho0.mat()) <= 1e-14);

    const DensityMatrix out =
        evolve(rho0, CouplingKind::GateAxisDephasing, gate, bath(0.0), gate.gate_time());
    const Vec4 ideal = ideal_state(gate, gate.gate_time());
    CHECK(std::abs(fidelity_to_pure(out, ideal) - 1.0) <= 1e-12);
    CHECK(std::abs(concurrence(out) - 1.0) <= 1e-10);
    // (|00> + i|11>)/sqrt(2)
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(ideal[0] - cplx(inv_sqrt2, 0.0)) <= 1e-14);
    CHECK(std::abs(ideal[3] - cplx(0.0, inv_sqrt2)) <= 1e-14);
    CHECK(std::abs(ideal[1]) <= 1e-14);
    CHECK(std::abs(ideal[2]) <= 1e-14);
}

TEST_CASE("evolve preserves trace, hermiticity and positivity") {
    const GateSpec gate(1.3);
    const DensityMatrix rho0 = initial_rho();
    for (double t : {0.1, 0.7, 1.9, gate.gate_time()}) {
        const DensityMatrix rho =
            evolve(rho0, CouplingKind::GateAxisDephasing, gate, bath(0.4), t);
        CHECK(std::abs(trace(rho.mat()) - cplx(1.0, 0.0)) <= 1e-14);
        CHECK(hermiticity_error(rho.mat()) <= 1e-14);
        const EigenSystem es = hermitian_eigensystem(rho.mat());
        CHECK(es.values[3] >= -1e-10);
    }
}

TEST_CASE("populations in the joint eigenbasis are constant") {
    const GateSpec gate(1.0);
    const DensityMatrix rho0 = initial_rho();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    // eigenbasis columns |00>, |01>, |1+>, |1->
    const ComplexMatrix w = ComplexMatrix::from_rows(
        4, {1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, inv_sqrt2, inv_sqrt2, 0.0, 0.0,
            inv_sqrt2, -inv_sqrt2});
    const ComplexMatrix d0 = adjoint(w) * rho0.mat() * w;
    for (double t : {0.3, 1.1, 2.6}) {
        const DensityMatrix rho = evolve(rho0, CouplingKind::ControlDephasing, gate, bath(0.6), t);
        const ComplexMatrix dt = adjoint(w) * rho.mat() * w;
        for (int i = 0; i < 4; ++i) CHECK(std::abs(dt(i, i) - d0(i, i)) <= 1e-13);
    }
}

TEST_CASE("closed-form fidelity and concurrence at the gate time") {
    const GateSpec gate(1.0);
    const double t_star = gate.gate_time();
    const DensityMatrix rho0 = initial_rho();
    const DecoherenceFactors unit = decoherence_functions(t_star, bath(1.0));
    const Vec4 ideal = ideal_state(gate, t_star);

    for (double k : {0.05, 0.15, 0.4}) {
        const double g = k * unit.gamma;
        const double d1 = std::exp(-g), d4 = std::exp(-4.0 * g);

        const DensityMatrix ctrl =
            evolve(rho0, CouplingKind::ControlDephasing, gate, bath(k), t_star);
        CHECK(std::abs(fidelity_to_pure(ctrl, ideal) - (0.5 + 0.5 * d4)) <= 1e-12);
        CHECK(std::abs(concurrence(ctrl) - d4) <= 1e-10);

        const DensityMatrix axis =
            evolve(rho0, CouplingKind::GateAxisDephasing, gate, bath(k), t_star);
        const double f2 = 3.0 / 8.0 + d4 / 8.0 + 0.5 * std::cos(k * unit.phi) * d1;
        CHECK(std::abs(fidelity_to_pure(axis, ideal) - f2) <= 1e-12);
        CHECK(std::abs(concurrence(axis) - d1) <= 1e-10);
    }
}

TEST_CASE("fully dephased limits are separable mixtures") {
    const GateSpec gate(1.0);
    const DensityMatrix rho0 = initial_rho();
    const double t = 0.77;
    const double big_k = 200.0;

    const DensityMatrix ctrl =
        evolve(rho0, CouplingKind::ControlDephasing, gate, bath(big_k), t);
    // (1/2)|00><00| + (1/2)|1>< 1| (x) |tau(t)><tau(t)| with
    // tau = cos(Rt/2)|0> + i sin(Rt/2)|1>
    const double th = 0.5 * gate.rabi_rate * t;
    const Vec4 tau1{0.0, 0.0, std::cos(th), cplx(0.0, 1.0) * std::sin(th)};
    ComplexMatrix expected = 0.5 * projector(states::ket00()) + 0.5 * projector(tau1);
    CHECK(max_abs_diff(ctrl.mat(), expected) <= 1e-12);
    CHECK(concurrence(ctrl) <= 1e-12);

    const DensityMatrix axis =
        evolve(rho0, CouplingKind::GateAxisDephasing, gate, bath(big_k), t);
    ComplexMatrix expected2 = 0.5 * projector(states::ket00());
    expected2 += 0.25 * projector(states::ket10());
    expected2 += 0.25 * projector(states::ket11());
    CHECK(max_abs_diff(axis.mat(), expected2) <= 1e-12);
    CHECK(concurrence(axis) <= 1e-12);
}

TEST_CASE("trace run: grid, endpoints, bound ordering") {
    const GateSpec gate(1.0);
    CHECK_THROWS_AS(trace_run(CouplingKind::ControlDephasing, gate, bath(0.1), 1), DomainError);

    const std::vector<TraceRow> rows = trace_run(CouplingKind::ControlDephasing, gate, bath(0.0), 41);
    REQUIRE(rows.size() == 41);
    CHECK(rows.front().time == 0.0);
    CHECK(std::abs(rows.back().time - gate.gate_time()) <= 1e-15);
    CHECK(rows.front().eof <= 1e-12);
    CHECK(std::abs(rows.back().eof - 1.0) <= 1e-10);
    CHECK(std::abs(rows.back().fidelity - 1.0) <= 1e-10);
    CHECK(std::abs(rows.back().bound - 1.0) <= 1e-10);
    for (const TraceRow& r : rows) CHECK(r.eof <= r.bound + 1e-9);

    const std::vector<TraceRow> noisy =
        trace_run(CouplingKind::GateAxisDephasing, gate, bath(0.3), 41);
    for (const TraceRow& r : noisy) {
        CHECK(r.eof <= r.bound + 1e-9);
        CHECK(std::abs(r.spectrum[0] + r.spectrum[1] + r.spectrum[2] + r.spectrum[3] - 1.0) <=
              1e-12);
    }
}

TEST_CASE("fidelity decreases and eof does not increase with coupling strength") {
    const GateSpec gate(1.0);
    const double t_star = gate.gate_time();
    const DensityMatrix rho0 = initial_rho();
    const Vec4 ideal = ideal_state(gate, t_star);
    for (CouplingKind kind : {CouplingKind::ControlDephasing, CouplingKind::GateAxisDephasing}) {
        double prev_f = 2.0, prev_e = 2.0;
        for (int i = 0; i <= 10; ++i) {
            const double k = 0.1 * i;
            const DensityMatrix out = evolve(rho0, kind, gate, bath(k), t_star);
            const double f = fidelity_to_pure(out, ideal);
            const double e = eof_from_concurrence(concurrence(out));
            CHECK(f < prev_f);
            CHECK(e <= prev_e + 1e-12);
            prev_f = f;
            prev_e = e;
        }
    }
}

TEST_CASE("coupling calibration") {
    const GateSpec gate(1.0);
    CHECK(calibrate_coupling(CouplingKind::ControlDephasing, gate, bath(0.0), 1.0) == 0.0);
    CHECK_THROWS_AS(calibrate_coupling(CouplingKind::ControlDephasing, gate, bath(0.0), 1.5),
                    DomainError);
    CHECK_THROWS_AS(calibrate_coupling(CouplingKind::ControlDephasing, gate, bath(0.0), -0.1),
                    DomainError);
    // the control coupling floor is exactly 1/2
    CHECK_THROWS_AS(calibrate_coupling(CouplingKind::ControlDephasing, gate, bath(0.0), 0.5),
                    NotBracketed);

    const DensityMatrix rho0 = initial_rho();
    const Vec4 ideal = ideal_state(gate, gate.gate_time());
    for (CouplingKind kind : {CouplingKind::ControlDephasing, CouplingKind::GateAxisDephasing}) {
        const double k = calibrate_coupling(kind, gate, bath(0.0), 0.9);
        const DensityMatrix out = evolve(rho0, kind, gate, bath(k), gate.gate_time());
        CHECK(std::abs(fidelity_to_pure(out, ideal) - 0.9) <= 1e-6);
    }
}

TEST_CASE("quadrature utility") {
    const double one = integrate_gk15([](double x) { return 3.0 * x * x; }, 0.0, 1.0);
    CHECK(std::abs(one - 1.0) <= 1e-12);
    const double ex = integrate_gk15([](double x) { return std::exp(-x); }, 0.0, 60.0);
    CHECK(std::abs(ex - 1.0) <= 1e-10);
    CHECK_THROWS_AS(integrate_gk15([](double x) { return std::sin(1e7 * x); }, 0.0, 60.0, 1e-12,
                                   1e-300),
                    QuadratureFailure);
}
