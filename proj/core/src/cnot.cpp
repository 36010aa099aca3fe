#include "entlab/cnot.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "entlab/quadrature.hpp"

namespace entlab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInvSqrt2 = 0.70710678118654752440;

/// Columns: the joint eigenbasis |00>, |01>, |1+>, |1-> expressed in the
/// computational basis.
const ComplexMatrix& eigenbasis() {
    static const ComplexMatrix w = ComplexMatrix::from_rows(
        4, {1.0, 0.0, 0.0, 0.0,
            0.0, 1.0, 0.0, 0.0,
            0.0, 0.0, kInvSqrt2, kInvSqrt2,
            0.0, 0.0, kInvSqrt2, -kInvSqrt2});
    return w;
}

std::array<double, 4> branch_weights(CouplingKind kind) {
    if (kind == CouplingKind::ControlDephasing) return {-1.0, -1.0, 1.0, 1.0};
    return {0.0, 0.0, -1.0, 1.0};
}

std::array<double, 4> branch_energies(double rabi_rate) {
    return {0.0, 0.0, -0.5 * rabi_rate, 0.5 * rabi_rate};
}

void validate_bath(const BathSpec& bath) {
    if (!(bath.coupling_k >= 0.0)) throw DomainError("bath coupling must be >= 0");
    if (!(bath.cutoff > 0.0)) throw DomainError("bath cutoff must be > 0");
    if (!(bath.inverse_temperature > 0.0)) throw DomainError("inverse temperature must be > 0");
}

DensityMatrix evolve_given_factors(const DensityMatrix& initial, CouplingKind kind,
                                   const GateSpec& gate, const DecoherenceFactors& f, double t) {
    const ComplexMatrix& w = eigenbasis();
    const std::array<double, 4> s = branch_weights(kind);
    const std::array<double, 4> eps = branch_energies(gate.rabi_rate);

    ComplexMatrix rho = adjoint(w) * initial.mat() * w;
    for (int m = 0; m < 4; ++m) {
        for (int n = 0; n < 4; ++n) {
            const double sm = s[static_cast<size_t>(m)], sn = s[static_cast<size_t>(n)];
            const double de = eps[static_cast<size_t>(m)] - eps[static_cast<size_t>(n)];
            const double phase = -de * t + (sm * sm - sn * sn) * f.phi;
            const double decay = (sm - sn) * (sm - sn) * f.gamma;
            rho(m, n) *= std::polar(std::exp(-decay), phase);
        }
    }
    return DensityMatrix::trusted(hermitize(w * rho * adjoint(w)));
}

double fidelity_given_factors(CouplingKind kind, const GateSpec& gate,
                              const DecoherenceFactors& f, double t) {
    const DensityMatrix rho0(projector(initial_state()));
    const DensityMatrix rho = evolve_given_factors(rho0, kind, gate, f, t);
    return fidelity_to_pure(rho, ideal_state(gate, t));
}

} // namespace

GateSpec::GateSpec(double r) : rabi_rate(r) {
    if (!(r > 0.0)) throw DomainError("rabi rate must be > 0");
}

double GateSpec::gate_time() const { return kPi / rabi_rate; }

DecoherenceFactors decoherence_functions(double t, const BathSpec& bath) {
    if (t < 0.0) throw DomainError("decoherence_functions: t must be >= 0");
    validate_bath(bath);
    const double k = bath.coupling_k;
    if (k == 0.0 || t == 0.0) return DecoherenceFactors{0.0, 0.0};

    const double a = bath.cutoff * t;
    const double phi = k * (a - std::atan(a));

    double gamma;
    if (std::isinf(bath.inverse_temperature)) {
        gamma = 0.5 * k * std::log1p(a * a);
    } else {
        const double c = 0.5 * bath.inverse_temperature * bath.cutoff;
        // After w = cutoff * x the exponent is K * int exp(-x) coth(c x)
        // 2 sin^2(a x / 2) / x dx; the integrand tends to a^2 / (2c) at 0.
        auto integrand = [a, c](double x) {
            const double osc = 2.0 * std::sin(0.5 * a * x) * std::sin(0.5 * a * x);
            return std::exp(-x) * (osc / x) / std::tanh(c * x);
        };
        gamma = k * integrate_gk15(integrand, 0.0, 60.0, 1e-10, 1e-14);
    }
    return DecoherenceFactors{gamma, phi};
}

DensityMatrix evolve(const DensityMatrix& initial, CouplingKind kind, const GateSpec& gate,
                     const BathSpec& bath, double t) {
    if (t < 0.0) throw DomainError("evolve: t must be >= 0");
    return evolve_given_factors(initial, kind, gate, decoherence_functions(t, bath), t);
}

Vec4 initial_state() { return {kInvSqrt2, 0.0, kInvSqrt2, 0.0}; }

Vec4 ideal_state(const GateSpec& gate, double t) {
    const std::array<double, 4> eps = branch_energies(gate.rabi_rate);
    // Amplitudes of the initial state in the joint eigenbasis.
    Vec4 amp = {kInvSqrt2, 0.0, 0.5, 0.5};
    for (int m = 0; m < 4; ++m) {
        amp[static_cast<size_t>(m)] *= std::polar(1.0, -eps[static_cast<size_t>(m)] * t);
    }
    return mat_vec(eigenbasis(), amp);
}

std::vector<TraceRow> trace_run(CouplingKind kind, const GateSpec& gate, const BathSpec& bath,
                                int n_steps) {
    if (n_steps < 2) throw DomainError("trace_run: n_steps must be >= 2");
    validate_bath(bath);
    const double t_star = gate.gate_time();
    const DensityMatrix rho0(projector(initial_state()));

    std::vector<TraceRow> rows;
    rows.reserve(static_cast<size_t>(n_steps));
    for (int i = 0; i < n_steps; ++i) {
        const double t = t_star * i / (n_steps - 1);
        const DensityMatrix rho = evolve(rho0, kind, gate, bath, t);
        const double c = concurrence(rho);
        const EigenSystem es = hermitian_eigensystem(rho.mat());
        const Spectrum instant = Spectrum::sorted_normalized(
            {es.values[0], es.values[1], es.values[2], es.values[3]});
        TraceRow row;
        row.time = t;
        row.concurrence = c;
        row.eof = eof_from_concurrence(c);
        row.fidelity = fidelity_to_pure(rho, ideal_state(gate, t));
        row.bound = eof_upper_bound(instant);
        row.spectrum = instant.values();
        rows.push_back(row);
    }
    return rows;
}

double calibrate_coupling(CouplingKind kind, const GateSpec& gate, const BathSpec& bath_template,
                          double target_fidelity) {
    if (!(target_fidelity > 0.0 && target_fidelity <= 1.0 + 1e-12)) {
        throw DomainError("target fidelity must lie in (0, 1]");
    }
    validate_bath(bath_template);
    if (target_fidelity >= 1.0 - 1e-12) return 0.0;

    const double t_star = gate.gate_time();
    BathSpec unit = bath_template;
    unit.coupling_k = 1.0;
    const DecoherenceFactors per_k = decoherence_functions(t_star, unit);

    auto fidelity_at = [&](double k) {
        return fidelity_given_factors(kind, gate,
                                      DecoherenceFactors{k * per_k.gamma, k * per_k.phi}, t_star);
    };

    double lo = 0.0;
    double hi = 1.0;
    int doublings = 0;
    while (fidelity_at(hi) >= target_fidelity) {
        lo = hi;
        hi *= 2.0;
        if (++doublings > 60) {
            throw NotBracketed("target fidelity " + std::to_string(target_fidelity) +
                               " is at or below the fully-dephased floor");
        }
    }
    for (int it = 0; it < 200 && (hi - lo) > 1e-15 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (fidelity_at(mid) >= target_fidelity) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace entlab
