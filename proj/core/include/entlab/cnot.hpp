#ifndef ENTLAB_CNOT_HPP
#define ENTLAB_CNOT_HPP

#include <array>
#include <vector>

#include "entlab/mems.hpp"

namespace entlab {

/// Gate drive: Rabi rate R > 0 (hbar = 1); the gate completes at
/// t* = pi / R.
struct GateSpec {
    double rabi_rate = 1.0;
    explicit GateSpec(double r);
    double gate_time() const;
};

/// Ohmic environment J(w) = K w exp(-w / cutoff) at inverse temperature
/// beta; beta may be +infinity (zero temperature).
struct BathSpec {
    double coupling_k = 0.0;
    double cutoff = 1.0;
    double inverse_temperature = 10.0;
};

/// Which system operator the bath couples to. ControlDephasing: the
/// control qubit's z axis (branch weights -1,-1,+1,+1 in the joint
/// eigenbasis). GateAxisDephasing: the gate generator's own axis (branch
/// weights 0,0,-1,+1).
enum class CouplingKind { ControlDephasing, GateAxisDephasing };

struct DecoherenceFactors {
    double gamma; // coherence decay exponent, >= 0
    double phi;   // bath-induced phase
};

struct TraceRow {
    double time;
    double eof;
    double fidelity;
    double concurrence;
    double bound; // spectrum-only EOF bound at this instant
    std::array<double, 4> spectrum;
};

/// Gamma(t) = int J(w) coth(beta w / 2) (1 - cos wt) / w^2 dw and
/// phi(t) = int J(w) (wt - sin wt) / w^2 dw. Closed forms at beta = inf,
/// adaptive quadrature otherwise.
DecoherenceFactors decoherence_functions(double t, const BathSpec& bath);

/// Exact pure-dephasing propagation: in the joint eigenbasis every matrix
/// element picks up a deterministic phase and a decay factor set by the
/// branch-weight differences.
DensityMatrix evolve(const DensityMatrix& initial, CouplingKind kind, const GateSpec& gate,
                     const BathSpec& bath, double t);

/// (|0>_c + |1>_c) (x) |0>_t, normalized.
Vec4 initial_state();

/// Decoherence-free evolution of initial_state() at time t; at t* this is
/// (|00> + i |11>) / sqrt(2).
Vec4 ideal_state(const GateSpec& gate, double t);

/// Uniform time grid on [0, t*] from the standard initial state.
std::vector<TraceRow> trace_run(CouplingKind kind, const GateSpec& gate, const BathSpec& bath,
                                int n_steps);

/// Finds K >= 0 with fidelity(t*) equal to target within 1e-6 by bisection
/// (fidelity decreases strictly in K over the bracketed range). Throws
/// NotBracketed when the target is at or below the fully-dephased floor.
double calibrate_coupling(CouplingKind kind, const GateSpec& gate, const BathSpec& bath_template,
                          double target_fidelity);

} // namespace entlab

#endif
