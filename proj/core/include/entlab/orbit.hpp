#ifndef ENTLAB_ORBIT_HPP
#define ENTLAB_ORBIT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "entlab/rng.hpp"

namespace entlab {

enum class MeasureKind { Concurrence, Negativity };

std::string to_string(MeasureKind kind);
MeasureKind measure_kind_from_string(const std::string& s);

/// One scatter point: the best measure value found on the unitary orbit of
/// a fixed spectrum, with the spectrum-only reference values alongside.
struct OrbitResult {
    Spectrum spectrum{1.0, 0.0, 0.0, 0.0};
    double best_value = 0.0;
    MeasureKind measure_kind = MeasureKind::Concurrence;
    long samples_used = 0;
    bool refined = false;
    double participation_ratio = 0.0;
    double c_star_raw = 0.0;
    double neg_star_raw = 0.0;
};

struct ScanConfig {
    int n_spectra = 1000;
    long n_unitaries_per_spectrum = 10000;
    int refine_steps = 0;
    MeasureKind measure_kind = MeasureKind::Concurrence;
    std::uint64_t seed = 0;
    /// Worker threads. Streams are keyed by spectrum index, so the output
    /// is identical for any worker count.
    int workers = 1;
};

double orbit_measure(MeasureKind kind, const DensityMatrix& rho);

/// Best measure over `budget` random orbit points of diag(p), optionally
/// improved by hill climbing: the incumbent unitary is multiplied by small
/// random Cayley rotations; the step starts at 0.3, halves after 20
/// consecutive rejections and the climb stops below 1e-5.
OrbitResult max_over_orbit(const Spectrum& p, long budget, int refine_steps, MeasureKind kind,
                           RngStream& rng);

/// One OrbitResult per sampled spectrum; spectra come from stream 0 of the
/// seed, spectrum i's orbit search from stream i+1.
std::vector<OrbitResult> scan(const ScanConfig& config);

struct RankBoundCase {
    Spectrum spectrum;
    double bound;
    double best;
    double gap; // best - bound
};

struct RankBoundSummary {
    std::vector<RankBoundCase> rank2;
    std::vector<RankBoundCase> rank3;
    double worst_overshoot = 0.0;  // max gap
    double worst_undershoot = 0.0; // min gap
};

/// For n_cases random rank-2 spectra (bound p1) and n_cases rank-3 spectra
/// (bound p1 - p3), runs a refined orbit search and checks that the best
/// value stays within [bound - 5e-3, bound + 1e-9]. Throws
/// InvariantViolation outside that window when enforce is set.
RankBoundSummary verify_rank_bounds(int n_cases, RngStream& rng, bool enforce = true);

} // namespace entlab

#endif
