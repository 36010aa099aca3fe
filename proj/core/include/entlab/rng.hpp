#ifndef ENTLAB_RNG_HPP
#define ENTLAB_RNG_HPP

#include <cstdint>

#include "entlab/mems.hpp"

namespace entlab {

/// Deterministic random stream: identical (seed, stream_id) reproduce the
/// sample sequence bit-for-bit; distinct stream_ids are independent.
/// xoshiro256++ state is derived from (seed, stream_id) by a splitmix64
/// chain, so streams can be created cheaply per work unit.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

    std::uint64_t next_u64();
    /// Uniform on [0, 1), 53-bit resolution.
    double uniform();
    /// Standard exponential, strictly positive.
    double exponential();
    /// Standard normal (Box-Muller, second value cached).
    double gaussian();
    cplx complex_gaussian();

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Flat (Lebesgue) measure on the 3-simplex, returned sorted descending.
Spectrum sample_spectrum(RngStream& rng);

/// Haar-distributed unitary: complex Ginibre matrix, Householder QR, then
/// the triangular factor's diagonal phases folded into Q.
ComplexMatrix haar_unitary(RngStream& rng, int dim);

/// Circular-unitary-ensemble sample, 4x4.
ComplexMatrix sample_cue(RngStream& rng);

/// U diag(p) U+ with U from sample_cue; the spectrum is preserved.
DensityMatrix sample_density(RngStream& rng, const Spectrum& p);

} // namespace entlab

#endif
