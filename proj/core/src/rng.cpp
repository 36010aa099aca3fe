#include "entlab/rng.hpp"

#include <algorithm>
#include <cmath>

namespace entlab {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += kGolden);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

constexpr double kTwoPi = 6.28318530717958647692;

} // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
    std::uint64_t sm = seed + stream_id * 0xD2B74407B1CE6E93ULL;
    s_[0] = splitmix64(sm);
    s_[1] = splitmix64(sm);
    s_[2] = splitmix64(sm);
    s_[3] = splitmix64(sm);
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

std::uint64_t RngStream::next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double RngStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::exponential() {
    return -std::log1p(-uniform());
}

double RngStream::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - uniform(); // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(kTwoPi * u2);
    has_spare_ = true;
    return r * std::cos(kTwoPi * u2);
}

cplx RngStream::complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return cplx(re, im);
}

Spectrum sample_spectrum(RngStream& rng) {
    std::array<double, 4> e{};
    double sum = 0.0;
    do {
        for (double& v : e) v = rng.exponential();
        sum = e[0] + e[1] + e[2] + e[3];
    } while (sum <= 0.0);
    for (double& v : e) v /= sum;
    std::sort(e.begin(), e.end(), std::greater<double>());
    return Spectrum(e);
}

ComplexMatrix haar_unitary(RngStream& rng, int dim) {
    const int n = dim;
    ComplexMatrix a(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) a(r, c) = rng.complex_gaussian();

    ComplexMatrix q = ComplexMatrix::identity(n);
    for (int k = 0; k < n - 1; ++k) {
        double normx = 0.0;
        for (int r = k; r < n; ++r) normx += std::norm(a(r, k));
        normx = std::sqrt(normx);
        if (normx < 1e-300) continue;
        const cplx akk = a(k, k);
        const cplx phase = (std::abs(akk) > 0.0) ? akk / std::abs(akk) : cplx(1.0, 0.0);
        const cplx alpha = -phase * normx;

        cplx v[4] = {};
        for (int r = k; r < n; ++r) v[r] = a(r, k);
        v[k] -= alpha;
        double vtv = 0.0;
        for (int r = k; r < n; ++r) vtv += std::norm(v[r]);
        if (vtv < 1e-300) continue;
        const double beta = 2.0 / vtv;

        for (int c = k; c < n; ++c) {
            cplx w = 0.0;
            for (int r = k; r < n; ++r) w += std::conj(v[r]) * a(r, c);
            w *= beta;
            for (int r = k; r < n; ++r) a(r, c) -= w * v[r];
        }
        for (int r = 0; r < n; ++r) {
            cplx w = 0.0;
            for (int c = k; c < n; ++c) w += q(r, c) * v[c];
            w *= beta;
            for (int c = k; c < n; ++c) q(r, c) -= w * std::conj(v[c]);
        }
    }
    // Fold the triangular factor's diagonal phases into Q so the
    // distribution is exactly Haar.
    for (int j = 0; j < n; ++j) {
        const cplx d = a(j, j);
        const cplx lam = (std::abs(d) > 0.0) ? d / std::abs(d) : cplx(1.0, 0.0);
        for (int r = 0; r < n; ++r) q(r, j) *= lam;
    }
    return q;
}

ComplexMatrix sample_cue(RngStream& rng) { return haar_unitary(rng, 4); }

DensityMatrix sample_density(RngStream& rng, const Spectrum& p) {
    const ComplexMatrix u = sample_cue(rng);
    ComplexMatrix rho(4);
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            cplx acc = 0.0;
            for (int k = 0; k < 4; ++k) acc += u(r, k) * p[k] * std::conj(u(c, k));
            rho(r, c) = acc;
        }
    }
    return DensityMatrix::trusted(hermitize(rho));
}

} // namespace entlab
