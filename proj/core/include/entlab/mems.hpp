#ifndef ENTLAB_MEMS_HPP
#define ENTLAB_MEMS_HPP

#include <array>

#include "entlab/measures.hpp"

namespace entlab {

/// Four eigenvalues p1 >= p2 >= p3 >= p4 >= 0 summing to 1 within 1e-12.
/// Unsorted or unnormalized input is rejected; use sorted_normalized for
/// explicit cleanup.
class Spectrum {
  public:
    Spectrum(double p1, double p2, double p3, double p4);
    explicit Spectrum(const std::array<double, 4>& p);

    /// Sorts descending, clamps eigensolver-level negatives (>= -1e-10) to
    /// zero and divides by the sum. Throws InvalidSpectrum on serious
    /// negatives or a non-positive sum.
    static Spectrum sorted_normalized(std::array<double, 4> raw);

    double operator[](int i) const { return p_[static_cast<size_t>(i)]; }
    double p1() const { return p_[0]; }
    double p2() const { return p_[1]; }
    double p3() const { return p_[2]; }
    double p4() const { return p_[3]; }
    const std::array<double, 4>& values() const { return p_; }

    double purity() const;
    double participation_ratio() const { return 1.0 / purity(); }

  private:
    std::array<double, 4> p_;
};

enum class MemsForm { Psi, Phi };

/// Basis assignment for the maximally entangled mixed family. The swapped
/// flag exchanges the two Bell slots and the two product slots, which is a
/// local-unitary relabeling.
struct MemsVariant {
    MemsForm form = MemsForm::Psi;
    bool swapped = false;
};

struct StarValue {
    double clipped;
    double raw;
};

struct SpecialConditionReport {
    bool satisfied;
    /// Unnormalized residual spectrum (p3 + 2 sqrt(p2 p4), p2, p3, p4).
    std::array<double, 4> rho4_spectrum;
    /// Purity of the normalized residual spectrum; NaN when its weight is 0.
    double rho4_purity;
};

DensityMatrix build_mems(const Spectrum& p, const MemsVariant& variant = {});

/// raw = p1 - p3 - 2 sqrt(p2 p4), the orbit-maximal concurrence candidate.
StarValue c_star(const Spectrum& p);

/// raw = -p2 - p4 + sqrt((p1-p3)^2 + (p2-p4)^2), the orbit-maximal
/// doubled-negativity candidate.
StarValue neg_star(const Spectrum& p);

/// eof_from_concurrence(max{0, c_star(p).raw})
double eof_upper_bound(const Spectrum& p);

/// p1 singlet + isotropic mixture of the other three Bell projectors.
DensityMatrix build_werner(double p1);

/// Checks p3 == p2 + p4 - sqrt(p2 p4) within 1e-10 and reports the
/// residual spectrum and its normalized purity (1/3 whenever satisfied).
SpecialConditionReport special_condition(const Spectrum& p);

} // namespace entlab

#endif
