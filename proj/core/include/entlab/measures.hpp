#ifndef ENTLAB_MEASURES_HPP
#define ENTLAB_MEASURES_HPP

#include <span>

#include "entlab/linalg.hpp"

namespace entlab {

/// Validated two-qubit state: 4x4, Hermitian within 1e-12, unit trace
/// within 1e-12, eigenvalues >= -1e-10, finite entries.
class DensityMatrix {
  public:
    /// Full validation, including the eigenvalue check.
    explicit DensityMatrix(const ComplexMatrix& m);

    /// Cheap checks only (shape, Hermiticity, trace). For matrices that are
    /// PSD by construction: unitary conjugations of diagonal spectra,
    /// convex mixtures of projectors, dephasing channels.
    static DensityMatrix trusted(const ComplexMatrix& m);

    const ComplexMatrix& mat() const { return mat_; }

  private:
    DensityMatrix(ComplexMatrix m, int);
    ComplexMatrix mat_;
};

struct MeasureReport {
    double concurrence;
    double eof;
    double negativity; // the doubled quantity 2 E_N, in [0, 1]
    double purity;
    double participation_ratio;
};

struct PurityReport {
    double purity;
    double participation_ratio;
    bool separable_by_purity;
};

/// (sigma_y (x) sigma_y) conj(rho) (sigma_y (x) sigma_y)
ComplexMatrix spin_flip(const DensityMatrix& rho);

double concurrence(const DensityMatrix& rho);
/// Concurrence with a caller-supplied flipped matrix; the default path is
/// concurrence(rho) == concurrence_given_flipped(rho, spin_flip(rho)).
double concurrence_given_flipped(const DensityMatrix& rho, const ComplexMatrix& flipped);
/// Concurrence from a precomputed principal square root of rho; callers
/// that know rho = U diag(p) U+ can build the root as U diag(sqrt p) U+.
double concurrence_from_root(const ComplexMatrix& root, const ComplexMatrix& flipped);

/// Binary Shannon entropy in bits of (1 + sqrt(1 - C^2))/2.
double eof_from_concurrence(double c);

/// 2 * max{0, -mu_min} of the partial transpose. Throws InvariantViolation
/// if the partial transpose has two eigenvalues below -1e-9.
double negativity(const DensityMatrix& rho);

PurityReport purity_report(const DensityMatrix& rho);

/// <psi|rho|psi>. psi must be normalized within 1e-12.
double fidelity_to_pure(const DensityMatrix& rho, const Vec4& psi);

MeasureReport measure_report(const DensityMatrix& rho);

double binary_entropy_bits(double x);
double shannon_entropy_bits(std::span<const double> p);

} // namespace entlab

#endif
