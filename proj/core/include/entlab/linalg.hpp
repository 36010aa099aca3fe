#ifndef ENTLAB_LINALG_HPP
#define ENTLAB_LINALG_HPP

#include <array>
#include <complex>
#include <initializer_list>

#include "entlab/errors.hpp"

namespace entlab {

using cplx = std::complex<double>;

/// Dense complex matrix of dimension 2 or 4, value semantics, no heap.
/// Row-major storage in a fixed 4x4 buffer; only the leading dim x dim
/// block is meaningful.
class ComplexMatrix {
  public:
    ComplexMatrix() : dim_(0), a_{} {}
    explicit ComplexMatrix(int dim);

    static ComplexMatrix zero(int dim) { return ComplexMatrix(dim); }
    static ComplexMatrix identity(int dim);
    /// Row-major list of dim*dim entries.
    static ComplexMatrix from_rows(int dim, std::initializer_list<cplx> entries);

    int dim() const { return dim_; }

    cplx& operator()(int r, int c) { return a_[static_cast<size_t>(r) * 4 + c]; }
    const cplx& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * 4 + c]; }

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(ComplexMatrix a, double s) { return a *= cplx(s, 0.0); }
    friend ComplexMatrix operator*(double s, ComplexMatrix a) { return a *= cplx(s, 0.0); }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

    bool finite() const;

  private:
    int dim_;
    std::array<cplx, 16> a_;
};

/// Eigendecomposition of a Hermitian matrix: values sorted descending,
/// columns of `vectors` are the matching orthonormal eigenvectors.
struct EigenSystem {
    std::array<double, 4> values{};
    ComplexMatrix vectors;
    int size() const { return vectors.dim(); }
};

ComplexMatrix adjoint(const ComplexMatrix& m);
ComplexMatrix conjugate(const ComplexMatrix& m);
ComplexMatrix transpose(const ComplexMatrix& m);
/// (m + m†)/2
ComplexMatrix hermitize(const ComplexMatrix& m);

cplx trace(const ComplexMatrix& m);
double frobenius_norm(const ComplexMatrix& m);
double max_abs(const ComplexMatrix& m);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
/// max_ij |m_ij - conj(m_ji)|
double hermiticity_error(const ComplexMatrix& m);

/// Kronecker product of two 2x2 matrices; the first factor is the
/// control/left slot in the |c t> basis ordering |00>,|01>,|10>,|11>.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// Transposition on the second-qubit indices of a 4x4 matrix.
ComplexMatrix partial_transpose_b(const ComplexMatrix& m);

/// Trace out the second (first) qubit of a 4x4 matrix.
ComplexMatrix partial_trace_b(const ComplexMatrix& m);
ComplexMatrix partial_trace_a(const ComplexMatrix& m);

cplx determinant(const ComplexMatrix& m);
/// Solve a x = b for each column of b (Gaussian elimination, partial pivoting).
ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b);

/// Cyclic complex Jacobi eigensolver. Throws NotHermitian if the input is
/// asymmetric beyond hermitian_tol, NoConvergence after 50 sweeps.
EigenSystem hermitian_eigensystem(const ComplexMatrix& h, double hermitian_tol = 1e-12);

/// Values-only variant (descending), skipping eigenvector accumulation.
std::array<double, 4> hermitian_eigenvalues(const ComplexMatrix& h, double hermitian_tol = 1e-12);

/// Principal square root of a Hermitian PSD matrix. Eigenvalues below
/// -1e-9 raise NotPSD; small negatives and values under 1e-14 * w_max are
/// clamped to zero before the square root (roundoff floor of the
/// eigensolver; see also the concurrence pipeline).
ComplexMatrix psd_sqrt(const ComplexMatrix& rho);

/// Re-orthonormalize an almost-unitary matrix (two Gram-Schmidt passes).
ComplexMatrix reunitarize(const ComplexMatrix& u);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

/// Four-component state vector in the computational basis |00>,|01>,|10>,|11>.
using Vec4 = std::array<cplx, 4>;

double norm(const Vec4& v);
cplx inner(const Vec4& a, const Vec4& b);
Vec4 mat_vec(const ComplexMatrix& m, const Vec4& v);
ComplexMatrix projector(const Vec4& v);

namespace states {
Vec4 ket00();
Vec4 ket01();
Vec4 ket10();
Vec4 ket11();
Vec4 psi_plus();
Vec4 psi_minus();
Vec4 phi_plus();
Vec4 phi_minus();
} // namespace states

} // namespace entlab

#endif
