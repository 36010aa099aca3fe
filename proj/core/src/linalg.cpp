#include "entlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace entlab {

namespace {
constexpr int kMaxJacobiSweeps = 50;
constexpr double kOffDiagTol = 1e-13;

void check_dim(int dim) {
    if (dim != 2 && dim != 4) {
        throw DomainError("matrix dimension must be 2 or 4, got " + std::to_string(dim));
    }
}

void jacobi_sweeps(ComplexMatrix& a, ComplexMatrix* v);
} // namespace

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim), a_{} { check_dim(dim); }

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(int dim, std::initializer_list<cplx> entries) {
    check_dim(dim);
    if (static_cast<int>(entries.size()) != dim * dim) {
        throw DomainError("from_rows: expected " + std::to_string(dim * dim) + " entries");
    }
    ComplexMatrix m(dim);
    auto it = entries.begin();
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) m(r, c) = *it++;
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) (*this)(r, c) += o(r, c);
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) (*this)(r, c) -= o(r, c);
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) (*this)(r, c) *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int n = a.dim();
    if (n != b.dim()) throw DomainError("matrix product: dimension mismatch");
    ComplexMatrix out(n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            cplx acc = 0.0;
            for (int k = 0; k < n; ++k) acc += a(r, k) * b(k, c);
            out(r, c) = acc;
        }
    }
    return out;
}

bool ComplexMatrix::finite() const {
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) {
            const cplx& z = (*this)(r, c);
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        }
    return true;
}

ComplexMatrix adjoint(const ComplexMatrix& m) {
    ComplexMatrix out(m.dim());
    for (int r = 0; r < m.dim(); ++r)
        for (int c = 0; c < m.dim(); ++c) out(r, c) = std::conj(m(c, r));
    return out;
}

ComplexMatrix conjugate(const ComplexMatrix& m) {
    ComplexMatrix out(m.dim());
    for (int r = 0; r < m.dim(); ++r)
        for (int c = 0; c < m.dim(); ++c) out(r, c) = std::conj(m(r, c));
    return out;
}

ComplexMatrix transpose(const ComplexMatrix& m) {
    ComplexMatrix out(m.dim());
    for (int r = 0; r < m.dim(); ++r)
        for (int c = 0; c < m.dim(); ++c) out(r, c) = m(c, r);
    return out;
}

ComplexMatrix hermitize(const ComplexMatrix& m) {
    ComplexMatrix out(m.dim());
    for (int r = 0; r < m.dim(); ++r)
        for (int c = 0; c < m.dim(); ++c) out(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
    return out;
}

cplx trace(const ComplexMatrix& m) {
    cplx t = 0.0;
    for (int i = 0; i < m.dim(); ++i) t += m(i, i);
    return t;
}

double frobenius_norm(const ComplexMatrix& m) {
    double s = 0.0;
    for (int r = 0; r < m.dim(); ++r)
        for (int c = 0; c < m.dim(); ++c) s += std::norm(m(r, c));
    return std::sqrt(s);
}

double max_abs(const ComplexMatrix& m) {
    double s = 0.0;
    for (int r = 0; r < m.dim(); ++r)
        for (int c = 0; c < m.dim(); ++c) s = std::max(s, std::abs(m(r, c)));
    return s;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    double s = 0.0;
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) s = std::max(s, std::abs(a(r, c) - b(r, c)));
    return s;
}

double hermiticity_error(const ComplexMatrix& m) {
    double s = 0.0;
    for (int r = 0; r < m.dim(); ++r)
        for (int c = 0; c < m.dim(); ++c) s = std::max(s, std::abs(m(r, c) - std::conj(m(c, r))));
    return s;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != 2 || b.dim() != 2) throw DomainError("tensor: both factors must be 2x2");
    ComplexMatrix out(4);
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k)
            for (int j = 0; j < 2; ++j)
                for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return out;
}

ComplexMatrix partial_transpose_b(const ComplexMatrix& m) {
    if (m.dim() != 4) throw DomainError("partial_transpose_b: input must be 4x4");
    ComplexMatrix out(4);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) out(2 * a + b, 2 * c + d) = m(2 * a + d, 2 * c + b);
    return out;
}

ComplexMatrix partial_trace_b(const ComplexMatrix& m) {
    if (m.dim() != 4) throw DomainError("partial_trace_b: input must be 4x4");
    ComplexMatrix out(2);
    for (int a = 0; a < 2; ++a)
        for (int c = 0; c < 2; ++c) out(a, c) = m(2 * a + 0, 2 * c + 0) + m(2 * a + 1, 2 * c + 1);
    return out;
}

ComplexMatrix partial_trace_a(const ComplexMatrix& m) {
    if (m.dim() != 4) throw DomainError("partial_trace_a: input must be 4x4");
    ComplexMatrix out(2);
    for (int b = 0; b < 2; ++b)
        for (int d = 0; d < 2; ++d) out(b, d) = m(0 + b, 0 + d) + m(2 + b, 2 + d);
    return out;
}

cplx determinant(const ComplexMatrix& m) {
    const int n = m.dim();
    ComplexMatrix lu = m;
    cplx det = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int r = k + 1; r < n; ++r)
            if (std::abs(lu(r, k)) > std::abs(lu(piv, k))) piv = r;
        if (piv != k) {
            for (int c = 0; c < n; ++c) std::swap(lu(k, c), lu(piv, c));
            det = -det;
        }
        if (std::abs(lu(k, k)) == 0.0) return 0.0;
        det *= lu(k, k);
        for (int r = k + 1; r < n; ++r) {
            const cplx f = lu(r, k) / lu(k, k);
            for (int c = k; c < n; ++c) lu(r, c) -= f * lu(k, c);
        }
    }
    return det;
}

ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int n = a.dim();
    if (n != b.dim()) throw DomainError("solve: dimension mismatch");
    ComplexMatrix lu = a;
    ComplexMatrix x = b;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int r = k + 1; r < n; ++r)
            if (std::abs(lu(r, k)) > std::abs(lu(piv, k))) piv = r;
        if (std::abs(lu(piv, k)) < 1e-300) throw DomainError("solve: singular matrix");
        if (piv != k) {
            for (int c = 0; c < n; ++c) {
                std::swap(lu(k, c), lu(piv, c));
                std::swap(x(k, c), x(piv, c));
            }
        }
        for (int r = k + 1; r < n; ++r) {
            const cplx f = lu(r, k) / lu(k, k);
            for (int c = k; c < n; ++c) lu(r, c) -= f * lu(k, c);
            for (int c = 0; c < n; ++c) x(r, c) -= f * x(k, c);
        }
    }
    for (int k = n - 1; k >= 0; --k) {
        for (int c = 0; c < n; ++c) {
            cplx acc = x(k, c);
            for (int j = k + 1; j < n; ++j) acc -= lu(k, j) * x(j, c);
            x(k, c) = acc / lu(k, k);
        }
    }
    return x;
}

namespace {

/// Cyclic Jacobi diagonalization in place; accumulates rotations into *v
/// when given. Throws NoConvergence after kMaxJacobiSweeps.
void jacobi_sweeps(ComplexMatrix& a, ComplexMatrix* v) {
    const int n = a.dim();
    const double tol = kOffDiagTol * std::max(1.0, max_abs(a));

    int sweep = 0;
    for (; sweep < kMaxJacobiSweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off <= tol) break;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx hpq = a(p, q);
                const double ah = std::abs(hpq);
                if (ah <= tol * 1e-2) continue;
                const cplx alpha = hpq / ah; // phase of the pivot
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * ah);
                const double t = (tau >= 0.0) ? -1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                              : -1.0 / (tau - std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx sca = s * std::conj(alpha);
                const cplx sa = s * alpha;

                // column update on a (and v), then matching row update on a
                for (int r = 0; r < n; ++r) {
                    const cplx arp = a(r, p), arq = a(r, q);
                    a(r, p) = c * arp + sca * arq;
                    a(r, q) = -s * arp + c * std::conj(alpha) * arq;
                    if (v) {
                        const cplx vrp = (*v)(r, p), vrq = (*v)(r, q);
                        (*v)(r, p) = c * vrp + sca * vrq;
                        (*v)(r, q) = -s * vrp + c * std::conj(alpha) * vrq;
                    }
                }
                for (int r = 0; r < n; ++r) {
                    const cplx apr = a(p, r), aqr = a(q, r);
                    a(p, r) = c * apr + sa * aqr;
                    a(q, r) = -s * apr + c * alpha * aqr;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }
    if (sweep == kMaxJacobiSweeps) {
        throw NoConvergence("hermitian_eigensystem: Jacobi sweeps exhausted");
    }
}

} // namespace

EigenSystem hermitian_eigensystem(const ComplexMatrix& h, double hermitian_tol) {
    const int n = h.dim();
    const double asym = hermiticity_error(h);
    if (asym > hermitian_tol) {
        throw NotHermitian("hermitian_eigensystem: asymmetry " + std::to_string(asym) +
                           " exceeds tolerance");
    }
    ComplexMatrix a = hermitize(h);
    ComplexMatrix v = ComplexMatrix::identity(n);
    jacobi_sweeps(a, &v);

    std::array<int, 4> idx{0, 1, 2, 3};
    std::stable_sort(idx.begin(), idx.begin() + n,
                     [&](int i, int j) { return a(i, i).real() > a(j, j).real(); });

    EigenSystem es;
    es.vectors = ComplexMatrix(n);
    for (int j = 0; j < n; ++j) {
        es.values[static_cast<size_t>(j)] = a(idx[static_cast<size_t>(j)], idx[static_cast<size_t>(j)]).real();
        for (int r = 0; r < n; ++r) es.vectors(r, j) = v(r, idx[static_cast<size_t>(j)]);
    }
    return es;
}

std::array<double, 4> hermitian_eigenvalues(const ComplexMatrix& h, double hermitian_tol) {
    const int n = h.dim();
    const double asym = hermiticity_error(h);
    if (asym > hermitian_tol) {
        throw NotHermitian("hermitian_eigenvalues: asymmetry " + std::to_string(asym) +
                           " exceeds tolerance");
    }
    ComplexMatrix a = hermitize(h);
    jacobi_sweeps(a, nullptr);
    std::array<double, 4> values{};
    for (int i = 0; i < n; ++i) values[static_cast<size_t>(i)] = a(i, i).real();
    std::sort(values.begin(), values.begin() + n, std::greater<double>());
    return values;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& rho) {
    const int n = rho.dim();
    EigenSystem es = hermitian_eigensystem(rho);
    double wmax = 0.0;
    for (int i = 0; i < n; ++i) wmax = std::max(wmax, es.values[static_cast<size_t>(i)]);
    std::array<double, 4> root{};
    for (int i = 0; i < n; ++i) {
        double w = es.values[static_cast<size_t>(i)];
        if (w < -1e-9) {
            throw NotPSD("psd_sqrt: eigenvalue " + std::to_string(w) + " below -1e-9");
        }
        if (w < 1e-14 * wmax) w = 0.0; // roundoff floor; see header
        root[static_cast<size_t>(i)] = std::sqrt(w);
    }
    ComplexMatrix out(n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            cplx acc = 0.0;
            for (int k = 0; k < n; ++k)
                acc += es.vectors(r, k) * root[static_cast<size_t>(k)] * std::conj(es.vectors(c, k));
            out(r, c) = acc;
        }
    }
    return hermitize(out);
}

ComplexMatrix reunitarize(const ComplexMatrix& u) {
    const int n = u.dim();
    ComplexMatrix q = u;
    for (int pass = 0; pass < 2; ++pass) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < j; ++k) {
                cplx proj = 0.0;
                for (int r = 0; r < n; ++r) proj += std::conj(q(r, k)) * q(r, j);
                for (int r = 0; r < n; ++r) q(r, j) -= proj * q(r, k);
            }
            double nrm = 0.0;
            for (int r = 0; r < n; ++r) nrm += std::norm(q(r, j));
            nrm = std::sqrt(nrm);
            if (nrm < 1e-300) throw DomainError("reunitarize: rank-deficient input");
            for (int r = 0; r < n; ++r) q(r, j) /= nrm;
        }
    }
    return q;
}

ComplexMatrix pauli_x() { return ComplexMatrix::from_rows(2, {0.0, 1.0, 1.0, 0.0}); }
ComplexMatrix pauli_y() {
    return ComplexMatrix::from_rows(2, {0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0});
}
ComplexMatrix pauli_z() { return ComplexMatrix::from_rows(2, {1.0, 0.0, 0.0, -1.0}); }

double norm(const Vec4& v) {
    double s = 0.0;
    for (const cplx& z : v) s += std::norm(z);
    return std::sqrt(s);
}

cplx inner(const Vec4& a, const Vec4& b) {
    cplx s = 0.0;
    for (int i = 0; i < 4; ++i) s += std::conj(a[static_cast<size_t>(i)]) * b[static_cast<size_t>(i)];
    return s;
}

Vec4 mat_vec(const ComplexMatrix& m, const Vec4& v) {
    if (m.dim() != 4) throw DomainError("mat_vec: matrix must be 4x4");
    Vec4 out{};
    for (int r = 0; r < 4; ++r) {
        cplx acc = 0.0;
        for (int c = 0; c < 4; ++c) acc += m(r, c) * v[static_cast<size_t>(c)];
        out[static_cast<size_t>(r)] = acc;
    }
    return out;
}

ComplexMatrix projector(const Vec4& v) {
    ComplexMatrix out(4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out(r, c) = v[static_cast<size_t>(r)] * std::conj(v[static_cast<size_t>(c)]);
    return out;
}

namespace states {
namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}
Vec4 ket00() { return {1.0, 0.0, 0.0, 0.0}; }
Vec4 ket01() { return {0.0, 1.0, 0.0, 0.0}; }
Vec4 ket10() { return {0.0, 0.0, 1.0, 0.0}; }
Vec4 ket11() { return {0.0, 0.0, 0.0, 1.0}; }
Vec4 psi_plus() { return {0.0, kInvSqrt2, kInvSqrt2, 0.0}; }
Vec4 psi_minus() { return {0.0, kInvSqrt2, -kInvSqrt2, 0.0}; }
Vec4 phi_plus() { return {kInvSqrt2, 0.0, 0.0, kInvSqrt2}; }
Vec4 phi_minus() { return {kInvSqrt2, 0.0, 0.0, -kInvSqrt2}; }
} // namespace states

} // namespace entlab
