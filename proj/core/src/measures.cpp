#include "entlab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace entlab {

namespace {

const ComplexMatrix& flip_mask() {
    static const ComplexMatrix f = tensor(pauli_y(), pauli_y());
    return f;
}

void check_shape(const ComplexMatrix& m) {
    if (m.dim() != 4) throw DomainError("density matrix must be 4x4");
    if (!m.finite()) throw DomainError("density matrix entries must be finite");
    const double asym = hermiticity_error(m);
    if (asym > 1e-12) {
        throw DomainError("density matrix not Hermitian: asymmetry " + std::to_string(asym));
    }
    const cplx tr = trace(m);
    if (std::abs(tr - cplx(1.0, 0.0)) > 1e-12) {
        throw DomainError("density matrix trace differs from 1 by " +
                          std::to_string(std::abs(tr - cplx(1.0, 0.0))));
    }
}

} // namespace

DensityMatrix::DensityMatrix(ComplexMatrix m, int) : mat_(std::move(m)) {}

DensityMatrix::DensityMatrix(const ComplexMatrix& m) : mat_(m) {
    check_shape(mat_);
    const EigenSystem es = hermitian_eigensystem(mat_);
    const double wmin = es.values[static_cast<size_t>(es.size() - 1)];
    if (wmin < -1e-10) {
        throw DomainError("density matrix has eigenvalue " + std::to_string(wmin) +
                          " below -1e-10");
    }
}

DensityMatrix DensityMatrix::trusted(const ComplexMatrix& m) {
    check_shape(m);
    return DensityMatrix(m, 0);
}

ComplexMatrix spin_flip(const DensityMatrix& rho) {
    const ComplexMatrix& f = flip_mask();
    return f * conjugate(rho.mat()) * f;
}

double concurrence(const DensityMatrix& rho) {
    return concurrence_given_flipped(rho, spin_flip(rho));
}

double concurrence_given_flipped(const DensityMatrix& rho, const ComplexMatrix& flipped) {
    const ComplexMatrix root = psd_sqrt(rho.mat());
    return concurrence_from_root(root, flipped);
}

double concurrence_from_root(const ComplexMatrix& root, const ComplexMatrix& flipped) {
    const ComplexMatrix h = hermitize(root * flipped * root);
    const std::array<double, 4> values = hermitian_eigenvalues(h);
    const double wmax = std::max(0.0, values[0]);
    std::array<double, 4> lambda{};
    for (int i = 0; i < 4; ++i) {
        double w = values[static_cast<size_t>(i)];
        // Same roundoff floor as psd_sqrt: sqrt amplifies O(1e-16) eigenvalue
        // noise to O(1e-8) near pure states.
        if (w < 1e-14 * wmax) w = 0.0;
        lambda[static_cast<size_t>(i)] = std::sqrt(w);
    }
    const double c = lambda[0] - lambda[1] - lambda[2] - lambda[3];
    return std::clamp(c, 0.0, 1.0);
}

double eof_from_concurrence(double c) {
    if (c < -1e-12 || c > 1.0 + 1e-12) {
        throw DomainError("concurrence " + std::to_string(c) + " outside [0, 1]");
    }
    const double cc = std::clamp(c, 0.0, 1.0);
    const double x = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - cc * cc)));
    return binary_entropy_bits(x);
}

double negativity(const DensityMatrix& rho) {
    const ComplexMatrix pt = partial_transpose_b(rho.mat());
    const std::array<double, 4> values = hermitian_eigenvalues(pt);
    int negatives = 0;
    for (int i = 0; i < 4; ++i) {
        if (values[static_cast<size_t>(i)] < -1e-9) ++negatives;
    }
    if (negatives > 1) {
        throw InvariantViolation("partial transpose has " + std::to_string(negatives) +
                                 " negative eigenvalues; expected at most one");
    }
    const double mu_min = values[3];
    return 2.0 * std::max(0.0, -mu_min);
}

PurityReport purity_report(const DensityMatrix& rho) {
    const double purity = std::real(trace(rho.mat() * rho.mat()));
    return PurityReport{purity, 1.0 / purity, purity <= 1.0 / 3.0 + 1e-12};
}

double fidelity_to_pure(const DensityMatrix& rho, const Vec4& psi) {
    const double n = norm(psi);
    if (std::abs(n - 1.0) > 1e-12) {
        throw DomainError("fidelity_to_pure: state vector norm " + std::to_string(n));
    }
    const Vec4 rp = mat_vec(rho.mat(), psi);
    return std::clamp(std::real(inner(psi, rp)), 0.0, 1.0);
}

MeasureReport measure_report(const DensityMatrix& rho) {
    const double c = concurrence(rho);
    const PurityReport p = purity_report(rho);
    return MeasureReport{c, eof_from_concurrence(c), negativity(rho), p.purity,
                         p.participation_ratio};
}

double binary_entropy_bits(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return -(x * std::log2(x) + (1.0 - x) * std::log2(1.0 - x));
}

double shannon_entropy_bits(std::span<const double> p) {
    double s = 0.0;
    for (double v : p) {
        if (v > 0.0) s -= v * std::log2(v);
    }
    return s;
}

} // namespace entlab
