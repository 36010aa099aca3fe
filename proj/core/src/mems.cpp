#include "entlab/mems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace entlab {

namespace {

void validate(const std::array<double, 4>& p) {
    for (int i = 0; i < 4; ++i) {
        if (!std::isfinite(p[static_cast<size_t>(i)])) {
            throw InvalidSpectrum("spectrum entries must be finite");
        }
    }
    for (int i = 0; i < 3; ++i) {
        if (p[static_cast<size_t>(i)] < p[static_cast<size_t>(i) + 1] - 1e-12) {
            throw InvalidSpectrum("spectrum not sorted descending");
        }
    }
    if (p[3] < -1e-12) throw InvalidSpectrum("spectrum has a negative entry");
    const double sum = p[0] + p[1] + p[2] + p[3];
    if (std::abs(sum - 1.0) > 1e-12) {
        throw InvalidSpectrum("spectrum sums to " + std::to_string(sum) + ", expected 1");
    }
}

} // namespace

Spectrum::Spectrum(double p1, double p2, double p3, double p4) : p_{p1, p2, p3, p4} {
    validate(p_);
}

Spectrum::Spectrum(const std::array<double, 4>& p) : p_(p) { validate(p_); }

Spectrum Spectrum::sorted_normalized(std::array<double, 4> raw) {
    for (double& v : raw) {
        if (!std::isfinite(v)) throw InvalidSpectrum("spectrum entries must be finite");
        if (v < -1e-10) {
            throw InvalidSpectrum("spectrum entry " + std::to_string(v) + " below -1e-10");
        }
        v = std::max(v, 0.0);
    }
    std::sort(raw.begin(), raw.end(), std::greater<double>());
    const double sum = raw[0] + raw[1] + raw[2] + raw[3];
    if (sum <= 0.0) throw InvalidSpectrum("spectrum sum must be positive");
    for (double& v : raw) v /= sum;
    return Spectrum(raw);
}

double Spectrum::purity() const {
    return p_[0] * p_[0] + p_[1] * p_[1] + p_[2] * p_[2] + p_[3] * p_[3];
}

DensityMatrix build_mems(const Spectrum& p, const MemsVariant& variant) {
    std::array<Vec4, 4> basis;
    if (variant.form == MemsForm::Psi) {
        basis = {states::psi_minus(), states::ket00(), states::psi_plus(), states::ket11()};
        if (variant.swapped) {
            basis = {states::psi_plus(), states::ket11(), states::psi_minus(), states::ket00()};
        }
    } else {
        basis = {states::phi_minus(), states::ket01(), states::phi_plus(), states::ket10()};
        if (variant.swapped) {
            basis = {states::phi_plus(), states::ket10(), states::phi_minus(), states::ket01()};
        }
    }
    ComplexMatrix m(4);
    for (int i = 0; i < 4; ++i) m += p[i] * projector(basis[static_cast<size_t>(i)]);
    return DensityMatrix::trusted(hermitize(m));
}

StarValue c_star(const Spectrum& p) {
    const double raw = p.p1() - p.p3() - 2.0 * std::sqrt(p.p2() * p.p4());
    return StarValue{std::max(0.0, raw), raw};
}

StarValue neg_star(const Spectrum& p) {
    const double d13 = p.p1() - p.p3();
    const double d24 = p.p2() - p.p4();
    const double raw = -p.p2() - p.p4() + std::sqrt(d13 * d13 + d24 * d24);
    return StarValue{std::max(0.0, raw), raw};
}

double eof_upper_bound(const Spectrum& p) { return eof_from_concurrence(c_star(p).clipped); }

DensityMatrix build_werner(double p1) {
    if (!(p1 >= 0.25 - 1e-12 && p1 <= 1.0 + 1e-12)) {
        throw DomainError("werner weight must lie in [1/4, 1], got " + std::to_string(p1));
    }
    p1 = std::clamp(p1, 0.25, 1.0);
    const double q = (1.0 - p1) / 3.0;
    ComplexMatrix m = p1 * projector(states::psi_minus());
    m += q * projector(states::psi_plus());
    m += q * projector(states::phi_minus());
    m += q * projector(states::phi_plus());
    return DensityMatrix::trusted(hermitize(m));
}

SpecialConditionReport special_condition(const Spectrum& p) {
    const double s = std::sqrt(p.p2() * p.p4());
    const double rhs = p.p2() + p.p4() - s;
    const bool satisfied = std::abs(p.p3() - rhs) <= 1e-10;
    const std::array<double, 4> rho4{p.p3() + 2.0 * s, p.p2(), p.p3(), p.p4()};
    const double weight = rho4[0] + rho4[1] + rho4[2] + rho4[3];
    double purity = std::numeric_limits<double>::quiet_NaN();
    if (weight > 1e-15) {
        const double ss =
            rho4[0] * rho4[0] + rho4[1] * rho4[1] + rho4[2] * rho4[2] + rho4[3] * rho4[3];
        purity = ss / (weight * weight);
    }
    return SpecialConditionReport{satisfied, rho4, purity};
}

} // namespace entlab
