#ifndef ENTLAB_QUADRATURE_HPP
#define ENTLAB_QUADRATURE_HPP

#include <functional>

namespace entlab {

/// Globally adaptive Gauss-Kronrod 15(7) integration of f on [a, b].
/// Splits the worst segment until the summed error estimate meets
/// max(abs_tol, rel_tol * |integral|); throws QuadratureFailure if the
/// segment budget is exhausted first.
double integrate_gk15(const std::function<double(double)>& f, double a, double b,
                      double rel_tol = 1e-10, double abs_tol = 1e-14);

} // namespace entlab

#endif
