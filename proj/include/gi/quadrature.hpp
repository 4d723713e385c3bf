#ifndef GI_QUADRATURE_HPP
#define GI_QUADRATURE_HPP

#include <cmath>
#include <functional>

namespace gi {

// Adaptive Gauss-Kronrod 15(7) panels.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double abs_tol = 1e-12, int max_depth = 30);

} // namespace gi

#endif
