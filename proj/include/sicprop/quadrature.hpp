#ifndef SICPROP_QUADRATURE_HPP
#define SICPROP_QUADRATURE_HPP

#include <functional>
#include <vector>

#include "sicprop/core.hpp"

namespace sicprop {

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
  explicit GaussLegendre(int n);
};

// Nodes/weights mapped to [a, b].
void gauss_legendre_on(int n, double a, double b, std::vector<double>& x,
                       std::vector<double>& w);

// Composite Gauss-Legendre integral of a complex-valued integrand over
// [a, b] split into `panels` equal panels with `order` nodes each.
Complex integrate(const std::function<Complex(double)>& f, double a, double b,
                  int panels = 16, int order = 16);

double integrate_real(const std::function<double(double)>& f, double a,
                      double b, int panels = 16, int order = 16);

} // namespace sicprop

#endif
