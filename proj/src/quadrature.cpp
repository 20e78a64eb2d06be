#include "sicprop/quadrature.hpp"

#include <cmath>

namespace sicprop {

// Newton iteration on the Legendre recurrence; nodes accurate to ~1e-15.
GaussLegendre::GaussLegendre(int n) {
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

void gauss_legendre_on(int n, double a, double b, std::vector<double>& x,
                       std::vector<double>& w) {
  static thread_local int cached_n = -1;
  static thread_local GaussLegendre cached(2);
  if (cached_n != n) {
    cached = GaussLegendre(n);
    cached_n = n;
  }
  x.resize(n);
  w.resize(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    x[i] = mid + half * cached.nodes[i];
    w[i] = half * cached.weights[i];
  }
}

Complex integrate(const std::function<Complex(double)>& f, double a, double b,
                  int panels, int order) {
  Complex total = 0.0;
  std::vector<double> x, w;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    gauss_legendre_on(order, a + p * h, a + (p + 1) * h, x, w);
    for (int i = 0; i < order; ++i) total += w[i] * f(x[i]);
  }
  return total;
}

double integrate_real(const std::function<double(double)>& f, double a,
                      double b, int panels, int order) {
  return integrate([&](double x) { return Complex(f(x), 0.0); }, a, b, panels,
                   order)
      .real();
}

} // namespace sicprop
