#include "stab/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace stab {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Chebyshev-Gauss-Lobatto first-derivative matrix (Trefethen's cheb) with the
// negative-sum trick on the diagonal.
RealMatrix chebyshev_d1(const RealVector& x) {
  const int n = static_cast<int>(x.size());
  const int big_n = n - 1;
  RealMatrix d(n, n);
  auto c = [&](int i) { return (i == 0 || i == big_n) ? 2.0 : 1.0; };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      d(i, j) = (c(i) / c(j)) * sign / (x(i) - x(j));
    }
  }
  for (int i = 0; i < n; ++i) {
    d(i, i) = 0.0;
    d(i, i) = -d.row(i).sum();
  }
  return d;
}

// Clenshaw-Curtis weights on the same nodes (Trefethen's clencurt).
RealVector clenshaw_curtis(int n) {
  const int big_n = n - 1;
  RealVector w = RealVector::Zero(n);
  RealVector theta(n);
  for (int j = 0; j < n; ++j) theta(j) = kPi * j / big_n;
  RealVector v = RealVector::Ones(n - 2);
  if (big_n % 2 == 0) {
    w(0) = 1.0 / (big_n * big_n - 1.0);
    w(big_n) = w(0);
    for (int k = 1; k <= big_n / 2 - 1; ++k)
      for (int j = 1; j < big_n; ++j)
        v(j - 1) -= 2.0 * std::cos(2.0 * k * theta(j)) / (4.0 * k * k - 1.0);
    for (int j = 1; j < big_n; ++j)
      v(j - 1) -= std::cos(big_n * theta(j)) / (big_n * big_n - 1.0);
  } else {
    w(0) = 1.0 / (big_n * big_n);
    w(big_n) = w(0);
    for (int k = 1; k <= (big_n - 1) / 2; ++k)
      for (int j = 1; j < big_n; ++j)
        v(j - 1) -= 2.0 * std::cos(2.0 * k * theta(j)) / (4.0 * k * k - 1.0);
  }
  for (int j = 1; j < big_n; ++j) w(j) = 2.0 * v(j - 1) / big_n;
  return w;
}

}  // namespace

SpectralGrid make_grid(Geometry geometry, int n, double map_scale) {
  if (n < 16) throw std::invalid_argument("make_grid: n must be at least 16");
  if (geometry == Geometry::HalfSpace && map_scale <= 0.0)
    throw std::invalid_argument("make_grid: half space needs map_scale > 0");

  const int big_n = n - 1;
  RealVector xi(n);
  for (int j = 0; j < n; ++j) xi(j) = std::cos(kPi * j / big_n);

  SpectralGrid grid;
  grid.n = n;
  grid.geometry = geometry;
  grid.d1_xi = chebyshev_d1(xi);
  const RealMatrix d2_xi = grid.d1_xi * grid.d1_xi;
  const RealMatrix d3_xi = d2_xi * grid.d1_xi;
  const RealMatrix d4_xi = d3_xi * grid.d1_xi;
  const RealVector w_xi = clenshaw_curtis(n);

  if (geometry == Geometry::Strip) {
    grid.nodes = xi;
    grid.d1 = grid.d1_xi;
    grid.d2 = d2_xi;
    grid.d3 = d3_xi;
    grid.d4 = d4_xi;
    grid.weights = w_xi;
    return grid;
  }

  // Half space: linear map y = (1 + xi) * Y/2 of the Lobatto nodes onto the
  // computational box [0, Y], Y = map_scale. The far boundary carries the
  // decay conditions at y = Y; the Y value is part of the published benchmark
  // normalization and must not be silently enlarged to "improve" convergence.
  grid.map_scale = map_scale;
  const double s = map_scale / 2.0;
  grid.nodes = (xi.array() + 1.0) * s;  // descending from Y to 0
  grid.d1 = grid.d1_xi / s;
  grid.d2 = d2_xi / (s * s);
  grid.d3 = d3_xi / (s * s * s);
  grid.d4 = d4_xi / (s * s * s * s);
  grid.weights = w_xi * s;
  return grid;
}

ComplexVector sample(const SpectralGrid& grid,
                     const std::function<double(double)>& f) {
  ComplexVector out(grid.n);
  for (int j = 0; j < grid.n; ++j) out(j) = f(grid.nodes(j));
  return out;
}

Complex inner_product(const ComplexVector& f, const ComplexVector& g,
                      const SpectralGrid& grid) {
  if (f.size() != g.size() || f.size() != grid.n)
    throw std::invalid_argument("inner_product: length mismatch");
  Complex acc(0.0, 0.0);
  for (int j = 0; j < grid.n; ++j)
    acc += grid.weights(j) * f(j) * std::conj(g(j));
  return acc;
}

Complex vector_inner_product(const std::pair<ComplexVector, ComplexVector>& u,
                             const std::pair<ComplexVector, ComplexVector>& v,
                             const SpectralGrid& grid) {
  return inner_product(u.first, v.first, grid) +
         inner_product(u.second, v.second, grid);
}

}  // namespace stab
