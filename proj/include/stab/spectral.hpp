#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <utility>

#include "stab/profiles.hpp"

namespace stab {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Chebyshev collocation grid with physical-space differentiation matrices.
///
/// Strip: Gauss-Lobatto nodes on [-1,1], nodes(0) = 1 descending to -1.
/// Half space: Gauss-Lobatto nodes mapped linearly onto the computational
/// box [0, Y] with Y = map_scale; nodes(0) = Y is the far boundary where the
/// decay conditions are imposed. The default Y = 10 is a benchmark
/// normalization: the published half-space thresholds correspond to this
/// computational height (see the validation suite).
struct SpectralGrid {
  int n = 0;
  Geometry geometry = Geometry::Strip;
  double map_scale = 0.0;  // box height Y, half space only
  RealVector nodes;        // physical points y_j, descending
  RealMatrix d1, d2, d3, d4;
  RealMatrix d1_xi;  // derivative in the computational variable
  RealVector weights;
};

/// Builds the collocation grid. map_scale is required for the half space.
/// Throws std::invalid_argument for n < 16 or a nonpositive map_scale.
SpectralGrid make_grid(Geometry geometry, int n, double map_scale = 0.0);

/// Samples a scalar function on the grid nodes.
ComplexVector sample(const SpectralGrid& grid,
                     const std::function<double(double)>& f);

/// L2 pairing  integral of f * conj(g)  over the physical domain.
Complex inner_product(const ComplexVector& f, const ComplexVector& g,
                      const SpectralGrid& grid);

/// Componentwise sum of inner_product over a pair of velocity components.
Complex vector_inner_product(const std::pair<ComplexVector, ComplexVector>& u,
                             const std::pair<ComplexVector, ComplexVector>& v,
                             const SpectralGrid& grid);

}  // namespace stab
