#pragma once

#include "pcgl/poisson.hpp"

#include <utility>

namespace pcgl {

// O(M_{m,n}) with x_{(r-1)n+c} = t_rc, the torus (K^x)^{m+n} and h* filled in.
PoissonPresentation build_matrix_poisson(int m, int n);

// {x_k, x_j} = q_kj x_k x_j with the standard (K^x)^N action; q must be skew.
PoissonPresentation build_affine_space(int n, const RatMatrix& q);

using Interval = std::pair<int, int>; // 1-based, inclusive

// Delta_{rows, cols} in the variables of build_matrix_poisson(m, n), by Laplace expansion.
// Error("ShapeMismatch") when the intervals differ in length or leave the grid.
MvLaurent solid_minor(int m, int n, Interval rows, Interval cols);

} // namespace pcgl
