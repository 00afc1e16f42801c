#pragma once

#include <cstddef>
#include <vector>

namespace weinstein {

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss rule for the weight (1 - t)^a (1 + t)^b on [-1, 1]
/// (Golub-Welsch). Throws DomainError unless a, b > -1 and n >= 1.
GaussRule gauss_jacobi(std::size_t n, double a, double b);

}  // namespace weinstein
