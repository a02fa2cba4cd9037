#pragma once

#include <algorithm>
#include <boost/math/special_functions/legendre.hpp>
#include <cstddef>
#include <map>
#include <mutex>
#include <vector>

#include "boxmom/core.hpp"

namespace boxmom::quad {

/// Gauss-Legendre rule on [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline Rule make_gauss_legendre(int n) {
  if (n < 1) throw ArgumentError("Gauss-Legendre order must be positive");
  Rule r;
  r.nodes.reserve(n);
  r.weights.reserve(n);
  // boost returns the non-negative zeros in ascending order
  const auto zeros = boost::math::legendre_p_zeros<double>(n);
  std::vector<std::pair<double, double>> pts;
  for (double z : zeros) {
    const double dp = boost::math::legendre_p_prime<double>(n, z);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    pts.emplace_back(z, w);
    if (z != 0.0) pts.emplace_back(-z, w);
  }
  std::sort(pts.begin(), pts.end());
  for (auto [x, w] : pts) {
    r.nodes.push_back(x);
    r.weights.push_back(w);
  }
  return r;
}

/// Cached rules; the cache only grows and entries are never mutated.
inline const Rule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, Rule> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_gauss_legendre(n)).first;
  return it->second;
}

struct Node {
  double x;
  double w;
};

/// Composite Gauss-Legendre nodes on [a, b]: `panels` equal panels of `order` points.
inline std::vector<Node> composite(double a, double b, int panels, int order) {
  const Rule& r = gauss_legendre(order);
  std::vector<Node> out;
  out.reserve(static_cast<std::size_t>(panels) * order);
  const double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double half = 0.5 * width;
    const double mid = lo + half;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      out.push_back({mid + half * r.nodes[i], half * r.weights[i]});
    }
  }
  return out;
}

/// Composite rule with roughly `total` points, split at the given breakpoints
/// so that no panel straddles a kink of the integrand.
inline std::vector<Node> composite_with_breaks(std::vector<double> breaks, int total, int order = 8) {
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-13; }),
               breaks.end());
  std::vector<Node> out;
  if (breaks.size() < 2) return out;
  const double span = breaks.back() - breaks.front();
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i], b = breaks[i + 1];
    const int pts = std::max(order, static_cast<int>(std::lround(total * (b - a) / span)));
    const int panels = std::max(1, pts / order);
    auto part = composite(a, b, panels, order);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace boxmom::quad
