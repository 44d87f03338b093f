#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "elastoibvp/piecewise.hpp"

namespace testing {

/// Fixed-seed generator so property tests are reproducible.
class Gen {
 public:
  explicit Gen(std::uint64_t seed = 20240611) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  /// Up to `max_pieces` constant or affine pieces with breakpoints in (0, span).
  /// The last piece is constant so the data stay bounded.
  elastoibvp::PiecewiseFn piecewise(int max_pieces, double span, double lo, double hi) {
    const int n = integer(1, max_pieces);
    std::vector<double> starts{0.0};
    for (int i = 1; i < n; ++i) starts.push_back(uniform(0.0, span));
    std::sort(starts.begin(), starts.end());
    starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
    std::vector<elastoibvp::Piece> pieces;
    for (std::size_t i = 0; i < starts.size(); ++i) {
      if (i + 1 == starts.size() || coin()) {
        pieces.push_back(elastoibvp::Piece::constant(uniform(lo, hi)));
      } else {
        pieces.push_back(elastoibvp::Piece::affine(uniform(-1.0, 1.0), uniform(lo, hi)));
      }
    }
    return {starts, pieces};
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace testing
