#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "custody/assignment.hpp"

namespace custody::kernels::detail {

// Pascal's triangle up to C(n, r_max) in 64 bits, saturating on overflow.
class BinomialTable {
 public:
  BinomialTable(std::uint32_t n, std::uint32_t r_max) : n_(n), width_(r_max + 1), cells_((n + 1) * width_, 0) {
    for (std::uint32_t a = 0; a <= n; ++a) {
      at(a, 0) = 1;
      for (std::uint32_t b = 1; b <= r_max && b <= a; ++b) {
        const std::uint64_t left = at(a - 1, b - 1);
        const std::uint64_t up = b <= a - 1 ? at(a - 1, b) : 0;
        at(a, b) = left > std::numeric_limits<std::uint64_t>::max() - up ? std::numeric_limits<std::uint64_t>::max()
                                                                          : left + up;
      }
    }
  }

  std::uint64_t operator()(std::uint32_t a, std::uint32_t b) const { return b >= width_ || a > n_ ? 0 : cells_[a * width_ + b]; }

  // Lexicographic rank of a sorted r-subset of {0..n-1}.
  std::uint64_t rank(std::span<const NodeId> subset) const {
    const auto r = static_cast<std::uint32_t>(subset.size());
    std::uint64_t tail = 0;
    for (std::uint32_t i = 0; i < r; ++i) tail += (*this)(n_ - 1 - subset[i], r - i);
    return (*this)(n_, r) - 1 - tail;
  }

 private:
  std::uint64_t& at(std::uint32_t a, std::uint32_t b) { return cells_[a * width_ + b]; }

  std::uint32_t n_;
  std::uint32_t width_;
  std::vector<std::uint64_t> cells_;
};

}  // namespace custody::kernels::detail
