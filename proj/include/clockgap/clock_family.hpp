#ifndef CLOCKGAP_CLOCK_FAMILY_HPP
#define CLOCKGAP_CLOCK_FAMILY_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "clockgap/errors.hpp"
#include "clockgap/tridiagonal.hpp"

namespace clockgap {

template <typename Scalar = double>
struct ClockBlock {
  Scalar b;
  int multiplicity;

  bool operator==(const ClockBlock&) const = default;
};

/// Block-diagonal clock family: a direct sum of H_b(s) blocks of common
/// dimension d. Exactly one block has b = 0 (multiplicity 1); all others have
/// b >= 1. Blocks are kept sorted by b with equal weights merged, so the
/// multiset {1, 1} and {1 x2} are the same family.
template <typename Scalar = double>
class ClockFamilySpec {
 public:
  using Block = ClockBlock<Scalar>;

  ClockFamilySpec(Eigen::Index dim, std::vector<Block> blocks) : dim_(dim) {
    detail::require_dim(dim, "ClockFamilySpec");
    if (blocks.empty()) {
      throw ParameterError("ClockFamilySpec: block list must be nonempty");
    }
    for (const Block& blk : blocks) {
      if (blk.multiplicity < 1) {
        throw ParameterError("ClockFamilySpec: multiplicity must be >= 1");
      }
      if (!std::isfinite(static_cast<double>(blk.b))) {
        throw ParameterError("ClockFamilySpec: boundary weight must be finite");
      }
    }
    const auto zeros = std::count_if(blocks.begin(), blocks.end(),
                                     [](const Block& blk) { return blk.b == Scalar(0); });
    if (zeros != 1) {
      throw ParameterError("ClockFamilySpec: exactly one b = 0 block is required");
    }
    for (const Block& blk : blocks) {
      if (blk.b == Scalar(0) && blk.multiplicity != 1) {
        throw ParameterError("ClockFamilySpec: the b = 0 block must have multiplicity 1");
      }
      if (blk.b != Scalar(0) && !(blk.b >= Scalar(1))) {
        throw ParameterError("ClockFamilySpec: nonzero boundary weights must be >= 1");
      }
    }
    std::sort(blocks.begin(), blocks.end(),
              [](const Block& x, const Block& y) { return x.b < y.b; });
    for (const Block& blk : blocks) {
      if (!blocks_.empty() && blocks_.back().b == blk.b) {
        blocks_.back().multiplicity += blk.multiplicity;
      } else {
        blocks_.push_back(blk);
      }
    }
  }

  /// Family with the mandatory b = 0 block prepended to `excited`.
  static ClockFamilySpec with_ground_block(Eigen::Index dim, std::vector<Block> excited) {
    excited.insert(excited.begin(), Block{Scalar(0), 1});
    return ClockFamilySpec(dim, std::move(excited));
  }

  Eigen::Index dim() const noexcept { return dim_; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }

  /// Total number of blocks counted with multiplicity (2^m in the circuit setting).
  long long block_count() const {
    long long total = 0;
    for (const Block& blk : blocks_) total += blk.multiplicity;
    return total;
  }

  bool operator==(const ClockFamilySpec&) const = default;

 private:
  Eigen::Index dim_;
  std::vector<Block> blocks_;
};

}  // namespace clockgap

#endif  // CLOCKGAP_CLOCK_FAMILY_HPP
