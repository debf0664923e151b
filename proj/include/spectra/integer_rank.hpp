#pragma once

// Exact rank of small integer matrices over the rationals.

#include <cstdint>
#include <vector>

namespace spectra {

using IntRow = std::vector<std::int64_t>;

// Fraction-free Gaussian elimination. Rows may have any common length.
std::size_t rational_rank(const std::vector<IntRow>& rows);

// Rank of a growing row set; rows are kept reduced against each other.
class IncrementalRank {
 public:
  explicit IncrementalRank(std::size_t width) : width_(width) {}

  // Returns true when `row` is independent of the rows added so far.
  bool try_add(const IntRow& row);
  std::size_t rank() const noexcept { return basis_.size(); }
  std::size_t width() const noexcept { return width_; }

 private:
  std::size_t width_;
  std::vector<std::vector<__int128>> basis_;
  std::vector<std::size_t> pivots_;
};

}  // namespace spectra
