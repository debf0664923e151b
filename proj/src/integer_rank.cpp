#include "spectra/integer_rank.hpp"

#include <algorithm>

#include "spectra/errors.hpp"

namespace spectra {

namespace {

using Wide = __int128;

Wide abs_wide(Wide v) { return v < 0 ? -v : v; }

Wide gcd_wide(Wide a, Wide b) {
  a = abs_wide(a);
  b = abs_wide(b);
  while (b != 0) {
    const Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

void normalize(std::vector<Wide>& row) {
  Wide g = 0;
  for (Wide v : row) g = gcd_wide(g, v);
  if (g > 1)
    for (Wide& v : row) v /= g;
}

std::vector<Wide> widen(const IntRow& row) { return {row.begin(), row.end()}; }

}  // namespace

std::size_t rational_rank(const std::vector<IntRow>& rows) {
  if (rows.empty()) return 0;
  const std::size_t width = rows.front().size();
  IncrementalRank r(width);
  for (const IntRow& row : rows) r.try_add(row);
  return r.rank();
}

bool IncrementalRank::try_add(const IntRow& input) {
  if (input.size() != width_) throw PreconditionError("row width mismatch");
  std::vector<Wide> row = widen(input);
  for (std::size_t b = 0; b < basis_.size(); ++b) {
    const std::size_t p = pivots_[b];
    if (row[p] == 0) continue;
    const Wide a = basis_[b][p];
    const Wide c = row[p];
    for (std::size_t j = 0; j < width_; ++j) row[j] = row[j] * a - basis_[b][j] * c;
    normalize(row);
  }
  const auto it = std::find_if(row.begin(), row.end(), [](Wide v) { return v != 0; });
  if (it == row.end()) return false;
  pivots_.push_back(static_cast<std::size_t>(it - row.begin()));
  basis_.push_back(std::move(row));
  return true;
}

}  // namespace spectra
