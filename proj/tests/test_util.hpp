#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "spectra/group.hpp"

namespace testutil {

// Uniform random subset of exactly `size` elements.
inline spectra::GroupSubset random_set(const spectra::GroupDescriptor& g, std::size_t size,
                                       std::mt19937_64& rng) {
  std::vector<spectra::Element> all(g.order());
  for (spectra::Element x = 0; x < g.order(); ++x) all[x] = x;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(std::min<std::size_t>(size, all.size()));
  return spectra::GroupSubset(g, std::move(all));
}

inline spectra::GroupSubset random_set_density(const spectra::GroupDescriptor& g, double density,
                                               std::mt19937_64& rng) {
  return random_set(g, static_cast<std::size_t>(density * static_cast<double>(g.order()) + 0.5), rng);
}

}  // namespace testutil
