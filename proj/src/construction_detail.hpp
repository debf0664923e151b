#pragma once

// Helpers shared by the cyclic and cube constructions.

#include <string>

#include "spectra/constructions.hpp"
#include "spectra/energy.hpp"

namespace spectra::detail {

void add_check(ConstructionReport& rep, std::string name, double measured, double bound,
               std::string relation, bool asserted);

// Fills rep.spectrum / boundary marginals from the transform of rep.set and
// re-evaluates 64 coefficients by direct summation.
LargeSpectrum record_spectrum(ConstructionReport& rep, const SpectrumTable& spectrum,
                              std::uint64_t seed);

bool subset_of(const GroupSubset& a, const GroupSubset& b);

// Verdict from the asserted checks plus target equality, if any.
void settle_verdict(ConstructionReport& rep);

}  // namespace spectra::detail
