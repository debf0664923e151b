#pragma once

// JSON views of the library's result records. Field order is fixed so that
// identical inputs serialize to identical bytes.

#include "json.hpp"
#include "spectra/constructions.hpp"
#include "spectra/dissociation.hpp"
#include "spectra/energy.hpp"

namespace spectra {

using Json = nlohmann::ordered_json;

Json to_json(const GroupDescriptor& group);
Json to_json(const LargeSpectrum& spectrum);
Json to_json(const EnergyReport& report);
Json to_json(const TmainVerdict& verdict);
Json to_json(const DissociationCertificate& cert);
Json to_json(const RankDRepresentation& rep);
Json to_json(const ConstructionReport& report);

// Elements as they appear in set files (binary strings on the cube).
Json elements_json(const GroupSubset& set);

}  // namespace spectra
