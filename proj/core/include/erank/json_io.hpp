// JSON forms of reports and polynomial systems.

#ifndef ERANK_JSON_IO_HPP
#define ERANK_JSON_IO_HPP

#include "json.hpp"

#include "erank/equivalence.hpp"
#include "erank/geometry.hpp"
#include "erank/normal_forms.hpp"

namespace erank {

using Json = nlohmann::ordered_json;

Json to_json(const RankReport& r);
Json to_json(const EquivReport& r);
Json to_json(const VarietyPresentation& vp);
Json to_json(const DefinableSet& s, const GaloisField& field);
Json to_json(const FibreDimEstimate& e);

// Generators are parsed with the term grammar. Throws InvalidArgumentError on
// missing fields and ParseError on bad terms.
VarietyPresentation system_from_json(const Json& j);

} // namespace erank

#endif
