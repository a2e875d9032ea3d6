#pragma once

#include <json.hpp>

#include "branchcov/exhaustion.hpp"
#include "branchcov/hurwitz.hpp"
#include "branchcov/layered.hpp"
#include "branchcov/perm.hpp"
#include "branchcov/search.hpp"
#include "branchcov/surface.hpp"

namespace branchcov {

using Json = nlohmann::json;

// Documents. Readers throw ParseError on malformed JSON shapes and the
// domain errors (InvalidPermutation, NotASurface, ...) on bad values.
Json to_json(const Perm& p);
Perm perm_from_json(const Json& j);

Json to_json(const ClosedSurface& s);
ClosedSurface surface_from_json(const Json& j);

Json to_json(const HurwitzData& h);
HurwitzData hurwitz_from_json(const Json& j);

Json to_json(const ExhaustionGraph& g);
ExhaustionGraph exhaustion_from_json(const Json& j);

Json to_json(const LayeredCover& c);
LayeredCover layered_from_json(const Json& j);

/// The document inside a CLI envelope (its "result", or the result's
/// "document" member); any other value is returned unchanged.
Json unwrap_document(const Json& j);

// Reports (write only).
Json to_json(const ValidationReport& r);
Json to_json(const CoverSummary& s);
Json to_json(const CensusRow& row);
Json to_json(const AuditReport& r);
Json to_json(const UniversalBaseReport& r);
Json to_json(const NormalizedExhaustion& e);
Json to_json(const EndCount& c);
Json to_json(const LayeredReport& r);
Json to_json(const ComposedReport& r);

}  // namespace branchcov
