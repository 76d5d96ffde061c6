#ifndef STRONGMORSE_SERIALIZE_HPP
#define STRONGMORSE_SERIALIZE_HPP

#include <json.hpp>

#include "strongmorse/complex.hpp"
#include "strongmorse/homology.hpp"
#include "strongmorse/matching.hpp"
#include "strongmorse/poset.hpp"
#include "strongmorse/reduce.hpp"
#include "strongmorse/strong_morse.hpp"

namespace smorse {

using Json = nlohmann::json;

// All simplices are written with the input labels of K, as sorted label
// arrays. Readers resolve labels against K and throw UnknownVertex,
// UnknownSimplex or ParseFailure.

Json simplex_to_json(const SimplicialComplex& k, const Simplex& s);
Simplex simplex_from_json(const SimplicialComplex& k, const Json& j);

/// {"pairs":[{"lower":[..],"upper":[..]}, ...]}
Json matching_to_json(const SimplicialComplex& k, const Matching& m);
/// Accepts the object form above or a bare array of [lower, upper] pairs.
Matching matching_from_json(const SimplicialComplex& k, const Json& j);

/// {"elements":[{"members":[[..],..],"grade":d|null}], "covers":[[lo,hi],..]}
Json poset_to_json(const SimplicialComplex& k, const FinitePoset& p);
FinitePoset poset_from_json(const SimplicialComplex& k, const Json& j);

Json classification_to_json(const SimplicialComplex& k, const VertexClassification& c);

/// {"steps":[...], "matching":{..}, "critical_set":[..], "implied_g":[[label,value],..]|null}
Json trace_to_json(const SimplicialComplex& k, const ReductionTrace& t);
ReductionTrace trace_from_json(const SimplicialComplex& k, const Json& j);

/// Method, sizes, core facets or critical poset, and the trace. The wall
/// time is written only when `include_timing` is set.
Json core_result_to_json(const SimplicialComplex& k, const CoreResult& r, bool include_timing = false,
                         bool include_trace = true);

/// {"betti":[...],"torsion":[[...],...]}
Json homology_to_json(const HomologyProfile& h);
HomologyProfile homology_from_json(const Json& j);

Json verification_to_json(const VerificationReport& v);

} // namespace smorse

#endif
