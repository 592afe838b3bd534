#pragma once
// JSON forms of groupoids, functors, truncated simplicial groupoids and
// incidence oracles.  Rationals are always "p/q" strings.

#include "decomp/incidence.hpp"
#include "decomp/simplicial.hpp"

#include "json.hpp"

#include <string>

namespace decomp {

using Json = nlohmann::json;

// {"objects", "morphisms":[{"id","src","tgt"}], "identities", "compose", "inverse"}
Json groupoid_to_json(const FiniteGroupoid& g);
GroupoidTable table_from_json(const Json& j);                 // ParseError
FiniteGroupoid groupoid_from_json(const Json& j,
                                  std::map<std::string, Morphism>* ids = nullptr);  // ParseError, InvalidGroupoid

// {"objects":{x: Fx}, "morphisms":{m: Fm}} with morphism ids as in groupoid_to_json
Json functor_to_json(const GroupoidFunctor& f);
GroupoidFunctor functor_from_json(const Json& j, GroupoidPtr dom, const std::map<std::string, Morphism>& dom_ids,
                                  GroupoidPtr cod, const std::map<std::string, Morphism>& cod_ids);

// {"K", "levels", "faces":{"n,i"}, "degeneracies":{"n,i"}} plus optional
// "meta" with class ids, sizes and the size bound (keyed by object name)
Json tsg_to_json(const TSG& X);
TSG tsg_from_json(const Json& j);

Json oracle_to_json(const IncidenceOracle& O);
IncidenceOracle oracle_from_json(const Json& j);

Json function_to_json(const IncidenceOracle& O, const IncidenceFunction& f);  // id -> "p/q"
IncidenceFunction function_from_json(const IncidenceOracle& O, const Json& j);  // missing ids are 0
Json tensor_to_json(const IncidenceOracle& O, const TensorVector& t);  // [[a, b, "p/q"]...]

// 64-bit FNV-1a over a compact rendering; stable across runs
std::string fingerprint(const TSG& X);
std::string fingerprint(const IncidenceOracle& O);
std::string fnv1a_hex(const std::string& s);

Json parse_json_file(const std::string& path);  // ParseError

}  // namespace decomp
