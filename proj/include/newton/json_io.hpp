#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "newton/combid.hpp"
#include "newton/facering.hpp"
#include "newton/fan.hpp"
#include "newton/grobner.hpp"
#include "newton/localalg.hpp"
#include "newton/polylattice.hpp"
#include "newton/residue.hpp"

namespace newton {

using Json = nlohmann::json;  // std::map objects: keys come out sorted

/// Rationals are always strings "p" or "p/q".
Json to_json(const Rational& q);
Json to_json(const Integer& z);
Json to_json(const RatVector& v);
Json to_json(const SparsePoly& p);
Json to_json(const NewtonPolyhedron& delta);
Json to_json(const NewtonPolyhedron& delta, const FaceDescriptor& face);
Json to_json(const Cone& c);
Json to_json(const Fan& fan);
Json to_json(const KbarPresentation& k);
Json to_json(const SocleOrderReport& r);
Json to_json(const MultiplicationReport& r);
Json to_json(const ResidueResult& r);
Json to_json(const NondegeneracyReport& r, const NewtonPolyhedron& delta);
Json to_json(const Lemma31Report& r);
Json to_json(const Corollary32Report& r);
Json to_json(const KoszulReport& r);
Json to_json(const TraceVolumeReport& r);
Json to_json(const WeightSystem& ws);
Json to_json(const Thm13Report& r);

/// Fans are read as {"ambient": n, "rays": [[..]], "cones": [[ray indices]]}.
/// Throws InputError on malformed data.
Fan fan_from_json(const Json& j);
SparsePoly poly_from_json(const Json& j);

}  // namespace newton
