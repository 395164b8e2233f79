#pragma once

// JSON for surface files and reports. Rationals are strings "p/q" (or "p");
// on input plain JSON integers are accepted as well.

#include "kbound/concavity_lab.hpp"
#include "kbound/delta_engine.hpp"
#include "kbound/errors.hpp"
#include "kbound/ns_lattice.hpp"
#include "kbound/rayscan.hpp"
#include "kbound/verdicts.hpp"
#include "kbound/zariski.hpp"

#include "json.hpp"

#include <string>

namespace nlohmann {
template <>
struct adl_serializer<mpq_class> {
    static void to_json(json& j, const mpq_class& q);
    static void from_json(const json& j, mpq_class& q);
};
}  // namespace nlohmann

namespace kbound {

using json = nlohmann::json;

void to_json(json& j, const DivClass& d);
void from_json(const json& j, DivClass& d);
void to_json(json& j, const Poly& p);
void from_json(const json& j, Poly& p);
void to_json(json& j, const PiecewisePoly& p);
void from_json(const json& j, PiecewisePoly& p);

void to_json(json& j, const CurveEntry& c);
void from_json(const json& j, CurveEntry& c);
/// The surface file format. from_json fills in missing self-intersections and
/// validates the result.
void to_json(json& j, const SurfaceModel& s);
void from_json(const json& j, SurfaceModel& s);

/// {"strict_transforms": [{"name", "class", "multiplicity"}], "assert_complete"}
ExplicitPoint explicit_point_from_json(const json& j, std::size_t blown_rank);

void to_json(json& j, const SupportTerm& t);
void from_json(const json& j, SupportTerm& t);
void to_json(json& j, const ZariskiDecomp& z);
void from_json(const json& j, ZariskiDecomp& z);

void to_json(json& j, const RayInvariants& r);
void from_json(const json& j, RayInvariants& r);
void to_json(json& j, const ChainCheck& c);
void from_json(const json& j, ChainCheck& c);
void to_json(json& j, const EqualityClass& e);
void from_json(const json& j, EqualityClass& e);
void to_json(json& j, const Witness& w);
void from_json(const json& j, Witness& w);
void to_json(json& j, const InvariantReport& r);
void from_json(const json& j, InvariantReport& r);
void to_json(json& j, const LiftReport& r);
void from_json(const json& j, LiftReport& r);

void to_json(json& j, const VerdictCheck& c);
void from_json(const json& j, VerdictCheck& c);
void to_json(json& j, const Verdict& v);
void from_json(const json& j, Verdict& v);
void to_json(json& j, const K3TauBound& k);
void from_json(const json& j, K3TauBound& k);

void to_json(json& j, const LemmaCheck& c);
void to_json(json& j, const Node& n);
void from_json(const json& j, Node& n);

/// "builtin:<name>", a bare built-in name, or a path to a surface file.
SurfaceModel load_surface(const std::string& spec);
SurfaceModel read_surface_file(const std::string& path);

template <class T>
std::string dump(const T& value, int indent = 2) {
    return json(value).dump(indent);
}

template <class T>
T parse_as(const std::string& text) {
    try {
        return json::parse(text).get<T>();
    } catch (const json::exception& e) {
        throw InputError(std::string("bad JSON: ") + e.what());
    }
}

}  // namespace kbound
