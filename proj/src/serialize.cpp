#include "kbound/serialize.hpp"

#include "kbound/errors.hpp"

#include <fstream>
#include <sstream>

namespace nlohmann {

void adl_serializer<mpq_class>::to_json(json& j, const mpq_class& q) { j = kbound::to_string(q); }

void adl_serializer<mpq_class>::from_json(const json& j, mpq_class& q) {
    if (j.is_number_integer()) {
        q = mpq_class(mpz_class(j.dump()));
        return;
    }
    if (!j.is_string()) throw kbound::InputError("expected a rational string, got " + j.dump());
    q = kbound::parse_rat(j.get<std::string>());
}

}  // namespace nlohmann

namespace kbound {

namespace {

template <class T>
std::optional<T> opt(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    return it->get<T>();
}

template <class T>
void put(json& j, const char* key, const std::optional<T>& v) {
    j[key] = v ? json(*v) : json(nullptr);
}

}  // namespace

void to_json(json& j, const DivClass& d) { j = d.coords; }
void from_json(const json& j, DivClass& d) {
    if (!j.is_array()) throw InputError("a class is a JSON array, got " + j.dump());
    d = DivClass(j.get<std::vector<Rat>>());
}

void to_json(json& j, const Poly& p) { j = p.coeffs(); }
void from_json(const json& j, Poly& p) { p = Poly(j.get<std::vector<Rat>>()); }

void to_json(json& j, const PiecewisePoly& p) { j = json{{"breakpoints", p.breakpoints}, {"pieces", p.pieces}}; }
void from_json(const json& j, PiecewisePoly& p) {
    j.at("breakpoints").get_to(p.breakpoints);
    j.at("pieces").get_to(p.pieces);
    if (!p.empty() || !p.breakpoints.empty()) p.validate();
}

void to_json(json& j, const CurveEntry& c) {
    j = json{{"name", c.name}, {"class", c.cls}, {"self_int", c.self_int}};
    if (c.arith_genus) j["genus"] = *c.arith_genus;
}
void from_json(const json& j, CurveEntry& c) {
    j.at("name").get_to(c.name);
    j.at("class").get_to(c.cls);
    c.self_int = opt<Rat>(j, "self_int").value_or(Rat(0));
    c.arith_genus = opt<int>(j, "genus");
}

void to_json(json& j, const SurfaceModel& s) {
    j = json{{"name", s.name},
             {"rank", s.rank},
             {"gram", s.gram},
             {"canonical", s.canonical},
             {"ample_ref", s.ample_ref},
             {"curves", s.curves},
             {"catalog_complete", s.catalog_complete}};
}

void from_json(const json& j, SurfaceModel& s) {
    s = SurfaceModel{};
    s.name = j.value("name", std::string("unnamed"));
    j.at("gram").get_to(s.gram);
    s.rank = j.contains("rank") ? j.at("rank").get<std::size_t>() : s.gram.size();
    if (s.gram.size() != s.rank) throw InputError("surface: gram has " + std::to_string(s.gram.size()) + " rows, rank is " + std::to_string(s.rank));
    for (const auto& row : s.gram)
        if (row.size() != s.rank) throw InputError("surface: gram is not square");
    j.at("canonical").get_to(s.canonical);
    j.at("ample_ref").get_to(s.ample_ref);
    if (s.canonical.rank() != s.rank || s.ample_ref.rank() != s.rank)
        throw InputError("surface: canonical/ample_ref rank mismatch");
    s.catalog_complete = j.value("catalog_complete", false);
    if (j.contains("curves")) {
        for (const auto& c : j.at("curves")) {
            CurveEntry raw = c.get<CurveEntry>();
            if (raw.cls.rank() != s.rank) throw InputError("surface: curve " + raw.name + " has wrong rank");
            CurveEntry made = s.make_curve(raw.name, raw.cls, raw.arith_genus);
            if (c.contains("self_int") && raw.self_int != made.self_int)
                throw InputError("surface: curve " + raw.name + " self_int " + to_string(raw.self_int) +
                                 " disagrees with the gram matrix (" + to_string(made.self_int) + ")");
            s.curves.push_back(std::move(made));
        }
    }
    s.validate();
}

ExplicitPoint explicit_point_from_json(const json& j, std::size_t blown_rank) {
    try {
        ExplicitPoint p;
        p.assert_complete = j.value("assert_complete", false);
        for (const auto& t : j.at("strict_transforms")) {
            StrictTransform st;
            t.at("name").get_to(st.name);
            t.at("class").get_to(st.cls);
            t.at("multiplicity").get_to(st.multiplicity);
            if (st.cls.rank() != blown_rank)
                throw InputError("point: strict transform " + st.name + " must have rank " + std::to_string(blown_rank));
            p.strict_transforms.push_back(std::move(st));
        }
        return p;
    } catch (const json::exception& e) {
        throw InputError(std::string("point: ") + e.what());
    }
}

void to_json(json& j, const SupportTerm& t) { j = json{{"curve", t.curve}, {"coeff", t.coeff}}; }
void from_json(const json& j, SupportTerm& t) {
    j.at("curve").get_to(t.curve);
    j.at("coeff").get_to(t.coeff);
}

void to_json(json& j, const ZariskiDecomp& z) {
    j = json{{"positive", z.positive},
             {"negative_support", z.negative_support},
             {"support_gram", z.support_gram},
             {"leading_minors", z.leading_minors},
             {"trusted", z.trusted}};
}
void from_json(const json& j, ZariskiDecomp& z) {
    j.at("positive").get_to(z.positive);
    j.at("negative_support").get_to(z.negative_support);
    j.at("support_gram").get_to(z.support_gram);
    j.at("leading_minors").get_to(z.leading_minors);
    j.at("trusted").get_to(z.trusted);
}

void to_json(json& j, const RayInvariants& r) {
    j = json{{"eps", r.eps},
             {"eta", r.eta},
             {"tau", r.tau},
             {"s_inv", r.s_inv},
             {"l_squared", r.l_squared},
             {"vol_profile", r.vol_profile},
             {"restricted_profile", r.restricted_profile},
             {"log_discrepancy", r.log_discrepancy},
             {"supports", r.supports},
             {"trusted", r.trusted}};
    put(j, "fixed_deg", r.fixed_deg);
}
void from_json(const json& j, RayInvariants& r) {
    j.at("eps").get_to(r.eps);
    j.at("eta").get_to(r.eta);
    j.at("tau").get_to(r.tau);
    j.at("s_inv").get_to(r.s_inv);
    r.fixed_deg = opt<Rat>(j, "fixed_deg");
    j.at("l_squared").get_to(r.l_squared);
    j.at("vol_profile").get_to(r.vol_profile);
    j.at("restricted_profile").get_to(r.restricted_profile);
    j.at("log_discrepancy").get_to(r.log_discrepancy);
    j.at("supports").get_to(r.supports);
    j.at("trusted").get_to(r.trusted);
}

void to_json(json& j, const ChainCheck& c) {
    j = json{{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"holds", c.holds}, {"equality", c.equality}};
}
void from_json(const json& j, ChainCheck& c) {
    j.at("name").get_to(c.name);
    j.at("lhs").get_to(c.lhs);
    j.at("rhs").get_to(c.rhs);
    j.at("holds").get_to(c.holds);
    j.at("equality").get_to(c.equality);
}

void to_json(json& j, const EqualityClass& e) {
    j = json{{"kind", to_string(e.kind)}};
    put(j, "value", e.value);
    put(j, "curve", e.curve);
    put(j, "tau", e.tau);
}
void from_json(const json& j, EqualityClass& e) {
    e.kind = parse_equality_kind(j.at("kind").get<std::string>());
    e.value = opt<Rat>(j, "value");
    e.curve = opt<std::string>(j, "curve");
    e.tau = opt<Rat>(j, "tau");
}

void to_json(json& j, const Witness& w) { j = json{{"name", w.name}, {"class", w.cls}, {"role", w.role}}; }
void from_json(const json& j, Witness& w) {
    j.at("name").get_to(w.name);
    j.at("class").get_to(w.cls);
    j.at("role").get_to(w.role);
}

void to_json(json& j, const InvariantReport& r) {
    j = json{{"surface", r.surface},
             {"ample", r.ample},
             {"ray", r.ray},
             {"lambda_bound", r.lambda_bound},
             {"chain", r.chain},
             {"equality_class", r.equality_class},
             {"witnesses", r.witnesses},
             {"trusted", r.trusted},
             {"a_over_s", r.a_over_s},
             {"citations", r.citations}};
}
void from_json(const json& j, InvariantReport& r) {
    j.at("surface").get_to(r.surface);
    j.at("ample").get_to(r.ample);
    j.at("ray").get_to(r.ray);
    j.at("lambda_bound").get_to(r.lambda_bound);
    j.at("chain").get_to(r.chain);
    j.at("equality_class").get_to(r.equality_class);
    j.at("witnesses").get_to(r.witnesses);
    j.at("trusted").get_to(r.trusted);
    j.at("a_over_s").get_to(r.a_over_s);
    j.at("citations").get_to(r.citations);
}

void to_json(json& j, const LiftReport& r) {
    j = json{{"n", r.n},
             {"ln", r.ln},
             {"eps_surface", r.eps_surface},
             {"tau_surface", r.tau_surface},
             {"delta_bound", r.delta_bound},
             {"trichotomy", to_string(r.trichotomy)},
             {"citations", r.citations}};
}
void from_json(const json& j, LiftReport& r) {
    j.at("n").get_to(r.n);
    j.at("ln").get_to(r.ln);
    j.at("eps_surface").get_to(r.eps_surface);
    j.at("tau_surface").get_to(r.tau_surface);
    j.at("delta_bound").get_to(r.delta_bound);
    r.trichotomy = parse_trichotomy(j.at("trichotomy").get<std::string>());
    j.at("citations").get_to(r.citations);
}

void to_json(json& j, const VerdictCheck& c) {
    j = json{{"name", c.name}, {"lhs", c.lhs}, {"relation", c.relation}, {"rhs", c.rhs}, {"holds", c.holds}};
}
void from_json(const json& j, VerdictCheck& c) {
    j.at("name").get_to(c.name);
    j.at("lhs").get_to(c.lhs);
    j.at("relation").get_to(c.relation);
    j.at("rhs").get_to(c.rhs);
    j.at("holds").get_to(c.holds);
}

void to_json(json& j, const Verdict& v) {
    j = json{{"subject", v.subject},
             {"status", to_string(v.status)},
             {"bound", v.bound},
             {"bound_label", v.bound_label},
             {"chain", v.chain},
             {"obligations", v.obligations},
             {"notes", v.notes}};
}
void from_json(const json& j, Verdict& v) {
    j.at("subject").get_to(v.subject);
    v.status = parse_verdict_status(j.at("status").get<std::string>());
    j.at("bound").get_to(v.bound);
    j.at("bound_label").get_to(v.bound_label);
    j.at("chain").get_to(v.chain);
    j.at("obligations").get_to(v.obligations);
    j.at("notes").get_to(v.notes);
}

void to_json(json& j, const K3TauBound& k) {
    j = json{{"holds_up_to_m", k.holds_up_to_m},
             {"asymptotic_ok", k.asymptotic_ok},
             {"holds_for_all_m", k.holds_for_all_m}};
    put(j, "m0", k.m0);
    if (k.counterexample)
        j["counterexample"] = json{{"m", k.counterexample->first}, {"mu", k.counterexample->second}};
    else
        j["counterexample"] = nullptr;
}
void from_json(const json& j, K3TauBound& k) {
    j.at("holds_up_to_m").get_to(k.holds_up_to_m);
    j.at("asymptotic_ok").get_to(k.asymptotic_ok);
    j.at("holds_for_all_m").get_to(k.holds_for_all_m);
    k.m0 = opt<long>(j, "m0");
    k.counterexample.reset();
    if (j.contains("counterexample") && !j.at("counterexample").is_null()) {
        const auto& c = j.at("counterexample");
        k.counterexample = std::make_pair(c.at("m").get<long>(), c.at("mu").get<long>());
    }
}

void to_json(json& j, const LemmaCheck& c) {
    j = json{{"lhs", c.lhs}, {"rhs", c.rhs}, {"margin", c.margin()}, {"holds", c.holds}, {"equality", c.equality}};
}

void to_json(json& j, const Node& n) { j = json::array({n.x, n.y}); }
void from_json(const json& j, Node& n) {
    if (!j.is_array() || j.size() != 2) throw InputError("a node is [x, y]");
    j[0].get_to(n.x);
    j[1].get_to(n.y);
}

SurfaceModel read_surface_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open surface file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return json::parse(buf.str()).get<SurfaceModel>();
    } catch (const json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

SurfaceModel load_surface(const std::string& spec) {
    static const std::string prefix = "builtin:";
    if (spec.rfind(prefix, 0) == 0) return builtin_surface(spec.substr(prefix.size()));
    std::ifstream probe(spec);
    if (probe) return read_surface_file(spec);
    return builtin_surface(spec);
}

}  // namespace kbound
