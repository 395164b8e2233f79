#include "kbound/cli.hpp"

#include "kbound/errors.hpp"
#include "kbound/serialize.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace kbound {

namespace {

// Surfaces covered by `report`, already in key order.
const std::vector<std::string>& report_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k = {"P2", "P1xP1"};
        for (int d = 2; d <= 8; ++d) k.push_back("DelPezzo(" + std::to_string(d) + ")");
        std::sort(k.begin(), k.end());
        return k;
    }();
    return keys;
}

DivClass ample_or_anticanonical(const SurfaceModel& s, const std::string& text) {
    if (text.empty()) return -s.canonical;
    return parse_class(text, s.rank);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

PointSpec point_from(const std::string& text, const SurfaceModel& s) {
    if (text == "general") return GeneralPoint{};
    try {
        return explicit_point_from_json(json::parse(slurp(text)), s.rank + 1);
    } catch (const json::exception& e) {
        throw InputError(text + ": " + e.what());
    }
}

json surface_info(const SurfaceModel& s) {
    json j = s;
    j["k_squared"] = s.square(s.canonical);
    json neg = json::array();
    for (const CurveEntry& c : s.negative_curves()) neg.push_back(c.name);
    j["negative_curves"] = neg;
    return j;
}

json volume_json(const std::string& surface, const DivClass& l, const std::string& ray, const RayInvariants& inv) {
    json j = inv;
    j["surface"] = surface;
    j["ample"] = l;
    j["ray"] = ray;
    return j;
}

std::string report_tsv(const std::vector<InvariantReport>& reports) {
    std::ostringstream os;
    os << "surface\tample\teps\teta\ttau\ts_inv\tl_squared\tlambda_bound\ta_over_s\tequality\ttrusted\n";
    for (const InvariantReport& r : reports)
        os << r.surface << '\t' << r.ample.to_string() << '\t' << to_string(r.ray.eps) << '\t' << to_string(r.ray.eta)
           << '\t' << to_string(r.ray.tau) << '\t' << to_string(r.ray.s_inv) << '\t' << to_string(r.ray.l_squared) << '\t'
           << to_string(r.lambda_bound) << '\t' << to_string(r.a_over_s) << '\t' << to_string(r.equality_class.kind)
           << '\t' << (r.trusted ? "true" : "false") << '\n';
    return os.str();
}

std::map<int, Rat> read_eps_table(const std::string& path) {
    std::map<int, Rat> table = ThreefoldQuery::default_eps_table();
    json j;
    try {
        j = json::parse(slurp(path));
    } catch (const json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
    if (!j.is_object()) throw InputError(path + ": eps table must map degrees to rationals");
    for (const auto& [key, value] : j.items()) {
        int degree = 0;
        try {
            degree = std::stoi(key);
        } catch (const std::exception&) {
            throw InputError(path + ": bad degree '" + key + "'");
        }
        Rat eps = value.get<Rat>();
        if (degree < 1 || sgn(eps) <= 0) throw InputError(path + ": degrees and values must be positive");
        table[degree] = eps;
    }
    return table;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact divisor invariants on surfaces and delta-invariant bounds"};
    app.name("fano_cli");
    app.require_subcommand(1);

    std::function<void()> action;

    // surface info
    auto* surface = app.add_subcommand("surface", "Surface models");
    surface->require_subcommand(1);
    auto* info = surface->add_subcommand("info", "Print a surface model with its negative curves");
    std::string info_spec;
    info->add_option("surface", info_spec, "Surface file, builtin:<name> or a built-in name")->required();
    info->callback([&] { action = [&] { out << surface_info(load_surface(info_spec)).dump(2) << '\n'; }; });

    // zariski
    auto* zar = app.add_subcommand("zariski", "Zariski decomposition of a pseudo-effective class");
    std::string zar_spec, zar_class;
    zar->add_option("surface", zar_spec, "Surface file or built-in")->required();
    zar->add_option("--class", zar_class, "Coordinates, e.g. 2,-1,0")->required();
    zar->callback([&] {
        action = [&] {
            SurfaceModel s = load_surface(zar_spec);
            out << json(zariski_decompose(parse_class(zar_class, s.rank), s)).dump(2) << '\n';
        };
    });

    // volume
    auto* vol = app.add_subcommand("volume", "Volume and restricted volume along a ray");
    std::string vol_spec, vol_ample, vol_ray = "point", vol_csv, vol_step = "1/10", vol_ad = "1";
    vol->add_option("surface", vol_spec, "Surface file or built-in")->required();
    vol->add_option("--ample", vol_ample, "Ample class (default -K)");
    vol->add_option("--ray", vol_ray, "'point' (general point blowup), a point JSON file, or a class E")
        ->capture_default_str();
    vol->add_option("--csv", vol_csv, "Write the sampled profile as CSV to this file");
    vol->add_option("--step", vol_step, "CSV sampling step")->capture_default_str();
    vol->add_option("--log-discrepancy", vol_ad, "A(E) for a class ray")->capture_default_str();
    vol->callback([&] {
        action = [&] {
            SurfaceModel s = load_surface(vol_spec);
            DivClass l = ample_or_anticanonical(s, vol_ample);
            RayInvariants inv;
            RaySweep sweep;
            bool is_point = vol_ray == "point" || vol_ray.find(".json") != std::string::npos;
            if (is_point) {
                PointModel pm = blow_up(s, point_from(vol_ray == "point" ? "general" : vol_ray, s));
                inv = point_invariants(pm, l);
                sweep = sweep_ray(pm.pullback(l), pm.exceptional, pm.blown);
            } else {
                DivClass e = parse_class(vol_ray, s.rank);
                inv = ray_invariants(l, e, s, parse_rat(vol_ad));
                sweep = sweep_ray(l, e, s);
            }
            if (!vol_csv.empty()) {
                Rat step = parse_rat(vol_step);
                if (sgn(step) <= 0) throw InputError("--step must be positive");
                std::ofstream csv(vol_csv);
                if (!csv) throw InputError("cannot write " + vol_csv);
                csv << profile_csv(sweep, step);
            }
            out << volume_json(s.name, l, vol_ray, inv).dump(2) << '\n';
        };
    });

    // invariants
    auto* invc = app.add_subcommand("invariants", "Full invariant report and delta lower bound at a point");
    std::string inv_spec, inv_ample, inv_point = "general";
    bool inv_rho1 = false;
    invc->add_option("surface", inv_spec, "Surface file or built-in")->required();
    invc->add_option("--ample", inv_ample, "Ample class (default -K)");
    invc->add_option("--point", inv_point, "'general' or a point JSON file")->capture_default_str();
    invc->add_flag("--rho1", inv_rho1, "Picard rank one: also check 3/tau against 3 eps / L^2");
    invc->callback([&] {
        action = [&] {
            SurfaceModel s = load_surface(inv_spec);
            DivClass l = ample_or_anticanonical(s, inv_ample);
            PointModel pm = blow_up(s, point_from(inv_point, s));
            InvariantReport r = inv_rho1 ? corollary_rho1_bound(s, l, pm) : surface_delta_bound(s, l, pm);
            out << json(r).dump(2) << '\n';
        };
    });

    // verify-lemma
    auto* lemma = app.add_subcommand("verify-lemma", "Random exact checks of the concavity inequalities (TSV)");
    std::string lemma_kind;
    int lemma_cases = 100;
    std::uint64_t lemma_seed = 0;
    lemma->add_option("kind", lemma_kind, "center-pt or center-div")
        ->required()
        ->check(CLI::IsMember({"center-pt", "center-div"}));
    lemma->add_option("--cases", lemma_cases, "Number of cases")->check(CLI::PositiveNumber)->capture_default_str();
    lemma->add_option("--seed", lemma_seed, "First seed")->capture_default_str();
    lemma->callback([&] {
        action = [&] {
            LemmaKind kind = lemma_kind == "center-pt" ? LemmaKind::CenterPoint : LemmaKind::CenterDivisor;
            out << lemma_tsv(run_lemma_suite(kind, lemma_cases, lemma_seed));
        };
    });

    // hypersurface
    auto* hyp = app.add_subcommand("hypersurface", "Verdict for a Fano hypersurface of dimension n and index r");
    HypersurfaceQuery hq;
    hyp->add_option("--n", hq.n, "Dimension")->required();
    hyp->add_option("--r", hq.r, "Fano index")->required();
    hyp->callback([&] { action = [&] { out << json(hypersurface_verdict(hq)).dump(2) << '\n'; }; });

    // threefold
    auto* three = app.add_subcommand("threefold", "Verdict for a Picard rank one Fano threefold of index 1 or 2");
    ThreefoldQuery tq;
    std::string eps_file;
    three->add_option("--index", tq.index, "Fano index")->required();
    three->add_option("--degree", tq.degree, "Degree H^3 (index 2) or (-K)^3 (index 1)")->required();
    three->add_option("--eps-table", eps_file, "JSON object degree -> lower bound for eps_x(-K_S)");
    three->callback([&] {
        action = [&] {
            if (!eps_file.empty()) tq.eps_table = read_eps_table(eps_file);
            out << json(threefold_verdict(tq)).dump(2) << '\n';
        };
    });

    // report
    auto* rep = app.add_subcommand("report", "Anticanonical reports at a general point for the built-in del Pezzos");
    std::string rep_format = "json";
    rep->add_option("--format", rep_format, "json or tsv")->check(CLI::IsMember({"json", "tsv"}))->capture_default_str();
    rep->callback([&] {
        action = [&] {
            std::vector<InvariantReport> reports;
            for (const std::string& key : report_keys()) {
                SurfaceModel s = builtin_surface(key);
                reports.push_back(surface_delta_bound(s, -s.canonical, blow_up(s, GeneralPoint{})));
            }
            if (rep_format == "tsv")
                out << report_tsv(reports);
            else
                out << json(reports).dump(2) << '\n';
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 1;
    }

    try {
        action();
        return 0;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << '\n';
        return 2;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
    } catch (const ModelError& e) {
        err << "model error: " << e.what() << '\n';
    } catch (const json::exception& e) {
        err << "input error: " << e.what() << '\n';
    }
    return 1;
}

}  // namespace kbound
