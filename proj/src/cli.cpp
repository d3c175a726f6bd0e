#include "ratdyn/cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "ratdyn/catalog.hpp"
#include "ratdyn/errors.hpp"
#include "ratdyn/identities.hpp"
#include "ratdyn/powermap.hpp"

namespace ratdyn {

GraphOptions RunConfig::graph_options() const {
    GraphOptions o;
    o.cluster_tol = cluster_tol;
    o.match_tol = match_tol;
    o.track.newton_tol = root_residual;
    return o;
}

void RunConfig::validate() const {
    if (!(root_residual > 0) || !(cluster_tol > 0) || !(match_tol > 0)) throw PreconditionError("tolerances must be positive");
    if (max_composite_degree < 1 || cloud_size < 1 || depth < 1) throw PreconditionError("budgets must be positive");
}

Json to_json(const RunConfig& c) {
    return Json{{"seed", c.seed},
                {"tolerances", {{"root_residual", c.root_residual}, {"cluster", c.cluster_tol}, {"fiber_match", c.match_tol}}},
                {"budgets", {{"max_composite_degree", c.max_composite_degree}, {"cloud_size", c.cloud_size}, {"depth", c.depth}}},
                {"out", c.out.empty() ? Json(nullptr) : Json(c.out)}};
}

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PreconditionError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// "@file", an existing file, or the text itself.
std::string input_text(const std::string& v) {
    if (!v.empty() && v[0] == '@') return slurp(v.substr(1));
    std::error_code ec;
    if (!v.empty() && v[0] != '{' && std::filesystem::is_regular_file(v, ec)) return slurp(v);
    return v;
}

struct Session {
    RunConfig config;
    std::string field_text = "Q";
    std::vector<std::string> lets;
    FieldPtr field;
    SymbolTable symbols;

    void prepare() {
        config.validate();
        field = parse_field(field_text);
        symbols = default_symbols(field);
        for (const auto& let : lets) {
            const auto eq = let.find('=');
            if (eq == std::string::npos || eq == 0) throw PreconditionError("--let expects name=value, got '" + let + "'");
            const std::string name = let.substr(0, eq);
            if (name == "z") throw PreconditionError("--let cannot bind the variable z");
            symbols.insert_or_assign(name, parse_scalar(let.substr(eq + 1), field, symbols));
        }
    }

    RationalMap map(const std::string& v) const { return read_map(input_text(v), field, symbols); }

    RationalMap map(const Json& j) const {
        if (j.is_string()) return map(j.get<std::string>());
        if (!j.contains("field")) {
            Json with_field = j;
            with_field["field"] = field_to_json(field);
            return map_from_json(with_field);
        }
        return map_from_json(j);
    }

    Json envelope(const std::string& command) const {
        Json j{{"command", command}, {"config", to_json(config)}};
        j["config"]["field"] = field_name(field);
        if (!lets.empty()) j["config"]["let"] = lets;
        return j;
    }
};

void emit(const Session& s, std::ostream& out, const std::string& bytes) {
    if (s.config.out.empty()) {
        out << bytes;
        out.flush();
        return;
    }
    std::ofstream f(s.config.out, std::ios::binary);
    if (!f) throw PreconditionError("cannot write " + s.config.out);
    f << bytes;
}

void emit(const Session& s, std::ostream& out, const Json& j) { emit(s, out, j.dump(2) + "\n"); }

void append(Json& report, const Json& more) {
    for (auto it = more.begin(); it != more.end(); ++it) report[it.key()] = it.value();
}

int verdict_exit(const CertificateReport& r) { return r.all_pass() ? int{kExitOk} : int{kExitFail}; }

Window parse_window(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        try {
            v.push_back(std::stod(item, &used));
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0) throw PreconditionError("--window expects xmin,xmax,ymin,ymax, got '" + text + "'");
    }
    if (v.size() != 4 || !(v[0] < v[1]) || !(v[2] < v[3])) throw PreconditionError("--window expects xmin,xmax,ymin,ymax with xmin < xmax and ymin < ymax");
    return {v[0], v[1], v[2], v[3]};
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Session s;
    CLI::App app{"Relations between rational maps sharing a maximal-entropy measure", "ratdyn"};
    app.require_subcommand(1);
    app.fallthrough();
    app.option_defaults()->always_capture_default();
    app.add_option("--seed", s.config.seed, "Run seed");
    app.add_option("--out", s.config.out, "Write the report to this file");
    app.add_option("--field", s.field_text, "Q, Q(w), Q(i), Q(zeta12) or a minimal polynomial in alpha");
    app.add_option("--let", s.lets, "Bind a symbol to an exact value: name=value")->take_all();
    app.add_option("--root-residual", s.config.root_residual, "Path-tracker corrector tolerance");
    app.add_option("--cluster-tol", s.config.cluster_tol, "Branch-point clustering tolerance");
    app.add_option("--match-tol", s.config.match_tol, "Fiber matching tolerance");
    app.add_option("--max-degree", s.config.max_composite_degree, "Largest degree of an exact composite");
    app.add_option("--count", s.config.cloud_size, "Backward orbits per cloud");
    app.add_option("--depth", s.config.depth, "Backward orbit length");

    std::function<int()> action;

    auto* graph = app.add_subcommand("analyze-graph", "Components of the graph curve G(x) = G(y)");
    std::string graph_map;
    graph->add_option("--map", graph_map, "Map (JSON, @file or expression)")->required();
    graph->callback([&] {
        action = [&] {
            const GraphAnalysis a = analyze_graph(s.map(graph_map), s.config.seed, s.config.graph_options());
            Json j = s.envelope("analyze-graph");
            append(j, to_json(a));
            emit(s, out, j);
            return a.monodromy.sphere_relation ? int{kExitOk} : int{kExitConsistency};
        };
    });

    auto* certify = app.add_subcommand("certify", "Exact composition identities for {R, S, T} or {F, G}");
    std::string cert_input;
    std::map<std::string, std::string> cert_maps;
    certify->add_option("--input", cert_input, "JSON object with R, S, T or F, G (inline or @file)");
    for (const char* role : {"R", "S", "T", "F", "G"}) {
        certify->add_option(std::string("--") + role, cert_maps[role], std::string("Map ") + role);
    }
    certify->callback([&] {
        action = [&] {
            std::map<std::string, RationalMap> maps;
            if (!cert_input.empty()) {
                const Json j = parse_json(input_text(cert_input));
                if (!j.is_object()) throw ParseError("certify input must be a JSON object", 0);
                for (auto it = j.begin(); it != j.end(); ++it) {
                    if (!cert_maps.count(it.key())) throw PreconditionError("certify input: unknown role '" + it.key() + "'");
                    maps.insert_or_assign(it.key(), s.map(it.value()));
                }
            }
            for (const auto& [role, text] : cert_maps) {
                if (!text.empty()) maps.insert_or_assign(role, s.map(text));
            }
            const bool triple = maps.count("R") && maps.count("S") && maps.count("T");
            const bool pair = maps.count("F") && maps.count("G");
            if (!triple && !pair) throw PreconditionError("certify needs R, S and T, or F and G");
            CertificateReport rep;
            if (triple) rep = check_counterexample_triple(maps.at("R"), maps.at("S"), maps.at("T"), s.config.seed);
            if (pair) {
                const auto more = check_main1_relations(maps.at("F"), maps.at("G"));
                rep.claims.insert(rep.claims.end(), more.claims.begin(), more.claims.end());
            }
            Json j = s.envelope("certify");
            Json inputs = Json::object();
            for (const auto& [role, f] : maps) inputs[role] = to_string(f);
            j["maps"] = inputs;
            append(j, to_json(rep));
            emit(s, out, j);
            return verdict_exit(rep);
        };
    });

    auto* measure = app.add_subcommand("measure", "Compare empirical maximal-entropy measures");
    std::string mf, mg, mpush;
    measure->add_option("--f", mf, "Map whose measure is sampled")->required();
    auto* g_opt = measure->add_option("--g", mg, "Second map: same-measure test");
    measure->add_option("--push", mpush, "Push the cloud of f forward by this map: invariance test")->excludes(g_opt);
    measure->callback([&] {
        action = [&] {
            const RationalMap f = s.map(mf);
            Json j = s.envelope("measure");
            j["f"] = to_string(f);
            MeasureDistanceReport rep;
            if (!mg.empty()) {
                const RationalMap g = s.map(mg);
                j["test"] = "same_measure";
                j["g"] = to_string(g);
                rep = same_measure_test(f, g, s.config.cloud_size, s.config.depth, s.config.seed);
            } else {
                const RationalMap h = mpush.empty() ? f : s.map(mpush);
                j["test"] = "invariance";
                j["push"] = to_string(h);
                rep = invariance_test(f, h, s.config.cloud_size, s.config.depth, s.config.seed);
            }
            append(j, to_json(rep));
            emit(s, out, j);
            return int{kExitOk};
        };
    });

    auto* render = app.add_subcommand("render", "Binary PPM raster of a backward-orbit cloud");
    std::string rmap, rwindow = "-2,2,-2,2";
    int width = 512, height = 512, burn_in = 10;
    render->add_option("--map", rmap, "Map")->required();
    render->add_option("--width", width)->check(CLI::Range(1, 8192));
    render->add_option("--height", height)->check(CLI::Range(1, 8192));
    render->add_option("--window", rwindow, "xmin,xmax,ymin,ymax");
    render->add_option("--burn-in", burn_in)->check(CLI::NonNegativeNumber);
    render->callback([&] {
        action = [&] {
            const Raster r = julia_raster(s.map(rmap), width, height, parse_window(rwindow), s.config.cloud_size,
                                          s.config.depth, s.config.seed, burn_in);
            emit(s, out, r.to_ppm());
            return int{kExitOk};
        };
    });

    auto* power = app.add_subcommand("powermap", "Do z^df and z^dg have the same periodic points");
    std::uint64_t df = 0, dg = 0;
    std::string root;
    power->add_option("--df", df)->required()->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 62));
    power->add_option("--dg", dg)->required()->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 62));
    power->add_option("--root", root, "Root of unity exp(2 pi i a/b), given as a/b");
    power->callback([&] {
        action = [&] {
            Json j{{"same_periodic_points", same_periodic_points_powermaps(df, dg)}};
            append(j, s.envelope("powermap"));
            j["df"] = df;
            j["dg"] = dg;
            j["radical_df"] = radical(df);
            j["radical_dg"] = radical(dg);
            if (!root.empty()) {
                const Q q = parse_rational(root);
                if (!q.get_num().fits_slong_p() || !q.get_den().fits_ulong_p()) throw PreconditionError("--root out of range");
                const RootOfUnity z = root_of_unity(q.get_num().get_si(), q.get_den().get_ui());
                const auto describe = [&](std::uint64_t d) {
                    const auto p = period(z, d);
                    return Json{{"periodic", p.has_value()}, {"period", p ? Json(*p) : Json(nullptr)}};
                };
                j["root"] = Json{{"a", z.a}, {"b", z.b}, {"under_df", describe(df)}, {"under_dg", describe(dg)}};
            }
            emit(s, out, j);
            return int{kExitOk};
        };
    });

    auto* catalog = app.add_subcommand("catalog", "Built-in example families");
    catalog->require_subcommand(1);
    catalog->fallthrough();
    auto* list = catalog->add_subcommand("list", "Entries with default parameters and expected verdicts");
    list->callback([&] {
        action = [&] {
            Json j = s.envelope("catalog list");
            Json entries = Json::array();
            for (const auto& name : catalog_names()) entries.push_back(to_json(catalog_entry(name)));
            j["entries"] = std::move(entries);
            emit(s, out, j);
            return int{kExitOk};
        };
    });
    auto* run = catalog->add_subcommand("run", "Construct an entry and run its certificates");
    run->fallthrough();
    std::string entry_name;
    std::vector<std::string> params;
    run->add_option("name", entry_name, "Entry name")->required();
    run->add_option("--param", params, "Entry parameter: key=value")->take_all();
    run->callback([&] {
        action = [&] {
            CatalogParams p;
            for (const auto& kv : params) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos || eq == 0) throw PreconditionError("--param expects key=value, got '" + kv + "'");
                p.insert_or_assign(kv.substr(0, eq), kv.substr(eq + 1));
            }
            const CatalogEntry e = catalog_entry(entry_name, p);
            const CertificateReport rep = run_entry(e, s.config.seed);
            const auto unexpected = unexpected_verdicts(e, rep);
            Json j = s.envelope("catalog run");
            j["entry"] = to_json(e);
            append(j, to_json(rep));
            j["unexpected"] = unexpected;
            emit(s, out, j);
            if (!unexpected.empty()) return int{kExitConsistency};
            return verdict_exit(rep);
        };
    });

    auto* comp = app.add_subcommand("compose", "Exact composition f o g");
    std::string cf, cg;
    comp->add_option("--f", cf)->required();
    comp->add_option("--g", cg)->required();
    comp->callback([&] {
        action = [&] {
            const RationalMap f = s.map(cf), g = s.map(cg);
            if (static_cast<long>(f.degree()) * g.degree() > s.config.max_composite_degree) {
                throw BudgetError("compose: degree exceeds --max-degree");
            }
            const RationalMap h = compose(f, g);
            Json j = s.envelope("compose");
            j["f"] = to_string(f);
            j["g"] = to_string(g);
            j["degree"] = h.degree();
            j["text"] = to_string(h);
            j["map"] = to_json(h);
            emit(s, out, j);
            return int{kExitOk};
        };
    });

    auto* iter = app.add_subcommand("iterate", "Exact n-th iterate");
    std::string imap;
    int n = 2;
    iter->add_option("--map", imap)->required();
    iter->add_option("--n", n)->check(CLI::Range(1, 1 << 20));
    iter->callback([&] {
        action = [&] {
            const RationalMap f = s.map(imap);
            const RationalMap h = iterate(f, n, s.config.max_composite_degree);
            Json j = s.envelope("iterate");
            j["f"] = to_string(f);
            j["n"] = n;
            j["degree"] = h.degree();
            j["text"] = to_string(h);
            j["map"] = to_json(h);
            emit(s, out, j);
            return int{kExitOk};
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        s.prepare();
        return action();
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const PreconditionError& e) {
        err << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const BudgetError& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ConsistencyError& e) {
        err << "internal consistency error: " << e.what() << "\n";
        return kExitConsistency;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitConsistency;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitConsistency;
    }
}

}  // namespace ratdyn
