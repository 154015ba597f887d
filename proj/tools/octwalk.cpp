// Command-line front end: census, classification, counting, groups, orbit
// sums, Hadamard decompositions, verification suites, guessing and tables.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include <octwalk/census.hpp>
#include <octwalk/classify.hpp>
#include <octwalk/counting.hpp>
#include <octwalk/extraction.hpp>
#include <octwalk/group.hpp>
#include <octwalk/guess.hpp>
#include <octwalk/hadamard.hpp>
#include <octwalk/verify.hpp>

using namespace octwalk;
using nlohmann::json;

namespace {

struct Common {
    int max_card = 6;
    std::string scope = "3d";
    int bound = 200;
    int order = -1;
    std::string mod = "exact";
    std::string store;
    unsigned jobs = 0;
    bool as_json = false;
};

// octant model ("+00;0-0;...", hex code) or quadrant model ("-0*2;+-;...")
bool looks_quadrant(const std::string& m) {
    if (m.rfind("0x", 0) == 0) return false;
    auto first = m.substr(0, m.find(';'));
    auto bare = first.substr(0, first.find('*'));
    return bare.size() == 2;
}

std::optional<std::uint64_t> parse_mod(const std::string& s) {
    if (s == "exact") return std::nullopt;
    std::uint64_t p = std::stoull(s);
    if (!is_probable_prime(p)) throw Error("--mod " + s + " is not prime");
    return p;
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

int run_census(const Common& c, const std::string& predicate, bool appendix) {
    json out;
    if (!predicate.empty()) {
        auto p = parse_census_predicate(predicate);
        auto poly = burnside_census(p, c.jobs);
        out["predicate"] = predicate;
        out["by_cardinality"] = poly;
        out["total"] = census_total(poly);
        if (appendix) {
            auto a = appendix_polynomials();
            const auto& want = p == CensusPredicate::NoUnused ? a.J : p == CensusPredicate::DimAtMostOne ? a.K : a.I;
            out["appendix_agrees"] = want == poly;
            if (want != poly) {
                print(out);
                return 1;
            }
        }
    } else {
        // dimension split of the models with at most max_card steps
        std::map<int, std::vector<long>> by_dim;
        long total = 0;
        for_each_model(c.max_card, {.no_unused = true}, [&](StepSet s) {
            int d = dimension(s).dimension;
            auto& v = by_dim[d];
            v.resize(c.max_card + 1);
            ++v[s.size()];
            ++total;
        });
        out["max_card"] = c.max_card;
        out["total"] = total;
        long d23 = 0;
        for (int d : {2, 3})
            for (long x : by_dim[d]) d23 += x;
        out["total_dimension_2_or_3"] = d23;
        for (auto& [d, v] : by_dim) {
            long t = 0;
            for (long x : v) t += x;
            out["dimension_" + std::to_string(d)] = {{"total", t}, {"by_cardinality", v}};
        }
        std::set<std::string> proj;
        for_each_model(c.max_card, {.no_unused = true, .min_dim = 2, .max_dim = 2}, [&](StepSet s) {
            auto q = project_to_quadrant(s, dimension(s).redundant_axis());
            q.dropped_null_steps = 0;
            proj.insert(render_quadrant(q));
        });
        out["projected_quadrant_models"] = proj.size();
    }
    print(out);
    return 0;
}

int run_classify(const Common& c, bool no_verify, bool quiet) {
    ClassifyOptions opt;
    opt.max_card = c.max_card;
    opt.bound = c.bound;
    opt.order = c.order;
    opt.verify = !no_verify;
    opt.jobs = c.jobs;
    Scope scope = parse_scope(c.scope);
    if (scope == Scope::Quadrant && c.max_card == 6) opt.max_card = 8;
    long seen = 0;
    auto res = run_classify(scope, opt, c.store, [&](const ClassificationRecord&) {
        if (!quiet && ++seen % 2000 == 0) std::cerr << "classified " << seen << "\n";
    });
    if (c.as_json) {
        json j = res.summary.to_json();
        j["computed"] = res.computed;
        j["skipped"] = res.skipped;
        print(j);
    } else {
        std::cout << res.summary.text() << "computed " << res.computed << ", already in store " << res.skipped << "\n";
    }
    return res.summary.verification_failures.empty() ? 0 : 1;
}

int run_count(const Common& c, const std::string& model, int N, const std::string& dump, const std::string& at) {
    if (N < 0) N = 20;
    auto prime = parse_mod(c.mod);
    CountOptions opt{.keep_table = !at.empty() || !dump.empty(), .jobs = int(c.jobs)};
    bool quad = looks_quadrant(model);
    auto report_at = [&](auto& T) {
        if (at.empty()) return;
        std::array<int, 4> v{};
        char sep;
        std::istringstream is(at);
        int nv = quad ? 3 : 4;
        for (int k = 0; k < nv; ++k) {
            is >> v[k];
            if (k + 1 < nv) is >> sep;
        }
        Exp e = quad ? Exp{v[0], v[1], 0} : Exp{v[0], v[1], v[2]};
        int n = quad ? v[2] : v[3];
        std::cout << value_string(T.at(e, n)) << "\n";
    };
    if (prime) {
        auto T = quad ? count_quadrant_mod(parse_quadrant(model), N, *prime, opt)
                      : count_octant_mod(parse_model(model), N, *prime, opt);
        if (!dump.empty()) dump_binary(T, dump);
        if (!at.empty()) report_at(T);
        else print(export_json(T));
    } else {
        auto T = quad ? count_quadrant(parse_quadrant(model), N, opt) : count_octant(parse_model(model), N, opt);
        if (!dump.empty()) throw Error("--dump needs --mod");
        if (!at.empty()) report_at(T);
        else print(export_json(T));
    }
    return 0;
}

int run_project(const std::string& model) {
    StepSet given = parse_model(model);
    StepSet s = strip_unused(given);
    json j{{"model", render_model(given)}, {"unused", render_model(unused_steps(given))}};
    if (s.size() == 0) {
        print(j);
        return 0;
    }
    auto d = dimension(s);
    j["reduced"] = render_model(s);
    j["code"] = render_code(canonical_code(s));
    j["dimension"] = d.dimension;
    std::string red;
    for (int a = 0; a < 3; ++a)
        if (d.redundant[a]) red += "xyz"[a];
    j["redundant"] = red;
    if (d.dimension == 2) {
        int axis = d.redundant_axis();
        auto q = project_to_quadrant(s, axis);
        j["projection"] = {{"dropped_axis", std::string(1, "xyz"[axis])},
                           {"quadrant_model", render_quadrant(q)},
                           {"dropped_null_steps", q.dropped_null_steps}};
    }
    print(j);
    return 0;
}

GroupModel model_for(const std::string& model, int& dim) {
    if (looks_quadrant(model)) {
        dim = 2;
        return group_model(parse_quadrant(model));
    }
    dim = 3;
    return group_model(parse_model(model));
}

int run_group(const Common& c, const std::string& model, bool elements) {
    int dim;
    auto G = explore_group(model_for(model, dim), c.bound);
    json j{{"model", model}, {"status", group_status_name(G.status)}, {"bound", G.bound}};
    if (G.finite()) j["order"] = G.order;
    else j["order"] = ">=" + std::to_string(G.bound);
    if (!G.detail.empty()) j["detail"] = G.detail;
    if (elements && G.finite()) {
        json el = json::array();
        for (const auto& e : G.elements)
            el.push_back({{"word", e.word}, {"sign", e.sign()}, {"point", render_point(e.coords, dim)}});
        j["elements"] = el;
    }
    print(j);
    return 0;
}

int run_orbitsum(const Common& c, const std::string& model) {
    int dim;
    auto G = explore_group(model_for(model, dim), c.bound);
    json j{{"model", model}, {"group", group_status_name(G.status)}, {"order", G.order}};
    if (G.finite()) {
        auto os = orbit_sum(G, dim);
        j["orbit_sum_zero"] = os.is_zero();
        j["orbit_sum"] = {{"numerator", os.num().str()}, {"denominator", os.den().str()}};
        if (!os.is_zero()) {
            auto ck = check_extraction(G, dim);
            std::string ord;
            for (int v = 0; v < dim; ++v) ord += "xyz"[ck.order[v]];
            json el = json::array();
            for (const auto& e : ck.elements)
                el.push_back({{"element", G.elements[e.element].word}, {"reason", e.describe()}});
            j["extraction"] = {{"order", ord}, {"outright", ck.outright()}, {"holds", ck.holds()}, {"elements", el}};
        }
    }
    print(j);
    return 0;
}

int run_hadamard(const std::string& model, int check) {
    StepSet s = parse_model(model);
    auto hs = detect_hadamard(s);
    json j{{"model", render_model(s)}, {"hadamard", !hs.empty()}};
    json arr = json::array();
    bool ok = true;
    for (const auto& h : hs) {
        json hj = hadamard_json(h);
        if (check >= 0) {
            auto want = count_octant(s, check);
            auto got = hadamard_assemble(h, check);
            bool same = true;
            for (int n = 0; n <= check; ++n) same = same && want.slabs[n] == got.slabs[n];
            hj["assembled_equals_counts"] = same;
            ok = ok && same;
        }
        arr.push_back(hj);
    }
    j["decompositions"] = arr;
    print(j);
    return ok ? 0 : 1;
}

int run_verify(const Common& c, const std::vector<std::string>& suites, const std::string& model) {
    json reports = json::array();
    bool ok = true;
    auto add = [&](const VerificationReport& r, bool expect_inconclusive = false) {
        reports.push_back(r.to_json());
        if (!(r.pass() || (expect_inconclusive && r.status == VerifyStatus::Inconclusive))) ok = false;
    };
    auto order_or = [&](int d) { return c.order >= 0 ? c.order : d; };
    for (const auto& s : suites) {
        if (s == "functional-equation") {
            if (model.empty()) throw Error("functional-equation needs --model");
            add(looks_quadrant(model) ? verify_functional_equation(parse_quadrant(model), order_or(8))
                                      : verify_functional_equation(parse_model(model), order_or(8)));
        } else if (s == "extraction") {
            if (model.empty()) throw Error("extraction needs --model");
            add(looks_quadrant(model) ? verify_extraction(parse_quadrant(model), order_or(16))
                                      : verify_extraction(parse_model(model), order_or(12)));
        } else if (s == "closed-forms") {
            for (const auto& m : closed_form_models()) add(verify_closed_form(m.id, order_or(m.quadrant ? 40 : 24)));
        } else if (s.rfind("closed-form:", 0) == 0) {
            auto id = s.substr(12);
            add(verify_closed_form(id, order_or(id.rfind("ex", 0) == 0 ? 24 : 40)));
        } else if (s == "algebraic") {
            for (const auto& w : algebraic_selectors()) {
                int N = order_or(w == "q00" || w == "q00-param" ? 60 : 30);
                for (const auto& r : verify_algebraic_results(w, N)) add(r);
            }
        } else if (s.rfind("algebraic:", 0) == 0) {
            auto w = s.substr(10);
            for (const auto& r : verify_algebraic_results(w, order_or(30))) add(r);
        } else if (s == "extraction-all") {
            ClassifyOptions opt;
            opt.max_card = c.max_card;
            opt.order = c.order;
            opt.jobs = c.jobs;
            for (Scope sc : {Scope::Octant3D, Scope::Projected2D}) {
                auto res = run_classify(sc, opt);
                json j = res.summary.to_json();
                reports.push_back({{"identity", "extraction over scope " + scope_name(sc)},
                                   {"status", res.summary.verification_failures.empty() ? "pass" : "fail"},
                                   {"summary", j}});
                if (!res.summary.verification_failures.empty()) ok = false;
            }
        } else {
            throw Error("unknown suite '" + s +
                        "' (functional-equation, extraction, closed-forms, closed-form:ID, algebraic, algebraic:SEL, "
                        "extraction-all)");
        }
    }
    print(reports);
    return ok ? 0 : 1;
}

std::vector<mpz_class> read_sequence(const std::string& path, const std::string& series_key) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    json j = json::parse(in);
    json arr;
    if (j.is_array()) {
        arr = j;
    } else if (j.contains("series")) {
        std::string key = series_key;
        if (key.empty()) {
            auto keys = j["series"];
            key = keys.begin().key();
            for (auto it = keys.begin(); it != keys.end(); ++it)
                if (it.key().find('1') == std::string::npos) key = it.key();
        }
        if (!j["series"].contains(key)) throw Error("no series '" + key + "' in " + path);
        arr = j["series"][key];
    } else {
        throw Error(path + ": expected a JSON array or a counting export");
    }
    std::vector<mpz_class> out;
    for (const auto& v : arr) out.push_back(v.is_string() ? mpz_class(v.get<std::string>()) : mpz_class(std::to_string(v.get<long long>())));
    return out;
}

int run_guess(const Common& c, const std::string& input, const std::string& series_key, int r_max, int d_max, int use) {
    auto seq = read_sequence(input, series_key);
    std::uint64_t prime = c.mod == "exact" ? kDefaultPrime : *parse_mod(c.mod);
    std::vector<mpz_class> head = use > 0 && use < int(seq.size()) ? std::vector<mpz_class>(seq.begin(), seq.begin() + use) : seq;
    auto cands = guess_precursive(head, r_max, d_max, prime, 10, input);
    json arr = json::array();
    for (const auto& cd : cands) {
        json j = cd.to_json();
        j["holds_on_all_terms"] = verify_candidate(cd, seq);
        j["terms_available"] = seq.size();
        arr.push_back(j);
    }
    json out{{"candidates", arr}, {"terms_used", head.size()}, {"r_max", r_max}, {"d_max", d_max}};
    if (cands.empty())
        out["note"] = "no recurrence with order <= " + std::to_string(r_max) + " and degree <= " + std::to_string(d_max) +
                      " fits these terms; larger searches are out of reach at this scale";
    print(out);
    return 0;
}

int run_tables(const Common& c, const std::vector<std::string>& stores) {
    json all = json::array();
    bool complete = true;
    for (const auto& path : stores) {
        auto st = read_store(path);
        if (!st.header) throw Error("store " + path + " is empty");
        int mc = parse_scope(st.header->scope) == Scope::Quadrant && c.max_card == 6 ? 8 : c.max_card;
        auto [sum, missing] = summarize_store(path, mc);
        if (!missing.empty()) complete = false;
        if (c.as_json) {
            json j = sum.to_json();
            j["store"] = path;
            j["missing"] = missing.size();
            all.push_back(j);
        } else {
            std::cout << sum.text();
            if (!missing.empty()) std::cout << "incomplete: " << missing.size() << " models of the scope have no record\n";
            std::cout << "\n";
        }
    }
    if (c.as_json) print(all);
    return complete ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"octwalk: lattice walks in the octant"};
    app.require_subcommand(1);
    Common c;
    auto common = [&](CLI::App* s) {
        s->add_option("--max-card", c.max_card, "largest number of steps")->check(CLI::Range(1, 26));
        s->add_option("--scope", c.scope, "3d, 2d-projected or quadrant");
        s->add_option("--bound", c.bound, "group size bound")->check(CLI::PositiveNumber);
        s->add_option("--order", c.order, "truncation order N");
        s->add_option("--mod", c.mod, "prime modulus or 'exact'");
        s->add_option("--store", c.store, "JSON-lines classification store");
        s->add_option("--jobs", c.jobs, "worker threads (default: OCTWALK_JOBS or all cores)");
        s->add_flag("--json", c.as_json, "JSON output");
    };

    std::string predicate, model, dump, at, input, series_key;
    bool appendix = false, no_verify = false, quiet = false, elements = false;
    int check = -1, r_max = 4, d_max = 8, use = 0;
    std::vector<std::string> suites, stores;

    auto* census = app.add_subcommand("census", "model census (Burnside sweep or dimension split)");
    common(census);
    census->add_option("--predicate", predicate, "no-unused, dim<=1 or dim23: run the Burnside sweep");
    census->add_flag("--appendix", appendix, "compare the sweep with the closed-form polynomials");

    auto* classify = app.add_subcommand("classify", "classify models, appending to a store");
    common(classify);
    classify->add_flag("--no-verify", no_verify, "skip per-model verification");
    classify->add_flag("--quiet", quiet, "no progress output");

    auto* count = app.add_subcommand("count", "count walks");
    common(count);
    count->add_option("--model", model, "step set")->required();
    count->add_option("--dump", dump, "binary dump of the modular table");
    count->add_option("--at", at, "one count: i,j,k,n (octant) or i,j,n (quadrant)");

    auto* project = app.add_subcommand("project", "dimension and quadrant projection");
    project->add_option("--model", model, "step set")->required();

    auto* group = app.add_subcommand("group", "group of the model");
    common(group);
    group->add_option("--model", model, "step set")->required();
    group->add_flag("--elements", elements, "list the orbit of [x, y, z]");

    auto* orbitsum = app.add_subcommand("orbitsum", "orbit sum and extraction conditions");
    common(orbitsum);
    orbitsum->add_option("--model", model, "step set")->required();

    auto* hadamard = app.add_subcommand("hadamard", "Hadamard decompositions");
    hadamard->add_option("--model", model, "step set")->required();
    hadamard->add_option("--check", check, "compare the Hadamard assembly with direct counts up to this length");

    auto* verify = app.add_subcommand("verify", "run verification suites");
    common(verify);
    verify->add_option("suites", suites, "functional-equation, extraction, closed-forms, closed-form:ID, algebraic, algebraic:SEL, extraction-all")
        ->required();
    verify->add_option("--model", model, "step set for model-specific suites");

    auto* guess = app.add_subcommand("guess", "guess P-recursive recurrences");
    common(guess);
    guess->add_option("--input", input, "JSON integer array or counting export")->required();
    guess->add_option("--series", series_key, "series key in a counting export, e.g. x0y0z0");
    guess->add_option("--r-max", r_max, "largest order");
    guess->add_option("--d-max", d_max, "largest degree");
    guess->add_option("--use", use, "fit on the first USE terms only, check on the rest");

    auto* tables = app.add_subcommand("tables", "summaries of classification stores");
    common(tables);
    tables->add_option("stores", stores, "store files")->required();

    CLI11_PARSE(app, argc, argv);
    try {
        if (census->parsed()) return run_census(c, predicate, appendix);
        if (classify->parsed()) return run_classify(c, no_verify, quiet);
        if (count->parsed()) return run_count(c, model, c.order, dump, at);
        if (project->parsed()) return run_project(model);
        if (group->parsed()) return run_group(c, model, elements);
        if (orbitsum->parsed()) return run_orbitsum(c, model);
        if (hadamard->parsed()) return run_hadamard(model, check);
        if (verify->parsed()) return run_verify(c, suites, model);
        if (guess->parsed()) return run_guess(c, input, series_key, r_max, d_max, use);
        if (tables->parsed()) return run_tables(c, stores);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
