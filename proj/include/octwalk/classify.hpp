#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "extraction.hpp"
#include "group.hpp"
#include "hadamard.hpp"
#include "stepset.hpp"
#include "verify.hpp"

namespace octwalk {

enum class Scope { Octant3D, Projected2D, Quadrant };

inline std::string scope_name(Scope s) {
    switch (s) {
        case Scope::Octant3D: return "3d";
        case Scope::Projected2D: return "2d-projected";
        case Scope::Quadrant: return "quadrant";
    }
    return "?";
}

inline Scope parse_scope(const std::string& s) {
    if (s == "3d" || s == "3D") return Scope::Octant3D;
    if (s == "2d-projected" || s == "2D-projected" || s == "2d") return Scope::Projected2D;
    if (s == "quadrant") return Scope::Quadrant;
    throw Error("unknown scope '" + s + "' (expected 3d, 2d-projected or quadrant)");
}

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kSchemaName = "octwalk.classification";

struct ClassifyOptions {
    int max_card = 6;
    int bound = 200;
    int order = -1;     // extraction truncation; -1: 12 in 3D, 16 in 2D
    int fe_order = 8;   // functional-equation truncation
    bool verify = true;
    unsigned jobs = 0;  // 0: OCTWALK_JOBS or hardware

    int extraction_order(Scope s) const { return order >= 0 ? order : (s == Scope::Octant3D ? 12 : 16); }
};

// One line of the store. Optional fields are absent when the pipeline
// stopped earlier (e.g. no orbit sum for an infinite group).
struct ClassificationRecord {
    std::string key;    // canonical code (3D) or canonical quadrant rendering
    std::string model;  // readable step list
    int cardinality = 0;
    int dimension = 3;
    std::string redundant;          // dropped axes, e.g. "z"
    std::string source;             // 2D: smallest octant model projecting here
    bool multiplicity_free = true;
    std::string group_status;       // finite, exceeds, sign-ill-defined
    int group_order = 0;            // elements found (bound when exceeded)
    std::optional<bool> orbit_sum_zero;
    std::vector<std::string> hadamard;
    std::optional<std::string> extraction;  // outright, support, fails
    std::map<std::string, std::string> verification;

    bool finite() const { return group_status == "finite"; }

    nlohmann::json to_json() const {
        nlohmann::json j{{"key", key},
                         {"model", model},
                         {"cardinality", cardinality},
                         {"dimension", dimension},
                         {"redundant", redundant},
                         {"multiplicity_free", multiplicity_free},
                         {"group", {{"status", group_status}, {"order", group_order}}},
                         {"hadamard", hadamard},
                         {"verification", verification}};
        if (!source.empty()) j["source"] = source;
        j["orbit_sum_zero"] = orbit_sum_zero ? nlohmann::json(*orbit_sum_zero) : nlohmann::json(nullptr);
        j["extraction"] = extraction ? nlohmann::json(*extraction) : nlohmann::json(nullptr);
        return j;
    }

    static ClassificationRecord from_json(const nlohmann::json& j) {
        ClassificationRecord r;
        r.key = j.at("key").get<std::string>();
        r.model = j.at("model").get<std::string>();
        r.cardinality = j.at("cardinality").get<int>();
        r.dimension = j.at("dimension").get<int>();
        r.redundant = j.at("redundant").get<std::string>();
        r.multiplicity_free = j.at("multiplicity_free").get<bool>();
        r.group_status = j.at("group").at("status").get<std::string>();
        r.group_order = j.at("group").at("order").get<int>();
        r.hadamard = j.at("hadamard").get<std::vector<std::string>>();
        r.verification = j.at("verification").get<std::map<std::string, std::string>>();
        if (j.contains("source")) r.source = j["source"].get<std::string>();
        if (!j.at("orbit_sum_zero").is_null()) r.orbit_sum_zero = j["orbit_sum_zero"].get<bool>();
        if (!j.at("extraction").is_null()) r.extraction = j["extraction"].get<std::string>();
        return r;
    }
};

// ---------------------------------------------------------------- work items

struct WorkItem {
    std::string key;
    StepSet octant;           // 3D scope
    QuadrantModel quadrant;   // 2D scopes
    int cardinality = 0;
    std::string redundant;
    std::string source;
};

inline std::vector<WorkItem> scope_items(Scope scope, int max_card) {
    std::vector<WorkItem> items;
    if (scope == Scope::Octant3D) {
        for_each_model(max_card, {.no_unused = true, .min_dim = 3, .max_dim = 3}, [&](StepSet s) {
            items.push_back({render_code(s.mask), s, {}, s.size(), "", ""});
        });
    } else if (scope == Scope::Projected2D) {
        // each projected model is attributed to the smallest octant model onto which it projects
        std::map<std::string, WorkItem> byKey;
        for_each_model(max_card, {.no_unused = true, .min_dim = 2, .max_dim = 2}, [&](StepSet s) {
            int axis = dimension(s).redundant_axis();
            auto q = project_to_quadrant(s, axis);
            q.dropped_null_steps = 0;
            std::string key = render_quadrant(q);
            auto it = byKey.find(key);
            if (it == byKey.end() || s.size() < it->second.cardinality)
                byKey[key] = {key, {}, q, s.size(), std::string(1, "xyz"[axis]), render_model(s)};
        });
        for (auto& [k, w] : byKey) items.push_back(std::move(w));
    } else {
        // every multiplicity-free quadrant model with no unused step and both inequalities needed
        std::set<std::string> seen;
        for (int m = 1; m < 256; ++m) {
            QuadrantModel q;
            StepSet s;
            for (int i = 0; i < 8; ++i)
                if (m >> i & 1) {
                    q.weights[i] = 1;
                    auto [a, b] = quadrant_step(i);
                    s.mask |= 1u << step_bit(Step{a, b, 0});
                }
            q = q.canonical();
            int card = __builtin_popcount(unsigned(m));
            if (card > max_card) continue;
            std::string key = render_quadrant(q);
            if (seen.count(key) || has_unused_steps(s.mask) || dimension(s).dimension != 2) continue;
            seen.insert(key);
            items.push_back({key, {}, q, card, "z", ""});
        }
        std::sort(items.begin(), items.end(), [](const WorkItem& a, const WorkItem& b) { return a.key < b.key; });
    }
    return items;
}

// ---------------------------------------------------------------- per-model pipeline

inline const char* group_status_name(GroupStatus s) {
    switch (s) {
        case GroupStatus::Finite: return "finite";
        case GroupStatus::ExceedsBound: return "exceeds";
        case GroupStatus::SignIllDefined: return "sign-ill-defined";
    }
    return "?";
}

inline ClassificationRecord classify_item(Scope scope, const WorkItem& w, const ClassifyOptions& opt) {
    ClassificationRecord r;
    r.key = w.key;
    r.cardinality = w.cardinality;
    r.redundant = w.redundant;
    r.source = w.source;
    CountOptions copt{.keep_table = true, .jobs = 1};
    bool octant = scope == Scope::Octant3D;
    int dim = octant ? 3 : 2;
    r.dimension = dim;
    r.model = octant ? render_model(w.octant) : render_quadrant(w.quadrant);
    r.multiplicity_free = octant || w.quadrant.multiplicity_free();
    GroupModel gm = octant ? group_model(w.octant) : group_model(w.quadrant);
    if (octant)
        for (const auto& h : detect_hadamard(w.octant)) {
            auto k = h.kind();
            if (std::find(r.hadamard.begin(), r.hadamard.end(), k) == r.hadamard.end()) r.hadamard.push_back(k);
        }

    // fingerprints first; exact coordinates only for finite groups
    auto quick = explore_group(gm, opt.bound, 0x5eed, false);
    GroupResult G = quick.finite() ? explore_group(gm, opt.bound) : quick;
    r.group_status = group_status_name(G.status);
    r.group_order = G.order;
    if (!G.finite()) return r;

    RatFunc os = orbit_sum(G, dim);
    r.orbit_sum_zero = os.is_zero();
    if (opt.verify) {
        auto fe = octant ? verify_functional_equation(w.octant, opt.fe_order, copt)
                         : verify_functional_equation(w.quadrant, opt.fe_order, copt);
        r.verification["functional_equation"] = status_name(fe.status);
    }
    if (!os.is_zero()) {
        int N = opt.extraction_order(scope);
        auto ck = check_extraction(G, dim, 6, 2 * N + 1);
        r.extraction = ck.outright() ? "outright" : ck.holds() ? "support" : "fails";
        if (opt.verify) {
            auto T = octant ? count_octant(w.octant, N, copt) : count_quadrant(w.quadrant, N, copt);
            auto S = octant ? char_poly(w.octant) : char_poly(w.quadrant);
            auto rep = verify_extraction_counts(os, ck, S, table_polys(T), N, "extraction " + r.model);
            r.verification["extraction"] = status_name(rep.status);
        }
    } else if (opt.verify && octant && !r.hadamard.empty()) {
        int N = opt.extraction_order(scope);
        auto h = detect_hadamard(w.octant).front();
        auto want = count_octant(w.octant, N, copt);
        auto got = hadamard_assemble(h, N);
        bool same = true;
        for (int n = 0; n <= N && same; ++n) same = want.slabs[n] == got.slabs[n];
        r.verification["hadamard"] = same ? "pass" : "fail";
    }
    return r;
}

// ---------------------------------------------------------------- summaries

struct Stratum {
    std::string name;
    std::vector<long> by_card;  // index card - first_card
    long total() const {
        long s = 0;
        for (long v : by_card) s += v;
        return s;
    }
};

struct ClassificationSummary {
    Scope scope = Scope::Octant3D;
    int first_card = 3, last_card = 6;
    std::vector<Stratum> strata;
    std::vector<std::pair<std::string, int>> non_hadamard;  // zero orbit sum, not Hadamard: model, group order
    std::map<std::string, long> verification_failures;
    std::map<std::string, long> inconclusive;

    Stratum& stratum(const std::string& name) {
        for (auto& s : strata)
            if (s.name == name) return s;
        strata.push_back({name, std::vector<long>(last_card - first_card + 1, 0)});
        return strata.back();
    }
    const Stratum* find(const std::string& name) const {
        for (const auto& s : strata)
            if (s.name == name) return &s;
        return nullptr;
    }

    void add(const ClassificationRecord& r) {
        auto bump = [&](const std::string& n) {
            auto& s = stratum(n);
            int i = r.cardinality - first_card;
            if (i < 0 || i >= int(s.by_card.size())) throw Error("summary: cardinality out of range");
            ++s.by_card[i];
        };
        bump("all");
        for (const auto& [k, v] : r.verification) {
            if (v == "fail") ++verification_failures[k];
            if (v == "inconclusive") ++inconclusive[k];
        }
        if (!r.finite()) {
            bump("infinite");
            return;
        }
        bump("finite");
        if (!r.orbit_sum_zero) return;
        if (!*r.orbit_sum_zero) {
            bump("finite/os-nonzero");
            if (r.extraction) bump(*r.extraction == "fails" ? "finite/os-nonzero/extraction-fails"
                                                           : "finite/os-nonzero/kernel-method");
            return;
        }
        bump("finite/os-zero");
        if (scope == Scope::Octant3D) {
            if (r.hadamard.empty()) {
                bump("finite/os-zero/non-hadamard");
                non_hadamard.push_back({r.model, r.group_order});
            } else {
                bump("finite/os-zero/hadamard");
            }
        }
    }

    // strata in tree order, with the cardinality brackets
    nlohmann::json to_json() const {
        nlohmann::json j{{"scope", scope_name(scope)}, {"cardinalities", {first_card, last_card}}};
        nlohmann::json st = nlohmann::json::array();
        for (const auto& s : strata) st.push_back({{"stratum", s.name}, {"total", s.total()}, {"by_cardinality", s.by_card}});
        j["strata"] = st;
        if (scope == Scope::Octant3D) {
            nlohmann::json f = nlohmann::json::array();
            std::map<int, int> orders;
            for (const auto& [m, o] : non_hadamard) {
                f.push_back({{"model", m}, {"group_order", o}});
                ++orders[o];
            }
            j["non_hadamard_zero_orbit_sum"] = f;
            nlohmann::json om;
            for (auto [o, c] : orders) om[std::to_string(o)] = c;
            j["non_hadamard_group_orders"] = om;
        }
        j["verification_failures"] = verification_failures;
        j["verification_inconclusive"] = inconclusive;
        return j;
    }

    std::string text() const {
        static const std::vector<std::string> order{"all",
                                                    "finite",
                                                    "finite/os-nonzero",
                                                    "finite/os-nonzero/kernel-method",
                                                    "finite/os-nonzero/extraction-fails",
                                                    "finite/os-zero",
                                                    "finite/os-zero/hadamard",
                                                    "finite/os-zero/non-hadamard",
                                                    "infinite"};
        std::ostringstream os;
        os << "scope " << scope_name(scope) << ", cardinalities " << first_card << ".." << last_card << "\n";
        for (const auto& name : order) {
            const Stratum* s = find(name);
            if (!s) continue;
            int depth = int(std::count(name.begin(), name.end(), '/'));
            std::string label = name.substr(name.rfind('/') == std::string::npos ? 0 : name.rfind('/') + 1);
            std::string br = "[";
            for (std::size_t i = 0; i < s->by_card.size(); ++i) br += (i ? "," : "") + std::to_string(s->by_card[i]);
            br += "]";
            std::string head = std::string(2 * depth, ' ') + label;
            os << head << std::string(head.size() < 40 ? 40 - head.size() : 1, ' ') << s->total() << " = " << br << "\n";
        }
        if (scope == Scope::Octant3D && !non_hadamard.empty()) {
            os << "non-Hadamard models with zero orbit sum:\n";
            for (const auto& [m, o] : non_hadamard) os << "  " << m << std::string(m.size() < 30 ? 30 - m.size() : 1, ' ') << "|G| = " << o << "\n";
        }
        for (const auto& [k, v] : verification_failures) os << "verification failures (" << k << "): " << v << "\n";
        for (const auto& [k, v] : inconclusive) os << "verification inconclusive (" << k << "): " << v << "\n";
        return os.str();
    }
};

inline ClassificationSummary make_summary(Scope scope, int max_card, std::vector<ClassificationRecord> records) {
    ClassificationSummary s;
    s.scope = scope;
    s.first_card = 3;
    s.last_card = scope == Scope::Quadrant ? std::min(max_card, 8) : max_card;
    for (const char* n : {"all", "finite"}) s.stratum(n);
    std::sort(records.begin(), records.end(),
              [](const ClassificationRecord& a, const ClassificationRecord& b) { return a.key < b.key; });
    for (const auto& r : records) s.add(r);
    return s;
}

// ---------------------------------------------------------------- store

struct StoreHeader {
    std::string schema = kSchemaName;
    int version = kSchemaVersion;
    std::string scope;
    int bound = 200;
    int order = 0;
    int fe_order = 0;
    bool verify = true;

    nlohmann::json to_json() const {
        return {{"schema", schema}, {"version", version}, {"scope", scope}, {"bound", bound},
                {"order", order},   {"fe_order", fe_order}, {"verify", verify}};
    }
    bool operator==(const StoreHeader&) const = default;
};

inline StoreHeader header_for(Scope scope, const ClassifyOptions& opt) {
    return {kSchemaName, kSchemaVersion, scope_name(scope), opt.bound, opt.extraction_order(scope), opt.fe_order, opt.verify};
}

struct StoreContents {
    std::optional<StoreHeader> header;
    std::vector<ClassificationRecord> records;
};

// Reads a store; any malformed line or unknown schema is an error.
inline StoreContents read_store(const std::string& path) {
    StoreContents out;
    std::ifstream in(path);
    if (!in) return out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const std::exception& e) {
            throw Error("store " + path + ": line " + std::to_string(lineno) + " is not JSON");
        }
        if (!out.header) {
            if (!j.contains("schema") || j["schema"] != kSchemaName)
                throw Error("store " + path + ": missing or foreign schema header");
            StoreHeader h;
            h.version = j.value("version", 0);
            if (h.version != kSchemaVersion)
                throw Error("store " + path + ": schema version " + std::to_string(h.version) + ", expected " +
                            std::to_string(kSchemaVersion));
            h.scope = j.value("scope", "");
            h.bound = j.value("bound", 0);
            h.order = j.value("order", 0);
            h.fe_order = j.value("fe_order", 0);
            h.verify = j.value("verify", true);
            out.header = h;
            continue;
        }
        try {
            out.records.push_back(ClassificationRecord::from_json(j));
        } catch (const std::exception& e) {
            throw Error("store " + path + ": line " + std::to_string(lineno) + " is not a record: " + e.what());
        }
    }
    return out;
}

struct ClassifyResult {
    ClassificationSummary summary;          // over every record of the scope (store and new)
    ClassificationSummary run_summary;      // accumulated from the records computed in this run
    std::vector<ClassificationRecord> records;
    long computed = 0, skipped = 0;
};

// Runs the pipeline over the scope, appending new records to `store_path`
// (if non-empty) and skipping keys already present.
inline ClassifyResult run_classify(Scope scope, const ClassifyOptions& opt, const std::string& store_path = "",
                                   const std::function<void(const ClassificationRecord&)>& on_record = {}) {
    auto items = scope_items(scope, opt.max_card);
    StoreHeader want = header_for(scope, opt);
    std::map<std::string, ClassificationRecord> done;
    std::ofstream out;
    if (!store_path.empty()) {
        auto existing = read_store(store_path);
        if (existing.header && !(*existing.header == want))
            throw Error("store " + store_path + " was written with different settings (" +
                        existing.header->to_json().dump() + "), refusing to append");
        for (auto& r : existing.records) done.emplace(r.key, std::move(r));
        out.open(store_path, std::ios::app);
        if (!out) throw Error("cannot open store " + store_path);
        if (!existing.header) out << want.to_json().dump() << "\n" << std::flush;
    }

    std::set<std::string> in_scope;
    for (const auto& w : items) in_scope.insert(w.key);
    std::vector<const WorkItem*> todo;
    for (const auto& w : items)
        if (!done.count(w.key)) todo.push_back(&w);

    ClassifyResult res;
    res.skipped = long(items.size() - todo.size());
    res.run_summary = make_summary(scope, opt.max_card, {});
    std::mutex mu;
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::vector<ClassificationRecord> fresh;
    auto worker = [&] {
        while (true) {
            std::size_t i = next++;
            if (i >= todo.size()) return;
            ClassificationRecord r;
            try {
                r = classify_item(scope, *todo[i], opt);
            } catch (...) {
                std::lock_guard lk(mu);
                if (!failure) failure = std::current_exception();
                next = todo.size();
                return;
            }
            std::lock_guard lk(mu);
            if (out.is_open()) out << r.to_json().dump() << "\n" << std::flush;
            res.run_summary.add(r);
            if (on_record) on_record(r);
            fresh.push_back(std::move(r));
        }
    };
    unsigned jobs = std::max(1u, std::min<unsigned>(worker_count(opt.jobs), unsigned(std::max<std::size_t>(todo.size(), 1))));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    res.computed = long(fresh.size());

    for (auto& r : fresh) done.emplace(r.key, std::move(r));
    for (auto& [k, r] : done)
        if (in_scope.count(k)) res.records.push_back(r);
    res.summary = make_summary(scope, opt.max_card, res.records);
    return res;
}

// Summary of a populated store; lists scope items that have no record.
inline std::pair<ClassificationSummary, std::vector<std::string>> summarize_store(const std::string& path, int max_card) {
    auto st = read_store(path);
    if (!st.header) throw Error("store " + path + " is empty or missing");
    Scope scope = parse_scope(st.header->scope);
    std::set<std::string> have;
    for (const auto& r : st.records) have.insert(r.key);
    std::vector<std::string> missing;
    std::vector<ClassificationRecord> in;
    std::set<std::string> keys;
    for (const auto& w : scope_items(scope, max_card)) {
        keys.insert(w.key);
        if (!have.count(w.key)) missing.push_back(w.key);
    }
    for (const auto& r : st.records)
        if (keys.count(r.key)) in.push_back(r);
    return {make_summary(scope, max_card, in), missing};
}

}  // namespace octwalk
