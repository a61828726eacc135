#pragma once

// JSON schemas for problem inputs and machine-checkable certificates.
//
// Conventions: structural counts (degrees, dimensions, indices, depths) are
// JSON numbers; ring data (matrix entries, invariant factors, exponents,
// annihilators) are decimal strings so certificates never depend on 64-bit
// integer limits.  Emission uses ordered maps with a fixed key order, so a
// certificate regenerated from the same input is byte-identical — replay
// re-parses (constructors re-validate every matrix identity), re-runs the
// pipeline, and compares canonical serializations.

#include "homcert/counterexample.hpp"

#include "json.hpp"

#include <sstream>

namespace homcert {

using Json = nlohmann::ordered_json;

inline constexpr const char* kCertificateFormat = "homcert-certificate";
inline constexpr int kCertificateVersion = 1;

// ---------------------------------------------------------------- basics --

inline Json matrix_to_json(const ExactMatrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows; ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols; ++j) row.push_back(to_decimal(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    Json out;
    out["rows"] = m.rows;
    out["cols"] = m.cols;
    out["entries"] = std::move(rows);
    return out;
}

inline ExactMatrix matrix_from_json(const Json& j, const Ring& ring) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw Error("matrix: expected {rows, cols, entries}");
    ExactMatrix m(ring, j.at("rows").get<int>(), j.at("cols").get<int>());
    const Json& rows = j.at("entries");
    if (int(rows.size()) != m.rows) throw Error("matrix: row count mismatch");
    for (int i = 0; i < m.rows; ++i) {
        const Json& row = rows.at(size_t(i));
        if (int(row.size()) != m.cols) throw Error("matrix: column count mismatch");
        for (int jj = 0; jj < m.cols; ++jj)
            m.set(i, jj, parse_decimal(row.at(size_t(jj)).get<std::string>()));
    }
    return m;
}

// Row-major literal form accepted on input: [["1","0"],["0","1"]]
inline ExactMatrix matrix_from_literal(const Json& j, const Ring& ring, int rows, int cols) {
    ExactMatrix m(ring, rows, cols);
    if (int(j.size()) != rows) throw Error("matrix literal: expected " + std::to_string(rows) + " rows");
    for (int i = 0; i < rows; ++i) {
        const Json& row = j.at(size_t(i));
        if (int(row.size()) != cols) throw Error("matrix literal: expected " + std::to_string(cols) + " columns");
        for (int jj = 0; jj < cols; ++jj) {
            const Json& cell = row.at(size_t(jj));
            m.set(i, jj, cell.is_string() ? parse_decimal(cell.get<std::string>())
                                          : Int(cell.get<long>()));
        }
    }
    return m;
}

inline Json group_to_json(const FGAbelianGroup& g) {
    Json out;
    out["free_rank"] = g.free_rank;
    Json tor = Json::array();
    for (const Int& d : g.torsion) tor.push_back(to_decimal(d));
    out["torsion"] = std::move(tor);
    out["describe"] = g.describe();
    return out;
}

inline Json base_to_json(const BaseCategory& base) {
    Json out;
    if (!base.is_quiver()) {
        out["kind"] = "Z";
        return out;
    }
    out["kind"] = "quiver";
    out["prime"] = to_decimal(base.ring.modulus);
    out["vertices"] = base.algebra->quiver.vertex_count;
    Json arrows = Json::array();
    for (auto [s, t] : base.algebra->quiver.arrows) arrows.push_back(Json::array({s, t}));
    out["arrows"] = std::move(arrows);
    return out;
}

inline std::shared_ptr<const BaseCategory> base_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind")) throw Error("base: expected {kind: ...}");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "Z") return std::make_shared<BaseCategory>(BaseCategory::integers());
    if (kind != "quiver") throw Error("base: unknown kind '" + kind + "'");
    Quiver q;
    q.vertex_count = j.at("vertices").get<int>();
    for (const Json& a : j.at("arrows"))
        q.arrows.push_back({a.at(0).get<int>(), a.at(1).get<int>()});
    const Json& p = j.at("prime");
    Int prime = p.is_string() ? parse_decimal(p.get<std::string>()) : Int(p.get<long>());
    return std::make_shared<BaseCategory>(BaseCategory::quiver_algebra(prime, q));
}

inline Json shape_to_json(const BaseCategory& base, const ObjectShape& s) {
    if (!base.is_quiver()) return Json(s.count());
    Json word = Json::array();
    for (int v : s.summands) word.push_back(v);
    return word;
}

inline ObjectShape shape_from_json(const BaseCategory& base, const Json& j) {
    if (j.is_number()) {
        if (base.is_quiver()) throw Error("quiver object shapes are summand lists, not ranks");
        return ObjectShape::free_module(j.get<int>());
    }
    if (!j.is_array()) throw Error("object shape: expected rank or summand list");
    ObjectShape s;
    for (const Json& v : j) s.summands.push_back(v.get<int>());
    return s;
}

inline Json complex_to_json(const BoundedComplex& x) {
    Json degrees = Json::object();
    Json diffs = Json::object();
    for (const auto& [i, shape] : x.objects())
        degrees[std::to_string(i)] = shape_to_json(x.base(), shape);
    for (int i = x.lowest_degree(); i < x.highest_degree(); ++i) {
        ExactMatrix d = x.diff_at(i);
        if (!d.is_zero()) diffs[std::to_string(i)] = matrix_to_json(d);
    }
    Json out;
    out["degrees"] = std::move(degrees);
    out["differentials"] = std::move(diffs);
    return out;
}

inline BoundedComplex complex_from_json(std::shared_ptr<const BaseCategory> base, const Json& j) {
    if (!j.is_object() || !j.contains("degrees")) throw Error("complex: expected {degrees, differentials}");
    std::map<int, ObjectShape> objects;
    for (const auto& [key, val] : j.at("degrees").items())
        objects[std::stoi(key)] = shape_from_json(*base, val);
    std::map<int, ExactMatrix> diffs;
    if (j.contains("differentials"))
        for (const auto& [key, val] : j.at("differentials").items()) {
            int i = std::stoi(key);
            auto shape_at = [&](int d) {
                auto it = objects.find(d);
                return it == objects.end() ? ObjectShape{} : it->second;
            };
            int rows = base->dim(shape_at(i + 1)), cols = base->dim(shape_at(i));
            diffs[i] = val.is_object() ? matrix_from_json(val, base->ring)
                                       : matrix_from_literal(val, base->ring, rows, cols);
        }
    return BoundedComplex(std::move(base), std::move(objects), std::move(diffs));
}

inline Json components_to_json(const std::map<int, ExactMatrix>& comps) {
    Json out = Json::object();
    for (const auto& [i, m] : comps)
        if (!m.is_zero()) out[std::to_string(i)] = matrix_to_json(m);
    return out;
}

inline std::map<int, ExactMatrix> components_from_json(const Json& j, const Ring& ring) {
    std::map<int, ExactMatrix> out;
    for (const auto& [key, val] : j.items()) out[std::stoi(key)] = matrix_from_json(val, ring);
    return out;
}

// ----------------------------------------------------------------- towers --

inline Json tower_to_json(const WitnessTower::Ptr& t) {
    if (t->is_leaf()) {
        Json summands = Json::array();
        for (const LeafSummand& s : t->summands()) {
            Json e;
            e["generator"] = t->pool()->entries[size_t(s.generator)].first;
            e["shift"] = s.shift;
            e["multiplicity"] = s.multiplicity;
            summands.push_back(std::move(e));
        }
        Json leaf;
        leaf["summands"] = std::move(summands);
        Json out;
        out["leaf"] = std::move(leaf);
        return out;
    }
    Json node;
    node["left"] = tower_to_json(t->left());
    node["right"] = tower_to_json(t->right());
    node["glue"] = components_to_json(t->glue().components());
    Json out;
    out["node"] = std::move(node);
    return out;
}

inline WitnessTower::Ptr tower_from_json(const Json& j, const PoolPtr& pool) {
    if (j.contains("leaf")) {
        std::vector<LeafSummand> summands;
        for (const Json& e : j.at("leaf").at("summands")) {
            int idx = pool->find(e.at("generator").get<std::string>());
            if (idx < 0) throw Error("tower leaf references unknown generator '" +
                                     e.at("generator").get<std::string>() + "'");
            summands.push_back(LeafSummand{idx, e.at("shift").get<int>(),
                                           e.at("multiplicity").get<int>()});
        }
        return WitnessTower::leaf(pool, std::move(summands));
    }
    if (!j.contains("node")) throw Error("tower: expected {leaf} or {node}");
    const Json& n = j.at("node");
    auto left = tower_from_json(n.at("left"), pool);
    auto right = tower_from_json(n.at("right"), pool);
    Ring ring = left->realize().base().ring;
    ChainMap glue(shift(right->realize(), -1), left->realize(),
                  components_from_json(n.at("glue"), ring));
    return WitnessTower::node(std::move(left), std::move(right), std::move(glue));
}

inline Json pool_to_json(const GeneratorPool& pool) {
    Json out = Json::array();
    for (const auto& [name, complex] : pool.entries) {
        Json e;
        e["name"] = name;
        e["complex"] = complex_to_json(complex);
        out.push_back(std::move(e));
    }
    return out;
}

inline PoolPtr pool_from_json(const Json& j, std::shared_ptr<const BaseCategory> base) {
    auto pool = std::make_shared<GeneratorPool>();
    for (const Json& e : j)
        pool->entries.push_back({e.at("name").get<std::string>(),
                                 complex_from_json(base, e.at("complex"))});
    return pool;
}

// ---------------------------------------------------------- problem files --

struct Problem {
    std::shared_ptr<const BaseCategory> base;
    std::vector<std::pair<std::string, BoundedComplex>> objects;  // insertion order
    std::vector<std::vector<std::string>> generator_parts;        // names
    std::string target;                                           // may be empty
    int max_depth = 8;
    std::uint64_t seed = 1;
    int trials = 100;

    const BoundedComplex& object(const std::string& name) const {
        for (const auto& [n, c] : objects)
            if (n == name) return c;
        throw Error("unknown object '" + name + "'");
    }

    GeneratorSystem system() const {
        GeneratorSystem s;
        s.base = base;
        for (const auto& part_names : generator_parts) {
            std::vector<int> part;
            for (const std::string& n : part_names) {
                part.push_back(int(s.generators.size()));
                s.generators.push_back({n, object(n)});
            }
            s.parts.push_back(std::move(part));
        }
        s.validate();
        return s;
    }
};

namespace detail {

inline BoundedComplex resolve_object(const Json& descriptor, Problem& problem,
                                     std::map<std::string, int>& in_flight,
                                     const Json& all_objects, const std::string& name);

inline BoundedComplex object_by_name(const std::string& name, Problem& problem,
                                     std::map<std::string, int>& in_flight,
                                     const Json& all_objects) {
    for (const auto& [n, c] : problem.objects)
        if (n == name) return c;
    if (!all_objects.contains(name)) throw Error("unknown object '" + name + "'");
    if (in_flight[name]) throw Error("object definitions form a cycle at '" + name + "'");
    in_flight[name] = 1;
    BoundedComplex c = resolve_object(all_objects.at(name), problem, in_flight, all_objects, name);
    in_flight[name] = 0;
    problem.objects.push_back({name, c});
    return c;
}

inline BoundedComplex resolve_object(const Json& descriptor, Problem& problem,
                                     std::map<std::string, int>& in_flight,
                                     const Json& all_objects, const std::string& name) {
    if (!descriptor.is_object() || descriptor.size() != 1)
        throw Error("object '" + name + "': expected exactly one of module/rep/simple/projective/complex/shift/sum");
    if (descriptor.contains("module")) {
        const Json& m = descriptor.at("module");
        FGAbelianGroup g;
        g.free_rank = m.value("free_rank", 0);
        if (m.contains("torsion"))
            for (const Json& d : m.at("torsion"))
                g.torsion.push_back(d.is_string() ? parse_decimal(d.get<std::string>())
                                                  : Int(d.get<long>()));
        return projective_resolution(problem.base, g);
    }
    if (descriptor.contains("rep")) {
        const Json& r = descriptor.at("rep");
        QuiverRep rep;
        for (const Json& d : r.at("dims")) rep.dims.push_back(d.get<int>());
        const auto& arrows = problem.base->algebra->quiver.arrows;
        const Json& maps = r.at("arrows");
        if (maps.size() != arrows.size()) throw Error("rep: expected one matrix per arrow");
        for (size_t a = 0; a < arrows.size(); ++a) {
            auto [s, t] = arrows[a];
            rep.arrow_maps.push_back(matrix_from_literal(maps.at(a), problem.base->ring,
                                                         rep.dims[size_t(t - 1)],
                                                         rep.dims[size_t(s - 1)]));
        }
        return projective_resolution(problem.base, rep);
    }
    if (descriptor.contains("simple"))
        return projective_resolution(problem.base,
                                     simple_rep(*problem.base, descriptor.at("simple").get<int>()));
    if (descriptor.contains("projective")) {
        int v = descriptor.at("projective").get<int>();
        if (!problem.base->is_quiver()) throw Error("'projective' needs the quiver base");
        return one_term_complex(problem.base, 0, ObjectShape{{v}});
    }
    if (descriptor.contains("complex")) return complex_from_json(problem.base, descriptor.at("complex"));
    if (descriptor.contains("shift")) {
        const Json& sh = descriptor.at("shift");
        return shift(object_by_name(sh.at("of").get<std::string>(), problem, in_flight, all_objects),
                     sh.at("by").get<int>());
    }
    if (descriptor.contains("sum")) {
        BoundedComplex acc = zero_complex(problem.base);
        for (const Json& n : descriptor.at("sum"))
            acc = direct_sum(acc, object_by_name(n.get<std::string>(), problem, in_flight, all_objects));
        return acc;
    }
    throw Error("object '" + name + "': unknown descriptor");
}

}  // namespace detail

inline Problem problem_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("base")) throw Error("problem: expected {base, objects, ...}");
    Problem problem;
    problem.base = base_from_json(j.at("base"));
    std::map<std::string, int> in_flight;
    const Json empty = Json::object();
    const Json& objects = j.contains("objects") ? j.at("objects") : empty;
    for (const auto& [name, descriptor] : objects.items())
        detail::object_by_name(name, problem, in_flight, objects);
    if (j.contains("generators"))
        for (const Json& part : j.at("generators")) {
            std::vector<std::string> names;
            for (const Json& n : part) names.push_back(n.get<std::string>());
            problem.generator_parts.push_back(std::move(names));
        }
    if (j.contains("target")) problem.target = j.at("target").get<std::string>();
    if (j.contains("options")) {
        const Json& o = j.at("options");
        problem.max_depth = o.value("max_depth", problem.max_depth);
        problem.seed = o.value("seed", problem.seed);
        problem.trials = o.value("trials", problem.trials);
    }
    return problem;
}

inline Json problem_to_json(const Problem& p) {
    Json out;
    out["base"] = base_to_json(*p.base);
    Json objects = Json::object();
    for (const auto& [name, c] : p.objects) {
        Json descriptor;
        descriptor["complex"] = complex_to_json(c);
        objects[name] = std::move(descriptor);
    }
    out["objects"] = std::move(objects);
    Json gens = Json::array();
    for (const auto& part : p.generator_parts) {
        Json names = Json::array();
        for (const std::string& n : part) names.push_back(n);
        gens.push_back(std::move(names));
    }
    out["generators"] = std::move(gens);
    if (!p.target.empty()) out["target"] = p.target;
    Json options;
    options["max_depth"] = p.max_depth;
    options["seed"] = p.seed;
    options["trials"] = p.trials;
    out["options"] = std::move(options);
    return out;
}

// ------------------------------------------------------------ certificates --

inline Json certificate_envelope(const std::string& kind) {
    Json out;
    out["format"] = kCertificateFormat;
    out["version"] = kCertificateVersion;
    out["kind"] = kind;
    return out;
}

inline Json negativity_to_json(const Problem& problem, const NegativityReport& report) {
    Json out = certificate_envelope("negativity");
    out["problem"] = problem_to_json(problem);
    out["weakly_negative"] = report.weakly_negative;
    out["negative"] = report.negative;
    out["partition_ok"] = report.partition_ok;
    Json bad = Json::array();
    for (const OffendingPair& o : report.offending_pairs) {
        Json e;
        e["source"] = o.p;
        e["target"] = o.q;
        e["degree"] = o.degree;
        e["hom"] = o.hom;
        e["breaks"] = o.breaks == OffendingPair::Breaks::weak      ? "weak_negativity"
                      : o.breaks == OffendingPair::Breaks::partition ? "partition"
                                                                     : "negativity";
        if (o.representative) e["witness"] = components_to_json(o.representative->components());
        bad.push_back(std::move(e));
    }
    out["offending_pairs"] = std::move(bad);
    return out;
}

inline Json ext_table_to_json(const Problem& problem, int lo, int hi) {
    Json out = certificate_envelope("ext-table");
    out["problem"] = problem_to_json(problem);
    out["range"] = Json::array({lo, hi});
    GeneratorSystem s = problem.system();
    Json table = Json::array();
    for (const auto& [pname, pobj] : s.generators)
        for (const auto& [qname, qobj] : s.generators) {
            Json row;
            row["source"] = pname;
            row["target"] = qname;
            DegreeWindow w = hom_window(pobj, qobj);
            row["window"] = w.empty() ? Json::array() : Json::array({w.lo, w.hi});
            Json groups = Json::object();
            for (int n = lo; n <= hi; ++n) {
                if (!w.contains(n)) continue;  // provably zero outside the window
                HomGroup h = derived_hom(pobj, qobj, n);
                if (!h.value.is_trivial()) groups[std::to_string(n)] = group_to_json(h.value);
            }
            row["groups"] = std::move(groups);
            table.push_back(std::move(row));
        }
    out["table"] = std::move(table);
    return out;
}

inline Json aisle_to_json(const AisleEvidence& ev) {
    Json out;
    out["holds"] = ev.holds;
    Json hom = Json::array();
    for (const auto& [deg, desc] : ev.homology) {
        Json e;
        e["degree"] = deg;
        e["group"] = desc;
        hom.push_back(std::move(e));
    }
    out["homology"] = std::move(hom);
    Json fails = Json::array();
    for (const std::string& f : ev.failures) fails.push_back(f);
    out["failures"] = std::move(fails);
    return out;
}

inline Json approximation_to_json(const Problem& problem, const ApproximationCertificate& cert) {
    Json out = certificate_envelope(cert.role);
    out["problem"] = problem_to_json(problem);
    out["status"] = cert.status == ApproxStatus::success   ? "SUCCESS"
                    : cert.status == ApproxStatus::partial ? "PARTIAL"
                                                           : "HYPOTHESIS_FAILED";
    if (!cert.failure_reason.empty()) out["failure_reason"] = cert.failure_reason;
    if (!cert.convention_note.empty()) out["convention_note"] = cert.convention_note;
    if (cert.status == ApproxStatus::hypothesis_failed) return out;

    out["target"] = complex_to_json(cert.f);
    out["depth"] = cert.depth;
    out["partitioned"] = cert.partitioned;
    out["witness"] = cert.e_witness ? tower_to_json(cert.e_witness) : Json(nullptr);
    out["phi"] = cert.phi ? components_to_json(cert.phi->components()) : Json(nullptr);
    out["cone"] = complex_to_json(cert.d);
    Json stages = Json::array();
    for (const StageRecord& st : cert.stages) {
        Json e;
        e["stage"] = st.stage;
        if (st.part >= 0) e["part"] = st.part;
        Json cells = Json::array();
        for (size_t k = 0; k < st.cells_attached.size(); ++k) {
            Json c;
            c["generator"] = st.cells_attached[k].first;
            c["copies"] = st.cells_attached[k].second;
            c["hom"] = st.hom_groups[k].second;
            cells.push_back(std::move(c));
        }
        e["cells"] = std::move(cells);
        stages.push_back(std::move(e));
    }
    out["stages"] = std::move(stages);
    out["aisle"] = aisle_to_json(cert.aisle);
    if (cert.annihilation) {
        Json a;
        a["exponent"] = to_decimal(cert.annihilation->exponent);
        a["homotopy"] = components_to_json(cert.annihilation->homotopy.components());
        out["annihilation"] = std::move(a);
    } else {
        out["annihilation"] = Json(nullptr);
    }
    return out;
}

inline Json obstruction_to_json(const ObstructionCertificate& cert) {
    Json out;
    out["prime"] = to_decimal(cert.p);
    out["bound"] = cert.bound;
    out["target"] = complex_to_json(cert.f);
    out["annihilation_bound"] = to_decimal(cert.annihilation_bound);
    Json leaves = Json::array();
    for (const auto& [s, h] : cert.leaf_certificates) {
        Json e;
        e["shift"] = s;
        e["annihilator"] = to_decimal(cert.p);
        e["homotopy"] = components_to_json(h.components());
        leaves.push_back(std::move(e));
    }
    out["leaf_certificates"] = std::move(leaves);
    out["h0"] = group_to_json(cert.h0_f);
    out["h0_exponent"] = to_decimal(cert.h0_exponent);
    out["arithmetic_core"] = cert.arithmetic_core;
    out["surjection_argument"] = cert.surjection_argument;
    out["verdict"] = cert.verdict;
    return out;
}

inline Json counterexample_to_json(const MinimalDepthResult& result) {
    Json out = certificate_envelope("counterexample");
    out["prime"] = to_decimal(result.lower_bound.p);
    out["bound"] = result.lower_bound.bound;
    out["minimal_depth"] = result.depth;
    out["obstruction"] = obstruction_to_json(result.lower_bound);

    auto base = result.lower_bound.f.base_ptr();
    Problem sub;
    sub.base = base;
    std::string gen = "Z/" + to_decimal(result.lower_bound.p);
    sub.objects.push_back({gen, projective_resolution(base, FGAbelianGroup{0, {result.lower_bound.p}})});
    sub.objects.push_back({"F", result.lower_bound.f});
    sub.generator_parts = {{gen}};
    sub.target = "F";
    sub.max_depth = result.lower_bound.bound + 1;
    out["upper_bound"] = approximation_to_json(sub, result.upper_bound);
    Problem capped = sub;
    capped.max_depth = result.lower_bound.bound;
    out["capped_run"] = approximation_to_json(capped, result.capped_run);
    return out;
}

inline Json tower_file_to_json(const BaseCategory& base, const GeneratorPool& pool,
                               const WitnessTower::Ptr& tower) {
    Json out = certificate_envelope("tower");
    out["base"] = base_to_json(base);
    out["pool"] = pool_to_json(pool);
    out["tower"] = tower_to_json(tower);
    return out;
}

struct TowerFile {
    std::shared_ptr<const BaseCategory> base;
    PoolPtr pool;
    WitnessTower::Ptr tower;
};

inline TowerFile tower_file_from_json(const Json& j) {
    TowerFile out;
    out.base = base_from_json(j.at("base"));
    out.pool = pool_from_json(j.at("pool"), out.base);
    out.tower = tower_from_json(j.at("tower"), out.pool);
    return out;
}

inline Json rebracket_to_json(const BaseCategory& base, const GeneratorPool& pool,
                              const WitnessTower::Ptr& input, const RebracketResult& result) {
    Json out = certificate_envelope("rebracket");
    out["base"] = base_to_json(base);
    out["pool"] = pool_to_json(pool);
    out["input"] = tower_to_json(input);
    out["output"] = tower_to_json(result.tower);
    out["comparison"] = components_to_json(result.compare.components());
    out["depth"] = result.tower->depth();
    out["verified_quasi_iso"] = true;
    return out;
}

// ----------------------------------------------------------------- replay --

struct ReplayResult {
    bool ok = true;
    std::string message = "replay ok";
};

inline ReplayResult replay_failure(const std::string& why) { return {false, why}; }

// Re-run the computation described by a certificate's embedded problem and
// demand the canonical serialization matches the stored one field by field.
inline ReplayResult verify_certificate(const Json& cert) {
    if (!cert.is_object() || cert.value("format", "") != kCertificateFormat)
        throw Error("not a homcert certificate");
    if (cert.value("version", -1) != kCertificateVersion)
        throw Error("unsupported certificate version");
    std::string kind = cert.value("kind", "");

    auto compare = [&](const Json& regenerated) -> ReplayResult {
        if (regenerated == cert) return {};
        for (const auto& [key, val] : cert.items())
            if (!regenerated.contains(key) || regenerated.at(key) != val)
                return replay_failure("recomputation drift in field '" + key + "'");
        return replay_failure("recomputation drift (extra fields)");
    };

    if (kind == "negativity") {
        Problem problem = problem_from_json(cert.at("problem"));
        return compare(negativity_to_json(problem, check_negativity(problem.system())));
    }
    if (kind == "ext-table") {
        Problem problem = problem_from_json(cert.at("problem"));
        return compare(ext_table_to_json(problem, cert.at("range").at(0).get<int>(),
                                         cert.at("range").at(1).get<int>()));
    }
    if (kind == "approximation" || kind == "weight_decomposition") {
        Problem problem = problem_from_json(cert.at("problem"));
        if (problem.target.empty()) return replay_failure("certificate lacks a target");
        // structural re-validation of the stored witness before re-running
        if (cert.contains("witness") && !cert.at("witness").is_null()) {
            GeneratorSystem s = problem.system();
            auto tower = tower_from_json(cert.at("witness"), s.pool());
            ChainMap phi(tower->realize(), problem.object(problem.target),
                         components_from_json(cert.at("phi"), problem.base->ring));
            if (mapping_cone(phi) != complex_from_json(problem.base, cert.at("cone")))
                return replay_failure("stored cone is not the cone of the stored phi");
            if (cert.contains("annihilation") && !cert.at("annihilation").is_null()) {
                const Json& a = cert.at("annihilation");
                Int n = parse_decimal(a.at("exponent").get<std::string>());
                // the constructor re-checks d h + h d = N * id degreewise
                Homotopy check(scale_map(n, identity_map(tower->realize())),
                               zero_map(tower->realize(), tower->realize()),
                               components_from_json(a.at("homotopy"), problem.base->ring));
            }
        }
        ApproximationCertificate fresh =
            kind == "weight_decomposition"
                ? weight_decomposition(problem.object(problem.target), problem.system(),
                                       problem.max_depth)
                : approximate(problem.object(problem.target), problem.system(), problem.max_depth);
        return compare(approximation_to_json(problem, fresh));
    }
    if (kind == "counterexample") {
        Int p = parse_decimal(cert.at("prime").get<std::string>());
        int bound = cert.at("bound").get<int>();
        // independent re-verification of the stored leaf homotopies
        auto base = std::make_shared<BaseCategory>(BaseCategory::integers());
        BoundedComplex zp = projective_resolution(base, FGAbelianGroup{0, {p}});
        for (const Json& leaf : cert.at("obstruction").at("leaf_certificates")) {
            BoundedComplex cell = shift(zp, leaf.at("shift").get<int>());
            // constructing the homotopy replays d h + h d = p * id exactly
            Homotopy h(scale_map(p, identity_map(cell)), zero_map(cell, cell),
                       components_from_json(leaf.at("homotopy"), base->ring));
        }
        return compare(counterexample_to_json(minimal_depth(p, bound)));
    }
    if (kind == "tower") {
        // hand-written tower files may use literal matrices; parsing
        // re-validates every glue and cone, so compare canonical forms
        TowerFile tf = tower_file_from_json(cert);
        Json canonical = tower_file_to_json(*tf.base, *tf.pool, tf.tower);
        TowerFile back = tower_file_from_json(canonical);
        if (back.tower->realize() != tf.tower->realize())
            return replay_failure("tower canonicalization drift");
        return {};
    }
    if (kind == "rebracket") {
        auto base = base_from_json(cert.at("base"));
        PoolPtr pool = pool_from_json(cert.at("pool"), base);
        auto input = tower_from_json(cert.at("input"), pool);
        RebracketResult fresh = octahedral_rebracket(input);
        return compare(rebracket_to_json(*base, *pool, input, fresh));
    }
    throw Error("unknown certificate kind '" + kind + "'");
}

}  // namespace homcert
