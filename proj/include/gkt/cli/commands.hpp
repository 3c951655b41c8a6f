#pragma once

// Command runners behind the gkt executable. They take file contents rather
// than paths so the test suite can drive them directly.

#include <json.hpp>

#include "gkt/cli/algebra_file.hpp"
#include "gkt/waldhausen/waldhausen.hpp"

namespace gkt::cli {

using Json = nlohmann::ordered_json;

struct RunOptions {
    std::optional<std::size_t> max_len;
    std::optional<std::size_t> dim_cap;
    std::optional<std::size_t> iter_cap;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint32_t> field;  // GF(p) override
};

struct RunResult {
    Json json;
    int exit_code = 0;  // 0 ok, 2 Unknown verdict, 1 error
};

inline Json bounded_json(const Bounded& b) {
    if (b.value) return *b.value;
    return b.to_string();
}

inline Json integer_json(const Integer& n) {
    if (n <= Integer(std::numeric_limits<std::int64_t>::max())) return static_cast<std::int64_t>(n);
    return n.str();
}

inline Json group_json(const AbelianGroupDescription& g) {
    Json j;
    j["free_rank"] = g.free_rank;
    j["invariant_factors"] = Json::array();
    for (const auto& d : g.invariant_factors) j["invariant_factors"].push_back(integer_json(d));
    j["generators"] = g.generators;
    j["description"] = g.to_string();
    return j;
}

inline std::string status_string(GorensteinStatus s) {
    switch (s) {
        case GorensteinStatus::Yes: return "yes";
        case GorensteinStatus::NoWithinBound: return "no_within_bound";
        default: return "unknown";
    }
}

template <class F>
Json algebra_json(const AlgebraFile& file, const Algebra<F>& a, const std::string& field) {
    Json j;
    j["name"] = file.name;
    j["field"] = field;
    j["dim"] = a.dim();
    j["vertices"] = file.vertices;
    j["arrows"] = Json::array();
    for (const auto& ar : file.arrows) j["arrows"].push_back({{"name", ar.name}, {"source", ar.source}, {"target", ar.target}});
    j["relations"] = Json::array();
    for (const auto& r : file.relations) j["relations"].push_back(relation_string(r));
    return j;
}

inline Json report_json(const DimensionReport& r) {
    Json j;
    j["simple_proj_dims"] = Json::array();
    for (const auto& b : r.simple_proj_dims) j["simple_proj_dims"].push_back(bounded_json(b));
    j["global_dim"] = bounded_json(r.global_dim);
    j["self_inj_dim_left"] = bounded_json(r.self_inj_dim_left);
    j["self_inj_dim_right"] = bounded_json(r.self_inj_dim_right);
    j["gorenstein"] = status_string(r.gorenstein);
    j["gorenstein_dim"] = r.is_gorenstein() ? Json(r.gorenstein_dim) : Json(nullptr);
    j["bound"] = r.bound;
    return j;
}

template <class F>
Json catalog_json(const GPCatalog<F>& cat) {
    Json j;
    j["verdict"] = to_string(cat.verdict);
    j["items"] = Json::array();
    for (const auto& it : cat.items) {
        Json x;
        x["dim_vector"] = it.module().dims();
        x["dim"] = it.module().total_dim();
        x["criterion"] = it.verdict().criterion;
        j["items"].push_back(std::move(x));
    }
    j["rounds"] = cat.rounds;
    j["notes"] = cat.notes;
    return j;
}

namespace detail {

struct Context {
    RunOptions opt;
    std::vector<AlgebraFile> files;

    std::uint64_t seed() const {
        if (opt.seed) return *opt.seed;
        return files.empty() ? 0 : static_cast<std::uint64_t>(files[0].option("seed", 0));
    }
    CatalogOptions catalog_options(const AlgebraFile& f) const {
        CatalogOptions c;
        c.dim_cap = opt.dim_cap ? *opt.dim_cap : static_cast<std::size_t>(f.option("dim_cap", 0));
        c.iter_cap = opt.iter_cap ? *opt.iter_cap : static_cast<std::size_t>(f.option("iter_cap", 32));
        c.bound = static_cast<std::size_t>(f.option("bound", 10));
        c.probe_depth = static_cast<std::size_t>(f.option("probe_depth", 4));
        c.seed = seed();
        return c;
    }
    std::optional<std::size_t> max_len() const { return opt.max_len; }
};

template <class F>
struct Analysis {
    Algebra<F> algebra;
    GPCatalog<F> catalog;
};

template <class F>
Analysis<F> analyze_one(const Context& ctx, const AlgebraFile& f, const F& field) {
    auto a = build(f, field, ctx.max_len());
    auto cat = gp_catalog(a, ctx.catalog_options(f));
    return {a, std::move(cat)};
}

inline void add_catalog_warnings(Json& warnings, const std::vector<std::string>& notes, const std::string& who) {
    for (const auto& n : notes) warnings.push_back(who + ": " + n);
}

template <class F>
RunResult run_single(const std::string& cmd, const Context& ctx, const F& field, const std::string& field_name) {
    RunResult r;
    const auto& file = ctx.files.at(0);
    auto an = analyze_one(ctx, file, field);
    Json& j = r.json;
    Json warnings = Json::array();
    j["algebra"] = algebra_json(file, an.algebra, field_name);
    j["dimension_report"] = report_json(an.catalog.report);
    if (cmd == "analyze" || cmd == "gp") j["gp_catalog"] = catalog_json(an.catalog);
    add_catalog_warnings(warnings, an.catalog.notes, file.name);
    if (an.catalog.verdict == CMVerdict::Unknown) {
        warnings.push_back("catalog verdict is Unknown; K-groups are not reported");
        if (cmd != "gp") {
            if (cmd == "analyze" || cmd == "k0" || cmd == "oracle-k0") j["k0"] = nullptr;
            if (cmd == "analyze" || cmd == "k1") j["k1"] = nullptr;
            if (cmd == "analyze" || cmd == "oracle-k0") j["oracle_agreement"] = nullptr;
        }
        j["warnings"] = warnings;
        r.exit_code = 2;
        return r;
    }
    const std::uint64_t seed = ctx.seed();
    std::optional<K0Result> k0;
    if (cmd == "analyze" || cmd == "k0" || cmd == "oracle-k0") {
        k0 = k0_gorenstein(an.catalog, K0Options{4096, 128, seed});
        j["k0"] = group_json(k0->group);
        if (k0->sampled) warnings.push_back("k0: some Ext^1 spaces were sampled rather than enumerated");
    }
    if (cmd == "analyze" || cmd == "k1") {
        auto k1 = k1_gorenstein(an.catalog);
        Json x = group_json(k1.group);
        x["order"] = integer_json(k1.order);
        x["lambda_dim"] = k1.lambda_dim;
        j["k1"] = std::move(x);
        if (!k1.structure_known) warnings.push_back("k1: unit group structure not determined, order only");
    }
    if (cmd == "analyze" || cmd == "oracle-k0") {
        WaldhausenOptions wo;
        wo.seed = seed;
        auto d = build_wdata(an.catalog, wo);
        auto oracle = k0_oracle(d);
        bool agree = oracle.same_group(k0->group);
        if (cmd == "oracle-k0") {
            j["oracle_k0"] = group_json(oracle);
            j["objects"] = d.objects.size();
            j["simplices"] = d.simplices.size();
        }
        j["oracle_agreement"] = agree;
        if (!agree) {
            warnings.push_back("Waldhausen oracle disagrees with the Ext^1 presentation");
            if (cmd == "oracle-k0") r.exit_code = 1;
        }
    }
    j["warnings"] = warnings;
    return r;
}

template <class F>
Json side_json(const InvariantSide<F>& s) {
    Json j;
    j["algebra"] = s.name;
    j["dimension_report"] = report_json(s.report);
    j["cm_verdict"] = to_string(s.verdict);
    j["catalog_size"] = s.catalog_size;
    j["k0"] = group_json(s.k0.group);
    Json k1 = group_json(s.k1.group);
    k1["order"] = integer_json(s.k1.order);
    j["k1"] = std::move(k1);
    return j;
}

template <class F>
RunResult run_compare(const Context& ctx, const F& field, const std::string& field_name) {
    RunResult r;
    const auto& fa = ctx.files.at(0);
    const auto& fb = ctx.files.at(1);
    auto a = build(fa, field, ctx.max_len());
    auto b = build(fb, field, ctx.max_len());
    Json& j = r.json;
    j["algebras"] = {algebra_json(fa, a, field_name), algebra_json(fb, b, field_name)};
    auto ca = gp_catalog(a, ctx.catalog_options(fa));
    auto cb = gp_catalog(b, ctx.catalog_options(fb));
    Json warnings = Json::array();
    add_catalog_warnings(warnings, ca.notes, fa.name);
    add_catalog_warnings(warnings, cb.notes, fb.name);
    if (ca.verdict == CMVerdict::Unknown || cb.verdict == CMVerdict::Unknown) {
        j["comparison"] = nullptr;
        warnings.push_back("a catalog verdict is Unknown; invariants are not compared");
        j["warnings"] = warnings;
        r.exit_code = 2;
        return r;
    }
    auto c = compare_invariants(a, b, ctx.catalog_options(fa));
    j["comparison"] = {side_json(c.a), side_json(c.b)};
    j["equal"] = {{"k0", c.k0_equal},
                  {"k1", c.k1_equal},
                  {"cm", c.cm_equal},
                  {"gorenstein", c.gorenstein_equal},
                  {"all", c.all_equal()}};
    j["warnings"] = warnings;
    return r;
}

inline Json sample_json(const AdjunctionSample& s) {
    return Json{{"module", s.module},
                {"dim", s.dim},
                {"matches_tensor", s.matches_tensor},
                {"projective", s.projective},
                {"pd", bounded_json(s.pd)},
                {"object_iso", s.object_iso},
                {"split_identity", s.split_identity}};
}

template <class F>
RunResult run_semt(const Context& ctx, const std::vector<BimoduleFile>& bims, const F& field, const std::string& field_name) {
    RunResult r;
    const auto& fa = ctx.files.at(0);
    const auto& fb = ctx.files.at(1);
    auto a = build(fa, field, ctx.max_len());
    // the same file twice means the same algebra, so regular bimodules make sense
    auto b = serialize(fa) == serialize(fb) ? a : build(fb, field, ctx.max_len());
    Json& j = r.json;
    j["algebras"] = {algebra_json(fa, a, field_name), algebra_json(fb, b, field_name)};
    Bimodule<F> m, n;
    if (bims.empty()) {
        if (!a.same_as(b)) throw InvalidArgument("semt without bimodule files needs the same algebra twice");
        m = n = regular_bimodule(a);
        j["bimodules"] = {"regular", "regular"};
    } else {
        if (bims.size() != 2) throw InvalidArgument("semt takes two bimodule files: M (B-A) then N (A-B)");
        m = build_bimodule(bims[0], b, a);
        n = build_bimodule(bims[1], a, b);
        j["bimodules"] = {bims[0].name, bims[1].name};
    }
    const auto seed = ctx.seed();
    auto s = check_semt(m, n, seed);
    j["semt"] = {{"passed", s.passed()},
                 {"p_dim", s.p_split.found ? Json(s.p().total_dim()) : Json(nullptr)},
                 {"q_dim", s.q_split.found ? Json(s.q().total_dim()) : Json(nullptr)},
                 {"p_projective", s.p_projective},
                 {"q_projective", s.q_projective},
                 {"witnesses", s.witnesses}};
    j["frobenius"] = {{"m", s.frobenius_m}, {"n", s.frobenius_n}};
    std::vector<Representation<F>> xs, ys;
    for (std::size_t v = 0; v < a.num_vertices(); ++v) {
        xs.push_back(simple(a, v));
        xs.push_back(projective(a, v));
    }
    for (std::size_t v = 0; v < b.num_vertices(); ++v) {
        ys.push_back(simple(b, v));
        ys.push_back(projective(b, v));
    }
    auto u = check_unit_counit_pd(m, n, xs, ys, 6, seed);
    Json units = Json::array(), counits = Json::array();
    for (const auto& x : u.units) units.push_back(sample_json(x));
    for (const auto& y : u.counits) counits.push_back(sample_json(y));
    j["unit_counit"] = {{"passed", u.passed()}, {"units", units}, {"counits", counits}};
    j["warnings"] = u.flags;
    return r;
}

template <class F>
RunResult dispatch(const std::string& cmd, const Context& ctx, const std::vector<BimoduleFile>& bims, const F& field,
                   const std::string& field_name) {
    if (cmd == "compare") return run_compare(ctx, field, field_name);
    if (cmd == "semt") return run_semt(ctx, bims, field, field_name);
    return run_single(cmd, ctx, field, field_name);
}

}  // namespace detail

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> c{"analyze", "gp", "k0", "k1", "oracle-k0", "compare", "semt"};
    return c;
}

/// Run a command on already-read files. Errors become exit code 1 with an
/// "error" key; nothing is thrown.
inline RunResult run(const std::string& cmd, const std::vector<std::string>& algebra_texts,
                     const std::vector<std::string>& bimodule_texts = {}, const RunOptions& opt = {}) {
    RunResult r;
    try {
        if (std::find(commands().begin(), commands().end(), cmd) == commands().end())
            throw InvalidArgument("unknown command '" + cmd + "'");
        const bool pair = cmd == "compare" || cmd == "semt";
        if (algebra_texts.size() != (pair ? 2u : 1u))
            throw InvalidArgument(cmd + " takes " + (pair ? "two algebra files" : "one algebra file"));
        if (!bimodule_texts.empty() && cmd != "semt") throw InvalidArgument("bimodule files are only used by semt");
        detail::Context ctx;
        ctx.opt = opt;
        for (const auto& t : algebra_texts) ctx.files.push_back(parse(t));
        std::vector<BimoduleFile> bims;
        for (const auto& t : bimodule_texts) bims.push_back(parse_bimodule(t));

        std::uint32_t p = opt.field ? *opt.field : ctx.files[0].prime;
        if (!opt.field && pair && ctx.files[1].prime != p)
            throw InvalidArgument("the two files are over different fields; pass --field");
        if (p == 0) {
            // dimensions only; catalogs need a finite field
            RationalField q;
            Json algs = Json::array(), reports = Json::array();
            for (const auto& f : ctx.files) {
                auto a = build(f, q, ctx.max_len());
                algs.push_back(algebra_json(f, a, "QQ"));
                reports.push_back(report_json(dimension_report(a, static_cast<std::size_t>(f.option("bound", 10)))));
            }
            r.json = Json{{"algebras", algs},
                          {"dimension_reports", reports},
                          {"error", cmd + " needs a finite field; rerun with --field p"},
                          {"kind", "field"}};
            r.exit_code = 1;
        } else {
            PrimeField f(p);
            r = detail::dispatch(cmd, ctx, bims, f, "GF(" + std::to_string(p) + ")");
        }
    } catch (const ParseError& e) {
        r.json = Json{{"error", e.what()}, {"kind", "parse"}, {"line", e.line}, {"column", e.column}};
        r.exit_code = 1;
    } catch (const CatalogUnknown& e) {
        r.json = Json{{"error", e.what()}, {"kind", "unknown"}};
        r.exit_code = 2;
    } catch (const std::exception& e) {
        r.json = Json{{"error", e.what()}, {"kind", "error"}};
        r.exit_code = 1;
    }
    return r;
}

/// Human-readable rendering: one "key: value" line per top-level entry.
inline std::string render_text(const Json& j, const std::string& indent = "") {
    std::string out;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto& v = it.value();
        if (v.is_object()) {
            out += indent + it.key() + ":\n" + render_text(v, indent + "  ");
        } else if (v.is_array() && !v.empty() && v.front().is_object()) {
            out += indent + it.key() + ":\n";
            for (const auto& x : v) out += indent + "  - " + x.dump() + "\n";
        } else if (v.is_string()) {
            out += indent + it.key() + ": " + v.get<std::string>() + "\n";
        } else {
            out += indent + it.key() + ": " + v.dump() + "\n";
        }
    }
    return out;
}

}  // namespace gkt::cli
