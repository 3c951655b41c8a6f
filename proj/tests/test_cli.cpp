#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "gkt/cli/commands.hpp"
#include "support.hpp"

using namespace gkt;
using namespace gkt::cli;

namespace {

std::string shipped(const std::string& name) {
    std::ifstream in(std::string(GKT_ALGEBRA_DIR) + "/" + name);
    REQUIRE(in);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

const std::vector<std::string> kShipped{"example61A.alg", "example61B.alg", "example62A.alg",
                                        "example62B.alg", "kx2.alg",        "semisimple2.alg"};

template <class Fn>
ParseError parse_error(Fn fn) {
    try {
        fn();
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("no ParseError");
    return ParseError(0, 0, "");
}

}  // namespace

TEST_CASE("algebra files", "[cli]") {
    SECTION("example61A") {
        auto f = parse(shipped("example61A.alg"));
        CHECK(f.name == "example61A");
        CHECK(f.prime == 5);
        CHECK(f.vertices.size() == 2);
        CHECK(f.arrows.size() == 2);
        REQUIRE(f.relations.size() == 1);
        CHECK(f.relations[0].terms[0].word == std::vector<std::string>{"beta", "alpha", "beta", "alpha"});
        PrimeField k(5);
        auto a = build(f, k);
        auto ref = testalg::example61A(k);
        CHECK(a.dim() == ref.dim());
        CHECK(a.dim() == 9);
    }
    SECTION("example61B") {
        auto f = parse(shipped("example61B.alg"));
        CHECK(f.vertices.size() == 2);
        CHECK(f.arrows.size() == 3);
        CHECK(f.arrows[2].source == f.arrows[2].target);  // the loop z
        REQUIRE(f.relations.size() == 4);
        CHECK(f.relations[3].terms.size() == 2);
        CHECK(f.relations[3].terms[1].coeff == Coefficient{-1, 1});
        PrimeField k(5);
        CHECK(build(f, k).dim() == testalg::example61B(k).dim());
    }
    SECTION("every shipped file builds the algebra used by the tests") {
        PrimeField f3(3), f5(5);
        CHECK(build(parse(shipped("example62A.alg")), f3).dim() == testalg::example62A(f3).dim());
        CHECK(build(parse(shipped("example62B.alg")), f3).dim() == testalg::example62B(f3).dim());
        CHECK(build(parse(shipped("kx2.alg")), f3).dim() == 2);
        CHECK(build(parse(shipped("semisimple2.alg")), f5).dim() == 2);
    }
    SECTION("round trip") {
        for (const auto& name : kShipped) {
            auto f = parse(shipped(name));
            auto canon = serialize(f);
            CHECK(parse(canon) == f);
            CHECK(serialize(parse(canon)) == canon);
        }
        auto f = parse("algebra t over QQ   # comment\n\nvertices a b\narrow p : a -> b\narrow q : a -> b\n"
                       "arrow r : b -> a\nrelation -2/4*p*r*q + 3*q*r*p = 0\noption seed 7\noption max_len 9\n");
        CHECK(f.rational());
        CHECK(f.relations[0].terms[0].coeff == Coefficient{-1, 2});
        auto canon = serialize(f);
        CHECK(canon.find("relation -1/2*p*r*q + 3*q*r*p = 0") != std::string::npos);
        CHECK(canon.find("option max_len 9\noption seed 7") != std::string::npos);
        CHECK(parse(canon) == f);
    }
    SECTION("errors carry positions") {
        auto e = parse_error([] { parse("algebra a over GF(5)\nvertices 1\nthis is garbage\n"); });
        CHECK(e.line == 3);
        CHECK(e.column == 1);
        e = parse_error([] { parse("algebra a over GF(5)\nvertices 1\narrow x : 1 -> 2\n"); });
        CHECK(e.line == 3);
        CHECK(e.column == 16);
        e = parse_error([] { parse("algebra a over GF(5)\nvertices 1 2\narrow x : 1 -> 2\nrelation x*y = 0\n"); });
        CHECK(e.line == 4);
        CHECK(e.column == 12);
        e = parse_error([] {
            parse("algebra a over GF(5)\nvertices 1 2\narrow x : 1 -> 2\narrow y : 2 -> 1\nrelation x*y - y*x = 0\n");
        });
        CHECK(e.line == 5);
        CHECK(std::string(e.what()).find("not parallel") != std::string::npos);
        e = parse_error([] { parse("algebra a over GF(4)\n"); });
        CHECK(e.column == 19);
        e = parse_error([] { parse("vertices 1\n"); });
        CHECK(e.line == 1);
        e = parse_error([] { parse("algebra a over GF(5)\nvertices 1\narrow x : 1 -> 1\nrelation x*x = 1\n"); });
        CHECK(e.line == 4);
        e = parse_error([] { parse("algebra a over GF(5)\nvertices 1\noption speed 3\n"); });
        CHECK(e.column == 8);
        // coefficient that vanishes in the field
        auto f = parse("algebra a over GF(5)\nvertices 1\narrow x : 1 -> 1\nrelation 5*x*x = 0\n");
        PrimeField k(5);
        CHECK_THROWS_AS(build(f, k), ParseError);
    }
    SECTION("bimodule files") {
        auto b = parse_bimodule(shipped("regular_plus_free.bim"));
        CHECK(b.summands.size() == 2);
        CHECK(parse_bimodule(serialize(b)) == b);
        CHECK_THROWS_AS(parse_bimodule("bimodule m\nsummand weird\n"), ParseError);
        PrimeField k(3);
        auto a = build(parse(shipped("kx2.alg")), k);
        auto m = build_bimodule(b, a, a);
        CHECK(m.total_dim() == 2 + 4);
        auto bad = parse_bimodule("bimodule m\nsummand free o q\n");
        CHECK_THROWS_AS(build_bimodule(bad, a, a), ParseError);
    }
}

TEST_CASE("commands", "[cli]") {
    SECTION("analyze: schema and determinism") {
        auto r = run("analyze", {shipped("example61A.alg")});
        REQUIRE(r.exit_code == 0);
        for (auto key : {"algebra", "dimension_report", "gp_catalog", "k0", "k1", "oracle_agreement", "warnings"})
            CHECK(r.json.contains(key));
        CHECK(r.json["dimension_report"]["self_inj_dim_left"] == 2);
        CHECK(r.json["gp_catalog"]["verdict"] == "CMFinite");
        CHECK(r.json["gp_catalog"]["items"].size() == 1);
        CHECK(r.json["oracle_agreement"] == true);
        for (auto key : {"free_rank", "invariant_factors", "generators"}) CHECK(r.json["k0"].contains(key));
        CHECK(r.json["k1"]["invariant_factors"] == Json::array({4}));
        CHECK(run("analyze", {shipped("example61A.alg")}).json.dump() == r.json.dump());
    }
    SECTION("oracle-k0 agrees with k0 on every shipped file") {
        for (const auto& name : kShipped) {
            auto r = run("oracle-k0", {shipped(name)});
            INFO(name << ": " << r.json.dump());
            REQUIRE(r.exit_code == 0);
            CHECK(r.json["oracle_agreement"] == true);
            CHECK(r.json["k0"]["invariant_factors"] == r.json["oracle_k0"]["invariant_factors"]);
            CHECK(r.json["k0"]["free_rank"] == r.json["oracle_k0"]["free_rank"]);
        }
    }
    SECTION("k1 with a field override") {
        RunOptions opt;
        opt.field = 7;
        auto r = run("k1", {shipped("example61A.alg")}, {}, opt);
        REQUIRE(r.exit_code == 0);
        CHECK(r.json["k1"]["order"] == 6);
        CHECK(r.json["algebra"]["field"] == "GF(7)");
    }
    SECTION("compare") {
        auto r = run("compare", {shipped("example62A.alg"), shipped("example62B.alg")});
        REQUIRE(r.exit_code == 0);
        CHECK(r.json["equal"]["all"] == true);
        CHECK(r.json["comparison"][0]["cm_verdict"] == "CMFree");
        CHECK(r.json["comparison"][1]["cm_verdict"] == "CMFree");
        CHECK(r.json["comparison"][0]["k0"]["free_rank"] == 0);
        CHECK(r.json["comparison"][0]["k0"]["invariant_factors"].empty());
        CHECK(r.json["comparison"][1]["k1"]["invariant_factors"].empty());
        auto r2 = run("compare", {shipped("example61A.alg"), shipped("example61B.alg")});
        CHECK(r2.json["equal"]["all"] == true);
        // different fields need an override
        CHECK(run("compare", {shipped("example61A.alg"), shipped("example62A.alg")}).exit_code == 1);
    }
    SECTION("semt") {
        auto r = run("semt", {shipped("kx2.alg"), shipped("kx2.alg")});
        REQUIRE(r.exit_code == 0);
        CHECK(r.json["semt"]["passed"] == true);
        CHECK(r.json["semt"]["p_dim"] == 0);
        CHECK(r.json["unit_counit"]["passed"] == true);
        auto broken = run("semt", {shipped("kx2.alg"), shipped("kx2.alg")},
                          {shipped("regular_plus_simple.bim"), shipped("regular_plus_simple.bim")});
        REQUIRE(broken.exit_code == 0);
        CHECK(broken.json["semt"]["passed"] == false);
        CHECK_FALSE(broken.json["semt"]["witnesses"].empty());
        CHECK(broken.json["unit_counit"]["passed"] == false);
    }
    SECTION("exit codes") {
        RunOptions opt;
        opt.iter_cap = 0;
        auto unknown = run("k0", {shipped("example61A.alg")}, {}, opt);
        CHECK(unknown.exit_code == 2);
        CHECK(unknown.json["k0"].is_null());
        auto bad = run("k0", {"algebra a over GF(5)\nvertices 1\nnonsense\n"});
        CHECK(bad.exit_code == 1);
        CHECK(bad.json["line"] == 3);
        CHECK(run("frobnicate", {shipped("kx2.alg")}).exit_code == 1);
        auto rational = run("gp", {"algebra q over QQ\nvertices 1\narrow x : 1 -> 1\nrelation x*x = 0\n"});
        CHECK(rational.exit_code == 1);
        CHECK(rational.json["dimension_reports"][0]["gorenstein"] == "yes");
    }
}
