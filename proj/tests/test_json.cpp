#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "homcert/json_io.hpp"
#include "test_util.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace homcert;
using namespace testutil;

namespace {

Json parse(const std::string& text) { return Json::parse(text); }

void write_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    out << j.dump(2) << "\n";
}

#ifdef HOMCERT_CLI
int run_cli(const std::string& args) {
    std::string cmd = std::string(HOMCERT_CLI) + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}
#endif

}  // namespace

TEST_CASE("problem files: descriptors resolve and validate") {
    Json j = parse(R"({
      "base": {"kind": "Z"},
      "objects": {
        "Z/6": {"module": {"free_rank": 0, "torsion": ["6"]}},
        "Z": {"module": {"free_rank": 1}},
        "shifted": {"shift": {"of": "Z/6", "by": 2}},
        "both": {"sum": ["Z", "Z/6"]},
        "raw": {"complex": {"degrees": {"0": 2, "-1": 1},
                             "differentials": {"-1": [["3"], ["0"]]}}}
      },
      "generators": [["Z/6", "Z"]],
      "target": "both",
      "options": {"max_depth": 3, "seed": 9, "trials": 17}
    })");
    Problem p = problem_from_json(j);
    CHECK(p.objects.size() == 5);
    CHECK(p.object("shifted").dim_at(-3) == 1);
    CHECK(homology(p.object("both"), 0).group == FGAbelianGroup{1, {Int(6)}});
    CHECK(homology(p.object("raw"), 0).group == FGAbelianGroup{1, {Int(3)}});
    CHECK(p.max_depth == 3);
    CHECK(p.seed == 9);
    CHECK(p.trials == 17);
    auto s = p.system();
    CHECK(s.generators.size() == 2);

    // round trip through the normalized form
    Problem p2 = problem_from_json(problem_to_json(p));
    CHECK(problem_to_json(p2) == problem_to_json(p));
}

TEST_CASE("problem files: malformed inputs are rejected with errors") {
    // d^2 != 0
    Json bad = parse(R"({
      "base": {"kind": "Z"},
      "objects": {"X": {"complex": {"degrees": {"0": 1, "1": 1, "2": 1},
                                     "differentials": {"0": [["1"]], "1": [["1"]]}}}}
    })");
    CHECK_THROWS_WITH_AS(problem_from_json(bad), doctest::Contains("d o d != 0"), Error);

    // reference cycle
    Json cyc = parse(R"({
      "base": {"kind": "Z"},
      "objects": {"A": {"shift": {"of": "B", "by": 1}},
                   "B": {"shift": {"of": "A", "by": -1}}}
    })");
    CHECK_THROWS_WITH_AS(problem_from_json(cyc), doctest::Contains("cycle"), Error);

    // non-prime modulus
    Json np = parse(R"({"base": {"kind": "quiver", "prime": 6, "vertices": 1, "arrows": []}})");
    CHECK_THROWS_WITH_AS(problem_from_json(np), doctest::Contains("not prime"), Error);

    // quiver with a directed cycle
    Json qc = parse(R"({"base": {"kind": "quiver", "prime": 2, "vertices": 2,
                                  "arrows": [[1, 2], [2, 1]]}})");
    CHECK_THROWS_WITH_AS(problem_from_json(qc), doctest::Contains("cycle"), Error);
}

TEST_CASE("serialization round trips: complexes, maps, towers") {
    auto base = a2_base(3);
    auto s1 = simple_complex(base, 1);
    CHECK(complex_from_json(base, complex_to_json(s1)) == s1);

    auto zpool = std::make_shared<GeneratorPool>();
    zpool->entries.push_back({"Z/3", cyclic_complex(3)});
    PoolPtr pp = zpool;
    Rng rng(5);
    RandomTowerOptions opt;
    opt.depth = 3;
    opt.shift_lo = -1;
    opt.shift_hi = 1;
    for (int trial = 0; trial < 5; ++trial) {
        auto t = random_tower(pp, rng, opt);
        auto back = tower_from_json(tower_to_json(t), pp);
        CHECK(back->realize() == t->realize());
        CHECK(back->depth() == t->depth());
        CHECK(back->flattened_leaves() == t->flattened_leaves());
    }
}

TEST_CASE("replay: approximation certificates regenerate byte-identically") {
    Json j = parse(R"({
      "base": {"kind": "Z"},
      "objects": {
        "Z/3": {"module": {"torsion": ["3"]}},
        "Z/27": {"module": {"torsion": ["27"]}}
      },
      "generators": [["Z/3"]],
      "target": "Z/27",
      "options": {"max_depth": 5}
    })");
    Problem p = problem_from_json(j);
    auto cert = approximate(p.object("Z/27"), p.system(), p.max_depth);
    Json emitted = approximation_to_json(p, cert);
    // byte round trip through text
    Json reparsed = Json::parse(emitted.dump(2));
    auto result = verify_certificate(reparsed);
    CHECK(result.ok);

    // tampering is detected
    Json forged = reparsed;
    forged["depth"] = 2;
    auto bad = verify_certificate(forged);
    CHECK(!bad.ok);
    CHECK(bad.message.find("depth") != std::string::npos);

    // a corrupted homotopy fails the constructor-level re-validation
    Json broken = reparsed;
    broken["annihilation"]["homotopy"]["0"]["entries"][0][0] = "7";
    CHECK_THROWS_AS((void)verify_certificate(broken), Error);
}

TEST_CASE("replay: negativity, ext-table, counterexample, tower, rebracket") {
    Json j = parse(R"({
      "base": {"kind": "quiver", "prime": 2, "vertices": 2, "arrows": [[1, 2]]},
      "objects": {"S1": {"simple": 1}, "S2": {"simple": 2}},
      "generators": [["S2"], ["S1"]]
    })");
    Problem p = problem_from_json(j);
    CHECK(verify_certificate(Json::parse(
              negativity_to_json(p, check_negativity(p.system())).dump())).ok);
    CHECK(verify_certificate(Json::parse(ext_table_to_json(p, -1, 2).dump())).ok);

    auto md = minimal_depth(Int(2), 1);
    CHECK(verify_certificate(Json::parse(counterexample_to_json(md).dump())).ok);

    auto pool = std::make_shared<GeneratorPool>();
    pool->entries.push_back({"Z/2", cyclic_complex(2)});
    PoolPtr pp = pool;
    Rng rng(77);
    RandomTowerOptions opt;
    opt.depth = 3;
    opt.left_associated = true;
    auto t = random_tower(pp, rng, opt);
    auto base = integer_base();
    CHECK(verify_certificate(Json::parse(tower_file_to_json(*base, *pool, t).dump())).ok);

    auto rb = octahedral_rebracket(t);
    Json rbj = Json::parse(rebracket_to_json(*base, *pool, t, rb).dump());
    CHECK(verify_certificate(rbj).ok);
    Json forged = rbj;
    forged["output"] = forged["input"];
    CHECK(!verify_certificate(forged).ok);
}

#ifdef HOMCERT_CLI
TEST_CASE("cli: exit codes follow the outcome taxonomy") {
    const std::string dir =
        (std::filesystem::temp_directory_path() / "homcert_cli_test").string();
    if (std::system(("mkdir -p " + dir).c_str()) != 0) FAIL("mkdir failed");

    // weakly negative generator set: exit 0
    write_file(dir + "/neg.json", parse(R"({
      "base": {"kind": "Z"},
      "objects": {"Z/2": {"module": {"torsion": ["2"]}}},
      "generators": [["Z/2"]]
    })"));
    CHECK(run_cli("check-negativity --input " + dir + "/neg.json --output " + dir + "/neg_out.json") == 0);

    // not weakly negative: Z/2 next to Z/2[1] has Hom in degree 2 -> exit 2
    write_file(dir + "/notweak.json", parse(R"({
      "base": {"kind": "Z"},
      "objects": {"Z/2": {"module": {"torsion": ["2"]}},
                   "up": {"shift": {"of": "Z/2", "by": 1}}},
      "generators": [["Z/2", "up"]]
    })"));
    CHECK(run_cli("check-negativity --input " + dir + "/notweak.json") == 2);

    // malformed differential: exit 3
    write_file(dir + "/bad.json", parse(R"({
      "base": {"kind": "Z"},
      "objects": {"X": {"complex": {"degrees": {"0": 1, "1": 1, "2": 1},
                                     "differentials": {"0": [["1"]], "1": [["1"]]}}}},
      "generators": [["X"]]
    })"));
    CHECK(run_cli("check-negativity --input " + dir + "/bad.json") == 3);

    // approximate SUCCESS: exit 0, then verify: exit 0
    write_file(dir + "/apx.json", parse(R"({
      "base": {"kind": "Z"},
      "objects": {"Z/2": {"module": {"torsion": ["2"]}},
                   "Z/8": {"module": {"torsion": ["8"]}}},
      "generators": [["Z/2"]],
      "target": "Z/8",
      "options": {"max_depth": 4}
    })"));
    CHECK(run_cli("approximate --input " + dir + "/apx.json --output " + dir + "/apx_cert.json") == 0);
    CHECK(run_cli("verify --input " + dir + "/apx_cert.json") == 0);
    CHECK(run_cli("approximate --verify " + dir + "/apx_cert.json") == 0);

    // PARTIAL at an insufficient cap: exit 2
    CHECK(run_cli("approximate --input " + dir + "/apx.json --max-depth 2 --output " + dir + "/apx_partial.json") == 2);

    // tampered certificate: exit 4
    Json cert = Json::parse(std::ifstream(dir + "/apx_cert.json"));
    cert["depth"] = 9;
    write_file(dir + "/apx_forged.json", cert);
    CHECK(run_cli("verify --input " + dir + "/apx_forged.json") == 4);

    // counterexample + replay
    CHECK(run_cli("counterexample --prime 3 --bound 1 --output " + dir + "/cex.json") == 0);
    CHECK(run_cli("verify --input " + dir + "/cex.json") == 0);

    // rebracket a stored tower and replay the result
    auto pool = std::make_shared<GeneratorPool>();
    pool->entries.push_back({"Z/2", cyclic_complex(2)});
    PoolPtr pp = pool;
    Rng rng(31);
    RandomTowerOptions opt;
    opt.depth = 3;
    opt.left_associated = true;
    auto base = integer_base();
    write_file(dir + "/tower.json", tower_file_to_json(*base, *pool, random_tower(pp, rng, opt)));
    CHECK(run_cli("rebracket --input " + dir + "/tower.json --output " + dir + "/rb.json") == 0);
    CHECK(run_cli("verify --input " + dir + "/rb.json") == 0);

    // weight decomposition alias
    CHECK(run_cli("approximate --input " + dir + "/apx.json --weight-decomposition --output " +
                  dir + "/wd.json") == 0);
    Json wd = Json::parse(std::ifstream(dir + "/wd.json"));
    CHECK(wd["kind"] == "weight_decomposition");
    CHECK(run_cli("verify --input " + dir + "/wd.json") == 0);

    // ext-table with an explicit range, then replay
    CHECK(run_cli("ext-table --input " + dir + "/apx.json --range -1..2 --output " + dir +
                  "/ext.json") == 0);
    Json ext = Json::parse(std::ifstream(dir + "/ext.json"));
    CHECK(ext["kind"] == "ext-table");
    bool found_ext1 = false;
    for (const auto& row : ext["table"])
        if (row["source"] == "Z/2" && row["target"] == "Z/2" && row["groups"].contains("1"))
            found_ext1 = row["groups"]["1"]["describe"] == "Z/2";
    CHECK(found_ext1);
    CHECK(run_cli("verify --input " + dir + "/ext.json") == 0);

    // determinism: two independent runs emit identical bytes
    CHECK(run_cli("approximate --input " + dir + "/apx.json --output " + dir + "/apx_a.json") == 0);
    CHECK(run_cli("approximate --input " + dir + "/apx.json --output " + dir + "/apx_b.json") == 0);
    std::stringstream sa, sb;
    sa << std::ifstream(dir + "/apx_a.json").rdbuf();
    sb << std::ifstream(dir + "/apx_b.json").rdbuf();
    CHECK(sa.str() == sb.str());
    CHECK(!sa.str().empty());

    // feeding a non-certificate to verify is a malformed-input error
    CHECK(run_cli("verify --input " + dir + "/apx.json") == 3);
}
#endif
