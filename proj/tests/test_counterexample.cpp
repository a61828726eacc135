#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "homcert/counterexample.hpp"
#include "test_util.hpp"

using namespace homcert;
using namespace testutil;

TEST_CASE("obstruct: (2,1) pins the quantitative core") {
    auto cert = obstruct(Int(2), 1);
    CHECK(cert.verdict == "CONTRADICTION");
    CHECK(cert.annihilation_bound == 2);
    CHECK(cert.h0_f == FGAbelianGroup{0, {Int(4)}});
    CHECK(cert.h0_exponent == 4);
    CHECK(cert.arithmetic_core);
    CHECK(cert.leaf_certificates.size() == 3);  // shifts -1, 0, 1
    // each stored homotopy re-verifies by construction; spot check one
    const auto& [shift_s, h] = cert.leaf_certificates[1];
    CHECK(shift_s == 0);
    CHECK(h.from().component_at(0).at(0, 0) == 2);
}

TEST_CASE("obstruct: (3,2) re-runs the certified argument") {
    auto cert = obstruct(Int(3), 2);
    CHECK(cert.annihilation_bound == 9);
    CHECK(cert.h0_exponent == 27);
    CHECK(cert.arithmetic_core);
    CHECK(cert.leaf_certificates.size() == 5);
}

TEST_CASE("minimal_depth: lower and upper bounds meet at A+1") {
    for (auto [p, a] : std::vector<std::pair<long, int>>{{2, 1}, {2, 3}, {5, 1}}) {
        auto result = minimal_depth(Int(p), a);
        CHECK(result.depth == a + 1);
        CHECK(result.lower_bound.verdict == "CONTRADICTION");
        CHECK(result.upper_bound.status == ApproxStatus::success);
        CHECK(result.upper_bound.depth == a + 1);
        CHECK(result.capped_run.status == ApproxStatus::partial);
        REQUIRE(result.upper_bound.annihilation.has_value());
        CHECK(result.upper_bound.annihilation->exponent ==
              int_pow(Int(p), static_cast<unsigned long>(a + 1)));
    }
}

TEST_CASE("the successful witness really surjects onto H^0(F)") {
    auto result = minimal_depth(Int(2), 2);
    const auto& cert = result.upper_bound;
    REQUIRE(cert.e_witness);
    REQUIRE(cert.phi);
    // H^0(E) -> H^0(F) is onto: the cokernel of the induced map vanishes
    auto pe = homology_presentation(cert.e_witness->realize(), 0);
    auto pf = homology_presentation(cert.f, 0);
    ExactMatrix induced = induced_map_on_homology(*cert.phi, 0, pe, pf);
    CHECK(cokernel_invariants(hstack(induced, pf.relations)).is_trivial());
    // and H^0(E) is p^{depth}-torsion but not p^{depth-1}-torsion
    auto h0e = homology(cert.e_witness->realize(), 0).group;
    REQUIRE(h0e.exponent().has_value());
    CHECK(*h0e.exponent() == 8);
}
