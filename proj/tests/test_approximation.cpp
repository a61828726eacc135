#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "homcert/approximation.hpp"
#include "test_util.hpp"

using namespace homcert;
using namespace testutil;

namespace {

GeneratorSystem zp_system(long p) {
    return single_part_system(integer_base(),
                              {{"Z/" + std::to_string(p), cyclic_complex(p)}});
}

}  // namespace

TEST_CASE("cell_attachment_step: pinned examples") {
    // F = Z, cell Z: one generator (the identity), cone contractible
    auto z = free_complex(0, 1);
    auto step = cell_attachment_step(z, {{"Z", z}});
    CHECK(step.e1 == z);
    CHECK(step.cells_attached == std::vector<std::pair<std::string, int>>{{"Z", 1}});
    CHECK(is_acyclic(step.f1));

    // F = Z/p^2, cell Z/p: Hom has one generator, the cone keeps Z/p
    auto f = cyclic_complex(25);
    auto zp = cyclic_complex(5);
    auto step2 = cell_attachment_step(f, {{"Z/5", zp}});
    CHECK(step2.cells_attached == std::vector<std::pair<std::string, int>>{{"Z/5", 1}});
    CHECK(homology(step2.f1, 0).group == FGAbelianGroup{0, {Int(5)}});
    for (int i = -2; i <= 2; ++i)
        if (i != 0) CHECK(homology(step2.f1, i).is_zero());

    // F = P_1 over kA2, cell S_2: the socle inclusion, cone = S_1
    auto base = a2_base(2);
    auto p1 = projective_complex(base, 1);
    auto s2 = simple_complex(base, 2);
    auto step3 = cell_attachment_step(p1, {{"S2", s2}});
    CHECK(step3.cells_attached == std::vector<std::pair<std::string, int>>{{"S2", 1}});
    CHECK(homology(step3.f1, 0).vertex_dims == std::vector<long>{1, 0});
    CHECK(homology(step3.f1, -1).is_zero());
}

TEST_CASE("cell_attachment_step: vanishing precondition is enforced") {
    // a target with homology in positive degree is rejected with the degree
    auto bad_f = shift(cyclic_complex(5), -2);  // homology sits in degree +2
    CHECK_THROWS_WITH_AS(cell_attachment_step(bad_f, {{"Z/5", cyclic_complex(5)}}),
                         doctest::Contains("vanishing precondition failed: H^2"), Error);
    // and so is a cell outside the nonpositive range
    CHECK_THROWS_WITH_AS(
        cell_attachment_step(cyclic_complex(5), {{"bad", shift(cyclic_complex(5), -1)}}),
        doctest::Contains("has homology in degree 1"), Error);
}

TEST_CASE("approximate: F = Z over {Z} succeeds at depth 1 with contractible D") {
    auto s = single_part_system(integer_base(), {{"Z", free_complex(0, 1)}});
    auto cert = approximate(free_complex(0, 1), s, 5);
    REQUIRE(cert.status == ApproxStatus::success);
    CHECK(cert.depth == 1);
    CHECK(cert.partitioned);
    CHECK(is_acyclic(cert.d));
    CHECK(cert.aisle.holds);
    REQUIRE(cert.e_witness);
    CHECK(cert.e_witness->realize() == free_complex(0, 1));
}

TEST_CASE("approximate: theorem instance over kA2, parts ({S2},{S1})") {
    auto base = a2_base(2);
    GeneratorSystem s;
    s.base = base;
    s.generators = {{"S2", simple_complex(base, 2)}, {"S1", simple_complex(base, 1)}};
    s.parts = {{0}, {1}};
    auto p1 = projective_complex(base, 1);

    auto cert = approximate(p1, s, 10);
    REQUIRE(cert.status == ApproxStatus::success);
    CHECK(cert.partitioned);
    CHECK(cert.depth == 2);
    REQUIRE(cert.e_witness);
    CHECK(cert.e_witness->shift_lo() == 0);
    CHECK(cert.e_witness->shift_hi() == 0);
    CHECK(is_acyclic(cert.d));
    CHECK(cert.aisle.holds);
    REQUIRE(cert.stages.size() == 2);
    CHECK(cert.stages[0].cells_attached ==
          std::vector<std::pair<std::string, int>>{{"S2", 1}});
    CHECK(cert.stages[1].cells_attached ==
          std::vector<std::pair<std::string, int>>{{"S1", 1}});
    // E realizes P_1 itself: the cone of phi is acyclic, so phi is a
    // quasi-isomorphism realize(E) -> P_1
    REQUIRE(cert.phi);
    CHECK(is_quasi_iso(*cert.phi));
}

TEST_CASE("approximate: Z/p^{A+1} needs depth exactly A+1") {
    for (long p : {2L, 3L}) {
        for (int a = 1; a <= 3; ++a) {
            auto s = zp_system(p);
            Int modulus = int_pow(Int(p), static_cast<unsigned long>(a + 1));
            auto f = projective_resolution(integer_base(), FGAbelianGroup{0, {modulus}});

            auto good = approximate(f, s, a + 1);
            REQUIRE(good.status == ApproxStatus::success);
            CHECK(good.depth == a + 1);
            CHECK(is_acyclic(good.d));
            REQUIRE(good.annihilation.has_value());
            CHECK(good.annihilation->exponent ==
                  int_pow(Int(p), static_cast<unsigned long>(a + 1)));
            // every stage attaches exactly one cell
            for (const auto& st : good.stages)
                CHECK(st.cells_attached.front().second == 1);

            auto capped = approximate(f, s, a);
            CHECK(capped.status == ApproxStatus::partial);
            CHECK(capped.depth == a);
            // the partial state is resumable data: tower, phi and the cone
            REQUIRE(capped.phi);
            CHECK(homology(capped.d, 0).group == FGAbelianGroup{0, {Int(p)}});
        }
    }
}

TEST_CASE("approximate: hypothesis failures are reported") {
    auto s = zp_system(5);

    // a free target is invisible to torsion generators
    auto bad1 = approximate(free_complex(0, 1), s, 3);
    CHECK(bad1.status == ApproxStatus::hypothesis_failed);
    CHECK(bad1.failure_reason.find("not supported") != std::string::npos);

    // unsupported torsion in the target
    auto bad2 = approximate(cyclic_complex(3), s, 3);
    CHECK(bad2.status == ApproxStatus::hypothesis_failed);
    CHECK(bad2.failure_reason.find("not supported") != std::string::npos);

    // homology in positive degree keeps the target out of range
    auto bad3 = approximate(shift(cyclic_complex(5), -2), s, 3);
    CHECK(bad3.status == ApproxStatus::hypothesis_failed);
    CHECK(bad3.failure_reason.find("nonpositive range") != std::string::npos);
}

TEST_CASE("approximate: depth-0 success when the target is already past the aisle") {
    auto s = zp_system(5);
    auto f = shift(cyclic_complex(5), 3);  // homology in degree -3 only
    auto cert = approximate(f, s, 3);
    REQUIRE(cert.status == ApproxStatus::success);
    CHECK(cert.depth == 0);
    CHECK(!cert.e_witness);
    CHECK(cert.aisle.holds);
    CHECK(cert.d == f);
}

TEST_CASE("approximate: stage invariant holds along the way") {
    // after stage k in partitioned mode, all cells of parts <= k are exhausted;
    // approximate throws internally if not, so a successful run is the check.
    auto base = a2_base(3);
    GeneratorSystem s;
    s.base = base;
    s.generators = {{"S2", simple_complex(base, 2)}, {"S1", simple_complex(base, 1)}};
    s.parts = {{0}, {1}};
    // direct sums of projectives: all approximable within depth 2
    auto f = direct_sum(projective_complex(base, 1), projective_complex(base, 2));
    auto cert = approximate(f, s, 10);
    REQUIRE(cert.status == ApproxStatus::success);
    CHECK(cert.depth <= 2);
    CHECK(is_acyclic(cert.d));
}

TEST_CASE("approximate: three-stage partitioned run over kA3") {
    // quiver 1 -> 2 -> 3; parts ({S3}, {S2}, {S1}) satisfy the ordered
    // orthogonality, and P_1 unrolls through all three stages
    auto base = std::make_shared<BaseCategory>(
        BaseCategory::quiver_algebra(Int(2), Quiver{3, {{1, 2}, {2, 3}}}));
    GeneratorSystem s;
    s.base = base;
    s.generators = {{"S3", projective_resolution(base, simple_rep(*base, 3))},
                    {"S2", projective_resolution(base, simple_rep(*base, 2))},
                    {"S1", projective_resolution(base, simple_rep(*base, 1))}};
    s.parts = {{0}, {1}, {2}};
    auto r = check_negativity(s);
    CHECK(r.weakly_negative);
    CHECK(r.partition_ok);
    CHECK(!r.negative);

    auto p1 = one_term_complex(base, 0, ObjectShape{{1}});
    auto cert = approximate(p1, s, 10);
    REQUIRE(cert.status == ApproxStatus::success);
    CHECK(cert.partitioned);
    CHECK(cert.depth == 3);
    CHECK(is_acyclic(cert.d));
    REQUIRE(cert.stages.size() == 3);
    CHECK(cert.stages[0].cells_attached ==
          std::vector<std::pair<std::string, int>>{{"S3", 1}});
    CHECK(cert.stages[1].cells_attached ==
          std::vector<std::pair<std::string, int>>{{"S2", 1}});
    CHECK(cert.stages[2].cells_attached ==
          std::vector<std::pair<std::string, int>>{{"S1", 1}});
    REQUIRE(cert.phi);
    CHECK(is_quasi_iso(*cert.phi));  // E realizes P_1 itself
}

TEST_CASE("weight_decomposition: alias with relabeled output") {
    auto s = zp_system(3);
    auto f = cyclic_complex(9);
    auto w = weight_decomposition(f, s, 5);
    auto a = approximate(f, s, 5);
    CHECK(w.role == "weight_decomposition");
    CHECK(!w.convention_note.empty());
    CHECK(w.status == a.status);
    CHECK(w.depth == a.depth);
    CHECK(w.d == a.d);
    REQUIRE(w.e_witness);
    REQUIRE(a.e_witness);
    CHECK(w.e_witness->realize() == a.e_witness->realize());
}
