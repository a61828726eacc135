#pragma once

// Mechanized non-approximability witness: for F = Z/p^{A+1} over the single
// generator Z/p, no approximation triangle E -> F -> D with a depth-<= A
// witness can exist, while depth A+1 succeeds.  The lower bound is generic:
// (i)   every depth-d tower over Z/p cells carries an annihilation
//       certificate with exponent p^d (composition lemma, leaf homotopies
//       verified explicitly per shift);
// (ii)  H^i(D) = 0 for i >= 0 forces H^0(E) ->> H^0(F) by the long exact
//       sequence;
// (iii) p^A does not annihilate Z/p^{A+1}.
// The quantifier over candidate triangles is discharged by (i), not by
// enumeration.

#include "homcert/approximation.hpp"

namespace homcert {

struct ObstructionCertificate {
    Int p;
    int bound = 0;  // A
    BoundedComplex f;                              // resolution of Z/p^{A+1}
    Int annihilation_bound;                        // p^A
    std::vector<std::pair<int, Homotopy>> leaf_certificates;  // shift -> p*id ~ 0
    FGAbelianGroup h0_f;                           // Z/p^{A+1}
    Int h0_exponent;                               // p^{A+1}
    std::string surjection_argument;
    bool arithmetic_core = false;                  // p^A != 0 mod p^{A+1}, checked
    std::string verdict;                           // "CONTRADICTION"
};

inline ObstructionCertificate obstruct(const Int& p, int bound) {
    if (bound < 1) throw Error("obstruction bound must be positive");
    if (!is_probable_prime(p)) throw Error("p must be prime");
    ObstructionCertificate cert;
    cert.p = p;
    cert.bound = bound;
    auto base = std::make_shared<BaseCategory>(BaseCategory::integers());
    Int pa = int_pow(p, static_cast<unsigned long>(bound));
    Int pa1 = int_pow(p, static_cast<unsigned long>(bound + 1));
    cert.f = projective_resolution(base, FGAbelianGroup{0, {pa1}});
    cert.annihilation_bound = pa;

    // (i) verified leaf homotopies for p*id on every shifted cell Z/p[s]
    BoundedComplex zp = projective_resolution(base, FGAbelianGroup{0, {p}});
    for (int s = -bound; s <= bound; ++s) {
        BoundedComplex cell = shift(zp, s);
        auto h = find_homotopy(scale_map(p, identity_map(cell)), zero_map(cell, cell));
        if (!h) throw Error("internal: p*id is not null-homotopic on a Z/p cell");
        cert.leaf_certificates.push_back({s, std::move(*h)});
    }

    // (ii) exact homology of the target
    cert.h0_f = homology(cert.f, 0).group;
    auto expo = cert.h0_f.exponent();
    if (!expo || *expo != pa1) throw Error("internal: H^0(F) has unexpected exponent");
    cert.h0_exponent = *expo;

    // (iii) the arithmetic core
    cert.arithmetic_core = (pa % pa1) != 0;
    if (!cert.arithmetic_core) throw Error("internal: p^A vanished modulo p^{A+1}");

    cert.surjection_argument =
        "For any triangle E -> F -> D -> E[1] with H^i(D) = 0 for all i >= 0, the induced "
        "sequence H^0(E) -> H^0(F) -> H^0(D) = 0 is exact, so H^0(E) surjects onto H^0(F) "
        "with exponent " + to_decimal(pa1) + ".  Any witness of depth <= " +
        std::to_string(bound) + " over Z/" + to_decimal(p) + " cells composes its verified "
        "leaf homotopies into an annihilation certificate of exponent dividing " +
        to_decimal(pa) + " (retracts inherit it), which would force " + to_decimal(pa) +
        " * H^0(F) = 0; the checked arithmetic " + to_decimal(pa) + " != 0 (mod " +
        to_decimal(pa1) + ") rules every candidate out simultaneously.";
    cert.verdict = "CONTRADICTION";
    return cert;
}

struct MinimalDepthResult {
    int depth = 0;                        // = bound + 1
    ObstructionCertificate lower_bound;   // no witness of depth <= bound
    ApproximationCertificate upper_bound; // SUCCESS at depth bound + 1
    ApproximationCertificate capped_run;  // PARTIAL when capped at depth bound
};

inline MinimalDepthResult minimal_depth(const Int& p, int bound) {
    MinimalDepthResult out;
    out.lower_bound = obstruct(p, bound);
    auto base = out.lower_bound.f.base_ptr();
    GeneratorSystem s = single_part_system(
        base, {{"Z/" + to_decimal(p), projective_resolution(base, FGAbelianGroup{0, {p}})}});

    out.upper_bound = approximate(out.lower_bound.f, s, bound + 1);
    if (out.upper_bound.status != ApproxStatus::success)
        throw Error("internal: depth " + std::to_string(bound + 1) + " approximation failed");
    if (out.upper_bound.depth != bound + 1)
        throw Error("internal: unexpected successful depth " + std::to_string(out.upper_bound.depth));

    out.capped_run = approximate(out.lower_bound.f, s, bound);
    if (out.capped_run.status != ApproxStatus::partial)
        throw Error("internal: the capped run should report PARTIAL");

    out.depth = bound + 1;
    return out;
}

}  // namespace homcert
