#pragma once

// Arbitrary-precision integer scalars. GMP does the digit work; everything
// algorithmic (normal forms, solving) lives in this project.

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace homcert {

using Int = mpz_class;

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline Int int_pow(const Int& base, unsigned long exp) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

inline Int int_gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int int_lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline bool is_probable_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

inline std::string to_decimal(const Int& x) { return x.get_str(10); }

inline Int parse_decimal(const std::string& s) {
    Int r;
    if (s.empty() || mpz_set_str(r.get_mpz_t(), s.c_str(), 10) != 0)
        throw Error("not a decimal integer: '" + s + "'");
    return r;
}

}  // namespace homcert
