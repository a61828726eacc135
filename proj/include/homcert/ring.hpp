#pragma once

// The two scalar rings in play: the integers and prime fields F_p.
// A single divmod contract lets the elimination code below treat both
// uniformly: over Z it is truncated division, over F_p division is exact.

#include "homcert/int.hpp"

namespace homcert {

struct Ring {
    Int modulus;  // 0 for the integers, otherwise a prime p

    static Ring integers() { return Ring{Int(0)}; }

    static Ring prime_field(const Int& p) {
        if (p < 2 || !is_probable_prime(p)) throw Error("modulus is not prime: " + to_decimal(p));
        return Ring{p};
    }

    bool is_field() const { return modulus != 0; }
    bool operator==(const Ring& o) const { return modulus == o.modulus; }
    bool operator!=(const Ring& o) const { return !(*this == o); }

    Int reduce(const Int& x) const {
        if (!is_field()) return x;
        Int r = x % modulus;
        if (r < 0) r += modulus;
        return r;
    }

    Int add(const Int& a, const Int& b) const { return reduce(a + b); }
    Int sub(const Int& a, const Int& b) const { return reduce(a - b); }
    Int mul(const Int& a, const Int& b) const { return reduce(a * b); }
    Int neg(const Int& a) const { return reduce(-a); }

    bool is_unit(const Int& x) const {
        if (is_field()) return reduce(x) != 0;
        return x == 1 || x == -1;
    }

    Int inverse(const Int& x) const {
        if (!is_field()) {
            if (!is_unit(x)) throw Error("not a unit over Z: " + to_decimal(x));
            return x;
        }
        Int r;
        if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t()) == 0)
            throw Error("not invertible mod " + to_decimal(modulus));
        return r;
    }

    // q, r with a = q*b + r.  Over Z: |r| minimized (round-to-nearest,
    // ties kept on the truncated side).  Over F_p: r = 0 always.
    void divmod(const Int& a, const Int& b, Int& q, Int& r) const {
        if (b == 0) throw Error("division by zero");
        if (is_field()) {
            q = mul(a, inverse(b));
            r = 0;
            return;
        }
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        Int abs_b = abs(b);
        if (2 * abs(r) > abs_b) {
            if ((r < 0) == (b < 0)) {
                q += 1;
                r -= b;
            } else {
                q -= 1;
                r += b;
            }
        }
    }

    // Exact division; throws if b does not divide a.
    Int div_exact(const Int& a, const Int& b) const {
        Int q, r;
        divmod(a, b, q, r);
        if (r != 0) throw Error("inexact division");
        return q;
    }
};

}  // namespace homcert
