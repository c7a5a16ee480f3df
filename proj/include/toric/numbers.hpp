#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <vector>

namespace toric {

using Int = mpz_class;
using Rat = mpq_class;

inline Int gcd_int(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm_int(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

// Euclidean division with remainder in [0, |b|).
inline Int fdiv_q(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int fdiv_r(const Int& a, const Int& b) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// Extended gcd: g = gcd(a,b) = s*a + t*b, g >= 0.
inline Int gcd_ext(const Int& a, const Int& b, Int& s, Int& t) {
    Int g;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int content(const std::vector<Int>& v) {
    Int g = 0;
    for (const Int& x : v) g = gcd_int(g, x);
    return g;
}

/// Element of Q/Z kept as a reduced fraction num/den with 0 <= num < den.
/// Phases of hypertori: the hypertorus {chi(t) = e(q)} with e(q) = exp(2*pi*i*q).
struct PhaseQZ {
    Int num{0};
    Int den{1};

    PhaseQZ() = default;
    PhaseQZ(Int n, Int d);

    static PhaseQZ from_rat(const Rat& q);
    Rat to_rat() const { return Rat(num, den); }

    bool is_zero() const { return num == 0; }

    PhaseQZ operator+(const PhaseQZ& o) const;
    PhaseQZ operator-(const PhaseQZ& o) const;
    PhaseQZ operator-() const;
    PhaseQZ times(const Int& k) const;

    bool operator==(const PhaseQZ& o) const { return num == o.num && den == o.den; }
    bool operator!=(const PhaseQZ& o) const { return !(*this == o); }
    bool operator<(const PhaseQZ& o) const;

    std::string str() const; // "0" or "p/q"
    static PhaseQZ parse(const std::string& s);
};

/// Sum of k_i * q_i reduced into Q/Z.
PhaseQZ phase_combination(const std::vector<Int>& coeffs, const std::vector<PhaseQZ>& phases);

} // namespace toric
