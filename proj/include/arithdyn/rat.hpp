#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace arithdyn {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline Int abs(const Int& a) { return ::abs(a); }

// gcd of a vector; 0 for the zero vector.
Int vec_gcd(const IntVec& v);

// Divide out the gcd. Zero vector stays zero.
void primitivize(IntVec& v);

// Divide out the gcd and flip signs so the first nonzero entry is positive.
void sign_normalize(IntVec& v);

// Clear denominators: smallest positive multiplier t with t*v integral.
IntVec clear_denominators(const RatVec& v);

double to_double(const Rat& r);

std::string to_string(const Int& n);
std::string to_string(const Rat& r);

Int parse_int(const std::string& s);
Rat parse_rat(const std::string& num, const std::string& den);

} // namespace arithdyn
