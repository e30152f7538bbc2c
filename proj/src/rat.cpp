#include "arithdyn/rat.hpp"

#include "arithdyn/errors.hpp"

namespace arithdyn {

Int vec_gcd(const IntVec& v) {
    Int g = 0;
    for (const Int& x : v) g = gcd(g, x);
    return g;
}

void primitivize(IntVec& v) {
    Int g = vec_gcd(v);
    if (g <= 1) return;
    for (Int& x : v) x /= g;
}

void sign_normalize(IntVec& v) {
    primitivize(v);
    for (const Int& x : v) {
        if (x != 0) {
            if (x < 0)
                for (Int& y : v) y = -y;
            return;
        }
    }
}

IntVec clear_denominators(const RatVec& v) {
    Int l = 1;
    for (const Rat& r : v) l = lcm(l, r.get_den());
    IntVec out;
    out.reserve(v.size());
    for (const Rat& r : v) {
        Rat scaled = r * Rat(l);
        out.push_back(scaled.get_num());
    }
    return out;
}

double to_double(const Rat& r) { return r.get_d(); }

std::string to_string(const Int& n) { return n.get_str(); }

std::string to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Int parse_int(const std::string& s) {
    if (s.empty()) throw ValidationError("empty integer literal");
    Int n;
    if (mpz_set_str(n.get_mpz_t(), s.c_str(), 10) != 0)
        throw ValidationError("bad integer literal: " + s);
    return n;
}

Rat parse_rat(const std::string& num, const std::string& den) {
    Int n = parse_int(num);
    Int d = parse_int(den);
    if (d == 0) throw ValidationError("zero denominator");
    Rat r(n, d);
    r.canonicalize();
    return r;
}

} // namespace arithdyn
