#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace semired {

// All semigroup arithmetic is exact. Int is a signed arbitrary-precision
// integer; Nat is the same type used where values are nonnegative by
// construction. Rat is an exact rational for genus/asymmetry bookkeeping.
using Int = boost::multiprecision::cpp_int;
using Nat = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using boost::multiprecision::gcd;
using boost::multiprecision::lcm;
using boost::multiprecision::abs;

// Floor division, divisor must be positive.
inline Int floor_div(const Int& a, const Int& b) {
    if (b <= 0) throw precondition_error("floor_div: divisor must be positive");
    Int q = a / b;
    if (a % b != 0 && a < 0) --q;
    return q;
}

// Ceiling division, divisor must be positive.
inline Int ceil_div(const Int& a, const Int& b) {
    if (b <= 0) throw precondition_error("ceil_div: divisor must be positive");
    Int q = a / b;
    if (a % b != 0 && a > 0) ++q;
    return q;
}

// Nonnegative remainder of a mod b, divisor must be positive.
inline Int pos_mod(const Int& a, const Int& b) {
    if (b <= 0) throw precondition_error("pos_mod: divisor must be positive");
    Int r = a % b;
    if (r < 0) r += b;
    return r;
}

inline Nat pow_nat(const Nat& base, unsigned long exp) {
    Nat result = 1;
    Nat b = base;
    while (exp) {
        if (exp & 1) result *= b;
        b *= b;
        exp >>= 1;
    }
    return result;
}

// Checked narrowing of an arbitrary-precision value to a container index.
// `what` names the quantity in the error message; `ceiling` bounds how much
// memory the caller is about to commit to.
inline std::size_t to_size(const Int& v, const char* what, std::size_t ceiling) {
    if (v < 0)
        throw precondition_error(std::string(what) + ": negative size");
    if (v > Int(ceiling))
        throw resource_error(std::string(what) + " needs " + v.str() +
                             " entries, ceiling is " + std::to_string(ceiling));
    return static_cast<std::size_t>(v);
}

// True when the rational has denominator 1.
inline bool is_integer(const Rat& r) {
    return boost::multiprecision::denominator(r) == 1;
}

// Exact conversion; throws if the value is not an integer.
inline Int rat_to_int(const Rat& r, const char* what) {
    if (!is_integer(r))
        throw inconsistency_error(std::string(what) + " is not an integer: " +
                                  boost::multiprecision::numerator(r).str() + "/" +
                                  boost::multiprecision::denominator(r).str());
    return boost::multiprecision::numerator(r);
}

// F(0)=0, F(1)=1, F(2)=1, ...
inline Nat fibonacci(unsigned long n) {
    Nat a = 0, b = 1;
    for (unsigned long i = 0; i < n; ++i) {
        Nat t = a + b;
        a = b;
        b = t;
    }
    return a;
}

// n-th triangular number n(n+1)/2.
inline Nat triangular_number(const Nat& n) { return n * (n + 1) / 2; }

// n-th tetrahedral number n(n+1)(n+2)/6.
inline Nat tetrahedral_number(const Nat& n) { return n * (n + 1) * (n + 2) / 6; }

// Prime factorization by trial division, ascending primes.
inline std::vector<std::pair<Nat, unsigned long>> factorize(Nat n) {
    if (n <= 0) throw precondition_error("factorize: argument must be positive");
    std::vector<std::pair<Nat, unsigned long>> out;
    auto strip = [&](const Nat& p) {
        unsigned long e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e) out.emplace_back(p, e);
    };
    strip(2);
    strip(3);
    for (Nat p = 5; p * p <= n; p += 6) {
        strip(p);
        strip(p + 2);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

// Sum of t-th powers of divisors. sigma(n, 0) counts divisors.
inline Nat sigma(const Nat& n, unsigned long t) {
    Nat result = 1;
    for (const auto& [p, e] : factorize(n)) {
        if (t == 0) {
            result *= Nat(e + 1);
        } else {
            Nat pt = pow_nat(p, t);
            // 1 + p^t + ... + p^{te}
            result *= (pow_nat(pt, e + 1) - 1) / (pt - 1);
        }
    }
    return result;
}

// Largest e with p^e | n.
inline unsigned long valuation(Nat n, const Nat& p) {
    if (n <= 0 || p < 2)
        throw precondition_error("valuation: need n > 0 and p >= 2");
    unsigned long e = 0;
    while (n % p == 0) { n /= p; ++e; }
    return e;
}

} // namespace semired
