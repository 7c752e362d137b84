#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "numbers.hpp"

namespace semired {

// Sparse polynomial with exact integer coefficients, kept as a sorted list
// of (exponent, coefficient) pairs with no zero coefficients. Exponents are
// nonnegative. Generating functions of finite sets live here.
class Poly {
public:
    using Term = std::pair<Nat, Int>;

    Poly() = default;

    static Poly zero() { return Poly(); }

    static Poly one() { return monomial(Nat(0), Int(1)); }

    static Poly monomial(const Nat& exponent, const Int& coeff = Int(1)) {
        Poly p;
        if (coeff != 0) {
            if (exponent < 0) throw precondition_error("poly: negative exponent");
            p.terms_.emplace_back(exponent, coeff);
        }
        return p;
    }

    // Generating function of a finite set: the sum of X^e over its elements.
    // Elements must be distinct and nonnegative.
    static Poly from_set(const std::vector<Nat>& elems) {
        std::vector<Term> terms;
        terms.reserve(elems.size());
        for (const Nat& e : elems) {
            if (e < 0) throw precondition_error("poly: negative exponent");
            terms.emplace_back(e, Int(1));
        }
        std::sort(terms.begin(), terms.end());
        for (std::size_t i = 1; i < terms.size(); ++i)
            if (terms[i].first == terms[i - 1].first)
                throw precondition_error("poly: set has a repeated element " +
                                         terms[i].first.str());
        Poly p;
        p.terms_ = std::move(terms);
        return p;
    }

    static Poly from_terms(std::vector<Term> terms) {
        std::sort(terms.begin(), terms.end(),
                  [](const Term& a, const Term& b) { return a.first < b.first; });
        Poly p;
        for (Term& t : terms) {
            if (t.first < 0) throw precondition_error("poly: negative exponent");
            if (!p.terms_.empty() && p.terms_.back().first == t.first)
                p.terms_.back().second += t.second;
            else
                p.terms_.push_back(std::move(t));
            if (p.terms_.back().second == 0) p.terms_.pop_back();
        }
        return p;
    }

    const std::vector<Term>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }

    std::size_t term_count() const { return terms_.size(); }

    const Nat& degree() const {
        if (terms_.empty()) throw precondition_error("poly: zero has no degree");
        return terms_.back().first;
    }

    Int coefficient(const Nat& exponent) const {
        auto it = std::lower_bound(
            terms_.begin(), terms_.end(), exponent,
            [](const Term& t, const Nat& e) { return t.first < e; });
        if (it != terms_.end() && it->first == exponent) return it->second;
        return 0;
    }

    // True when every coefficient is exactly one, i.e. the polynomial is the
    // generating function of a finite set.
    bool is_set_polynomial() const {
        for (const Term& t : terms_)
            if (t.second != 1) return false;
        return true;
    }

    // The set whose generating function this is; requires 0/1 coefficients.
    std::vector<Nat> as_set() const {
        std::vector<Nat> out;
        out.reserve(terms_.size());
        for (const Term& t : terms_) {
            if (t.second != 1)
                throw inconsistency_error("poly: coefficient of X^" + t.first.str() +
                                          " is " + t.second.str() + ", not 1");
            out.push_back(t.first);
        }
        return out;
    }

    Poly operator-() const {
        Poly p = *this;
        for (Term& t : p.terms_) t.second = -t.second;
        return p;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly out;
        out.terms_.reserve(a.terms_.size() + b.terms_.size());
        auto ia = a.terms_.begin(), ib = b.terms_.begin();
        while (ia != a.terms_.end() || ib != b.terms_.end()) {
            if (ib == b.terms_.end() ||
                (ia != a.terms_.end() && ia->first < ib->first)) {
                out.terms_.push_back(*ia++);
            } else if (ia == a.terms_.end() || ib->first < ia->first) {
                out.terms_.push_back(*ib++);
            } else {
                Int c = ia->second + ib->second;
                if (c != 0) out.terms_.emplace_back(ia->first, std::move(c));
                ++ia;
                ++ib;
            }
        }
        return out;
    }

    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        std::map<Nat, Int> acc;
        for (const Term& ta : a.terms_)
            for (const Term& tb : b.terms_) acc[ta.first + tb.first] += ta.second * tb.second;
        Poly out;
        out.terms_.reserve(acc.size());
        for (auto& [e, c] : acc)
            if (c != 0) out.terms_.emplace_back(e, std::move(c));
        return out;
    }

    bool operator==(const Poly& other) const = default;

    // P(X^d) for d >= 1.
    Poly substitute_power(const Nat& d) const {
        if (d < 1) throw precondition_error("poly: substitution power must be >= 1");
        Poly p = *this;
        for (Term& t : p.terms_) t.first *= d;
        return p;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const Term& t : terms_) {
            Int c = t.second;
            if (first) {
                if (c < 0) out += "-";
            } else {
                out += c < 0 ? " - " : " + ";
            }
            first = false;
            Int ac = abs(c);
            bool unit = ac == 1 && t.first != 0;
            if (!unit) out += ac.str();
            if (t.first != 0) {
                out += "X";
                if (t.first != 1) out += "^" + t.first.str();
            }
        }
        return out;
    }

private:
    std::vector<Term> terms_;
};

// Product of two set polynomials that must again be a set polynomial; a
// coefficient above one means two sums collide, so the corresponding sum of
// sets is not direct.
inline Poly checked_direct_product(const Poly& a, const Poly& b) {
    Poly p = a * b;
    for (const auto& [e, c] : p.terms())
        if (c != 1)
            throw inconsistency_error("sum of sets is not direct: value " + e.str() +
                                      " has " + c.str() + " representations");
    return p;
}

// True when every element of A + B has a unique representation a + b.
inline bool is_direct_sum(const std::vector<Nat>& a, const std::vector<Nat>& b) {
    Poly p = Poly::from_set(a) * Poly::from_set(b);
    return p.is_set_polynomial();
}

// Exact division by (1 - X^r): returns Q with numerator = Q * (1 - X^r).
// Throws when the division leaves a remainder. Coefficients may be signed.
inline Poly divide_by_one_minus_power(const Poly& numerator, const Nat& r) {
    if (r < 1) throw precondition_error("poly division: power must be >= 1");
    if (numerator.is_zero()) return Poly::zero();
    const Nat& dn = numerator.degree();
    if (dn < r)
        throw inconsistency_error("poly division: numerator degree " + dn.str() +
                                  " is below divisor degree " + r.str());
    Nat dq = dn - r; // exact quotient degree
    // Q[e] = numerator[e] + Q[e - r], settled in ascending exponent order.
    std::map<Nat, Int> work;
    for (const auto& [e, c] : numerator.terms()) work[e] += c;
    std::vector<Poly::Term> qterms;
    while (!work.empty()) {
        auto node = work.extract(work.begin());
        const Nat& e = node.key();
        Int& c = node.mapped();
        if (c == 0) continue;
        if (e > dq)
            throw inconsistency_error("poly division by (1 - X^" + r.str() +
                                      ") leaves a remainder");
        work[e + r] += c;
        qterms.emplace_back(e, std::move(c));
    }
    return Poly::from_terms(std::move(qterms));
}

// Arithmetic mean of a finite nonempty set, as an exact rational.
inline Rat set_mean(const std::vector<Nat>& elems) {
    if (elems.empty()) throw precondition_error("mean of empty set");
    Nat sum = 0;
    for (const Nat& e : elems) sum += e;
    return Rat(sum, Nat(elems.size()));
}

// Generating function of a numerical semigroup in closed form: a set
// polynomial numerator over (1 - X^root). The numerator lists the least
// member of each residue class modulo root.
struct HilbertSeries {
    Poly numerator;
    Nat root = 0;

    bool operator==(const HilbertSeries&) const = default;
};

// Coefficients of the series up to `bound` inclusive, as a membership table.
inline std::vector<bool> expand_01_series(const HilbertSeries& h, const Nat& bound,
                                          std::size_t ceiling = std::size_t(1) << 28) {
    std::size_t n = to_size(bound, "series expansion", ceiling - 1) + 1;
    std::vector<bool> out(n, false);
    std::size_t step = to_size(h.root, "series period", ceiling);
    if (step == 0) throw precondition_error("series expansion: zero period");
    for (const auto& [e, c] : h.numerator.terms()) {
        if (c != 1)
            throw inconsistency_error("series numerator is not a set polynomial");
        if (e > bound) continue;
        for (std::size_t x = static_cast<std::size_t>(e); x < n; x += step)
            out[x] = true;
    }
    return out;
}

// The finite generating function of the complement: (1 + X + ... + X^{r-1}
// - numerator) / (1 - X^r). Exact by construction for any valid series.
inline Poly gap_polynomial(const HilbertSeries& h) {
    if (h.root < 1) throw precondition_error("gap polynomial: zero period");
    std::vector<Nat> below;
    for (Nat i = 0; i < h.root; ++i) below.push_back(i);
    Poly num = Poly::from_set(below) - h.numerator;
    if (num.is_zero()) return Poly::zero();
    return divide_by_one_minus_power(num, h.root);
}

// Power sums of the set a polynomial describes: index p holds the sum of
// e^p over the elements. Requires 0/1 coefficients.
inline std::vector<Nat> power_sums_of_set_polynomial(const Poly& p, unsigned long pmax) {
    std::vector<Nat> sums(pmax + 1, Nat(0));
    for (const auto& [e, c] : p.terms()) {
        if (c != 1)
            throw inconsistency_error("power sums need a set polynomial");
        Nat pw = 1;
        sums[0] += 1;
        for (unsigned long q = 1; q <= pmax; ++q) {
            pw *= e;
            sums[q] += pw;
        }
    }
    return sums;
}

} // namespace semired
