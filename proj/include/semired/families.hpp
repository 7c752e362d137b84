#pragma once

// Parameterized graph constructions for families of numerical semigroups.
// Each constructor returns the reduction graph the family reduces along,
// the generators the family is defined by, and, where one is known, a
// closed form for the Frobenius number. The graph carries the substance:
// its edge remainders assemble the Apery set of the semigroup, so the
// Frobenius number, genus and symmetry fall out of analyze() exactly,
// without any search. Constructors check their own output: the returned
// graph always validates and has balance 1.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "edges.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "numbers.hpp"
#include "numcore.hpp"
#include "transform.hpp"

namespace semired {

struct FamilyInstance {
    std::string family;                                       // kebab-case name
    std::vector<std::pair<std::string, std::string>> params;  // in signature order
    ReductionGraph graph;
    GeneratorSet generators;                   // the generators the family states
    std::optional<Int> closed_form_frobenius;  // when the family has one
};

namespace detail {

inline std::pair<std::string, std::string> param(const char* name, const Nat& v) {
    return {name, v.str()};
}

inline std::pair<std::string, std::string> param(const char* name, unsigned long v) {
    return {name, std::to_string(v)};
}

inline std::pair<std::string, std::string> param(const char* name, std::string v) {
    return {name, std::move(v)};
}

inline std::pair<std::string, std::string> param(const char* name, const char* v) {
    return {name, v};
}

inline std::string joined(const std::vector<Nat>& values) {
    std::string s;
    for (const Nat& v : values) {
        if (!s.empty()) s += ',';
        s += v.str();
    }
    return s;
}

// The one-node graph of <1>; several families degenerate to it.
inline ReductionGraph unit_graph() {
    GraphBuilder b;
    b.set_root(Monogenic{Nat(1)});
    return b.finish();
}

inline FamilyInstance make_instance(std::string family,
                                    std::vector<std::pair<std::string, std::string>> params,
                                    ReductionGraph graph, std::vector<Nat> gens,
                                    std::optional<Int> frobenius) {
    ValidationReport rep = validate(graph);
    if (!rep.ok())
        throw inconsistency_error("family " + family + ": constructed graph is invalid: " +
                                  rep.errors.front());
    if (balance(graph) != 1)
        throw inconsistency_error("family " + family + ": constructed graph has balance " +
                                  balance(graph).str() + ", expected 1");
    FamilyInstance inst;
    inst.family = std::move(family);
    inst.params = std::move(params);
    inst.graph = std::move(graph);
    inst.generators = GeneratorSet(std::move(gens));
    inst.closed_form_frobenius = std::move(frobenius);
    return inst;
}

} // namespace detail

// ------------------------------------------------------------------ geometric
//
// S = <a^n, a^{n-1}b, ..., b^n> with gcd(a,b) = 1. A chain of n scaled
// binary reductions, one per consecutive generator pair, each of weight a.
// F(S) = -a^n + (a-1) * sum_{k=1..n} a^{n-k} b^k (so -1 when a = b = 1).
inline FamilyInstance geometric(const Nat& a, const Nat& b, unsigned long n) {
    if (a < 1 || b < 1) throw precondition_error("geometric: a and b must be positive");
    if (n < 1) throw precondition_error("geometric: n must be at least 1");
    if (gcd(a, b) != 1)
        throw precondition_error("geometric: a and b must be coprime, gcd is " +
                                 Nat(gcd(a, b)).str());

    std::vector<Nat> gens;
    for (unsigned long k = 0; k <= n; ++k) gens.push_back(pow_nat(a, n - k) * pow_nat(b, k));

    Nat tail = 0;
    for (unsigned long k = 1; k <= n; ++k) tail += pow_nat(a, n - k) * pow_nat(b, k);
    Int frob = -Int(pow_nat(a, n)) + (Int(a) - 1) * Int(tail);

    ReductionGraph g;
    if (a == 1 && b == 1) {
        g = detail::unit_graph();
    } else {
        GraphBuilder builder;
        for (unsigned long k = 0; k < n; ++k)
            builder.add_edge(scaled_binary_edge(pow_nat(a, n - k - 1) * pow_nat(b, k), a, b));
        g = builder.finish();
    }
    return detail::make_instance(
        "geometric",
        {detail::param("a", a), detail::param("b", b), detail::param("n", n)}, std::move(g),
        std::move(gens), frob);
}

// --------------------------------------------------------- composed-geometric
//
// The merge of two geometric chains at their roots: the result spans
// c^m * {a^{n-k} b^k} together with a^n * {c^{m-j} d^j}, rooted at a^n c^m.
// n = 0 or m = 0 degenerates to the other chain alone.
inline FamilyInstance composed_geometric(const Nat& a, const Nat& b, const Nat& c, const Nat& d,
                                         unsigned long n, unsigned long m) {
    if (a < 1 || b < 1 || c < 1 || d < 1)
        throw precondition_error("composed geometric: parameters must be positive");
    if (gcd(a, b) != 1)
        throw precondition_error("composed geometric: a and b must be coprime");
    if (gcd(c, d) != 1)
        throw precondition_error("composed geometric: c and d must be coprime");
    if (gcd(a, c) != 1)
        throw precondition_error("composed geometric: a and c must be coprime");

    Nat an = pow_nat(a, n), cm = pow_nat(c, m);
    std::vector<Nat> gens;
    for (unsigned long k = 0; k <= n; ++k)
        gens.push_back(cm * pow_nat(a, n - k) * pow_nat(b, k));
    for (unsigned long j = 0; j <= m; ++j)
        gens.push_back(an * pow_nat(c, m - j) * pow_nat(d, j));

    auto side = [](const Nat& x, const Nat& y, unsigned long len) -> ReductionGraph {
        if (len == 0 || (x == 1 && y == 1)) return detail::unit_graph();
        GraphBuilder builder;
        for (unsigned long k = 0; k < len; ++k)
            builder.add_edge(scaled_binary_edge(pow_nat(x, len - k - 1) * pow_nat(y, k), x, y));
        return builder.finish();
    };
    ReductionGraph left = side(a, b, n);
    ReductionGraph g = compose(left, side(c, d, m), left.root);

    return detail::make_instance(
        "composed-geometric",
        {detail::param("a", a), detail::param("b", b), detail::param("c", c),
         detail::param("d", d), detail::param("n", n), detail::param("m", m)},
        std::move(g), std::move(gens), std::nullopt);
}

// ------------------------------------------------------------------- compound
//
// S = <n_0, ..., n_k> with n_i = a_{i+1}...a_k * b_1...b_i, requiring
// gcd(a_i, b_j) = 1 whenever i >= j. A chain of k scaled binary reductions;
// step i exchanges a factor a_i for b_i and has weight a_i.
inline FamilyInstance compound(const std::vector<Nat>& as, const std::vector<Nat>& bs) {
    if (as.empty() || as.size() != bs.size())
        throw precondition_error("compound: need equally many a and b values, at least one pair");
    for (const Nat& v : as)
        if (v < 1) throw precondition_error("compound: a values must be positive");
    for (const Nat& v : bs)
        if (v < 1) throw precondition_error("compound: b values must be positive");
    std::size_t k = as.size();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            if (gcd(as[i], bs[j]) != 1)
                throw precondition_error("compound: gcd(a_" + std::to_string(i + 1) + ", b_" +
                                         std::to_string(j + 1) + ") = " +
                                         Nat(gcd(as[i], bs[j])).str() + ", expected 1");

    // suffixA[i] = a_{i+1}...a_k, prefixB[i] = b_1...b_i (0-based lists).
    std::vector<Nat> suffixA(k + 1, Nat(1)), prefixB(k + 1, Nat(1));
    for (std::size_t i = k; i-- > 0;) suffixA[i] = suffixA[i + 1] * as[i];
    for (std::size_t i = 0; i < k; ++i) prefixB[i + 1] = prefixB[i] * bs[i];

    std::vector<Nat> gens;
    for (std::size_t i = 0; i <= k; ++i) gens.push_back(suffixA[i] * prefixB[i]);

    GraphBuilder builder;
    bool any = false;
    for (std::size_t i = 1; i <= k; ++i) {
        if (as[i - 1] == 1 && bs[i - 1] == 1) continue; // no-op step
        builder.add_edge(scaled_binary_edge(suffixA[i] * prefixB[i - 1], as[i - 1], bs[i - 1]));
        any = true;
    }
    ReductionGraph g = any ? builder.finish() : detail::unit_graph();

    return detail::make_instance(
        "compound",
        {detail::param("a", detail::joined(as)), detail::param("b", detail::joined(bs))},
        std::move(g), std::move(gens), std::nullopt);
}

// ------------------------------------------------------------ special-triplet
//
// S = <a, b, c> with c | lcm(a, b) and gcd(a, b, c) = 1. Writing
// g1 = gcd(a, c) and g2 = gcd(b, c) one has c = g1 g2, and both a and b
// reduce onto <c> by one scaled binary edge each, of weights c/g1 and c/g2.
// F(S) = a(g2 - 1) + b(g1 - 1) - c.
inline FamilyInstance special_triplet(const Nat& a, const Nat& b, const Nat& c) {
    if (a < 1 || b < 1 || c < 1)
        throw precondition_error("special triplet: generators must be positive");
    if (a == b || a == c || b == c)
        throw precondition_error("special triplet: generators must be distinct");
    if (lcm(a, b) % c != 0)
        throw precondition_error("special triplet: c must divide lcm(a, b)");
    if (gcd(gcd(a, b), c) != 1)
        throw precondition_error("special triplet: gcd(a, b, c) must be 1");

    Nat g1 = gcd(a, c), g2 = gcd(b, c);
    Int frob = Int(a) * (Int(g2) - 1) + Int(b) * (Int(g1) - 1) - Int(c);

    GraphBuilder builder;
    builder.add_edge(scaled_binary_edge(g1, c / g1, a / g1));
    builder.add_edge(scaled_binary_edge(g2, c / g2, b / g2));
    ReductionGraph g = builder.finish();

    return detail::make_instance(
        "special-triplet",
        {detail::param("a", a), detail::param("b", b), detail::param("c", c)}, std::move(g),
        {a, b, c}, frob);
}

// ---------------------------------------------------------- fibonacci-triplet
//
// S = <F_i, F_{i+2}, F_{i+k}> for i >= 1, k >= 3 (F_1 = F_2 = 1). Two edges:
// a linear one eliminating <F_{i+2} F_k> through the identity
// F_{i+2} F_k = F_{k-2} F_i + F_{i+k}, and a residue edge into the root
// <F_i> whose inputs are the range {r F_{i+2} : r < F_k} together with
// <F_{i+k}>. The remainder element in class y is q F_{i+k} + s F_{i+2}
// where y = q F_k + s, 0 <= s < F_k.
inline FamilyInstance fibonacci_triplet(unsigned long i, unsigned long k) {
    if (i < 1) throw precondition_error("fibonacci triplet: i must be at least 1");
    if (k < 3) throw precondition_error("fibonacci triplet: k must be at least 3");

    Nat fi = fibonacci(i), f2 = fibonacci(i + 2), fk = fibonacci(k);
    Nat fik = fibonacci(i + k), fk2 = fibonacci(k - 2);

    std::vector<Int> table;
    for (Nat y = 0; y < fi; ++y) table.push_back(-Int(fk2) * Int(y / fk));

    GraphBuilder builder;
    builder.add_edge(linear_edge({fi, fik}, f2 * fk));
    builder.add_edge(residue_edge(fi, f2, table,
                                  {ScaledRange{f2, fk}, Monogenic{fik}}));
    ReductionGraph g = builder.finish();

    return detail::make_instance(
        "fibonacci-triplet", {detail::param("i", i), detail::param("k", k)}, std::move(g),
        {fi, f2, fik}, std::nullopt);
}

// ----------------------------------------------------------------- telescopic
//
// Generators a_1, ..., a_t where each c_i * a_i lies in the span of the
// earlier ones, c_i being the gcd drop gcd(a_1..a_{i-1}) / gcd(a_1..a_i).
// One linear-binary edge per generator after the first. Every telescopic
// semigroup is symmetric: each remainder {a_i r : r < c_i} contributes
// zero asymmetry.
inline FamilyInstance telescopic(const std::vector<Nat>& seq) {
    if (seq.empty()) throw precondition_error("telescopic: no generators");
    for (const Nat& v : seq)
        if (v < 1) throw precondition_error("telescopic: generators must be positive");
    Nat g = 0;
    for (const Nat& v : seq) g = gcd(g, v);
    if (g != 1)
        throw precondition_error("telescopic: generators have gcd " + g.str() + ", expected 1");
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = i + 1; j < seq.size(); ++j)
            if (seq[i] == seq[j])
                throw precondition_error("telescopic: generator " + seq[i].str() + " repeats");

    ReductionGraph graph;
    if (seq.size() == 1) {
        graph = detail::unit_graph(); // gcd 1 forces seq = {1}
    } else {
        GraphBuilder builder;
        std::vector<Nat> prefix = {seq[0]};
        for (std::size_t i = 1; i < seq.size(); ++i) {
            try {
                builder.add_edge(linear_binary_edge(prefix, seq[i]));
            } catch (const precondition_error& e) {
                throw precondition_error("telescopic: generator " + seq[i].str() +
                                         " breaks the condition: " + e.what());
            }
            prefix.push_back(seq[i]);
        }
        graph = builder.finish();
    }

    return detail::make_instance("telescopic", {detail::param("sequence", detail::joined(seq))},
                                 std::move(graph), seq, std::nullopt);
}

// ----------------------------------------------------------------- triangular
//
// S = <T_n, T_{n+1}, T_{n+2}> on consecutive triangular numbers. Two binary
// edges in a chain; consecutive triangular numbers share a large gcd, so
// both weights stay small and their product is T_n.
inline FamilyInstance triangular(unsigned long n) {
    if (n < 1) throw precondition_error("triangular: n must be at least 1");
    Nat t0 = triangular_number(Nat(n));
    Nat t1 = triangular_number(Nat(n + 1));
    Nat t2 = triangular_number(Nat(n + 2));

    GraphBuilder builder;
    builder.add_edge(binary_edge(t0, t1));
    builder.add_edge(binary_edge(t1, t2));
    ReductionGraph g = builder.finish();

    return detail::make_instance("triangular", {detail::param("n", n)}, std::move(g),
                                 {t0, t1, t2}, std::nullopt);
}

// ----------------------------------------------------------- tetrahedral-mod6
//
// S = <TH_n, TH_{n+1}, TH_{n+2}, TH_{n+3}> on consecutive tetrahedral
// numbers, for n = 6m. The sequence is telescopic with gcd drops 2m,
// 6m+1, 3m+1; the last linear-binary edge rests on the identity
// (3m+2) TH_{n+1} + 2 TH_{n+2} = (3m+1) TH_{n+3}.
inline FamilyInstance tetrahedral_mod6(unsigned long n) {
    if (n < 6 || n % 6 != 0)
        throw precondition_error("tetrahedral: n must be a positive multiple of 6");

    std::vector<Nat> th;
    for (unsigned long j = 0; j < 4; ++j) th.push_back(tetrahedral_number(Nat(n + j)));

    GraphBuilder builder;
    std::vector<Nat> prefix = {th[0]};
    for (std::size_t i = 1; i < th.size(); ++i) {
        builder.add_edge(linear_binary_edge(prefix, th[i]));
        prefix.push_back(th[i]);
    }
    ReductionGraph g = builder.finish();

    return detail::make_instance("tetrahedral-mod6", {detail::param("n", n)}, std::move(g), th,
                                 std::nullopt);
}

// -------------------------------------------------------- extended-triangular
//
// Two arithmetic runs: {T_n + j(n+1) : 0 <= j <= p} and
// {T_{n+1} + j(n+2) : 0 <= j <= q}, sharing the element T_{n+1}. One
// arithmetic edge per run; the second run reduces onto <T_{n+1}>, which the
// first run then absorbs into the root <T_n>. Defaults p = floor(k/2),
// q = floor((k-1)/2); both can be overridden independently.
//
//   F = ceil((n-2)/(2p)) T_n + ceil(n/q) T_{n+1} + n^2 + n - 1   (n even)
//   F = ceil((n-1)/p) T_n + ceil((n-1)/(2q)) T_{n+1} + n^2 - 2   (n odd)
inline FamilyInstance extended_triangular(unsigned long n, unsigned long k,
                                          std::optional<unsigned long> p_over = std::nullopt,
                                          std::optional<unsigned long> q_over = std::nullopt) {
    if (n < 1) throw precondition_error("extended triangular: n must be at least 1");
    if ((!p_over || !q_over) && k < 3)
        throw precondition_error("extended triangular: k must be at least 3");
    unsigned long p = p_over ? *p_over : k / 2;
    unsigned long q = q_over ? *q_over : (k - 1) / 2;
    if (p < 1 || q < 1)
        throw precondition_error("extended triangular: p and q must be at least 1");
    // Beyond the shared element T_{n+1} the two runs meet again at
    // T_{n+1} + m(n+1)(n+2), which both edges would then claim. With default
    // lengths the second edge simply stops short of the first meeting point;
    // the dropped elements T_{n+1} + (m(n+1)+w)(n+2) stay in the span as
    // 2m T_{n+1} + (T_{n+1} + w(n+2)), so the semigroup is unchanged. For
    // explicit overrides the collision is reported instead.
    unsigned long q_edge = q;
    for (unsigned long m = 1; m * (n + 1) <= q_edge; ++m)
        if (m * (n + 2) + 1 <= p) {
            if (p_over || q_over)
                throw precondition_error("extended triangular: the runs overlap beyond "
                                         "T_{n+1}; shorten p or q");
            q_edge = m * (n + 1) - 1;
            break;
        }

    Nat t0 = triangular_number(Nat(n)), t1 = triangular_number(Nat(n + 1));
    std::vector<Nat> gens;
    for (unsigned long j = 0; j <= p; ++j) gens.push_back(t0 + Nat(j) * Nat(n + 1));
    for (unsigned long j = 0; j <= q; ++j) gens.push_back(t1 + Nat(j) * Nat(n + 2));

    Int nn = Int(n);
    Int frob;
    if (n % 2 == 0)
        frob = ceil_div(nn - 2, 2 * Int(p)) * Int(t0) + ceil_div(nn, Int(q)) * Int(t1) +
               nn * nn + nn - 1;
    else
        frob = ceil_div(nn - 1, Int(p)) * Int(t0) + ceil_div(nn - 1, 2 * Int(q)) * Int(t1) +
               nn * nn - 2;

    GraphBuilder builder;
    builder.add_edge(modified_arithmetic_edge(t0, Int(n + 1), Nat(p), Nat(1)));
    builder.add_edge(modified_arithmetic_edge(t1, Int(n + 2), Nat(q_edge), Nat(1)));
    ReductionGraph g = builder.finish();

    return detail::make_instance(
        "extended-triangular",
        {detail::param("n", n), detail::param("k", k), detail::param("p", p),
         detail::param("q", q_edge)},
        std::move(g), std::move(gens), frob);
}

// -------------------------------------------------------------- arith-geo-sums
//
// Arithmetic run followed by geometric partial sums. The base run is
// a^n + j a^{n-1} d for j = 0..b/d (d | b, gcd(a,b) = 1). Variant 1
// (requires b <= a) appends a^n + a^{n-k} b^k for k = 2..n; variant 2
// appends a^n + sum_{j<=k} a^{n-j} b^j. One arithmetic edge absorbs the run
// into <a^n>; each appended generator falls to its predecessor through a
// linear-binary edge of weight a.
inline FamilyInstance arith_geo_sums(const Nat& a, const Nat& b, const Nat& d, unsigned long n,
                                     int variant) {
    if (variant != 1 && variant != 2)
        throw precondition_error("arithmetic-geometric sums: variant must be 1 or 2");
    if (a < 1 || b < 1 || d < 1)
        throw precondition_error("arithmetic-geometric sums: a, b and d must be positive");
    if (n < 1) throw precondition_error("arithmetic-geometric sums: n must be at least 1");
    if (b % d != 0)
        throw precondition_error("arithmetic-geometric sums: d must divide b");
    if (gcd(a, b) != 1)
        throw precondition_error("arithmetic-geometric sums: a and b must be coprime");
    if (variant == 1 && b > a)
        throw precondition_error("arithmetic-geometric sums: variant 1 needs b <= a");

    Nat an = pow_nat(a, n);

    // Partial sums A_k: a^{n-k} b^k for variant 1, sum_{j<=k} a^{n-j} b^j
    // for variant 2. A_1 = a^{n-1} b in both, the last element of the run.
    std::vector<Nat> A(n + 1, Nat(0));
    for (unsigned long kk = 1; kk <= n; ++kk) {
        Nat term = pow_nat(a, n - kk) * pow_nat(b, kk);
        A[kk] = (variant == 1) ? term : A[kk - 1] + term;
    }

    std::vector<Nat> gens;
    Nat bd = b / d;
    for (Nat j = 0; j <= bd; ++j) gens.push_back(an + j * pow_nat(a, n - 1) * d);
    for (unsigned long kk = 2; kk <= n; ++kk) gens.push_back(an + A[kk]);

    std::optional<Int> frob;
    if (a == b) {
        frob = Int(-1); // gcd(a,b) = 1 forces a = b = 1 here
    } else {
        Int first = Int(pow_nat(a, n - 1)) *
                    (Int(a) * ceil_div((Int(a) - 1) * Int(d), Int(b)) + Int(a) * Int(d) -
                     Int(a) - Int(d));
        Int diffpow = Int(pow_nat(a, n - 1)) - Int(pow_nat(b, n - 1));
        Rat second;
        if (variant == 1)
            second = Rat((Int(a) - 1) * (Int(n - 1) * Int(an) * (Int(a) - Int(b)) +
                                         Int(b) * Int(b) * diffpow),
                         Int(a) - Int(b));
        else
            second = Rat((Int(a) - 1) * (Int(n - 1) * Int(an) * Int(a) * (Int(a) - Int(b)) -
                                         Int(b) * Int(b) * Int(b) * diffpow),
                         (Int(a) - Int(b)) * (Int(a) - Int(b)));
        frob = Int(first) + rat_to_int(second, "arithmetic-geometric sums frobenius");
    }

    ReductionGraph g;
    if (a == b) {
        g = detail::unit_graph(); // a = b = 1, so S is the whole of N
    } else {
        GraphBuilder builder;
        builder.add_edge(
            modified_arithmetic_edge(an, Int(pow_nat(a, n - 1)) * Int(d), bd, Nat(1)));
        for (unsigned long kk = 1; kk + 1 <= n; ++kk)
            builder.add_edge(linear_binary_edge({an, an + A[kk]}, an + A[kk + 1]));
        g = builder.finish();
    }

    return detail::make_instance(
        "arith-geo-sums",
        {detail::param("a", a), detail::param("b", b), detail::param("d", d),
         detail::param("n", n), detail::param("variant", std::to_string(variant))},
        std::move(g), std::move(gens), frob);
}

// -------------------------------------------------------- shifted-powers-of-two
//
// S = <n, n+1, n+2, n+4, ..., n+2^k> for 0 <= k <= v+1, v the 2-adic
// valuation of n. Each n+2^i falls to n+2^{i+1} through a linear-binary
// edge of weight 2 (from 2(n+2^i) = n + (n+2^{i+1})); the largest shift
// reduces onto <n> by a binary edge when k <= v, and together with
// n+2^{k-1} by an arithmetic edge when k = v+1.
//
//   F = n^2/2^k + (k-1)n - 1      (k <= v)
//   F = n^2/2^k + (k-3/2)n - 1    (k = v+1)
inline FamilyInstance shifted_powers_of_two(const Nat& n, unsigned long k) {
    if (n < 1) throw precondition_error("shifted powers of two: n must be positive");
    unsigned long v = valuation(n, 2);
    if (k > v + 1)
        throw precondition_error("shifted powers of two: k exceeds the 2-adic valuation of n "
                                 "plus one (" + std::to_string(v + 1) + ")");

    std::vector<Nat> gens = {n};
    for (unsigned long i = 0; i <= k; ++i) gens.push_back(n + pow_nat(2, i));

    Rat f = Rat(Int(n) * Int(n), Int(pow_nat(2, k))) - 1;
    if (k <= v)
        f += (Int(k) - 1) * Int(n);
    else
        f += Rat(2 * Int(k) - 3, 2) * Int(n);
    Int frob = rat_to_int(f, "shifted powers of two frobenius");

    GraphBuilder builder;
    if (k == 0) {
        builder.add_edge(binary_edge(n, n + 1));
    } else if (k <= v) {
        for (unsigned long i = 0; i < k; ++i)
            builder.add_edge(linear_binary_edge({n, n + pow_nat(2, i + 1)}, n + pow_nat(2, i)));
        builder.add_edge(binary_edge(n, n + pow_nat(2, k)));
    } else {
        for (unsigned long i = 0; i + 1 < k; ++i)
            builder.add_edge(linear_binary_edge({n, n + pow_nat(2, i + 1)}, n + pow_nat(2, i)));
        builder.add_edge(modified_arithmetic_edge(n, Int(pow_nat(2, k - 1)), Nat(2), Nat(1)));
    }
    ReductionGraph g = builder.finish();

    return detail::make_instance("shifted-powers-of-two",
                                 {detail::param("n", n), detail::param("k", k)}, std::move(g),
                                 std::move(gens), frob);
}

// ------------------------------------------------------------ divisor-function
//
// S = <sigma_t(m) : m/n is 1 or a prime power>, assuming the values
// sigma_t(p^e) over the maximal prime powers p^e || n are pairwise coprime.
// sigma_t(p^{e+j}) is the repunit (p^{t(e+j+1)} - 1)/(p^t - 1); for each
// prime the repunit tower reduces onto <sigma_t(p^e)> through one edge
// whose remainder is the Apery set of the tower, and the per-prime graphs
// merge at their roots into one rooted at sigma_t(n).
//
//   F = sigma_t(n) * (-1 + sum_p (p^{2t(e+1)} - p^t) / (p^{t(e+1)} - 1))

// One prime's tower: the modulus sigma_t(p^e) and the finitely many larger
// tower values that can still matter for its Apery set.
struct RepunitPart {
    Nat prime;
    unsigned long exponent; // e with p^e || n
    Nat modulus;            // sigma_t(p^e)
    std::vector<Nat> tail;  // sigma_t(p^{e+1}), ..., truncated
};

inline std::vector<RepunitPart> repunit_parts(const Nat& n, unsigned long t) {
    if (n < 1) throw precondition_error("divisor function: n must be positive");
    if (t < 1) throw precondition_error("divisor function: t must be at least 1");
    std::vector<RepunitPart> parts;
    for (const auto& [p, e] : factorize(n)) {
        RepunitPart part;
        part.prime = p;
        part.exponent = e;
        part.modulus = sigma(pow_nat(p, e), t);
        part.tail = {sigma(pow_nat(p, e + 1), t)};
        // Generators beyond F + modulus cannot contribute a class minimum.
        for (;;) {
            std::vector<Nat> all = {part.modulus};
            all.insert(all.end(), part.tail.begin(), part.tail.end());
            Int bound = frobenius_oracle(GeneratorSet(all)) + Int(part.modulus);
            Nat next = sigma(pow_nat(p, e + 1 + part.tail.size()), t);
            if (Int(next) > bound) break;
            part.tail.push_back(next);
        }
        parts.push_back(std::move(part));
    }
    return parts;
}

inline FamilyInstance divisor_function(const Nat& n, unsigned long t) {
    std::vector<RepunitPart> parts = repunit_parts(n, t);
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = i + 1; j < parts.size(); ++j)
            if (gcd(parts[i].modulus, parts[j].modulus) != 1)
                throw precondition_error(
                    "divisor function: sigma values " + parts[i].modulus.str() + " and " +
                    parts[j].modulus.str() + " share the factor " +
                    Nat(gcd(parts[i].modulus, parts[j].modulus)).str());

    Nat sn = sigma(n, t);
    std::vector<Nat> gens = {sn};
    for (const RepunitPart& part : parts)
        for (const Nat& v : part.tail) gens.push_back((sn / part.modulus) * v);

    Rat sum = -1;
    for (const auto& [p, e] : factorize(n)) {
        Nat pt = pow_nat(p, t);
        Nat top = pow_nat(pt, e + 1);
        sum += Rat(Int(top) * Int(top) - Int(pt), Int(top) - 1);
    }
    Int frob = rat_to_int(Rat(Int(sn)) * sum, "divisor function frobenius");

    ReductionGraph g = detail::unit_graph();
    bool first = true;
    for (const RepunitPart& part : parts) {
        GraphBuilder builder;
        builder.add_edge(apery_edge(part.modulus, part.tail));
        ReductionGraph pg = builder.finish();
        g = first ? std::move(pg) : compose(g, pg, g.root);
        first = false;
    }

    return detail::make_instance("divisor-function",
                                 {detail::param("n", n), detail::param("t", t)}, std::move(g),
                                 std::move(gens), frob);
}

// ------------------------------------------------------------ almost-divisible
//
// m :: n means n / gcd(n, m) is 1 or a prime power. The two families are
// S = <m : m :: n> and S = <m >= n : m :: n>. Writing p^e || n for the
// maximal prime powers, the first is spanned by the n/p^e and reduces along
// one binary edge per prime; the second replaces each binary edge by an
// unbounded arithmetic edge collecting all multiples of n/p^e from n up.
// The per-prime graphs merge at their roots into one rooted at <n>.
//
//   F(<=) = n * (-1 + sum_p (p^e - 1)/p^e)
//   F(>=) = n * (-1 + sum_p (2p^e - 1)/p^e)
enum class Divisibility { at_most, at_least };

// True when n / gcd(n, m) is 1 or a prime power.
inline bool almost_divides(const Nat& m, const Nat& n) {
    Nat ratio = n / gcd(n, m);
    return ratio == 1 || factorize(ratio).size() == 1;
}

inline FamilyInstance almost_divisible(const Nat& n, Divisibility side) {
    if (n < 1) throw precondition_error("almost divisible: n must be positive");

    auto parts = factorize(n);
    Rat sum = -1;
    for (const auto& [p, e] : parts) {
        Nat pe = pow_nat(p, e);
        sum += (side == Divisibility::at_most) ? Rat(Int(pe) - 1, Int(pe))
                                               : Rat(2 * Int(pe) - 1, Int(pe));
    }
    Int frob = rat_to_int(Rat(Int(n)) * sum, "almost divisible frobenius");

    std::vector<Nat> gens;
    if (side == Divisibility::at_most) {
        gens.push_back(n);
        for (const auto& [p, e] : parts) gens.push_back(n / pow_nat(p, e));
    } else {
        // Every member m >= 2n with m :: n splits as (m - g) + g over the
        // stated gcd g, so generators up to 2n span the family.
        for (Nat m = n; m <= 2 * n; ++m)
            if (almost_divides(m, n)) gens.push_back(m);
    }

    ReductionGraph g = detail::unit_graph();
    bool first = true;
    for (const auto& [p, e] : parts) {
        Nat pe = pow_nat(p, e);
        GraphBuilder builder;
        if (side == Divisibility::at_most)
            builder.add_edge(binary_edge(pe, Nat(1)));
        else
            builder.add_edge(infinite_arithmetic_edge(pe, Int(1), Nat(1)));
        ReductionGraph pg = builder.finish();
        g = first ? std::move(pg) : compose(g, pg, g.root);
        first = false;
    }

    return detail::make_instance(
        "almost-divisible",
        {detail::param("n", n),
         detail::param("variant", side == Divisibility::at_most ? "le" : "ge")},
        std::move(g), std::move(gens), frob);
}

// ------------------------------------------------------------- brauer-shockley
//
// Input generators a_1, ..., a_n where d divides every generator except
// one, called a_n, and gcd of all is 1. The semigroup reduces onto the
// artificial root <d a_n>: one edge of weight a_n whose remainder is d
// times the Apery set of the divided semigroup S' = <a_1/d, ..., a_n>, and
// a binary edge of weight d absorbing <a_n>. The classical identities
//
//   F(S) = d F(S') + a_n (d - 1)
//   g(S) = d g(S') + (a_n - 1)(d - 1)/2
//   H_S(X) = H_{S'}(X^d) (X^{d a_n} - 1)/(X^{a_n} - 1)
//
// relate the pair; both graphs are returned so callers can check them.
struct BrauerShockleyPair {
    FamilyInstance scaled;  // graph of <a_1, ..., a_n>, rooted at <d a_n>
    FamilyInstance reduced; // graph of <a_1/d, ..., a_n>, rooted at <a_n>
    Nat high;               // a_n, the generator d does not divide
    Nat divisor;            // d
};

inline BrauerShockleyPair brauer_shockley(const std::vector<Nat>& gens_in, const Nat& d) {
    if (d < 1) throw precondition_error("brauer-shockley: d must be positive");
    GeneratorSet gens(gens_in);
    if (gens.gcd() != 1)
        throw precondition_error("brauer-shockley: generators have gcd " + gens.gcd().str() +
                                 ", expected 1");

    std::vector<Nat> values = gens.values();
    Nat high;
    std::vector<Nat> others;
    if (d == 1) {
        high = values.back();
        others.assign(values.begin(), values.end() - 1);
    } else {
        std::size_t misses = 0;
        for (const Nat& v : values) {
            if (v % d != 0) {
                ++misses;
                high = v;
            } else {
                others.push_back(v);
            }
        }
        if (misses != 1)
            throw precondition_error("brauer-shockley: exactly one generator may avoid "
                                     "divisibility by d, found " + std::to_string(misses));
    }

    // S' = <a_1/d, ..., a_{n-1}/d, a_n>; entries equal to a_n collapse.
    std::vector<Nat> reduced_tail;
    for (const Nat& o : others)
        if (o / d != high) reduced_tail.push_back(o / d);
    std::vector<Nat> reduced_gens = reduced_tail;
    reduced_gens.push_back(high);

    ReductionGraph reduced_graph;
    if (reduced_tail.empty()) {
        reduced_graph = detail::unit_graph(); // S' = <a_n> is numerical only for a_n = 1
    } else {
        GraphBuilder builder;
        builder.add_edge(apery_edge(high, reduced_tail));
        reduced_graph = builder.finish();
    }

    ReductionGraph scaled_graph;
    if (d == 1) {
        scaled_graph = reduced_graph;
    } else {
        std::vector<Nat> apery = apery_oracle(GeneratorSet(reduced_gens), high);
        EdgeBlueprint lift;
        lift.kind = EdgeKind::apery;
        lift.outputs = {Monogenic{d * high}};
        for (const Nat& o : others)
            if (o != d * high) lift.inputs.push_back(Monogenic{o});
        for (const Nat& x : apery) lift.remainder.push_back(d * x);
        std::sort(lift.remainder.begin(), lift.remainder.end());

        GraphBuilder builder;
        if (!lift.inputs.empty()) builder.add_edge(lift);
        builder.add_edge(binary_edge(d * high, high));
        scaled_graph = builder.finish();
    }

    std::vector<std::pair<std::string, std::string>> ps = {
        detail::param("generators", detail::joined(values)), detail::param("d", d)};

    BrauerShockleyPair pair{
        detail::make_instance("brauer-shockley", ps, std::move(scaled_graph), values,
                              std::nullopt),
        detail::make_instance("brauer-shockley-reduced", std::move(ps), std::move(reduced_graph),
                              std::move(reduced_gens), std::nullopt),
        high, d};
    return pair;
}

} // namespace semired
