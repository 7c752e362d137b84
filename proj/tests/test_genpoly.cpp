#include <catch2/catch_amalgamated.hpp>

#include <semired/genpoly.hpp>
#include <semired/numcore.hpp>

#include <map>
#include <random>
#include <set>

using namespace semired;

namespace {

std::vector<Nat> nats(std::initializer_list<long> xs) {
    std::vector<Nat> v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

Poly poly(std::initializer_list<std::pair<long, long>> ts) {
    std::vector<Poly::Term> terms;
    for (auto [e, c] : ts) terms.emplace_back(Nat(e), Int(c));
    return Poly::from_terms(std::move(terms));
}

} // namespace

TEST_CASE("polynomial construction and lookup") {
    Poly p = poly({{0, 1}, {5, 2}, {5, -2}, {3, 4}});
    CHECK(p.term_count() == 2);
    CHECK(p.coefficient(Nat(0)) == 1);
    CHECK(p.coefficient(Nat(3)) == 4);
    CHECK(p.coefficient(Nat(5)) == 0);
    CHECK(p.degree() == 3);
    CHECK(Poly::zero().is_zero());
    CHECK_THROWS_AS(Poly::zero().degree(), precondition_error);
    CHECK_THROWS_AS(Poly::from_set(nats({1, 2, 2})), precondition_error);
    CHECK(Poly::from_set(nats({0, 5, 6, 11})).is_set_polynomial());
    CHECK(Poly::from_set(nats({2, 0, 7})).as_set() == nats({0, 2, 7}));
    CHECK(poly({{0, 2}}).is_set_polynomial() == false);
    CHECK_THROWS_AS(poly({{0, 2}}).as_set(), inconsistency_error);
}

TEST_CASE("polynomial arithmetic") {
    Poly a = poly({{0, 1}, {1, 1}});
    CHECK(a * a == poly({{0, 1}, {1, 2}, {2, 1}}));
    CHECK(a + (-a) == Poly::zero());
    CHECK(a - a == Poly::zero());
    Poly b = poly({{0, 1}, {2, -1}});
    CHECK(a * b == poly({{0, 1}, {1, 1}, {2, -1}, {3, -1}}));
    CHECK((a * b).str() == "1 + X - X^2 - X^3");
    CHECK(Poly::zero() * a == Poly::zero());
    CHECK(a.substitute_power(Nat(3)) == poly({{0, 1}, {3, 1}}));
    CHECK(poly({{2, 5}}).str() == "5X^2");
    CHECK(Poly::zero().str() == "0");
}

TEST_CASE("direct sum certificates") {
    CHECK(is_direct_sum(nats({0, 6}), nats({0, 5})));
    CHECK(checked_direct_product(Poly::from_set(nats({0, 6})),
                                 Poly::from_set(nats({0, 5}))) ==
          Poly::from_set(nats({0, 5, 6, 11})));
    CHECK_FALSE(is_direct_sum(nats({0, 2}), nats({0, 2})));
    CHECK_THROWS_AS(checked_direct_product(Poly::from_set(nats({0, 2})),
                                           Poly::from_set(nats({0, 2}))),
                    inconsistency_error);
}

TEST_CASE("division by one minus a power") {
    Poly n = poly({{0, 1}, {12, -1}});
    CHECK(divide_by_one_minus_power(n, Nat(3)) ==
          poly({{0, 1}, {3, 1}, {6, 1}, {9, 1}}));
    CHECK_THROWS_AS(divide_by_one_minus_power(poly({{0, 1}, {11, -1}}), Nat(3)),
                    inconsistency_error);
    CHECK_THROWS_AS(divide_by_one_minus_power(poly({{1, 1}}), Nat(3)),
                    inconsistency_error);
    CHECK(divide_by_one_minus_power(Poly::zero(), Nat(5)) == Poly::zero());
}

TEST_CASE("division round trip on random polynomials") {
    std::mt19937 rng(424242);
    std::uniform_int_distribution<long> e(0, 40), c(-5, 5), rr(1, 9), len(1, 12);
    for (int iter = 0; iter < 200; ++iter) {
        std::vector<Poly::Term> ts;
        long n = len(rng);
        for (long i = 0; i < n; ++i) ts.emplace_back(Nat(e(rng)), Int(c(rng)));
        Poly q = Poly::from_terms(std::move(ts));
        Nat r(rr(rng));
        Poly divisor = poly({{0, 1}}) - Poly::monomial(r);
        Poly num = q * divisor;
        if (num.is_zero())
            CHECK(q.is_zero());
        else
            CHECK(divide_by_one_minus_power(num, r) == q);
    }
}

TEST_CASE("gap polynomial from a closed-form series") {
    HilbertSeries h{Poly::from_set(nats({0, 5, 6, 11})), Nat(4)};
    CHECK(gap_polynomial(h) == Poly::from_set(nats({1, 2, 3, 7})));
    CHECK(power_sums_of_set_polynomial(gap_polynomial(h), 2) == nats({4, 13, 63}));

    HilbertSeries all{Poly::one(), Nat(1)};
    CHECK(gap_polynomial(all) == Poly::zero());
}

TEST_CASE("series expansion equals sieve membership") {
    HilbertSeries h{Poly::from_set(nats({0, 5, 6, 11})), Nat(4)};
    auto got = expand_01_series(h, Nat(30));
    auto want = membership_table(GeneratorSet(nats({4, 5, 6})), Nat(30));
    CHECK(got == want);
}

TEST_CASE("series of random semigroups round trips through gaps") {
    std::mt19937 rng(777);
    std::uniform_int_distribution<long> val(2, 40), n(2, 4);
    for (int iter = 0; iter < 40; ++iter) {
        std::vector<Nat> v;
        for (long i = 0, k = n(rng); i < k; ++i) v.emplace_back(val(rng));
        GeneratorSet g(v);
        if (g.gcd() != 1) continue;
        const Nat& a = g.least();
        HilbertSeries h{Poly::from_set(apery_oracle(g, a)), a};
        auto gd = gaps_oracle(g);
        CHECK(gap_polynomial(h) == Poly::from_set(gd.gaps));
        Nat bound = Nat(gd.frobenius + 2 * Int(a));
        CHECK(expand_01_series(h, bound) == membership_table(g, bound));
    }
}

TEST_CASE("mean of a finite set") {
    CHECK(set_mean(nats({0, 5, 6, 11})) == Rat(11, 2));
    CHECK(set_mean(nats({0})) == Rat(0));
    CHECK_THROWS_AS(set_mean({}), precondition_error);
}
