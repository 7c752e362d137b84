#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include <semired/families.hpp>

#include "support/naive.hpp"

using namespace semired;

namespace {

GeneratorSet gs(std::initializer_list<long> xs) {
    std::vector<Nat> v;
    for (long x : xs) v.push_back(Nat(x));
    return GeneratorSet(v);
}

std::vector<Nat> nats(std::initializer_list<long> xs) {
    std::vector<Nat> v;
    for (long x : xs) v.push_back(Nat(x));
    return v;
}

// Full crosscheck of one instance against the sieve: the graph validates
// with balance 1 and spans exactly the stated generators, analyze()
// reproduces every invariant the sieve finds, and the closed form (when
// present) agrees with both. Returns the report for follow-up assertions.
AnalysisReport checked(const FamilyInstance& inst) {
    CAPTURE(inst.family, inst.params);
    REQUIRE(validate(inst.graph).ok());
    REQUIRE(balance(inst.graph) == Rat(1));
    REQUIRE(span_equals(inst.graph, inst.generators));

    AnalysisReport rep = analyze(inst.graph);
    naive::Facts facts =
        naive::facts(inst.generators, static_cast<std::size_t>(rep.root_generator));
    REQUIRE(rep.frobenius == facts.frobenius);
    REQUIRE(rep.genus == facts.genus);
    std::vector<Nat> ap = facts.apery;
    std::sort(ap.begin(), ap.end());
    REQUIRE(rep.apery == ap);
    REQUIRE(rep.asymmetry == 2 * Int(facts.genus) - facts.frobenius - 1);

    if (inst.closed_form_frobenius)
        REQUIRE(*inst.closed_form_frobenius == rep.frobenius);
    return rep;
}

std::vector<std::size_t> edge_weights(const ReductionGraph& g) {
    std::vector<std::size_t> w;
    for (const auto& e : g.edges) w.push_back(e.weight());
    return w;
}

} // namespace

TEST_CASE("geometric chains match the closed form and the oracle") {
    FamilyInstance inst = geometric(2, 3, 2);
    REQUIRE(inst.generators == gs({4, 6, 9}));
    REQUIRE(inst.closed_form_frobenius == Int(11));
    AnalysisReport rep = checked(inst);
    REQUIRE(rep.root_generator == 4);
    REQUIRE(edge_weights(inst.graph) == std::vector<std::size_t>{2, 2});

    REQUIRE(checked(geometric(3, 5, 2)).frobenius == 71);
    REQUIRE(checked(geometric(2, 5, 3)).frobenius ==
            -8 + (2 - 1) * (4 * 5 + 2 * 25 + 125));

    SECTION("n = 1 is the two-generator case") {
        for (long a = 2; a <= 7; ++a)
            for (long b = a + 1; b <= 8; ++b) {
                if (std::gcd(a, b) != 1) continue;
                FamilyInstance s = geometric(a, b, 1);
                REQUIRE(s.closed_form_frobenius == Int(a * b - a - b));
                checked(s);
            }
    }

    SECTION("degenerate parameters span the whole of N") {
        REQUIRE(checked(geometric(3, 1, 2)).frobenius == -1);
        REQUIRE(checked(geometric(1, 4, 2)).frobenius == -1);
        FamilyInstance unit = geometric(1, 1, 3);
        REQUIRE(unit.graph.nodes.size() == 1);
        REQUIRE(checked(unit).frobenius == -1);
    }

    SECTION("rejected parameters") {
        REQUIRE_THROWS_AS(geometric(2, 4, 2), precondition_error);
        REQUIRE_THROWS_AS(geometric(2, 3, 0), precondition_error);
        REQUIRE_THROWS_AS(geometric(0, 3, 1), precondition_error);
    }
}

TEST_CASE("compound chains generalize the geometric one") {
    FamilyInstance inst = compound(nats({2, 3}), nats({5, 7}));
    REQUIRE(inst.generators == gs({6, 15, 35}));
    AnalysisReport rep = checked(inst);
    REQUIRE(rep.frobenius == 79);
    REQUIRE(rep.apery == nats({0, 15, 35, 50, 70, 85}));
    REQUIRE(edge_weights(inst.graph) == std::vector<std::size_t>{2, 3});

    SECTION("equal pairs collapse to a geometric chain") {
        FamilyInstance c = compound(nats({2, 2}), nats({3, 3}));
        REQUIRE(canonical_form(c.graph) == canonical_form(geometric(2, 3, 2).graph));
        checked(c);
    }

    SECTION("a longer chain") {
        FamilyInstance c = compound(nats({2, 3, 5}), nats({7, 11, 13}));
        REQUIRE(c.generators == gs({2 * 3 * 5, 3 * 5 * 7, 5 * 7 * 11, 7 * 11 * 13}));
        checked(c);
    }

    SECTION("rejected parameters") {
        // gcd(a_2, b_1) = 5 violates the triangular coprimality condition
        REQUIRE_THROWS_AS(compound(nats({2, 5}), nats({5, 3})), precondition_error);
        REQUIRE_THROWS_AS(compound(nats({2, 3}), nats({5})), precondition_error);
        REQUIRE_THROWS_AS(compound({}, {}), precondition_error);
    }
}

TEST_CASE("composed geometric merges two chains at the root") {
    FamilyInstance inst = composed_geometric(2, 3, 5, 7, 2, 2);
    REQUIRE(inst.generators == gs({100, 150, 225, 140, 196}));
    AnalysisReport rep = checked(inst);
    REQUIRE(rep.root_generator == 100);

    SECTION("one empty side degenerates to the other chain") {
        FamilyInstance left_only = composed_geometric(2, 3, 5, 7, 2, 0);
        REQUIRE(canonical_form(left_only.graph) == canonical_form(geometric(2, 3, 2).graph));
        checked(left_only);

        FamilyInstance right_only = composed_geometric(2, 3, 5, 7, 0, 2);
        REQUIRE(canonical_form(right_only.graph) == canonical_form(geometric(5, 7, 2).graph));
        checked(right_only);

        FamilyInstance none = composed_geometric(2, 3, 5, 7, 0, 0);
        REQUIRE(checked(none).frobenius == -1);
    }

    SECTION("rejected parameters") {
        REQUIRE_THROWS_AS(composed_geometric(2, 3, 2, 5, 1, 1), precondition_error);
        REQUIRE_THROWS_AS(composed_geometric(2, 4, 5, 7, 1, 1), precondition_error);
        REQUIRE_THROWS_AS(composed_geometric(2, 3, 5, 10, 1, 1), precondition_error);
    }
}

TEST_CASE("special triplets reduce both outer generators onto <c>") {
    FamilyInstance inst = special_triplet(4, 9, 6);
    REQUIRE(inst.closed_form_frobenius == Int(11));
    AnalysisReport rep = checked(inst);
    REQUIRE(rep.root_generator == 6);

    FamilyInstance fig = special_triplet(6, 10, 15);
    REQUIRE(fig.closed_form_frobenius == Int(29));
    // gcd(6,15) = 3 and gcd(10,15) = 5, so the weights are 15/3 and 15/5
    REQUIRE(edge_weights(fig.graph) == std::vector<std::size_t>{5, 3});
    checked(fig);

    SECTION("c = 1 gives the whole of N") {
        FamilyInstance unit = special_triplet(5, 7, 1);
        REQUIRE(unit.closed_form_frobenius == Int(-1));
        checked(unit);
    }

    SECTION("rejected parameters") {
        REQUIRE_THROWS_AS(special_triplet(4, 9, 5), precondition_error);  // 5 | lcm fails
        REQUIRE_THROWS_AS(special_triplet(4, 6, 2), precondition_error);  // common factor 2
        REQUIRE_THROWS_AS(special_triplet(4, 9, 4), precondition_error);  // a = c
        REQUIRE_THROWS_AS(special_triplet(4, 4, 2), precondition_error);  // a = b
    }
}

TEST_CASE("fibonacci triplets") {
    SECTION("the <8, 21, 34> instance") {
        FamilyInstance inst = fibonacci_triplet(6, 3);
        REQUIRE(inst.generators == gs({8, 21, 34}));
        checked(inst);
        for (std::size_t e = 0; e < inst.graph.edges.size(); ++e)
            REQUIRE(semantic_verify_edge(inst.graph, e).pass);
    }

    SECTION("the graph speaks for the span of its own nodes") {
        FamilyInstance inst = fibonacci_triplet(4, 5);
        // F_4 = 3, F_6 = 8, F_9 = 34: the third generator is F_{i+k}
        REQUIRE(inst.generators == gs({3, 8, 34}));
        REQUIRE(checked(inst).frobenius == 13);
        bool has_range = false;
        for (const auto& d : inst.graph.nodes)
            if (std::holds_alternative<ScaledRange>(d)) has_range = true;
        REQUIRE(has_range);
        for (std::size_t e = 0; e < inst.graph.edges.size(); ++e)
            REQUIRE(semantic_verify_edge(inst.graph, e).pass);
    }

    SECTION("small i gives the whole of N") {
        REQUIRE(checked(fibonacci_triplet(1, 4)).frobenius == -1);
        REQUIRE(checked(fibonacci_triplet(2, 3)).frobenius == -1);
    }

    SECTION("sweep against the oracle") {
        for (unsigned long i = 3; i <= 6; ++i)
            for (unsigned long k = 3; k <= 6; ++k) checked(fibonacci_triplet(i, k));
    }

    SECTION("rejected parameters") {
        REQUIRE_THROWS_AS(fibonacci_triplet(0, 4), precondition_error);
        REQUIRE_THROWS_AS(fibonacci_triplet(3, 2), precondition_error);
    }
}

TEST_CASE("telescopic sequences build symmetric semigroups") {
    FamilyInstance inst = telescopic(nats({4, 6, 9}));
    AnalysisReport rep = checked(inst);
    REQUIRE(rep.frobenius == 11);
    REQUIRE(rep.asymmetry == 0);
    REQUIRE(rep.classification == Symmetry::symmetric);

    for (auto seq : {nats({2, 3}), nats({8, 12, 18, 27}), nats({9, 12, 70})}) {
        FamilyInstance t = telescopic(seq);
        REQUIRE(checked(t).asymmetry == 0);
    }

    REQUIRE(checked(telescopic(nats({1}))).frobenius == -1);

    SECTION("rejected sequences") {
        REQUIRE_THROWS_WITH(telescopic(nats({3, 5, 7})),
                            Catch::Matchers::ContainsSubstring("telescopic"));
        REQUIRE_THROWS_WITH(telescopic(nats({4, 6, 9, 9})),
                            Catch::Matchers::ContainsSubstring("repeats"));
        REQUIRE_THROWS_AS(telescopic(nats({4, 6})), precondition_error);
        REQUIRE_THROWS_AS(telescopic({}), precondition_error);
    }
}

TEST_CASE("triangular chains") {
    FamilyInstance inst = triangular(3);
    REQUIRE(inst.generators == gs({6, 10, 15}));
    REQUIRE(checked(inst).frobenius == 29);

    FamilyInstance small = triangular(2);
    REQUIRE(small.generators == gs({3, 6, 10}));
    REQUIRE(checked(small).frobenius == 17);
    REQUIRE(naive::minimal_generators(small.generators) == nats({3, 10}));

    for (unsigned long n = 1; n <= 8; ++n) checked(triangular(n));

    REQUIRE_THROWS_AS(triangular(0), precondition_error);
}

TEST_CASE("tetrahedral chains for n divisible by 6") {
    FamilyInstance inst = tetrahedral_mod6(6);
    REQUIRE(inst.generators == gs({56, 84, 120, 165}));
    // gcd drops 2m, 6m+1, 3m+1 with m = 1
    REQUIRE(edge_weights(inst.graph) == std::vector<std::size_t>{2, 7, 4});
    AnalysisReport rep = checked(inst);
    REQUIRE(rep.asymmetry == 0); // the chain is telescopic, hence symmetric

    FamilyInstance big = tetrahedral_mod6(12);
    REQUIRE(edge_weights(big.graph) == std::vector<std::size_t>{4, 13, 7});
    checked(big);

    REQUIRE_THROWS_AS(tetrahedral_mod6(7), precondition_error);
    REQUIRE_THROWS_AS(tetrahedral_mod6(0), precondition_error);
}

TEST_CASE("extended triangular runs") {
    FamilyInstance inst = extended_triangular(2, 3);
    REQUIRE(inst.generators == gs({3, 6, 10}));
    REQUIRE(inst.closed_form_frobenius == Int(17));
    checked(inst);

    REQUIRE(checked(extended_triangular(4, 4)).frobenius == 89);
    REQUIRE(checked(extended_triangular(5, 6)).frobenius == 74);
    REQUIRE(checked(extended_triangular(1, 3)).frobenius == -1);

    SECTION("explicit run lengths override the defaults") {
        FamilyInstance wide = extended_triangular(3, 0, 2, 2);
        REQUIRE(wide.generators == gs({6, 10, 14, 15, 20}));
        REQUIRE(wide.closed_form_frobenius == Int(23));
        checked(wide);
    }

    SECTION("sweep both parities") {
        for (unsigned long n = 1; n <= 10; ++n)
            for (unsigned long k = 3; k <= 6; ++k) checked(extended_triangular(n, k));
    }

    SECTION("colliding default runs shorten the second edge, keeping the span") {
        FamilyInstance tiny = extended_triangular(1, 8);
        REQUIRE(checked(tiny).frobenius == -1);
        REQUIRE(tiny.generators ==
                gs({1, 3, 5, 7, 9, 6, 12})); // full runs, duplicates merged
        REQUIRE(checked(extended_triangular(2, 10)).frobenius == 11);
        REQUIRE(checked(extended_triangular(3, 14)).frobenius == 23);
        for (unsigned long k = 7; k <= 12; ++k) checked(extended_triangular(1, k));
    }

    SECTION("rejected parameters") {
        REQUIRE_THROWS_AS(extended_triangular(0, 3), precondition_error);
        REQUIRE_THROWS_AS(extended_triangular(4, 2), precondition_error);
        REQUIRE_THROWS_WITH(extended_triangular(1, 3, 4, 2),
                            Catch::Matchers::ContainsSubstring("overlap"));
    }
}

TEST_CASE("arithmetic-geometric sums") {
    SECTION("variant 1") {
        FamilyInstance inst = arith_geo_sums(2, 1, 1, 2, 1);
        REQUIRE(inst.generators == gs({4, 5, 6}));
        REQUIRE(inst.closed_form_frobenius == Int(7));
        checked(inst);

        FamilyInstance run = arith_geo_sums(3, 2, 2, 2, 1);
        REQUIRE(run.generators == gs({9, 13, 15}));
        checked(run);

        // the power-of-two shifts n, n+1, n+2, n+4 in disguise
        FamilyInstance shifts = arith_geo_sums(2, 1, 1, 3, 1);
        REQUIRE(shifts.generators == gs({8, 9, 10, 12}));
        REQUIRE(shifts.closed_form_frobenius == Int(23));
        checked(shifts);

        checked(arith_geo_sums(5, 4, 2, 3, 1));
        checked(arith_geo_sums(4, 3, 1, 4, 1));
    }

    SECTION("variant 2 partial sums") {
        FamilyInstance inst = arith_geo_sums(3, 2, 1, 2, 2);
        REQUIRE(inst.generators == gs({9, 12, 15, 19}));
        REQUIRE(inst.closed_form_frobenius == Int(44));
        checked(inst);

        checked(arith_geo_sums(2, 5, 5, 3, 2)); // variant 2 has no b <= a restriction
        checked(arith_geo_sums(3, 4, 2, 3, 2));
    }

    SECTION("degenerate a = b = 1") {
        REQUIRE(checked(arith_geo_sums(1, 1, 1, 3, 1)).frobenius == -1);
    }

    SECTION("rejected parameters") {
        REQUIRE_THROWS_AS(arith_geo_sums(2, 3, 3, 2, 1), precondition_error); // b > a
        REQUIRE_THROWS_AS(arith_geo_sums(3, 4, 3, 2, 1), precondition_error); // d does not divide b
        REQUIRE_THROWS_AS(arith_geo_sums(4, 6, 2, 2, 2), precondition_error); // gcd(a, b) = 2
        REQUIRE_THROWS_AS(arith_geo_sums(3, 2, 2, 2, 3), precondition_error); // no such variant
    }
}

TEST_CASE("shifted powers of two") {
    FamilyInstance inst = shifted_powers_of_two(8, 2);
    REQUIRE(inst.generators == gs({8, 9, 10, 12}));
    REQUIRE(inst.closed_form_frobenius == Int(23));
    checked(inst);

    SECTION("k = 0 is the two-generator case") {
        FamilyInstance s = shifted_powers_of_two(8, 0);
        REQUIRE(s.closed_form_frobenius == Int(8 * 9 - 8 - 9));
        checked(s);
    }

    SECTION("the last admissible k switches to the arithmetic tail") {
        REQUIRE(checked(shifted_powers_of_two(8, 3)).frobenius == 23);
        REQUIRE(checked(shifted_powers_of_two(8, 4)).frobenius == 23);
        REQUIRE(checked(shifted_powers_of_two(12, 3)).frobenius == 35);
        REQUIRE(checked(shifted_powers_of_two(5, 1)).frobenius == 9);
    }

    SECTION("sweep") {
        for (long n : {2L, 6L, 16L, 24L, 48L}) {
            unsigned long top = valuation(Nat(n), 2) + 1;
            for (unsigned long k = 0; k <= top; ++k) checked(shifted_powers_of_two(n, k));
        }
    }

    REQUIRE_THROWS_AS(shifted_powers_of_two(8, 5), precondition_error);
    REQUIRE_THROWS_AS(shifted_powers_of_two(0, 0), precondition_error);
}

TEST_CASE("divisor function towers") {
    SECTION("sigma over 12") {
        FamilyInstance inst = divisor_function(12, 1);
        REQUIRE(inst.closed_form_frobenius == Int(493));
        AnalysisReport rep = checked(inst);
        REQUIRE(rep.root_generator == 28);
        // per-prime towers keep their weights through the merge
        std::vector<std::size_t> w = edge_weights(inst.graph);
        std::sort(w.begin(), w.end());
        REQUIRE(w == std::vector<std::size_t>{4, 7});
    }

    SECTION("prime powers need no merge") {
        FamilyInstance inst = divisor_function(4, 1);
        REQUIRE(inst.generators.values().front() == 7);
        checked(inst);
        checked(divisor_function(9, 2));
        checked(divisor_function(8, 1));
    }

    SECTION("truncation of the repunit tower") {
        std::vector<RepunitPart> parts = repunit_parts(12, 1);
        REQUIRE(parts.size() == 2);
        REQUIRE(parts[0].modulus == 7);  // sigma(4)
        REQUIRE(parts[0].tail == nats({15, 31}));
        REQUIRE(parts[1].modulus == 4);  // sigma(3)
        REQUIRE(parts[1].tail == nats({13}));
    }

    SECTION("the largest class minimum matches the closed repunit form") {
        // For one prime tower over p^e the largest Apery element with
        // respect to sigma_t(p^e) is (b^{2(e+1)} - 1)/(b - 1) - 1, b = p^t.
        for (auto [n, t] : std::vector<std::pair<long, unsigned long>>{
                 {2, 1}, {4, 1}, {8, 1}, {3, 1}, {9, 2}, {25, 1}}) {
            std::vector<RepunitPart> parts = repunit_parts(n, t);
            REQUIRE(parts.size() == 1);
            const RepunitPart& part = parts.front();
            std::vector<Nat> all = {part.modulus};
            all.insert(all.end(), part.tail.begin(), part.tail.end());
            std::vector<Nat> ap = apery_oracle(GeneratorSet(all), part.modulus);
            Nat top = *std::max_element(ap.begin(), ap.end());
            Nat b = pow_nat(part.prime, t);
            REQUIRE(top == (pow_nat(b, 2 * (part.exponent + 1)) - 1) / (b - 1) - 1);
        }
    }

    SECTION("degenerate and rejected input") {
        REQUIRE(checked(divisor_function(1, 1)).frobenius == -1);
        checked(divisor_function(12, 2)); // sigma_2(4) = 21 and sigma_2(3) = 10 are coprime
        // ... but sigma_2(4) = 21 and sigma_2(9) = 91 share the factor 7
        REQUIRE_THROWS_WITH(divisor_function(36, 2),
                            Catch::Matchers::ContainsSubstring("factor 7"));
        REQUIRE_THROWS_AS(divisor_function(12, 0), precondition_error);
        REQUIRE_THROWS_AS(divisor_function(0, 1), precondition_error);
    }
}

TEST_CASE("almost divisible members") {
    SECTION("at most n") {
        FamilyInstance inst = almost_divisible(12, Divisibility::at_most);
        REQUIRE(inst.closed_form_frobenius == Int(5));
        REQUIRE(inst.generators == gs({3, 4, 12}));
        checked(inst);

        REQUIRE(checked(almost_divisible(8, Divisibility::at_most)).frobenius == -1);
        checked(almost_divisible(360, Divisibility::at_most));
    }

    SECTION("at least n") {
        FamilyInstance inst = almost_divisible(12, Divisibility::at_least);
        REQUIRE(inst.closed_form_frobenius == Int(29));
        REQUIRE(inst.generators == gs({12, 15, 16, 18, 20, 21, 24}));
        checked(inst);

        REQUIRE(checked(almost_divisible(9, Divisibility::at_least)).frobenius == 8);
        checked(almost_divisible(60, Divisibility::at_least));
    }

    SECTION("n = 1 and prime powers") {
        REQUIRE(checked(almost_divisible(1, Divisibility::at_most)).frobenius == -1);
        REQUIRE(checked(almost_divisible(1, Divisibility::at_least)).frobenius == -1);
        REQUIRE(checked(almost_divisible(49, Divisibility::at_least)).frobenius == 48);
    }

    REQUIRE_THROWS_AS(almost_divisible(0, Divisibility::at_most), precondition_error);
}

TEST_CASE("scaled generator reductions") {
    SECTION("the <6, 10, 15> pair under d = 2") {
        BrauerShockleyPair pair = brauer_shockley(nats({6, 10, 15}), 2);
        REQUIRE(pair.high == 15);

        AnalysisReport scaled = checked(pair.scaled);
        AnalysisReport reduced = checked(pair.reduced);
        REQUIRE(scaled.root_generator == 30);
        REQUIRE(reduced.frobenius == 7); // S' = <3, 5, 15>
        REQUIRE(scaled.frobenius == 29);

        // the three recursion identities
        REQUIRE(scaled.frobenius == 2 * reduced.frobenius + Int(pair.high) * (2 - 1));
        REQUIRE(Int(scaled.genus) ==
                2 * Int(reduced.genus) + (Int(pair.high) - 1) * (2 - 1) / 2);
        auto big = naive::facts(pair.scaled.generators);
        auto small = naive::facts(pair.reduced.generators);
        Nat bound = Nat(2 * scaled.frobenius + 20);
        auto member = [](const naive::Facts& f, const Int& x) {
            if (x < 0) return false;
            if (x >= Int(f.members.size())) return true;
            return bool(f.members[static_cast<std::size_t>(x)]);
        };
        for (Int x = 0; x <= Int(bound); ++x) {
            bool lhs = member(big, x);
            bool rhs = false;
            for (Int j = 0; j < 2; ++j) {
                Int y = x - j * Int(pair.high);
                if (y >= 0 && y % 2 == 0 && member(small, y / 2)) rhs = true;
            }
            REQUIRE(lhs == rhs);
        }
    }

    SECTION("the same semigroup reduces along d = 5 as well") {
        BrauerShockleyPair pair = brauer_shockley(nats({6, 10, 15}), 5);
        REQUIRE(pair.high == 6);
        AnalysisReport scaled = checked(pair.scaled);
        AnalysisReport reduced = checked(pair.reduced);
        REQUIRE(scaled.frobenius == 29);
        REQUIRE(scaled.frobenius == 5 * reduced.frobenius + Int(6) * (5 - 1));
    }

    SECTION("d = 1 keeps the graph as it is") {
        BrauerShockleyPair pair = brauer_shockley(nats({4, 9, 11}), 1);
        REQUIRE(canonical_form(pair.scaled.graph) == canonical_form(pair.reduced.graph));
        checked(pair.scaled);
    }

    SECTION("another divided pair") {
        BrauerShockleyPair pair = brauer_shockley(nats({9, 21, 10}), 3);
        REQUIRE(pair.high == 10);
        AnalysisReport scaled = checked(pair.scaled);
        AnalysisReport reduced = checked(pair.reduced);
        REQUIRE(scaled.frobenius == 3 * reduced.frobenius + Int(10) * (3 - 1));
        REQUIRE(Int(scaled.genus) ==
                3 * Int(reduced.genus) + (Int(10) - 1) * (3 - 1) / 2);
    }

    SECTION("rejected input") {
        REQUIRE_THROWS_AS(brauer_shockley(nats({3, 5, 7}), 2), precondition_error);
        REQUIRE_THROWS_AS(brauer_shockley(nats({6, 10, 15}), 0), precondition_error);
        REQUIRE_THROWS_AS(brauer_shockley(nats({6, 10}), 2), precondition_error);
    }
}

TEST_CASE("family instances carry their construction parameters") {
    FamilyInstance inst = geometric(2, 3, 2);
    REQUIRE(inst.family == "geometric");
    REQUIRE(inst.params ==
            std::vector<std::pair<std::string, std::string>>{
                {"a", "2"}, {"b", "3"}, {"n", "2"}});

    FamilyInstance ad = almost_divisible(12, Divisibility::at_least);
    REQUIRE(ad.family == "almost-divisible");
    REQUIRE(ad.params ==
            std::vector<std::pair<std::string, std::string>>{{"n", "12"}, {"variant", "ge"}});

    FamilyInstance et = extended_triangular(4, 4);
    REQUIRE(et.params ==
            std::vector<std::pair<std::string, std::string>>{
                {"n", "4"}, {"k", "4"}, {"p", "2"}, {"q", "1"}});
}
