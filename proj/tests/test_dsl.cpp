#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <string>
#include <vector>

#include <semired/dsl.hpp>

#include "support/naive.hpp"

using namespace semired;
using dsl::Assembly;
using dsl::Script;
using dsl::Statement;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::MessageMatches;

namespace {

Assembly run(const std::string& text) { return dsl::assemble(dsl::parse(text)); }

// Root generator of the graph a one-edge script assembles; a convenient way
// to watch an expression evaluate.
Nat root_of(const std::string& text) {
    return Nat(run(text).graph.root_generator());
}

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

// Assembled scripts whose graph should describe exactly the semigroup of
// `gens` get the full sieve crosscheck.
void agrees_with(const Assembly& a, const GeneratorSet& gens) {
    REQUIRE(a.problems.empty());
    REQUIRE(validate(a.graph).ok());
    REQUIRE(balance(a.graph) == Rat(1));
    REQUIRE(span_equals(a.graph, gens));
    AnalysisReport rep = analyze(a.graph);
    naive::Facts facts =
        naive::facts(gens, static_cast<std::size_t>(rep.root_generator));
    REQUIRE(rep.frobenius == facts.frobenius);
    REQUIRE(rep.genus == facts.genus);
    std::vector<Nat> ap = facts.apery;
    std::sort(ap.begin(), ap.end());
    REQUIRE(rep.apery == ap);
}

int line_of(const std::string& text) {
    try {
        dsl::assemble(dsl::parse(text));
    } catch (const parse_error& e) {
        return e.line;
    }
    return -1;
}

int column_of(const std::string& text) {
    try {
        dsl::assemble(dsl::parse(text));
    } catch (const parse_error& e) {
        return e.column;
    }
    return -1;
}

} // namespace

TEST_CASE("expressions evaluate with the usual precedence", "[dsl]") {
    SECTION("product binds tighter than sum") {
        CHECK(root_of("let z = 2+3*4; Binary(z, 15);") == 14);
        CHECK(root_of("let z = (2+3)*4; Binary(z, 15);") == 20);
    }
    SECTION("power is right associative and binds tightest") {
        CHECK(root_of("let x = 2^3^2; Binary(x, x+1);") == 512);
        CHECK(root_of("let x = (2^3)^2; Binary(x, x+1);") == 64);
        CHECK(root_of("let y = 7-2^2; Binary(y+2, 7);") == 5);
        CHECK(root_of("let y = 3*2^2; Binary(y, 7);") == 12);
    }
    SECTION("unary minus") {
        CHECK(root_of("let w = -(2-5); Binary(w+2, 7);") == 5);
        CHECK(root_of("let w = -2+5; Binary(w*2, 9);") == 6);
        CHECK(root_of("let w = -2*-3; Binary(w, 35);") == 6);
    }
    SECTION("gcd") {
        CHECK(root_of("let g = gcd(12, 18); Binary(g, 7);") == 6);
        CHECK(root_of("let g = gcd(5-12, 21); Binary(g, 5);") == 7);
        CHECK(root_of("let g = gcd(0, 9); Binary(g, 5);") == 9);
    }
    SECTION("bindings chain in order") {
        CHECK(root_of("let a = 3; let b = a+1; let c = a*b; Binary(c, 25);") == 12);
    }
    SECTION("the typeset minus sign works like the ascii one") {
        CHECK(root_of("let a = 7 \xe2\x88\x92 2; Binary(a, 7);") == 5);
    }
    SECTION("colon terminators and comments") {
        CHECK(root_of("# leading note\nBinary(5, 7): # trailing note\n") == 5);
    }
}

TEST_CASE("a three-edge script assembles to the expected semigroup", "[dsl]") {
    const std::string text =
        "let a = 2; let b = 3; let c = 5;\n"
        "Binary(a*b, b*c);\n"
        "Arithmetic(a*b, a*c-a*b, 2);\n"
        "Linear([a*b, b*c, c*a], a*b + b*c + c*a);\n"
        "generators(6, 15, 10, 14, 31);\n";
    Assembly a = run(text);
    CHECK(a.problems.empty());
    CHECK(a.graph.root_generator() == 6);
    CHECK(a.implied_root == 6);
    REQUIRE(a.declared_generators.has_value());
    agrees_with(a, gs({6, 15, 10, 14, 31}));

    AnalysisReport rep = analyze(a.graph);
    CHECK(rep.frobenius == 23);
    CHECK(rep.genus == 13);
    CHECK(rep.apery == nats({0, 10, 14, 15, 25, 29}));
}

TEST_CASE("single statement scripts", "[dsl]") {
    SECTION("binary") {
        Assembly a = run("Binary(5, 7);");
        agrees_with(a, gs({5, 7}));
        CHECK(analyze(a.graph).frobenius == 23);
        CHECK(a.implied_root == 5);
    }
    SECTION("bounded arithmetic, h defaulting to 1") {
        Assembly a = run("Arithmetic(4, 1, 2);");
        agrees_with(a, gs({4, 5, 6}));
        CHECK(analyze(a.graph).frobenius == 7);
    }
    SECTION("bounded arithmetic with h") {
        Assembly a = run("Arithmetic(6, -2, 2, 2);");
        REQUIRE(a.problems.empty());
        CHECK(a.graph.edges.at(0).remainder == nats({0, 8, 10}));
        CHECK(a.graph.root_generator() == 6);
    }
    SECTION("unbounded arithmetic") {
        Assembly a = run("Arithmetic(4, 1, infinity);");
        agrees_with(a, gs({4, 5, 6, 7}));
        CHECK(analyze(a.graph).frobenius == 3);
        bool has_family = false;
        for (const auto& n : a.graph.nodes)
            if (std::holds_alternative<ArithmeticFamily>(n)) has_family = true;
        CHECK(has_family);
    }
    SECTION("linear binary chain matches the telescopic construction") {
        Assembly a = run("LinearBinary([4], 6); LinearBinary([4, 6], 9);");
        REQUIRE(a.problems.empty());
        CHECK(canonical_form(a.graph) == canonical_form(telescopic(nats({4, 6, 9})).graph));
        agrees_with(a, gs({4, 6, 9}));

        Assembly b = run("Binary(4, 6); LinearBinary([4, 6], 9);");
        CHECK(canonical_form(b.graph) == canonical_form(a.graph));
    }
    SECTION("residue with the default input") {
        Assembly a = run("Residue(4, 7, [0, 1, 0, 1]);");
        agrees_with(a, gs({4, 11, 14, 25}));
        CHECK(analyze(a.graph).frobenius == 21);
    }
    SECTION("residue tables may dip negative while the remainders stay whole") {
        Assembly a = run("Residue(4, 5, [0, 0, 0, -2]);");
        agrees_with(a, gs({4, 5, 7}));
        CHECK(a.graph.edges.at(0).remainder == nats({0, 5, 7, 10}));
    }
    SECTION("residue with an explicit input list") {
        Assembly a = run("Residue(4, 7, [0, 1, 0, 1], [7]);");
        agrees_with(a, gs({4, 11, 14, 25}));
        CHECK(canonical_form(a.graph) ==
              canonical_form(run("Residue(4, 7, [0, 1, 0, 1]);").graph));
    }
    SECTION("apery") {
        Assembly a = run("Apery(4, [5, 6]);");
        agrees_with(a, gs({4, 5, 6}));
        CHECK(a.graph.edges.at(0).remainder == nats({0, 5, 6, 11}));
    }
    SECTION("explicit with plain nodes") {
        Assembly a = run("Explicit([5, 7], [4], [0, 5, 6, 11]);");
        REQUIRE(a.problems.empty());
        agrees_with(a, gs({4, 5, 6}));
    }
    SECTION("explicit with a family node replicates unbounded arithmetic") {
        Assembly a = run("Explicit([fam(4, 1)], [4], [0, 5, 6, 7]);");
        agrees_with(a, gs({4, 5, 6, 7}));
        CHECK(canonical_form(a.graph) ==
              canonical_form(run("Arithmetic(4, 1, infinity);").graph));
    }
    SECTION("explicit with a range node") {
        Assembly a = run("Explicit([range(5, 3)], [3], [0, 1, 2]);");
        REQUIRE(a.problems.empty());
        AnalysisReport rep = analyze(a.graph);
        CHECK(rep.frobenius == -1);
        CHECK(rep.genus == 0);
    }
}

TEST_CASE("directives record intent and flag mismatches", "[dsl]") {
    const std::string base =
        "Binary(6, 15); Arithmetic(6, 4, 2); Linear([6, 15, 10], 31);";
    SECTION("matching root and generators pass silently") {
        Assembly a = run(base + " expect_root(6); generators(6, 15, 10, 14, 31);");
        CHECK(a.problems.empty());
        REQUIRE(a.expected_root.has_value());
        CHECK(*a.expected_root == 6);
    }
    SECTION("a wrong root is reported") {
        Assembly a = run(base + " expect_root(9);");
        REQUIRE(a.problems.size() == 1);
        CHECK_THAT(a.problems.front(), ContainsSubstring("expected root <9>"));
        CHECK_THAT(a.problems.front(), ContainsSubstring("<6>"));
    }
    SECTION("generators that span a different semigroup are reported") {
        Assembly a = run(base + " generators(6, 15);");
        REQUIRE(a.problems.size() == 1);
        CHECK_THAT(a.problems.front(), ContainsSubstring("declared generators"));
    }
    SECTION("repeated directives are rejected outright") {
        CHECK_THROWS_MATCHES(run(base + " expect_root(6); expect_root(6);"),
                             parse_error, MessageMatches(ContainsSubstring("already declared")));
        CHECK_THROWS_MATCHES(run(base + " generators(6); generators(6);"), parse_error,
                             MessageMatches(ContainsSubstring("already declared")));
    }
}

TEST_CASE("structural problems surface without aborting assembly", "[dsl]") {
    SECTION("cycles are reported") {
        Assembly a = run("Binary(4, 6); Binary(6, 4); Binary(9, 3);");
        REQUIRE_FALSE(a.problems.empty());
        bool cycle = false;
        for (const std::string& p : a.problems)
            if (p.find("cycle") != std::string::npos) cycle = true;
        CHECK(cycle);
    }
    SECTION("a reused input is reported") {
        Assembly a = run("Binary(4, 6); Binary(10, 6); Binary(4, 10);");
        REQUIRE_FALSE(a.problems.empty());
        CHECK_THAT(a.problems.front(), ContainsSubstring("outdegree"));
    }
    SECTION("an unbalanced but well formed script assembles silently") {
        Assembly a = run("Binary(4, 6);");
        CHECK(a.problems.empty());
        CHECK(a.implied_root == 2);
        CHECK(a.graph.root_generator() == 4);
        CHECK(balance(a.graph) == Rat(2));
    }
}

TEST_CASE("scripts that cannot become graphs throw", "[dsl]") {
    SECTION("no edges at all") {
        CHECK_THROWS_MATCHES(run(""), precondition_error,
                             MessageMatches(ContainsSubstring("no edge statements")));
        CHECK_THROWS_MATCHES(run("let a = 4;"), precondition_error,
                             MessageMatches(ContainsSubstring("no edge statements")));
        CHECK_THROWS_MATCHES(run("generators(4, 7);"), precondition_error,
                             MessageMatches(ContainsSubstring("no edge statements")));
    }
    SECTION("two root candidates") {
        CHECK_THROWS_MATCHES(run("Binary(4, 6); Binary(9, 15);"), precondition_error,
                             MessageMatches(ContainsSubstring("several root candidates")));
    }
    SECTION("edge preconditions carry the statement line") {
        CHECK_THROWS_MATCHES(run("Binary(5, 7);\nResidue(4, 7, [0, 1, 0]);"),
                             precondition_error, MessageMatches(ContainsSubstring("line 2:")));
        CHECK_THROWS_MATCHES(run("Residue(4, 7, [0, -2, 0, 1]);"), precondition_error,
                             MessageMatches(ContainsSubstring("line 1:")));
        CHECK_THROWS_MATCHES(run("Linear([6, 15], 7);"), precondition_error,
                             MessageMatches(ContainsSubstring("line 1:")));
    }
}

TEST_CASE("parse errors pin line and column", "[dsl]") {
    SECTION("missing comma") {
        const std::string text = "Binary(4 6);";
        CHECK_THROWS_MATCHES(dsl::parse(text), parse_error,
                             MessageMatches(ContainsSubstring("expected ','")));
        CHECK(line_of(text) == 1);
        CHECK(column_of(text) == 10);
    }
    SECTION("unbound names fail at parse time") {
        CHECK_THROWS_MATCHES(dsl::parse("Binary(n, 5);"), parse_error,
                             MessageMatches(ContainsSubstring("unbound name 'n'")));
        CHECK(column_of("Binary(n, 5);") == 8);
        CHECK(line_of("let a = 2;\nBinary(a, b);") == 2);
    }
    SECTION("rebinding a name") {
        CHECK_THROWS_MATCHES(dsl::parse("let a = 3; let a = 4;"), parse_error,
                             MessageMatches(ContainsSubstring("already bound")));
        CHECK(column_of("let a = 3; let a = 4;") == 16);
    }
    SECTION("reserved words cannot be bound") {
        CHECK_THROWS_MATCHES(dsl::parse("let gcd = 5;"), parse_error,
                             MessageMatches(ContainsSubstring("reserved")));
        CHECK_THROWS_MATCHES(dsl::parse("let infinity = 3;"), parse_error,
                             MessageMatches(ContainsSubstring("reserved")));
    }
    SECTION("stray characters") {
        CHECK_THROWS_MATCHES(dsl::parse("Binary(4, 5); @"), parse_error,
                             MessageMatches(ContainsSubstring("unexpected character '@'")));
        CHECK(column_of("Binary(4, 5); @") == 15);
    }
    SECTION("missing terminator") {
        CHECK_THROWS_MATCHES(dsl::parse("Binary(4, 5)"), parse_error,
                             MessageMatches(ContainsSubstring("expected ';'")));
    }
    SECTION("negative values where a count is needed") {
        CHECK_THROWS_MATCHES(run("Binary(3-7, 5);"), parse_error,
                             MessageMatches(ContainsSubstring("nonnegative")));
        CHECK_THROWS_MATCHES(run("Arithmetic(4, 1, 2-9);"), parse_error,
                             MessageMatches(ContainsSubstring("nonnegative")));
    }
    SECTION("negative exponents") {
        CHECK_THROWS_MATCHES(run("let x = 2^(1-3); Binary(x, 5);"), parse_error,
                             MessageMatches(ContainsSubstring("negative exponent")));
    }
    SECTION("statement typos") {
        CHECK_THROWS_MATCHES(dsl::parse("Binry(4, 5);"), parse_error,
                             MessageMatches(ContainsSubstring("expected a statement")));
    }
}

TEST_CASE("print and parse round trip", "[dsl]") {
    auto stable = [](const std::string& text) {
        Script s = dsl::parse(text);
        std::string printed = dsl::print(s);
        Script again = dsl::parse(printed);
        CHECK(again == s);
        CHECK(dsl::print(again) == printed);
    };
    SECTION("every statement kind") {
        stable("let a = 2; let b = 3; let c = 5;\n"
               "Binary(a*b, b*c);\n"
               "Arithmetic(a*b, a*c-a*b, 2);\n"
               "Linear([a*b, b*c, c*a], a*b + b*c + c*a);\n"
               "generators(6, 15, 10, 14, 31);\n"
               "expect_root(6);\n");
        stable("Arithmetic(4, 1, infinity);");
        stable("Arithmetic(6, -2, 2, 2);");
        stable("LinearBinary([4, 6], 9);");
        stable("Residue(4, 7, [0, 1, 0, 1]);");
        stable("Residue(4, 7, [0, 1, 0, 1], [7, sg(9, 11)]);");
        stable("Apery(4, [5, 6]);");
        stable("Explicit([range(5, 3), set(0, 2, 7), fam(4, -1, 3, 2)], [sg(3, 5)], "
               "[0, 1, 2]);");
    }
    SECTION("expression shapes survive") {
        stable("let x = 2^3^2; let y = (2^3)^2; Binary(x, y-63);");
        stable("let x = -(2-5); let y = 1-(2-5); Binary(x+2, y+1);");
        stable("let g = gcd(12, -18); Binary(g, 7);");
        stable("let p = 2*(3+4); let q = 2*3+4; Binary(p, q-9);");
        stable("let n = -2*-3; Binary(n, 35);");
    }
    SECTION("comments and colons normalize away") {
        Script s = dsl::parse("# note\nBinary(5, 7): # more\n");
        CHECK(dsl::print(s) == "Binary(5, 7);\n");
        CHECK(dsl::parse(dsl::print(s)) == s);
    }
    SECTION("the printed form of a parsed script assembles identically") {
        const std::string text = "Binary(6, 15); Arithmetic(6, 4, 2);"
                                 " Linear([6, 15, 10], 31);";
        Assembly a = run(text);
        Assembly b = run(dsl::print(dsl::parse(text)));
        CHECK(canonical_form(a.graph) == canonical_form(b.graph));
    }
}

TEST_CASE("scripts generated from graphs reproduce them", "[dsl]") {
    auto reproduces = [](const FamilyInstance& inst) {
        CAPTURE(inst.family, inst.params);
        Script s = dsl::script_for(inst);
        Assembly a = dsl::assemble(s);
        CHECK(a.problems.empty());
        CHECK(canonical_form(a.graph) == canonical_form(inst.graph));
        CHECK(dsl::parse(dsl::print(s)) == s);
        REQUIRE(a.declared_generators.has_value());
        CHECK(*a.declared_generators == inst.generators);
        REQUIRE(a.expected_root.has_value());
        CHECK(*a.expected_root == inst.graph.root_generator());
    };

    reproduces(geometric(2, 3, 2));
    reproduces(geometric(3, 5, 2));
    reproduces(compound(nats({2, 3}), nats({5, 7})));
    reproduces(composed_geometric(2, 3, 5, 7, 2, 2));
    reproduces(special_triplet(4, 9, 6));
    reproduces(special_triplet(6, 10, 15));
    reproduces(fibonacci_triplet(6, 3));
    reproduces(fibonacci_triplet(4, 5));
    reproduces(telescopic(nats({4, 6, 9})));
    reproduces(telescopic(nats({8, 12, 18, 27})));
    reproduces(triangular(3));
    reproduces(tetrahedral_mod6(6));
    reproduces(extended_triangular(4, 4));
    reproduces(extended_triangular(3, 0, 2, 2));
    reproduces(arith_geo_sums(3, 2, 2, 2, 1));
    reproduces(arith_geo_sums(3, 2, 1, 2, 2));
    reproduces(shifted_powers_of_two(8, 2));
    reproduces(shifted_powers_of_two(8, 4));
    reproduces(divisor_function(12, 1));
    reproduces(divisor_function(4, 1));
    reproduces(almost_divisible(12, Divisibility::at_most));
    reproduces(almost_divisible(12, Divisibility::at_least));

    BrauerShockleyPair pair = brauer_shockley(nats({6, 10, 15}), 2);
    reproduces(pair.scaled);
    reproduces(pair.reduced);
}

TEST_CASE("generated scripts prefer the constructor statements", "[dsl]") {
    auto first_kind = [](const ReductionGraph& g) {
        return dsl::script_for(g).statements.at(0).kind;
    };
    SECTION("binary edges print as Binary") {
        GraphBuilder b;
        b.add_edge(binary_edge(Nat(5), Nat(7)));
        CHECK(first_kind(b.finish()) == Statement::Kind::binary);
    }
    SECTION("modified arithmetic parameters are recovered") {
        GraphBuilder b;
        b.add_edge(modified_arithmetic_edge(Nat(6), Int(-2), Nat(2), Nat(2)));
        ReductionGraph g = b.finish();
        Script s = dsl::script_for(g);
        const Statement& st = s.statements.at(0);
        REQUIRE(st.kind == Statement::Kind::arithmetic);
        REQUIRE(st.count.has_value());
        REQUIRE(st.offset.has_value());
        CHECK(dsl::print(st) == "Arithmetic(6, -2, 2, 2);");
        Assembly a = dsl::assemble(s);
        CHECK(canonical_form(a.graph) == canonical_form(g));
    }
    SECTION("one-step arithmetic collapses to Binary") {
        GraphBuilder b;
        b.add_edge(modified_arithmetic_edge(Nat(5), Int(3), Nat(1), Nat(2)));
        ReductionGraph g = b.finish();
        Script s = dsl::script_for(g);
        CHECK(s.statements.at(0).kind == Statement::Kind::binary);
        CHECK(dsl::print(s.statements.at(0)) == "Binary(5, 13);");
        CHECK(canonical_form(dsl::assemble(s).graph) == canonical_form(g));
    }
    SECTION("unbounded arithmetic keeps its statement") {
        GraphBuilder b;
        b.add_edge(infinite_arithmetic_edge(Nat(4), Int(1), Nat(1)));
        ReductionGraph g = b.finish();
        Script s = dsl::script_for(g);
        CHECK(dsl::print(s.statements.at(0)) == "Arithmetic(4, 1, infinity);");
    }
    SECTION("apery edges survive when the generators admit one") {
        GraphBuilder b;
        b.add_edge(apery_edge(Nat(4), nats({5, 6})));
        ReductionGraph g = b.finish();
        CHECK(first_kind(g) == Statement::Kind::apery);
    }
    SECTION("scaled apery edges fall back to Explicit") {
        FamilyInstance inst = divisor_function(12, 1);
        Script s = dsl::script_for(inst.graph);
        bool any_explicit = false;
        for (const Statement& st : s.statements)
            if (st.kind == Statement::Kind::explicit_edge) any_explicit = true;
        CHECK(any_explicit);
        CHECK(canonical_form(dsl::assemble(s).graph) == canonical_form(inst.graph));
    }
}
