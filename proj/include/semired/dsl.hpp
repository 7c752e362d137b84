#pragma once

// Text format for reduction graphs (.rg files).
//
//   let <name> = <expr>;           integer bindings, usable downstream
//   Binary(a, b);                  one statement per edge
//   Arithmetic(a, d, k [, h]);     k may be the word `infinity`
//   Linear([o1, ...], b);
//   LinearBinary([o1, ...], b);
//   Residue(a, b, [t0, ..., t_{a-1}] [, [inputs]]);
//   Apery(a, [g1, ...]);
//   Explicit([inputs], [outputs], [remainder]);
//   generators(e1, ...);           declares the intended span
//   expect_root(e);                pins the inferred root
//
// Expressions use +, -, *, ^ (right associative), gcd(x, y) and parentheses;
// values are exact integers of any size. Statements end with `;` or `:`,
// comments run from `#` to the end of the line. Inside the bracketed lists
// of Explicit and Residue a node may also be written as range(step, count),
// sg(g1, ...), set(e1, ...) or fam(base, diff [, h [, count]]) for the
// non-monogenic node kinds; a bare expression means the monogenic node.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "edges.hpp"
#include "errors.hpp"
#include "families.hpp"
#include "graph.hpp"
#include "numbers.hpp"
#include "numcore.hpp"

namespace semired {
namespace dsl {

// ------------------------------------------------------------- expressions

struct Expr {
    enum class Kind { number, name, add, sub, mul, pow, neg, gcd_call };
    Kind kind = Kind::number;
    Int value{0};           // number
    std::string id;         // name
    std::vector<Expr> kids; // operands
    int line = 0, column = 0;

    bool operator==(const Expr& other) const {
        return kind == other.kind && value == other.value && id == other.id &&
               kids == other.kids;
    }

    static Expr lit(const Int& v) {
        Expr e;
        if (v < 0) {
            e.kind = Kind::neg;
            e.kids.push_back(lit(-v));
        } else {
            e.value = v;
        }
        return e;
    }
};

// A node inside the bracketed lists of Explicit and Residue.
struct NodeForm {
    enum class Kind { single, range, span, finite, family };
    Kind kind = Kind::single;
    std::vector<Expr> args;

    bool operator==(const NodeForm& other) const {
        return kind == other.kind && args == other.args;
    }
};

struct Statement {
    enum class Kind {
        binary,
        arithmetic,
        linear,
        linear_binary,
        residue,
        apery,
        explicit_edge,
        generators,
        expect_root,
    };
    Kind kind = Kind::binary;
    std::vector<Expr> args;      // positional scalar arguments
    std::optional<Expr> count;   // arithmetic k; absent means infinity
    std::optional<Expr> offset;  // arithmetic h when written
    std::vector<Expr> items;     // the bracketed integer list
    std::vector<NodeForm> ins;   // node lists (Explicit; Residue when given)
    std::vector<NodeForm> outs;
    bool with_inputs = false; // Residue carries its own input list
    int line = 0, column = 0;

    bool operator==(const Statement& other) const {
        return kind == other.kind && args == other.args && count == other.count &&
               offset == other.offset && items == other.items && ins == other.ins &&
               outs == other.outs && with_inputs == other.with_inputs;
    }
};

struct Script {
    std::vector<std::pair<std::string, Expr>> bindings;
    std::vector<Statement> statements;

    bool operator==(const Script&) const = default;
};

// ------------------------------------------------------------------ lexing

namespace detail {

struct Token {
    enum class Type { ident, number, punct, end };
    Type type = Type::end;
    std::string text;
    Int value{0};
    int line = 1, column = 1;
};

inline bool ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
inline bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

inline std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    int line = 1, column = 1;
    std::size_t i = 0;
    auto step = [&](std::size_t n) {
        i += n;
        column += static_cast<int>(n);
    };
    while (i < src.size()) {
        char c = src[i];
        if (c == '\n') {
            ++i;
            ++line;
            column = 1;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            step(1);
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') ++i;
            continue;
        }
        Token t;
        t.line = line;
        t.column = column;
        if (c >= '0' && c <= '9') {
            std::size_t j = i;
            while (j < src.size() && src[j] >= '0' && src[j] <= '9') ++j;
            t.type = Token::Type::number;
            t.value = Int(src.substr(i, j - i));
            step(j - i);
            out.push_back(std::move(t));
            continue;
        }
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < src.size() && ident_char(src[j])) ++j;
            t.type = Token::Type::ident;
            t.text = src.substr(i, j - i);
            step(j - i);
            out.push_back(std::move(t));
            continue;
        }
        // the U+2212 minus sign, as it appears in typeset sources
        if (c == '\xe2' && i + 2 < src.size() && src[i + 1] == '\x88' &&
            src[i + 2] == '\x92') {
            t.type = Token::Type::punct;
            t.text = "-";
            i += 3;
            ++column;
            out.push_back(std::move(t));
            continue;
        }
        if (std::string("()[],;:=+-*^").find(c) != std::string::npos) {
            t.type = Token::Type::punct;
            t.text = std::string(1, c);
            step(1);
            out.push_back(std::move(t));
            continue;
        }
        std::string shown = (c >= 32 && c < 127) ? std::string(1, c) : "\\x" + [&] {
            static const char* hex = "0123456789abcdef";
            unsigned char u = static_cast<unsigned char>(c);
            return std::string{hex[u >> 4], hex[u & 15]};
        }();
        throw parse_error("unexpected character '" + shown + "'", line, column);
    }
    Token end;
    end.line = line;
    end.column = column;
    out.push_back(std::move(end));
    return out;
}

inline const char* const reserved_names[] = {
    "let",    "infinity",   "gcd",     "range",   "sg",
    "set",    "fam",        "Binary",  "Arithmetic", "Linear",
    "LinearBinary", "Residue", "Apery", "Explicit", "generators",
    "expect_root",
};

inline bool is_reserved(const std::string& name) {
    for (const char* r : reserved_names)
        if (name == r) return true;
    return false;
}

// ----------------------------------------------------------------- parsing

class Parser {
  public:
    explicit Parser(const std::string& text) : tokens_(lex(text)) {}

    Script run() {
        Script script;
        while (!at_end()) {
            if (at_ident("let")) {
                advance();
                script.bindings.push_back(binding());
            } else {
                script.statements.push_back(statement());
            }
        }
        return script;
    }

  private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::vector<std::string> bound_;

    const Token& peek() const { return tokens_[pos_]; }
    bool at_end() const { return peek().type == Token::Type::end; }
    bool at_punct(const char* p) const {
        return peek().type == Token::Type::punct && peek().text == p;
    }
    bool at_ident(const char* name) const {
        return peek().type == Token::Type::ident && peek().text == name;
    }
    Token advance() { return tokens_[pos_++]; }

    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        std::string got;
        switch (t.type) {
            case Token::Type::end: got = "end of input"; break;
            case Token::Type::number: got = "'" + t.value.str() + "'"; break;
            default: got = "'" + t.text + "'"; break;
        }
        throw parse_error(msg + ", got " + got, t.line, t.column);
    }

    Token expect_punct(const char* p) {
        if (!at_punct(p)) fail(std::string("expected '") + p + "'");
        return advance();
    }

    void terminator() {
        if (!at_punct(";") && !at_punct(":")) fail("expected ';'");
        advance();
    }

    std::pair<std::string, Expr> binding() {
        if (peek().type != Token::Type::ident) fail("expected a name after 'let'");
        Token name = advance();
        if (is_reserved(name.text))
            throw parse_error("'" + name.text + "' is a reserved word", name.line,
                              name.column);
        for (const auto& b : bound_)
            if (b == name.text)
                throw parse_error("name '" + name.text + "' is already bound", name.line,
                                  name.column);
        expect_punct("=");
        Expr value = expression();
        terminator();
        bound_.push_back(name.text);
        return {name.text, std::move(value)};
    }

    // expr := product { (+|-) product } ; product := factor { * factor }
    // factor := - factor | power ; power := atom [ ^ factor ]
    Expr expression() {
        Expr lhs = product();
        while (at_punct("+") || at_punct("-")) {
            Token op = advance();
            Expr node;
            node.kind = op.text == "+" ? Expr::Kind::add : Expr::Kind::sub;
            node.line = op.line;
            node.column = op.column;
            node.kids.push_back(std::move(lhs));
            node.kids.push_back(product());
            lhs = std::move(node);
        }
        return lhs;
    }

    Expr product() {
        Expr lhs = factor();
        while (at_punct("*")) {
            Token op = advance();
            Expr node;
            node.kind = Expr::Kind::mul;
            node.line = op.line;
            node.column = op.column;
            node.kids.push_back(std::move(lhs));
            node.kids.push_back(factor());
            lhs = std::move(node);
        }
        return lhs;
    }

    Expr factor() {
        if (at_punct("-")) {
            Token op = advance();
            Expr node;
            node.kind = Expr::Kind::neg;
            node.line = op.line;
            node.column = op.column;
            node.kids.push_back(factor());
            return node;
        }
        return power();
    }

    Expr power() {
        Expr base = atom();
        if (at_punct("^")) {
            Token op = advance();
            Expr node;
            node.kind = Expr::Kind::pow;
            node.line = op.line;
            node.column = op.column;
            node.kids.push_back(std::move(base));
            node.kids.push_back(factor());
            return node;
        }
        return base;
    }

    Expr atom() {
        const Token& t = peek();
        if (t.type == Token::Type::number) {
            Token tok = advance();
            Expr e;
            e.kind = Expr::Kind::number;
            e.value = tok.value;
            e.line = tok.line;
            e.column = tok.column;
            return e;
        }
        if (t.type == Token::Type::ident && t.text == "gcd") {
            Token tok = advance();
            expect_punct("(");
            Expr e;
            e.kind = Expr::Kind::gcd_call;
            e.line = tok.line;
            e.column = tok.column;
            e.kids.push_back(expression());
            expect_punct(",");
            e.kids.push_back(expression());
            expect_punct(")");
            return e;
        }
        if (t.type == Token::Type::ident) {
            if (is_reserved(t.text)) fail("expected a value");
            bool known = false;
            for (const auto& b : bound_)
                if (b == t.text) known = true;
            if (!known)
                throw parse_error("unbound name '" + t.text + "'", t.line, t.column);
            Token tok = advance();
            Expr e;
            e.kind = Expr::Kind::name;
            e.id = tok.text;
            e.line = tok.line;
            e.column = tok.column;
            return e;
        }
        if (at_punct("(")) {
            advance();
            Expr e = expression();
            expect_punct(")");
            return e;
        }
        fail("expected a value");
    }

    std::vector<Expr> bracketed_exprs() {
        expect_punct("[");
        std::vector<Expr> items;
        if (!at_punct("]")) {
            items.push_back(expression());
            while (at_punct(",")) {
                advance();
                items.push_back(expression());
            }
        }
        expect_punct("]");
        return items;
    }

    NodeForm node_form() {
        auto call_args = [&](std::size_t lo, std::size_t hi, const char* head) {
            expect_punct("(");
            std::vector<Expr> args;
            args.push_back(expression());
            while (at_punct(",")) {
                advance();
                args.push_back(expression());
            }
            expect_punct(")");
            if (args.size() < lo || args.size() > hi)
                fail(std::string(head) + " takes " + std::to_string(lo) +
                     (lo == hi ? "" : " to " + std::to_string(hi)) + " arguments");
            return args;
        };
        NodeForm f;
        if (at_ident("range")) {
            advance();
            f.kind = NodeForm::Kind::range;
            f.args = call_args(2, 2, "range");
        } else if (at_ident("sg")) {
            advance();
            f.kind = NodeForm::Kind::span;
            f.args = call_args(1, std::size_t(-1), "sg");
        } else if (at_ident("set")) {
            advance();
            f.kind = NodeForm::Kind::finite;
            f.args = call_args(1, std::size_t(-1), "set");
        } else if (at_ident("fam")) {
            advance();
            f.kind = NodeForm::Kind::family;
            f.args = call_args(2, 4, "fam");
        } else {
            f.kind = NodeForm::Kind::single;
            f.args.push_back(expression());
        }
        return f;
    }

    std::vector<NodeForm> bracketed_nodes() {
        expect_punct("[");
        std::vector<NodeForm> forms;
        if (!at_punct("]")) {
            forms.push_back(node_form());
            while (at_punct(",")) {
                advance();
                forms.push_back(node_form());
            }
        }
        expect_punct("]");
        return forms;
    }

    Statement statement() {
        const Token& head = peek();
        if (head.type != Token::Type::ident) fail("expected a statement");
        Statement st;
        st.line = head.line;
        st.column = head.column;
        if (at_ident("Binary")) {
            advance();
            st.kind = Statement::Kind::binary;
            expect_punct("(");
            st.args.push_back(expression());
            expect_punct(",");
            st.args.push_back(expression());
            expect_punct(")");
        } else if (at_ident("Arithmetic")) {
            advance();
            st.kind = Statement::Kind::arithmetic;
            expect_punct("(");
            st.args.push_back(expression());
            expect_punct(",");
            st.args.push_back(expression());
            expect_punct(",");
            if (at_ident("infinity")) advance();
            else st.count = expression();
            if (at_punct(",")) {
                advance();
                st.offset = expression();
            }
            expect_punct(")");
        } else if (at_ident("Linear") || at_ident("LinearBinary")) {
            st.kind = at_ident("Linear") ? Statement::Kind::linear
                                         : Statement::Kind::linear_binary;
            advance();
            expect_punct("(");
            st.items = bracketed_exprs();
            expect_punct(",");
            st.args.push_back(expression());
            expect_punct(")");
        } else if (at_ident("Residue")) {
            advance();
            st.kind = Statement::Kind::residue;
            expect_punct("(");
            st.args.push_back(expression());
            expect_punct(",");
            st.args.push_back(expression());
            expect_punct(",");
            st.items = bracketed_exprs();
            if (at_punct(",")) {
                advance();
                st.ins = bracketed_nodes();
                st.with_inputs = true;
            }
            expect_punct(")");
        } else if (at_ident("Apery")) {
            advance();
            st.kind = Statement::Kind::apery;
            expect_punct("(");
            st.args.push_back(expression());
            expect_punct(",");
            st.items = bracketed_exprs();
            expect_punct(")");
        } else if (at_ident("Explicit")) {
            advance();
            st.kind = Statement::Kind::explicit_edge;
            expect_punct("(");
            st.ins = bracketed_nodes();
            expect_punct(",");
            st.outs = bracketed_nodes();
            expect_punct(",");
            st.items = bracketed_exprs();
            expect_punct(")");
        } else if (at_ident("generators")) {
            advance();
            st.kind = Statement::Kind::generators;
            expect_punct("(");
            st.items.push_back(expression());
            while (at_punct(",")) {
                advance();
                st.items.push_back(expression());
            }
            expect_punct(")");
        } else if (at_ident("expect_root")) {
            advance();
            st.kind = Statement::Kind::expect_root;
            expect_punct("(");
            st.args.push_back(expression());
            expect_punct(")");
        } else {
            fail("expected a statement");
        }
        terminator();
        return st;
    }
};

} // namespace detail

inline Script parse(const std::string& text) { return detail::Parser(text).run(); }

// -------------------------------------------------------------- evaluation

namespace detail {

class Evaluator {
  public:
    void bind(const std::string& name, Int value) { env_[name] = std::move(value); }

    Int eval(const Expr& e) const {
        switch (e.kind) {
            case Expr::Kind::number: return e.value;
            case Expr::Kind::name: {
                auto it = env_.find(e.id);
                if (it == env_.end())
                    throw parse_error("unbound name '" + e.id + "'", e.line, e.column);
                return it->second;
            }
            case Expr::Kind::add: return eval(e.kids[0]) + eval(e.kids[1]);
            case Expr::Kind::sub: return eval(e.kids[0]) - eval(e.kids[1]);
            case Expr::Kind::mul: return eval(e.kids[0]) * eval(e.kids[1]);
            case Expr::Kind::neg: return -eval(e.kids[0]);
            case Expr::Kind::gcd_call: {
                Int x = abs(eval(e.kids[0]));
                Int y = abs(eval(e.kids[1]));
                return gcd(x, y);
            }
            case Expr::Kind::pow: {
                Int base = eval(e.kids[0]);
                Int exponent = eval(e.kids[1]);
                if (exponent < 0)
                    throw parse_error("negative exponent " + exponent.str(), e.line,
                                      e.column);
                if (exponent > 1000000)
                    throw parse_error("exponent " + exponent.str() + " is too large",
                                      e.line, e.column);
                Int out = 1;
                for (unsigned long k = exponent.convert_to<unsigned long>(); k > 0; --k)
                    out *= base;
                return out;
            }
        }
        throw parse_error("malformed expression", e.line, e.column);
    }

    Nat nat(const Expr& e, const char* what) const {
        Int v = eval(e);
        if (v < 0)
            throw parse_error(std::string(what) + " must be nonnegative, evaluated to " +
                                  v.str(),
                              e.line, e.column);
        return Nat(v);
    }

    std::vector<Nat> nats(const std::vector<Expr>& list, const char* what) const {
        std::vector<Nat> out;
        for (const Expr& e : list) out.push_back(nat(e, what));
        return out;
    }

    NodeDescriptor descriptor(const NodeForm& f) const {
        switch (f.kind) {
            case NodeForm::Kind::single: return Monogenic{nat(f.args[0], "generator")};
            case NodeForm::Kind::range:
                return ScaledRange{nat(f.args[0], "range step"),
                                   nat(f.args[1], "range count")};
            case NodeForm::Kind::span:
                return SemigroupSpan{GeneratorSet(nats(f.args, "sg generator"))};
            case NodeForm::Kind::finite: {
                std::vector<Nat> v = nats(f.args, "set element");
                std::sort(v.begin(), v.end());
                v.erase(std::unique(v.begin(), v.end()), v.end());
                return ExplicitFinite{std::move(v)};
            }
            case NodeForm::Kind::family: {
                ArithmeticFamily fam;
                fam.base = nat(f.args[0], "fam base");
                fam.diff = eval(f.args[1]);
                fam.h = f.args.size() > 2 ? nat(f.args[2], "fam h") : Nat(1);
                if (f.args.size() > 3) fam.count = nat(f.args[3], "fam count");
                return fam;
            }
        }
        throw parse_error("malformed node", 0, 0);
    }

    std::vector<NodeDescriptor> descriptors(const std::vector<NodeForm>& forms) const {
        std::vector<NodeDescriptor> out;
        for (const NodeForm& f : forms) out.push_back(descriptor(f));
        return out;
    }

  private:
    std::map<std::string, Int> env_;
};

} // namespace detail

// -------------------------------------------------------------- assembling

struct Assembly {
    ReductionGraph graph;
    Nat implied_root{1}; // product of edge weights
    std::optional<GeneratorSet> declared_generators;
    std::optional<Nat> expected_root;
    std::vector<std::string> problems; // directive mismatches, validation errors
};

inline Assembly assemble(const Script& script) {
    detail::Evaluator ev;
    for (const auto& [name, expr] : script.bindings) ev.bind(name, ev.eval(expr));

    GraphBuilder builder;
    Assembly out;
    bool any_edges = false;
    for (const Statement& st : script.statements) {
        try {
            switch (st.kind) {
                case Statement::Kind::binary:
                    builder.add_edge(binary_edge(ev.nat(st.args[0], "output generator"),
                                                 ev.nat(st.args[1], "input generator")));
                    break;
                case Statement::Kind::arithmetic: {
                    Nat a = ev.nat(st.args[0], "output generator");
                    Int d = ev.eval(st.args[1]);
                    Nat h = st.offset ? ev.nat(*st.offset, "h") : Nat(1);
                    if (st.count)
                        builder.add_edge(
                            modified_arithmetic_edge(a, d, ev.nat(*st.count, "k"), h));
                    else
                        builder.add_edge(infinite_arithmetic_edge(a, d, h));
                    break;
                }
                case Statement::Kind::linear:
                    builder.add_edge(linear_edge(ev.nats(st.items, "output generator"),
                                                 ev.nat(st.args[0], "input generator")));
                    break;
                case Statement::Kind::linear_binary:
                    builder.add_edge(
                        linear_binary_edge(ev.nats(st.items, "output generator"),
                                           ev.nat(st.args[0], "input generator")));
                    break;
                case Statement::Kind::residue: {
                    Nat a = ev.nat(st.args[0], "output generator");
                    Nat b = ev.nat(st.args[1], "cogenerator");
                    std::vector<Int> table;
                    for (const Expr& e : st.items) table.push_back(ev.eval(e));
                    std::vector<NodeDescriptor> inputs =
                        st.with_inputs ? ev.descriptors(st.ins)
                                       : std::vector<NodeDescriptor>{Monogenic{b}};
                    builder.add_edge(residue_edge(a, b, table, std::move(inputs)));
                    break;
                }
                case Statement::Kind::apery:
                    builder.add_edge(apery_edge(ev.nat(st.args[0], "output generator"),
                                                ev.nats(st.items, "input generator")));
                    break;
                case Statement::Kind::explicit_edge:
                    builder.add_edge(explicit_edge(ev.descriptors(st.ins),
                                                   ev.descriptors(st.outs),
                                                   ev.nats(st.items, "remainder entry")));
                    break;
                case Statement::Kind::generators:
                    if (out.declared_generators)
                        throw parse_error("generators already declared", st.line,
                                          st.column);
                    out.declared_generators =
                        GeneratorSet(ev.nats(st.items, "generator"));
                    break;
                case Statement::Kind::expect_root:
                    if (out.expected_root)
                        throw parse_error("expect_root already declared", st.line,
                                          st.column);
                    out.expected_root = ev.nat(st.args[0], "root");
                    break;
            }
            if (st.kind != Statement::Kind::generators &&
                st.kind != Statement::Kind::expect_root)
                any_edges = true;
        } catch (const parse_error&) {
            throw;
        } catch (const precondition_error& p) {
            throw precondition_error("line " + std::to_string(st.line) + ": " +
                                     p.what());
        }
    }
    if (!any_edges) throw precondition_error("script has no edge statements");

    out.graph = builder.finish();
    Nat weights = 1;
    for (const auto& e : out.graph.edges) weights *= Nat(e.weight());
    out.implied_root = weights;

    ValidationReport report = validate(out.graph);
    for (const std::string& e : report.errors) out.problems.push_back(e);
    if (std::holds_alternative<Monogenic>(out.graph.nodes[out.graph.root])) {
        const Nat& root = out.graph.root_generator();
        if (out.expected_root && *out.expected_root != root)
            out.problems.push_back("expected root <" + out.expected_root->str() +
                                   ">, the graph reduces to <" + root.str() + ">");
        if (out.declared_generators &&
            !span_equals(out.graph, *out.declared_generators))
            out.problems.push_back(
                "declared generators do not span the assembled graph");
    }
    return out;
}

// ---------------------------------------------------------------- printing

namespace detail {

inline int level_of(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::add:
        case Expr::Kind::sub: return 1;
        case Expr::Kind::mul: return 2;
        case Expr::Kind::neg: return 3;
        case Expr::Kind::pow: return 4;
        default: return 5;
    }
}

inline std::string render(const Expr& e);

inline std::string wrap(const Expr& e, int level, bool strict) {
    int mine = level_of(e);
    if (mine < level || (strict && mine == level)) return "(" + render(e) + ")";
    return render(e);
}

inline std::string render(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::number: return e.value.str();
        case Expr::Kind::name: return e.id;
        case Expr::Kind::add: return wrap(e.kids[0], 1, false) + "+" + wrap(e.kids[1], 1, true);
        case Expr::Kind::sub: return wrap(e.kids[0], 1, false) + "-" + wrap(e.kids[1], 1, true);
        case Expr::Kind::mul: return wrap(e.kids[0], 2, false) + "*" + wrap(e.kids[1], 2, true);
        case Expr::Kind::pow: return wrap(e.kids[0], 4, true) + "^" + wrap(e.kids[1], 4, false);
        case Expr::Kind::neg: return "-" + wrap(e.kids[0], 3, false);
        case Expr::Kind::gcd_call:
            return "gcd(" + render(e.kids[0]) + ", " + render(e.kids[1]) + ")";
    }
    return "";
}

inline std::string join(const std::vector<Expr>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ", ";
        out += render(items[i]);
    }
    return out;
}

inline std::string render(const NodeForm& f) {
    switch (f.kind) {
        case NodeForm::Kind::single: return render(f.args[0]);
        case NodeForm::Kind::range: return "range(" + join(f.args) + ")";
        case NodeForm::Kind::span: return "sg(" + join(f.args) + ")";
        case NodeForm::Kind::finite: return "set(" + join(f.args) + ")";
        case NodeForm::Kind::family: return "fam(" + join(f.args) + ")";
    }
    return "";
}

inline std::string join(const std::vector<NodeForm>& forms) {
    std::string out = "[";
    for (std::size_t i = 0; i < forms.size(); ++i) {
        if (i) out += ", ";
        out += render(forms[i]);
    }
    return out + "]";
}

} // namespace detail

inline std::string print(const Statement& st) {
    using detail::join;
    using detail::render;
    switch (st.kind) {
        case Statement::Kind::binary:
            return "Binary(" + render(st.args[0]) + ", " + render(st.args[1]) + ");";
        case Statement::Kind::arithmetic: {
            std::string out = "Arithmetic(" + render(st.args[0]) + ", " +
                              render(st.args[1]) + ", " +
                              (st.count ? render(*st.count) : "infinity");
            if (st.offset) out += ", " + render(*st.offset);
            return out + ");";
        }
        case Statement::Kind::linear:
            return "Linear([" + join(st.items) + "], " + render(st.args[0]) + ");";
        case Statement::Kind::linear_binary:
            return "LinearBinary([" + join(st.items) + "], " + render(st.args[0]) + ");";
        case Statement::Kind::residue: {
            std::string out = "Residue(" + render(st.args[0]) + ", " +
                              render(st.args[1]) + ", [" + join(st.items) + "]";
            if (st.with_inputs) out += ", " + join(st.ins);
            return out + ");";
        }
        case Statement::Kind::apery:
            return "Apery(" + render(st.args[0]) + ", [" + join(st.items) + "]);";
        case Statement::Kind::explicit_edge:
            return "Explicit(" + join(st.ins) + ", " + join(st.outs) + ", [" +
                   join(st.items) + "]);";
        case Statement::Kind::generators:
            return "generators(" + join(st.items) + ");";
        case Statement::Kind::expect_root:
            return "expect_root(" + render(st.args[0]) + ");";
    }
    return "";
}

inline std::string print(const Script& script) {
    std::string out;
    for (const auto& [name, expr] : script.bindings)
        out += "let " + name + " = " + detail::render(expr) + ";\n";
    for (const Statement& st : script.statements) out += print(st) + "\n";
    return out;
}

// ------------------------------------------------- scripts from graphs

namespace detail {

inline NodeForm form_of(const NodeDescriptor& d) {
    NodeForm f;
    if (const auto* m = std::get_if<Monogenic>(&d)) {
        f.kind = NodeForm::Kind::single;
        f.args.push_back(Expr::lit(Int(m->gen)));
    } else if (const auto* r = std::get_if<ScaledRange>(&d)) {
        f.kind = NodeForm::Kind::range;
        f.args.push_back(Expr::lit(Int(r->step)));
        f.args.push_back(Expr::lit(Int(r->count)));
    } else if (const auto* s = std::get_if<SemigroupSpan>(&d)) {
        f.kind = NodeForm::Kind::span;
        for (const Nat& g : s->gens.values()) f.args.push_back(Expr::lit(Int(g)));
    } else if (const auto* x = std::get_if<ExplicitFinite>(&d)) {
        f.kind = NodeForm::Kind::finite;
        for (const Nat& e : x->elements) f.args.push_back(Expr::lit(Int(e)));
    } else if (const auto* a = std::get_if<ArithmeticFamily>(&d)) {
        f.kind = NodeForm::Kind::family;
        f.args.push_back(Expr::lit(Int(a->base)));
        f.args.push_back(Expr::lit(a->diff));
        if (a->h != 1 || a->count) f.args.push_back(Expr::lit(Int(a->h)));
        if (a->count) f.args.push_back(Expr::lit(Int(*a->count)));
    }
    return f;
}

inline Statement explicit_statement(const EdgeBlueprint& b) {
    Statement st;
    st.kind = Statement::Kind::explicit_edge;
    for (const auto& d : b.inputs) st.ins.push_back(form_of(d));
    for (const auto& d : b.outputs) st.outs.push_back(form_of(d));
    for (const Nat& x : b.remainder) st.items.push_back(Expr::lit(Int(x)));
    return st;
}

inline std::optional<Nat> single_gen(const std::vector<NodeDescriptor>& v) {
    if (v.size() != 1) return std::nullopt;
    if (const auto* m = std::get_if<Monogenic>(&v.front())) return m->gen;
    return std::nullopt;
}

inline std::optional<std::vector<Nat>> all_gens(const std::vector<NodeDescriptor>& v) {
    std::vector<Nat> out;
    for (const auto& d : v) {
        const auto* m = std::get_if<Monogenic>(&d);
        if (!m) return std::nullopt;
        out.push_back(m->gen);
    }
    return out;
}

inline Statement statement_for_edge(const EdgeBlueprint& b) {
    auto lit = [](const Nat& v) { return Expr::lit(Int(v)); };
    switch (b.kind) {
        case EdgeKind::binary:
        case EdgeKind::scaled_binary: {
            std::optional<Nat> out = single_gen(b.outputs);
            std::optional<Nat> in = single_gen(b.inputs);
            if (!out || !in) return explicit_statement(b);
            Statement st;
            st.kind = Statement::Kind::binary;
            st.args.push_back(lit(*out));
            st.args.push_back(lit(*in));
            return st;
        }
        case EdgeKind::linear:
        case EdgeKind::linear_binary: {
            std::optional<std::vector<Nat>> outs = all_gens(b.outputs);
            std::optional<Nat> in = single_gen(b.inputs);
            if (!outs || !in) return explicit_statement(b);
            Statement st;
            st.kind = b.kind == EdgeKind::linear ? Statement::Kind::linear
                                                 : Statement::Kind::linear_binary;
            for (const Nat& g : *outs) st.items.push_back(lit(g));
            st.args.push_back(lit(*in));
            return st;
        }
        case EdgeKind::infinite_arithmetic: {
            const auto* fam = std::get_if<ArithmeticFamily>(&b.inputs.front());
            if (!fam || fam->count) return explicit_statement(b);
            Statement st;
            st.kind = Statement::Kind::arithmetic;
            st.args.push_back(lit(fam->base));
            st.args.push_back(Expr::lit(fam->diff));
            if (fam->h != 1) st.offset = lit(fam->h);
            return st;
        }
        case EdgeKind::modified_arithmetic: {
            std::optional<Nat> a = single_gen(b.outputs);
            std::optional<std::vector<Nat>> ins = all_gens(b.inputs);
            if (!a || !ins || ins->empty()) return explicit_statement(b);
            if (ins->size() == 1) {
                Statement st;
                st.kind = Statement::Kind::binary;
                st.args.push_back(lit(*a));
                st.args.push_back(lit(ins->front()));
                return st;
            }
            Int d = Int((*ins)[1]) - Int((*ins)[0]);
            Int ha = Int((*ins)[0]) - d;
            if (d == 0 || ha < 1 || ha % Int(*a) != 0) return explicit_statement(b);
            Nat h = Nat(ha / Int(*a));
            try {
                EdgeBlueprint again =
                    modified_arithmetic_edge(*a, d, Nat(ins->size()), h);
                if (again.remainder != b.remainder ||
                    *all_gens(again.inputs) != *ins)
                    return explicit_statement(b);
            } catch (const precondition_error&) {
                return explicit_statement(b);
            }
            Statement st;
            st.kind = Statement::Kind::arithmetic;
            st.args.push_back(lit(*a));
            st.args.push_back(Expr::lit(d));
            st.count = lit(Nat(ins->size()));
            if (h != 1) st.offset = lit(h);
            return st;
        }
        case EdgeKind::apery: {
            std::optional<Nat> a = single_gen(b.outputs);
            std::optional<std::vector<Nat>> ins = all_gens(b.inputs);
            if (!a || !ins) return explicit_statement(b);
            try {
                EdgeBlueprint again = apery_edge(*a, *ins);
                if (again.remainder != b.remainder) return explicit_statement(b);
            } catch (const precondition_error&) {
                return explicit_statement(b);
            }
            Statement st;
            st.kind = Statement::Kind::apery;
            st.args.push_back(lit(*a));
            for (const Nat& g : *ins) st.items.push_back(lit(g));
            return st;
        }
        case EdgeKind::residue:
        case EdgeKind::explicit_edge: return explicit_statement(b);
    }
    return explicit_statement(b);
}

} // namespace detail

// A canonical script reproducing the graph edge for edge: assembling it
// yields a graph with the same canonical form.
inline Script script_for(const ReductionGraph& g) {
    Script script;
    for (std::size_t i = 0; i < g.edges.size(); ++i)
        script.statements.push_back(detail::statement_for_edge(blueprint_of(g, i)));
    if (std::holds_alternative<Monogenic>(g.nodes[g.root])) {
        Statement root;
        root.kind = Statement::Kind::expect_root;
        root.args.push_back(Expr::lit(Int(g.root_generator())));
        script.statements.push_back(std::move(root));
    }
    return script;
}

// The same, with the instance's generator list declared.
inline Script script_for(const FamilyInstance& inst) {
    Script script = script_for(inst.graph);
    Statement gens;
    gens.kind = Statement::Kind::generators;
    for (const Nat& g : inst.generators.values())
        gens.items.push_back(Expr::lit(Int(g)));
    script.statements.push_back(std::move(gens));
    return script;
}

} // namespace dsl
} // namespace semired
