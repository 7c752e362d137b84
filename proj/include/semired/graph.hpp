#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "genpoly.hpp"
#include "numbers.hpp"
#include "numcore.hpp"

namespace semired {

// ---------------------------------------------------------------------------
// Node descriptors. Every described set contains 0.

// <a> = {0, a, 2a, ...}
struct Monogenic {
    Nat gen;
    bool operator==(const Monogenic&) const = default;
};

// {step*r : 0 <= r < count}
struct ScaledRange {
    Nat step;
    Nat count;
    bool operator==(const ScaledRange&) const = default;
};

// <g1, ..., gk>
struct SemigroupSpan {
    GeneratorSet gens;
    bool operator==(const SemigroupSpan&) const = default;
};

// a finite set listed outright; sorted, first element 0
struct ExplicitFinite {
    std::vector<Nat> elements;
    bool operator==(const ExplicitFinite&) const = default;
};

// A bundle of monogenic nodes <h*base + j*diff> for j = 1..count, or for all
// j >= 1 when count is absent. Keeps the node table finite when an edge has
// infinitely many inputs.
struct ArithmeticFamily {
    Nat base;
    Int diff;
    Nat h;
    std::optional<Nat> count; // nullopt = unbounded
    bool operator==(const ArithmeticFamily&) const = default;
};

using NodeDescriptor =
    std::variant<Monogenic, ScaledRange, SemigroupSpan, ExplicitFinite, ArithmeticFamily>;

using NodeId = std::size_t;

namespace detail {

inline void check_descriptor(const NodeDescriptor& d) {
    if (const auto* m = std::get_if<Monogenic>(&d)) {
        if (m->gen < 1) throw precondition_error("node <a>: generator must be positive");
    } else if (const auto* s = std::get_if<ScaledRange>(&d)) {
        if (s->step < 1 || s->count < 1)
            throw precondition_error("range node: step and count must be positive");
    } else if (const auto* x = std::get_if<ExplicitFinite>(&d)) {
        if (x->elements.empty() || x->elements.front() != 0)
            throw precondition_error("explicit node: set must contain 0");
        if (!std::is_sorted(x->elements.begin(), x->elements.end()))
            throw precondition_error("explicit node: elements must be sorted");
        if (std::adjacent_find(x->elements.begin(), x->elements.end()) != x->elements.end())
            throw precondition_error("explicit node: elements must be distinct");
    } else if (const auto* f = std::get_if<ArithmeticFamily>(&d)) {
        if (f->base < 1 || f->h < 1)
            throw precondition_error("family node: base and h must be positive");
        if (f->count && *f->count < 1)
            throw precondition_error("family node: count must be positive");
        if (!f->count && f->diff < 1)
            throw precondition_error("family node: unbounded family needs positive difference");
        // every member h*base + j*diff must be a positive generator
        if (f->count && f->diff < 0) {
            Int last = Int(f->h * f->base) + f->diff * Int(*f->count);
            if (last < 1)
                throw precondition_error("family node: member generators must stay positive");
        }
    }
}

} // namespace detail

// Generators of the monogenic members a family node bundles, up to `bound`.
inline std::vector<Nat> family_member_generators(const ArithmeticFamily& f, const Nat& bound) {
    std::vector<Nat> out;
    Int g = Int(f.h * f.base);
    Nat j = 0;
    for (;;) {
        if (f.count && j >= *f.count) break;
        ++j;
        Int v = g + f.diff * Int(j);
        if (v > bound) {
            if (f.diff >= 0) break; // increasing, nothing smaller follows
            continue;
        }
        if (v >= 1) out.push_back(Nat(v));
    }
    return out;
}

// All elements of the described set that do not exceed `bound`.
inline std::vector<Nat> node_elements_up_to(const NodeDescriptor& d, const Nat& bound,
                                            std::size_t ceiling = default_table_ceiling) {
    std::vector<Nat> out;
    if (const auto* m = std::get_if<Monogenic>(&d)) {
        for (Nat x = 0; x <= bound; x += m->gen) out.push_back(x);
    } else if (const auto* s = std::get_if<ScaledRange>(&d)) {
        Nat x = 0;
        for (Nat r = 0; r < s->count && x <= bound; ++r, x += s->step) out.push_back(x);
    } else if (const auto* sp = std::get_if<SemigroupSpan>(&d)) {
        auto table = membership_table(sp->gens, bound, ceiling);
        for (std::size_t x = 0; x < table.size(); ++x)
            if (table[x]) out.push_back(Nat(x));
    } else if (const auto* xf = std::get_if<ExplicitFinite>(&d)) {
        for (const Nat& e : xf->elements)
            if (e <= bound) out.push_back(e);
    } else {
        const auto& f = std::get<ArithmeticFamily>(d);
        // the bundle contributes the sum of its members, i.e. their joint span
        std::vector<Nat> gens = family_member_generators(f, bound);
        if (gens.empty()) return {Nat(0)};
        auto table = membership_table(GeneratorSet(gens), bound, ceiling);
        for (std::size_t x = 0; x < table.size(); ++x)
            if (table[x]) out.push_back(Nat(x));
    }
    return out;
}

// gcd of all elements of the described set (0 for the set {0}).
inline Nat node_gcd(const NodeDescriptor& d) {
    if (const auto* m = std::get_if<Monogenic>(&d)) return m->gen;
    if (const auto* s = std::get_if<ScaledRange>(&d)) return s->count > 1 ? s->step : Nat(0);
    if (const auto* sp = std::get_if<SemigroupSpan>(&d)) return sp->gens.gcd();
    if (const auto* x = std::get_if<ExplicitFinite>(&d)) {
        Nat g = 0;
        for (const Nat& e : x->elements) g = gcd(g, e);
        return g;
    }
    const auto& f = std::get<ArithmeticFamily>(d);
    Nat first = Nat(Int(f.h * f.base) + f.diff);
    if (f.count && *f.count == 1) return first;
    return gcd(first, Nat(abs(f.diff)));
}

// The largest defining parameter of the descriptor; used to size default
// verification bounds.
inline Nat node_magnitude(const NodeDescriptor& d) {
    if (const auto* m = std::get_if<Monogenic>(&d)) return m->gen;
    if (const auto* s = std::get_if<ScaledRange>(&d)) return s->step * (s->count - 1);
    if (const auto* sp = std::get_if<SemigroupSpan>(&d)) return sp->gens.values().back();
    if (const auto* x = std::get_if<ExplicitFinite>(&d)) return x->elements.back();
    const auto& f = std::get<ArithmeticFamily>(d);
    Nat top = Nat(Int(f.h * f.base) + f.diff);
    if (f.count) {
        Int last = Int(f.h * f.base) + f.diff * Int(*f.count);
        if (last > top) top = Nat(last);
    }
    return top;
}

inline std::string node_label(const NodeDescriptor& d) {
    std::ostringstream os;
    if (const auto* m = std::get_if<Monogenic>(&d)) {
        os << "<" << m->gen << ">";
    } else if (const auto* s = std::get_if<ScaledRange>(&d)) {
        os << "{" << s->step << "r : r<" << s->count << "}";
    } else if (const auto* sp = std::get_if<SemigroupSpan>(&d)) {
        os << "<";
        bool first = true;
        for (const Nat& g : sp->gens.values()) {
            if (!first) os << ",";
            first = false;
            os << g;
        }
        os << ">";
    } else if (const auto* x = std::get_if<ExplicitFinite>(&d)) {
        os << "{";
        bool first = true;
        for (const Nat& e : x->elements) {
            if (!first) os << ",";
            first = false;
            os << e;
        }
        os << "}";
    } else {
        const auto& f = std::get<ArithmeticFamily>(d);
        os << "fam(" << f.base << "," << f.diff << ",";
        if (f.count)
            os << *f.count;
        else
            os << "inf";
        if (f.h != 1) os << "," << f.h;
        os << ")";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Edges and graphs.

enum class EdgeKind {
    linear,
    binary,
    scaled_binary,
    modified_arithmetic,
    infinite_arithmetic,
    residue,
    linear_binary,
    apery,
    explicit_edge,
};

inline const char* to_string(EdgeKind k) {
    switch (k) {
        case EdgeKind::linear: return "linear";
        case EdgeKind::binary: return "binary";
        case EdgeKind::scaled_binary: return "scaled-binary";
        case EdgeKind::modified_arithmetic: return "modified-arithmetic";
        case EdgeKind::infinite_arithmetic: return "infinite-arithmetic";
        case EdgeKind::residue: return "residue";
        case EdgeKind::linear_binary: return "linear-binary";
        case EdgeKind::apery: return "apery";
        default: return "explicit";
    }
}

struct ReductionEdge {
    EdgeKind kind = EdgeKind::explicit_edge;
    std::vector<NodeId> inputs;
    std::vector<NodeId> outputs;
    std::vector<Nat> remainder; // sorted, distinct, contains 0

    std::size_t weight() const { return remainder.size(); }
    const Nat& max_remainder() const { return remainder.back(); }
};

// An edge stated in terms of node descriptors, before attachment to a graph.
struct EdgeBlueprint {
    EdgeKind kind = EdgeKind::explicit_edge;
    std::vector<NodeDescriptor> inputs;
    std::vector<NodeDescriptor> outputs;
    std::vector<Nat> remainder;
};

struct ReductionGraph {
    std::vector<NodeDescriptor> nodes;
    std::vector<ReductionEdge> edges;
    NodeId root = 0;

    const NodeDescriptor& node(NodeId id) const { return nodes.at(id); }

    // Generator of the root node; the root must be monogenic.
    const Nat& root_generator() const {
        const auto* m = std::get_if<Monogenic>(&nodes.at(root));
        if (!m) throw precondition_error("graph root is not monogenic");
        return m->gen;
    }
};

// Assembles graphs, deduplicating nodes by descriptor value.
class GraphBuilder {
public:
    NodeId add_node(const NodeDescriptor& d) {
        detail::check_descriptor(d);
        for (NodeId i = 0; i < g_.nodes.size(); ++i)
            if (g_.nodes[i] == d) return i;
        g_.nodes.push_back(d);
        return g_.nodes.size() - 1;
    }

    void add_edge(const EdgeBlueprint& b) {
        if (b.inputs.empty() || b.outputs.empty())
            throw precondition_error("edge needs at least one input and one output");
        ReductionEdge e;
        e.kind = b.kind;
        e.remainder = b.remainder;
        for (const auto& d : b.inputs) e.inputs.push_back(add_node(d));
        for (const auto& d : b.outputs) e.outputs.push_back(add_node(d));
        g_.edges.push_back(std::move(e));
    }

    // Fix the root explicitly by descriptor.
    void set_root(const NodeDescriptor& d) { root_ = add_node(d); }

    // When no root was set, infer it as the unique node that is input of no
    // edge. Throws when the choice is ambiguous or absent.
    ReductionGraph finish() {
        if (root_) {
            g_.root = *root_;
            return std::move(g_);
        }
        std::vector<bool> is_input(g_.nodes.size(), false);
        for (const auto& e : g_.edges)
            for (NodeId id : e.inputs) is_input[id] = true;
        std::optional<NodeId> root;
        for (NodeId i = 0; i < g_.nodes.size(); ++i) {
            if (is_input[i]) continue;
            if (root)
                throw precondition_error("graph has several root candidates: " +
                                         node_label(g_.nodes[*root]) + " and " +
                                         node_label(g_.nodes[i]));
            root = i;
        }
        if (!root) throw precondition_error("graph has no root candidate");
        g_.root = *root;
        return std::move(g_);
    }

private:
    ReductionGraph g_;
    std::optional<NodeId> root_;
};

inline std::optional<NodeId> find_node(const ReductionGraph& g, const NodeDescriptor& d) {
    for (NodeId i = 0; i < g.nodes.size(); ++i)
        if (g.nodes[i] == d) return i;
    return std::nullopt;
}

// The edge restated in terms of node descriptors.
inline EdgeBlueprint blueprint_of(const ReductionGraph& g, std::size_t edge) {
    const auto& e = g.edges.at(edge);
    EdgeBlueprint b;
    b.kind = e.kind;
    for (NodeId id : e.inputs) b.inputs.push_back(g.nodes.at(id));
    for (NodeId id : e.outputs) b.outputs.push_back(g.nodes.at(id));
    b.remainder = e.remainder;
    return b;
}

// ---------------------------------------------------------------------------
// Validation.

struct ValidationReport {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    bool ok() const { return errors.empty(); }

    std::string summary() const {
        std::string s;
        for (const auto& e : errors) s += "error: " + e + "\n";
        for (const auto& w : warnings) s += "warning: " + w + "\n";
        return s;
    }
};

// Product of all edge weights.
inline Nat weight_product(const ReductionGraph& g) {
    Nat p = 1;
    for (const auto& e : g.edges) p *= Nat(e.weight());
    return p;
}

// Bal = r(G) / product of weights.
inline Rat balance(const ReductionGraph& g) {
    return Rat(g.root_generator(), weight_product(g));
}

// gcd of the union of all node sets, from descriptor parameters (exact).
inline Nat span_gcd(const ReductionGraph& g) {
    Nat d = 0;
    for (const auto& n : g.nodes) d = gcd(d, node_gcd(n));
    return d;
}

namespace detail {

inline bool edge_endpoint_shapes_ok(const ReductionGraph& g, const ReductionEdge& e,
                                    std::string& why) {
    auto all_monogenic = [&](const std::vector<NodeId>& ids) {
        for (NodeId id : ids)
            if (!std::holds_alternative<Monogenic>(g.nodes[id])) return false;
        return true;
    };
    switch (e.kind) {
        case EdgeKind::linear:
            if (e.inputs.size() != 1 || !all_monogenic(e.inputs) || !all_monogenic(e.outputs)) {
                why = "linear edge needs one monogenic input and monogenic outputs";
                return false;
            }
            if (e.remainder != std::vector<Nat>{Nat(0)}) {
                why = "linear edge remainder must be {0}";
                return false;
            }
            return true;
        case EdgeKind::binary:
        case EdgeKind::scaled_binary: {
            if (e.inputs.size() != 1 || e.outputs.size() != 1 || !all_monogenic(e.inputs) ||
                !all_monogenic(e.outputs)) {
                why = "binary edge needs one monogenic input and one monogenic output";
                return false;
            }
            const Nat& b = std::get<Monogenic>(g.nodes[e.inputs[0]]).gen;
            for (std::size_t r = 0; r < e.remainder.size(); ++r)
                if (e.remainder[r] != b * Nat(r)) {
                    why = "binary edge remainder must be the multiples of its input";
                    return false;
                }
            return true;
        }
        case EdgeKind::linear_binary: {
            if (e.inputs.size() != 1 || !all_monogenic(e.inputs) || !all_monogenic(e.outputs)) {
                why = "linear-binary edge needs one monogenic input and monogenic outputs";
                return false;
            }
            const Nat& b = std::get<Monogenic>(g.nodes[e.inputs[0]]).gen;
            for (std::size_t r = 0; r < e.remainder.size(); ++r)
                if (e.remainder[r] != b * Nat(r)) {
                    why = "linear-binary edge remainder must be the multiples of its input";
                    return false;
                }
            return true;
        }
        case EdgeKind::modified_arithmetic:
            if (e.outputs.size() != 1 || !all_monogenic(e.outputs) || !all_monogenic(e.inputs)) {
                why = "arithmetic edge needs monogenic inputs and one monogenic output";
                return false;
            }
            return true;
        case EdgeKind::infinite_arithmetic: {
            if (e.outputs.size() != 1 || !all_monogenic(e.outputs) || e.inputs.size() != 1 ||
                !std::holds_alternative<ArithmeticFamily>(g.nodes[e.inputs[0]])) {
                why = "unbounded arithmetic edge needs one family input and one monogenic output";
                return false;
            }
            const auto& f = std::get<ArithmeticFamily>(g.nodes[e.inputs[0]]);
            if (f.count) {
                why = "unbounded arithmetic edge input family must be unbounded";
                return false;
            }
            return true;
        }
        case EdgeKind::residue:
            if (e.outputs.size() != 1 || !all_monogenic(e.outputs)) {
                why = "residue edge needs one monogenic output";
                return false;
            }
            return true; // inputs may mix monogenic nodes and ranges (split tails)
        case EdgeKind::apery:
            if (e.outputs.size() != 1 || !all_monogenic(e.outputs) || !all_monogenic(e.inputs)) {
                why = "apery edge needs monogenic inputs and one monogenic output";
                return false;
            }
            return true;
        default:
            return true; // explicit edges carry no structural promise
    }
}

} // namespace detail

inline ValidationReport validate(const ReductionGraph& g) {
    ValidationReport rep;
    auto fail = [&](const std::string& msg) { rep.errors.push_back(msg); };

    if (g.nodes.empty()) {
        fail("graph has no nodes");
        return rep;
    }
    if (g.root >= g.nodes.size()) {
        fail("root id out of range");
        return rep;
    }
    for (const auto& n : g.nodes) {
        try {
            detail::check_descriptor(n);
        } catch (const precondition_error& e) {
            fail(e.what());
        }
    }
    if (!std::holds_alternative<Monogenic>(g.nodes[g.root]))
        fail("root node " + node_label(g.nodes[g.root]) + " is not monogenic");

    // endpoint resolution + remainder well-formedness
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const auto& e = g.edges[i];
        std::string tag = "edge " + std::to_string(i);
        if (e.inputs.empty()) fail(tag + " has no inputs");
        if (e.outputs.empty()) fail(tag + " has no outputs");
        for (NodeId id : e.inputs)
            if (id >= g.nodes.size()) fail(tag + " input id out of range");
        for (NodeId id : e.outputs)
            if (id >= g.nodes.size()) fail(tag + " output id out of range");
        if (e.remainder.empty() || e.remainder.front() != 0)
            fail(tag + " remainder must contain 0 as its least element");
        if (!std::is_sorted(e.remainder.begin(), e.remainder.end()) ||
            std::adjacent_find(e.remainder.begin(), e.remainder.end()) != e.remainder.end())
            fail(tag + " remainder must be sorted and distinct");
    }
    if (!rep.errors.empty()) return rep; // ids unsafe below

    // outdegree discipline: non-root nodes are consumed exactly once
    std::vector<std::size_t> outdeg(g.nodes.size(), 0);
    for (const auto& e : g.edges)
        for (NodeId id : e.inputs) ++outdeg[id];
    for (NodeId i = 0; i < g.nodes.size(); ++i) {
        if (i == g.root) {
            if (outdeg[i] != 0)
                fail("root " + node_label(g.nodes[i]) + " is consumed by an edge");
        } else if (outdeg[i] != 1) {
            fail("node " + node_label(g.nodes[i]) + " has outdegree " +
                 std::to_string(outdeg[i]) + ", expected 1 (multiple roots or reuse)");
        }
    }

    // acyclicity of the node -> edge -> node structure
    {
        std::size_t n = g.nodes.size(), m = g.edges.size();
        std::vector<std::vector<std::size_t>> succ(n + m);
        std::vector<std::size_t> indeg(n + m, 0);
        for (std::size_t i = 0; i < m; ++i) {
            for (NodeId id : g.edges[i].inputs) succ[id].push_back(n + i);
            for (NodeId id : g.edges[i].outputs) succ[n + i].push_back(id);
        }
        for (const auto& v : succ)
            for (std::size_t t : v) ++indeg[t];
        std::vector<std::size_t> queue;
        for (std::size_t v = 0; v < n + m; ++v)
            if (indeg[v] == 0) queue.push_back(v);
        std::size_t seen = 0;
        while (!queue.empty()) {
            std::size_t v = queue.back();
            queue.pop_back();
            ++seen;
            for (std::size_t t : succ[v])
                if (--indeg[t] == 0) queue.push_back(t);
        }
        if (seen != n + m) fail("graph contains a cycle");
    }

    // per-kind endpoint shapes
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        std::string why;
        if (!detail::edge_endpoint_shapes_ok(g, g.edges[i], why))
            fail("edge " + std::to_string(i) + ": " + why);
    }

    if (rep.errors.empty() && std::holds_alternative<Monogenic>(g.nodes[g.root])) {
        Rat bal = balance(g);
        if (bal > 1 && span_gcd(g) == 1)
            rep.warnings.push_back(
                "balance exceeds 1 on a numerical span; some edge is invalid");
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Deconstruction and analysis.

// Order of edges such that, at each step, no remaining edge outputs into the
// chosen edge's inputs. `preference` ranks edge ids for tie-breaking (lower
// rank wins); identity by default, which makes the result deterministic.
inline std::vector<std::size_t> deconstruct(
    const ReductionGraph& g, const std::vector<std::size_t>& preference = {}) {
    std::size_t m = g.edges.size();
    std::vector<std::size_t> rank(m);
    for (std::size_t i = 0; i < m; ++i) rank[i] = i;
    for (std::size_t i = 0; i < preference.size() && i < m; ++i) rank[preference[i]] = i;

    std::vector<std::size_t> indeg(g.nodes.size(), 0);
    for (const auto& e : g.edges)
        for (NodeId id : e.outputs) ++indeg[id];
    std::vector<bool> done(m, false);
    std::vector<std::size_t> order;
    order.reserve(m);
    for (std::size_t step = 0; step < m; ++step) {
        std::optional<std::size_t> pick;
        for (std::size_t i = 0; i < m; ++i) {
            if (done[i]) continue;
            bool free = true;
            for (NodeId id : g.edges[i].inputs)
                if (indeg[id] != 0) {
                    free = false;
                    break;
                }
            if (free && (!pick || rank[i] < rank[*pick])) pick = i;
        }
        if (!pick)
            throw inconsistency_error(
                "deconstruction is stuck; the graph should have failed validation");
        done[*pick] = true;
        order.push_back(*pick);
        for (NodeId id : g.edges[*pick].outputs) --indeg[id];
    }
    return order;
}

// Fold of all edge remainders as a direct sum, in the given elimination
// order. The class minima of a total graph's semigroup, one per residue
// class modulo the root generator.
inline std::vector<Nat> apery_from_graph(const ReductionGraph& g,
                                         const std::vector<std::size_t>& order) {
    const Nat& r = g.root_generator();
    if (balance(g) != 1)
        throw not_total_error("graph balance is " +
                              Rat(balance(g)).str() +
                              ", class minima need balance 1");
    Poly acc = Poly::one();
    for (std::size_t idx : order) {
        try {
            acc = checked_direct_product(acc, Poly::from_set(g.edges[idx].remainder));
        } catch (const inconsistency_error& e) {
            throw not_total_error("remainder fold is not direct at edge " +
                                  std::to_string(idx) + ": " + e.what());
        }
    }
    std::vector<Nat> ap = acc.as_set();
    // one element per residue class modulo the root generator
    std::vector<bool> seen(to_size(r, "class table", default_table_ceiling), false);
    for (const Nat& x : ap) {
        std::size_t c = static_cast<std::size_t>(x % r);
        if (seen[c])
            throw not_total_error("two fold elements fall in class " + std::to_string(c) +
                                  " modulo " + r.str());
        seen[c] = true;
    }
    return ap;
}

inline std::vector<Nat> apery_from_graph(const ReductionGraph& g) {
    return apery_from_graph(g, deconstruct(g));
}

// Power sums of the gaps encoded by a full set of class minima: for each
// minimum x, the gaps in its class are x - j*a for j = 1..floor(x/a).
inline std::vector<Nat> power_sums_from_class_minima(const std::vector<Nat>& minima,
                                                     const Nat& a, unsigned long pmax) {
    std::vector<Nat> sums(pmax + 1, Nat(0));
    for (const Nat& x : minima) {
        for (Nat gap = x % a; gap < x; gap += a) {
            Nat pw = 1;
            sums[0] += 1;
            for (unsigned long p = 1; p <= pmax; ++p) {
                pw *= gap;
                sums[p] += pw;
            }
        }
    }
    return sums;
}

struct AnalysisOptions {
    std::optional<unsigned long> power_sums; // largest exponent, when wanted
    bool gap_polynomial = false;             // materialize the gap polynomial
};

struct AnalysisReport {
    Nat root_generator;
    Rat balance;
    bool total = false;
    std::vector<Nat> apery;
    Int frobenius = -1;
    Nat genus = 0;
    Int asymmetry = 0;
    Symmetry classification = Symmetry::symmetric;
    HilbertSeries hilbert;
    std::optional<Poly> gap_poly;
    std::optional<std::vector<Nat>> power_sums;
};

// Count (and optionally accumulate power sums over) the terms of the gap
// polynomial of a series without materializing it: the quotient terms of
// ((1 + ... + X^{r-1}) - numerator) / (1 - X^r) are streamed in ascending
// exponent order.
struct GapStreamStats {
    Nat count = 0;
    std::vector<Nat> power_sums; // present when pmax was given
};

inline GapStreamStats gap_stream_stats(const HilbertSeries& h,
                                       std::optional<unsigned long> pmax = {}) {
    GapStreamStats stats;
    if (pmax) stats.power_sums.assign(*pmax + 1, Nat(0));
    const Nat& r = h.root;
    if (r < 1) throw precondition_error("gap stream: zero period");
    std::vector<Nat> below;
    for (Nat i = 0; i < r; ++i) below.push_back(i);
    Poly num = Poly::from_set(below) - h.numerator;
    if (num.is_zero()) return stats;
    if (num.degree() < r)
        throw inconsistency_error("gap stream: series complement is not polynomial");
    Nat quotient_degree = num.degree() - r;
    std::map<Nat, Int> work(num.terms().begin(), num.terms().end());
    while (!work.empty()) {
        auto node = work.extract(work.begin());
        const Nat& e = node.key();
        const Int& c = node.mapped();
        if (c == 0) continue;
        if (e > quotient_degree)
            throw inconsistency_error("gap stream: series complement is not polynomial");
        if (c != 1)
            throw inconsistency_error("gap stream: coefficient of X^" + e.str() + " is " +
                                      c.str() + ", series is not 0/1");
        work[e + r] += c;
        stats.count += 1;
        if (pmax) {
            Nat pw = 1;
            stats.power_sums[0] += 1;
            for (unsigned long p = 1; p <= *pmax; ++p) {
                pw *= e;
                stats.power_sums[p] += pw;
            }
        }
    }
    return stats;
}

// Full analysis of a total graph: class minima, Frobenius number, genus by
// two routes, asymmetry by two routes, closed-form series.
inline AnalysisReport analyze(const ReductionGraph& g, const AnalysisOptions& opts = {}) {
    AnalysisReport rep;
    rep.root_generator = g.root_generator();
    rep.balance = balance(g);
    Nat sg = span_gcd(g);
    rep.total = rep.balance == Rat(sg);
    if (rep.balance != 1) {
        std::string extra = rep.total
            ? " (the graph is total but its span has gcd " + sg.str() +
              "; divide the graph by " + sg.str() + " first)"
            : "";
        throw not_total_error("graph balance is " + rep.balance.str() + ", not 1" + extra);
    }

    rep.apery = apery_from_graph(g);
    const Nat& r = rep.root_generator;

    // Frobenius two ways: -r + sum of remainder maxima, and max class minimum - r.
    Int f1 = -Int(r);
    for (const auto& e : g.edges) f1 += Int(e.max_remainder());
    Int f2 = Int(rep.apery.back()) - Int(r); // fold output is sorted
    if (f1 != f2)
        throw inconsistency_error("frobenius mismatch: edge maxima give " + f1.str() +
                                  ", class minima give " + f2.str());
    rep.frobenius = f1;

    rep.hilbert = HilbertSeries{Poly::from_set(rep.apery), r};

    // genus via the mean formula, exact rational
    Rat genus_rat = Rat(Int(1) - Int(r), Int(2));
    for (const auto& e : g.edges) genus_rat += set_mean(e.remainder);
    Int genus_int = rat_to_int(genus_rat, "genus");
    if (genus_int < 0) throw inconsistency_error("negative genus " + genus_int.str());

    // genus again as the number of gap polynomial terms
    std::optional<unsigned long> stream_pmax;
    if (opts.power_sums) stream_pmax = *opts.power_sums;
    GapStreamStats stats = gap_stream_stats(rep.hilbert, stream_pmax);
    if (Nat(genus_int) != stats.count)
        throw inconsistency_error("genus mismatch: mean formula gives " + genus_int.str() +
                                  ", gap polynomial has " + stats.count.str() + " terms");
    rep.genus = Nat(genus_int);

    // asymmetry via per-edge contributions, cross-checked
    Rat asym = 0;
    for (const auto& e : g.edges)
        asym += 2 * set_mean(e.remainder) - Rat(e.max_remainder());
    Int asym_int = rat_to_int(asym, "asymmetry");
    Int asym_check = asymmetry_value(rep.frobenius, rep.genus);
    if (asym_int != asym_check)
        throw inconsistency_error("asymmetry mismatch: edge sums give " + asym_int.str() +
                                  ", 2g - F - 1 gives " + asym_check.str());
    rep.asymmetry = asym_int;
    rep.classification = classify_symmetry(rep.frobenius, rep.genus);

    if (opts.power_sums) rep.power_sums = std::move(stats.power_sums);
    if (opts.gap_polynomial) rep.gap_poly = gap_polynomial(rep.hilbert);
    return rep;
}

// ---------------------------------------------------------------------------
// Span computations.

// Least element of the graph's span in each residue class modulo m, using
// the deconstruction identity span = <root> + sum of remainders. Classes the
// span misses entirely are absent.
inline std::vector<std::optional<Nat>> span_minima(const ReductionGraph& g, const Nat& m) {
    std::size_t mm = to_size(m, "span minima", default_table_ceiling);
    if (mm == 0) throw precondition_error("span minima: modulus must be positive");
    std::vector<std::optional<Nat>> cur(mm);
    cur[0] = Nat(0);
    for (const auto& e : g.edges) {
        std::vector<std::optional<Nat>> next(mm);
        for (std::size_t c = 0; c < mm; ++c) {
            if (!cur[c]) continue;
            for (const Nat& s : e.remainder) {
                std::size_t t = static_cast<std::size_t>((Nat(c) + s) % m);
                Nat v = *cur[c] + s;
                if (!next[t] || v < *next[t]) next[t] = std::move(v);
            }
        }
        cur = std::move(next);
    }
    // close under adding the root generator: each +r orbit modulo m is a
    // cycle, and two relaxation laps around a cycle settle all minima
    const Nat& r = g.root_generator();
    std::size_t rm = static_cast<std::size_t>(r % m);
    std::vector<bool> visited(mm, false);
    for (std::size_t start = 0; start < mm; ++start) {
        if (visited[start]) continue;
        std::size_t len = 0;
        for (std::size_t c = start; !visited[c]; c = (c + rm) % mm) {
            visited[c] = true;
            ++len;
        }
        std::size_t c = start;
        for (std::size_t step = 0; step < 2 * len; ++step) {
            std::size_t t = (c + rm) % mm;
            if (cur[c]) {
                Nat v = *cur[c] + r;
                if (!cur[t] || v < *cur[t]) cur[t] = std::move(v);
            }
            c = t;
        }
    }
    return cur;
}

// Least element of <gens> in each residue class modulo m; classes outside
// the reach of the generators are absent. Any gcd is allowed.
inline std::vector<std::optional<Nat>> semigroup_minima(const GeneratorSet& gens, const Nat& m) {
    std::size_t mm = to_size(m, "span minima", default_table_ceiling);
    std::vector<std::optional<Nat>> out(mm);
    Nat g = gens.gcd();
    std::vector<Nat> reduced;
    for (const Nat& v : gens.values()) reduced.push_back(v / g);
    GeneratorSet rs(std::move(reduced));
    const Nat& a = rs.least();
    std::vector<Nat> ap = detail::residue_minima(rs, a, default_table_ceiling);
    // members of <gens> are g*y with y >= ap[y mod a]; walk y upward per class
    // of m by stepping through classes of a: minimal g*y with g*y = c (mod m).
    // Rather than search blindly, relax: for each class c0 of a, members are
    // ap[c0] + j*a scaled by g; the first hits of each class mod m lie within
    // m consecutive j values.
    for (std::size_t c0 = 0; c0 < static_cast<std::size_t>(a); ++c0) {
        Nat base = ap[c0];
        for (Nat j = 0; j < m; ++j) {
            Nat y = base + j * a;
            Nat v = g * y;
            std::size_t t = static_cast<std::size_t>(v % m);
            if (!out[t] || v < *out[t]) out[t] = std::move(v);
        }
    }
    return out;
}

// Exact equality of the graph's span with <gens>, via class minima with
// respect to the root generator.
inline bool span_equals(const ReductionGraph& g, const GeneratorSet& gens) {
    const Nat& r = g.root_generator();
    return span_minima(g, r) == semigroup_minima(gens, r);
}

// All elements of the node-set sum up to `bound`, computed from the node
// descriptors alone (no use of the deconstruction identity, so this also
// makes sense for graphs with semantically wrong remainders).
inline std::vector<Nat> truncated_span(const ReductionGraph& g, const Nat& bound,
                                       std::size_t ceiling = default_table_ceiling) {
    std::size_t n = to_size(bound, "truncated span", ceiling - 1) + 1;
    std::vector<bool> cur(n, false);
    cur[0] = true;
    for (const auto& d : g.nodes) {
        std::vector<Nat> elems = node_elements_up_to(d, bound, ceiling);
        if (elems.size() == 1) continue; // just {0}
        std::vector<bool> next(n, false);
        for (std::size_t x = 0; x < n; ++x) {
            if (!cur[x]) continue;
            for (const Nat& s : elems) {
                Nat y = Nat(x) + s;
                if (y > bound) break;
                next[static_cast<std::size_t>(y)] = true;
            }
        }
        cur = std::move(next);
    }
    std::vector<Nat> out;
    for (std::size_t x = 0; x < n; ++x)
        if (cur[x]) out.push_back(Nat(x));
    return out;
}

// ---------------------------------------------------------------------------
// Bounded semantic verification of a single edge.

struct VerifyResult {
    bool pass = true;
    std::optional<Nat> counterexample;
    std::string detail;
};

// Default verification bound for an edge: twice (max remainder + largest
// node parameter), clamped below by a small constant.
inline Nat default_verify_bound(const ReductionGraph& g, std::size_t edge) {
    const auto& e = g.edges.at(edge);
    Nat m = 0;
    for (NodeId id : e.inputs) m = std::max(m, node_magnitude(g.nodes[id]));
    for (NodeId id : e.outputs) m = std::max(m, node_magnitude(g.nodes[id]));
    Nat b = 2 * (e.max_remainder() + m);
    return std::max(b, Nat(16));
}

// Checks, up to `bound`: sum(outputs) + sum(inputs) = sum(outputs) + remainder,
// and that the latter sum is direct within the bound.
inline VerifyResult semantic_verify_edge(const ReductionGraph& g, std::size_t edge,
                                         Nat bound = Nat(0),
                                         std::size_t ceiling = default_table_ceiling) {
    const auto& e = g.edges.at(edge);
    if (bound == 0) bound = default_verify_bound(g, edge);
    std::size_t n = to_size(bound, "verification bound", ceiling - 1) + 1;

    auto sum_sets = [&](const std::vector<NodeId>& ids) {
        std::vector<bool> cur(n, false);
        cur[0] = true;
        for (NodeId id : ids) {
            std::vector<Nat> elems = node_elements_up_to(g.nodes[id], bound, ceiling);
            std::vector<bool> next(n, false);
            for (std::size_t x = 0; x < n; ++x) {
                if (!cur[x]) continue;
                for (const Nat& s : elems) {
                    Nat y = Nat(x) + s;
                    if (y > bound) break;
                    next[static_cast<std::size_t>(y)] = true;
                }
            }
            cur = std::move(next);
        }
        return cur;
    };

    std::vector<bool> a = sum_sets(e.outputs);
    std::vector<bool> b = sum_sets(e.inputs);

    VerifyResult res;
    // left side: A + B within the bound
    std::vector<bool> lhs(n, false);
    std::vector<std::size_t> a_idx, b_idx;
    for (std::size_t x = 0; x < n; ++x) {
        if (a[x]) a_idx.push_back(x);
        if (b[x]) b_idx.push_back(x);
    }
    for (std::size_t x : a_idx)
        for (std::size_t y : b_idx) {
            if (x + y >= n) break;
            lhs[x + y] = true;
        }
    // right side: A + remainder, with representation counts for directness
    std::vector<unsigned> reps(n, 0);
    for (std::size_t x : a_idx)
        for (const Nat& s : e.remainder) {
            Nat y = Nat(x) + s;
            if (y > bound) break;
            ++reps[static_cast<std::size_t>(y)];
        }
    for (std::size_t x = 0; x < n; ++x) {
        bool rhs = reps[x] > 0;
        if (lhs[x] != rhs) {
            res.pass = false;
            res.counterexample = Nat(x);
            res.detail = rhs ? "value outside the input sum appears in the remainder expansion"
                             : "value of the input sum is missing from the remainder expansion";
            return res;
        }
        if (reps[x] > 1) {
            res.pass = false;
            res.counterexample = Nat(x);
            res.detail = "value has " + std::to_string(reps[x]) +
                         " representations; the remainder sum is not direct";
            return res;
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Canonical form and DOT export.

// Serialization that identifies graphs up to node identity and edge kind
// tags: node labels, sorted edge signatures, root label.
inline std::string canonical_form(const ReductionGraph& g) {
    auto edge_sig = [&](const ReductionEdge& e) {
        std::vector<std::string> ins, outs;
        for (NodeId id : e.inputs) ins.push_back(node_label(g.nodes[id]));
        for (NodeId id : e.outputs) outs.push_back(node_label(g.nodes[id]));
        std::sort(ins.begin(), ins.end());
        std::sort(outs.begin(), outs.end());
        std::ostringstream os;
        os << "[";
        for (const auto& s : ins) os << s << ";";
        os << "->";
        for (const auto& s : outs) os << s << ";";
        os << "|";
        for (const Nat& x : e.remainder) os << x << ",";
        os << "]";
        return os.str();
    };
    std::vector<std::string> sigs;
    for (const auto& e : g.edges) sigs.push_back(edge_sig(e));
    std::sort(sigs.begin(), sigs.end());
    std::string out = "root=" + node_label(g.nodes[g.root]) + "\n";
    for (const auto& s : sigs) out += s + "\n";
    return out;
}

// Graphviz rendering: descriptor-labeled nodes, every edge as a point node
// labeled with its weight, arcs input -> edge -> output.
inline std::string to_dot(const ReductionGraph& g, const std::string& name = "reduction") {
    std::ostringstream os;
    os << "digraph " << name << " {\n";
    os << "  rankdir=BT;\n";
    for (NodeId i = 0; i < g.nodes.size(); ++i) {
        os << "  n" << i << " [label=\"" << node_label(g.nodes[i]) << "\"";
        if (i == g.root) os << ", shape=doublecircle";
        else os << ", shape=ellipse";
        os << "];\n";
    }
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const auto& e = g.edges[i];
        os << "  e" << i << " [label=\"O(" << e.weight() << ")\", shape=point, width=0.12];\n";
        for (NodeId id : e.inputs) os << "  n" << id << " -> e" << i << ";\n";
        for (NodeId id : e.outputs) os << "  e" << i << " -> n" << id << ";\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace semired
