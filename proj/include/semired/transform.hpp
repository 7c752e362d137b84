#pragma once

// Graph rewrites that preserve validity: global and partial scaling,
// composition at a shared node, artificial nodes, and edge enrichment.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "edges.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "numbers.hpp"

namespace semired {

namespace detail {

inline NodeDescriptor scale_descriptor(const NodeDescriptor& d, const Nat& k) {
    if (const auto* m = std::get_if<Monogenic>(&d)) return Monogenic{m->gen * k};
    if (const auto* s = std::get_if<ScaledRange>(&d)) return ScaledRange{s->step * k, s->count};
    if (const auto* sp = std::get_if<SemigroupSpan>(&d)) {
        std::vector<Nat> gens;
        for (const auto& gval : sp->gens.values()) gens.push_back(gval * k);
        return SemigroupSpan{GeneratorSet(gens)};
    }
    if (const auto* ex = std::get_if<ExplicitFinite>(&d)) {
        std::vector<Nat> elems;
        for (const auto& e : ex->elements) elems.push_back(e * k);
        return ExplicitFinite{elems};
    }
    const auto& f = std::get<ArithmeticFamily>(d);
    return ArithmeticFamily{f.base * k, f.diff * Int(k), f.h, f.count};
}

inline std::vector<Nat> scale_values(const std::vector<Nat>& values, const Nat& k) {
    std::vector<Nat> out;
    out.reserve(values.size());
    for (const auto& v : values) out.push_back(v * k);
    return out;
}

// Blueprint equality up to endpoint order; used to collapse coinciding
// edges when two graphs are merged as sets.
inline bool same_edge(const EdgeBlueprint& x, const EdgeBlueprint& y) {
    if (x.remainder != y.remainder) return false;
    auto key = [](const std::vector<NodeDescriptor>& v) {
        std::vector<std::string> labels;
        for (const auto& d : v) labels.push_back(node_label(d));
        std::sort(labels.begin(), labels.end());
        return labels;
    };
    return key(x.inputs) == key(y.inputs) && key(x.outputs) == key(y.outputs);
}

inline ReductionGraph rebuild(const std::vector<NodeDescriptor>& nodes,
                              const std::vector<ReductionEdge>& edges, NodeId root) {
    ReductionGraph g;
    g.nodes = nodes;
    g.edges = edges;
    g.root = root;
    for (std::size_t i = 0; i + 1 < g.nodes.size(); ++i)
        for (std::size_t j = i + 1; j < g.nodes.size(); ++j)
            if (g.nodes[i] == g.nodes[j])
                throw precondition_error("scaling makes node " + node_label(g.nodes[i]) +
                                         " appear twice; the result would merge distinct nodes");
    auto report = validate(g);
    if (!report.ok())
        throw precondition_error("transform produced an invalid graph: " + report.errors.front());
    return g;
}

}  // namespace detail

// Multiply every node and every remainder by k.  Edge weights are unchanged,
// so the balance is multiplied by k as well.
inline ReductionGraph scale_graph(const ReductionGraph& g, const Nat& k) {
    if (k < 1) throw precondition_error("scale factor must be at least 1");
    std::vector<NodeDescriptor> nodes;
    nodes.reserve(g.nodes.size());
    for (const auto& d : g.nodes) nodes.push_back(detail::scale_descriptor(d, k));
    std::vector<ReductionEdge> edges = g.edges;
    for (auto& e : edges) e.remainder = detail::scale_values(e.remainder, k);
    return detail::rebuild(nodes, edges, g.root);
}

// Multiply a chosen set of nodes by k, adjusting only the edges that touch
// them.  Three shapes of contact are supported:
//   - the whole neighborhood of an edge (all inputs and all outputs): the
//     remainder is multiplied by k;
//   - all inputs of a binary, scaled-binary, arithmetic or infinite
//     arithmetic edge and none of its outputs: allowed when k is coprime to
//     the edge weight, and the remainder is multiplied by k;
//   - the input of a linear edge together with any subset of its outputs:
//     the remainder stays {0}.
// Any other contact pattern is rejected.
inline ReductionGraph partial_scale(const ReductionGraph& g, const std::vector<NodeId>& ids,
                                    const Nat& k) {
    if (k < 1) throw precondition_error("scale factor must be at least 1");
    std::set<NodeId> chosen(ids.begin(), ids.end());
    for (NodeId id : chosen)
        if (id >= g.nodes.size()) throw precondition_error("partial scale: node id out of range");

    std::vector<ReductionEdge> edges = g.edges;
    for (std::size_t idx = 0; idx < edges.size(); ++idx) {
        auto& e = edges[idx];
        auto in_set = [&](NodeId id) { return chosen.count(id) != 0; };
        std::size_t ins = static_cast<std::size_t>(
            std::count_if(e.inputs.begin(), e.inputs.end(), in_set));
        std::size_t outs = static_cast<std::size_t>(
            std::count_if(e.outputs.begin(), e.outputs.end(), in_set));
        if (ins == 0 && outs == 0) continue;
        std::string where = "edge " + std::to_string(idx) + " (" + to_string(e.kind) + ")";
        if (ins == e.inputs.size() && outs == e.outputs.size()) {
            e.remainder = detail::scale_values(e.remainder, k);
            continue;
        }
        if (ins == e.inputs.size() && outs == 0) {
            bool eligible = e.kind == EdgeKind::binary || e.kind == EdgeKind::scaled_binary ||
                            e.kind == EdgeKind::modified_arithmetic ||
                            e.kind == EdgeKind::infinite_arithmetic;
            if (!eligible)
                throw precondition_error("partial scale: " + where +
                                         " cannot be scaled through its inputs alone");
            if (gcd(k, Nat(e.weight())) != 1)
                throw precondition_error("partial scale: " + where +
                                         " needs the factor to be coprime to the edge weight " +
                                         std::to_string(e.weight()));
            e.remainder = detail::scale_values(e.remainder, k);
            continue;
        }
        if (e.kind == EdgeKind::linear && ins == e.inputs.size()) continue;
        throw precondition_error("partial scale: " + where +
                                 " touches the chosen nodes in an unsupported pattern");
    }

    std::vector<NodeDescriptor> nodes = g.nodes;
    for (NodeId id : chosen) nodes[id] = detail::scale_descriptor(nodes[id], k);
    return detail::rebuild(nodes, edges, g.root);
}

// Merge two graphs at a monogenic node of the first.  The first graph is
// scaled by the root of the second, the second by the generator of the
// chosen node, and the two copies of the now-equal node are identified.
inline ReductionGraph compose(const ReductionGraph& g, const ReductionGraph& other, NodeId at) {
    if (at >= g.nodes.size()) throw precondition_error("compose: node id out of range");
    const auto* mono = std::get_if<Monogenic>(&g.nodes[at]);
    if (!mono)
        throw precondition_error("compose: node " + node_label(g.nodes[at]) +
                                 " is not monogenic");
    Nat a = mono->gen;
    Nat a2 = other.root_generator();
    ReductionGraph left = scale_graph(g, a2);
    ReductionGraph right = scale_graph(other, a);

    GraphBuilder builder;
    std::vector<EdgeBlueprint> seen;
    auto absorb = [&](const ReductionGraph& part) {
        for (const auto& d : part.nodes) builder.add_node(d);
        for (std::size_t i = 0; i < part.edges.size(); ++i) {
            EdgeBlueprint b = blueprint_of(part, i);
            bool duplicate = false;
            for (const auto& prior : seen)
                if (detail::same_edge(prior, b)) {
                    duplicate = true;
                    break;
                }
            if (duplicate) continue;
            builder.add_edge(b);
            seen.push_back(std::move(b));
        }
    };
    absorb(left);
    absorb(right);
    builder.set_root(left.nodes[left.root]);
    ReductionGraph merged = builder.finish();
    auto report = validate(merged);
    if (!report.ok())
        throw precondition_error("compose: the merged graph is invalid: " +
                                 report.errors.front());
    return merged;
}

// Add one node whose generator already lies in the span of the existing
// monogenic nodes, attached through the given edge.  The edge may only
// introduce that one node; every other endpoint must already be present.
inline ReductionGraph add_artificial_node(const ReductionGraph& g, const Nat& b,
                                          const EdgeBlueprint& attach) {
    if (b < 1) throw precondition_error("artificial node: generator must be at least 1");
    std::vector<Nat> gens;
    for (const auto& d : g.nodes)
        if (const auto* m = std::get_if<Monogenic>(&d)) gens.push_back(m->gen);
    if (gens.empty() || !span_contains(GeneratorSet(gens), b))
        throw precondition_error("artificial node: " + b.str() +
                                 " is not in the span of the existing monogenic nodes");
    NodeDescriptor added = Monogenic{b};
    bool mentions_added = false;
    auto check_endpoint = [&](const NodeDescriptor& d) {
        if (d == added) {
            mentions_added = true;
            return;
        }
        if (!find_node(g, d))
            throw precondition_error("artificial node: attach edge endpoint " + node_label(d) +
                                     " is not an existing node");
    };
    for (const auto& d : attach.inputs) check_endpoint(d);
    for (const auto& d : attach.outputs) check_endpoint(d);
    if (!mentions_added)
        throw precondition_error("artificial node: the attach edge does not mention <" +
                                 b.str() + ">");
    if (find_node(g, added))
        throw precondition_error("artificial node: <" + b.str() + "> is already a node");

    GraphBuilder builder;
    for (const auto& d : g.nodes) builder.add_node(d);
    for (std::size_t i = 0; i < g.edges.size(); ++i) builder.add_edge(blueprint_of(g, i));
    builder.add_edge(attach);
    ReductionGraph out = builder.finish();
    auto report = validate(out);
    if (!report.ok())
        throw precondition_error("artificial node: the extended graph is invalid: " +
                                 report.errors.front());
    return out;
}

// Replace one edge by a heavier-connected version of itself: the new edge
// must keep the same weight, consume at least the old inputs, and output
// into a subset of the old outputs.  Endpoints the old edge did not have
// are added as nodes when necessary.
inline ReductionGraph enrich(const ReductionGraph& g, std::size_t edge_id,
                             const EdgeBlueprint& replacement) {
    if (edge_id >= g.edges.size()) throw precondition_error("enrich: edge id out of range");
    const auto& old = g.edges[edge_id];
    if (replacement.remainder.size() != old.remainder.size())
        throw precondition_error("enrich: replacement weight " +
                                 std::to_string(replacement.remainder.size()) +
                                 " differs from the edge weight " +
                                 std::to_string(old.remainder.size()));
    auto old_blueprint = blueprint_of(g, edge_id);
    auto contains = [](const std::vector<NodeDescriptor>& haystack, const NodeDescriptor& d) {
        return std::find(haystack.begin(), haystack.end(), d) != haystack.end();
    };
    for (const auto& d : old_blueprint.inputs)
        if (!contains(replacement.inputs, d))
            throw precondition_error("enrich: replacement drops input " + node_label(d));
    for (const auto& d : replacement.outputs)
        if (!contains(old_blueprint.outputs, d))
            throw precondition_error("enrich: replacement adds output " + node_label(d));

    GraphBuilder builder;
    for (const auto& d : g.nodes) builder.add_node(d);
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        if (i == edge_id)
            builder.add_edge(replacement);
        else
            builder.add_edge(blueprint_of(g, i));
    }
    builder.set_root(g.nodes[g.root]);
    ReductionGraph out = builder.finish();
    auto report = validate(out);
    if (!report.ok())
        throw precondition_error("enrich: the rewritten graph is invalid: " +
                                 report.errors.front());
    return out;
}

}  // namespace semired
