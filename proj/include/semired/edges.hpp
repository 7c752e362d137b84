#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"
#include "numbers.hpp"
#include "numcore.hpp"

namespace semired {

// Constructors for the reduction edge catalogue. Each returns an
// EdgeBlueprint carrying the node descriptors it requires; attach with
// GraphBuilder::add_edge.

namespace detail {

inline std::vector<NodeDescriptor> monogenics(const std::vector<Nat>& gens) {
    std::vector<NodeDescriptor> out;
    for (const Nat& g : gens) {
        if (g < 1) throw precondition_error("node generators must be positive");
        out.push_back(Monogenic{g});
    }
    return out;
}

} // namespace detail

// <a1> + ... + <ak> absorbs <b> when b is representable: remainder {0}.
inline EdgeBlueprint linear_edge(const std::vector<Nat>& outputs, const Nat& b) {
    if (outputs.empty()) throw precondition_error("linear edge: no outputs");
    if (b < 1) throw precondition_error("linear edge: input generator must be positive");
    if (!span_contains(GeneratorSet(outputs), b))
        throw precondition_error("linear edge: " + b.str() +
                                 " is not representable by the outputs");
    EdgeBlueprint e;
    e.kind = EdgeKind::linear;
    e.inputs = {Monogenic{b}};
    e.outputs = detail::monogenics(outputs);
    e.remainder = {Nat(0)};
    return e;
}

// <a> + <b> = <a> (+) {b*r : 0 <= r < a/gcd(a,b)}.
inline EdgeBlueprint binary_edge(const Nat& a, const Nat& b) {
    if (a < 1 || b < 1) throw precondition_error("binary edge: generators must be positive");
    EdgeBlueprint e;
    e.kind = EdgeKind::binary;
    e.inputs = {Monogenic{b}};
    e.outputs = {Monogenic{a}};
    Nat w = a / gcd(a, b);
    for (Nat r = 0; r < w; ++r) e.remainder.push_back(b * r);
    return e;
}

// The binary reduction scaled through by k: <ka> + <kb> = <ka> (+) k{b*r}.
inline EdgeBlueprint scaled_binary_edge(const Nat& k, const Nat& a, const Nat& b) {
    if (k < 1) throw precondition_error("scaled binary edge: scale must be positive");
    EdgeBlueprint e = binary_edge(a, b);
    e.kind = EdgeKind::scaled_binary;
    e.inputs = {Monogenic{k * b}};
    e.outputs = {Monogenic{k * a}};
    for (Nat& x : e.remainder) x *= k;
    return e;
}

// <a> + <ha+d> + <ha+2d> + ... + <ha+kd>
//   = <a> (+) {ha*ceil(r/k) + d*r : 0 <= r < a/gcd(a,|d|)}.
inline EdgeBlueprint modified_arithmetic_edge(const Nat& a, const Int& d, const Nat& k,
                                              const Nat& h) {
    if (a < 1 || k < 1 || h < 1)
        throw precondition_error("arithmetic edge: a, k and h must be positive");
    if (d == 0) throw precondition_error("arithmetic edge: difference must be nonzero");
    if (Int(a) + d * Int(k) < 1)
        throw precondition_error("arithmetic edge: a + k*d must be positive");
    std::vector<Nat> ins;
    for (Nat j = 1; j <= k; ++j) {
        Int g = Int(h * a) + d * Int(j);
        if (g < 1)
            throw precondition_error("arithmetic edge: input generator " + g.str() +
                                     " is not positive");
        if (g == Int(a))
            throw precondition_error("arithmetic edge: input generator equals the output");
        ins.push_back(Nat(g));
    }
    Nat w = a / gcd(a, Nat(abs(d)));
    EdgeBlueprint e;
    e.kind = EdgeKind::modified_arithmetic;
    e.inputs = detail::monogenics(ins);
    e.outputs = {Monogenic{a}};
    for (Nat r = 0; r < w; ++r) {
        Int x = Int(h * a) * Int(ceil_div(r, k)) + d * Int(r);
        if (x < 0)
            throw precondition_error("arithmetic edge: remainder entry " + x.str() +
                                     " is negative");
        e.remainder.push_back(Nat(x));
    }
    std::sort(e.remainder.begin(), e.remainder.end());
    return e;
}

// <a> + sum of <ha+jd> over all j >= 1
//   = <a> (+) ({0} u {ha + d*r : 0 < r < a/gcd(a,d)}).
inline EdgeBlueprint infinite_arithmetic_edge(const Nat& a, const Int& d, const Nat& h) {
    if (a < 1 || h < 1)
        throw precondition_error("unbounded arithmetic edge: a and h must be positive");
    if (d < 1)
        throw precondition_error("unbounded arithmetic edge: difference must be positive");
    Nat dn = Nat(d);
    Nat w = a / gcd(a, dn);
    EdgeBlueprint e;
    e.kind = EdgeKind::infinite_arithmetic;
    e.inputs = {ArithmeticFamily{a, d, h, std::nullopt}};
    e.outputs = {Monogenic{a}};
    e.remainder.push_back(Nat(0));
    for (Nat r = 1; r < w; ++r) e.remainder.push_back(h * a + dn * r);
    return e;
}

// <a> + (caller-described inputs) = <a> (+) {a*f(r) + b*r : 0 <= r < a},
// for a residue-indexed adjustment table f with f(0) = 0.
inline EdgeBlueprint residue_edge(const Nat& a, const Nat& b, const std::vector<Int>& f,
                                  std::vector<NodeDescriptor> inputs) {
    if (a < 1 || b < 1) throw precondition_error("residue edge: a and b must be positive");
    if (gcd(a, b) != 1)
        throw precondition_error("residue edge: a and b must be coprime");
    if (Nat(f.size()) != a)
        throw precondition_error("residue edge: table must have one entry per class");
    if (f[0] != 0) throw precondition_error("residue edge: f(0) must be 0");
    if (inputs.empty()) throw precondition_error("residue edge: no inputs");
    EdgeBlueprint e;
    e.kind = EdgeKind::residue;
    e.inputs = std::move(inputs);
    e.outputs = {Monogenic{a}};
    for (std::size_t r = 0; r < f.size(); ++r) {
        Int x = Int(a) * f[r] + Int(b) * Int(r);
        if (x < 0)
            throw precondition_error("residue edge: remainder entry " + x.str() +
                                     " for class " + std::to_string(r) + " is negative");
        e.remainder.push_back(Nat(x));
    }
    std::sort(e.remainder.begin(), e.remainder.end());
    return e;
}

// <a1> + ... + <ak> + <b> = sum of outputs (+) {b*r : 0 <= r < c} with
// c = gcd(outputs) / gcd(outputs, b); requires b*c representable.
inline EdgeBlueprint linear_binary_edge(const std::vector<Nat>& outputs, const Nat& b) {
    if (outputs.empty()) throw precondition_error("linear-binary edge: no outputs");
    if (b < 1)
        throw precondition_error("linear-binary edge: input generator must be positive");
    GeneratorSet outs(outputs);
    Nat c = outs.gcd() / gcd(outs.gcd(), b);
    if (!span_contains(outs, b * c))
        throw precondition_error("linear-binary edge: " + Nat(b * c).str() +
                                 " is not representable by the outputs");
    EdgeBlueprint e;
    e.kind = EdgeKind::linear_binary;
    e.inputs = {Monogenic{b}};
    e.outputs = detail::monogenics(outputs);
    for (Nat r = 0; r < c; ++r) e.remainder.push_back(b * r);
    return e;
}

// <a> + <g1> + ... + <gk> = <a> (+) (class minima of <a, g1, ..., gk> mod a).
inline EdgeBlueprint apery_edge(const Nat& a, const std::vector<Nat>& gens) {
    if (a < 1) throw precondition_error("apery edge: output generator must be positive");
    if (gens.empty()) throw precondition_error("apery edge: no inputs");
    for (const Nat& g : gens)
        if (g == a)
            throw precondition_error("apery edge: input generator equals the output");
    std::vector<Nat> all = gens;
    all.push_back(a);
    GeneratorSet set(all);
    if (set.gcd() != 1)
        throw precondition_error("apery edge: generators must be coprime overall");
    EdgeBlueprint e;
    e.kind = EdgeKind::apery;
    e.inputs = detail::monogenics(gens);
    e.outputs = {Monogenic{a}};
    e.remainder = apery_oracle(set, a);
    std::sort(e.remainder.begin(), e.remainder.end());
    return e;
}

// An edge taken on faith: endpoints and remainder as given.
inline EdgeBlueprint explicit_edge(std::vector<NodeDescriptor> inputs,
                                   std::vector<NodeDescriptor> outputs,
                                   std::vector<Nat> remainder) {
    if (inputs.empty() || outputs.empty())
        throw precondition_error("explicit edge: endpoints must be nonempty");
    if (remainder.empty() || remainder.front() != 0)
        throw precondition_error("explicit edge: remainder must contain 0 first");
    if (!std::is_sorted(remainder.begin(), remainder.end()) ||
        std::adjacent_find(remainder.begin(), remainder.end()) != remainder.end())
        throw precondition_error("explicit edge: remainder must be sorted and distinct");
    EdgeBlueprint e;
    e.kind = EdgeKind::explicit_edge;
    e.inputs = std::move(inputs);
    e.outputs = std::move(outputs);
    e.remainder = std::move(remainder);
    return e;
}

} // namespace semired
