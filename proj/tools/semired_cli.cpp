// Command line frontend: solve .rg scripts, query the sieve oracle, verify
// edge semantics, instantiate the built-in families, export DOT drawings.
//
// Exit codes: 0 success, 1 script parse error, 2 invalid input (failed
// preconditions or graph validation), 3 graph not total, 4 a cross-check
// or closed form did not match.

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <semired/semired.hpp>

using namespace semired;
using nlohmann::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_parse = 1;
constexpr int exit_invalid = 2;
constexpr int exit_not_total = 3;
constexpr int exit_mismatch = 4;

// ---------------------------------------------------------------- utilities

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw precondition_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

Nat parse_nat(const std::string& text, const std::string& what) {
    std::string t = text;
    while (!t.empty() && (t.front() == ' ')) t.erase(t.begin());
    while (!t.empty() && (t.back() == ' ')) t.pop_back();
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
        throw precondition_error(what + ": expected a nonnegative integer, got '" +
                                 text + "'");
    return Nat(t);
}

std::vector<Nat> parse_nat_list(const std::string& text, char sep,
                                const std::string& what) {
    std::vector<Nat> out;
    for (const std::string& part : split(text, sep)) out.push_back(parse_nat(part, what));
    return out;
}

json nat_strings(const std::vector<Nat>& xs) {
    json a = json::array();
    for (const Nat& x : xs) a.push_back(x.str());
    return a;
}

json poly_terms(const Poly& p) {
    json a = json::array();
    for (const auto& [e, c] : p.terms()) a.push_back({Nat(e).str(), Int(c).str()});
    return a;
}

std::string poly_text(const Poly& p) {
    if (p.terms().empty()) return "0";
    std::string s;
    for (const auto& [e, c] : p.terms()) {
        if (!s.empty()) s += " + ";
        std::string coeff = Int(c).str();
        if (e == 0) {
            s += coeff;
        } else {
            if (coeff != "1") s += coeff + "*";
            s += "X^" + Nat(e).str();
        }
    }
    return s;
}

std::string joined(const std::vector<Nat>& xs, const char* sep = " ") {
    std::string s;
    for (const Nat& x : xs) {
        if (!s.empty()) s += sep;
        s += x.str();
    }
    return s;
}

// Generators spanning the analyzed semigroup: the root plus the nonzero
// Apéry elements. Not minimal, but exact.
GeneratorSet spanning_generators(const AnalysisReport& rep) {
    std::vector<Nat> gens{rep.root_generator};
    for (const Nat& x : rep.apery)
        if (x != 0) gens.push_back(x);
    return GeneratorSet(std::move(gens));
}

// ------------------------------------------------------------ report output

struct OracleBlock {
    GeneratorSet generators;
    Int frobenius{0};
    Nat genus{0};
    std::vector<Nat> apery; // sorted ascending
    bool match = false;
};

OracleBlock oracle_compare(const AnalysisReport& rep, const GeneratorSet& gens) {
    OracleBlock block;
    block.generators = gens;
    std::vector<Nat> ap = apery_oracle(gens, rep.root_generator);
    std::sort(ap.begin(), ap.end());
    Nat genus = 0;
    Nat best = 0;
    for (const Nat& x : ap) {
        genus += x / rep.root_generator;
        best = std::max(best, x);
    }
    block.apery = std::move(ap);
    block.frobenius = Int(best) - Int(rep.root_generator);
    block.genus = genus;
    block.match = block.apery == rep.apery && block.frobenius == rep.frobenius &&
                  block.genus == rep.genus;
    return block;
}

json report_json(const AnalysisReport& rep, const Nat& implied_root,
                 const OracleBlock* oracle) {
    json j;
    j["schema"] = 1;
    j["root_generator"] = rep.root_generator.str();
    j["implied_root"] = implied_root.str();
    j["balance"] = rep.balance.str();
    j["total"] = rep.total;
    j["frobenius"] = rep.frobenius.str();
    j["genus"] = rep.genus.str();
    j["asymmetry"] = rep.asymmetry.str();
    j["symmetry"] = to_string(rep.classification);
    j["apery"] = nat_strings(rep.apery);
    j["hilbert"] = {{"numerator", poly_terms(rep.hilbert.numerator)},
                    {"root_exponent", rep.hilbert.root.str()}};
    if (rep.gap_poly) j["gap_polynomial"] = poly_terms(*rep.gap_poly);
    if (rep.power_sums) j["power_sums"] = nat_strings(*rep.power_sums);
    if (oracle) {
        j["oracle"] = {{"generators", nat_strings(oracle->generators.values())},
                       {"frobenius", oracle->frobenius.str()},
                       {"genus", oracle->genus.str()},
                       {"apery", nat_strings(oracle->apery)},
                       {"match", oracle->match}};
    }
    return j;
}

void print_report_text(std::ostream& os, const AnalysisReport& rep,
                       const Nat& implied_root, const OracleBlock* oracle) {
    os << "root generator: " << rep.root_generator.str() << "\n";
    os << "implied root:   " << implied_root.str() << "\n";
    os << "balance:        " << rep.balance.str() << "\n";
    os << "frobenius:      " << rep.frobenius.str() << "\n";
    os << "genus:          " << rep.genus.str() << "\n";
    os << "asymmetry:      " << rep.asymmetry.str() << "\n";
    os << "symmetry:       " << to_string(rep.classification) << "\n";
    os << "apery:          " << joined(rep.apery) << "\n";
    os << "hilbert:        (" << poly_text(rep.hilbert.numerator) << ") / (1 - X^"
       << rep.hilbert.root.str() << ")\n";
    if (rep.gap_poly) os << "gap polynomial: " << poly_text(*rep.gap_poly) << "\n";
    if (rep.power_sums) {
        os << "power sums:    ";
        for (std::size_t p = 0; p < rep.power_sums->size(); ++p)
            os << " S_" << p << "=" << (*rep.power_sums)[p].str();
        os << "\n";
    }
    if (oracle) {
        os << "oracle:         frobenius " << oracle->frobenius.str() << ", genus "
           << oracle->genus.str() << ", apery "
           << (oracle->apery == rep.apery ? "agrees" : "differs") << " -> "
           << (oracle->match ? "match" : "MISMATCH") << "\n";
    }
}

// ----------------------------------------------------------- script loading

struct LoadedScript {
    dsl::Script script;
    dsl::Assembly assembly;
};

// Parse and assemble, translating failures into exit codes.
int load_script(const std::string& path, LoadedScript& out) {
    std::string text;
    try {
        text = read_input(path);
    } catch (const precondition_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_invalid;
    }
    try {
        out.script = dsl::parse(text);
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return exit_parse;
    }
    try {
        out.assembly = dsl::assemble(out.script);
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return exit_parse;
    } catch (const precondition_error& e) {
        std::cerr << "invalid script: " << e.what() << "\n";
        return exit_invalid;
    }
    return exit_ok;
}

int report_problems(const std::vector<std::string>& problems) {
    for (const std::string& p : problems) std::cerr << "invalid graph: " << p << "\n";
    return problems.empty() ? exit_ok : exit_invalid;
}

// ------------------------------------------------------------------ solve

int cmd_solve(const std::string& file, std::optional<unsigned long> power_sums,
              bool as_json, std::optional<Nat> verify_bound) {
    LoadedScript loaded;
    if (int rc = load_script(file, loaded)) return rc;
    if (int rc = report_problems(loaded.assembly.problems)) return rc;

    AnalysisOptions opts;
    opts.gap_polynomial = true;
    opts.power_sums = power_sums;
    AnalysisReport rep;
    try {
        rep = analyze(loaded.assembly.graph, opts);
    } catch (const not_total_error& e) {
        std::cerr << "not total: " << e.what() << "\n";
        return exit_not_total;
    }

    std::optional<OracleBlock> oracle;
    GeneratorSet gens = loaded.assembly.declared_generators
                            ? *loaded.assembly.declared_generators
                            : spanning_generators(rep);
    if (loaded.assembly.declared_generators || verify_bound)
        oracle = oracle_compare(rep, gens);

    bool series_ok = true;
    Nat series_bound = 0;
    if (verify_bound) {
        series_bound = *verify_bound;
        std::vector<bool> series = expand_01_series(rep.hilbert, series_bound);
        std::vector<bool> member = membership_table(gens, series_bound);
        for (std::size_t x = 0; x < series.size(); ++x) {
            if (series[x] != member[x]) {
                series_ok = false;
                std::cerr << "series mismatch at " << x << ": series says "
                          << (series[x] ? "member" : "gap") << ", oracle says "
                          << (member[x] ? "member" : "gap") << "\n";
                break;
            }
        }
    }

    if (as_json) {
        json j = report_json(rep, loaded.assembly.implied_root,
                             oracle ? &*oracle : nullptr);
        if (verify_bound)
            j["series_check"] = {{"bound", series_bound.str()}, {"match", series_ok}};
        std::cout << j.dump(2) << "\n";
    } else {
        print_report_text(std::cout, rep, loaded.assembly.implied_root,
                          oracle ? &*oracle : nullptr);
        if (verify_bound)
            std::cout << "series check:   "
                      << (series_ok ? "match" : "MISMATCH") << " up to "
                      << series_bound.str() << "\n";
    }

    if (oracle && !oracle->match) return exit_mismatch;
    if (!series_ok) return exit_mismatch;
    return exit_ok;
}

// ------------------------------------------------------------------ oracle

int cmd_oracle(const std::string& gens_text, const std::string& apery_text,
               std::optional<unsigned long> power_sums, bool as_json) {
    GeneratorSet gens;
    Nat modulus;
    try {
        gens = GeneratorSet(parse_nat_list(gens_text, ',', "--gens"));
        modulus = apery_text.empty() ? gens.least() : parse_nat(apery_text, "--apery");
    } catch (const precondition_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return exit_invalid;
    }

    std::vector<Nat> ap;
    GapData gap_data;
    std::vector<Nat> sums;
    try {
        ap = apery_oracle(gens, modulus);
        gap_data = gaps_oracle(gens);
        if (power_sums) sums = power_sum_oracle(gens, *power_sums);
    } catch (const not_numerical_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return exit_invalid;
    } catch (const precondition_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return exit_invalid;
    }
    std::sort(ap.begin(), ap.end());
    Int asym = asymmetry_value(gap_data.frobenius, gap_data.genus);

    if (as_json) {
        json j;
        j["schema"] = 1;
        j["generators"] = nat_strings(gens.values());
        j["apery_modulus"] = modulus.str();
        j["apery"] = nat_strings(ap);
        j["frobenius"] = gap_data.frobenius.str();
        j["genus"] = gap_data.genus.str();
        j["asymmetry"] = asym.str();
        j["symmetry"] = to_string(classify_symmetry(gap_data.frobenius, gap_data.genus));
        if (power_sums) j["power_sums"] = nat_strings(sums);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "generators: " << joined(gens.values()) << "\n";
        std::cout << "frobenius:  " << gap_data.frobenius.str() << "\n";
        std::cout << "genus:      " << gap_data.genus.str() << "\n";
        std::cout << "asymmetry:  " << asym.str() << "\n";
        std::cout << "symmetry:   "
                  << to_string(classify_symmetry(gap_data.frobenius, gap_data.genus))
                  << "\n";
        std::cout << "apery (mod " << modulus.str() << "): " << joined(ap) << "\n";
        if (power_sums) {
            std::cout << "power sums:";
            for (std::size_t p = 0; p < sums.size(); ++p)
                std::cout << " S_" << p << "=" << sums[p].str();
            std::cout << "\n";
        }
    }
    return exit_ok;
}

// ------------------------------------------------------------------ verify

int cmd_verify(const std::string& file, const std::string& bound_text) {
    LoadedScript loaded;
    if (int rc = load_script(file, loaded)) return rc;
    if (int rc = report_problems(loaded.assembly.problems)) return rc;

    Nat bound = 0;
    if (!bound_text.empty()) {
        try {
            bound = parse_nat(bound_text, "--bound");
        } catch (const precondition_error& e) {
            std::cerr << "invalid input: " << e.what() << "\n";
            return exit_invalid;
        }
    }

    const ReductionGraph& g = loaded.assembly.graph;
    bool all_pass = true;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        VerifyResult res = semantic_verify_edge(g, i, bound);
        std::cout << "edge " << i << " (" << to_string(g.edges[i].kind) << ", weight "
                  << g.edges[i].weight() << "): " << (res.pass ? "pass" : "FAIL");
        if (!res.pass) {
            all_pass = false;
            if (res.counterexample)
                std::cout << " at " << res.counterexample->str();
            if (!res.detail.empty()) std::cout << " (" << res.detail << ")";
        }
        std::cout << "\n";
    }

    AnalysisReport rep;
    try {
        rep = analyze(g);
    } catch (const not_total_error& e) {
        std::cerr << "not total: " << e.what() << "\n";
        return exit_not_total;
    }

    GeneratorSet gens = loaded.assembly.declared_generators
                            ? *loaded.assembly.declared_generators
                            : spanning_generators(rep);
    OracleBlock oracle = oracle_compare(rep, gens);
    std::cout << "oracle cross-check (generators " << joined(gens.values(), ", ")
              << "): " << (oracle.match ? "pass" : "FAIL") << "\n";
    if (!oracle.match) {
        std::cout << "  graph:  F=" << rep.frobenius.str() << " g=" << rep.genus.str()
                  << " apery " << joined(rep.apery) << "\n";
        std::cout << "  oracle: F=" << oracle.frobenius.str() << " g="
                  << oracle.genus.str() << " apery " << joined(oracle.apery) << "\n";
    }

    if (!all_pass || !oracle.match) return exit_mismatch;
    std::cout << "all checks passed\n";
    return exit_ok;
}

// ------------------------------------------------------------------ family

using ParamMap = std::map<std::string, std::string>;

// Parse "k=v,k=v"; list values use ':' between numbers.
ParamMap parse_params(const std::string& text) {
    ParamMap out;
    if (text.empty()) return out;
    for (const std::string& part : split(text, ',')) {
        auto eq = part.find('=');
        if (eq == std::string::npos)
            throw precondition_error("--params: expected key=value, got '" + part + "'");
        std::string key = part.substr(0, eq);
        if (out.count(key)) throw precondition_error("--params: repeated key " + key);
        out[key] = part.substr(eq + 1);
    }
    return out;
}

const std::string& need(const ParamMap& p, const std::string& key) {
    auto it = p.find(key);
    if (it == p.end()) throw precondition_error("missing parameter " + key);
    return it->second;
}

std::string get_or(const ParamMap& p, const std::string& key, const std::string& dflt) {
    auto it = p.find(key);
    return it == p.end() ? dflt : it->second;
}

unsigned long parse_ulong(const std::string& text, const std::string& what) {
    Nat n = parse_nat(text, what);
    return n.convert_to<unsigned long>();
}

struct FamilyOutput {
    std::vector<FamilyInstance> instances; // usually one; two for the scaled pair
};

FamilyOutput build_family(const std::string& name, const ParamMap& p) {
    FamilyOutput out;
    auto nat = [&](const char* k) { return parse_nat(need(p, k), k); };
    auto ul = [&](const char* k) { return parse_ulong(need(p, k), k); };
    auto list = [&](const char* k) { return parse_nat_list(need(p, k), ':', k); };

    if (name == "geometric") {
        out.instances.push_back(geometric(nat("a"), nat("b"), ul("n")));
    } else if (name == "composed-geometric") {
        out.instances.push_back(composed_geometric(nat("a"), nat("b"), nat("c"),
                                                   nat("d"), ul("n"), ul("m")));
    } else if (name == "compound") {
        out.instances.push_back(compound(list("a"), list("b")));
    } else if (name == "special-triplet") {
        out.instances.push_back(special_triplet(nat("a"), nat("b"), nat("c")));
    } else if (name == "fibonacci-triplet") {
        out.instances.push_back(fibonacci_triplet(ul("i"), ul("k")));
    } else if (name == "telescopic") {
        out.instances.push_back(telescopic(list("sequence")));
    } else if (name == "triangular") {
        out.instances.push_back(triangular(ul("n")));
    } else if (name == "tetrahedral-mod6") {
        out.instances.push_back(tetrahedral_mod6(ul("n")));
    } else if (name == "extended-triangular") {
        std::optional<unsigned long> povr, qovr;
        if (p.count("p")) povr = parse_ulong(p.at("p"), "p");
        if (p.count("q")) qovr = parse_ulong(p.at("q"), "q");
        out.instances.push_back(extended_triangular(ul("n"), ul("k"), povr, qovr));
    } else if (name == "arith-geo-sums") {
        out.instances.push_back(
            arith_geo_sums(nat("a"), nat("b"), nat("d"), ul("n"), ul("variant")));
    } else if (name == "shifted-powers-of-two") {
        out.instances.push_back(shifted_powers_of_two(nat("n"), ul("k")));
    } else if (name == "divisor-function") {
        out.instances.push_back(divisor_function(nat("n"), ul("t")));
    } else if (name == "almost-divisible") {
        std::string v = need(p, "variant");
        if (v != "le" && v != "ge")
            throw precondition_error("variant must be le or ge, got " + v);
        out.instances.push_back(almost_divisible(
            nat("n"), v == "le" ? Divisibility::at_most : Divisibility::at_least));
    } else if (name == "brauer-shockley") {
        BrauerShockleyPair pair = brauer_shockley(list("generators"), nat("d"));
        out.instances.push_back(std::move(pair.scaled));
        out.instances.push_back(std::move(pair.reduced));
    } else {
        throw precondition_error("unknown family: " + name);
    }
    return out;
}

json instance_json(const FamilyInstance& inst, const AnalysisReport& rep) {
    Nat implied = 1;
    for (const auto& e : inst.graph.edges) implied *= Nat(e.weight());
    json j = report_json(rep, implied, nullptr);
    j["family"] = inst.family;
    json params;
    for (const auto& [k, v] : inst.params) params[k] = v;
    j["params"] = params;
    j["generators"] = nat_strings(inst.generators.values());
    if (inst.closed_form_frobenius) {
        j["closed_form_frobenius"] = inst.closed_form_frobenius->str();
        j["closed_form_match"] = *inst.closed_form_frobenius == rep.frobenius;
    }
    return j;
}

int report_instance(const FamilyInstance& inst, bool as_json) {
    AnalysisOptions opts;
    opts.gap_polynomial = true;
    AnalysisReport rep = analyze(inst.graph, opts);
    bool closed_ok =
        !inst.closed_form_frobenius || *inst.closed_form_frobenius == rep.frobenius;

    if (as_json) {
        std::cout << instance_json(inst, rep).dump(2) << "\n";
    } else {
        std::cout << "family:         " << inst.family << "\n";
        for (const auto& [k, v] : inst.params)
            std::cout << "  " << k << " = " << v << "\n";
        std::cout << "generators:     " << joined(inst.generators.values(), ", ")
                  << "\n";
        Nat implied = 1;
        for (const auto& e : inst.graph.edges) implied *= Nat(e.weight());
        print_report_text(std::cout, rep, implied, nullptr);
        if (inst.closed_form_frobenius)
            std::cout << "closed form:    " << inst.closed_form_frobenius->str()
                      << (closed_ok ? " (matches)" : " (MISMATCH)") << "\n";
    }
    return closed_ok ? exit_ok : exit_mismatch;
}

// One axis of a grid: a parameter with the values it sweeps.
struct GridAxis {
    std::string key;
    std::vector<std::string> values;
};

// "n=1..20,k=3..8,variant=le" -> axes in the order written, values ascending.
std::vector<GridAxis> parse_grid(const std::string& text) {
    std::vector<GridAxis> axes;
    for (const std::string& part : split(text, ',')) {
        auto eq = part.find('=');
        if (eq == std::string::npos)
            throw precondition_error("--grid: expected key=value or key=lo..hi, got '" +
                                     part + "'");
        GridAxis axis;
        axis.key = part.substr(0, eq);
        std::string value = part.substr(eq + 1);
        auto dots = value.find("..");
        if (dots == std::string::npos) {
            axis.values.push_back(value);
        } else {
            Nat lo = parse_nat(value.substr(0, dots), axis.key);
            Nat hi = parse_nat(value.substr(dots + 2), axis.key);
            if (hi < lo) throw precondition_error("--grid: empty range for " + axis.key);
            for (Nat v = lo; v <= hi; ++v) axis.values.push_back(v.str());
        }
        axes.push_back(std::move(axis));
    }
    if (axes.empty()) throw precondition_error("--grid: no axes");
    return axes;
}

struct GridResult {
    std::string label;
    int code = exit_ok;
    std::string note;
};

GridResult run_grid_instance(const std::string& name, const ParamMap& params) {
    GridResult res;
    std::string label;
    for (const auto& [k, v] : params) {
        if (!label.empty()) label += ", ";
        label += k + "=" + v;
    }
    res.label = label;
    try {
        FamilyOutput out = build_family(name, params);
        for (const FamilyInstance& inst : out.instances) {
            AnalysisReport rep = analyze(inst.graph);
            if (inst.closed_form_frobenius &&
                *inst.closed_form_frobenius != rep.frobenius) {
                res.code = exit_mismatch;
                res.note = "closed form " + inst.closed_form_frobenius->str() +
                           " != graph " + rep.frobenius.str();
                return res;
            }
            res.note = "F=" + rep.frobenius.str() + " g=" + Nat(rep.genus).str();
        }
    } catch (const precondition_error& e) {
        res.code = exit_invalid;
        res.note = e.what();
    } catch (const not_total_error& e) {
        res.code = exit_not_total;
        res.note = e.what();
    } catch (const semired_error& e) {
        res.code = exit_mismatch;
        res.note = e.what();
    }
    return res;
}

int cmd_family_grid(const std::string& name, const std::string& grid_text,
                    bool as_json) {
    std::vector<GridAxis> axes;
    try {
        axes = parse_grid(grid_text);
    } catch (const precondition_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return exit_invalid;
    }

    // Cartesian product, first axis outermost: deterministic order.
    std::vector<ParamMap> combos;
    std::vector<std::size_t> idx(axes.size(), 0);
    for (;;) {
        ParamMap p;
        for (std::size_t i = 0; i < axes.size(); ++i)
            p[axes[i].key] = axes[i].values[idx[i]];
        combos.push_back(std::move(p));
        std::size_t i = axes.size();
        while (i > 0) {
            --i;
            if (++idx[i] < axes[i].values.size()) break;
            idx[i] = 0;
            if (i == 0) goto done;
        }
    }
done:;

    // Evaluate in parallel, report in order.
    std::vector<GridResult> results(combos.size());
    std::atomic<std::size_t> next{0};
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, combos.size() ? combos.size() : 1);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= combos.size()) return;
                results[i] = run_grid_instance(name, combos[i]);
            }
        });
    }
    for (auto& t : pool) t.join();

    std::size_t pass = 0, precond = 0, mismatch = 0;
    int worst = exit_ok;
    json items = json::array();
    for (const GridResult& r : results) {
        const char* status = r.code == exit_ok          ? "pass"
                             : r.code == exit_invalid   ? "precondition"
                             : r.code == exit_not_total ? "not-total"
                                                        : "mismatch";
        if (r.code == exit_ok) ++pass;
        else if (r.code == exit_invalid) ++precond;
        else ++mismatch;
        worst = std::max(worst, r.code);
        if (as_json) {
            items.push_back({{"params", r.label}, {"status", status}, {"note", r.note}});
        } else {
            std::cout << r.label << ": " << status;
            if (!r.note.empty()) std::cout << " (" << r.note << ")";
            std::cout << "\n";
        }
    }
    if (as_json) {
        json j;
        j["schema"] = 1;
        j["family"] = name;
        j["instances"] = items;
        j["summary"] = {{"pass", pass},
                        {"precondition", precond},
                        {"mismatch", mismatch},
                        {"total", combos.size()}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << combos.size() << " instances: " << pass << " pass, " << precond
                  << " precondition, " << mismatch << " mismatch\n";
    }
    return worst;
}

int cmd_family(const std::string& name, const std::string& params_text,
               const std::string& grid_text, bool as_json) {
    if (!grid_text.empty()) return cmd_family_grid(name, grid_text, as_json);
    try {
        FamilyOutput out = build_family(name, parse_params(params_text));
        int rc = exit_ok;
        for (const FamilyInstance& inst : out.instances)
            rc = std::max(rc, report_instance(inst, as_json));
        return rc;
    } catch (const not_total_error& e) {
        std::cerr << "not total: " << e.what() << "\n";
        return exit_not_total;
    } catch (const precondition_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return exit_invalid;
    }
}

// -------------------------------------------------------------- export-dot

int cmd_export_dot(const std::string& file) {
    LoadedScript loaded;
    if (int rc = load_script(file, loaded)) return rc;
    int rc = report_problems(loaded.assembly.problems);
    // Still print the drawing for an invalid graph; the diagnostics went to
    // stderr and the exit code carries the failure.
    std::cout << to_dot(loaded.assembly.graph);
    return rc;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"reduction graph toolkit for numerical semigroups"};
    app.require_subcommand(1);

    std::string file;
    std::string gens_text, apery_text, bound_text, params_text, grid_text, family_name;
    std::optional<unsigned long> power_sums;
    std::optional<std::string> verify_bound_text;
    bool as_json = false;

    CLI::App* solve = app.add_subcommand("solve", "analyze a .rg script");
    solve->add_option("file", file, "script path, or - for stdin")->required();
    solve->add_option("--power-sums", power_sums, "include gap power sums S_0..S_k");
    solve->add_flag("--json", as_json, "machine readable output");
    solve->add_option("--verify-bound", verify_bound_text,
                      "cross-check the series against the oracle up to this bound");

    CLI::App* oracle = app.add_subcommand("oracle", "sieve facts for generators");
    oracle->add_option("--gens", gens_text, "comma separated generators")->required();
    oracle->add_option("--apery", apery_text, "apery modulus (default: least generator)");
    oracle->add_option("--power-sums", power_sums, "include gap power sums S_0..S_k");
    oracle->add_flag("--json", as_json, "machine readable output");

    CLI::App* verify = app.add_subcommand("verify", "semantic edge checks plus oracle");
    verify->add_option("file", file, "script path, or - for stdin")->required();
    verify->add_option("--bound", bound_text, "verification bound per edge");

    CLI::App* family = app.add_subcommand("family", "instantiate a built-in family");
    family->add_option("name", family_name, "family name (kebab-case)")->required();
    family->add_option("--params", params_text, "k=v pairs, ':' separates list values");
    family->add_option("--grid", grid_text, "sweep spec, e.g. n=1..20,k=3..8");
    family->add_flag("--json", as_json, "machine readable output");

    CLI::App* dot = app.add_subcommand("export-dot", "graphviz drawing of a script");
    dot->add_option("file", file, "script path, or - for stdin")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) {
            std::optional<Nat> vb;
            if (verify_bound_text) vb = parse_nat(*verify_bound_text, "--verify-bound");
            return cmd_solve(file, power_sums, as_json, vb);
        }
        if (oracle->parsed()) return cmd_oracle(gens_text, apery_text, power_sums, as_json);
        if (verify->parsed()) return cmd_verify(file, bound_text);
        if (family->parsed()) return cmd_family(family_name, params_text, grid_text, as_json);
        if (dot->parsed()) return cmd_export_dot(file);
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return exit_parse;
    } catch (const not_total_error& e) {
        std::cerr << "not total: " << e.what() << "\n";
        return exit_not_total;
    } catch (const inconsistency_error& e) {
        std::cerr << "inconsistency: " << e.what() << "\n";
        return exit_mismatch;
    } catch (const semired_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_invalid;
    }
    return exit_ok;
}
