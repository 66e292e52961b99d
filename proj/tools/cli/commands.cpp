/*
   Copyright 2026 The difftower Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "commands.hpp"

#include <functional>
#include <map>

#include "difftower/error.hpp"
#include "difftower/expint.hpp"
#include "difftower/format.hpp"
#include "difftower/riccati.hpp"
#include "difftower/valuation.hpp"

namespace difftower::cli {

using nlohmann::json;

namespace {

json integer_json(const mpz_class& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

json vector_json(const IntVector& v) {
    json a = json::array();
    for (const auto& z : v) a.push_back(integer_json(z));
    return a;
}

json matrix_json(const IntMatrix& m) {
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(vector_json(m.row(i)));
    return a;
}

json elems_json(const std::vector<Elem>& es, const Tower& tower) {
    json a = json::array();
    for (const Elem& e : es) a.push_back(format(e, tower));
    return a;
}

std::string elems_text(const std::vector<Elem>& es, const Tower& tower) {
    std::string s = "[";
    for (std::size_t i = 0; i < es.size(); ++i) s += (i ? ", " : "") + format(es[i], tower);
    return s + "]";
}

std::string vector_text(const std::vector<mpz_class>& v) { return to_string(IntVector(v.begin(), v.end())); }

const char* stage_name(StageStatus s) {
    switch (s) {
        case StageStatus::expanded:
            return "expanded";
        case StageStatus::dead_end:
            return "dead_end";
        case StageStatus::unsupported:
            return "unsupported";
        case StageStatus::budget:
            return "budget";
    }
    return "?";
}

json bounds_json(const BoundsHit& b) { return {{"nodes", b.nodes}, {"degree", b.degree}}; }

json trace_json(const std::vector<StageRecord>& trace, const Tower& tower) {
    json a = json::array();
    for (const StageRecord& r : trace)
        a.push_back({{"prefix", elems_json(r.prefix, tower)},
                     {"candidates", elems_json(r.candidates, tower)},
                     {"status", stage_name(r.status)},
                     {"family", r.family},
                     {"truncated", r.truncated},
                     {"note", r.note}});
    return a;
}

json torsion_json(const TorsionReport& t) {
    json w = nullptr;
    if (t.witness) w = {{"exponents", vector_json(*t.witness)}, {"order", integer_json(t.order)}};
    return {{"elementary_divisors", vector_json(IntVector(t.elementary_divisors.begin(), t.elementary_divisors.end()))},
            {"torsion_free", t.torsion_free},
            {"witness", w}};
}

std::string torsion_text(const TorsionReport& t) {
    std::string s = "elementary divisors: " + vector_text(t.elementary_divisors) + "\n";
    if (t.witness)
        s += "witness: " + to_string(*t.witness) + ", order " + t.order.get_str();
    else
        s += "witness: none";
    return s;
}

std::string bounds_text(const BoundsHit& b) {
    if (!b.any()) return "none";
    std::string s;
    if (b.nodes) s += "nodes";
    if (b.degree) s += std::string(s.empty() ? "" : ", ") + "degree";
    return s;
}

struct Context {
    const Script& script;
    const std::vector<std::string>& args;
    const Options& options;
    Report& report;

    const Scope& scope() const { return script.scope; }
    const Tower& tower() const { return script.scope.tower; }
    Elem element(std::size_t i) const { return parse_element(args.at(i), scope()); }
    LinDiffOp op(std::size_t i) const { return parse_operator(args.at(i), scope()); }
    // Operators handled by the solver live over the base field.
    LinDiffOp base_op(std::size_t i) const {
        LinDiffOp l = op(i);
        if (l.level() > 1) throw DomainError("operator coefficients must lie in the base field");
        if (l.order() < 1) throw DomainError("operator must have order at least 1");
        return l;
    }
    QFrac base_elem(std::size_t i) const { return to_qfrac(element(i)); }
    std::string fmt(const Elem& e) const { return format(e, tower()); }
    std::string fmt(const LinDiffOp& l) const { return format(l, tower()); }
    std::string fmt(const QFrac& f) const { return format(to_elem(f), tower()); }
    std::string fmt(const QPoly& p) const { return format(to_elem(p), tower()); }

    void set(const std::string& key, json value, const std::string& text) {
        report.result[key] = std::move(value);
        report.text += (report.text.empty() ? "" : "\n") + text;
    }
};

using Handler = std::function<void(Context&)>;

struct Command {
    std::string synopsis;
    std::size_t min_args;
    std::size_t max_args;
    Handler run;
};

void cmd_riccati(Context& c) {
    const DiffPoly p = gen_riccati(c.op(0));
    const std::string s = format(p, c.tower());
    c.set("riccati", s, s);
}

void cmd_opmul(Context& c) {
    const std::string s = c.fmt(mul(c.op(0), c.op(1), c.tower()));
    c.set("product", s, s);
}

void cmd_opdiv(Context& c) {
    const LinDiffOp m = c.op(1);
    if (m.is_zero()) throw DomainError("division by the zero operator");
    const Division d = right_divide(c.op(0), m, c.tower());
    c.set("quotient", c.fmt(d.quotient), "quotient: " + c.fmt(d.quotient));
    c.set("remainder", c.fmt(d.remainder), "remainder: " + c.fmt(d.remainder));
}

void cmd_reduce(Context& c) {
    const std::string s = c.fmt(reduce_order(c.op(0), c.element(1), c.tower()));
    c.set("cofactor", s, s);
}

void cmd_apply(Context& c) {
    const std::string s = c.fmt(apply(c.op(0), c.element(1), c.tower()));
    c.set("value", s, s);
}

void cmd_ord(Context& c) {
    if (c.tower().height() < 1) throw DomainError("tower has no indeterminate");
    const Order o = ord0(c.element(0), c.tower());
    const std::string s = to_string(o);
    c.report.result["level"] = c.tower().level(c.tower().height()).name;
    c.set("ord", o.is_infinite() ? json("inf") : json(o.value()), s);
}

void cmd_eval0(Context& c) {
    const std::string s = c.fmt(eval0(c.element(0), c.tower()));
    c.set("value", s, s);
}

void cmd_descend(Context& c) {
    const DiffPoly t = parse_differential(c.args.at(0), c.scope());
    const std::string s = c.fmt(rosenlicht_descend(t, c.element(1), c.tower()));
    c.set("value", s, s);
}

void cmd_logder(Context& c) {
    const auto cert = is_log_derivative(c.base_elem(0));
    c.report.result["is_log_derivative"] = cert.has_value();
    if (!cert) {
        c.set("preimage", nullptr, "not a logarithmic derivative");
        return;
    }
    json factors = json::array();
    for (const auto& [p, n] : cert->factors) factors.push_back({c.fmt(p), integer_json(n)});
    c.report.result["factors"] = factors;
    c.set("preimage", c.fmt(cert->preimage()), "f'/f with f = " + c.fmt(cert->preimage()));
}

void cmd_antider(Context& c) {
    const auto g = rational_antiderivative(c.base_elem(0));
    if (g)
        c.set("antiderivative", c.fmt(*g), c.fmt(*g));
    else
        c.set("antiderivative", nullptr, "no rational antiderivative");
}

void cmd_lattice(Context& c) {
    std::vector<QFrac> as;
    for (std::size_t i = 0; i < c.args.size(); ++i) as.push_back(c.base_elem(i));
    const RelationLattice lat = relation_lattice(as);
    const TorsionReport t = torsion_report(lat);
    c.set("lattice_basis", matrix_json(lat.basis), "lattice basis: " + to_string(lat.basis));
    const json tj = torsion_json(t);
    for (const auto& [k, v] : tj.items()) c.report.result[k] = v;
    c.report.text += "\n" + torsion_text(t);
    if (t.torsion_free) {
        json gens = json::array();
        std::string s = "generators:";
        for (const IntVector& g : chain_generators(as, lat)) {
            gens.push_back(vector_json(g));
            s += " " + to_string(g);
        }
        c.set("generators", gens, s);
    }
}

IntMatrix parse_matrix(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw UsageError(std::string("matrix must be a JSON array of rows: ") + e.what());
    }
    if (!j.is_array() || j.empty()) throw UsageError("matrix must be a nonempty JSON array of rows");
    std::vector<IntVector> rows;
    for (const json& r : j) {
        if (!r.is_array()) throw UsageError("matrix rows must be arrays");
        IntVector row;
        for (const json& v : r) {
            if (v.is_number_integer())
                row.emplace_back(v.get<long>());
            else if (v.is_string()) {
                mpz_class z;
                if (z.set_str(v.get<std::string>(), 10) != 0) throw UsageError("matrix entries must be integers");
                row.push_back(z);
            } else
                throw UsageError("matrix entries must be integers");
        }
        rows.push_back(std::move(row));
    }
    try {
        return IntMatrix::from_rows(rows, rows.front().size());
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
}

void cmd_snf(Context& c) {
    const SmithForm f = smith_normal_form(parse_matrix(c.args.at(0)));
    const std::vector<mpz_class> d = f.diagonal();
    c.set("diagonal", vector_json(IntVector(d.begin(), d.end())), "diagonal: " + vector_text(d));
    c.set("s", matrix_json(f.s), "S = " + to_string(f.s));
    c.set("u", matrix_json(f.u), "U = " + to_string(f.u));
    c.set("v", matrix_json(f.v), "V = " + to_string(f.v));
}

void cmd_expsols(Context& c) {
    const ExpSolutions s = exponential_solutions(c.base_op(0), c.options.bounds);
    c.set("solutions", elems_json(s.solutions, c.tower()), elems_text(s.solutions, c.tower()));
    c.report.result["family"] = s.family;
    c.report.result["truncated"] = s.truncated;
    if (s.family) c.report.text += "\nfamily: one representative per basis vector";
    if (s.truncated) c.report.text += "\ntruncated by a degree bound";
}

void cmd_polysols(Context& c) {
    const int bound = c.args.size() > 1 ? std::stoi(c.args[1]) : c.options.bounds.degree;
    if (bound < 0) throw UsageError("degree bound must be nonnegative");
    json a = json::array();
    std::string s = "[";
    for (const QPoly& p : polynomial_solutions(c.base_op(0), bound)) {
        a.push_back(c.fmt(p));
        s += (a.size() > 1 ? ", " : "") + c.fmt(p);
    }
    c.report.result["degree_bound"] = bound;
    c.set("solutions", a, s + "]");
}

void cmd_factor(Context& c) {
    const ChainSearch s = factor_chain(c.base_op(0), c.options.bounds);
    json chains = json::array();
    std::string text;
    for (const auto& ch : s.chains) {
        chains.push_back(elems_json(ch, c.tower()));
        text += (text.empty() ? "" : "\n") + elems_text(ch, c.tower());
    }
    if (s.chains.empty()) text = "no factorization into first-order factors";
    c.set("chains", chains, text);
    c.report.result["complete"] = s.complete();
    c.report.result["bounds_hit"] = bounds_json(s.bounds_hit);
    c.report.result["nodes"] = s.nodes;
    c.report.result["trace"] = trace_json(s.trace, c.tower());
    if (!s.complete()) c.report.text += "\nsearch incomplete";
}

void cmd_verdict(Context& c) {
    const Verdict v = solvability_verdict(c.base_op(0), c.options.bounds);
    c.report.result = verdict_json(v, c.tower());
    std::string s = "status: " + to_string(v.status);
    s += "\nchain: " + (v.chain ? elems_text(*v.chain, c.tower()) : std::string("none"));
    if (v.lattice) s += "\nlattice basis: " + to_string(v.lattice->basis);
    if (v.torsion) s += "\n" + torsion_text(*v.torsion);
    s += "\nbounds hit: " + bounds_text(v.bounds_hit);
    for (const std::string& n : v.notes) s += "\nnote: " + n;
    c.report.text = s;
}

int level_arg(const Context& c) {
    const Tower& t = c.tower();
    if (t.height() < 1) throw DomainError("tower has no indeterminate");
    if (c.args.empty()) return t.height();
    const auto k = t.find(c.args[0]);
    if (!k) throw UsageError("unknown tower level '" + c.args[0] + "'");
    return *k;
}

void cmd_check_special(Context& c) {
    const int k = level_arg(c);
    const TowerLevel& lvl = c.tower().level(k);
    const bool special = is_special_rule(lvl.rule.rule, k);
    c.report.result["level"] = lvl.name;
    c.report.result["rule"] = c.fmt(lvl.rule.rule);
    c.report.result["kind"] = std::string(to_string(lvl.rule.kind));
    c.set("special", special,
          lvl.name + "' = " + c.fmt(lvl.rule.rule) + ": " + std::string(to_string(lvl.rule.kind)) +
              (lvl.rule.kind == RuleKind::special ? "" : special ? " (special)" : " (not special)"));
}

void cmd_check_order_lemma(Context& c) {
    SamplingOptions o;
    o.seed = c.options.seed.value_or(0);
    if (!c.args.empty()) {
        const long n = std::stol(c.args[0]);
        if (n <= 0) throw UsageError("sample count must be positive");
        o.samples = static_cast<std::size_t>(n);
    }
    const Tower& t = c.tower();
    if (t.height() < 2) throw DomainError("tower needs a level above the base");
    const OrderLemmaReport r = sample_order_monotonicity(t, o);
    const bool special = is_special_rule(t.level(t.height()).rule.rule, t.height());
    c.report.result["special"] = special;
    c.report.result["samples"] = r.samples;
    c.report.result["violations"] = r.violations;
    c.report.result["counterexample"] = r.counterexample ? json(c.fmt(*r.counterexample)) : json(nullptr);
    c.report.result["counterexample_derivative"] =
        r.counterexample_derivative ? json(c.fmt(*r.counterexample_derivative)) : json(nullptr);
    std::string s = std::to_string(r.samples) + " samples, " + std::to_string(r.violations) + " violations";
    if (r.counterexample)
        s += "\ncounterexample: " + c.fmt(*r.counterexample) + " with derivative " +
             c.fmt(*r.counterexample_derivative);
    c.set("holds", r.holds(), s);
}

const std::map<std::string, Command>& commands() {
    static const std::map<std::string, Command> table = {
        {"riccati", {"riccati <op>: generalized Riccati polynomial", 1, 1, cmd_riccati}},
        {"opmul", {"opmul <op> <op>: composition", 2, 2, cmd_opmul}},
        {"opdiv", {"opdiv <op> <op>: right division with remainder", 2, 2, cmd_opdiv}},
        {"reduce", {"reduce <op> <p>: cofactor of D - p", 2, 2, cmd_reduce}},
        {"apply", {"apply <op> <elem>: apply an operator", 2, 2, cmd_apply}},
        {"ord", {"ord <elem>: order at zero of the top indeterminate", 1, 1, cmd_ord}},
        {"eval0", {"eval0 <elem>: value at zero of the top indeterminate", 1, 1, cmd_eval0}},
        {"descend", {"descend <diffpoly in u> <elem>: descend a solution one level", 2, 2, cmd_descend}},
        {"logder", {"logder <elem>: logarithmic derivative test over the base field", 1, 1, cmd_logder}},
        {"antider", {"antider <elem>: rational antiderivative over the base field", 1, 1, cmd_antider}},
        {"lattice", {"lattice <elem>...: relation lattice and torsion", 1, 64, cmd_lattice}},
        {"snf", {"snf <json matrix>: Smith normal form", 1, 1, cmd_snf}},
        {"expsols", {"expsols <op>: exponential solutions", 1, 1, cmd_expsols}},
        {"polysols", {"polysols <op> [degree]: polynomial solutions", 1, 2, cmd_polysols}},
        {"factor", {"factor <op>: factorizations into first-order factors", 1, 1, cmd_factor}},
        {"verdict", {"verdict <op>: solvability verdict", 1, 1, cmd_verdict}},
        {"check-special", {"check-special [level]: classify a derivation rule", 0, 1, cmd_check_special}},
        {"check-order-lemma", {"check-order-lemma [samples]: sample order monotonicity", 0, 1, cmd_check_order_lemma}},
    };
    return table;
}

}  // namespace

void to_json(json& j, const Report& r) {
    j = {{"command", r.command}, {"args", r.args},       {"result", r.result},       {"provenance", r.provenance},
         {"text", r.text},       {"error", r.error},     {"exit_code", r.exit_code}};
}

void from_json(const json& j, Report& r) {
    j.at("command").get_to(r.command);
    j.at("args").get_to(r.args);
    r.result = j.at("result");
    r.provenance = j.at("provenance");
    j.at("text").get_to(r.text);
    j.at("error").get_to(r.error);
    j.at("exit_code").get_to(r.exit_code);
}

json verdict_json(const Verdict& v, const Tower& tower) {
    json j;
    j["status"] = to_string(v.status);
    j["chain"] = v.chain ? elems_json(*v.chain, tower) : json(nullptr);
    j["lattice_basis"] = v.lattice ? matrix_json(v.lattice->basis) : json(nullptr);
    if (v.torsion) {
        const json t = torsion_json(*v.torsion);
        j["elementary_divisors"] = t["elementary_divisors"];
        j["witness"] = t["witness"];
    } else {
        j["elementary_divisors"] = nullptr;
        j["witness"] = nullptr;
    }
    j["bounds_hit"] = bounds_json(v.bounds_hit);
    j["notes"] = v.notes;
    j["trace"] = trace_json(v.trace, tower);
    return j;
}

const std::vector<std::pair<std::string, std::string>>& command_table() {
    static const auto table = [] {
        std::vector<std::pair<std::string, std::string>> t;
        for (const auto& [name, cmd] : commands()) t.emplace_back(name, cmd.synopsis);
        return t;
    }();
    return table;
}

Report run_command(const Script& script, const std::string& command, const std::vector<std::string>& args,
                   const Options& options) {
    Report report;
    report.command = command;
    report.args = args;
    report.provenance = {{"seed", options.seed ? json(*options.seed) : json(nullptr)},
                         {"bounds",
                          {{"degree", options.bounds.degree},
                           {"nodes", options.bounds.nodes},
                           {"poly_degree", options.bounds.poly_degree}}},
                         {"tower", format(script)}};
    auto fail = [&](int code, const std::string& what) {
        report.result = json::object();
        report.text.clear();
        report.error = what;
        report.exit_code = code;
    };
    try {
        const auto it = commands().find(command);
        if (it == commands().end()) throw UsageError("unknown command '" + command + "'");
        const Command& cmd = it->second;
        if (args.size() < cmd.min_args || args.size() > cmd.max_args)
            throw UsageError("usage: " + cmd.synopsis);
        Context ctx{script, args, options, report};
        cmd.run(ctx);
    } catch (const ParseError& e) {
        fail(exit_usage, std::string("syntax error: ") + e.what());
    } catch (const UsageError& e) {
        fail(exit_usage, e.what());
    } catch (const std::invalid_argument&) {
        fail(exit_usage, "expected an integer argument");
    } catch (const std::out_of_range&) {
        fail(exit_usage, "integer argument out of range");
    } catch (const DomainError& e) {
        fail(exit_domain, e.what());
    }
    return report;
}

}  // namespace difftower::cli
