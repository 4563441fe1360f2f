#include "CLI11.hpp"
#include "json.hpp"
#include "opforge/characters.hpp"
#include "opforge/expr.hpp"
#include "opforge/format.hpp"
#include "opforge/tables.hpp"
#include "opforge/verify.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

using namespace opforge;
using json = nlohmann::ordered_json;

namespace {

struct Globals {
    std::string operad = "PreLie";
    std::string mode = "circ";
    int bound = 4;
    int colors = 0;
    std::string format = "text";
    std::uint64_t seed = 1;
    bool coinvariant = false;

    Operad op() const { return parse_operad(operad, mode, colors); }
    bool as_json() const { return format == "json"; }
};

template <class K>
json terms_json(const Element<K>& e) {
    json j = json::object();
    for (const auto& [k, c] : e) j[key_text(k)] = c.str();
    return j;
}

json value_json(const Value& v) {
    json j;
    j["kind"] = value_kind(v);
    j["text"] = value_text(v);
    std::visit([&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Rational>) j["value"] = x.str();
        else j["terms"] = terms_json(x);
    }, v);
    return j;
}

MElem words_of(const Value& v) {
    if (auto r = std::get_if<Rational>(&v)) return *r * unit_element();
    if (auto e = std::get_if<OpElem>(&v)) return as_words(*e);
    if (auto w = std::get_if<MElem>(&v)) return *w;
    throw std::invalid_argument("expected words, got a tensor value");
}

OpElem op_of(const Value& v) {
    if (auto e = std::get_if<OpElem>(&v)) return *e;
    if (auto r = std::get_if<Rational>(&v); r && r->is_zero()) return {};
    throw std::invalid_argument("expected an operad element, got a " + value_kind(v) + " value");
}

// "@path" reads the argument from a file.
std::string source_arg(const std::string& s) {
    if (s.empty() || s[0] != '@') return s;
    std::ifstream in(s.substr(1));
    if (!in) throw std::invalid_argument("cannot read " + s.substr(1));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// ------------------------------------------------------------------ series

TruncatedSeries series_from(const std::string& arg, const EvalContext& cx, int bound, bool coinvariant) {
    const std::string src = source_arg(arg);
    TruncatedSeries s(bound);
    auto reduce = [&](const OpElem& e) {
        return coinvariant ? map_keys(e, [](const Obj& x) { return canonical(x); }) : e;
    };
    const auto first = src.find_first_not_of(" \t\n");
    if (first != std::string::npos && src[first] == '{') {
        const json j = json::parse(src);
        s = TruncatedSeries(j.contains("bound") ? j.at("bound").get<int>() : bound);
        for (const auto& [deg, terms] : j.at("components").items())
            for (const auto& [k, c] : terms.items())
                s.add(reduce(Rational::parse(c.get<std::string>()) * op_of(evaluate(k, cx))));
        return s;
    }
    s.add(reduce(op_of(evaluate(src, cx))));
    return s;
}

json series_json(const TruncatedSeries& s) {
    json j;
    j["bound"] = s.bound;
    json comps = json::object();
    for (const auto& [d, e] : s.components) comps[std::to_string(d)] = terms_json(e);
    j["components"] = comps;
    return j;
}

std::string series_text(const TruncatedSeries& s) {
    const OpElem t = s.total();
    const std::string tail = "O(" + std::to_string(s.bound + 1) + ")";
    return t.is_zero() ? tail : to_text(t) + " + " + tail;
}

// ---------------------------------------------------------------- commands

int cmd_compute(const Globals& g, const std::string& src) {
    const Expr e = parse_expr(source_arg(src));
    const Value v = evaluate(e, EvalContext{g.op()});
    if (g.as_json()) {
        json j = value_json(v);
        j["expr"] = print_expr(e);
        j["operad"] = g.op().name();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << value_text(v) << "\n";
    }
    return 0;
}

int cmd_product(const Globals& g, const std::string& handle, const std::string& a, const std::string& b) {
    const Operad op = g.op();
    const Bialgebra h = bialgebra_by_name(handle, op, g.coinvariant);
    const EvalContext cx{op};
    MElem x = words_of(evaluate(source_arg(a), cx)), y = words_of(evaluate(source_arg(b), cx));
    if (h.commutative) x = symmetrize(x), y = symmetrize(y);
    const MElem r = multiply(h, x, y);
    if (g.as_json()) std::cout << value_json(r).dump(2) << "\n";
    else std::cout << to_text(r) << "\n";
    return 0;
}

int cmd_coproduct(const Globals& g, const std::string& handle, const std::string& a) {
    const Operad op = g.op();
    const Bialgebra h = bialgebra_by_name(handle, op, g.coinvariant);
    MElem x = words_of(evaluate(source_arg(a), EvalContext{op}));
    if (h.commutative) x = symmetrize(x);
    const MPair r = comultiply(h, x);
    if (g.as_json()) std::cout << value_json(r).dump(2) << "\n";
    else std::cout << to_text(r) << "\n";
    return 0;
}

int cmd_monoid(const Globals& g, const std::string& which, const std::vector<std::string>& args) {
    const bool act = which == "act";
    const std::size_t need = which == "inverse" ? 1 : 2;
    if (args.size() != need) throw std::invalid_argument(which + " takes " + std::to_string(need) + " series");
    TruncatedSeries r;
    if (act) {
        if (g.colors < 1) throw std::invalid_argument("act needs --colors N");
        const EvalContext cx{Operad(OperadName::PreLie, Mode::Circ, g.colors)};
        const auto x = series_from(args[0], cx, g.bound, true), y = series_from(args[1], cx, g.bound, true);
        r = endo_action(g.colors, x, y);
    } else {
        const SeriesCarrier c{g.op(), g.coinvariant};
        const EvalContext cx{c.op};
        const auto x = series_from(args[0], cx, g.bound, c.coinvariant);
        if (which == "inverse") r = group_inverse(c, x);
        else {
            const auto y = series_from(args[1], cx, g.bound, c.coinvariant);
            if (which == "diamond") r = diamond(c, x, y);
            else if (which == "diamond-prime") r = diamond_prime(c, x, y);
            else throw std::invalid_argument("unknown monoid operation \"" + which + "\"");
        }
    }
    if (g.as_json()) std::cout << series_json(r).dump(2) << "\n";
    else std::cout << series_text(r) << "\n";
    return 0;
}

int cmd_verify(const Globals& g, const std::string& suite, const std::vector<std::string>& kvs,
               const std::string& mutation) {
    SuiteParams p;
    for (const auto& kv : kvs) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw std::invalid_argument("expected key=value, got \"" + kv + "\"");
        p.values[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    p.seed = g.seed;
    p.mutation = parse_mutation(mutation);
    const SuiteReport r = run_suite(suite, p);
    if (g.as_json()) {
        json j;
        j["suite"] = r.suite;
        j["params"] = r.params;
        j["cases"] = r.cases;
        j["failure_count"] = r.failure_count;
        j["passed"] = r.passed();
        json fs = json::array();
        for (const auto& f : r.failures) fs.push_back({{"check", f.check}, {"inputs", f.inputs}, {"lhs", f.lhs}, {"rhs", f.rhs}});
        j["failures"] = fs;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << report_text(r);
    }
    return r.passed() ? 0 : 1;
}

int cmd_table(const Globals& g, const std::string& id) {
    const auto rows = golden_table(id);
    if (g.as_json()) {
        json j;
        j["id"] = id;
        json arr = json::array();
        for (const auto& r : rows) {
            json row;
            row["command"] = r.command;
            row["operad"] = r.operad;
            if (r.colors) row["colors"] = r.colors;
            if (r.coinvariant) row["coinvariant"] = true;
            if (!r.handle.empty()) row["handle"] = r.handle;
            row["input"] = r.input;
            row["value"] = value_json(r.value);
            arr.push_back(row);
        }
        j["rows"] = arr;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << golden_text(rows);
    }
    return 0;
}

int cmd_enumerate(const Globals& g, const std::string& family, int n, bool classes, bool count_only) {
    std::vector<Obj> objs;
    static const std::map<std::string, Family> labelled = {
        {"perm", Family::Permutation}, {"tree", Family::LabelledTree}, {"qo", Family::QuasiOrder},
        {"order", Family::Order},      {"dg", Family::Digraph},        {"dag", Family::AcyclicDigraph}};
    if (family == "dtree" || family == "dpair") {
        objs = family == "dtree" ? tree_classes(n, std::max(1, g.colors)) : pair_classes(n, std::max(1, g.colors));
    } else {
        auto it = labelled.find(family);
        if (it == labelled.end()) throw std::invalid_argument("unknown family \"" + family + "\"");
        objs = enumerate(it->second, n);
        if (classes) {
            std::set<Obj> reps;
            for (const auto& x : objs) reps.insert(canonical(x));
            objs.assign(reps.begin(), reps.end());
        }
    }
    if (g.as_json()) {
        json j;
        j["family"] = family;
        j["n"] = n;
        j["count"] = objs.size();
        if (!count_only) {
            json arr = json::array();
            for (const auto& x : objs) arr.push_back(literal(x));
            j["objects"] = arr;
        }
        std::cout << j.dump(2) << "\n";
    } else if (count_only) {
        std::cout << objs.size() << "\n";
    } else {
        for (const auto& x : objs) std::cout << literal(x) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"opforge: exact computations in operads and their induced algebraic structures"};
    app.require_subcommand(1);
    Globals g;
    auto add_globals = [&](CLI::App* sub) {
        sub->add_option("--operad", g.operad, "Com, As, PreLie, QO, O, SG or NcSG")->capture_default_str();
        sub->add_option("--mode", g.mode, "circ or nabla")->capture_default_str();
        sub->add_option("--bound", g.bound, "truncation degree for series")->capture_default_str();
        sub->add_option("--colors", g.colors, "number of decorations N (0 = undecorated)")->capture_default_str();
        sub->add_option("--format", g.format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
        sub->add_option("--seed", g.seed, "seed for sampled checks")->capture_default_str();
        sub->add_flag("--coinvariant", g.coinvariant, "work on orbit classes");
    };

    std::string expr_src;
    auto* compute = app.add_subcommand("compute", "evaluate an expression");
    compute->alias("compose");
    compute->add_option("expr", expr_src, "expression, or @file")->required();
    add_globals(compute);

    std::string handle = "ck", a_src, b_src;
    auto* product = app.add_subcommand("product", "product of two elements of a bialgebra");
    product->add_option("--handle", handle, "bialgebra name")->capture_default_str();
    product->add_option("a", a_src)->required();
    product->add_option("b", b_src)->required();
    add_globals(product);

    auto* coproduct = app.add_subcommand("coproduct", "coproduct of an element of a bialgebra");
    coproduct->add_option("--handle", handle, "bialgebra name")->capture_default_str();
    coproduct->add_option("a", a_src)->required();
    add_globals(coproduct);

    std::string monoid_op = "diamond";
    std::vector<std::string> series_args;
    auto* monoid = app.add_subcommand("monoid", "character monoid products, inverse and action");
    monoid->add_option("--op", monoid_op, "diamond, diamond-prime, inverse or act")
        ->check(CLI::IsMember({"diamond", "diamond-prime", "inverse", "act"}))
        ->capture_default_str();
    monoid->add_option("series", series_args, "series as expressions or JSON")->required();
    add_globals(monoid);

    std::string suite, mutation = "none";
    std::vector<std::string> params;
    bool list_suites = false;
    auto* verify = app.add_subcommand("verify", "run a property suite");
    verify->add_option("--suite", suite, "suite id");
    verify->add_option("--params", params, "key=value parameters");
    verify->add_option("--mutation", mutation, "none, sign-flip, drop-term or swap-tensor")->capture_default_str();
    verify->add_flag("--list", list_suites, "list suite ids");
    add_globals(verify);

    std::string golden;
    auto* table = app.add_subcommand("table", "print a golden table");
    table->add_option("--golden", golden, "table id")->required();
    add_globals(table);

    std::string family;
    int size = 3;
    bool classes = false, count_only = false;
    auto* enumerate_cmd = app.add_subcommand("enumerate", "list the objects of a family");
    enumerate_cmd->add_option("--family", family, "perm, tree, qo, order, dg, dag, dtree or dpair")->required();
    enumerate_cmd->add_option("-n", size, "ground set size or vertex count")->capture_default_str();
    enumerate_cmd->add_flag("--classes", classes, "orbit representatives only");
    enumerate_cmd->add_flag("--count", count_only, "print the count only");
    add_globals(enumerate_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*compute) return cmd_compute(g, expr_src);
        if (*product) return cmd_product(g, handle, a_src, b_src);
        if (*coproduct) return cmd_coproduct(g, handle, a_src);
        if (*monoid) return cmd_monoid(g, monoid_op, series_args);
        if (*verify) {
            if (list_suites) {
                for (const auto& id : suite_ids()) std::cout << id << "\n";
                return 0;
            }
            if (suite.empty()) throw std::invalid_argument("--suite is required");
            return cmd_verify(g, suite, params, mutation);
        }
        if (*table) return cmd_table(g, golden);
        if (*enumerate_cmd) return cmd_enumerate(g, family, size, classes, count_only);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
