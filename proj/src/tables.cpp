#include "opforge/tables.hpp"

#include "opforge/format.hpp"

#include <stdexcept>

namespace opforge {

namespace {

GoldenRow compose_row(const std::string& operad, const std::string& input) {
    const EvalContext cx{parse_operad(operad)};
    return {"compose", operad, 0, false, "", input, evaluate(input, cx)};
}

GoldenRow coproduct_row(const std::string& operad, int colors, bool cv, const std::string& handle,
                        const std::string& input) {
    const Operad op = parse_operad(operad, "circ", colors);
    const Bialgebra h = bialgebra_by_name(handle, op, cv);
    MElem a;
    const Value v = evaluate(input, EvalContext{op});
    if (auto e = std::get_if<OpElem>(&v)) a = as_words(*e);
    else a = std::get<MElem>(v);
    return {"coproduct", operad, colors, cv, handle, input, comultiply(h, a)};
}

std::vector<GoldenRow> as_compositions() {
    std::vector<GoldenRow> rows;
    for (const char* p : {"perm[12]", "perm[21]"})
        for (int i = 1; i <= 2; ++i)
            for (const char* q : {"perm[12]", "perm[21]"})
                rows.push_back(compose_row("As", std::string(p) + " o_" + std::to_string(i) + " " + q));
    return rows;
}

std::vector<GoldenRow> com_brace() {
    std::vector<GoldenRow> rows;
    for (int n = 1; n <= 4; ++n) {
        const std::string p = "e" + std::to_string(n);
        rows.push_back(compose_row("Com", "brace(" + p + ";)"));
        for (int a = 1; a <= 2; ++a) {
            rows.push_back(compose_row("Com", "brace(" + p + "; e" + std::to_string(a) + ")"));
            for (int b = 1; b <= 2; ++b)
                rows.push_back(compose_row("Com", "brace(" + p + "; e" + std::to_string(a) + " e" + std::to_string(b) + ")"));
        }
    }
    for (auto& r : rows) r.command = "brace";
    return rows;
}

std::vector<GoldenRow> qo_compositions() {
    std::vector<GoldenRow> rows;
    const char* two[] = {"qo{2; 1<2}", "qo{2; 2<1}", "qo{2}", "qo{2; 1~2}"};
    for (const char* p : two)
        for (const char* q : two)
            for (int i = 1; i <= 2; ++i)
                rows.push_back(compose_row("QO", std::string(p) + " o_" + std::to_string(i) + " " + q));
    return rows;
}

std::vector<GoldenRow> faa_di_bruno() {
    std::vector<GoldenRow> rows;
    for (const char* h : {"dual-star", "dual-star-prime"})
        for (int n = 1; n <= 3; ++n) rows.push_back(coproduct_row("Com", 0, true, h, "cls(e" + std::to_string(n) + ")"));
    return rows;
}

std::vector<GoldenRow> s3_coproduct() {
    std::vector<GoldenRow> rows;
    for (const char* p : {"perm[123]", "perm[132]", "perm[213]", "perm[231]", "perm[312]", "perm[321]"})
        rows.push_back(coproduct_row("As", 0, false, "dual-star", p));
    return rows;
}

std::vector<GoldenRow> ck_displays() {
    std::vector<GoldenRow> rows;
    for (const char* t : {"dtree[1]", "dtree[1[2]]", "dtree[1[2,3]]", "dtree[1[2[3]]]"})
        rows.push_back(coproduct_row("PreLie", 3, true, "ck", t));
    return rows;
}

std::vector<GoldenRow> ec_displays() {
    std::vector<GoldenRow> rows;
    for (const char* t : {"rtree[1]", "rtree[1[1]]", "rtree[1[1,1]]", "rtree[1[1[1]]]"})
        rows.push_back(coproduct_row("PreLie", 0, true, "dual-star", t));
    return rows;
}

std::vector<GoldenRow> theta_images() {
    std::vector<GoldenRow> rows;
    const Operad o(OperadName::O);
    for (auto [k, l] : {std::pair{1, 1}, {2, 1}, {1, 2}, {2, 2}})
        rows.push_back({"theta", "O", 0, false, "", std::to_string(k) + "," + std::to_string(l), theta_image(o, k, l)});
    return rows;
}

}  // namespace

std::vector<std::string> golden_ids() {
    return {"as-compositions", "com-brace",   "qo-compositions", "faa-di-bruno",
            "s3-coproduct",    "ck-displays", "ec-displays",     "theta-images"};
}

std::vector<GoldenRow> golden_table(const std::string& id) {
    if (id == "as-compositions") return as_compositions();
    if (id == "com-brace") return com_brace();
    if (id == "qo-compositions") return qo_compositions();
    if (id == "faa-di-bruno") return faa_di_bruno();
    if (id == "s3-coproduct") return s3_coproduct();
    if (id == "ck-displays") return ck_displays();
    if (id == "ec-displays") return ec_displays();
    if (id == "theta-images") return theta_images();
    throw std::invalid_argument("unknown golden table \"" + id + "\"");
}

std::string golden_text(const std::vector<GoldenRow>& rows) {
    std::string out;
    for (const auto& r : rows) {
        std::string ctx = r.operad;
        if (r.colors) ctx += " N=" + std::to_string(r.colors);
        if (r.coinvariant) ctx += " coinvariant";
        if (!r.handle.empty()) ctx += " " + r.handle;
        out += r.command + " [" + ctx + "] " + r.input + " = " + value_text(r.value) + "\n";
    }
    return out;
}

}  // namespace opforge
