#include "opforge/expr.hpp"

#include "opforge/format.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <tuple>

namespace opforge {

SyntaxError::SyntaxError(int l, int c, const std::string& what)
    : std::invalid_argument(std::to_string(l) + ":" + std::to_string(c) + ": " + what), line(l), column(c) {}

EvalError::EvalError(int l, int c, const std::string& what)
    : std::invalid_argument(std::to_string(l) + ":" + std::to_string(c) + ": " + what), line(l), column(c) {}

namespace {

// ------------------------------------------------------------------ parser

class Parser {
public:
    explicit Parser(const std::string& s) : src_(s) {}

    Expr run() {
        Expr e = sum();
        skip();
        if (pos_ < src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
        return e;
    }

private:
    const std::string& src_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const { fail_at(pos_, what); }

    [[noreturn]] void fail_at(std::size_t at, const std::string& what) const {
        auto [l, c] = where(at);
        throw SyntaxError(l, c, what);
    }

    std::pair<int, int> where(std::size_t at) const {
        int line = 1, col = 1;
        for (std::size_t i = 0; i < at && i < src_.size(); ++i) {
            if (src_[i] == '\n') { ++line; col = 1; }
            else if ((static_cast<unsigned char>(src_[i]) & 0xC0) != 0x80) ++col;
        }
        return {line, col};
    }

    std::shared_ptr<ExprNode> node(ExprKind k, std::size_t at) const {
        auto n = std::make_shared<ExprNode>();
        n->kind = k;
        std::tie(n->line, n->column) = where(at);
        return n;
    }

    void skip() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool at(const std::string& s) {
        skip();
        return src_.compare(pos_, s.size(), s) == 0;
    }

    bool eat(const std::string& s) {
        if (!at(s)) return false;
        pos_ += s.size();
        return true;
    }

    void expect(const std::string& s) {
        if (!eat(s)) fail("expected '" + s + "'");
    }

    std::string ident() {
        skip();
        std::size_t st = pos_;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
        return src_.substr(st, pos_ - st);
    }

    std::string peek_ident() {
        std::size_t save = pos_;
        std::string s = ident();
        pos_ = save;
        return s;
    }

    // Content between an opening bracket at pos_ and its matching close.
    std::string balanced(char open, char close) {
        if (pos_ >= src_.size() || src_[pos_] != open) fail(std::string("expected '") + open + "'");
        const std::size_t st = ++pos_;
        int depth = 1;
        while (pos_ < src_.size()) {
            if (src_[pos_] == open) ++depth;
            else if (src_[pos_] == close && --depth == 0) break;
            ++pos_;
        }
        if (pos_ >= src_.size()) fail_at(st - 1, std::string("unclosed '") + open + "'");
        return src_.substr(st, pos_++ - st);
    }

    // ---------------------------------------------------------- grammar

    Expr sum() {
        Expr e = tensor();
        for (;;) {
            skip();
            const std::size_t op = pos_;
            ExprKind k;
            if (eat("+")) k = ExprKind::Add;
            else if (eat("-")) k = ExprKind::Sub;
            else return e;
            auto n = node(k, op);
            n->args = {e, tensor()};
            e = n;
        }
    }

    Expr tensor() {
        Expr e = scaled();
        skip();
        const std::size_t op = pos_;
        if (!eat("(x)")) return e;
        auto n = node(ExprKind::Tensor, op);
        n->args = {e, scaled()};
        if (at("(x)")) fail("only tensor squares are supported");
        return n;
    }

    Expr scaled() {
        Expr e = unary();
        for (;;) {
            skip();
            const std::size_t op = pos_;
            if (!eat("*")) return e;
            auto n = node(ExprKind::Scale, op);
            n->args = {e, unary()};
            e = n;
        }
    }

    Expr unary() {
        skip();
        const std::size_t op = pos_;
        if (eat("-")) {
            auto n = node(ExprKind::Neg, op);
            n->args = {unary()};
            return n;
        }
        return word();
    }

    bool at_dot() { return at("\xC2\xB7") || at("."); }

    Expr word() {
        Expr e = comp();
        while (at_dot()) {
            const std::size_t op = pos_;
            pos_ += src_[pos_] == '.' ? 1 : 2;
            auto n = node(ExprKind::Concat, op);
            n->args = {e, comp()};
            e = n;
        }
        return e;
    }

    Expr comp() {
        Expr e = atom();
        for (;;) {
            skip();
            const std::size_t op = pos_;
            const std::string id = peek_ident();
            if (id == "bullet") {
                ident();
                auto n = node(ExprKind::Bullet, op);
                n->args = {e, atom()};
                e = n;
            } else if (id.rfind("o_", 0) == 0) {
                ident();
                const std::string digits = id.substr(2);
                if (digits.empty() || digits.size() > 6 ||
                    !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
                    fail_at(op, "expected o_<slot>");
                auto n = node(ExprKind::Compose, op);
                n->slot = std::stoi(digits);
                n->args = {e, atom()};
                e = n;
            } else {
                return e;
            }
        }
    }

    bool starts_atom() {
        skip();
        if (pos_ >= src_.size()) return false;
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '(') return !at("(x)");
        if (!std::isalpha(static_cast<unsigned char>(c))) return false;
        const std::string id = peek_ident();
        return id != "bullet" && id.rfind("o_", 0) != 0;
    }

    Expr atom() {
        skip();
        const std::size_t st = pos_;
        if (pos_ >= src_.size()) fail("unexpected end of input");
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return number();
        if (c == '(') {
            if (at("(x)")) fail("unexpected '(x)'");
            ++pos_;
            Expr e = sum();
            expect(")");
            return e;
        }
        const std::string id = ident();
        if (id.empty()) fail("unexpected '" + std::string(1, c) + "'");
        static const std::map<std::string, ExprKind> calls = {
            {"brace", ExprKind::Brace},         {"binf", ExprKind::Bracket},
            {"star_t", ExprKind::StarT},        {"star_s", ExprKind::StarS},
            {"dend_left", ExprKind::DendLeft},  {"dend_right", ExprKind::DendRight},
            {"tensor", ExprKind::Tensor},
        };
        auto it = calls.find(id);
        if (it != calls.end()) return call(it->second, st);
        return literal(id, st);
    }

    Expr number() {
        const std::size_t st = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ + 1 < src_.size() && src_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        }
        auto n = node(ExprKind::Number, st);
        try {
            n->number = Rational::parse(src_.substr(st, pos_ - st));
        } catch (const std::exception& e) {
            fail_at(st, e.what());
        }
        return n;
    }

    Expr call(ExprKind k, std::size_t st) {
        auto n = node(k, st);
        expect("(");
        if (k == ExprKind::Brace || k == ExprKind::Bracket) {
            n->args.push_back(sum());
            if (eat(";"))
                while (starts_atom()) {
                    n->args.push_back(comp());
                    if (at_dot()) pos_ += src_[pos_] == '.' ? 1 : 2;
                }
        } else {
            n->args.push_back(sum());
            expect(";");
            n->args.push_back(sum());
        }
        expect(")");
        return n;
    }

    Obj wrap(std::size_t st, const std::function<Obj()>& f) const {
        try {
            return f();
        } catch (const std::invalid_argument& e) {
            fail_at(st, e.what());
        }
    }

    Obj literal_obj(const std::string& id, std::size_t st) {
        if (id == "perm") {
            const std::string body = balanced('[', ']');
            return wrap(st, [&] {
                std::vector<int> w;
                if (body.find(',') != std::string::npos) {
                    std::size_t i = 0;
                    while (i <= body.size()) {
                        std::size_t j = body.find(',', i);
                        if (j == std::string::npos) j = body.size();
                        w.push_back(std::stoi(body.substr(i, j - i)));
                        i = j + 1;
                    }
                } else {
                    for (char ch : body) {
                        if (!std::isdigit(static_cast<unsigned char>(ch))) throw std::invalid_argument("bad permutation");
                        w.push_back(ch - '0');
                    }
                }
                return perm(w);
            });
        }
        if (id == "tree") {
            const std::string body = balanced('[', ']');
            return wrap(st, [&] { return parse_tree_text(body); });
        }
        if (id == "rtree") {
            const std::string body = balanced('[', ']');
            return wrap(st, [&] {
                Obj t = parse_tree_code(body);
                t.col.clear();
                return canonical(t);
            });
        }
        if (id == "dtree") {
            const std::string body = balanced('[', ']');
            return wrap(st, [&] { return decorated_tree(body); });
        }
        if (id == "dpair") {
            const std::string body = balanced('[', ']');
            return wrap(st, [&] {
                const auto semi = body.rfind(';');
                if (semi == std::string::npos) throw std::invalid_argument("expected dpair[code;color]");
                return decorated_pair(body.substr(0, semi), std::stoi(body.substr(semi + 1)));
            });
        }
        if (id == "qo" || id == "dg") {
            const std::string body = balanced('{', '}');
            return wrap(st, [&] { return id == "qo" ? parse_qo("qo{" + body + "}") : parse_dg("dg{" + body + "}"); });
        }
        if (id == "x") {
            const std::string body = balanced('[', ']');
            return wrap(st, [&] {
                std::vector<int> alpha;
                std::size_t i = 0;
                while (i <= body.size()) {
                    std::size_t j = body.find(',', i);
                    if (j == std::string::npos) j = body.size();
                    alpha.push_back(std::stoi(body.substr(i, j - i)));
                    i = j + 1;
                }
                return var(alpha);
            });
        }
        if (id == "cls") {
            expect("(");
            skip();
            const std::size_t inner = pos_;
            Obj x = literal_obj(ident(), inner);
            color_suffix(x, inner);
            expect(")");
            if (x.iso) fail_at(inner, "cls() needs a labelled literal");
            return wrap(st, [&] { return canonical(x); });
        }
        if (id.size() > 1 && id[0] == 'e' &&
            std::all_of(id.begin() + 1, id.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
            if (id.size() > 7) fail_at(st, "integer too large");
            return wrap(st, [&] { return com(std::stoi(id.substr(1))); });
        }
        fail_at(st, "unknown name '" + id + "'");
    }

    void color_suffix(Obj& x, std::size_t st) {
        if (pos_ >= src_.size() || src_[pos_] != '@') return;
        ++pos_;
        if (x.iso) fail_at(st, "class literals carry their colors in the code");
        const std::string body = balanced('(', ')');
        wrap(st, [&] {
            std::vector<int> col;
            const auto semi = body.find(';');
            const std::string ins = body.substr(0, semi);
            std::size_t i = 0;
            while (i <= ins.size()) {
                std::size_t j = ins.find(',', i);
                if (j == std::string::npos) j = ins.size();
                col.push_back(std::stoi(ins.substr(i, j - i)));
                i = j + 1;
            }
            if (static_cast<int>(col.size()) != x.n) throw std::invalid_argument("one color per vertex expected");
            if (semi != std::string::npos) col.push_back(std::stoi(body.substr(semi + 1)));
            for (int c : col)
                if (c < 1) throw std::invalid_argument("colors are positive");
            x.col = col;
            return x;
        });
    }

    Expr literal(const std::string& id, std::size_t st) {
        auto n = node(ExprKind::Literal, st);
        n->literal = literal_obj(id, st);
        color_suffix(n->literal, st);
        if (pos_ < src_.size() && src_[pos_] == '*') {
            // a '*' glued to a literal is the dual marker unless an operand follows
            std::size_t save = pos_++;
            if (starts_atom() || at("-")) pos_ = save;
            else {
                pos_ = save + 1;
                n->dual = true;
            }
        }
        return n;
    }
};

// ----------------------------------------------------------------- printer

int level(const Expr& e) {
    switch (e->kind) {
        case ExprKind::Add:
        case ExprKind::Sub: return 1;
        case ExprKind::Tensor: return 2;
        case ExprKind::Scale: return 3;
        case ExprKind::Neg: return 4;
        case ExprKind::Concat: return 5;
        case ExprKind::Compose:
        case ExprKind::Bullet: return 6;
        case ExprKind::Number: return e->number.sign() < 0 ? 4 : 7;
        default: return 7;
    }
}

std::string print_at(const Expr& e, int min_level) {
    std::string s = print_expr(e);
    return level(e) < min_level ? "(" + s + ")" : s;
}

// ---------------------------------------------------------------- evaluator

struct Evaluator {
    const EvalContext& cx;

    [[noreturn]] static void fail(const Expr& e, const std::string& what) { throw EvalError(e->line, e->column, what); }

    static bool any_iso(const OpElem& a) {
        for (const auto& [k, c] : a)
            if (k.iso) return true;
        return false;
    }

    static OpElem lift(const OpElem& a) {
        return map_keys(a, [](Obj x) {
            x.iso = false;
            return x;
        });
    }

    static OpElem reduce(const OpElem& a) {
        return map_keys(a, [](const Obj& x) { return canonical(x); });
    }

    OpElem as_op(const Expr& e, const Value& v) const {
        if (auto p = std::get_if<OpElem>(&v)) return *p;
        fail(e, "expected an operad element, got a " + value_kind(v) + " value");
    }

    MElem as_words(const Expr& e, const Value& v) const {
        if (auto r = std::get_if<Rational>(&v)) return *r * unit_element();
        if (auto p = std::get_if<OpElem>(&v)) return opforge::as_words(*p);
        if (auto w = std::get_if<MElem>(&v)) return *w;
        fail(e, "expected words, got a tensor value");
    }

    // Keys of a must be basis elements of the operad (or classes of them).
    void check_basis(const Expr& e, const OpElem& a) const {
        for (const auto& [k, c] : a) {
            Obj x = k;
            x.iso = false;
            if (!cx.op.in_basis(x)) fail(e, literal(k) + " is not a basis element of " + cx.op.name());
        }
    }

    int arity(const Expr& e, const OpElem& a) const {
        try {
            return arity_of(a);
        } catch (const std::invalid_argument&) {
            fail(e, "mixed arities");
        }
    }

    // Runs f on lifted operands and reduces to classes when any operand is one.
    OpElem on_reps(const std::vector<OpElem>& xs, const std::function<OpElem(const std::vector<OpElem>&)>& f) const {
        bool iso = false;
        std::vector<OpElem> lifted;
        for (const auto& x : xs) {
            iso = iso || any_iso(x);
            lifted.push_back(lift(x));
        }
        OpElem r = f(lifted);
        return iso ? reduce(r) : r;
    }

    Value add(const Expr& e, const Value& a, const Value& b, bool minus) const {
        const Rational s(minus ? -1 : 1);
        if (a.index() == 0 && b.index() == 0) return std::get<Rational>(a) + s * std::get<Rational>(b);
        if (a.index() == 3 || b.index() == 3) {
            if (a.index() != 3 || b.index() != 3) fail(e, "cannot add a tensor and a non-tensor value");
            return std::get<MPair>(a) + s * std::get<MPair>(b);
        }
        if (a.index() == 1 && b.index() == 1) return std::get<OpElem>(a) + s * std::get<OpElem>(b);
        if (a.index() == 2 || b.index() == 2) return as_words(e, a) + s * as_words(e, b);
        fail(e, "cannot add a scalar to an operad element");
    }

    Value scale(const Rational& c, const Value& v) const {
        return std::visit([&](const auto& x) -> Value { return c * x; }, v);
    }

    // Words of a symmetric carrier are kept sorted.
    static MElem sorted(const MElem& a) { return symmetrize(a); }

    // Undecorated tree letters read as decorated classes of color 1.
    static MElem colored(const MElem& a) {
        return map_keys(a, [](const Mono& m) {
            Mono out;
            for (Obj x : m) {
                if (x.fam == Fam::Tree && x.col.empty()) {
                    x.col.assign(x.n, 1);
                    x = canonical(x);
                }
                out.push_back(x);
            }
            return symmetrize(out);
        });
    }

    void check_letters(const Expr& e, const MElem& a) const {
        OpElem letters;
        for (const auto& [m, c] : a)
            for (const auto& x : m) letters.add(x, Rational(1));
        check_basis(e, letters);
    }

    static bool words_iso(const MElem& a) {
        for (const auto& [m, c] : a)
            for (const auto& x : m)
                if (x.iso) return true;
        return false;
    }

    Value eval(const Expr& e) const {
        auto arg = [&](std::size_t i) { return eval(e->args[i]); };
        switch (e->kind) {
            case ExprKind::Number: return e->number;
            case ExprKind::Literal: return OpElem::single(e->literal);
            case ExprKind::Neg: return scale(Rational(-1), arg(0));
            case ExprKind::Add: return add(e, arg(0), arg(1), false);
            case ExprKind::Sub: return add(e, arg(0), arg(1), true);
            case ExprKind::Scale: {
                const Value a = arg(0), b = arg(1);
                if (auto c = std::get_if<Rational>(&a)) return scale(*c, b);
                if (auto c = std::get_if<Rational>(&b)) return scale(*c, a);
                fail(e, "'*' needs a scalar on one side");
            }
            case ExprKind::Concat: return concat(as_words(e->args[0], arg(0)), as_words(e->args[1], arg(1)));
            case ExprKind::Tensor: return tensor(as_words(e->args[0], arg(0)), as_words(e->args[1], arg(1)));
            case ExprKind::Compose: {
                const OpElem p = as_op(e->args[0], arg(0)), q = as_op(e->args[1], arg(1));
                check_basis(e->args[0], p);
                check_basis(e->args[1], q);
                const int n = arity(e->args[0], p);
                if (e->slot < 1 || e->slot > n) fail(e, "slot " + std::to_string(e->slot) + " outside 1.." + std::to_string(n));
                return on_reps({p, q}, [&](const auto& v) { return partial_compose(cx.op, v[0], e->slot, v[1]); });
            }
            case ExprKind::Bullet: {
                const OpElem p = as_op(e->args[0], arg(0)), q = as_op(e->args[1], arg(1));
                check_basis(e->args[0], p);
                check_basis(e->args[1], q);
                return on_reps({p, q}, [&](const auto& v) { return prelie(cx.op, v[0], v[1]); });
            }
            case ExprKind::Brace:
            case ExprKind::Bracket: {
                std::vector<OpElem> xs;
                for (std::size_t i = 0; i < e->args.size(); ++i) {
                    xs.push_back(as_op(e->args[i], arg(i)));
                    check_basis(e->args[i], xs.back());
                }
                const bool is_brace = e->kind == ExprKind::Brace;
                return on_reps(xs, [&](const auto& v) {
                    std::vector<OpElem> rest(v.begin() + 1, v.end());
                    return is_brace ? brace(cx.op, v[0], rest) : binf_bracket(cx.op, v[0], rest);
                });
            }
            case ExprKind::StarT:
            case ExprKind::DendLeft:
            case ExprKind::DendRight: {
                const MElem u = as_words(e->args[0], arg(0)), v = as_words(e->args[1], arg(1));
                check_letters(e->args[0], u);
                check_letters(e->args[1], v);
                const auto ctx = brace_binfinity(cx.op);
                if (e->kind == ExprKind::StarT)
                    return bilinear_words(u, v, [&](const Mono& a, const Mono& b) { return star_tensor(ctx, a, b); });
                if (e->kind == ExprKind::DendLeft)
                    return bilinear_words(u, v, [&](const Mono& a, const Mono& b) { return dend_left(ctx, a, b); });
                return bilinear_words(u, v, [&](const Mono& a, const Mono& b) { return dend_right(ctx, a, b); });
            }
            case ExprKind::StarS: {
                MElem u = as_words(e->args[0], arg(0)), v = as_words(e->args[1], arg(1));
                if (cx.op.decorated() && cx.op.kind() == OperadName::PreLie) {
                    u = colored(u);
                    v = colored(v);
                    for (const auto* w : {&u, &v})
                        for (const auto& [m, c] : *w)
                            for (const auto& x : m)
                                if (x.fam != Fam::Tree || !x.iso || x.has_output() ||
                                    *std::max_element(x.col.begin(), x.col.end()) > cx.op.colors())
                                    fail(e, literal(x) + " is not a decorated tree over " + std::to_string(cx.op.colors()) +
                                                " colors");
                    return multiply(grossman_larson(cx.op.colors()), u, v);
                }
                check_letters(e->args[0], u);
                check_letters(e->args[1], v);
                const bool cv = words_iso(u) || words_iso(v);
                if (cv) {
                    u = map_keys(u, [](Mono m) {
                        for (auto& x : m) x = canonical(x);
                        return m;
                    });
                    v = map_keys(v, [](Mono m) {
                        for (auto& x : m) x = canonical(x);
                        return m;
                    });
                }
                return multiply(symmetric_binf_bialgebra(cx.op, cv), sorted(u), sorted(v));
            }
        }
        fail(e, "unknown expression");
    }
};

}  // namespace

Expr parse_expr(const std::string& source) { return Parser(source).run(); }

std::string print_expr(const Expr& e) {
    auto bin = [&](const char* op, int l) {
        return print_at(e->args[0], l) + op + print_at(e->args[1], l + 1);
    };
    switch (e->kind) {
        case ExprKind::Number: return e->number.str();
        case ExprKind::Literal: return literal(e->literal) + (e->dual ? "*" : "");
        case ExprKind::Neg: return "-" + print_at(e->args[0], 4);
        case ExprKind::Add: return bin(" + ", 1);
        case ExprKind::Sub: return bin(" - ", 1);
        case ExprKind::Tensor: return print_at(e->args[0], 3) + " (x) " + print_at(e->args[1], 3);
        case ExprKind::Scale: return bin(" * ", 3);
        case ExprKind::Concat: return bin("\xC2\xB7", 5);
        case ExprKind::Compose: return bin((" o_" + std::to_string(e->slot) + " ").c_str(), 6);
        case ExprKind::Bullet: return bin(" bullet ", 6);
        case ExprKind::Brace:
        case ExprKind::Bracket: {
            std::string s = std::string(e->kind == ExprKind::Brace ? "brace(" : "binf(") + print_expr(e->args[0]) + ";";
            for (std::size_t i = 1; i < e->args.size(); ++i) s += " " + print_at(e->args[i], 6);
            return s + ")";
        }
        case ExprKind::StarT:
        case ExprKind::StarS:
        case ExprKind::DendLeft:
        case ExprKind::DendRight: {
            static const std::map<ExprKind, std::string> names = {{ExprKind::StarT, "star_t"},
                                                                  {ExprKind::StarS, "star_s"},
                                                                  {ExprKind::DendLeft, "dend_left"},
                                                                  {ExprKind::DendRight, "dend_right"}};
            return names.at(e->kind) + "(" + print_expr(e->args[0]) + "; " + print_expr(e->args[1]) + ")";
        }
    }
    return "?";
}

Value evaluate(const Expr& e, const EvalContext& cx) { return Evaluator{cx}.eval(e); }

Value evaluate(const std::string& source, const EvalContext& cx) { return evaluate(parse_expr(source), cx); }

std::string value_kind(const Value& v) {
    static const char* names[] = {"scalar", "operad", "words", "tensor"};
    return names[v.index()];
}

std::string value_text(const Value& v) {
    return std::visit([](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Rational>) return x.str();
        else return to_text(x);
    }, v);
}

}  // namespace opforge
