#include "doctest.h"
#include "opforge/induced.hpp"

#include <functional>

using namespace opforge;

namespace {

using WElem = Element<ObjWord>;
using WPair = Element<std::pair<ObjWord, ObjWord>>;

OpElem one(const Obj& x) { return OpElem::single(x); }
WElem word(const ObjWord& w) { return WElem::single(w); }
Obj tree(const char* s) { return parse_tree_text(s); }

long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// All non-empty words of basis letters with total arity <= max_total.
std::vector<ObjWord> words_up_to(const Operad& op, int max_total, int max_len) {
    std::vector<ObjWord> out;
    std::function<void(ObjWord&, int)> rec = [&](ObjWord& w, int left) {
        if (!w.empty()) out.push_back(w);
        if (static_cast<int>(w.size()) == max_len) return;
        for (int a = 1; a <= left; ++a)
            for (const auto& x : op.basis(a)) {
                w.push_back(x);
                rec(w, left - a);
                w.pop_back();
            }
    };
    ObjWord w;
    rec(w, max_total);
    return out;
}

int arity(const ObjWord& w) {
    int a = 0;
    for (const auto& x : w) a += x.n;
    return a;
}

template <class Ctx>
OpElem bracket_left(const Ctx& ctx, const WElem& a, const ObjWord& w) {
    OpElem out;
    for (const auto& [u, c] : a) out.add(ctx(u, w), c);
    return out;
}

template <class Ctx>
OpElem bracket_right(const Ctx& ctx, const ObjWord& u, const WElem& b) {
    OpElem out;
    for (const auto& [w, c] : b) out.add(ctx(u, w), c);
    return out;
}

// Ordered splittings of w into `parts` consecutive (possibly empty) factors.
void splittings(const ObjWord& w, int parts, const std::function<void(const std::vector<ObjWord>&)>& f) {
    std::vector<ObjWord> cur;
    std::function<void(std::size_t, int)> rec = [&](std::size_t from, int left) {
        if (left == 1) {
            cur.emplace_back(w.begin() + from, w.end());
            f(cur);
            cur.pop_back();
            return;
        }
        for (std::size_t to = from; to <= w.size(); ++to) {
            cur.emplace_back(w.begin() + from, w.begin() + to);
            rec(to, left - 1);
            cur.pop_back();
        }
    };
    rec(0, parts);
}

// Concatenation of single letters, brace values and plain words.
WElem assemble(const std::vector<WElem>& pieces) {
    WElem acc = word({});
    for (const auto& p : pieces) acc = concat(acc, p);
    return acc;
}

// Explicit brace-algebra formulas for *, < and > on T(V): the x_i are
// braced with alternate factors of a splitting of v.
WElem explicit_product(const BInfinity<Obj>& ctx, const ObjWord& u, const ObjWord& v, int kind) {
    const int k = static_cast<int>(u.size());
    if (k == 0) return kind == 1 ? WElem{} : word(v);
    WElem out;
    const int parts = kind == 1 ? 2 * k : 2 * k + 1;
    splittings(v, parts, [&](const std::vector<ObjWord>& s) {
        if (kind == 2 && s[0].empty()) return;
        std::vector<WElem> pieces;
        int off = kind == 1 ? 0 : 1;
        if (kind != 1) pieces.push_back(word(s[0]));
        for (int i = 0; i < k; ++i) {
            pieces.push_back(as_words(ctx({u[i]}, s[off + 2 * i])));
            pieces.push_back(word(s[off + 2 * i + 1]));
        }
        out += assemble(pieces);
    });
    return out;
}

WPair reduced_dec(const WElem& a) {
    WPair out;
    for (const auto& [w, c] : a)
        for (std::size_t i = 1; i < w.size(); ++i)
            out.add({ObjWord(w.begin(), w.begin() + i), ObjWord(w.begin() + i, w.end())}, c);
    return out;
}

// sum over terms t of the reduced coproduct of w: f(t.first, t.second)
WPair over_reduced(const ObjWord& w, const std::function<WPair(const ObjWord&, const ObjWord&)>& f) {
    WPair out;
    for (std::size_t i = 1; i < w.size(); ++i) out += f(ObjWord(w.begin(), w.begin() + i), ObjWord(w.begin() + i, w.end()));
    return out;
}

WPair tp(const WElem& a, const WElem& b) { return tensor(a, b); }

}  // namespace

TEST_CASE("Com brace closed form against index enumeration") {
    Operad c(OperadName::Com);
    for (int n = 1; n <= 5; ++n)
        for (int k = 0; k <= 3; ++k) {
            std::vector<int> js(k, 1);
            std::function<void(int)> rec = [&](int pos) {
                if (pos == k) {
                    std::vector<OpElem> args;
                    int sum = 0;
                    for (int j : js) { args.push_back(one(com(j))); sum += j; }
                    OpElem got = brace(c, one(com(n)), args);
                    if (k > n) { CHECK(got.is_zero()); return; }
                    CHECK(got == Rational(binom(n, k)) * one(com(n - k + sum)));
                    return;
                }
                for (int j = 1; j <= 3; ++j) { js[pos] = j; rec(pos + 1); }
            };
            rec(0);
        }
    CHECK(brace(c, one(com(3)), {one(com(2)), one(com(2))}) == Rational(3) * one(com(5)));
}

TEST_CASE("Com pre-Lie product") {
    Operad c(OperadName::Com);
    for (int n = 1; n <= 5; ++n)
        for (int m = 1; m <= 5; ++m) CHECK(prelie(c, one(com(n)), one(com(m))) == Rational(n) * one(com(n + m - 1)));
    CHECK(prelie(c, one(com(2)), one(com(2))) == Rational(2) * one(com(3)));
}

TEST_CASE("brace, pre-Lie and b-infinity brackets agree on small inputs") {
    Operad pl(OperadName::PreLie);
    Operad as(OperadName::As);
    // one argument: brace = pre-Lie product; arity one: plain composition
    for (int a = 1; a <= 3; ++a)
        for (const auto& p : pl.basis(a))
            for (const auto& q : pl.basis(2)) {
                CHECK(brace(pl, one(p), {one(q)}) == prelie(pl, one(p), one(q)));
                CHECK(binf_bracket(pl, one(p), {one(q)}) == prelie(pl, one(p), one(q)));
            }
    CHECK(brace(as, one(perm({1})), {one(perm({2, 1}))}) == one(perm({2, 1})));
    // two unit arguments in a two-vertex tree give the tree back
    CHECK(brace(pl, one(tree("1[2]")), {pl.unit(), pl.unit()}) == one(tree("1[2]")));
    // b-infinity bracket = sum of braces over the orders of the arguments
    for (const auto& p : pl.basis(3))
        for (const auto& q : pl.basis(1))
            for (const auto& r : pl.basis(2)) {
                OpElem lhs = binf_bracket(pl, one(p), {one(q), one(r)});
                OpElem rhs = brace(pl, one(p), {one(q), one(r)}) + brace(pl, one(p), {one(r), one(q)});
                CHECK(lhs == rhs);
            }
    // more arguments than inputs
    CHECK(brace(as, one(perm({1, 2})), {one(perm({1})), one(perm({1})), one(perm({1}))}).is_zero());
}

TEST_CASE("pre-Lie identity on basis triples") {
    auto check = [](const Operad& op, int max_each, int max_total) {
        int cases = 0;
        for (int a = 1; a <= max_each; ++a)
            for (int b = 1; b <= max_each; ++b)
                for (int c = 1; c <= max_each; ++c) {
                    if (a + b + c > max_total) continue;
                    for (const auto& x : op.basis(a))
                        for (const auto& y : op.basis(b))
                            for (const auto& z : op.basis(c)) {
                                auto assoc = [&](const Obj& p, const Obj& q, const Obj& r) {
                                    return prelie(op, prelie(op, one(p), one(q)), one(r)) -
                                           prelie(op, one(p), prelie(op, one(q), one(r)));
                                };
                                CHECK(assoc(x, y, z) == assoc(x, z, y));
                                ++cases;
                            }
                }
        return cases;
    };
    CHECK(check(Operad(OperadName::Com), 5, 15) > 0);
    CHECK(check(Operad(OperadName::As), 3, 9) > 0);
    CHECK(check(Operad(OperadName::PreLie), 4, 7) >= 1000);
    CHECK(check(Operad(OperadName::O), 3, 7) > 0);
}

TEST_CASE("B-infinity star product examples") {
    Operad as(OperadName::As);
    BInfinity<Obj> ctx = brace_binfinity(as);
    Obj x = perm({1, 2}), y = perm({2, 1});
    WElem xy = star_tensor(ctx, {x}, {y});
    CHECK(xy == word({x, y}) + word({y, x}) + as_words(ctx({x}, {y})));
    // the bracket is recovered as the length-one part of the product
    CHECK(xy.filter([](const ObjWord& w) { return w.size() == 1; }) == as_words(ctx({x}, {y})));
    // trivial brackets give the shuffle product
    BInfinity<Obj> triv = trivial_binfinity<Obj>();
    Obj a = perm({1}), b = perm({2, 1});
    CHECK(star_tensor(triv, {a}, {b}) == word({a, b}) + word({b, a}));
    for (int k = 0; k <= 3; ++k)
        for (int l = 0; l <= 3; ++l) {
            ObjWord u(k, a), v(l, b);
            Rational total(0);
            for (const auto& [w, c] : star_tensor(triv, u, v)) total += c;
            CHECK(total == Rational(binom(k + l, k)));
        }
    CHECK(star_tensor(ctx, {}, {}) == word({}));
    CHECK(star_tensor(ctx, {x}, {}) == word({x}));
}

TEST_CASE("quasi-shuffle from the associative bracket") {
    std::function<Element<Obj>(const Obj&, const Obj&)> mul = [](const Obj& p, const Obj& q) {
        std::vector<int> s(p.d.size());
        for (std::size_t i = 0; i < s.size(); ++i) s[i] = p.d[i] + q.d[i];
        return Element<Obj>::single(var(s));
    };
    BInfinity<Obj> ctx = associative_binfinity<Obj>(mul);
    Obj X1 = var({1, 0}), X2 = var({0, 1}), X11 = var({1, 1});
    CHECK(star_tensor(ctx, {X1}, {X2}) == word({X1, X2}) + word({X2, X1}) + word({X11}));
    std::vector<Obj> letters = {var({1, 0}), var({0, 1}), var({2, 0})};
    std::vector<ObjWord> ws{{}};
    for (int len = 1; len <= 4; ++len) {
        std::vector<ObjWord> next;
        for (const auto& w : ws)
            if (static_cast<int>(w.size()) == len - 1)
                for (const auto& l : letters) {
                    ObjWord v = w;
                    v.push_back(l);
                    next.push_back(v);
                }
        ws.insert(ws.end(), next.begin(), next.end());
    }
    int cases = 0;
    for (const auto& u : ws)
        for (const auto& v : ws) {
            if (u.size() + v.size() > 4) continue;
            CHECK(star_tensor(ctx, u, v) == quasi_shuffle(u, v, mul));
            ++cases;
        }
    CHECK(cases > 100);
}

TEST_CASE("B-infinity axiom and associativity for operad braces") {
    for (auto name : {OperadName::As, OperadName::Com, OperadName::PreLie, OperadName::O}) {
        Operad op(name);
        INFO(op.name());
        BInfinity<Obj> ctx = brace_binfinity(op);
        auto ws = words_up_to(op, 4, 4);
        for (const auto& u : ws)
            for (const auto& v : ws)
                for (const auto& w : ws) {
                    if (arity(u) + arity(v) + arity(w) > 4) continue;
                    WElem uv = star_tensor(ctx, u, v), vw = star_tensor(ctx, v, w);
                    CHECK(bracket_left(ctx, uv, w) == bracket_right(ctx, u, vw));
                    WElem lhs = bilinear_words(uv, word(w), [&](const ObjWord& a, const ObjWord& b) { return star_tensor(ctx, a, b); });
                    WElem rhs = bilinear_words(word(u), vw, [&](const ObjWord& a, const ObjWord& b) { return star_tensor(ctx, a, b); });
                    CHECK(lhs == rhs);
                }
    }
}

TEST_CASE("brace relation: nested brace equals the split formula") {
    for (auto name : {OperadName::As, OperadName::PreLie, OperadName::O}) {
        Operad op(name);
        INFO(op.name());
        BInfinity<Obj> ctx = brace_binfinity(op);
        auto ws = words_up_to(op, 3, 3);
        for (int a = 1; a <= 3; ++a)
            for (const auto& x : op.basis(a))
                for (const auto& ys : ws)
                    for (const auto& w : ws) {
                        if (a + arity(ys) + arity(w) > 4) continue;
                        const int k = static_cast<int>(ys.size());
                        OpElem inner = ctx({x}, ys);
                        OpElem lhs;
                        for (const auto& [z, c] : inner) lhs.add(ctx({z}, w), c);
                        OpElem rhs;
                        splittings(w, 2 * k + 1, [&](const std::vector<ObjWord>& s) {
                            std::vector<WElem> pieces{word(s[0])};
                            for (int i = 0; i < k; ++i) {
                                pieces.push_back(as_words(ctx({ys[i]}, s[2 * i + 1])));
                                pieces.push_back(word(s[2 * i + 2]));
                            }
                            rhs += bracket_right(ctx, {x}, assemble(pieces));
                        });
                        CHECK(lhs == rhs);
                        // equivalently <<x,u>,v> = <x, u*v>
                        CHECK(lhs == bracket_right(ctx, {x}, star_tensor(ctx, ys, w)));
                    }
    }
}

TEST_CASE("dendriform products and their explicit brace formulas") {
    Operad pl(OperadName::PreLie);
    BInfinity<Obj> ctx = brace_binfinity(pl);
    auto ws = words_up_to(pl, 4, 4);
    for (const auto& u : ws)
        for (const auto& v : ws) {
            if (arity(u) + arity(v) > 4) continue;
            WElem l = dend_left(ctx, u, v), r = dend_right(ctx, u, v);
            CHECK(l + r == star_tensor(ctx, u, v));
            CHECK(l == explicit_product(ctx, u, v, 1));
            CHECK(r == explicit_product(ctx, u, v, 2));
            CHECK(l + r == explicit_product(ctx, u, v, 0));
        }
}

TEST_CASE("dendriform axioms and compatibility with deconcatenation") {
    Operad pl(OperadName::PreLie);
    BInfinity<Obj> ctx = brace_binfinity(pl);
    auto L = [&](const WElem& a, const WElem& b) { return bilinear_words(a, b, [&](const ObjWord& x, const ObjWord& y) { return dend_left(ctx, x, y); }); };
    auto R = [&](const WElem& a, const WElem& b) { return bilinear_words(a, b, [&](const ObjWord& x, const ObjWord& y) { return dend_right(ctx, x, y); }); };
    auto S = [&](const WElem& a, const WElem& b) { return bilinear_words(a, b, [&](const ObjWord& x, const ObjWord& y) { return star_tensor(ctx, x, y); }); };
    auto ws = words_up_to(pl, 4, 4);
    int cases = 0;
    for (const auto& u : ws)
        for (const auto& v : ws)
            for (const auto& w : ws) {
                if (arity(u) + arity(v) + arity(w) > 4) continue;
                WElem U = word(u), V = word(v), W = word(w);
                CHECK(L(L(U, V), W) == L(U, S(V, W)));
                CHECK(L(R(U, V), W) == R(U, L(V, W)));
                CHECK(R(U, R(V, W)) == R(S(U, V), W));
                ++cases;
            }
    CHECK(cases > 0);
    for (const auto& u : ws)
        for (const auto& v : ws) {
            if (arity(u) + arity(v) > 4) continue;
            WElem U = word(u), V = word(v);
            auto left_terms = [&](bool left) {
                auto P = [&](const WElem& a, const WElem& b) { return left ? L(a, b) : R(a, b); };
                WPair out = left ? tp(U, V) : tp(V, U);
                out += over_reduced(left ? u : v, [&](const ObjWord& a, const ObjWord& b) {
                    return left ? tp(word(a), S(word(b), V)) : tp(word(a), S(U, word(b)));
                });
                out += over_reduced(v, [&](const ObjWord& a, const ObjWord& b) { return tp(P(U, word(a)), word(b)); });
                out += over_reduced(u, [&](const ObjWord& a, const ObjWord& b) { return tp(P(word(a), V), word(b)); });
                out += over_reduced(u, [&](const ObjWord& a1, const ObjWord& a2) {
                    return over_reduced(v, [&](const ObjWord& b1, const ObjWord& b2) {
                        return tp(P(word(a1), word(b1)), S(word(a2), word(b2)));
                    });
                });
                return out;
            };
            CHECK(reduced_dec(L(U, V)) == left_terms(true));
            CHECK(reduced_dec(R(U, V)) == left_terms(false));
        }
}

TEST_CASE("symmetric star product from b-infinity brackets") {
    Operad pl(OperadName::PreLie);
    BInf<Obj> ctx = binf_from_operad(pl);
    Obj p = tree("1[2]"), q = tree("1");
    Element<ObjWord> got = star_sym(ctx, {p}, {q});
    CHECK(got == Element<ObjWord>::single(symmetrize(ObjWord{p, q})) + as_words(prelie(pl, one(p), one(q))));
    // Grossman-Larson on rooted trees: dot * dot = dot dot + ladder
    Obj dot = canonical(tree("1")), ladder = canonical(tree("1[2]"));
    CHECK(star_sym(grafting_binf(), {dot}, {dot}) == Element<ObjWord>::single({dot, dot}) + Element<ObjWord>::single({ladder}));
    CHECK(graft(dot, dot) == one(ladder));
    // associativity on small monomials
    auto ws = words_up_to(pl, 3, 3);
    for (const auto& u : ws)
        for (const auto& v : ws)
            for (const auto& w : ws) {
                if (arity(u) + arity(v) + arity(w) > 4) continue;
                ObjWord su = symmetrize(u), sv = symmetrize(v), sw = symmetrize(w);
                auto st = [&](const ObjWord& a, const ObjWord& b) { return star_sym(ctx, a, b); };
                CHECK(bilinear_words(star_sym(ctx, su, sv), word(sw), st) ==
                      bilinear_words(word(su), star_sym(ctx, sv, sw), st));
                // compatibility with the unshuffle coproduct
                auto mul_pairs = [&](const WPair& a, const WPair& b) {
                    WPair out;
                    for (const auto& [k1, c1] : a)
                        for (const auto& [k2, c2] : b) out.add(tensor(st(k1.first, k2.first), st(k1.second, k2.second)), c1 * c2);
                    return out;
                };
                WPair lhs;
                for (const auto& [m, c] : star_sym(ctx, su, sv)) lhs.add(unshuffle(m, true), c);
                CHECK(lhs == mul_pairs(unshuffle(su, true), unshuffle(sv, true)));
            }
}

TEST_CASE("Oudom-Guin recursion equals the operadic b-infinity bracket on PreLie") {
    Operad pl(OperadName::PreLie);
    std::function<Element<Obj>(const Obj&, const Obj&)> dot = [&](const Obj& a, const Obj& b) { return prelie(pl, one(a), one(b)); };
    int cases = 0;
    auto ws = words_up_to(pl, 4, 3);
    for (int a = 1; a <= 4; ++a)
        for (const auto& x : pl.basis(a))
            for (const auto& ys : ws) {
                if (a + arity(ys) > 5) continue;
                std::vector<OpElem> args;
                for (const auto& y : ys) args.push_back(one(y));
                CHECK(oudom_guin(dot, one(x), args) == binf_bracket(pl, one(x), args));
                ++cases;
            }
    CHECK(cases > 100);
}

TEST_CASE("theta images in O, qO and SG") {
    Operad o(OperadName::O), qo(OperadName::QO), sg(OperadName::SG);
    CHECK(theta_image(o, 1, 1) == one(chain_qo(2)));
    CHECK(theta_image(o, 2, 1) == one(parse_qo("qo{3; 1<3, 2<3}")));
    CHECK(theta_image(o, 1, 2) == one(parse_qo("qo{3; 1<2, 1<3}")));
    OpElem t22 = theta_image(o, 2, 2);
    CHECK(t22.size() == 5);
    for (const auto& [x, c] : t22) {
        CHECK(c == Rational(1));
        CHECK(is_connected(x));
        for (int a = 1; a <= 2; ++a)
            for (int b = 3; b <= 4; ++b) CHECK(x.d[(b - 1) * 4 + (a - 1)] == 0);
    }
    CHECK(theta_image(o, 1, 0) == one(discrete_qo(1)));
    CHECK(theta_image(o, 2, 0).is_zero());
    for (int k = 1; k <= 3; ++k)
        for (int l = 1; k + l <= 4; ++l) {
            CHECK(theta_image(o, k, l) == theta_image_ideal(o, k, l));
            CHECK(theta_image(qo, k, l) == theta_image_ideal(qo, k, l));
            CHECK(theta_image(sg, k, l) == theta_image_ideal(sg, k, l));
        }
    CHECK_THROWS(theta_image(Operad(OperadName::As), 1, 1));
}
