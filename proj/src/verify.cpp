#include "opforge/verify.hpp"

#include "opforge/format.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <type_traits>

namespace opforge {

namespace {

using WElem = Element<ObjWord>;
using WPair = Element<std::pair<ObjWord, ObjWord>>;

template <class T>
struct is_pair : std::false_type {};
template <class A>
struct is_pair<std::pair<A, A>> : std::true_type {};
template <class T>
struct is_triple : std::false_type {};
template <class A>
struct is_triple<std::tuple<A, A, A>> : std::true_type {};

OpElem one(const Obj& x) { return OpElem::single(x); }
WElem word(const ObjWord& w) { return WElem::single(w); }

int size_of(const ObjWord& w) {
    int a = 0;
    for (const auto& x : w) a += x.n;
    return a;
}

// Collects cases and failures; applies the mutation to every computed
// (left-hand) value.
class Recorder {
public:
    Recorder(SuiteReport& r, Mutation m, bool mutate_values) : rep_(r), mut_(mutate_values ? m : Mutation::None) {}

    template <class K>
    void check(const std::string& name, const std::string& inputs, Element<K> lhs, const Element<K>& rhs) {
        ++rep_.cases;
        lhs = mutate(std::move(lhs));
        if (!(lhs == rhs)) fail(name, inputs, to_text(lhs), to_text(rhs));
    }

    void check_value(const std::string& name, const std::string& inputs, const Rational& lhs, const Rational& rhs) {
        ++rep_.cases;
        if (lhs != rhs) fail(name, inputs, lhs.str(), rhs.str());
    }

    template <class K>
    Element<K> mutate(Element<K> e) const {
        if (e.is_zero()) return e;
        switch (mut_) {
            case Mutation::None: break;
            case Mutation::SignFlip: {
                const auto [k, c] = *e.begin();
                e.add(k, Rational(-2) * c);
                break;
            }
            case Mutation::DropTerm: e.erase(std::prev(e.end())->first); break;
            case Mutation::SwapTensor:
                if constexpr (is_pair<K>::value) {
                    Element<K> out;
                    for (const auto& [k, c] : e) out.add({k.second, k.first}, c);
                    return out;
                } else if constexpr (is_triple<K>::value) {
                    Element<K> out;
                    for (const auto& [k, c] : e) out.add({std::get<2>(k), std::get<1>(k), std::get<0>(k)}, c);
                    return out;
                }
                break;
        }
        return e;
    }

private:
    SuiteReport& rep_;
    Mutation mut_;

    void fail(const std::string& name, const std::string& inputs, std::string lhs, std::string rhs) {
        ++rep_.failure_count;
        if (rep_.failures.size() < SuiteReport::max_stored)
            rep_.failures.push_back({name, inputs, std::move(lhs), std::move(rhs)});
    }
};

struct Context {
    SuiteReport& rep;
    const SuiteParams& params;

    std::string get(const std::string& k, const std::string& fallback) {
        std::string v = params.get(k, fallback);
        rep.params[k] = v;
        return v;
    }
    int get_int(const std::string& k, int fallback) {
        int v = params.get_int(k, fallback);
        rep.params[k] = std::to_string(v);
        return v;
    }
    bool get_bool(const std::string& k, bool fallback) { return get_int(k, fallback ? 1 : 0) != 0; }

    Operad operad(const std::string& fallback = "PreLie") {
        Operad op = parse_operad(get("operad", fallback), get("mode", "circ"), get_int("colors", 0));
        return params.mutation == Mutation::SignFlip ? op.with_sign_bug() : op;
    }
};

void reject_swap(const SuiteParams& p, const std::string& suite) {
    if (p.mutation == Mutation::SwapTensor)
        throw std::invalid_argument("suite " + suite + " has no tensor-valued checks; swap-tensor does not apply");
}

// ------------------------------------------------------------ operad axioms

void suite_operad_assoc(Context& cx) {
    reject_swap(cx.params, "operad-assoc");
    const Operad op = cx.operad();
    const bool small = op.kind() == OperadName::SG || op.kind() == OperadName::NcSG;
    const bool medium = op.kind() == OperadName::QO || op.kind() == OperadName::O || op.decorated();
    const int max_total = cx.get_int("max_total", small ? 3 : medium ? 4 : 5);
    Recorder rec(cx.rep, cx.params.mutation, cx.params.mutation != Mutation::SignFlip);
    for (int m = 1; m <= max_total; ++m)
        for (int n = 1; m + n <= max_total + 1; ++n)
            for (int k = 1; m + n + k - 2 <= max_total; ++k)
                for (const auto& p : op.basis(m))
                    for (const auto& q : op.basis(n))
                        for (const auto& r : op.basis(k))
                            for (int a = 1; a <= m; ++a) {
                                const OpElem pq = op.compose(p, a, q);
                                for (int j = 1; j <= n; ++j)
                                    rec.check("sequential", "p=" + literal(p) + " i=" + std::to_string(a) + " q=" + literal(q) +
                                                                " j=" + std::to_string(j) + " r=" + literal(r),
                                              partial_compose(op, pq, a + j - 1, one(r)),
                                              partial_compose(op, one(p), a, op.compose(q, j, r)));
                                for (int b = a + 1; b <= m; ++b)
                                    rec.check("parallel", "p=" + literal(p) + " i=" + std::to_string(a) + " q=" + literal(q) +
                                                              " j=" + std::to_string(b) + " r=" + literal(r),
                                              partial_compose(op, pq, b + n - 1, one(r)),
                                              partial_compose(op, op.compose(p, b, r), a, one(q)));
                            }
    for (int n = 1; n < max_total; ++n)
        for (const auto& p : op.basis(n)) {
            rec.check("left unit", "p=" + literal(p), partial_compose(op, op.unit(), 1, one(p)), one(p));
            for (int i = 1; i <= n; ++i)
                rec.check("right unit", "p=" + literal(p) + " i=" + std::to_string(i),
                          partial_compose(op, one(p), i, op.unit()), one(p));
        }
    auto canon = [](const OpElem& e) { return map_keys(e, [](const Obj& x) { return canonical(x); }); };
    for (int m = 1; m < max_total; ++m)
        for (int n = 1; m + n - 1 < max_total; ++n)
            for (const auto& p : op.basis(m))
                for (const auto& q : op.basis(n))
                    for (const auto& s : all_permutations(m))
                        for (int i = 1; i <= m; ++i) {
                            Obj sp = op.act(p, s);
                            std::string sigma;
                            for (int v : s) sigma += std::to_string(v);
                            rec.check("equivariance", "p=" + literal(p) + " sigma=" + sigma + " i=" + std::to_string(i) +
                                                          " q=" + literal(q),
                                      canon(op.compose(sp, i, q)), canon(op.compose(p, s[i - 1], q)));
                        }
}

// ------------------------------------------------------------- pre-Lie

void suite_prelie(Context& cx) {
    reject_swap(cx.params, "prelie");
    const Operad op = cx.operad();
    int each = 3, total = 6;
    switch (op.kind()) {
        case OperadName::Com: each = 5, total = 15; break;
        case OperadName::As: each = 3, total = 9; break;
        case OperadName::PreLie: each = op.decorated() ? 3 : 4, total = op.decorated() ? 5 : 7; break;
        case OperadName::O: each = 3, total = 7; break;
        default: break;
    }
    if (cx.params.has("max_vertices")) each = cx.get_int("max_vertices", each);
    each = cx.get_int("max_each", each);
    total = cx.get_int("max_total", total);
    Recorder rec(cx.rep, cx.params.mutation, cx.params.mutation != Mutation::SignFlip);
    std::vector<std::vector<Obj>> basis(each + 1);
    for (int a = 1; a <= each; ++a) basis[a] = op.basis(a);
    auto assoc = [&](const Obj& p, const Obj& q, const Obj& r) {
        return prelie(op, prelie(op, one(p), one(q)), one(r)) - prelie(op, one(p), prelie(op, one(q), one(r)));
    };
    for (int a = 1; a <= each; ++a)
        for (int b = 1; b <= each; ++b)
            for (int c = 1; c <= each; ++c) {
                if (a + b + c > total) continue;
                for (const auto& x : basis[a])
                    for (const auto& y : basis[b])
                        for (const auto& z : basis[c])
                            rec.check("pre-Lie identity", "x=" + literal(x) + " y=" + literal(y) + " z=" + literal(z),
                                      assoc(x, y, z), assoc(x, z, y));
            }
}

// ---------------------------------------------------- brace and B-infinity

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

WElem assemble(const std::vector<WElem>& pieces) {
    WElem acc = word({});
    for (const auto& p : pieces) acc = concat(acc, p);
    return acc;
}

OpElem bracket_left(const BInfinity<Obj>& ctx, const WElem& a, const ObjWord& w) {
    OpElem out;
    for (const auto& [u, c] : a) out.add(ctx(u, w), c);
    return out;
}

OpElem bracket_right(const BInfinity<Obj>& ctx, const ObjWord& u, const WElem& b) {
    OpElem out;
    for (const auto& [w, c] : b) out.add(ctx(u, w), c);
    return out;
}

void suite_brace(Context& cx) {
    reject_swap(cx.params, "brace");
    const Operad op = cx.operad();
    const int max_total = cx.get_int("max_total", 5);
    Recorder rec(cx.rep, cx.params.mutation, cx.params.mutation != Mutation::SignFlip);
    const BInfinity<Obj> ctx = brace_binfinity(op);
    const auto ws = key_words(letter_set(op, max_total - 1, false), max_total - 1, max_total - 1, false);
    for (int a = 1; a < max_total; ++a)
        for (const auto& x : op.basis(a))
            for (const auto& ys : ws)
                for (const auto& w : ws) {
                    if (a + size_of(ys) + size_of(w) > max_total) continue;
                    const int k = static_cast<int>(ys.size());
                    OpElem lhs;
                    for (const auto& [z, c] : ctx({x}, ys)) lhs.add(ctx({z}, w), c);
                    OpElem rhs;
                    splittings(w, 2 * k + 1, [&](const std::vector<ObjWord>& s) {
                        std::vector<WElem> pieces{word(s[0])};
                        for (int i = 0; i < k; ++i) {
                            pieces.push_back(as_words(ctx({ys[i]}, s[2 * i + 1])));
                            pieces.push_back(word(s[2 * i + 2]));
                        }
                        rhs += bracket_right(ctx, {x}, assemble(pieces));
                    });
                    rec.check("nested brace", "x=" + literal(x) + " u=" + literal(ys) + " v=" + literal(w), lhs, rhs);
                }
}

void suite_binf(Context& cx) {
    reject_swap(cx.params, "binf");
    const Operad op = cx.operad();
    const int max_total = cx.get_int("max_total", 4);
    Recorder rec(cx.rep, cx.params.mutation, cx.params.mutation != Mutation::SignFlip);
    const BInfinity<Obj> ctx = brace_binfinity(op);
    const auto ws = key_words(letter_set(op, max_total, false), max_total, max_total, false);
    auto st = [&](const ObjWord& a, const ObjWord& b) { return star_tensor(ctx, a, b); };
    for (const auto& u : ws)
        for (const auto& v : ws)
            for (const auto& w : ws) {
                if (size_of(u) + size_of(v) + size_of(w) > max_total) continue;
                const std::string in = "u=" + literal(u) + " v=" + literal(v) + " w=" + literal(w);
                const WElem uv = st(u, v), vw = st(v, w);
                rec.check("bracket of products", in, bracket_left(ctx, uv, w), bracket_right(ctx, u, vw));
                rec.check("associativity", in, bilinear_words(uv, word(w), st), bilinear_words(word(u), vw, st));
            }
}

// ----------------------------------------------------------- dendriform

WPair reduced_dec(const WElem& a) {
    WPair out;
    for (const auto& [w, c] : a)
        for (std::size_t i = 1; i < w.size(); ++i)
            out.add({ObjWord(w.begin(), w.begin() + i), ObjWord(w.begin() + i, w.end())}, c);
    return out;
}

WPair over_reduced(const ObjWord& w, const std::function<WPair(const ObjWord&, const ObjWord&)>& f) {
    WPair out;
    for (std::size_t i = 1; i < w.size(); ++i) out += f(ObjWord(w.begin(), w.begin() + i), ObjWord(w.begin() + i, w.end()));
    return out;
}

void suite_dendriform(Context& cx) {
    const Operad op = cx.operad();
    const int max_total = cx.get_int("max_total", 4);
    Recorder rec(cx.rep, cx.params.mutation, cx.params.mutation != Mutation::SignFlip);
    const BInfinity<Obj> ctx = brace_binfinity(op);
    auto L = [&](const WElem& a, const WElem& b) {
        return bilinear_words(a, b, [&](const ObjWord& x, const ObjWord& y) { return dend_left(ctx, x, y); });
    };
    auto R = [&](const WElem& a, const WElem& b) {
        return bilinear_words(a, b, [&](const ObjWord& x, const ObjWord& y) { return dend_right(ctx, x, y); });
    };
    auto S = [&](const WElem& a, const WElem& b) {
        return bilinear_words(a, b, [&](const ObjWord& x, const ObjWord& y) { return star_tensor(ctx, x, y); });
    };
    const auto ws = key_words(letter_set(op, max_total, false), max_total, max_total, false);
    for (const auto& u : ws)
        for (const auto& v : ws)
            for (const auto& w : ws) {
                if (size_of(u) + size_of(v) + size_of(w) > max_total) continue;
                const std::string in = "u=" + literal(u) + " v=" + literal(v) + " w=" + literal(w);
                const WElem U = word(u), V = word(v), W = word(w);
                rec.check("(u<v)<w = u<(v*w)", in, L(L(U, V), W), L(U, S(V, W)));
                rec.check("(u>v)<w = u>(v<w)", in, L(R(U, V), W), R(U, L(V, W)));
                rec.check("u>(v>w) = (u*v)>w", in, R(U, R(V, W)), R(S(U, V), W));
            }
    auto tp = [](const WElem& a, const WElem& b) { return tensor(a, b); };
    for (const auto& u : ws)
        for (const auto& v : ws) {
            if (size_of(u) + size_of(v) > max_total) continue;
            const WElem U = word(u), V = word(v);
            auto expected = [&](bool left) {
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
            const std::string in = "u=" + literal(u) + " v=" + literal(v);
            rec.check("reduced coproduct of u<v", in, reduced_dec(L(U, V)), expected(true));
            rec.check("reduced coproduct of u>v", in, reduced_dec(R(U, V)), expected(false));
        }
}

// ------------------------------------------------------------ bialgebras

struct Handle {
    Bialgebra h;
    std::vector<Mono> keys;
    bool products = true;
    std::vector<Mono> product_keys;  // defaults to keys
};

std::vector<Mono> positive_only(const std::vector<Mono>& ks) {
    std::vector<Mono> out;
    for (const auto& k : ks)
        if (std::all_of(k.begin(), k.end(), [](const Obj& x) { return x.n > 1; })) out.push_back(k);
    return out;
}

std::vector<Mono> tree_forests(int colors, int max_vertices) {
    std::vector<std::vector<Obj>> by_degree(max_vertices + 1);
    for (int v = 1; v <= max_vertices; ++v) by_degree[v] = tree_classes(v, colors);
    return forests(by_degree, max_vertices);
}

std::vector<std::vector<Obj>> pair_levels(int colors, int max_vertices) {
    std::vector<std::vector<Obj>> pairs(max_vertices);
    for (int v = 1; v <= max_vertices; ++v) pairs[v - 1] = pair_classes(v, colors);
    return pairs;
}

Handle make_handle(Context& cx) {
    const std::string name = cx.get("handle", "ck");
    Handle out;
    if (name == "ck" || name == "gl" || name == "ec") {
        const int colors = cx.get_int("colors", 1);
        if (name == "ck") {
            out.h = connes_kreimer(colors);
            out.keys = tree_forests(colors, cx.get_int("max_vertices", colors == 1 ? 4 : 3));
            out.products = false;
        } else if (name == "gl") {
            out.h = grossman_larson(colors);
            out.keys = tree_forests(colors, cx.get_int("max_vertices", 4));
            out.product_keys = tree_forests(colors, 2);
        } else {
            out.h = extraction_contraction(colors);
            const int mv = cx.get_int("max_vertices", 4);
            const auto pairs = pair_levels(colors, mv);
            // coproducts are multiplicative: letters and short forests suffice
            std::set<Mono> ks;
            for (const auto& f : forests(pairs, mv - 1, colors == 1 ? 3 : 1)) ks.insert(f);
            for (const auto& f : forests(pairs, 1, 2)) ks.insert(f);
            out.keys.assign(ks.begin(), ks.end());
            out.products = false;
        }
        return out;
    }
    if (name == "quasi-shuffle") {
        out.h = quasi_shuffle_bialgebra();
        const std::vector<Obj> letters = {var({1, 0}), var({0, 1}), var({2, 0}), var({1, 1})};
        const int len = cx.get_int("max_letters", 4);
        out.keys = key_words(letters, len, len, false);
        for (const auto& w : out.keys)
            if (w.size() <= 2) out.product_keys.push_back(w);
        return out;
    }
    const std::string on = cx.get("operad", "PreLie");
    const Operad op = parse_operad(on, cx.get("mode", "circ"), cx.get_int("colors", 0));
    const bool small = op.kind() == OperadName::QO || op.kind() == OperadName::O || op.kind() == OperadName::SG ||
                       op.kind() == OperadName::NcSG || op.decorated();
    if (name == "tensor-brace" || name == "symmetric-binf") {
        const bool cv = name == "symmetric-binf" && cx.get_bool("coinvariant", !small);
        const int total = cx.get_int("max_total", small ? 3 : 4);
        out.h = name == "tensor-brace" ? tensor_brace_bialgebra(op) : symmetric_binf_bialgebra(op, cv);
        out.keys = key_words(letter_set(op, total - 1, cv), total, total - 1, name == "symmetric-binf");
        return out;
    }
    const bool cv = cx.get_bool("coinvariant", true);
    const int total = cx.get_int("max_total", small ? 4 : 5);
    auto ks = key_words(letter_set(op, total - 1, cv), total, 2, cv);
    out.products = false;
    if (name == "dual-star") out.h = dual_star(op, cv), out.keys = ks;
    else if (name == "dual-star-prime") out.h = dual_star_prime(op, cv), out.keys = ks;
    else if (name == "dual-star-reduced") out.h = dual_star_reduced(op, cv), out.keys = positive_only(ks);
    else if (name == "dual-star-prime-reduced") out.h = dual_star_prime_reduced(op, cv), out.keys = positive_only(ks);
    else throw std::invalid_argument("unknown handle \"" + name + "\"");
    return out;
}

void suite_bialgebra(Context& cx) {
    Handle hd = make_handle(cx);
    const Bialgebra& h = hd.h;
    Recorder rec(cx.rep, cx.params.mutation, true);
    for (const auto& k : hd.keys) {
        const MPair d = h.coproduct(k);
        rec.check("coassociativity", literal(k), coproduct_left(h, d), coproduct_right(h, d));
        MElem l, r;
        for (const auto& [t, c] : d) {
            l.add(t.second, c * h.counit(t.first));
            r.add(t.first, c * h.counit(t.second));
        }
        rec.check("left counit", literal(k), l, key(k));
        rec.check("right counit", literal(k), r, key(k));
    }
    if (hd.products) {
        const auto& pk = hd.product_keys.empty() ? hd.keys : hd.product_keys;
        for (const auto& a : pk)
            for (const auto& b : pk)
                rec.check("compatibility", literal(a) + " * " + literal(b), comultiply(h, h.product(a, b)),
                          multiply_pairs(h, h.coproduct(a), h.coproduct(b)));
    }
    if (cx.rep.params["handle"] == "quasi-shuffle") {
        std::function<OpElem(const Obj&, const Obj&)> mul = [](const Obj& p, const Obj& q) {
            std::vector<int> s(std::max(p.d.size(), q.d.size()), 0);
            for (std::size_t i = 0; i < p.d.size(); ++i) s[i] += p.d[i];
            for (std::size_t i = 0; i < q.d.size(); ++i) s[i] += q.d[i];
            return one(var(s));
        };
        const BInfinity<Obj> ctx = associative_binfinity<Obj>(mul);
        for (const auto& u : hd.keys)
            for (const auto& v : hd.keys) {
                if (u.size() + v.size() > 4) continue;
                rec.check("quasi-shuffle recursion", literal(u) + " * " + literal(v), star_tensor(ctx, u, v),
                          quasi_shuffle(u, v, mul));
            }
    }
}

void suite_antipode(Context& cx) {
    reject_swap(cx.params, "antipode");
    Handle hd = make_handle(cx);
    const Bialgebra& h = hd.h;
    if (!h.connected) throw std::invalid_argument("the antipode suite needs a connected handle, " + h.name + " is not");
    Recorder rec(cx.rep, cx.params.mutation, true);
    for (const auto& k : hd.keys) {
        MElem l, r;
        for (const auto& [t, c] : h.coproduct(k)) {
            l.add(multiply(h, antipode(h, key(t.first)), key(t.second)), c);
            r.add(multiply(h, key(t.first), antipode(h, key(t.second))), c);
        }
        const MElem expect = h.counit(k) * unit_element();
        rec.check("S*id = u eps", literal(k), l, expect);
        rec.check("id*S = u eps", literal(k), r, expect);
    }
}

// --------------------------------------------------------------- pairing

// <Delta F, X (x) Y> = <F, X * Y> for F, X, Y in keys, with
// <F, X> = sum_z expand(F)[z] weight(z) [z = X].
void check_adjoint(Recorder& rec, const Bialgebra& dual, const Bialgebra& primal, const std::vector<Mono>& keys,
                   const std::function<MElem(const Mono&)>& expand, const std::function<Rational(const Mono&)>& weight,
                   const std::function<int(const Mono&)>& deg, int max_degree) {
    using Triple = std::tuple<std::size_t, Mono, Mono>;
    std::map<Mono, std::size_t> index;
    for (std::size_t i = 0; i < keys.size(); ++i) index[keys[i]] = i;
    std::map<Mono, std::vector<std::pair<std::size_t, Rational>>> reverse;
    for (std::size_t i = 0; i < keys.size(); ++i)
        for (const auto& [z, c] : expand(keys[i])) reverse[z].push_back({i, c * weight(z)});
    std::map<Triple, Rational> lhs, rhs;
    for (std::size_t i = 0; i < keys.size(); ++i)
        for (const auto& [t, c] : rec.mutate(dual.coproduct(keys[i]))) {
            const MElem ea = expand(t.first), eb = expand(t.second);
            for (const auto& [x, d] : ea) {
                if (!index.count(x)) continue;
                for (const auto& [y, g] : eb)
                    if (index.count(y) && deg(x) + deg(y) <= max_degree) lhs[{i, x, y}] += c * d * weight(x) * g * weight(y);
            }
        }
    for (const auto& x : keys)
        for (const auto& y : keys) {
            if (deg(x) + deg(y) > max_degree) continue;
            for (const auto& [z, c] : primal.product(x, y)) {
                auto it = reverse.find(z);
                if (it == reverse.end()) continue;
                for (const auto& [i, w] : it->second) rhs[{i, x, y}] += c * w;
            }
        }
    std::set<Triple> all;
    for (const auto& [k, v] : lhs) all.insert(k);
    for (const auto& [k, v] : rhs) all.insert(k);
    for (const auto& k : all) {
        const Rational a = lhs.count(k) ? lhs[k] : Rational(0), b = rhs.count(k) ? rhs[k] : Rational(0);
        if (a.is_zero() && b.is_zero()) continue;
        rec.check_value("adjointness", "F=" + literal(keys[std::get<0>(k)]) + " X=" + literal(std::get<1>(k)) +
                                           " Y=" + literal(std::get<2>(k)),
                        a, b);
    }
}

void suite_pairing(Context& cx) {
    const std::string handle = cx.get("handle", "star");
    Recorder rec(cx.rep, cx.params.mutation, true);
    if (handle == "ck-gl") {
        const int colors = cx.get_int("colors", 1);
        const int mv = cx.get_int("max_vertices", 4);
        const auto fs = tree_forests(colors, mv);
        const Bialgebra ck = connes_kreimer(colors), gl = grossman_larson(colors);
        auto weight = [](const Mono& z) { return pairing(key(z), key(z), true, true); };
        auto flat = [](const Mono& f) { return key(f); };
        auto deg = [&](const Mono& m) { return degree(gl, m); };
        check_adjoint(rec, ck, gl, fs, flat, weight, deg, mv);
        return;
    }
    if (handle != "star" && handle != "star-prime") throw std::invalid_argument("unknown pairing handle \"" + handle + "\"");
    const Operad op = parse_operad(cx.get("operad", "PreLie"), cx.get("mode", "circ"), cx.get_int("colors", 0));
    const bool small = op.kind() != OperadName::Com && op.kind() != OperadName::As && op.kind() != OperadName::PreLie;
    const bool cv = cx.get_bool("coinvariant", true);
    const int total = cx.get_int("max_total", small || op.decorated() ? 3 : 4);
    std::vector<Mono> keys = key_words(letter_set(op, total, cv), total, total, cv);
    keys.push_back({});
    const Bialgebra primal = cv ? symmetric_binf_bialgebra(op, true) : tensor_brace_bialgebra(op);
    auto weight = [cv](const Mono& z) { return pairing(key(z), key(z), cv, cv); };
    auto deg = [](const Mono& m) { return size_of(m); };
    if (handle == "star")
        check_adjoint(rec, dual_star(op, cv), primal, keys, [&](const Mono& f) { return psi(op, key(f), cv); }, weight, deg,
                      total);
    else
        check_adjoint(rec, dual_star_prime(op, cv), primal, keys, [](const Mono& f) { return key(f); }, weight, deg, total);
}

// ---------------------------------------------------------- cointeraction

void suite_cointeraction(Context& cx) {
    const int N = cx.params.has("colors") ? cx.get_int("colors", 1) : cx.get_int("N", 1);
    const int mv = cx.get_int("max_vertices", 3);
    Recorder rec(cx.rep, cx.params.mutation, true);
    const Bialgebra ck = connes_kreimer(N), ec = extraction_contraction(N);
    const auto fs = tree_forests(N, mv);
    auto rho = [&](const Mono& f) { return rec.mutate(coaction_rho(N, f)); };
    auto cat = [](const Mono& a, const Mono& b) { return symmetrize(concat(a, b)); };
    for (const auto& f : fs) {
        const MPair r = rho(f);
        // Delta_A is a comodule morphism
        MTriple lhs, rhs;
        for (const auto& [k, c] : ck.coproduct(f)) {
            const MPair ra = rho(k.first), rb = rho(k.second);
            for (const auto& [x, d] : ra)
                for (const auto& [y, g] : rb) lhs.add({x.first, y.first, cat(x.second, y.second)}, c * d * g);
        }
        for (const auto& [k, c] : r)
            for (const auto& [s, d] : ck.coproduct(k.first)) rhs.add({s.first, s.second, k.second}, c * d);
        rec.check("coproduct is a comodule morphism", literal(f), lhs, rhs);
        // the counit of A is a comodule morphism
        MElem counit_side;
        for (const auto& [k, c] : r) counit_side.add(k.second, c * ck.counit(k.first));
        rec.check("counit is a comodule morphism", literal(f), counit_side, Rational(f.empty() ? 1 : 0) * unit_element());
        // comodule axioms
        MTriple left, right;
        for (const auto& [k, c] : r) {
            for (const auto& [s, d] : rho(k.first)) left.add({s.first, s.second, k.second}, c * d);
            for (const auto& [s, d] : ec.coproduct(k.second)) right.add({k.first, s.first, s.second}, c * d);
        }
        rec.check("comodule coassociativity", literal(f), left, right);
        MElem back;
        for (const auto& [k, c] : r) back.add(k.first, c * ec.counit(k.second));
        rec.check("comodule counit", literal(f), back, key(f));
        // the product of A is a comodule morphism
        for (const auto& g : fs) {
            if (degree(ck, f) + degree(ck, g) > mv) continue;
            rec.check("product is a comodule morphism", literal(f) + " * " + literal(g), rho(cat(f, g)),
                      multiply_pairs(ck, coaction_rho(N, f), coaction_rho(N, g)));
        }
    }
    rec.check("unit is a comodule morphism", "1", rho({}), MPair::single({Mono{}, Mono{}}));
}

// ---------------------------------------------------------------- monoid

void suite_monoid(Context& cx) {
    reject_swap(cx.params, "monoid");
    const Operad op = cx.operad("Com");
    const bool decorated = op.decorated();
    const bool cv = cx.get_bool("coinvariant", op.kind() == OperadName::Com || decorated);
    const int bound = cx.get_int("bound", op.kind() == OperadName::Com ? 5 : decorated ? 3 : 4);
    cx.rep.params["seed"] = std::to_string(cx.params.seed);
    Recorder rec(cx.rep, cx.params.mutation, cx.params.mutation != Mutation::SignFlip);
    const SeriesCarrier c{op, cv};
    auto chk = [&](const std::string& name, const std::string& in, const TruncatedSeries& a, const TruncatedSeries& b) {
        rec.check(name, in, a.total(), b.total());
    };
    const std::uint64_t s = cx.params.seed;
    const TruncatedSeries id = identity_series(c, bound);
    const TruncatedSeries zero(bound);
    std::vector<std::pair<std::string, TruncatedSeries>> xs;
    for (int k = 0; k < 3; ++k) xs.push_back({"random(" + std::to_string(s + k) + ")", random_series(c, bound, s + k, 1, 60)});
    // basis-seed series: one key of arity >= 2 on top of a random arity-one part
    const TruncatedSeries base = random_series(c, 1, s + 17);
    for (int n = 2; n <= std::min(bound, 3); ++n) {
        std::set<Obj> keys;
        for (const auto& x : op.basis(n)) keys.insert(cv ? canonical(x) : x);
        for (const auto& k : keys) {
            TruncatedSeries x = base;
            x.bound = bound;
            x.add(one(k));
            xs.push_back({literal(k) + " + arity-one part", x});
        }
    }
    const auto& y = xs[1].second;
    const auto& z = xs[2].second;
    for (const auto& [name, x] : xs) {
        const std::string in = "x=" + name + " y=" + xs[1].first + " z=" + xs[2].first;
        chk("<> associativity", in, diamond(c, diamond(c, x, y), z), diamond(c, x, diamond(c, y, z)));
        chk("<>' associativity", in, diamond_prime(c, diamond_prime(c, x, y), z), diamond_prime(c, x, diamond_prime(c, y, z)));
        chk("<> left unit", in, diamond(c, id, x), x);
        chk("<> right unit", in, diamond(c, x, id), x);
        chk("<>' units", in, diamond_prime(c, zero, x) + diamond_prime(c, x, zero), x + x);
        chk("shift by the unit", in, diamond_prime(c, x, y) + id, diamond(c, x + id, y + id));
        if (!cv && !decorated)
            chk("exponential of the brackets", in, exp_bracket_diamond(binf_from_operad(op), x, y), diamond_prime(c, x, y));
    }
    for (int k = 0; k < 2; ++k) {
        const TruncatedSeries x = random_series(c, bound, s + 40 + k, 2, 60);
        const std::string in = "x=random(" + std::to_string(s + 40 + k) + ", arity >= 2)";
        const TruncatedSeries inv = group_inverse(c, x);
        chk("x <>' inverse", in, diamond_prime(c, x, inv), zero);
        chk("inverse <>' x", in, diamond_prime(c, inv, x), zero);
        chk("double inversion", in, group_inverse(c, inv), x);
    }
    if (op.kind() == OperadName::Com) {
        // power-series substitution: X(Y(t)) with x_n = coefficient of e_n
        auto coeffs = [&](const TruncatedSeries& t) {
            std::vector<Rational> a(bound + 1, Rational(0));
            for (const auto& [d, e] : t.components)
                for (const auto& [k, v] : e) a[d] += v;
            return a;
        };
        const auto X = coeffs(xs[0].second), Y = coeffs(y);
        std::vector<Rational> out(bound + 1, Rational(0)), power(bound + 1, Rational(0));
        power[0] = Rational(1);
        for (int n = 1; n <= bound; ++n) {
            std::vector<Rational> next(bound + 1, Rational(0));
            for (int i = 0; i <= bound; ++i)
                for (int j = 1; i + j <= bound; ++j) next[i + j] += power[i] * Y[j];
            power = next;
            for (int d = 0; d <= bound; ++d) out[d] += X[n] * power[d];
        }
        TruncatedSeries expected(bound);
        for (int d = 1; d <= bound; ++d) expected.add(one(cv ? canonical(com(d)) : com(d)), out[d]);
        chk("power-series substitution", "x=" + xs[0].first + " y=" + xs[1].first, diamond(c, xs[0].second, y), expected);
    }
    if (op.kind() == OperadName::PreLie && decorated && cv) {
        const int N = op.colors();
        TruncatedSeries x(bound);
        std::uint64_t k = s;
        for (int v = 1; v <= bound; ++v)
            for (const auto& t : tree_classes(v, N)) x.add(one(t), Rational(static_cast<long>(k++ % 5) - 2));
        const std::string in = "x=trees y=" + xs[1].first + " z=" + xs[2].first;
        chk("identity character acts trivially", "x=trees", endo_action(N, x, id), x);
        chk("anti-homomorphism", in, endo_action(N, endo_action(N, x, z), y), endo_action(N, x, diamond(c, z, y)));
        chk("anti-homomorphism (insertion)", in, endo_action_prime(N, endo_action_prime(N, x, z), y),
            endo_action_prime(N, x, diamond_prime(c, z, y)));
    }
}

struct SuiteEntry {
    const char* id;
    void (*run)(Context&);
};

const std::vector<SuiteEntry>& registry() {
    static const std::vector<SuiteEntry> r = {
        {"operad-assoc", suite_operad_assoc}, {"prelie", suite_prelie},       {"brace", suite_brace},
        {"binf", suite_binf},                 {"dendriform", suite_dendriform}, {"bialgebra", suite_bialgebra},
        {"pairing", suite_pairing},           {"cointeraction", suite_cointeraction}, {"monoid", suite_monoid},
        {"antipode", suite_antipode},
    };
    return r;
}

}  // namespace

Mutation parse_mutation(const std::string& s) {
    if (s.empty() || s == "none") return Mutation::None;
    if (s == "sign-flip" || s == "sign_flip") return Mutation::SignFlip;
    if (s == "drop-term" || s == "drop_term") return Mutation::DropTerm;
    if (s == "swap-tensor" || s == "swap_tensor") return Mutation::SwapTensor;
    throw std::invalid_argument("unknown mutation \"" + s + "\"");
}

std::string mutation_name(Mutation m) {
    switch (m) {
        case Mutation::None: return "none";
        case Mutation::SignFlip: return "sign-flip";
        case Mutation::DropTerm: return "drop-term";
        case Mutation::SwapTensor: return "swap-tensor";
    }
    return "none";
}

std::string SuiteParams::get(const std::string& key, const std::string& fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
}

int SuiteParams::get_int(const std::string& key, int fallback) const {
    auto it = values.find(key);
    if (it == values.end()) return fallback;
    try {
        std::size_t used = 0;
        const int v = std::stoi(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("parameter " + key + " expects an integer, got \"" + it->second + "\"");
    }
}

std::vector<std::string> suite_ids() {
    std::vector<std::string> out;
    for (const auto& e : registry()) out.push_back(e.id);
    return out;
}

SuiteReport run_suite(const std::string& id, const SuiteParams& params) {
    for (const auto& e : registry())
        if (id == e.id) {
            SuiteReport rep;
            rep.suite = id;
            Context cx{rep, params};
            e.run(cx);
            for (const auto& [k, v] : params.values)
                if (!rep.params.count(k)) throw std::invalid_argument("suite " + id + " has no parameter \"" + k + "\"");
            if (params.mutation != Mutation::None) rep.params["mutation"] = mutation_name(params.mutation);
            return rep;
        }
    throw std::invalid_argument("unknown suite \"" + id + "\"");
}

std::string report_text(const SuiteReport& r) {
    std::ostringstream os;
    os << "suite " << r.suite;
    for (const auto& [k, v] : r.params) os << " " << k << "=" << v;
    os << "\ncases " << r.cases << ", failures " << r.failure_count << ": " << (r.passed() ? "PASS" : "FAIL") << "\n";
    for (const auto& f : r.failures)
        os << "  [" << f.check << "] " << f.inputs << "\n    lhs = " << f.lhs << "\n    rhs = " << f.rhs << "\n";
    if (r.failure_count > static_cast<long long>(r.failures.size()))
        os << "  ... " << (r.failure_count - static_cast<long long>(r.failures.size())) << " more\n";
    return os.str();
}

std::vector<Obj> letter_set(const Operad& op, int max_arity, bool coinvariant) {
    std::vector<Obj> out;
    for (int a = 1; a <= max_arity; ++a)
        for (const auto& x : letter_classes(op, a, coinvariant)) out.push_back(x);
    return out;
}

std::vector<Mono> key_words(const std::vector<Obj>& letters, int max_total, int max_len, bool commutative) {
    std::vector<Mono> out;
    Mono cur;
    std::function<void(std::size_t, int)> rec = [&](std::size_t from, int left) {
        if (!cur.empty()) out.push_back(cur);
        if (static_cast<int>(cur.size()) == max_len) return;
        for (std::size_t i = commutative ? from : 0; i < letters.size(); ++i) {
            if (letters[i].n > left) continue;
            cur.push_back(letters[i]);
            rec(i, left - letters[i].n);
            cur.pop_back();
        }
    };
    rec(0, max_total);
    return out;
}

}  // namespace opforge
