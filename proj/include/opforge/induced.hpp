#pragma once

#include "opforge/operads.hpp"
#include "opforge/words.hpp"

#include <functional>
#include <map>
#include <vector>

namespace opforge {

// ------------------------------------------------ structures on an operad

// <p; q_1 ... q_k> = sum over i_1 < ... < i_k of p o_{i_1..i_k}(q_1..q_k).
OpElem brace(const Operad& op, const OpElem& p, const std::vector<OpElem>& args);
// p . q = sum_i p o_i q.
OpElem prelie(const Operad& op, const OpElem& p, const OpElem& q);
// |_p; q_1 ... q_k_| = sum over injective slot tuples.
OpElem binf_bracket(const Operad& op, const OpElem& p, const std::vector<OpElem>& args);

// Free pre-Lie product on (decorated) rooted tree classes: s . t is the sum
// of the graftings of the root of t on each vertex of s.
OpElem graft(const Obj& s, const Obj& t);

// Image of the generator |_-,-_|_{k,l} in O, qO or SG: the connected part of
// star o (discrete_k, discrete_l), star being the antichain plus the chain.
OpElem theta_image(const Operad& op, int k, int l);
// Same element from the ideal description: all objects restricting to the
// two discrete blocks with the second block an upward-closed ideal.
OpElem theta_image_ideal(const Operad& op, int k, int l);

// ------------------------------------------------ B-infinity on words

// Brackets <u, v> for words over letters L, with values in span(L). The
// boundary conventions <x,1> = <1,x> = x and zero for the other empty-slot
// cases are applied by the caller; `bracket` only sees k,l >= 1.
template <class L>
struct BInfinity {
    std::function<Element<L>(const Word<L>&, const Word<L>&)> bracket;
    bool brace_type = false;  // brackets vanish when the left word has two or more letters

    Element<L> operator()(const Word<L>& u, const Word<L>& v) const {
        if (u.empty() && v.empty()) return {};
        if (u.empty()) return v.size() == 1 ? Element<L>::single(v[0]) : Element<L>{};
        if (v.empty()) return u.size() == 1 ? Element<L>::single(u[0]) : Element<L>{};
        if (brace_type && u.size() > 1) return {};
        return bracket(u, v);
    }
};

template <class L>
BInfinity<L> trivial_binfinity() {
    return {[](const Word<L>&, const Word<L>&) { return Element<L>{}; }, true};
}

// <x, y> = x.y for single letters, zero otherwise: the quasi-shuffle bracket.
template <class L>
BInfinity<L> associative_binfinity(std::function<Element<L>(const L&, const L&)> mul) {
    return {[mul](const Word<L>& u, const Word<L>& v) {
                if (u.size() == 1 && v.size() == 1) return mul(u[0], v[0]);
                return Element<L>{};
            },
            true};
}

BInfinity<Obj> brace_binfinity(const Operad& op);

namespace detail {

template <class L>
using WordPair = std::pair<Word<L>, Word<L>>;

// Products u * v split by the shape of the first block.
template <class L>
struct StarTensor {
    const BInfinity<L>& ctx;
    std::map<WordPair<L>, Element<Word<L>>> memo;

    const Element<Word<L>>& full(const Word<L>& u, const Word<L>& v) {
        auto key = WordPair<L>{u, v};
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        Element<Word<L>> out;
        if (u.empty() && v.empty()) out.add(Word<L>{}, Rational(1));
        else {
            out += first_block(u, v, true);
            out += first_block(u, v, false);
        }
        return memo.emplace(key, std::move(out)).first->second;
    }

    // Sum over first blocks (u_1, v_1) with u_1 non-empty (left) or empty (right).
    Element<Word<L>> first_block(const Word<L>& u, const Word<L>& v, bool left) {
        Element<Word<L>> out;
        const std::size_t a0 = left ? 1 : 0, a1 = left ? u.size() : 0;
        for (std::size_t a = a0; a <= a1; ++a)
            for (std::size_t b = 0; b <= v.size(); ++b) {
                if (a == 0 && b == 0) continue;
                Word<L> u1(u.begin(), u.begin() + a), v1(v.begin(), v.begin() + b);
                Element<L> br = ctx(u1, v1);
                if (br.is_zero()) continue;
                const Element<Word<L>>& rest = full(Word<L>(u.begin() + a, u.end()), Word<L>(v.begin() + b, v.end()));
                for (const auto& [x, c] : br)
                    for (const auto& [w, d] : rest) {
                        Word<L> r{x};
                        r.insert(r.end(), w.begin(), w.end());
                        out.add(r, c * d);
                    }
            }
        return out;
    }
};

}  // namespace detail

template <class L>
Element<Word<L>> star_tensor(const BInfinity<L>& ctx, const Word<L>& u, const Word<L>& v) {
    detail::StarTensor<L> st{ctx, {}};
    return st.full(u, v);
}

// u < v: the first block takes the first letter of u.
template <class L>
Element<Word<L>> dend_left(const BInfinity<L>& ctx, const Word<L>& u, const Word<L>& v) {
    if (u.empty()) return {};
    detail::StarTensor<L> st{ctx, {}};
    return st.first_block(u, v, true);
}

// u > v: the first block is the first letter of v alone.
template <class L>
Element<Word<L>> dend_right(const BInfinity<L>& ctx, const Word<L>& u, const Word<L>& v) {
    if (u.empty()) return Element<Word<L>>::single(v);
    detail::StarTensor<L> st{ctx, {}};
    return st.first_block(u, v, false);
}

template <class L, class F>
Element<Word<L>> bilinear_words(const Element<Word<L>>& a, const Element<Word<L>>& b, F&& f) {
    Element<Word<L>> out;
    for (const auto& [u, c] : a)
        for (const auto& [v, d] : b) out.add(f(u, v), c * d);
    return out;
}

// Independent recursive quasi-shuffle: (au) * (bv) = a(u * bv) + b(au * v) + (a.b)(u * v).
template <class L>
Element<Word<L>> quasi_shuffle(const Word<L>& u, const Word<L>& v,
                               const std::function<Element<L>(const L&, const L&)>& mul) {
    if (u.empty()) return Element<Word<L>>::single(v);
    if (v.empty()) return Element<Word<L>>::single(u);
    Element<Word<L>> out;
    auto prepend = [&](const Element<L>& head, const Element<Word<L>>& tail) {
        for (const auto& [x, c] : head)
            for (const auto& [w, d] : tail) {
                Word<L> r{x};
                r.insert(r.end(), w.begin(), w.end());
                out.add(r, c * d);
            }
    };
    Word<L> ut(u.begin() + 1, u.end()), vt(v.begin() + 1, v.end());
    prepend(Element<L>::single(u[0]), quasi_shuffle(ut, v, mul));
    prepend(Element<L>::single(v[0]), quasi_shuffle(u, vt, mul));
    prepend(mul(u[0], v[0]), quasi_shuffle(ut, vt, mul));
    return out;
}

// ------------------------------------------------ b-infinity on monomials

template <class L>
struct BInf {
    std::function<Element<L>(const Word<L>&, const Word<L>&)> bracket;  // k,l >= 1
    bool prelie_type = false;  // brackets vanish for two or more left letters

    Element<L> operator()(const Word<L>& u, const Word<L>& v) const {
        if (u.empty() && v.empty()) return {};
        if (u.empty()) return v.size() == 1 ? Element<L>::single(v[0]) : Element<L>{};
        if (v.empty()) return u.size() == 1 ? Element<L>::single(u[0]) : Element<L>{};
        if (prelie_type && u.size() > 1) return {};
        return bracket(u, v);
    }
};

BInf<Obj> binf_from_operad(const Operad& op);
// b-infinity structure of O, qO or SG through theta: |_u, v_| = theta(k,l) o (u, v).
BInf<Obj> binf_from_theta(const Operad& op);

// Oudom-Guin brackets of a pre-Lie product, by the recursion
// |_x, x_1..x_k_| = |_|_x, x_1..x_{k-1}_|, x_k_| - sum_i |_x, x_1..(x_i . x_k)..x_{k-1}_|.
template <class L>
Element<L> oudom_guin(const std::function<Element<L>(const L&, const L&)>& dot, const Element<L>& x,
                      const std::vector<Element<L>>& ys) {
    auto dot_e = [&](const Element<L>& a, const Element<L>& b) {
        Element<L> out;
        for (const auto& [p, c] : a)
            for (const auto& [q, d] : b) out.add(dot(p, q), c * d);
        return out;
    };
    if (ys.empty()) return x;
    if (ys.size() == 1) return dot_e(x, ys[0]);
    std::vector<Element<L>> head(ys.begin(), ys.end() - 1);
    const Element<L>& last = ys.back();
    Element<L> out = dot_e(oudom_guin(dot, x, head), last);
    for (std::size_t i = 0; i < head.size(); ++i) {
        std::vector<Element<L>> mod = head;
        mod[i] = dot_e(head[i], last);
        out -= oudom_guin(dot, x, mod);
    }
    return out;
}

template <class L>
BInf<L> oudom_guin_binf(std::function<Element<L>(const L&, const L&)> dot) {
    return {[dot](const Word<L>& u, const Word<L>& v) {
                if (u.size() != 1) return Element<L>{};
                std::vector<Element<L>> ys;
                for (const auto& y : v) ys.push_back(Element<L>::single(y));
                return oudom_guin(dot, Element<L>::single(u[0]), ys);
            },
            true};
}

// Grossman-Larson brackets on rooted tree classes.
BInf<Obj> grafting_binf();

// u * v = sum over set partitions of the letters of u and v of the product
// of the block brackets.
template <class L>
Element<Word<L>> star_sym(const BInf<L>& ctx, const Word<L>& u, const Word<L>& v) {
    const int k = static_cast<int>(u.size()), l = static_cast<int>(v.size());
    const int total = k + l;
    if (total > 20) throw std::length_error("monomials too long for star_sym");
    std::map<unsigned, Element<Word<L>>> memo;
    std::function<const Element<Word<L>>&(unsigned)> rec = [&](unsigned rest) -> const Element<Word<L>>& {
        auto it = memo.find(rest);
        if (it != memo.end()) return it->second;
        Element<Word<L>> out;
        if (rest == 0) {
            out.add(Word<L>{}, Rational(1));
        } else {
            const int f = __builtin_ctz(rest);
            const unsigned others = rest & ~(1u << f);
            for (unsigned s = others;; s = (s - 1) & others) {
                unsigned block = s | (1u << f);
                Word<L> bu, bv;
                for (int t = 0; t < total; ++t)
                    if ((block >> t) & 1) (t < k ? bu : bv).push_back(t < k ? u[t] : v[t - k]);
                Element<L> br = ctx(bu, bv);
                if (!br.is_zero()) {
                    const Element<Word<L>>& tail = rec(rest & ~block);
                    for (const auto& [x, c] : br)
                        for (const auto& [w, d] : tail) {
                            Word<L> r = w;
                            r.push_back(x);
                            out.add(symmetrize(r), c * d);
                        }
                }
                if (s == 0) break;
            }
        }
        return memo.emplace(rest, std::move(out)).first->second;
    };
    return rec((total == 32 ? ~0u : ((1u << total) - 1)));
}

}  // namespace opforge
