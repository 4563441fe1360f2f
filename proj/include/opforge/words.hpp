#pragma once

#include "opforge/element.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <vector>

namespace opforge {

// A word is an ordered sequence of letters; a monomial is a word kept in
// sorted order, so equality forgets the order of letters.
template <class L>
using Word = std::vector<L>;

template <class L>
Word<L> symmetrize(Word<L> w) {
    std::sort(w.begin(), w.end());
    return w;
}

template <class L>
Word<L> concat(const Word<L>& a, const Word<L>& b) {
    Word<L> r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

template <class L>
Word<L> mono_mul(const Word<L>& a, const Word<L>& b) {
    return symmetrize(concat(a, b));
}

template <class L>
Element<Word<L>> concat(const Element<Word<L>>& a, const Element<Word<L>>& b) {
    return bilinear(a, b, [](const Word<L>& x, const Word<L>& y) {
        return Element<Word<L>>::single(concat(x, y));
    });
}

template <class L>
Element<Word<L>> mono_mul(const Element<Word<L>>& a, const Element<Word<L>>& b) {
    return bilinear(a, b, [](const Word<L>& x, const Word<L>& y) {
        return Element<Word<L>>::single(mono_mul(x, y));
    });
}

template <class L>
Element<Word<L>> symmetrize(const Element<Word<L>>& e) {
    return map_keys(e, [](const Word<L>& w) { return symmetrize(w); });
}

// Letters of an element of V as one-letter words.
template <class L>
Element<Word<L>> as_words(const Element<L>& e) {
    return map_keys(e, [](const L& x) { return Word<L>{x}; });
}

// Product of one-letter elements, letter by letter, as words.
template <class L>
Element<Word<L>> word_of(const std::vector<Element<L>>& letters, bool commutative) {
    Element<Word<L>> acc = Element<Word<L>>::single(Word<L>{});
    for (const auto& e : letters) {
        Element<Word<L>> next;
        for (const auto& [w, c] : acc)
            for (const auto& [x, d] : e) {
                Word<L> v = w;
                v.push_back(x);
                next.add(commutative ? symmetrize(v) : v, c * d);
            }
        acc = std::move(next);
    }
    return acc;
}

// Tensor-square products: factorwise multiplication.
template <class K, class Mul>
Element<std::pair<K, K>> tensor_mul(const Element<std::pair<K, K>>& a,
                                    const Element<std::pair<K, K>>& b, Mul&& mul) {
    Element<std::pair<K, K>> out;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) {
            auto l = mul(ka.first, kb.first);
            auto r = mul(ka.second, kb.second);
            out.add(tensor(l, r), ca * cb);
        }
    return out;
}

template <class L>
Element<std::pair<Word<L>, Word<L>>> deconcatenate(const Word<L>& w) {
    Element<std::pair<Word<L>, Word<L>>> out;
    for (std::size_t i = 0; i <= w.size(); ++i)
        out.add({Word<L>(w.begin(), w.begin() + i), Word<L>(w.begin() + i, w.end())}, Rational(1));
    return out;
}

// Sum over subsets I of the letter positions of x_I (x) x_{complement}.
template <class L>
Element<std::pair<Word<L>, Word<L>>> unshuffle(const Word<L>& w, bool commutative) {
    Element<std::pair<Word<L>, Word<L>>> out;
    const std::size_t k = w.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask) {
        Word<L> a, b;
        for (std::size_t i = 0; i < k; ++i) ((mask >> i) & 1 ? a : b).push_back(w[i]);
        if (commutative) out.add({symmetrize(a), symmetrize(b)}, Rational(1));
        else out.add({a, b}, Rational(1));
    }
    return out;
}

// Letterwise pairing on words: zero unless the lengths agree.
template <class L>
Rational pair_words(const Word<L>& f, const Word<L>& x,
                    const std::function<Rational(const L&, const L&)>& letter) {
    if (f.size() != x.size()) return Rational(0);
    Rational r(1);
    for (std::size_t i = 0; i < f.size() && !r.is_zero(); ++i) r *= letter(f[i], x[i]);
    return r;
}

// Pairing on monomials: permanent of the letter pairing matrix, so repeated
// letters contribute multiplicity factorials.
template <class L>
Rational pair_monomials(const Word<L>& f, const Word<L>& x,
                        const std::function<Rational(const L&, const L&)>& letter) {
    const std::size_t k = f.size();
    if (k != x.size()) return Rational(0);
    if (k == 0) return Rational(1);
    if (k > 20) throw std::length_error("monomial too long for pairing");
    std::vector<std::vector<Rational>> m(k, std::vector<Rational>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) m[i][j] = letter(f[i], x[j]);
    // Ryser-free DP over subsets of columns.
    std::vector<Rational> dp(std::size_t(1) << k);
    dp[0] = Rational(1);
    for (std::size_t mask = 0; mask < dp.size(); ++mask) {
        if (dp[mask].is_zero()) continue;
        const std::size_t row = static_cast<std::size_t>(__builtin_popcountll(mask));
        if (row >= k) continue;
        for (std::size_t j = 0; j < k; ++j)
            if (!((mask >> j) & 1) && !m[row][j].is_zero())
                dp[mask | (std::size_t(1) << j)] += dp[mask] * m[row][j];
    }
    return dp.back();
}

template <class K>
Rational pair_elements(const Element<K>& f, const Element<K>& x,
                       const std::function<Rational(const K&, const K&)>& keypair) {
    Rational r(0);
    for (const auto& [kf, cf] : f)
        for (const auto& [kx, cx] : x) {
            Rational p = keypair(kf, kx);
            if (!p.is_zero()) r += cf * cx * p;
        }
    return r;
}

}  // namespace opforge
