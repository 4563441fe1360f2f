#pragma once

#include "opforge/rational.hpp"

#include <functional>
#include <map>
#include <utility>
#include <vector>

namespace opforge {

// Finite formal linear combination of keys. Zero coefficients are never
// stored, so two equal elements always have identical term maps.
template <class K>
class Element {
public:
    using key_type = K;
    using Map = std::map<K, Rational>;

    Element() = default;
    static Element single(const K& k, const Rational& c = Rational(1)) {
        Element e;
        e.add(k, c);
        return e;
    }

    void add(const K& k, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    void add(const Element& o, const Rational& c = Rational(1)) {
        if (c.is_zero()) return;
        for (const auto& [k, v] : o.terms_) add(k, v * c);
    }

    Rational coeff(const K& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const Map& terms() const { return terms_; }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }

    void erase(const K& k) { terms_.erase(k); }

    Element& operator+=(const Element& o) { add(o); return *this; }
    Element& operator-=(const Element& o) { add(o, Rational(-1)); return *this; }
    Element& operator*=(const Rational& c) {
        if (c.is_zero()) { terms_.clear(); return *this; }
        for (auto& kv : terms_) kv.second *= c;
        return *this;
    }

    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator-(Element a) { return a *= Rational(-1); }
    friend Element operator*(const Rational& c, Element a) { return a *= c; }
    friend bool operator==(const Element& a, const Element& b) { return a.terms_ == b.terms_; }

    // Linear extension of a key-level map.
    template <class K2>
    Element<K2> map_linear(const std::function<Element<K2>(const K&)>& f) const {
        Element<K2> out;
        for (const auto& [k, c] : terms_) out.add(f(k), c);
        return out;
    }

    // Keep only the terms whose key satisfies pred.
    Element filter(const std::function<bool(const K&)>& pred) const {
        Element out;
        for (const auto& [k, c] : terms_)
            if (pred(k)) out.terms_.emplace(k, c);
        return out;
    }

private:
    Map terms_;
};

template <class K>
Element<K> combine(const std::vector<std::pair<Rational, Element<K>>>& pairs) {
    Element<K> out;
    for (const auto& [c, e] : pairs) out.add(e, c);
    return out;
}

template <class K, class F>
auto map_keys(const Element<K>& e, F&& f) {
    using K2 = std::decay_t<decltype(f(std::declval<const K&>()))>;
    Element<K2> out;
    for (const auto& [k, c] : e) out.add(f(k), c);
    return out;
}

template <class A, class B>
Element<std::pair<A, B>> tensor(const Element<A>& a, const Element<B>& b) {
    Element<std::pair<A, B>> out;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) out.add({ka, kb}, ca * cb);
    return out;
}

template <class A, class B>
Element<std::pair<B, A>> swap_factors(const Element<std::pair<A, B>>& e) {
    Element<std::pair<B, A>> out;
    for (const auto& [k, c] : e) out.add({k.second, k.first}, c);
    return out;
}

// Bilinear extension of a key-level product.
template <class K, class F>
Element<K> bilinear(const Element<K>& a, const Element<K>& b, F&& mul) {
    Element<K> out;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) out.add(mul(ka, kb), ca * cb);
    return out;
}

}  // namespace opforge
