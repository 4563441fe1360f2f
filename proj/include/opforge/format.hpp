#pragma once

#include "opforge/element.hpp"
#include "opforge/obj.hpp"

#include <string>
#include <tuple>
#include <utility>

namespace opforge {

// Text forms of basis keys and elements, built on the family literals.
inline std::string key_text(const Obj& x) { return literal(x); }
inline std::string key_text(const ObjWord& w) { return literal(w); }
template <class A, class B>
std::string key_text(const std::pair<A, B>& p);
template <class A, class B, class C>
std::string key_text(const std::tuple<A, B, C>& t);

template <class A, class B>
std::string key_text(const std::pair<A, B>& p) {
    return key_text(p.first) + " (x) " + key_text(p.second);
}

template <class A, class B, class C>
std::string key_text(const std::tuple<A, B, C>& t) {
    return key_text(std::get<0>(t)) + " (x) " + key_text(std::get<1>(t)) + " (x) " + key_text(std::get<2>(t));
}

// "0" for the zero element, otherwise "c*key + ..." with unit coefficients
// omitted.
template <class K>
std::string to_text(const Element<K>& e) {
    if (e.is_zero()) return "0";
    std::string out;
    for (const auto& [k, c] : e) {
        std::string cs = c.str();
        const bool neg = cs[0] == '-';
        if (neg) cs.erase(0, 1);
        if (out.empty()) out += neg ? "-" : "";
        else out += neg ? " - " : " + ";
        out += (cs == "1" ? "" : cs + "*") + key_text(k);
    }
    return out;
}

}  // namespace opforge
