#pragma once

#include "opforge/induced.hpp"

#include <cstdint>
#include <map>

namespace opforge {

// Element of a completion truncated above `bound`. The degree of a key is
// its size x.n: the arity for operad elements, the vertex count for trees,
// |alpha| for monomials X_alpha.
struct TruncatedSeries {
    int bound = 0;
    std::map<int, OpElem> components;

    TruncatedSeries() = default;
    explicit TruncatedSeries(int b) : bound(b) {}
    static TruncatedSeries from(const OpElem& e, int bound);

    // Adds c * e, dropping the terms of degree above the bound.
    void add(const OpElem& e, const Rational& c = Rational(1));
    OpElem component(int d) const;
    OpElem total() const;
    bool is_zero() const { return components.empty(); }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);
    friend bool operator!=(const TruncatedSeries& a, const TruncatedSeries& b) { return !(a == b); }
    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
};

std::string notation(const TruncatedSeries& s);

// Coinvariant carriers hold class representatives: compositions act on
// the representatives and the results are reduced to classes.
struct SeriesCarrier {
    Operad op;
    bool coinvariant = false;
};

// The unit I of the operad as a series.
TruncatedSeries identity_series(const SeriesCarrier& c, int bound);

// x <> y = sum_n x_n o (y, ..., y): composition-style product, unit I.
TruncatedSeries diamond(const SeriesCarrier& c, const TruncatedSeries& x, const TruncatedSeries& y);
// x <>' y = y + sum_n sum over slot subsets S of x_n o_S (y, ..., y), the
// empty subset included: perturbation-style product, unit 0. On P_+ this is
// also the group law y + sum_n x_n o (I + y, ..., I + y).
TruncatedSeries diamond_prime(const SeriesCarrier& c, const TruncatedSeries& x, const TruncatedSeries& y);
// |_e^x, e^y_| = sum_{k,l} |_x^k, y^l_| / (k! l!) for a b-infinity bracket.
TruncatedSeries exp_bracket_diamond(const BInf<Obj>& ctx, const TruncatedSeries& x, const TruncatedSeries& y);
// Inverse for <>' on series supported in arity >= 2, solved degree by
// degree; throws std::domain_error on an arity-one component.
TruncatedSeries group_inverse(const SeriesCarrier& c, const TruncatedSeries& x);

// Action of M^D_PreLie(V) (series of pairs (t, j)) on series of decorated
// trees: every vertex of color a is replaced by the part of y with output
// color a (endo_action), or every subset of vertices is (endo_action_prime).
TruncatedSeries endo_action(int colors, const TruncatedSeries& x, const TruncatedSeries& y);
TruncatedSeries endo_action_prime(int colors, const TruncatedSeries& x, const TruncatedSeries& y);

// Series with random small rational coefficients on every basis key (or
// class) of arity in [min_arity, bound]; density in percent, applied above
// arity one.
TruncatedSeries random_series(const SeriesCarrier& c, int bound, std::uint64_t seed, int min_arity = 1,
                              int density = 100);

}  // namespace opforge
