#include "doctest.h"
#include "opforge/characters.hpp"
#include "opforge/hopf.hpp"

#include <stdexcept>

using namespace opforge;

namespace {

using Series = std::vector<Rational>;  // coefficients of t^0..t^B

TruncatedSeries com_series(const Series& a, int bound) {
    TruncatedSeries s(bound);
    for (int n = 1; n <= bound && n < static_cast<int>(a.size()); ++n)
        s.add(OpElem::single(canonical(com(n))), a[n]);
    return s;
}

Series compose_power_series(const Series& x, const Series& y, int bound) {
    Series out(bound + 1, Rational(0)), power(bound + 1, Rational(0));
    power[0] = Rational(1);
    for (int n = 1; n <= bound; ++n) {
        Series next(bound + 1, Rational(0));
        for (int i = 0; i <= bound; ++i)
            for (int j = 1; i + j <= bound; ++j) next[i + j] += power[i] * y[j];
        power = next;
        for (int d = 0; d <= bound; ++d) out[d] += x[n] * power[d];
    }
    return out;
}

Series random_coeffs(int bound, unsigned seed) {
    Series s(bound + 1, Rational(0));
    for (int n = 1; n <= bound; ++n) s[n] = Rational(static_cast<long>((seed * 7 + n * 13) % 11) - 5) / Rational(n);
    return s;
}

SeriesCarrier carrier(OperadName name, bool coinvariant, int colors = 0) {
    return {Operad(name, Mode::Circ, colors), coinvariant};
}

OpElem one(const Obj& x) { return OpElem::single(x); }

}  // namespace

TEST_CASE("Com series compose like power series") {
    const int bound = 6;
    const auto c = carrier(OperadName::Com, true);
    for (unsigned seed = 1; seed <= 4; ++seed) {
        const Series x = random_coeffs(bound, seed), y = random_coeffs(bound, seed + 10);
        const auto expected = com_series(compose_power_series(x, y, bound), bound);
        CHECK(diamond(c, com_series(x, bound), com_series(y, bound)) == expected);
    }
}

TEST_CASE("Com group inverse is Lagrange inversion") {
    const int bound = 5;
    const auto c = carrier(OperadName::Com, true);
    const auto x = com_series({Rational(0), Rational(0), Rational(1)}, bound);  // t + t^2 minus I
    const auto inv = group_inverse(c, x);
    // compositional inverse of t + t^2: t - t^2 + 2t^3 - 5t^4 + 14t^5
    const auto expected =
        com_series({Rational(0), Rational(0), Rational(-1), Rational(2), Rational(-5), Rational(14)}, bound);
    CHECK(inv == expected);
    CHECK(diamond_prime(c, x, inv).is_zero());
    CHECK(diamond_prime(c, inv, x).is_zero());
}

TEST_CASE("perturbation product is the shifted composition product") {
    struct Case {
        OperadName name;
        bool coinvariant;
        int bound;
    };
    for (const auto& k : {Case{OperadName::Com, true, 5}, Case{OperadName::As, false, 4},
                          Case{OperadName::PreLie, false, 4}, Case{OperadName::PreLie, true, 4},
                          Case{OperadName::O, false, 3}}) {
        const auto c = carrier(k.name, k.coinvariant);
        const auto id = identity_series(c, k.bound);
        for (std::uint64_t seed = 1; seed <= 2; ++seed) {
            const auto x = random_series(c, k.bound, seed, 1, 60), y = random_series(c, k.bound, seed + 100, 1, 60);
            CHECK(diamond_prime(c, x, y) + id == diamond(c, x + id, y + id));
        }
    }
}

TEST_CASE("composition product is associative and unital") {
    struct Case {
        OperadName name;
        bool coinvariant;
        int bound;
    };
    for (const auto& k : {Case{OperadName::Com, true, 5}, Case{OperadName::PreLie, false, 4},
                          Case{OperadName::PreLie, true, 4}, Case{OperadName::As, false, 4}}) {
        const auto c = carrier(k.name, k.coinvariant);
        const auto id = identity_series(c, k.bound);
        const auto x = random_series(c, k.bound, 3, 1, 50), y = random_series(c, k.bound, 4, 1, 50),
                   z = random_series(c, k.bound, 5, 1, 50);
        CHECK(diamond(c, diamond(c, x, y), z) == diamond(c, x, diamond(c, y, z)));
        CHECK(diamond(c, id, x) == x);
        CHECK(diamond(c, x, id) == x);
        CHECK(diamond_prime(c, diamond_prime(c, x, y), z) == diamond_prime(c, x, diamond_prime(c, y, z)));
        CHECK(diamond_prime(c, TruncatedSeries(k.bound), x) == x);
        CHECK(diamond_prime(c, x, TruncatedSeries(k.bound)) == x);
    }
}

TEST_CASE("perturbation product equals the exponential of the brackets") {
    for (auto name : {OperadName::PreLie, OperadName::As, OperadName::Com}) {
        const int bound = 4;
        const Operad op(name);
        const SeriesCarrier c{op, false};
        const auto ctx = binf_from_operad(op);
        for (std::uint64_t seed = 1; seed <= 2; ++seed) {
            const auto x = random_series(c, bound, seed, 1, 40), y = random_series(c, bound, seed + 7, 1, 40);
            CHECK(exp_bracket_diamond(ctx, x, y) == diamond_prime(c, x, y));
        }
    }
    SUBCASE("PreLie ladder times ladder") {
        const Operad op(OperadName::PreLie);
        const SeriesCarrier c{op, false};
        Obj ladder = parse_tree_code("1[2]");
        ladder.col.clear();
        const auto x = TruncatedSeries::from(one(ladder), 3);
        const auto expected = TruncatedSeries::from(one(ladder) + one(ladder) + prelie(op, one(ladder), one(ladder)), 3);
        CHECK(diamond_prime(c, x, x) == expected);
        CHECK(exp_bracket_diamond(binf_from_operad(op), x, x) == expected);
    }
}

TEST_CASE("grafting brackets on rooted trees") {
    auto tree = [](const char* code) {
        Obj t = parse_tree_code(code);
        t.col.clear();
        return canonical(t);
    };
    const Obj dot = tree("1");
    const auto x = TruncatedSeries::from(one(dot), 3);
    // y + x . e^y with x = y = dot: dot + dot + ladder + corolla / 2
    const auto expected = TruncatedSeries::from(
        Rational(2) * one(dot) + one(tree("1[2]")) + Rational(1, 2) * one(tree("1[2,3]")), 3);
    CHECK(exp_bracket_diamond(grafting_binf(), x, x) == expected);
}

TEST_CASE("trivial and associative b-infinity brackets") {
    const int bound = 4;
    auto monomials = [&](std::uint64_t seed) {
        TruncatedSeries s(bound);
        s.add(one(var({1})), Rational(static_cast<long>(seed)));
        s.add(one(var({0, 1})), Rational(-2));
        s.add(one(var({1, 1})), Rational(1, 3));
        s.add(one(var({2, 1})), Rational(static_cast<long>(seed + 1)));
        return s;
    };
    const auto x = monomials(1), y = monomials(2);
    const BInf<Obj> trivial{[](const Word<Obj>&, const Word<Obj>&) { return OpElem{}; }, false};
    CHECK(exp_bracket_diamond(trivial, x, y) == x + y);

    auto mul = [](const Obj& a, const Obj& b) {
        std::vector<int> alpha(std::max(a.d.size(), b.d.size()), 0);
        for (std::size_t i = 0; i < a.d.size(); ++i) alpha[i] += a.d[i];
        for (std::size_t i = 0; i < b.d.size(); ++i) alpha[i] += b.d[i];
        return var(alpha);
    };
    const BInf<Obj> assoc{[&](const Word<Obj>& u, const Word<Obj>& v) {
                              if (u.size() != 1 || v.size() != 1) return OpElem{};
                              return one(mul(u[0], v[0]));
                          },
                          false};
    TruncatedSeries xy(bound);
    for (const auto& [a, ca] : x.total())
        for (const auto& [b, cb] : y.total()) xy.add(one(mul(a, b)), ca * cb);
    CHECK(exp_bracket_diamond(assoc, x, y) == x + y + xy);
}

TEST_CASE("group inverse") {
    struct Case {
        OperadName name;
        bool coinvariant;
        int bound;
    };
    for (const auto& k : {Case{OperadName::Com, true, 6}, Case{OperadName::PreLie, true, 5},
                          Case{OperadName::PreLie, false, 4}, Case{OperadName::As, false, 4}}) {
        const auto c = carrier(k.name, k.coinvariant);
        const auto x = random_series(c, k.bound, 11, 2, 60);
        const auto inv = group_inverse(c, x);
        CHECK(diamond_prime(c, x, inv).is_zero());
        CHECK(diamond_prime(c, inv, x).is_zero());
        CHECK(group_inverse(c, inv) == x);
    }
    const auto c = carrier(OperadName::Com, true);
    CHECK_THROWS_AS(group_inverse(c, com_series({Rational(0), Rational(1)}, 3)), std::domain_error);
}

TEST_CASE("action on decorated trees") {
    SUBCASE("single vertices pick their color") {
        const int colors = 2;
        for (int a = 1; a <= colors; ++a)
            for (int p = 1; p <= colors; ++p) {
                const auto x = TruncatedSeries::from(one(decorated_tree(std::to_string(a))), 4);
                const auto y = TruncatedSeries::from(one(decorated_pair("1[2]", p)), 4);
                const auto expected = a == p ? TruncatedSeries::from(one(decorated_tree("1[2]")), 4) : TruncatedSeries(4);
                CHECK(endo_action(colors, x, y) == expected);
            }
    }
    for (int colors : {1, 2}) {
        const int bound = 3;
        const SeriesCarrier d{Operad(OperadName::PreLie, Mode::Circ, colors), true};
        const auto id = identity_series(d, bound);
        TruncatedSeries x(bound);
        std::uint64_t seed = 1;
        for (int v = 1; v <= bound; ++v)
            for (const auto& t : tree_classes(v, colors)) x.add(one(t), Rational(static_cast<long>(seed++ % 5) - 2));
        CHECK(endo_action(colors, x, id) == x);
        CHECK(endo_action_prime(colors, x, TruncatedSeries(bound)) == x);
        const auto y = random_series(d, bound, 21, 1, 70), z = random_series(d, bound, 22, 1, 70);
        CHECK(endo_action(colors, endo_action(colors, x, z), y) == endo_action(colors, x, diamond(d, z, y)));
        CHECK(endo_action_prime(colors, endo_action_prime(colors, x, z), y) ==
              endo_action_prime(colors, x, diamond_prime(d, z, y)));
    }
}

TEST_CASE("series bookkeeping") {
    const auto c = carrier(OperadName::Com, true);
    auto s = com_series({Rational(0), Rational(1), Rational(-1, 2)}, 3);
    CHECK(notation(s).find("O(4)") != std::string::npos);
    s.add(one(canonical(com(5))));
    CHECK(s.component(5).is_zero());
    CHECK((s - s).is_zero());
    CHECK_THROWS(endo_action(1, s, s));
}
