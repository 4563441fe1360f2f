#include "opforge/characters.hpp"

#include <functional>
#include <random>
#include <set>
#include <stdexcept>

namespace opforge {

namespace {

Obj lift(Obj x) {
    x.iso = false;
    return x;
}

OpElem lift(const OpElem& e) {
    OpElem out;
    for (const auto& [x, c] : e) out.add(lift(x), c);
    return out;
}

OpElem reduce(const OpElem& e, bool coinvariant) {
    if (!coinvariant) return e;
    OpElem out;
    for (const auto& [x, c] : e) out.add(canonical(x), c);
    return out;
}

int min_degree(const TruncatedSeries& y) { return y.components.empty() ? 1 : y.components.begin()->first; }

// Calls f(parts) for every tuple of `count` component degrees of y with
// sum(parts) + shift * count <= budget.
void degree_tuples(const TruncatedSeries& y, int count, int budget, int shift,
                   const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> parts(count);
    const int lo = min_degree(y) + shift;
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == count) { f(parts); return; }
        for (const auto& [d, comp] : y.components) {
            if (comp.is_zero()) continue;
            if (d + shift + lo * (count - pos - 1) > left) continue;
            parts[pos] = d;
            rec(pos + 1, left - d - shift);
        }
    };
    rec(0, budget);
}

// Calls f(slots) for every increasing k-tuple in [n].
void increasing(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> s(k);
    std::function<void(int, int)> rec = [&](int pos, int from) {
        if (pos == k) { f(s); return; }
        for (int v = from; v <= n - (k - pos) + 1; ++v) {
            s[pos] = v;
            rec(pos + 1, v + 1);
        }
    };
    rec(0, 1);
}

// Lifted components of a series, by degree.
std::map<int, OpElem> lifted(const TruncatedSeries& y) {
    std::map<int, OpElem> out;
    for (const auto& [d, e] : y.components) out[d] = lift(e);
    return out;
}

// sum_n x_n o (y, ..., y) for an operad, truncated.
TruncatedSeries full_substitution(const Operad& op, bool coinvariant, const TruncatedSeries& x,
                                  const TruncatedSeries& y, int bound) {
    TruncatedSeries out(bound);
    const auto ys = lifted(y);
    for (const auto& [n, xn] : x.components) {
        const OpElem xl = lift(xn);
        degree_tuples(y, n, bound, 0, [&](const std::vector<int>& parts) {
            std::vector<OpElem> args;
            for (int a : parts) args.push_back(ys.at(a));
            out.add(reduce(full_compose(op, xl, args), coinvariant));
        });
    }
    return out;
}

// sum_n sum_S x_n o_S (y, ..., y), the empty S included, truncated.
TruncatedSeries subset_substitution(const Operad& op, bool coinvariant, const TruncatedSeries& x,
                                    const TruncatedSeries& y, int bound) {
    TruncatedSeries out(bound);
    const auto ys = lifted(y);
    for (const auto& [n, xn] : x.components) {
        const OpElem xl = lift(xn);
        out.add(xn);
        for (int k = 1; k <= n; ++k)
            degree_tuples(y, k, bound - n, -1, [&](const std::vector<int>& parts) {
                std::vector<OpElem> args;
                for (int a : parts) args.push_back(ys.at(a));
                increasing(n, k, [&](const std::vector<int>& slots) {
                    out.add(reduce(multi_compose(op, xl, slots, args), coinvariant));
                });
            });
    }
    return out;
}

// Trees as pairs with a placeholder output color, and back.
TruncatedSeries with_output(const TruncatedSeries& x) {
    TruncatedSeries out(x.bound);
    for (const auto& [d, e] : x.components)
        for (const auto& [t, c] : e) {
            Obj p = t;
            if (p.col.size() != static_cast<std::size_t>(p.n)) throw std::invalid_argument("expected a decorated tree");
            p.col.push_back(1);
            out.add(OpElem::single(p), c);
        }
    return out;
}

TruncatedSeries drop_output(const TruncatedSeries& x) {
    TruncatedSeries out(x.bound);
    for (const auto& [d, e] : x.components)
        for (const auto& [p, c] : e) {
            Obj t = lift(p);
            t.col.pop_back();
            out.add(OpElem::single(canonical(t)), c);
        }
    return out;
}

// Action on trees: the placeholder output color is ignored by every
// substitution, so any fixed value works.
void check_pairs(const TruncatedSeries& y, int colors) {
    for (const auto& [d, e] : y.components)
        for (const auto& [p, c] : e) {
            if (!p.has_output()) throw std::invalid_argument("actions need pairs (t, j)");
            for (int col : p.col)
                if (col < 1 || col > colors) throw std::invalid_argument("color out of range");
        }
}

}  // namespace

TruncatedSeries TruncatedSeries::from(const OpElem& e, int bound) {
    TruncatedSeries s(bound);
    s.add(e);
    return s;
}

void TruncatedSeries::add(const OpElem& e, const Rational& c) {
    for (const auto& [x, a] : e) {
        if (x.n > bound) continue;
        OpElem& comp = components[x.n];
        comp.add(x, a * c);
        if (comp.is_zero()) components.erase(x.n);
    }
}

OpElem TruncatedSeries::component(int d) const {
    auto it = components.find(d);
    return it == components.end() ? OpElem{} : it->second;
}

OpElem TruncatedSeries::total() const {
    OpElem out;
    for (const auto& [d, e] : components) out += e;
    return out;
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    const int bound = std::min(a.bound, b.bound);
    std::set<int> degrees;
    for (const auto& [d, e] : a.components) degrees.insert(d);
    for (const auto& [d, e] : b.components) degrees.insert(d);
    for (int d : degrees)
        if (d <= bound && !(a.component(d) == b.component(d))) return false;
    return true;
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries out(std::min(a.bound, b.bound));
    out.add(a.total());
    out.add(b.total());
    return out;
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries out(std::min(a.bound, b.bound));
    out.add(a.total());
    out.add(b.total(), Rational(-1));
    return out;
}

std::string notation(const TruncatedSeries& s) {
    std::string out;
    for (const auto& [d, e] : s.components)
        for (const auto& [x, c] : e) {
            std::string cs = c.str();
            if (!out.empty()) out += cs[0] == '-' ? " - " : " + ";
            else if (cs[0] == '-') out += "-";
            if (cs[0] == '-') cs.erase(0, 1);
            out += (cs == "1" ? "" : cs + "*") + notation(x);
        }
    return (out.empty() ? "0" : out) + " + O(" + std::to_string(s.bound + 1) + ")";
}

TruncatedSeries identity_series(const SeriesCarrier& c, int bound) {
    return TruncatedSeries::from(reduce(c.op.unit(), c.coinvariant), bound);
}

TruncatedSeries diamond(const SeriesCarrier& c, const TruncatedSeries& x, const TruncatedSeries& y) {
    return full_substitution(c.op, c.coinvariant, x, y, std::min(x.bound, y.bound));
}

TruncatedSeries diamond_prime(const SeriesCarrier& c, const TruncatedSeries& x, const TruncatedSeries& y) {
    const int bound = std::min(x.bound, y.bound);
    TruncatedSeries out = subset_substitution(c.op, c.coinvariant, x, y, bound);
    out.add(y.total());
    return out;
}

TruncatedSeries exp_bracket_diamond(const BInf<Obj>& ctx, const TruncatedSeries& x, const TruncatedSeries& y) {
    const int bound = std::min(x.bound, y.bound);
    TruncatedSeries out(bound);
    auto letters = [](const TruncatedSeries& s) {
        std::vector<std::pair<Obj, Rational>> v;
        for (const auto& [d, e] : s.components)
            for (const auto& [k, c] : e) v.push_back({k, c});
        return v;
    };
    const auto xs = letters(x), ys = letters(y);
    // Every bracket has size at least sum(x sizes) + sum(y sizes - 1), so
    // the tuples are enumerated under that budget.
    for (int k = 0; k <= bound; ++k) {
        if (ctx.prelie_type && k > 1) break;
        for (int l = 0; l <= bound; ++l) {
            if (k + l == 0) continue;
            const Rational norm = Rational(1) / (factorial(k) * factorial(l));
            Word<Obj> u, v;
            std::function<void(int, Rational)> rec = [&](int left, Rational coef) {
                const int pos = static_cast<int>(u.size() + v.size());
                if (pos == k + l) {
                    out.add(ctx(u, v), coef * norm);
                    return;
                }
                const bool in_u = pos < k;
                for (const auto& [letter, c] : in_u ? xs : ys) {
                    const int cost = in_u ? letter.n : letter.n - 1;
                    if (cost > left) continue;
                    (in_u ? u : v).push_back(letter);
                    rec(left - cost, coef * c);
                    (in_u ? u : v).pop_back();
                }
            };
            rec(bound, Rational(1));
        }
    }
    return out;
}

TruncatedSeries group_inverse(const SeriesCarrier& c, const TruncatedSeries& x) {
    for (const auto& [d, e] : x.components)
        if (d < 2) throw std::domain_error("not invertible: the series has a component of arity " + std::to_string(d));
    TruncatedSeries y(x.bound);
    for (int d = 2; d <= x.bound; ++d) {
        // (x <>' y)_d = y_d + (terms in y of lower degree)
        const OpElem r = diamond_prime(c, x, y).component(d);
        y.add(r, Rational(-1));
    }
    return y;
}

TruncatedSeries endo_action(int colors, const TruncatedSeries& x, const TruncatedSeries& y) {
    check_pairs(y, colors);
    Operad pl(OperadName::PreLie, Mode::Circ, colors);
    const TruncatedSeries px = with_output(x);
    return drop_output(full_substitution(pl, true, px, y, std::min(x.bound, y.bound)));
}

TruncatedSeries endo_action_prime(int colors, const TruncatedSeries& x, const TruncatedSeries& y) {
    check_pairs(y, colors);
    Operad pl(OperadName::PreLie, Mode::Circ, colors);
    const TruncatedSeries px = with_output(x);
    return drop_output(subset_substitution(pl, true, px, y, std::min(x.bound, y.bound)));
}

TruncatedSeries random_series(const SeriesCarrier& c, int bound, std::uint64_t seed, int min_arity, int density) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-5, 5), den(1, 3), pct(0, 99);
    TruncatedSeries s(bound);
    for (int n = std::max(1, min_arity); n <= bound; ++n) {
        std::set<Obj> keys;
        for (const auto& x : c.op.basis(n)) keys.insert(c.coinvariant ? canonical(x) : x);
        for (const auto& x : keys) {
            if (n > 1 && pct(rng) >= density) continue;
            const int a = num(rng), b = den(rng);
            if (a != 0) s.add(OpElem::single(x), Rational(a) / Rational(b));
        }
    }
    return s;
}

}  // namespace opforge
