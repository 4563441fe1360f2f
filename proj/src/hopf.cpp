#include "opforge/hopf.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <tuple>

namespace opforge {

namespace {

Obj labelled(Obj x) {
    x.iso = false;
    return x;
}

Mono sorted(Mono m) {
    std::sort(m.begin(), m.end());
    return m;
}

Mono join(const Mono& a, const Mono& b, bool commutative) {
    Mono r = concat(a, b);
    if (commutative) std::sort(r.begin(), r.end());
    return r;
}

// Product of letter coproducts, factor by factor.
MPair multiplicative(const Mono& m, bool commutative, const std::function<MPair(const Obj&)>& letter) {
    MPair acc = MPair::single({Mono{}, Mono{}});
    for (const auto& x : m) {
        MPair lx = letter(x);
        MPair next;
        for (const auto& [a, c] : acc)
            for (const auto& [b, d] : lx)
                next.add({join(a.first, b.first, commutative), join(a.second, b.second, commutative)}, c * d);
        acc = std::move(next);
        if (acc.is_zero()) break;
    }
    return acc;
}

Rational factorial(int n) {
    Rational r(1);
    for (int k = 2; k <= n; ++k) r *= Rational(k);
    return r;
}

// Product of the factorials of the multiplicities of a sorted monomial.
Rational multiplicity_factor(const Mono& m) {
    Rational r(1);
    for (std::size_t i = 0; i < m.size();) {
        std::size_t j = i;
        while (j < m.size() && m[j] == m[i]) ++j;
        r *= factorial(static_cast<int>(j - i));
        i = j;
    }
    return r;
}

Rational sym(const Obj& x) { return Rational(static_cast<long>(symmetry_order(labelled(x)))); }

std::string op_key(const Operad& op) {
    return op.name() + "|" + std::to_string(static_cast<int>(op.mode())) + "|" + std::to_string(op.colors()) + "|" +
           std::to_string(op.sign_bug());
}

// Write-once caches of letter coproducts, per operad, kind and arity.
struct LetterTable {
    std::mutex mu;
    std::set<int> done;
    std::map<Obj, MPair> letters;
};

LetterTable& table_for(const std::string& key) {
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<LetterTable>> tables;
    std::lock_guard<std::mutex> lock(mu);
    auto& t = tables[key];
    if (!t) t = std::make_unique<LetterTable>();
    return *t;
}

// Calls f on every composition of n into m positive parts.
void compositions(int n, int m, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> parts(m);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == m - 1) {
            if (left >= 1) { parts[pos] = left; f(parts); }
            return;
        }
        for (int a = 1; a <= left - (m - pos - 1); ++a) {
            parts[pos] = a;
            rec(pos + 1, left - a);
        }
    };
    if (m >= 1 && n >= m) rec(0, n);
}

// Calls f on every tuple with q_j drawn from choices[j].
void tuples(const std::vector<const std::vector<Obj>*>& choices, const std::function<void(const Mono&)>& f) {
    Mono cur(choices.size());
    std::function<void(std::size_t)> rec = [&](std::size_t pos) {
        if (pos == choices.size()) { f(cur); return; }
        for (const auto& x : *choices[pos]) {
            cur[pos] = x;
            rec(pos + 1);
        }
    };
    rec(0);
}

const std::map<Obj, MPair>& ensure_star_table(const Operad& op, int n, bool coinvariant) {
    LetterTable& t = table_for("star|" + op_key(op) + "|" + std::to_string(coinvariant));
    std::lock_guard<std::mutex> lock(t.mu);
    if (t.done.count(n)) return t.letters;
    std::map<Obj, MPair> acc;
    for (int m = 1; m <= n; ++m) {
        const std::vector<Obj> ps = letter_classes(op, m, coinvariant);
        compositions(n, m, [&](const std::vector<int>& parts) {
            std::vector<std::vector<Obj>> pool;
            for (int a : parts) pool.push_back(letter_classes(op, a, coinvariant));
            std::vector<const std::vector<Obj>*> choices;
            for (const auto& v : pool) choices.push_back(&v);
            for (const auto& p : ps)
                tuples(choices, [&](const Mono& qs) {
                    std::vector<OpElem> args;
                    for (const auto& q : qs) args.push_back(OpElem::single(labelled(q)));
                    OpElem r = full_compose(op, OpElem::single(labelled(p)), args);
                    for (const auto& [x, c] : r) {
                        if (!coinvariant) acc[x].add({Mono{p}, qs}, c);
                        else acc[canonical(x)].add({Mono{p}, sorted(qs)}, c);
                    }
                });
        });
    }
    for (auto& [x, e] : acc) {
        MPair out;
        if (!coinvariant) out = e;
        else
            for (const auto& [k, c] : e) {
                Rational norm = sym(k.first[0]);
                for (const auto& q : k.second) norm *= sym(q);
                out.add(k, c * sym(x) / norm);
            }
        t.letters[x] = out;
    }
    t.done.insert(n);
    return t.letters;
}

// Non-decreasing sequences (multisets) or all sequences of l letters from
// `pool` indexed by degree, with total degree `deg`.
void words_of_degree(const std::vector<std::vector<Obj>>& pool, int l, int deg, bool multiset,
                     const std::function<void(const Mono&)>& f) {
    std::vector<std::pair<int, const Obj*>> flat;
    for (int d = 0; d < static_cast<int>(pool.size()); ++d)
        for (const auto& x : pool[d]) flat.push_back({d, &x});
    Mono cur;
    std::function<void(std::size_t, int)> rec = [&](std::size_t from, int left) {
        if (static_cast<int>(cur.size()) == l) {
            if (left == 0) f(cur);
            return;
        }
        for (std::size_t i = multiset ? from : 0; i < flat.size(); ++i) {
            if (flat[i].first > left) continue;
            cur.push_back(*flat[i].second);
            rec(i, left - flat[i].first);
            cur.pop_back();
        }
    };
    rec(0, deg);
}

const std::map<Obj, MPair>& ensure_prime_table(const Operad& op, int n, bool coinvariant) {
    LetterTable& t = table_for("prime|" + op_key(op) + "|" + std::to_string(coinvariant));
    std::lock_guard<std::mutex> lock(t.mu);
    if (t.done.count(n)) return t.letters;
    std::map<Obj, MPair> acc;
    for (const auto& x : letter_classes(op, n, coinvariant)) {
        acc[x].add({Mono{x}, Mono{}}, Rational(1));
        acc[x].add({Mono{}, Mono{x}}, Rational(1));
    }
    // letter pool by degree (arity - 1), up to the needed degree
    std::vector<std::vector<Obj>> pool;
    for (int a = 1; a <= n; ++a) pool.push_back(letter_classes(op, a, coinvariant));
    for (int a = 1; a <= n; ++a)
        for (const auto& u : letter_classes(op, a, coinvariant))
            for (int l = 1; l <= a; ++l)
                words_of_degree(pool, l, n - a, coinvariant, [&](const Mono& v) {
                    std::vector<OpElem> args;
                    for (const auto& y : v) args.push_back(OpElem::single(labelled(y)));
                    OpElem r = coinvariant ? binf_bracket(op, OpElem::single(labelled(u)), args)
                                           : brace(op, OpElem::single(labelled(u)), args);
                    std::map<Obj, Rational> sums;
                    for (const auto& [x, c] : r) {
                        if (!coinvariant) acc[x].add({Mono{u}, v}, c);
                        else sums[canonical(x)] += c;
                    }
                    for (const auto& [w, c] : sums) {
                        Rational norm = sym(u) * multiplicity_factor(v);
                        for (const auto& y : v) norm *= sym(y);
                        acc[w].add({Mono{u}, v}, c * sym(w) / norm);
                    }
                });
    for (auto& [x, e] : acc) t.letters[x] = e;
    t.done.insert(n);
    return t.letters;
}

MPair star_letter(const Operad& op, const Obj& x, bool coinvariant) {
    const auto& tab = ensure_star_table(op, x.n, coinvariant);
    auto it = tab.find(x);
    return it == tab.end() ? MPair{} : it->second;
}

MPair prime_letter(const Operad& op, const Obj& x, bool coinvariant) {
    const auto& tab = ensure_prime_table(op, x.n, coinvariant);
    auto it = tab.find(x);
    return it == tab.end() ? MPair{} : it->second;
}

// Replaces arity-one letters by eps_0 (keep_scalar) or by zero.
MElem reduce_mono(const Operad& op, const Mono& m, bool coinvariant, bool keep_scalar) {
    Rational c(1);
    Mono rest;
    for (const auto& x : m) {
        if (x.n == 1) {
            if (!keep_scalar) return {};
            c *= eps0(op, x, coinvariant);
            if (c.is_zero()) return {};
        } else rest.push_back(x);
    }
    return MElem::single(rest, c);
}

MPair reduce_pair(const Operad& op, const MPair& e, bool coinvariant, bool keep_scalar) {
    MPair out;
    for (const auto& [k, c] : e) {
        MElem a = reduce_mono(op, k.first, coinvariant, keep_scalar);
        if (a.is_zero()) continue;
        MElem b = reduce_mono(op, k.second, coinvariant, keep_scalar);
        out.add(tensor(a, b), c);
    }
    return out;
}

// ----------------------------------------------------------- rooted trees

struct Shape {
    int n;
    std::vector<int> parent;  // 1-based, 0 for the root
    std::vector<int> col;     // vertex colors
    int out = 0;              // output color, 0 when absent
};

Shape shape_of(const Obj& t) {
    Shape s{t.n, t.d, {}, 0};
    s.col.assign(t.col.begin(), t.col.begin() + std::min<std::size_t>(t.col.size(), t.n));
    if (s.col.empty()) s.col.assign(t.n, 1);
    if (t.has_output()) s.out = t.col.back();
    return s;
}

Obj tree_class(const std::vector<int>& parent, const std::vector<int>& col, int out) {
    Obj r = tree_from_parents(parent);
    r.col = col;
    if (out) r.col.push_back(out);
    return canonical(r);
}

Obj subtree_class(const Shape& s, const std::vector<int>& vertices, int out) {
    std::vector<int> pos(s.n + 1, 0);
    for (std::size_t k = 0; k < vertices.size(); ++k) pos[vertices[k]] = static_cast<int>(k) + 1;
    std::vector<int> parent, col;
    for (int v : vertices) {
        int p = s.parent[v - 1];
        parent.push_back(p && pos[p] ? pos[p] : 0);
        col.push_back(s.col[v - 1]);
    }
    return tree_class(parent, col, out);
}

// Sum over partitions of the vertex set into connected blocks (kept edge
// subsets) and colorings of the blocks: f(contracted class, pieces).
void contractions(const Shape& s, int colors, bool with_output,
                  const std::function<void(const Obj&, const Mono&)>& f) {
    std::vector<int> edges;  // child vertices
    for (int v = 1; v <= s.n; ++v)
        if (s.parent[v - 1]) edges.push_back(v);
    for (unsigned keep = 0; keep < (1u << edges.size()); ++keep) {
        std::vector<int> block(s.n + 1);
        for (int v = 1; v <= s.n; ++v) block[v] = v;
        std::function<int(int)> find = [&](int v) { return block[v] == v ? v : block[v] = find(block[v]); };
        for (std::size_t e = 0; e < edges.size(); ++e)
            if ((keep >> e) & 1) block[find(edges[e])] = find(s.parent[edges[e] - 1]);
        std::map<int, std::vector<int>> groups;
        for (int v = 1; v <= s.n; ++v) groups[find(v)].push_back(v);
        std::vector<std::vector<int>> blocks;
        std::map<int, int> index;  // representative -> block number (1-based)
        for (auto& [r, vs] : groups) {
            blocks.push_back(vs);
            index[r] = static_cast<int>(blocks.size());
        }
        const int k = static_cast<int>(blocks.size());
        std::vector<int> bparent(k, 0);
        for (int b = 0; b < k; ++b)
            for (int v : blocks[b]) {
                int p = s.parent[v - 1];
                if (p && find(p) != find(v)) bparent[b] = index[find(p)];
            }
        std::vector<int> p(k, 1);
        for (;;) {
            Mono pieces;
            for (int b = 0; b < k; ++b) pieces.push_back(subtree_class(s, blocks[b], p[b]));
            std::sort(pieces.begin(), pieces.end());
            f(tree_class(bparent, p, with_output ? s.out : 0), pieces);
            int b = 0;
            while (b < k && p[b] == colors) p[b++] = 1;
            if (b == k) break;
            ++p[b];
        }
    }
}

MPair cut_coproduct(const Obj& t) {
    Shape s = shape_of(t);
    const bool plain = t.col.empty();
    auto strip = [&](Obj x) {
        if (plain) x.col.clear();
        return canonical(labelled(x));
    };
    std::vector<int> nonroot;
    for (int v = 1; v <= s.n; ++v)
        if (s.parent[v - 1]) nonroot.push_back(v);
    auto ancestor = [&](int a, int v) {  // a strictly above v
        for (int u = s.parent[v - 1]; u; u = s.parent[u - 1])
            if (u == a) return true;
        return false;
    };
    MPair out;
    out.add({Mono{}, Mono{t}}, Rational(1));
    for (unsigned c = 0; c < (1u << nonroot.size()); ++c) {
        std::vector<int> cut;
        for (std::size_t i = 0; i < nonroot.size(); ++i)
            if ((c >> i) & 1) cut.push_back(nonroot[i]);
        bool anti = true;
        for (int a : cut)
            for (int b : cut)
                if (a != b && ancestor(a, b)) anti = false;
        if (!anti) continue;
        std::vector<int> owner(s.n + 1, 0);
        for (int v = 1; v <= s.n; ++v)
            for (int a : cut)
                if (a == v || ancestor(a, v)) owner[v] = a;
        std::vector<int> trunk;
        for (int v = 1; v <= s.n; ++v)
            if (!owner[v]) trunk.push_back(v);
        Mono branches;
        for (int a : cut) {
            std::vector<int> vs;
            for (int v = 1; v <= s.n; ++v)
                if (owner[v] == a) vs.push_back(v);
            branches.push_back(strip(subtree_class(s, vs, 0)));
        }
        out.add({Mono{strip(subtree_class(s, trunk, 0))}, sorted(branches)}, Rational(1));
    }
    return out;
}

Operad decorated_prelie(int colors) { return Operad(OperadName::PreLie, Mode::Circ, colors); }

// Action of one letter (pair) on one decorated tree class.
MElem act_letter_tree(int colors, const Obj& t, const Obj& q) {
    Operad pl = decorated_prelie(colors);
    Obj tl = labelled(t);
    tl.col.push_back(q.output());
    MElem out;
    for (int v = 1; v <= t.n; ++v) {
        if (t.col[v - 1] != q.output()) continue;
        for (const auto& [x, c] : pl.compose(tl, v, labelled(q))) {
            Obj y = x;
            y.col.pop_back();
            out.add(Mono{canonical(y)}, c);
        }
    }
    return out;
}

MElem act_letter_forest(int colors, const Mono& forest, const Obj& q) {
    MElem out;
    for (std::size_t i = 0; i < forest.size(); ++i) {
        Mono rest = forest;
        rest.erase(rest.begin() + static_cast<long>(i));
        for (const auto& [t, c] : act_letter_tree(colors, forest[i], q)) out.add(sorted(concat(rest, t)), c);
    }
    return out;
}

}  // namespace

// ------------------------------------------------------------ generic

MElem unit_element() { return MElem::single(Mono{}); }
MElem key(const Mono& m) { return MElem::single(m); }

MElem multiply(const Bialgebra& h, const MElem& a, const MElem& b) {
    MElem out;
    for (const auto& [x, c] : a)
        for (const auto& [y, d] : b) out.add(h.product(x, y), c * d);
    return out;
}

MPair comultiply(const Bialgebra& h, const MElem& a) {
    MPair out;
    for (const auto& [x, c] : a) out.add(h.coproduct(x), c);
    return out;
}

Rational apply_counit(const Bialgebra& h, const MElem& a) {
    Rational r(0);
    for (const auto& [x, c] : a) r += c * h.counit(x);
    return r;
}

int degree(const Bialgebra& h, const Mono& m) {
    int d = 0;
    for (const auto& x : m) d += h.letter_degree(x);
    return d;
}

MElem antipode(const Bialgebra& h, const MElem& a) {
    if (!h.connected) throw std::invalid_argument("antipode recursion needs a graded connected bialgebra: " + h.name);
    std::map<Mono, MElem> memo;
    std::function<MElem(const Mono&)> s = [&](const Mono& m) -> MElem {
        if (m.empty()) return unit_element();
        auto it = memo.find(m);
        if (it != memo.end()) return it->second;
        const int dm = degree(h, m);
        if (dm == 0) throw std::invalid_argument("degree-zero key in a connected bialgebra: " + h.name);
        MElem out;
        for (const auto& [k, c] : h.coproduct(m))
            if (degree(h, k.first) < dm) out.add(multiply(h, s(k.first), key(k.second)), -c);
        memo[m] = out;
        return out;
    };
    MElem out;
    for (const auto& [m, c] : a) out.add(s(m), c);
    return out;
}

MPair multiply_pairs(const Bialgebra& h, const MPair& a, const MPair& b) {
    MPair out;
    for (const auto& [x, c] : a)
        for (const auto& [y, d] : b) out.add(tensor(h.product(x.first, y.first), h.product(x.second, y.second)), c * d);
    return out;
}

MTriple coproduct_left(const Bialgebra& h, const MPair& a) {
    MTriple out;
    for (const auto& [k, c] : a)
        for (const auto& [l, d] : h.coproduct(k.first)) out.add({l.first, l.second, k.second}, c * d);
    return out;
}

MTriple coproduct_right(const Bialgebra& h, const MPair& a) {
    MTriple out;
    for (const auto& [k, c] : a)
        for (const auto& [l, d] : h.coproduct(k.second)) out.add({k.first, l.first, l.second}, c * d);
    return out;
}

std::vector<Obj> letter_classes(const Operad& op, int arity, bool coinvariant) {
    std::vector<Obj> b = op.basis(arity);
    if (!coinvariant) return b;
    std::set<Obj> s;
    for (const auto& x : b) s.insert(canonical(x));
    return {s.begin(), s.end()};
}

// ------------------------------------------------------------ primal

Bialgebra tensor_brace_bialgebra(const Operad& op, bool positive) {
    Bialgebra h;
    h.name = std::string(positive ? "B" : "D") + "_T(" + op.name() + ")";
    h.connected = positive;
    auto ctx = std::make_shared<BInfinity<Obj>>(brace_binfinity(op));
    h.product = [ctx](const Mono& u, const Mono& v) { return star_tensor(*ctx, u, v); };
    h.coproduct = [](const Mono& m) { return deconcatenate(m); };
    h.counit = [](const Mono& m) { return Rational(m.empty() ? 1 : 0); };
    h.letter_degree = [](const Obj& x) { return x.n - 1; };
    return h;
}

Bialgebra symmetric_binf_bialgebra(const Operad& op, bool coinvariant, bool positive) {
    Bialgebra h;
    h.name = std::string(positive ? "B" : "D") + (coinvariant ? "_coinv(" : "_S(") + op.name() + ")";
    h.commutative = true;
    h.connected = positive;
    BInf<Obj> base = binf_from_operad(op);
    BInf<Obj> ctx = base;
    if (coinvariant)
        ctx.bracket = [op](const Mono& u, const Mono& v) {
            std::vector<OpElem> args;
            for (const auto& y : v) args.push_back(OpElem::single(labelled(y)));
            OpElem r = binf_bracket(op, OpElem::single(labelled(u[0])), args);
            return map_keys(r, [](const Obj& x) { return canonical(x); });
        };
    auto shared = std::make_shared<BInf<Obj>>(ctx);
    h.product = [shared](const Mono& u, const Mono& v) { return star_sym(*shared, u, v); };
    h.coproduct = [](const Mono& m) { return unshuffle(m, true); };
    h.counit = [](const Mono& m) { return Rational(m.empty() ? 1 : 0); };
    h.letter_degree = [](const Obj& x) { return x.n - 1; };
    return h;
}

Bialgebra grossman_larson(int colors) {
    Bialgebra h;
    h.name = "GL(" + std::to_string(colors) + ")";
    h.commutative = true;
    h.connected = true;
    auto ctx = std::make_shared<BInf<Obj>>(grafting_binf());
    h.product = [ctx](const Mono& u, const Mono& v) { return star_sym(*ctx, u, v); };
    h.coproduct = [](const Mono& m) { return unshuffle(m, true); };
    h.counit = [](const Mono& m) { return Rational(m.empty() ? 1 : 0); };
    h.letter_degree = [](const Obj& x) { return x.n; };
    return h;
}

Bialgebra quasi_shuffle_bialgebra() {
    Bialgebra h;
    h.name = "QSh";
    h.connected = true;
    std::function<Element<Obj>(const Obj&, const Obj&)> mul = [](const Obj& a, const Obj& b) {
        std::vector<int> s(std::max(a.d.size(), b.d.size()), 0);
        for (std::size_t i = 0; i < a.d.size(); ++i) s[i] += a.d[i];
        for (std::size_t i = 0; i < b.d.size(); ++i) s[i] += b.d[i];
        return Element<Obj>::single(var(s));
    };
    auto ctx = std::make_shared<BInfinity<Obj>>(associative_binfinity<Obj>(mul));
    h.product = [ctx](const Mono& u, const Mono& v) { return star_tensor(*ctx, u, v); };
    h.coproduct = [](const Mono& m) { return deconcatenate(m); };
    h.counit = [](const Mono& m) { return Rational(m.empty() ? 1 : 0); };
    h.letter_degree = [](const Obj& x) { return x.n; };
    return h;
}

// -------------------------------------------------------------- dual

Rational eps0(const Operad& op, const Obj& letter, bool coinvariant) {
    if (letter.n != 1) return Rational(0);
    Rational r(0);
    for (const auto& [u, c] : op.unit()) {
        if (!coinvariant && u == letter) r += c;
        if (coinvariant && canonical(u) == letter) r += c * sym(letter);
    }
    return r;
}

Bialgebra dual_star(const Operad& op, bool coinvariant) {
    Bialgebra h;
    h.name = std::string(coinvariant ? "D*" : "D*_T") + "(" + op.name() + ")";
    h.commutative = coinvariant;
    h.product = [coinvariant](const Mono& a, const Mono& b) { return key(join(a, b, coinvariant)); };
    h.coproduct = [op, coinvariant](const Mono& m) {
        return multiplicative(m, coinvariant, [&](const Obj& x) { return star_letter(op, x, coinvariant); });
    };
    h.counit = [op, coinvariant](const Mono& m) {
        Rational r(1);
        for (const auto& x : m) r *= eps0(op, x, coinvariant);
        return r;
    };
    h.letter_degree = [](const Obj& x) { return x.n - 1; };
    return h;
}

Bialgebra dual_star_reduced(const Operad& op, bool coinvariant) {
    Bialgebra h = dual_star(op, coinvariant);
    h.name = std::string(coinvariant ? "B*" : "B*_T") + "(" + op.name() + ")";
    h.connected = true;
    h.coproduct = [op, coinvariant](const Mono& m) {
        MElem r = reduce_mono(op, m, coinvariant, true);
        MPair out;
        for (const auto& [k, c] : r)
            out.add(multiplicative(k, coinvariant,
                                   [&](const Obj& x) {
                                       return reduce_pair(op, star_letter(op, x, coinvariant), coinvariant, true);
                                   }),
                    c);
        return out;
    };
    h.counit = [op, coinvariant](const Mono& m) {
        Rational r(1);
        for (const auto& x : m) r *= x.n == 1 ? eps0(op, x, coinvariant) : Rational(0);
        return r;
    };
    return h;
}

Bialgebra dual_star_prime(const Operad& op, bool coinvariant) {
    Bialgebra h;
    h.name = std::string(coinvariant ? "D'*" : "D'*_T") + "(" + op.name() + ")";
    h.commutative = coinvariant;
    h.product = [coinvariant](const Mono& a, const Mono& b) { return key(join(a, b, coinvariant)); };
    h.coproduct = [op, coinvariant](const Mono& m) {
        return multiplicative(m, coinvariant, [&](const Obj& x) { return prime_letter(op, x, coinvariant); });
    };
    h.counit = [](const Mono& m) { return Rational(m.empty() ? 1 : 0); };
    h.letter_degree = [](const Obj& x) { return x.n - 1; };
    return h;
}

Bialgebra dual_star_prime_reduced(const Operad& op, bool coinvariant) {
    Bialgebra h = dual_star_prime(op, coinvariant);
    h.name = std::string(coinvariant ? "B'*" : "B'*_T") + "(" + op.name() + ")";
    h.connected = true;
    h.coproduct = [op, coinvariant](const Mono& m) {
        for (const auto& x : m)
            if (x.n == 1) return MPair{};
        return multiplicative(m, coinvariant, [&](const Obj& x) {
            return reduce_pair(op, prime_letter(op, x, coinvariant), coinvariant, false);
        });
    };
    h.counit = [](const Mono& m) { return Rational(m.empty() ? 1 : 0); };
    return h;
}

Bialgebra connes_kreimer(int colors) {
    Bialgebra h;
    h.name = "CK(" + std::to_string(colors) + ")";
    h.commutative = true;
    h.connected = true;
    h.product = [](const Mono& a, const Mono& b) { return key(join(a, b, true)); };
    h.coproduct = [](const Mono& m) { return multiplicative(m, true, cut_coproduct); };
    h.counit = [](const Mono& m) { return Rational(m.empty() ? 1 : 0); };
    h.letter_degree = [](const Obj& x) { return x.n; };
    return h;
}

Bialgebra extraction_contraction(int colors) {
    Bialgebra h;
    h.name = "EC(" + std::to_string(colors) + ")";
    h.commutative = true;
    h.product = [](const Mono& a, const Mono& b) { return key(join(a, b, true)); };
    h.coproduct = [colors](const Mono& m) {
        return multiplicative(m, true, [colors](const Obj& x) {
            MPair out;
            contractions(shape_of(x), colors, true,
                         [&](const Obj& c, const Mono& pieces) { out.add({Mono{c}, pieces}, Rational(1)); });
            return out;
        });
    };
    h.counit = [](const Mono& m) {
        for (const auto& x : m)
            if (x.n != 1 || x.col[0] != x.col[1]) return Rational(0);
        return Rational(1);
    };
    h.letter_degree = [](const Obj& x) { return x.n - 1; };
    return h;
}

MElem psi(const Operad& op, const MElem& f, bool coinvariant, bool inverse) {
    MElem out;
    const Rational sign(inverse ? -1 : 1);
    for (const auto& [m, c] : f) {
        MElem acc = unit_element();
        for (const auto& x : m) {
            MElem lx = key(Mono{x});
            if (x.n == 1) lx.add(Mono{}, sign * eps0(op, x, coinvariant));
            MElem next;
            for (const auto& [a, d] : acc)
                for (const auto& [b, e] : lx) next.add(join(a, b, coinvariant), d * e);
            acc = std::move(next);
        }
        out.add(acc, c);
    }
    return out;
}

MPair psi2(const Operad& op, const MPair& f, bool coinvariant, bool inverse) {
    MPair out;
    for (const auto& [k, c] : f)
        out.add(tensor(psi(op, key(k.first), coinvariant, inverse), psi(op, key(k.second), coinvariant, inverse)), c);
    return out;
}

Rational pairing(const MElem& f, const MElem& x, bool commutative, bool classes) {
    std::function<Rational(const Obj&, const Obj&)> letter = [classes](const Obj& a, const Obj& b) {
        if (a != b) return Rational(0);
        return classes ? sym(a) : Rational(1);
    };
    Rational r(0);
    for (const auto& [a, c] : f)
        for (const auto& [b, d] : x) {
            Rational p = commutative ? pair_monomials(a, b, letter) : pair_words(a, b, letter);
            if (!p.is_zero()) r += c * d * p;
        }
    return r;
}

Rational twisted_pairing(const Operad& op, const MElem& f, const MElem& x, bool coinvariant) {
    return pairing(psi(op, f, coinvariant), x, coinvariant, coinvariant);
}

// ------------------------------------------------------ cointeraction

Obj decorated_tree(const std::string& code) { return canonical(parse_tree_code(code)); }

Obj decorated_pair(const std::string& code, int j) {
    Obj t = parse_tree_code(code);
    t.col.push_back(j);
    return canonical(t);
}

MElem act_on_forest(int colors, const Mono& forest, const Mono& dmono) {
    if (dmono.empty()) return key(sorted(forest));
    Operad pl = decorated_prelie(colors);
    Mono head(dmono.begin(), dmono.end() - 1);
    const Obj& last = dmono.back();
    MElem out;
    for (const auto& [f, c] : act_on_forest(colors, forest, head)) out.add(act_letter_forest(colors, f, last), c);
    for (std::size_t i = 0; i < head.size(); ++i) {
        OpElem dot = prelie(pl, OpElem::single(labelled(head[i])), OpElem::single(labelled(last)));
        std::map<Obj, Rational> classes;
        for (const auto& [x, c] : dot) classes[canonical(x)] += c;
        for (const auto& [w, c] : classes) {
            if (c.is_zero()) continue;
            Mono mod = head;
            mod[i] = w;
            out.add(act_on_forest(colors, forest, sorted(mod)), -c);
        }
    }
    return out;
}

MPair coaction_rho(int colors, const Mono& forest) {
    return multiplicative(forest, true, [colors](const Obj& t) {
        MPair out;
        contractions(shape_of(t), colors, false,
                     [&](const Obj& c, const Mono& pieces) { out.add({Mono{c}, pieces}, Rational(1)); });
        return out;
    });
}

MPair coaction_rho(int colors, const MElem& a) {
    MPair out;
    for (const auto& [m, c] : a) out.add(coaction_rho(colors, m), c);
    return out;
}

std::vector<Obj> tree_classes(int vertices, int colors) {
    std::set<Obj> s;
    for (const auto& t : enumerate(Family::LabelledTree, vertices)) {
        std::vector<int> col(vertices, 1);
        for (;;) {
            Obj x = t;
            x.col = col;
            s.insert(canonical(x));
            int k = 0;
            while (k < vertices && col[k] == colors) col[k++] = 1;
            if (k == vertices) break;
            ++col[k];
        }
    }
    return {s.begin(), s.end()};
}

std::vector<Obj> pair_classes(int vertices, int colors) {
    std::vector<Obj> out;
    for (const auto& t : tree_classes(vertices, colors))
        for (int j = 1; j <= colors; ++j) {
            Obj p = t;
            p.col.push_back(j);
            out.push_back(canonical(p));
        }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Mono> forests(const std::vector<std::vector<Obj>>& by_degree, int max_degree, int max_letters) {
    std::vector<Mono> out;
    std::vector<std::pair<int, const Obj*>> flat;
    for (int d = 0; d < static_cast<int>(by_degree.size()) && d <= max_degree; ++d)
        for (const auto& x : by_degree[d]) flat.push_back({d, &x});
    std::sort(flat.begin(), flat.end(), [](const auto& a, const auto& b) { return *a.second < *b.second; });
    Mono cur;
    std::function<void(std::size_t, int)> rec = [&](std::size_t from, int left) {
        out.push_back(cur);
        if (static_cast<int>(cur.size()) == max_letters) return;
        for (std::size_t i = from; i < flat.size(); ++i) {
            if (flat[i].first > left) continue;
            cur.push_back(*flat[i].second);
            rec(i, left - flat[i].first);
            cur.pop_back();
        }
    };
    rec(0, max_degree);
    return out;
}

Bialgebra bialgebra_by_name(const std::string& handle, const Operad& op, bool coinvariant) {
    const int colors = std::max(1, op.colors());
    if (handle == "ck") return connes_kreimer(colors);
    if (handle == "gl") return grossman_larson(colors);
    if (handle == "ec") return extraction_contraction(colors);
    if (handle == "quasi-shuffle") return quasi_shuffle_bialgebra();
    if (handle == "tensor-brace") return tensor_brace_bialgebra(op);
    if (handle == "symmetric-binf") return symmetric_binf_bialgebra(op, coinvariant);
    if (handle == "dual-star") return dual_star(op, coinvariant);
    if (handle == "dual-star-prime") return dual_star_prime(op, coinvariant);
    if (handle == "dual-star-reduced") return dual_star_reduced(op, coinvariant);
    if (handle == "dual-star-prime-reduced") return dual_star_prime_reduced(op, coinvariant);
    throw std::invalid_argument("unknown handle \"" + handle + "\"");
}

std::vector<std::string> bialgebra_names() {
    return {"ck", "gl", "ec", "quasi-shuffle", "tensor-brace", "symmetric-binf", "dual-star", "dual-star-prime",
            "dual-star-reduced", "dual-star-prime-reduced"};
}

}  // namespace opforge
