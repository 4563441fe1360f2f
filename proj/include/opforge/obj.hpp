#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

namespace opforge {

enum class Fam : std::uint8_t { Com, Perm, Tree, QO, DG, Var };

// Canonical combinatorial key.
//   Com  : e_n, d empty
//   Perm : one-line word sigma(1)..sigma(n)
//   Tree : parent array, d[v-1] = parent of v, 0 for the root
//   QO   : n*n reflexive transitive 0/1 matrix, d[x*n+y] = [x <= y]
//   DG   : n*n 0/1 adjacency matrix without loops, d[x*n+y] = [x -> y]
//   Var  : exponent vector of a commutative monomial X_alpha, n = |alpha|
// col holds decorations in [N]: empty, one per vertex, or one per vertex
// followed by an output color. iso marks the canonical representative of
// an isomorphism class rather than a labelled object.
struct Obj {
    Fam fam = Fam::Com;
    int n = 0;
    std::vector<int> d;
    std::vector<int> col;
    bool iso = false;

    bool has_output() const { return static_cast<int>(col.size()) == n + 1; }
    int output() const { return has_output() ? col.back() : 0; }
    bool decorated() const { return !col.empty(); }

    friend bool operator==(const Obj& a, const Obj& b) {
        return a.fam == b.fam && a.n == b.n && a.iso == b.iso && a.d == b.d && a.col == b.col;
    }
    friend bool operator!=(const Obj& a, const Obj& b) { return !(a == b); }
    friend bool operator<(const Obj& a, const Obj& b) {
        return std::tie(a.fam, a.n, a.iso, a.d, a.col) < std::tie(b.fam, b.n, b.iso, b.d, b.col);
    }
};

using ObjWord = std::vector<Obj>;

// Bare text notation: "132", "1[2,3]", "a[b,c]", "qo{3; 1<2, 2~3}",
// "dg{3; 1->2}", "e3", "x[1,0]".
std::string notation(const Obj& x);
// Family-annotated literal used by the expression language and JSON keys:
// "perm[132]", "tree[1[2,3]]", "dtree[a[b,c]]", "dpair[a[b];d]", "e3", ...
// Plain rooted tree classes print as "rtree[1[1,1]]" and other classes as
// "cls(<literal of the representative>)".
std::string literal(const Obj& x);

// Words and monomials print letters joined by a middle dot; "1" when empty.
std::string literal(const ObjWord& w);
std::string notation(const ObjWord& w);

}  // namespace opforge
