#pragma once

#include "opforge/obj.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace opforge {

// Raised when a request exceeds the enumeration guard.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Family { Permutation, LabelledTree, QuasiOrder, Order, Digraph, AcyclicDigraph };

// Size guard for labelled enumeration: default 8, overridable through the
// OPFORGE_GUARD environment variable, always clamped at the hard maximum
// of the family.
int guard_limit();
int hard_maximum(Family f);
void check_guard(Family f, int n);

// ---------------------------------------------------------------- objects
Obj com(int n);
Obj perm(std::vector<int> word);
Obj tree_from_parents(std::vector<int> parent);
Obj qo_from_matrix(int n, const std::vector<int>& rel);
Obj dg_from_edges(int n, const std::vector<std::pair<int, int>>& edges);
Obj var(std::vector<int> alpha);
Obj single_vertex(Fam f);

// ------------------------------------------------------------ permutations
std::vector<int> perm_compose(const std::vector<int>& s, const std::vector<int>& t);  // s o t
std::vector<int> perm_inverse(const std::vector<int>& s);
std::vector<std::vector<int>> all_permutations(int n);
Obj standardize(const std::vector<int>& w);

// --------------------------------------------------------------- relabeling
// phi maps old label v (1-based) to phi[v-1]. Decorations follow vertices.
Obj relabel(const Obj& x, const std::vector<int>& phi);
// Right action x^sigma = relabel by sigma^{-1}; for permutations x o sigma.
Obj act(const Obj& x, const std::vector<int>& sigma);

// ------------------------------------------------------------- enumeration
std::vector<Obj> enumerate(Family f, int n);
std::size_t count(Family f, int n);

// Quasi-orders as bit masks (bit x*n+y means x <= y), cached per n.
const std::vector<std::uint64_t>& quasi_order_masks(int n);

// ---------------------------------------------------------------- orbits
struct OrbitClass {
    Obj rep;       // canonical representative (iso flag set)
    long long s;   // symmetry order n!/|orbit|
};
OrbitClass orbit_canonical(const Obj& x);
Obj canonical(const Obj& x);
long long symmetry_order(const Obj& x);
long long orbit_size(const Obj& x);

// -------------------------------------------------------------- trees
// Children lists indexed by vertex (1-based), root in slot 0.
struct TreeView {
    int n = 0;
    int root = 0;
    std::vector<std::vector<int>> children;  // size n+1
};
TreeView tree_view(const Obj& t);
// Canonical isoclass code: color[child codes sorted], colors default to 1.
std::string tree_code(const Obj& t);
// Labelled text "1[2,3]" (children sorted by their own text).
std::string tree_text(const Obj& t);
Obj parse_tree_text(const std::string& s);
// Decorated isoclass from a code such as "1[2,3[1]]"; labels are colors.
Obj parse_tree_code(const std::string& s);
// Subtree induced on a connected vertex set (root = topmost vertex),
// relabelled in increasing order; colors follow.
Obj tree_restrict(const Obj& t, const std::vector<int>& vertices);

// ------------------------------------------------ restriction and quotients
// Vertex subsets are lists of 1-based labels.
struct Labelled {
    Obj obj;
    std::vector<int> labels;  // labels[k] = original label of new vertex k+1; 0 = merged vertex
};
Labelled restrict_to(const Obj& x, const std::vector<int>& I);
Labelled contract(const Obj& x, const std::vector<int>& I);
bool is_convex(const Obj& x, const std::vector<int>& I);
bool is_ideal(const Obj& x, const std::vector<int>& I);
bool is_connected(const Obj& x);

// Quasi-order of a digraph (reachability) and predicates.
Obj reachability_order(const Obj& g);
bool is_order(const Obj& q);
bool is_acyclic(const Obj& g);

// Text parsing for quasi-orders and digraphs ("qo{3; 1<2, 2~3}").
Obj parse_qo(const std::string& s);
Obj parse_dg(const std::string& s);

}  // namespace opforge
