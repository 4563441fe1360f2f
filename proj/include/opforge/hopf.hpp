#pragma once

#include "opforge/induced.hpp"

#include <functional>
#include <memory>
#include <string>

namespace opforge {

// Basis keys of tensor or symmetric algebras: words, or sorted monomials.
using Mono = ObjWord;
using MElem = Element<Mono>;
using MPair = Element<std::pair<Mono, Mono>>;

// A bialgebra given by oracles on basis keys. Letters are labelled basis
// elements, or class representatives (Obj::iso) for coinvariant carriers.
// Dual carriers use the same keys: the letter x stands for x* (labelled) or
// for f_w = s_w * sum of x* over the orbit w (coinvariant).
struct Bialgebra {
    std::string name;
    bool commutative = false;
    bool connected = false;
    std::function<MElem(const Mono&, const Mono&)> product;
    std::function<MPair(const Mono&)> coproduct;
    std::function<Rational(const Mono&)> counit;
    std::function<int(const Obj&)> letter_degree;
};

MElem unit_element();
MElem key(const Mono& m);
MElem multiply(const Bialgebra& h, const MElem& a, const MElem& b);
MPair comultiply(const Bialgebra& h, const MElem& a);
Rational apply_counit(const Bialgebra& h, const MElem& a);
int degree(const Bialgebra& h, const Mono& m);
// Standard recursion for graded connected bialgebras.
MElem antipode(const Bialgebra& h, const MElem& a);

// Factorwise product on tensor squares.
MPair multiply_pairs(const Bialgebra& h, const MPair& a, const MPair& b);
// (Delta (x) id) and (id (x) Delta) on a tensor square, as triples.
using MTriple = Element<std::tuple<Mono, Mono, Mono>>;
MTriple coproduct_left(const Bialgebra& h, const MPair& a);
MTriple coproduct_right(const Bialgebra& h, const MPair& a);

// ---------------------------------------------------------------- primal

// (T(P), *, deconcatenation) with * from the brace structure; positive keeps
// only letters of arity >= 2.
Bialgebra tensor_brace_bialgebra(const Operad& op, bool positive = false);
// (S(P) or S(coinv P), *, unshuffle) with * from the b-infinity brackets.
Bialgebra symmetric_binf_bialgebra(const Operad& op, bool coinvariant, bool positive = false);
// Grossman-Larson on forests of rooted trees decorated by [colors]
// (colors = 1 is the undecorated case).
Bialgebra grossman_larson(int colors);
// Quasi-shuffle bialgebra (T(K[X_1..X_N]_+), quasi-shuffle, deconcatenation).
Bialgebra quasi_shuffle_bialgebra();

// ------------------------------------------------------------------ dual

// Transpose of the compositions: letter x goes to the sum of p (x) q_1..q_n
// weighted by the coefficient of x in p o (q_1..q_n). Tensor carrier on
// labelled letters, symmetric carrier on orbit classes.
Bialgebra dual_star(const Operad& op, bool coinvariant);
// Quotient by f - eps_0(f) for the arity-one letters.
Bialgebra dual_star_reduced(const Operad& op, bool coinvariant);
// Transpose of the star product of the brace (tensor) or b-infinity
// (symmetric) structure.
Bialgebra dual_star_prime(const Operad& op, bool coinvariant);
// Quotient of the previous one by the arity-one letters.
Bialgebra dual_star_prime_reduced(const Operad& op, bool coinvariant);
// Connes-Kreimer on decorated forests: admissible cuts, trunk on the left.
Bialgebra connes_kreimer(int colors);
// Extraction-contraction on forests of pairs (t, j), by the partition formula.
Bialgebra extraction_contraction(int colors);

// Handle by name: ck, gl, ec (colors from op, at least 1), quasi-shuffle,
// tensor-brace, symmetric-binf, dual-star, dual-star-prime,
// dual-star-reduced, dual-star-prime-reduced.
Bialgebra bialgebra_by_name(const std::string& handle, const Operad& op, bool coinvariant);
std::vector<std::string> bialgebra_names();

// eps_0 of a dual letter: its value on the unit of the operad.
Rational eps0(const Operad& op, const Obj& letter, bool coinvariant);
// Psi: f -> f + eps_0(f) 1 on arity-one letters, extended multiplicatively.
// With inverse = true: f -> f - eps_0(f) 1.
MElem psi(const Operad& op, const MElem& f, bool coinvariant, bool inverse = false);
MPair psi2(const Operad& op, const MPair& f, bool coinvariant, bool inverse = false);

// <F, X>: letters pair as delta (labelled) or s_w delta (classes); monomials
// pair through permanents, words letter by letter.
Rational pairing(const MElem& f, const MElem& x, bool commutative, bool classes);
// <Psi(F), X>: the pairing under which dual_star is adjoint to the product.
Rational twisted_pairing(const Operad& op, const MElem& f, const MElem& x, bool coinvariant);

// ------------------------------------------------------ cointeraction

// Letter (t, j) of D_PreLie(V): decorated tree class with output color j.
Obj decorated_pair(const std::string& code, int j);
// Decorated tree class of A_PreLie(V), e.g. "1[2,3]" (labels are colors).
Obj decorated_tree(const std::string& code);

// Action of a D_PreLie(V) monomial on an A_PreLie(V) forest.
MElem act_on_forest(int colors, const Mono& forest, const Mono& dmono);
// Coaction rho: A*_PreLie(V) -> A*_PreLie(V) (x) D*_PreLie(V), partition formula.
MPair coaction_rho(int colors, const Mono& forest);
MPair coaction_rho(int colors, const MElem& a);

// Enumeration helpers shared by tests and suites.
std::vector<Obj> tree_classes(int vertices, int colors);             // decorated rooted trees
std::vector<Obj> pair_classes(int vertices, int colors);             // pairs (t, j)
std::vector<Mono> forests(const std::vector<std::vector<Obj>>& by_degree, int max_degree, int max_letters = 64);
std::vector<Obj> letter_classes(const Operad& op, int arity, bool coinvariant);

}  // namespace opforge
