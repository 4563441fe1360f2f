#pragma once

#include "opforge/combinatorics.hpp"
#include "opforge/element.hpp"

#include <memory>
#include <string>
#include <vector>

namespace opforge {

using OpElem = Element<Obj>;

enum class OperadName { Com, As, PreLie, QO, O, SG, NcSG };
enum class Mode { Circ, Nabla };

struct OperadState;

// A finitely based symmetric operad. With colors > 0 the operad is the
// decorated version P (x) C_V over the color set [colors]: basis keys carry
// one color per input and an output color, and compositions vanish unless
// the plugged output color matches the input color it replaces.
class Operad {
public:
    Operad(OperadName name, Mode mode = Mode::Circ, int colors = 0, bool sign_bug = false);

    OperadName kind() const { return name_; }
    Mode mode() const { return mode_; }
    int colors() const { return colors_; }
    bool decorated() const { return colors_ > 0; }
    Fam family() const;
    std::string name() const;

    OpElem unit() const;
    // Labelled basis of arity n (all colorings when decorated).
    std::vector<Obj> basis(int n) const;
    bool in_basis(const Obj& x) const;

    // Basis-level partial composition p o_i q, memoized.
    const OpElem& compose(const Obj& p, int i, const Obj& q) const;
    // Right action x^sigma.
    Obj act(const Obj& x, const std::vector<int>& sigma) const;

    // Same operad without decorations.
    Operad undecorated() const { return Operad(name_, mode_, 0, sign_bug_); }
    // Copy with an injected fault for mutation testing: the first term of
    // every basis composition is negated.
    Operad with_sign_bug() const { return Operad(name_, mode_, colors_, true); }
    bool sign_bug() const { return sign_bug_; }

private:
    OperadName name_;
    Mode mode_;
    int colors_;
    bool sign_bug_;
    std::shared_ptr<OperadState> state_;
    OpElem compose_plain(const Obj& p, int i, const Obj& q) const;
};

Operad parse_operad(const std::string& name, const std::string& mode = "circ", int colors = 0);

int arity_of(const OpElem& e);  // 0 for the zero element; throws on mixed arities

OpElem partial_compose(const Operad& op, const OpElem& p, int i, const OpElem& q);
// p o (q_1, ..., q_n), computed from the last slot to the first.
OpElem full_compose(const Operad& op, const OpElem& p, const std::vector<OpElem>& qs);
// p o_{i_1..i_k} (q_1..q_k): increasing slots, unit elsewhere.
OpElem multi_compose(const Operad& op, const OpElem& p, const std::vector<int>& slots,
                     const std::vector<OpElem>& qs);
OpElem sym_action(const Operad& op, const OpElem& p, const std::vector<int>& sigma);

// Basis-level building blocks shared with other modules.
// sigma_{m,n}^{(i)}: image of old vertex j of p (inserted vertex k of q when inner is true).
inline int shift_outer(int j, int i, int n) { return j < i ? j : j + n - 1; }
inline int shift_inner(int k, int i) { return i + k - 1; }

// Discrete order (antichain) on k points and the chain 1<2<..<k.
Obj discrete_qo(int k);
Obj chain_qo(int k);

}  // namespace opforge
