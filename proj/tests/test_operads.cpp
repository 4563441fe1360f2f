#include "doctest.h"
#include "opforge/operads.hpp"

#include <map>
#include <tuple>

using namespace opforge;

namespace {

OpElem one(const Obj& x) { return OpElem::single(x); }
OpElem canon(const OpElem& e) { return map_keys(e, [](const Obj& x) { return canonical(x); }); }

Obj tree(const char* s) { return parse_tree_text(s); }

// Both associativity axioms on all basis triples with total arity <= max_total.
int check_associativity(const Operad& op, int max_total) {
    int cases = 0;
    for (int m = 1; m <= max_total; ++m)
        for (int n = 1; m + n <= max_total + 1; ++n)
            for (int k = 1; m + n + k - 2 <= max_total; ++k)
                for (const auto& p : op.basis(m))
                    for (const auto& q : op.basis(n))
                        for (const auto& r : op.basis(k)) {
                            for (int a = 1; a <= m; ++a) {
                                OpElem pq = op.compose(p, a, q);
                                // sequential
                                for (int j = 1; j <= n; ++j) {
                                    OpElem lhs = partial_compose(op, pq, a + j - 1, one(r));
                                    OpElem rhs = partial_compose(op, one(p), a, op.compose(q, j, r));
                                    CHECK(lhs == rhs);
                                    ++cases;
                                }
                                // parallel
                                for (int b = a + 1; b <= m; ++b) {
                                    OpElem lhs = partial_compose(op, pq, b + n - 1, one(r));
                                    OpElem rhs = partial_compose(op, op.compose(p, b, r), a, one(q));
                                    CHECK(lhs == rhs);
                                    ++cases;
                                }
                            }
                        }
    return cases;
}

void check_unit(const Operad& op, int max_arity) {
    INFO(op.name());
    for (int n = 1; n <= max_arity; ++n)
        for (const auto& p : op.basis(n)) {
            CHECK(partial_compose(op, op.unit(), 1, one(p)) == one(p));
            for (int i = 1; i <= n; ++i) CHECK(partial_compose(op, one(p), i, op.unit()) == one(p));
        }
}

void check_equivariance(const Operad& op, int max_total) {
    for (int m = 1; m <= max_total; ++m)
        for (int n = 1; m + n - 1 <= max_total; ++n)
            for (const auto& p : op.basis(m))
                for (const auto& q : op.basis(n))
                    for (const auto& s : all_permutations(m))
                        for (int i = 1; i <= m; ++i) {
                            OpElem lhs = op.compose(op.act(p, s), i, q);
                            OpElem rhs = op.compose(p, s[i - 1], q);
                            CHECK(canon(lhs) == canon(rhs));
                        }
}

}  // namespace

TEST_CASE("As compositions") {
    Operad as(OperadName::As);
    CHECK(as.compose(perm({1, 2}), 1, perm({1, 2})) == one(perm({1, 2, 3})));
    CHECK(as.compose(perm({1, 2}), 1, perm({2, 1})) == one(perm({2, 1, 3})));
    CHECK(as.compose(perm({1, 2}), 2, perm({1, 2})) == one(perm({1, 2, 3})));
    CHECK(as.compose(perm({1, 2}), 2, perm({2, 1})) == one(perm({1, 3, 2})));
    CHECK(as.compose(perm({2, 1}), 1, perm({1, 2})) == one(perm({3, 1, 2})));
    CHECK(as.compose(perm({2, 1}), 1, perm({2, 1})) == one(perm({3, 2, 1})));
    CHECK(as.compose(perm({2, 1}), 2, perm({1, 2})) == one(perm({2, 3, 1})));
    CHECK(as.compose(perm({2, 1}), 2, perm({2, 1})) == one(perm({3, 2, 1})));
    CHECK(sym_action(as, one(perm({1, 2})), {2, 1}) == one(perm({2, 1})));
}

TEST_CASE("Com compositions") {
    Operad c(OperadName::Com);
    CHECK(c.compose(com(2), 1, com(3)) == one(com(4)));
    CHECK(sym_action(c, one(com(3)), {1, 3, 2}) == one(com(3)));
    CHECK(full_compose(c, one(com(2)), {one(com(2)), one(com(3))}) == one(com(5)));
}

TEST_CASE("PreLie insertion") {
    Operad pl(OperadName::PreLie);
    CHECK(pl.compose(tree("1[2]"), 1, tree("1[2]")) == one(tree("1[2,3]")) + one(tree("1[2[3]]")));
    CHECK(pl.compose(tree("1[2]"), 2, tree("1[2]")) == one(tree("1[2[3]]")));
    CHECK(sym_action(pl, one(tree("1[2]")), {2, 1}) == one(tree("2[1]")));
    // number of terms = |q|^(children of the replaced vertex)
    CHECK(pl.compose(tree("1[2,3]"), 1, tree("1[2[3]]")).size() == 9);
    CHECK(pl.basis(3).size() == 9);
}

TEST_CASE("O composition of two chains") {
    Operad o(OperadName::O);
    OpElem r = o.compose(chain_qo(2), 2, chain_qo(2));
    CHECK(r == one(chain_qo(3)) + one(parse_qo("qo{3; 1<3, 2<3}")));
    // brute force over all orders on [3]
    OpElem brute;
    for (const auto& x : enumerate(Family::Order, 3)) {
        if (restrict_to(x, {2, 3}).obj != chain_qo(2)) continue;
        if (!is_convex(x, {2, 3})) continue;
        if (contract(x, {2, 3}).obj != chain_qo(2)) continue;
        brute.add(x, Rational(1));
    }
    CHECK(r == brute);
}

TEST_CASE("operad associativity") {
    CHECK(check_associativity(Operad(OperadName::As), 5) > 0);
    CHECK(check_associativity(Operad(OperadName::Com), 5) > 0);
    CHECK(check_associativity(Operad(OperadName::PreLie), 5) > 1000);
    CHECK(check_associativity(Operad(OperadName::QO), 4) > 0);
    CHECK(check_associativity(Operad(OperadName::O), 4) > 0);
    CHECK(check_associativity(Operad(OperadName::SG, Mode::Circ), 3) > 0);
    CHECK(check_associativity(Operad(OperadName::SG, Mode::Nabla), 3) > 0);
    CHECK(check_associativity(Operad(OperadName::NcSG), 3) > 0);
    CHECK(check_associativity(Operad(OperadName::PreLie, Mode::Circ, 2), 4) > 0);
}

TEST_CASE("operad units") {
    for (auto n : {OperadName::Com, OperadName::As, OperadName::PreLie, OperadName::QO, OperadName::O, OperadName::SG, OperadName::NcSG})
        check_unit(Operad(n), n == OperadName::SG || n == OperadName::NcSG ? 3 : 4);
    check_unit(Operad(OperadName::SG, Mode::Nabla), 3);
    check_unit(Operad(OperadName::PreLie, Mode::Circ, 2), 3);
}

TEST_CASE("equivariance up to orbits") {
    for (auto n : {OperadName::Com, OperadName::As, OperadName::PreLie, OperadName::QO, OperadName::O})
        check_equivariance(Operad(n), 4);
    check_equivariance(Operad(OperadName::SG), 3);
    check_equivariance(Operad(OperadName::PreLie, Mode::Circ, 2), 3);
}

TEST_CASE("O is closed and the projection from qO is a morphism") {
    Operad qo(OperadName::QO);
    auto proj = [](const OpElem& e) { return e.filter([](const Obj& x) { return is_order(x); }); };
    for (int m = 1; m <= 3; ++m)
        for (int n = 1; m + n - 1 <= 3; ++n)
            for (const auto& p : qo.basis(m))
                for (const auto& q : qo.basis(n))
                    for (int i = 1; i <= m; ++i) {
                        OpElem full = qo.compose(p, i, q);
                        OpElem lhs = proj(full);
                        OpElem rhs = partial_compose(qo, proj(one(p)), i, proj(one(q)));
                        CHECK(lhs == rhs);
                        if (is_order(p) && is_order(q)) CHECK(lhs == full);
                    }
}

TEST_CASE("NcSG is a suboperad and its two compositions agree") {
    Operad sg(OperadName::SG), nab(OperadName::SG, Mode::Nabla);
    for (int m = 1; m <= 3; ++m)
        for (int n = 1; m + n - 1 <= 4; ++n)
            for (const auto& p : enumerate(Family::AcyclicDigraph, m))
                for (const auto& q : enumerate(Family::AcyclicDigraph, n))
                    for (int i = 1; i <= m; ++i) {
                        const OpElem& a = sg.compose(p, i, q);
                        CHECK(a == nab.compose(p, i, q));
                        for (const auto& [x, c] : a) CHECK(is_acyclic(x));
                    }
}

TEST_CASE("SG composition agrees with the brute-force definition") {
    for (Mode md : {Mode::Circ, Mode::Nabla}) {
        Operad sg(OperadName::SG, md);
        for (int total = 1; total <= 4; ++total) {
            // every digraph on [total] is one composite for each block position
            std::map<std::tuple<Obj, int, Obj>, OpElem> brute;
            for (const auto& g : enumerate(Family::Digraph, total))
                for (int n = 1; n <= total; ++n)
                    for (int i = 1; i + n - 1 <= total; ++i) {
                        std::vector<int> B;
                        for (int k = 0; k < n; ++k) B.push_back(i + k);
                        if (md == Mode::Circ && n > 1 && !is_convex(g, B)) continue;
                        brute[{contract(g, B).obj, i, restrict_to(g, B).obj}].add(g, Rational(1));
                    }
            for (int m = 1; m <= std::min(total, 3); ++m) {
                const int n = total - m + 1;
                for (const auto& p : sg.basis(m))
                    for (const auto& q : sg.basis(n))
                        for (int i = 1; i <= m; ++i) CHECK(sg.compose(p, i, q) == brute[{p, i, q}]);
            }
        }
    }
}

TEST_CASE("decorated compositions match colors") {
    Operad pl(OperadName::PreLie, Mode::Circ, 2);
    Obj p = tree("1[2]"), q = tree("1");
    p.col = {1, 2, 1};
    q.col = {1, 2};
    CHECK(pl.compose(p, 1, q).is_zero());
    Obj r = q;
    r.col = {2, 1};
    OpElem got = pl.compose(p, 1, r);
    Obj want = tree("1[2]");
    want.col = {2, 2, 1};
    CHECK(got == one(want));
    CHECK(pl.unit().size() == 2);
}

TEST_CASE("errors") {
    Operad as(OperadName::As);
    CHECK_THROWS(as.compose(perm({1, 2}), 3, perm({1})));
    CHECK_THROWS(Operad(OperadName::QO, Mode::Nabla));
    CHECK_THROWS(full_compose(as, one(perm({1, 2})), {one(perm({1}))}));
    CHECK_THROWS(parse_operad("Lie"));
}
