#include "opforge/induced.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace opforge {

namespace {

// Calls f(slots) for every increasing k-tuple in [n].
template <class F>
void for_each_increasing(int n, int k, F&& f) {
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

// Splits p by arity so that every piece is homogeneous.
std::map<int, OpElem> by_arity(const OpElem& p) {
    std::map<int, OpElem> out;
    for (const auto& [x, c] : p) out[x.n].add(x, c);
    return out;
}

bool has_as_com_morphism(const Operad& op) {
    return !op.decorated() && (op.kind() == OperadName::QO || op.kind() == OperadName::O ||
                               op.kind() == OperadName::SG);
}

Obj discrete_of(const Operad& op, int k) {
    return op.kind() == OperadName::SG ? dg_from_edges(k, {}) : discrete_qo(k);
}

Obj chain2_of(const Operad& op) {
    return op.kind() == OperadName::SG ? dg_from_edges(2, {{1, 2}}) : chain_qo(2);
}

}  // namespace

OpElem brace(const Operad& op, const OpElem& p, const std::vector<OpElem>& args) {
    if (args.empty()) return p;
    OpElem out;
    const int k = static_cast<int>(args.size());
    for (const auto& [n, part] : by_arity(p)) {
        if (n < k) continue;
        for_each_increasing(n, k, [&](const std::vector<int>& slots) {
            out += multi_compose(op, part, slots, args);
        });
    }
    return out;
}

OpElem prelie(const Operad& op, const OpElem& p, const OpElem& q) {
    OpElem out;
    for (const auto& [x, c] : p)
        for (int i = 1; i <= x.n; ++i) out.add(partial_compose(op, OpElem::single(x), i, q), c);
    return out;
}

OpElem binf_bracket(const Operad& op, const OpElem& p, const std::vector<OpElem>& args) {
    if (args.empty()) return p;
    OpElem out;
    const int k = static_cast<int>(args.size());
    for (const auto& [n, part] : by_arity(p)) {
        if (n < k) continue;
        // Injective tuples = increasing slot sets times the orders of the arguments.
        std::vector<int> order(k);
        std::iota(order.begin(), order.end(), 0);
        do {
            std::vector<OpElem> permuted;
            for (int j : order) permuted.push_back(args[j]);
            for_each_increasing(n, k, [&](const std::vector<int>& slots) {
                out += multi_compose(op, part, slots, permuted);
            });
        } while (std::next_permutation(order.begin(), order.end()));
    }
    return out;
}

OpElem graft(const Obj& s, const Obj& t) {
    if (s.fam != Fam::Tree || t.fam != Fam::Tree) throw std::invalid_argument("grafting needs rooted trees");
    if (s.col.empty() != t.col.empty()) throw std::invalid_argument("grafting mixes decorated and plain trees");
    OpElem out;
    std::vector<int> base(s.d.begin(), s.d.end());
    for (int p : t.d) base.push_back(p ? p + s.n : 0);
    std::vector<int> col;
    if (!s.col.empty()) {
        col.assign(s.col.begin(), s.col.begin() + s.n);
        col.insert(col.end(), t.col.begin(), t.col.begin() + t.n);
    }
    const int troot = static_cast<int>(std::find(t.d.begin(), t.d.end(), 0) - t.d.begin());
    for (int v = 1; v <= s.n; ++v) {
        std::vector<int> parent = base;
        parent[s.n + troot] = v;
        Obj r = tree_from_parents(parent);
        r.col = col;
        out.add(canonical(r), Rational(1));
    }
    return out;
}

BInf<Obj> grafting_binf() { return oudom_guin_binf<Obj>(graft); }

OpElem theta_image(const Operad& op, int k, int l) {
    if (!has_as_com_morphism(op)) throw std::invalid_argument("theta images need qO, O or SG");
    if (k < 0 || l < 0 || k + l < 1) throw std::invalid_argument("theta image needs k + l >= 1");
    check_guard(op.kind() == OperadName::SG ? Family::Digraph : Family::QuasiOrder, k + l);
    if (k == 0 || l == 0) return k + l == 1 ? OpElem::single(discrete_of(op, 1)) : OpElem{};
    OpElem star = OpElem::single(discrete_of(op, 2)) + OpElem::single(chain2_of(op));
    OpElem all = full_compose(op, star, {OpElem::single(discrete_of(op, k)), OpElem::single(discrete_of(op, l))});
    return all.filter([](const Obj& x) { return is_connected(x); });
}

OpElem theta_image_ideal(const Operad& op, int k, int l) {
    if (!has_as_com_morphism(op)) throw std::invalid_argument("theta images need qO, O or SG");
    if (k == 0 || l == 0) return k + l == 1 ? OpElem::single(discrete_of(op, 1)) : OpElem{};
    const Family fam = op.kind() == OperadName::SG  ? Family::Digraph
                       : op.kind() == OperadName::O ? Family::Order
                                                    : Family::QuasiOrder;
    std::vector<int> A(k), B(l);
    std::iota(A.begin(), A.end(), 1);
    std::iota(B.begin(), B.end(), k + 1);
    OpElem out;
    for (const auto& x : enumerate(fam, k + l)) {
        if (restrict_to(x, A).obj != discrete_of(op, k)) continue;
        if (restrict_to(x, B).obj != discrete_of(op, l)) continue;
        if (!is_ideal(x, B) || !is_connected(x)) continue;
        out.add(x, Rational(1));
    }
    return out;
}

BInfinity<Obj> brace_binfinity(const Operad& op) {
    return {[op](const ObjWord& u, const ObjWord& v) {
                std::vector<OpElem> args;
                for (const auto& y : v) args.push_back(OpElem::single(y));
                return brace(op, OpElem::single(u[0]), args);
            },
            true};
}

BInf<Obj> binf_from_operad(const Operad& op) {
    return {[op](const ObjWord& u, const ObjWord& v) {
                std::vector<OpElem> args;
                for (const auto& y : v) args.push_back(OpElem::single(y));
                return binf_bracket(op, OpElem::single(u[0]), args);
            },
            true};
}

BInf<Obj> binf_from_theta(const Operad& op) {
    if (!has_as_com_morphism(op)) throw std::invalid_argument("theta brackets need qO, O or SG");
    auto cache = std::make_shared<std::map<std::pair<int, int>, OpElem>>();
    auto mtx = std::make_shared<std::mutex>();
    return {[op, cache, mtx](const ObjWord& u, const ObjWord& v) {
                const std::pair<int, int> kl{static_cast<int>(u.size()), static_cast<int>(v.size())};
                OpElem th;
                {
                    std::lock_guard<std::mutex> lock(*mtx);
                    auto it = cache->find(kl);
                    if (it == cache->end()) it = cache->emplace(kl, theta_image(op, kl.first, kl.second)).first;
                    th = it->second;
                }
                std::vector<OpElem> args;
                for (const auto& x : u) args.push_back(OpElem::single(x));
                for (const auto& y : v) args.push_back(OpElem::single(y));
                return full_compose(op, th, args);
            },
            false};
}

}  // namespace opforge
