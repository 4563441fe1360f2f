#include "opforge/operads.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <tuple>

namespace opforge {

struct OperadState {
    std::mutex mu;
    std::map<std::tuple<Obj, int, Obj>, OpElem> memo;
    std::map<int, std::vector<Obj>> bases;
};

namespace {

std::shared_ptr<OperadState> state_for(OperadName n, Mode m, int colors, bool bug) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, int, bool>, std::shared_ptr<OperadState>> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(static_cast<int>(n), static_cast<int>(m), colors, bug);
    auto& slot = registry[key];
    if (!slot) slot = std::make_shared<OperadState>();
    return slot;
}

OpElem compose_com(const Obj& p, const Obj& q) { return OpElem::single(com(p.n + q.n - 1)); }

OpElem compose_as(const Obj& p, int i, const Obj& q) {
    std::vector<int> w;
    for (int a : p.d) {
        if (a == i) {
            for (int b : q.d) w.push_back(shift_inner(b, i));
        } else {
            w.push_back(shift_outer(a, i, q.n));
        }
    }
    return OpElem::single(perm(w));
}

// Insertion of q at vertex i of p: the children of i are regrafted onto
// arbitrary vertices of q, and the root of q takes the place of i.
OpElem compose_prelie(const Obj& p, int i, const Obj& q) {
    const int m = p.n, n = q.n, N = m + n - 1;
    std::vector<int> base(N, 0);
    std::vector<int> orphans;  // new labels of the children of i
    for (int j = 1; j <= m; ++j) {
        if (j == i) continue;
        int pj = p.d[j - 1];
        int nj = shift_outer(j, i, n);
        if (pj == i) orphans.push_back(nj);
        else base[nj - 1] = pj == 0 ? 0 : shift_outer(pj, i, n);
    }
    const int pi = p.d[i - 1];
    for (int k = 1; k <= n; ++k) {
        int qk = q.d[k - 1];
        base[shift_inner(k, i) - 1] = qk == 0 ? (pi == 0 ? 0 : shift_outer(pi, i, n)) : shift_inner(qk, i);
    }
    OpElem out;
    std::vector<int> choice(orphans.size(), 1);
    for (;;) {
        std::vector<int> par = base;
        for (std::size_t c = 0; c < orphans.size(); ++c) par[orphans[c] - 1] = shift_inner(choice[c], i);
        Obj t;
        t.fam = Fam::Tree;
        t.n = N;
        t.d = std::move(par);
        out.add(t, Rational(1));
        std::size_t c = 0;
        while (c < choice.size() && choice[c] == n) choice[c++] = 1;
        if (c == choice.size()) break;
        ++choice[c];
    }
    return out;
}

OpElem compose_qo(const Obj& p, int i, const Obj& q) {
    const int m = p.n, n = q.n, N = m + n - 1;
    if (N > hard_maximum(Family::QuasiOrder))
        throw CapacityError("quasi-order composition above " + std::to_string(hard_maximum(Family::QuasiOrder)) + " points");
    const int b0 = i - 1, b1 = i + n - 2;  // block B, 0-based, inclusive
    auto bit = [N](std::uint64_t r, int a, int b) { return (r >> (a * N + b)) & 1; };
    std::uint64_t bmask = 0, bval = 0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::uint64_t one = std::uint64_t(1) << ((b0 + a) * N + (b0 + b));
            bmask |= one;
            if (q.d[a * n + b]) bval |= one;
        }
    auto slot = [&](int x) { return x < b0 ? x : (x > b1 ? x - n + 1 : b0); };
    OpElem out;
    for (std::uint64_t r : quasi_order_masks(N)) {
        if ((r & bmask) != bval) continue;
        bool below[8] = {}, above[8] = {};
        for (int x = 0; x < N; ++x)
            for (int y = b0; y <= b1; ++y) {
                if (bit(r, x, y)) below[x] = true;
                if (bit(r, y, x)) above[x] = true;
            }
        // B must be convex; a one-point block counts as convex so that the
        // single vertex is a two-sided unit.
        bool ok = true;
        for (int y = 0; y < N && ok && n > 1; ++y)
            if ((y < b0 || y > b1) && below[y] && above[y]) ok = false;
        for (int x = 0; x < N && ok; ++x)
            for (int y = 0; y < N && ok; ++y) {
                bool xin = x >= b0 && x <= b1, yin = y >= b0 && y <= b1;
                if ((xin && x != b0) || (yin && y != b0)) continue;
                bool rel;
                if (!xin && !yin) rel = bit(r, x, y) || (below[x] && above[y]);
                else if (!xin) rel = below[x];
                else if (!yin) rel = above[y];
                else rel = true;
                if (rel != (p.d[slot(x) * m + slot(y)] != 0)) ok = false;
            }
        if (!ok) continue;
        Obj x;
        x.fam = Fam::QO;
        x.n = N;
        x.d.resize(N * N);
        for (int k = 0; k < N * N; ++k) x.d[k] = static_cast<int>((r >> k) & 1);
        out.add(x, Rational(1));
    }
    return out;
}

// Convexity of B = [b0, b1] for the reachability order; one-point blocks
// are always accepted (see compose_qo).
bool reach_convex(int N, const std::vector<int>& adj, int b0, int b1) {
    if (b0 == b1) return true;
    std::vector<int> r = adj;
    for (int k = 0; k < N; ++k) r[k * N + k] = 1;
    for (int k = 0; k < N; ++k)
        for (int a = 0; a < N; ++a)
            if (r[a * N + k])
                for (int b = 0; b < N; ++b)
                    if (r[k * N + b]) r[a * N + b] = 1;
    for (int y = 0; y < N; ++y) {
        if (y >= b0 && y <= b1) continue;
        bool from = false, to = false;
        for (int v = b0; v <= b1; ++v) {
            if (r[v * N + y]) from = true;
            if (r[y * N + v]) to = true;
        }
        if (from && to) return false;
    }
    return true;
}

// Simple digraphs: every composite restricts to q on B and contracts to p
// (multiple edges merged). Edges between an outer vertex x and B are
// free subsets, non-empty exactly when p has the corresponding edge at i.
OpElem compose_sg(const Obj& p, int i, const Obj& q, bool convex) {
    const int m = p.n, n = q.n, N = m + n - 1;
    const int b0 = i - 1;
    std::vector<int> base(N * N, 0);
    for (int a = 1; a <= m; ++a)
        for (int b = 1; b <= m; ++b)
            if (a != i && b != i && p.d[(a - 1) * m + (b - 1)])
                base[(shift_outer(a, i, n) - 1) * N + (shift_outer(b, i, n) - 1)] = 1;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (q.d[a * n + b]) base[(b0 + a) * N + (b0 + b)] = 1;
    struct Slot { int x; bool out; };  // out: x -> B, otherwise B -> x
    std::vector<Slot> slots;
    for (int a = 1; a <= m; ++a) {
        if (a == i) continue;
        int x = shift_outer(a, i, n) - 1;
        if (p.d[(a - 1) * m + (i - 1)]) slots.push_back({x, true});
        if (p.d[(i - 1) * m + (a - 1)]) slots.push_back({x, false});
    }
    const unsigned full = (1u << n);
    std::vector<unsigned> pick(slots.size(), 1);
    OpElem out;
    for (;;) {
        std::vector<int> g = base;
        for (std::size_t s = 0; s < slots.size(); ++s)
            for (int k = 0; k < n; ++k)
                if ((pick[s] >> k) & 1) {
                    if (slots[s].out) g[slots[s].x * N + b0 + k] = 1;
                    else g[(b0 + k) * N + slots[s].x] = 1;
                }
        if (!convex || reach_convex(N, g, b0, b0 + n - 1)) {
            Obj x;
            x.fam = Fam::DG;
            x.n = N;
            x.d = std::move(g);
            out.add(x, Rational(1));
        }
        std::size_t s = 0;
        while (s < pick.size() && pick[s] == full - 1) pick[s++] = 1;
        if (s == pick.size()) break;
        ++pick[s];
    }
    return out;
}

}  // namespace

Operad::Operad(OperadName name, Mode mode, int colors, bool sign_bug)
    : name_(name), mode_(mode), colors_(colors), sign_bug_(sign_bug) {
    if (colors < 0) throw std::invalid_argument("negative color count");
    if (mode == Mode::Nabla && name != OperadName::SG && name != OperadName::NcSG)
        throw std::invalid_argument("the nabla composition exists only for SG and NcSG");
    state_ = state_for(name, mode, colors, sign_bug);
}

Fam Operad::family() const {
    switch (name_) {
        case OperadName::Com: return Fam::Com;
        case OperadName::As: return Fam::Perm;
        case OperadName::PreLie: return Fam::Tree;
        case OperadName::QO:
        case OperadName::O: return Fam::QO;
        case OperadName::SG:
        case OperadName::NcSG: return Fam::DG;
    }
    return Fam::Com;
}

std::string Operad::name() const {
    static const char* names[] = {"Com", "As", "PreLie", "qO", "O", "SG", "NcSG"};
    std::string s = names[static_cast<int>(name_)];
    if (mode_ == Mode::Nabla) s += "[nabla]";
    if (colors_ > 0) s += "(x)C" + std::to_string(colors_);
    return s;
}

OpElem Operad::unit() const {
    Obj u = single_vertex(family());
    if (!decorated()) return OpElem::single(u);
    OpElem e;
    for (int j = 1; j <= colors_; ++j) {
        Obj c = u;
        c.col = {j, j};
        e.add(c, Rational(1));
    }
    return e;
}

std::vector<Obj> Operad::basis(int n) const {
    {
        std::lock_guard<std::mutex> lock(state_->mu);
        auto it = state_->bases.find(n);
        if (it != state_->bases.end()) return it->second;
    }
    std::vector<Obj> plain;
    if (n >= 1) {
        switch (name_) {
            case OperadName::Com: plain = {com(n)}; break;
            case OperadName::As: plain = enumerate(Family::Permutation, n); break;
            case OperadName::PreLie: plain = enumerate(Family::LabelledTree, n); break;
            case OperadName::QO: plain = enumerate(Family::QuasiOrder, n); break;
            case OperadName::O: plain = enumerate(Family::Order, n); break;
            case OperadName::SG: plain = enumerate(Family::Digraph, n); break;
            case OperadName::NcSG: plain = enumerate(Family::AcyclicDigraph, n); break;
        }
    }
    std::vector<Obj> out;
    if (!decorated()) {
        out = plain;
    } else {
        for (const Obj& x : plain) {
            std::vector<int> c(n + 1, 1);
            for (;;) {
                Obj y = x;
                y.col = c;
                out.push_back(y);
                int k = 0;
                while (k <= n && c[k] == colors_) c[k++] = 1;
                if (k > n) break;
                ++c[k];
            }
        }
        std::sort(out.begin(), out.end());
    }
    std::lock_guard<std::mutex> lock(state_->mu);
    return state_->bases.emplace(n, out).first->second;
}

bool Operad::in_basis(const Obj& x) const {
    if (x.fam != family() || x.iso || x.n < 1) return false;
    if (decorated()) {
        if (!x.has_output()) return false;
        for (int c : x.col)
            if (c < 1 || c > colors_) return false;
    } else if (!x.col.empty()) {
        return false;
    }
    if (name_ == OperadName::O && !is_order(x)) return false;
    if (name_ == OperadName::NcSG && !is_acyclic(x)) return false;
    return true;
}

OpElem Operad::compose_plain(const Obj& p, int i, const Obj& q) const {
    switch (name_) {
        case OperadName::Com: return compose_com(p, q);
        case OperadName::As: return compose_as(p, i, q);
        case OperadName::PreLie: return compose_prelie(p, i, q);
        case OperadName::QO:
        case OperadName::O: return compose_qo(p, i, q);
        case OperadName::SG: return compose_sg(p, i, q, mode_ == Mode::Circ);
        case OperadName::NcSG: return compose_sg(p, i, q, true);
    }
    return {};
}

const OpElem& Operad::compose(const Obj& p, int i, const Obj& q) const {
    if (i < 1 || i > p.n) throw std::out_of_range("composition slot " + std::to_string(i) + " outside arity " + std::to_string(p.n));
    if (!in_basis(p) || !in_basis(q)) throw std::invalid_argument("operand is not a basis element of " + name());
    auto key = std::make_tuple(p, i, q);
    {
        std::lock_guard<std::mutex> lock(state_->mu);
        auto it = state_->memo.find(key);
        if (it != state_->memo.end()) return it->second;
    }
    OpElem r;
    if (!decorated() || p.col[i - 1] == q.output()) {
        Obj pp = p, qq = q;
        pp.col.clear();
        qq.col.clear();
        OpElem plain = compose_plain(pp, i, qq);
        if (!decorated()) {
            r = std::move(plain);
        } else {
            std::vector<int> c(p.col.begin(), p.col.begin() + (i - 1));
            c.insert(c.end(), q.col.begin(), q.col.begin() + q.n);
            c.insert(c.end(), p.col.begin() + i, p.col.begin() + p.n);
            c.push_back(p.output());
            for (const auto& [x, coef] : plain) {
                Obj y = x;
                y.col = c;
                r.add(y, coef);
            }
        }
        if (sign_bug_ && !r.is_zero()) {
            Obj first = r.begin()->first;
            Rational c0 = r.begin()->second;
            r.add(first, Rational(-2) * c0);
        }
    }
    std::lock_guard<std::mutex> lock(state_->mu);
    return state_->memo.emplace(key, std::move(r)).first->second;
}

Obj Operad::act(const Obj& x, const std::vector<int>& sigma) const { return opforge::act(x, sigma); }

Operad parse_operad(const std::string& name, const std::string& mode, int colors) {
    std::string s;
    for (char c : name) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    Mode md;
    if (mode == "circ" || mode.empty()) md = Mode::Circ;
    else if (mode == "nabla") md = Mode::Nabla;
    else throw std::invalid_argument("unknown composition mode \"" + mode + "\"");
    OperadName on;
    if (s == "com") on = OperadName::Com;
    else if (s == "as") on = OperadName::As;
    else if (s == "prelie") on = OperadName::PreLie;
    else if (s == "qo") on = OperadName::QO;
    else if (s == "o") on = OperadName::O;
    else if (s == "sg") on = OperadName::SG;
    else if (s == "ncsg") on = OperadName::NcSG;
    else throw std::invalid_argument("unknown operad \"" + name + "\"");
    return Operad(on, md, colors);
}

int arity_of(const OpElem& e) {
    int a = 0;
    for (const auto& [k, c] : e) {
        if (a && k.n != a) throw std::invalid_argument("element mixes arities");
        a = k.n;
    }
    return a;
}

OpElem partial_compose(const Operad& op, const OpElem& p, int i, const OpElem& q) {
    OpElem out;
    for (const auto& [x, a] : p)
        for (const auto& [y, b] : q) out.add(op.compose(x, i, y), a * b);
    return out;
}

OpElem full_compose(const Operad& op, const OpElem& p, const std::vector<OpElem>& qs) {
    if (p.is_zero()) return {};
    const int n = arity_of(p);
    if (static_cast<int>(qs.size()) != n)
        throw std::invalid_argument("full composition needs " + std::to_string(n) + " operands");
    OpElem r = p;
    for (int i = n; i >= 1 && !r.is_zero(); --i) r = partial_compose(op, r, i, qs[i - 1]);
    return r;
}

OpElem multi_compose(const Operad& op, const OpElem& p, const std::vector<int>& slots,
                     const std::vector<OpElem>& qs) {
    if (slots.size() != qs.size()) throw std::invalid_argument("slot and operand counts differ");
    if (p.is_zero()) return {};
    const int n = arity_of(p);
    std::vector<OpElem> full(n, op.unit());
    int prev = 0;
    for (std::size_t k = 0; k < slots.size(); ++k) {
        if (slots[k] <= prev || slots[k] > n) throw std::invalid_argument("slots must increase within the arity");
        prev = slots[k];
        full[slots[k] - 1] = qs[k];
    }
    return full_compose(op, p, full);
}

OpElem sym_action(const Operad& op, const OpElem& p, const std::vector<int>& sigma) {
    OpElem out;
    for (const auto& [x, c] : p) out.add(op.act(x, sigma), c);
    return out;
}

Obj discrete_qo(int k) {
    std::vector<int> m(k * k, 0);
    return qo_from_matrix(k, m);
}

Obj chain_qo(int k) {
    std::vector<int> m(k * k, 0);
    for (int a = 0; a < k; ++a)
        for (int b = a; b < k; ++b) m[a * k + b] = 1;
    return qo_from_matrix(k, m);
}

}  // namespace opforge
