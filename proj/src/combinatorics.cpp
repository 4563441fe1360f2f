#include "opforge/combinatorics.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

namespace opforge {

// ------------------------------------------------------------------ guards

int guard_limit() {
    int g = 8;
    if (const char* env = std::getenv("OPFORGE_GUARD")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) g = static_cast<int>(std::min<long>(v, 64));
    }
    return g;
}

int hard_maximum(Family f) {
    switch (f) {
        case Family::Permutation: return 8;
        case Family::LabelledTree: return 7;
        case Family::QuasiOrder: return 6;
        case Family::Order: return 6;
        case Family::Digraph: return 4;
        case Family::AcyclicDigraph: return 4;
    }
    return 0;
}

void check_guard(Family f, int n) {
    const int lim = std::min(guard_limit(), hard_maximum(f));
    if (n < 0) throw std::invalid_argument("negative size");
    if (n > lim)
        throw CapacityError("size " + std::to_string(n) + " exceeds the enumeration guard " +
                            std::to_string(lim));
}

// ----------------------------------------------------------------- objects

Obj com(int n) {
    if (n < 1) throw std::invalid_argument("e_n needs n >= 1");
    Obj x;
    x.fam = Fam::Com;
    x.n = n;
    return x;
}

Obj perm(std::vector<int> word) {
    const int n = static_cast<int>(word.size());
    std::vector<int> seen(n + 1, 0);
    for (int v : word) {
        if (v < 1 || v > n || seen[v]) throw std::invalid_argument("not a permutation");
        seen[v] = 1;
    }
    Obj x;
    x.fam = Fam::Perm;
    x.n = n;
    x.d = std::move(word);
    return x;
}

Obj tree_from_parents(std::vector<int> parent) {
    const int n = static_cast<int>(parent.size());
    int roots = 0;
    for (int p : parent) {
        if (p < 0 || p > n) throw std::invalid_argument("bad parent label");
        if (p == 0) ++roots;
    }
    if (n == 0 || roots != 1) throw std::invalid_argument("a rooted tree needs exactly one root");
    for (int v = 1; v <= n; ++v) {
        int u = v, steps = 0;
        while (parent[u - 1] != 0) {
            u = parent[u - 1];
            if (++steps > n) throw std::invalid_argument("parent array has a cycle");
        }
    }
    Obj x;
    x.fam = Fam::Tree;
    x.n = n;
    x.d = std::move(parent);
    return x;
}

Obj qo_from_matrix(int n, const std::vector<int>& rel) {
    if (static_cast<int>(rel.size()) != n * n) throw std::invalid_argument("matrix size");
    Obj x;
    x.fam = Fam::QO;
    x.n = n;
    x.d = rel;
    for (int i = 0; i < n; ++i) x.d[i * n + i] = 1;
    // transitive closure
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (x.d[i * n + k])
                for (int j = 0; j < n; ++j)
                    if (x.d[k * n + j]) x.d[i * n + j] = 1;
    return x;
}

Obj dg_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    Obj x;
    x.fam = Fam::DG;
    x.n = n;
    x.d.assign(n * n, 0);
    for (auto [a, b] : edges) {
        if (a < 1 || b < 1 || a > n || b > n || a == b) throw std::invalid_argument("bad edge");
        x.d[(a - 1) * n + (b - 1)] = 1;
    }
    return x;
}

Obj var(std::vector<int> alpha) {
    Obj x;
    x.fam = Fam::Var;
    x.n = 0;
    for (int a : alpha) {
        if (a < 0) throw std::invalid_argument("negative exponent");
        x.n += a;
    }
    x.d = std::move(alpha);
    return x;
}

Obj single_vertex(Fam f) {
    switch (f) {
        case Fam::Com: return com(1);
        case Fam::Perm: return perm({1});
        case Fam::Tree: return tree_from_parents({0});
        case Fam::QO: return qo_from_matrix(1, {1});
        case Fam::DG: return dg_from_edges(1, {});
        case Fam::Var: break;
    }
    throw std::invalid_argument("no single-vertex object in this family");
}

// ------------------------------------------------------------ permutations

std::vector<int> perm_compose(const std::vector<int>& s, const std::vector<int>& t) {
    if (s.size() != t.size()) throw std::invalid_argument("permutation size mismatch");
    std::vector<int> r(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) r[k] = s[t[k] - 1];
    return r;
}

std::vector<int> perm_inverse(const std::vector<int>& s) {
    std::vector<int> r(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) r[s[k] - 1] = static_cast<int>(k) + 1;
    return r;
}

std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<int> w(n);
    std::iota(w.begin(), w.end(), 1);
    std::vector<std::vector<int>> out;
    do out.push_back(w);
    while (std::next_permutation(w.begin(), w.end()));
    return out;
}

Obj standardize(const std::vector<int>& w) {
    std::vector<int> sorted = w;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("standardize needs distinct letters");
    std::vector<int> r(w.size());
    for (std::size_t k = 0; k < w.size(); ++k)
        r[k] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), w[k]) - sorted.begin()) + 1;
    return perm(r);
}

// --------------------------------------------------------------- relabeling

static std::vector<int> move_colors(const Obj& x, const std::vector<int>& phi) {
    if (x.col.empty()) return {};
    std::vector<int> c(x.col.size());
    for (int v = 1; v <= x.n; ++v) c[phi[v - 1] - 1] = x.col[v - 1];
    if (x.has_output()) c.back() = x.col.back();
    return c;
}

Obj relabel(const Obj& x, const std::vector<int>& phi) {
    if (static_cast<int>(phi.size()) != x.n) throw std::invalid_argument("relabel size mismatch");
    {
        std::vector<int> seen(x.n + 1, 0);
        for (int v : phi) {
            if (v < 1 || v > x.n || seen[v]) throw std::invalid_argument("relabel map is not a bijection");
            seen[v] = 1;
        }
    }
    Obj y = x;
    y.iso = false;
    y.col = move_colors(x, phi);
    const int n = x.n;
    switch (x.fam) {
        case Fam::Com:
        case Fam::Var: break;
        case Fam::Perm:
            for (int k = 0; k < n; ++k) y.d[k] = phi[x.d[k] - 1];
            break;
        case Fam::Tree:
            for (int v = 1; v <= n; ++v) {
                int p = x.d[v - 1];
                y.d[phi[v - 1] - 1] = p == 0 ? 0 : phi[p - 1];
            }
            break;
        case Fam::QO:
        case Fam::DG:
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) y.d[(phi[a] - 1) * n + (phi[b] - 1)] = x.d[a * n + b];
            break;
    }
    return y;
}

Obj act(const Obj& x, const std::vector<int>& sigma) {
    if (static_cast<int>(sigma.size()) != x.n) throw std::invalid_argument("arity mismatch in action");
    if (x.fam == Fam::Perm) {
        Obj y = x;
        y.iso = false;
        y.d = perm_compose(x.d, sigma);
        return y;
    }
    return relabel(x, perm_inverse(sigma));
}

// ------------------------------------------------------------- quasi-orders

const std::vector<std::uint64_t>& quasi_order_masks(int n) {
    static std::mutex mu;
    static std::map<int, std::vector<std::uint64_t>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    if (n > 8) throw CapacityError("quasi-orders above 8 points are not representable");
    std::vector<std::uint64_t> cur{0};
    for (int k = 1; k <= n; ++k) {
        const int m = k - 1;
        std::vector<std::uint64_t> next;
        for (std::uint64_t r : cur) {
            auto le = [&](int a, int b) { return (r >> (a * m + b)) & 1; };
            // down-closed candidate sets D and up-closed sets U
            std::vector<unsigned> downs, ups;
            for (unsigned s = 0; s < (1u << m); ++s) {
                bool down = true, up = true;
                for (int y = 0; y < m && (down || up); ++y) {
                    if (!((s >> y) & 1)) continue;
                    for (int x = 0; x < m; ++x) {
                        if (le(x, y) && !((s >> x) & 1)) down = false;
                        if (le(y, x) && !((s >> x) & 1)) up = false;
                    }
                }
                if (down) downs.push_back(s);
                if (up) ups.push_back(s);
            }
            for (unsigned D : downs)
                for (unsigned U : ups) {
                    bool ok = true;
                    for (int a = 0; a < m && ok; ++a)
                        if ((D >> a) & 1)
                            for (int b = 0; b < m; ++b)
                                if (((U >> b) & 1) && !le(a, b)) { ok = false; break; }
                    if (!ok) continue;
                    std::uint64_t nr = 0;
                    for (int a = 0; a < m; ++a)
                        for (int b = 0; b < m; ++b)
                            if (le(a, b)) nr |= std::uint64_t(1) << (a * k + b);
                    for (int a = 0; a < m; ++a) {
                        if ((D >> a) & 1) nr |= std::uint64_t(1) << (a * k + m);
                        if ((U >> a) & 1) nr |= std::uint64_t(1) << (m * k + a);
                    }
                    nr |= std::uint64_t(1) << (m * k + m);
                    next.push_back(nr);
                }
        }
        cur = std::move(next);
    }
    return cache.emplace(n, std::move(cur)).first->second;
}

static Obj qo_from_mask(int n, std::uint64_t m) {
    Obj x;
    x.fam = Fam::QO;
    x.n = n;
    x.d.assign(n * n, 0);
    for (int i = 0; i < n * n; ++i) x.d[i] = static_cast<int>((m >> i) & 1);
    return x;
}

bool is_order(const Obj& q) {
    for (int a = 0; a < q.n; ++a)
        for (int b = a + 1; b < q.n; ++b)
            if (q.d[a * q.n + b] && q.d[b * q.n + a]) return false;
    return true;
}

static std::vector<int> reach_matrix(const Obj& g) {
    const int n = g.n;
    std::vector<int> r(n * n, 0);
    if (g.fam == Fam::QO) return g.d;
    if (g.fam == Fam::Tree) {
        for (int v = 1; v <= n; ++v)
            if (g.d[v - 1]) r[(g.d[v - 1] - 1) * n + (v - 1)] = 1;
    } else if (g.fam == Fam::DG) {
        r = g.d;
    }
    for (int i = 0; i < n; ++i) r[i * n + i] = 1;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (r[i * n + k])
                for (int j = 0; j < n; ++j)
                    if (r[k * n + j]) r[i * n + j] = 1;
    return r;
}

Obj reachability_order(const Obj& g) {
    Obj q;
    q.fam = Fam::QO;
    q.n = g.n;
    q.d = reach_matrix(g);
    q.col = g.col;
    return q;
}

bool is_acyclic(const Obj& g) { return is_order(reachability_order(g)); }

// ------------------------------------------------------------------- trees

TreeView tree_view(const Obj& t) {
    TreeView v;
    v.n = t.n;
    v.children.assign(t.n + 1, {});
    for (int u = 1; u <= t.n; ++u) {
        int p = t.d[u - 1];
        if (p == 0) v.root = u;
        else v.children[p].push_back(u);
    }
    return v;
}

static std::string code_rec(const Obj& t, const TreeView& v, int u) {
    std::string c = std::to_string(t.col.empty() ? 1 : t.col[u - 1]);
    if (v.children[u].empty()) return c;
    std::vector<std::string> kids;
    for (int w : v.children[u]) kids.push_back(code_rec(t, v, w));
    std::sort(kids.begin(), kids.end());
    c += '[';
    for (std::size_t i = 0; i < kids.size(); ++i) c += (i ? "," : "") + kids[i];
    return c + ']';
}

std::string tree_code(const Obj& t) {
    TreeView v = tree_view(t);
    return code_rec(t, v, v.root);
}

static std::string text_rec(const TreeView& v, int u) {
    std::string c = std::to_string(u);
    if (v.children[u].empty()) return c;
    std::vector<std::string> kids;
    for (int w : v.children[u]) kids.push_back(text_rec(v, w));
    std::sort(kids.begin(), kids.end());
    c += '[';
    for (std::size_t i = 0; i < kids.size(); ++i) c += (i ? "," : "") + kids[i];
    return c + ']';
}

std::string tree_text(const Obj& t) {
    TreeView v = tree_view(t);
    return text_rec(v, v.root);
}

namespace {
// Parser shared by labelled text and decorated codes: label[child,child].
struct TreeParser {
    const std::string& s;
    std::size_t i = 0;
    std::vector<int> labels;   // in preorder
    std::vector<int> parents;  // preorder index of parent, -1 for root

    explicit TreeParser(const std::string& src) : s(src) {}

    int number() {
        std::size_t st = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (st == i) throw std::invalid_argument("expected a label at position " + std::to_string(st) + " in \"" + s + "\"");
        return std::stoi(s.substr(st, i - st));
    }
    void node(int parent) {
        int me = static_cast<int>(labels.size());
        labels.push_back(number());
        parents.push_back(parent);
        if (i < s.size() && s[i] == '[') {
            ++i;
            for (;;) {
                node(me);
                if (i < s.size() && s[i] == ',') { ++i; continue; }
                if (i < s.size() && s[i] == ']') { ++i; break; }
                throw std::invalid_argument("expected ',' or ']' in \"" + s + "\"");
            }
        }
    }
    void run() {
        node(-1);
        if (i != s.size()) throw std::invalid_argument("trailing characters in \"" + s + "\"");
    }
};
}  // namespace

Obj parse_tree_text(const std::string& s) {
    TreeParser p{s};
    p.run();
    const int n = static_cast<int>(p.labels.size());
    std::vector<int> parent(n, -1);
    for (int k = 0; k < n; ++k) {
        int lab = p.labels[k];
        if (lab < 1 || lab > n || parent[lab - 1] != -1) throw std::invalid_argument("labels must be 1..n once each");
        parent[lab - 1] = p.parents[k] < 0 ? 0 : p.labels[p.parents[k]];
    }
    return tree_from_parents(parent);
}

Obj parse_tree_code(const std::string& s) {
    TreeParser p{s};
    p.run();
    const int n = static_cast<int>(p.labels.size());
    std::vector<int> parent(n);
    for (int k = 0; k < n; ++k) parent[k] = p.parents[k] < 0 ? 0 : p.parents[k] + 1;
    Obj t = tree_from_parents(parent);
    t.col = p.labels;
    for (int c : t.col)
        if (c < 1) throw std::invalid_argument("colors are positive");
    return t;
}

Obj tree_restrict(const Obj& t, const std::vector<int>& vertices) {
    std::vector<int> I = vertices;
    std::sort(I.begin(), I.end());
    std::vector<int> pos(t.n + 1, 0);
    for (std::size_t k = 0; k < I.size(); ++k) pos[I[k]] = static_cast<int>(k) + 1;
    std::vector<int> parent(I.size());
    int roots = 0;
    for (std::size_t k = 0; k < I.size(); ++k) {
        int p = t.d[I[k] - 1];
        parent[k] = (p && pos[p]) ? pos[p] : 0;
        if (!parent[k]) ++roots;
    }
    if (roots != 1) throw std::invalid_argument("restriction of a tree to a disconnected set");
    Obj r = tree_from_parents(parent);
    if (!t.col.empty())
        for (int v : I) r.col.push_back(t.col[v - 1]);
    return r;
}

// ---------------------------------------------------------------- orbits

namespace {
std::mutex canon_mu;
std::map<Obj, OrbitClass>& canon_cache() {
    static std::map<Obj, OrbitClass> c;
    return c;
}

long long tree_automorphisms(const Obj& t, const TreeView& v, int u, std::string* code_out) {
    long long a = 1;
    std::vector<std::string> kids;
    for (int w : v.children[u]) {
        std::string c;
        a *= tree_automorphisms(t, v, w, &c);
        kids.push_back(c);
    }
    std::sort(kids.begin(), kids.end());
    for (std::size_t i = 0; i < kids.size();) {
        std::size_t j = i;
        while (j < kids.size() && kids[j] == kids[i]) ++j;
        for (std::size_t f = 2; f <= j - i; ++f) a *= static_cast<long long>(f);
        i = j;
    }
    if (code_out) {
        std::string c = std::to_string(t.col.empty() ? 1 : t.col[u - 1]);
        if (!kids.empty()) {
            c += '[';
            for (std::size_t i = 0; i < kids.size(); ++i) c += (i ? "," : "") + kids[i];
            c += ']';
        }
        *code_out = c;
    }
    return a;
}

OrbitClass compute_orbit(const Obj& x) {
    OrbitClass oc;
    if (x.fam == Fam::Tree) {
        TreeView v = tree_view(x);
        std::string code;
        oc.s = tree_automorphisms(x, v, v.root, &code);
        Obj rep = parse_tree_code(code);
        if (x.col.empty()) rep.col.clear();
        else if (x.has_output()) rep.col.push_back(x.col.back());
        rep.iso = true;
        oc.rep = rep;
        return oc;
    }
    if (x.fam == Fam::Var) {
        oc.rep = x;
        oc.rep.iso = true;
        oc.s = 1;
        return oc;
    }
    if (x.fam == Fam::Com) {
        // e_n decorated by a multiset of input colors
        Obj rep = x;
        long long s = 1;
        if (!x.col.empty()) {
            std::sort(rep.col.begin(), rep.col.begin() + x.n);
            for (int i = 0; i < x.n;) {
                int j = i;
                while (j < x.n && rep.col[j] == rep.col[i]) ++j;
                for (int f = 2; f <= j - i; ++f) s *= f;
                i = j;
            }
        } else {
            for (int f = 2; f <= x.n; ++f) s *= f;
        }
        rep.iso = true;
        oc.rep = rep;
        oc.s = s;
        return oc;
    }
    // Permutations, quasi-orders, digraphs: minimum over all relabelings.
    if (x.n > 8) throw CapacityError("orbit computation above 8 points");
    Obj best;
    bool have = false;
    long long stab = 0;
    Obj plain = x;
    plain.iso = false;
    for (const auto& s : all_permutations(x.n)) {
        Obj y = relabel(plain, s);
        if (y == plain) ++stab;
        if (!have || y < best) { best = y; have = true; }
    }
    best.iso = true;
    oc.rep = best;
    oc.s = stab;
    return oc;
}
}  // namespace

OrbitClass orbit_canonical(const Obj& x) {
    Obj key = x;
    key.iso = false;
    {
        std::lock_guard<std::mutex> lock(canon_mu);
        auto it = canon_cache().find(key);
        if (it != canon_cache().end()) return it->second;
    }
    OrbitClass oc = compute_orbit(key);
    std::lock_guard<std::mutex> lock(canon_mu);
    return canon_cache().emplace(key, oc).first->second;
}

Obj canonical(const Obj& x) { return orbit_canonical(x).rep; }
long long symmetry_order(const Obj& x) { return orbit_canonical(x).s; }

long long orbit_size(const Obj& x) {
    long long f = 1;
    for (int i = 2; i <= x.n; ++i) f *= i;
    return f / symmetry_order(x);
}

// ------------------------------------------------------------- enumeration

static std::vector<Obj> labelled_trees(int n) {
    std::vector<Obj> out;
    if (n == 1) {
        out.push_back(tree_from_parents({0}));
        return out;
    }
    // Pruefer sequences of length n-2 give the unrooted trees; every vertex can be the root.
    const int len = n - 2;
    std::vector<int> seq(len, 1);
    for (;;) {
        std::vector<int> degree(n + 1, 1);
        for (int a : seq) ++degree[a];
        std::vector<std::vector<int>> adj(n + 1);
        std::vector<int> deg = degree;
        for (int a : seq) {
            int leaf = 1;
            while (deg[leaf] != 1) ++leaf;
            adj[leaf].push_back(a);
            adj[a].push_back(leaf);
            --deg[leaf];
            --deg[a];
        }
        int u = 0, w = 0;
        for (int v = 1; v <= n; ++v)
            if (deg[v] == 1) (u ? w : u) = v;
        adj[u].push_back(w);
        adj[w].push_back(u);
        for (int root = 1; root <= n; ++root) {
            std::vector<int> parent(n, -1);
            parent[root - 1] = 0;
            std::vector<int> stack{root};
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                for (int y : adj[x])
                    if (parent[y - 1] == -1) {
                        parent[y - 1] = x;
                        stack.push_back(y);
                    }
            }
            Obj t;
            t.fam = Fam::Tree;
            t.n = n;
            t.d = parent;
            out.push_back(std::move(t));
        }
        int k = len - 1;
        while (k >= 0 && seq[k] == n) seq[k--] = 1;
        if (k < 0) break;
        ++seq[k];
    }
    return out;
}

std::vector<Obj> enumerate(Family f, int n) {
    check_guard(f, n);
    std::vector<Obj> out;
    if (n == 0) return out;
    switch (f) {
        case Family::Permutation:
            for (auto& w : all_permutations(n)) out.push_back(perm(w));
            break;
        case Family::LabelledTree:
            out = labelled_trees(n);
            break;
        case Family::QuasiOrder:
        case Family::Order:
            for (auto m : quasi_order_masks(n)) {
                Obj q = qo_from_mask(n, m);
                if (f == Family::QuasiOrder || is_order(q)) out.push_back(std::move(q));
            }
            break;
        case Family::Digraph:
        case Family::AcyclicDigraph: {
            std::vector<std::pair<int, int>> slots;
            for (int a = 1; a <= n; ++a)
                for (int b = 1; b <= n; ++b)
                    if (a != b) slots.push_back({a, b});
            for (std::uint64_t m = 0; m < (std::uint64_t(1) << slots.size()); ++m) {
                std::vector<std::pair<int, int>> e;
                for (std::size_t k = 0; k < slots.size(); ++k)
                    if ((m >> k) & 1) e.push_back(slots[k]);
                Obj g = dg_from_edges(n, e);
                if (f == Family::Digraph || is_acyclic(g)) out.push_back(std::move(g));
            }
            break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t count(Family f, int n) { return enumerate(f, n).size(); }

// ---------------------------------------------- restriction and contraction

static std::vector<int> sorted_subset(const Obj& x, const std::vector<int>& I) {
    if (I.empty()) throw std::invalid_argument("vertex subset must be non-empty");
    std::vector<int> s = I;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (int v : s)
        if (v < 1 || v > x.n) throw std::invalid_argument("vertex outside the ground set");
    return s;
}

Labelled restrict_to(const Obj& x, const std::vector<int>& Iin) {
    std::vector<int> I = sorted_subset(x, Iin);
    Labelled r;
    r.labels = I;
    const int k = static_cast<int>(I.size());
    if (x.fam == Fam::Tree) {
        r.obj = tree_restrict(x, I);
        return r;
    }
    if (x.fam != Fam::QO && x.fam != Fam::DG) throw std::invalid_argument("restriction needs a quasi-order, digraph or tree");
    r.obj.fam = x.fam;
    r.obj.n = k;
    r.obj.d.assign(k * k, 0);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) r.obj.d[a * k + b] = x.d[(I[a] - 1) * x.n + (I[b] - 1)];
    if (!x.col.empty())
        for (int v : I) r.obj.col.push_back(x.col[v - 1]);
    return r;
}

Labelled contract(const Obj& x, const std::vector<int>& Iin) {
    std::vector<int> I = sorted_subset(x, Iin);
    const int n = x.n;
    std::vector<int> inI(n + 1, 0);
    for (int v : I) inI[v] = 1;
    // new vertex list: outside vertices in order, merged vertex at the slot of min(I)
    Labelled r;
    for (int v = 1; v <= n; ++v) {
        if (v == I.front()) r.labels.push_back(0);
        else if (!inI[v]) r.labels.push_back(v);
    }
    const int k = static_cast<int>(r.labels.size());
    std::vector<int> newpos(n + 1, 0);
    for (int p = 0; p < k; ++p)
        if (r.labels[p]) newpos[r.labels[p]] = p + 1;
    const int merged = static_cast<int>(std::find(r.labels.begin(), r.labels.end(), 0) - r.labels.begin()) + 1;
    for (int v : I) newpos[v] = merged;

    if (x.fam == Fam::Tree) {
        // contracting a connected vertex set of a tree
        std::vector<int> parent(k, 0);
        for (int v = 1; v <= n; ++v) {
            int p = x.d[v - 1];
            if (inI[v]) {
                if (p && !inI[p]) parent[merged - 1] = newpos[p];
            } else {
                parent[newpos[v] - 1] = p ? newpos[p] : 0;
            }
        }
        r.obj = tree_from_parents(parent);
        return r;
    }
    if (x.fam != Fam::QO && x.fam != Fam::DG) throw std::invalid_argument("contraction needs a quasi-order, digraph or tree");
    r.obj.fam = x.fam;
    r.obj.n = k;
    r.obj.d.assign(k * k, 0);
    auto R = [&](int a, int b) { return x.d[(a - 1) * n + (b - 1)] != 0; };
    if (x.fam == Fam::QO) {
        bool below_I[64] = {}, above_I[64] = {};
        for (int v = 1; v <= n; ++v)
            for (int w : I) {
                if (R(v, w)) below_I[v] = true;  // v <= some element of I
                if (R(w, v)) above_I[v] = true;  // some element of I <= v
            }
        for (int p = 1; p <= k; ++p)
            for (int q = 1; q <= k; ++q) {
                int a = r.labels[p - 1], b = r.labels[q - 1];
                bool rel;
                if (a && b) rel = R(a, b) || (below_I[a] && above_I[b]);
                else if (a && !b) rel = below_I[a];
                else if (!a && b) rel = above_I[b];
                else rel = true;
                r.obj.d[(p - 1) * k + (q - 1)] = rel;
            }
    } else {
        for (int a = 1; a <= n; ++a)
            for (int b = 1; b <= n; ++b) {
                if (!R(a, b) || (inI[a] && inI[b])) continue;
                r.obj.d[(newpos[a] - 1) * k + (newpos[b] - 1)] = 1;
            }
    }
    if (!x.col.empty()) {
        r.obj.col.assign(k, 0);
        for (int p = 1; p <= k; ++p)
            if (r.labels[p - 1]) r.obj.col[p - 1] = x.col[r.labels[p - 1] - 1];
    }
    return r;
}

bool is_convex(const Obj& x, const std::vector<int>& Iin) {
    std::vector<int> I = sorted_subset(x, Iin);
    std::vector<int> r = reach_matrix(x);
    const int n = x.n;
    std::vector<int> inI(n + 1, 0);
    for (int v : I) inI[v] = 1;
    for (int y = 1; y <= n; ++y) {
        if (inI[y]) continue;
        bool from = false, to = false;
        for (int v : I) {
            if (r[(v - 1) * n + (y - 1)]) from = true;
            if (r[(y - 1) * n + (v - 1)]) to = true;
        }
        if (from && to) return false;
    }
    return true;
}

bool is_ideal(const Obj& x, const std::vector<int>& Iin) {
    std::vector<int> I = sorted_subset(x, Iin);
    std::vector<int> r = reach_matrix(x);
    const int n = x.n;
    std::vector<int> inI(n + 1, 0);
    for (int v : I) inI[v] = 1;
    for (int v : I)
        for (int y = 1; y <= n; ++y)
            if (r[(v - 1) * n + (y - 1)] && !inI[y]) return false;
    return true;
}

bool is_connected(const Obj& x) {
    if (x.fam == Fam::Com || x.fam == Fam::Perm || x.fam == Fam::Var || x.fam == Fam::Tree) return true;
    const int n = x.n;
    if (n == 0) return true;
    std::vector<int> seen(n, 0), stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        int a = stack.back();
        stack.pop_back();
        for (int b = 0; b < n; ++b)
            if (!seen[b] && (x.d[a * n + b] || x.d[b * n + a])) {
                seen[b] = 1;
                stack.push_back(b);
            }
    }
    return std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; });
}

// --------------------------------------------------------------- text forms

static std::string qo_text(const Obj& q) {
    const int n = q.n;
    auto le = [&](int a, int b) { return q.d[a * n + b] != 0; };
    // equivalence classes
    std::vector<int> cls(n, -1);
    std::vector<std::vector<int>> classes;
    for (int a = 0; a < n; ++a) {
        if (cls[a] >= 0) continue;
        cls[a] = static_cast<int>(classes.size());
        classes.push_back({a});
        for (int b = a + 1; b < n; ++b)
            if (le(a, b) && le(b, a)) {
                cls[b] = cls[a];
                classes.back().push_back(b);
            }
    }
    struct Rel { int a, b; char t; };
    std::vector<Rel> rels;
    for (const auto& c : classes)
        for (std::size_t i = 0; i + 1 < c.size(); ++i) rels.push_back({c[i] + 1, c[i + 1] + 1, '~'});
    const int m = static_cast<int>(classes.size());
    for (int X = 0; X < m; ++X)
        for (int Y = 0; Y < m; ++Y) {
            if (X == Y) continue;
            int x = classes[X][0], y = classes[Y][0];
            if (!le(x, y)) continue;
            bool cover = true;
            for (int Z = 0; Z < m && cover; ++Z) {
                if (Z == X || Z == Y) continue;
                int z = classes[Z][0];
                if (le(x, z) && le(z, y)) cover = false;
            }
            if (cover) rels.push_back({x + 1, y + 1, '<'});
        }
    std::sort(rels.begin(), rels.end(), [](const Rel& l, const Rel& r) {
        return std::tie(l.a, l.b, l.t) < std::tie(r.a, r.b, r.t);
    });
    std::string s = "qo{" + std::to_string(n);
    for (std::size_t i = 0; i < rels.size(); ++i)
        s += (i ? ", " : "; ") + std::to_string(rels[i].a) + rels[i].t + std::to_string(rels[i].b);
    return s + "}";
}

static std::string dg_text(const Obj& g) {
    const int n = g.n;
    std::string s = "dg{" + std::to_string(n);
    bool first = true;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (g.d[a * n + b]) {
                s += (first ? "; " : ", ") + std::to_string(a + 1) + "->" + std::to_string(b + 1);
                first = false;
            }
    return s + "}";
}

static std::string color_suffix(const Obj& x) {
    if (x.col.empty()) return "";
    std::string s = "@(";
    for (int v = 0; v < x.n; ++v) s += (v ? "," : "") + std::to_string(x.col[v]);
    if (x.has_output()) s += ";" + std::to_string(x.col.back());
    return s + ")";
}

std::string notation(const Obj& x) {
    switch (x.fam) {
        case Fam::Com: return "e" + std::to_string(x.n) + color_suffix(x);
        case Fam::Perm: {
            std::string s;
            for (int v : x.d) s += std::to_string(v);
            return s + color_suffix(x);
        }
        case Fam::Tree:
            if (x.iso) {
                std::string c = tree_code(x);
                return x.has_output() ? "(" + c + "," + std::to_string(x.col.back()) + ")" : c;
            }
            return tree_text(x) + color_suffix(x);
        case Fam::QO: return qo_text(x) + color_suffix(x);
        case Fam::DG: return dg_text(x) + color_suffix(x);
        case Fam::Var: {
            std::string s = "x[";
            for (std::size_t i = 0; i < x.d.size(); ++i) s += (i ? "," : "") + std::to_string(x.d[i]);
            return s + "]";
        }
    }
    return "?";
}

std::string literal(const Obj& x) {
    switch (x.fam) {
        case Fam::Perm:
            if (x.iso) break;
            return "perm[" + notation(Obj{x.fam, x.n, x.d, {}, false}) + "]" + color_suffix(x);
        case Fam::Tree:
            if (x.iso && !x.col.empty()) {
                std::string c = tree_code(x);
                if (x.has_output()) return "dpair[" + c + ";" + std::to_string(x.col.back()) + "]";
                return "dtree[" + c + "]";
            }
            if (x.iso) return "rtree[" + tree_code(x) + "]";
            return "tree[" + tree_text(x) + "]" + color_suffix(x);
        default: break;
    }
    if (x.iso) {
        Obj rep = x;
        rep.iso = false;
        return "cls(" + literal(rep) + ")";
    }
    return notation(x);
}

std::string literal(const ObjWord& w) {
    if (w.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "·" : "") + literal(w[i]);
    return s;
}

std::string notation(const ObjWord& w) {
    if (w.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "·" : "") + notation(w[i]);
    return s;
}

// ----------------------------------------------------------- text parsing

static std::string strip(const std::string& s) {
    std::string r;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) r += c;
    return r;
}

namespace {
struct RelText {
    int n = 0;
    std::vector<std::pair<std::pair<int, int>, std::string>> rels;
};

RelText parse_relations(const std::string& src, const std::string& head,
                        const std::vector<std::string>& ops) {
    std::string s = strip(src);
    if (s.rfind(head + "{", 0) != 0 || s.back() != '}') throw std::invalid_argument("expected " + head + "{...}");
    std::string body = s.substr(head.size() + 1, s.size() - head.size() - 2);
    RelText r;
    std::size_t semi = body.find(';');
    std::string ns = body.substr(0, semi);
    if (ns.empty() || !std::all_of(ns.begin(), ns.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw std::invalid_argument("expected the ground set size in " + src);
    r.n = std::stoi(ns);
    if (semi == std::string::npos) return r;
    std::string rest = body.substr(semi + 1);
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        bool ok = false;
        for (const auto& op : ops) {
            std::size_t p = item.find(op);
            if (p == std::string::npos || p == 0) continue;
            std::string a = item.substr(0, p), b = item.substr(p + op.size());
            if (a.empty() || b.empty()) continue;
            r.rels.push_back({{std::stoi(a), std::stoi(b)}, op});
            ok = true;
            break;
        }
        if (!ok) throw std::invalid_argument("bad relation \"" + item + "\" in " + src);
    }
    for (auto& [ab, op] : r.rels)
        if (ab.first < 1 || ab.second < 1 || ab.first > r.n || ab.second > r.n)
            throw std::invalid_argument("relation outside the ground set in " + src);
    return r;
}
}  // namespace

Obj parse_qo(const std::string& s) {
    RelText r = parse_relations(s, "qo", {"~", "<"});
    std::vector<int> m(r.n * r.n, 0);
    for (auto& [ab, op] : r.rels) {
        m[(ab.first - 1) * r.n + (ab.second - 1)] = 1;
        if (op == "~") m[(ab.second - 1) * r.n + (ab.first - 1)] = 1;
    }
    return qo_from_matrix(r.n, m);
}

Obj parse_dg(const std::string& s) {
    RelText r = parse_relations(s, "dg", {"->"});
    std::vector<std::pair<int, int>> e;
    for (auto& [ab, op] : r.rels) e.push_back(ab);
    return dg_from_edges(r.n, e);
}

}  // namespace opforge
