#include "qc/solver.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qc {

namespace {

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

std::int64_t pairs_of(std::int64_t r) { return r * (r - 1) / 2; }

int popcount_and(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    int c = 0;
    for (std::size_t k = 0; k < a.size(); ++k) c += std::popcount(a[k] & b[k]);
    return c;
}

template <typename F>
void for_each_bit(std::span<const std::uint64_t> words, F&& f) {
    for (std::size_t k = 0; k < words.size(); ++k) {
        std::uint64_t w = words[k];
        while (w) {
            f(static_cast<int>(k * 64 + std::countr_zero(w)));
            w &= w - 1;
        }
    }
}

// Sum of the q largest entries; reorders vals.
std::int64_t topq_sum(std::vector<int>& vals, int q) {
    std::nth_element(vals.begin(), vals.begin() + (q - 1), vals.end(), std::greater<int>());
    return std::accumulate(vals.begin(), vals.begin() + q, std::int64_t{0});
}

}  // namespace

bool heredity_early_stop_valid(int r, int n, const gamma_ratio& gamma) {
    for (std::int64_t l = std::max(1, r); l < n; ++l) {
        const std::int64_t up = required_edges(l + 1, gamma);
        if (up - (2 * up) / (l + 1) < required_edges(l, gamma)) return false;
    }
    return true;
}

qc_result brute_force(const graph& g, const gamma_ratio& gamma) {
    const auto t0 = clock_type::now();
    const int n = g.vertex_count();
    if (n > 22) throw std::invalid_argument("brute_force is capped at n = 22");
    qc_result res;
    res.witness = vertex_set(n);
    res.exact = true;
    if (n == 0) {
        res.wall_ms = ms_since(t0);
        return res;
    }

    std::vector<std::uint32_t> adj(n, 0);
    for (int i = 0; i < n; ++i) adj[i] = static_cast<std::uint32_t>(g.row(i)[0]);

    // edges[mask] built by peeling the lowest vertex; masks scanned in
    // increasing integer order so the first mask reaching a new best size is
    // the lexicographically smallest witness of that size.
    const std::uint32_t total = std::uint32_t{1} << n;
    std::vector<std::int32_t> edges(total);
    edges[0] = 0;
    int best_size = 0;
    std::uint32_t best_mask = 0;
    for (std::uint32_t mask = 1; mask < total; ++mask) {
        const int v = std::countr_zero(mask);
        const std::uint32_t rest = mask & (mask - 1);
        edges[mask] = edges[rest] + std::popcount(adj[v] & rest);
        const int size = std::popcount(mask);
        if (size > best_size && edges[mask] >= required_edges(size, gamma)) {
            best_size = size;
            best_mask = mask;
        }
    }
    res.size = best_size;
    res.witness_edges = edges[best_mask];
    for (int v = 0; v < n; ++v) {
        if ((best_mask >> v) & 1u) res.witness.add(v);
    }
    res.nodes_explored = total;
    res.wall_ms = ms_since(t0);
    return res;
}

namespace {

// Incrementally maintained vertex set: e is the induced edge count and
// deg_in[v] the number of members adjacent to v, for every vertex v.
struct working_set {
    const graph* g;
    vertex_set s;
    std::vector<int> deg_in;
    std::int64_t e = 0;
    int size = 0;

    explicit working_set(const graph& gr)
        : g(&gr), s(gr.vertex_count()), deg_in(gr.vertex_count(), 0) {}

    void reset() {
        s = vertex_set(g->vertex_count());
        std::fill(deg_in.begin(), deg_in.end(), 0);
        e = 0;
        size = 0;
    }

    void add(int v) {
        e += deg_in[v];
        ++size;
        s.add(v);
        for_each_bit(g->row(v), [&](int u) { ++deg_in[u]; });
    }

    void drop(int v) {
        e -= deg_in[v];
        --size;
        s.remove(v);
        for_each_bit(g->row(v), [&](int u) { --deg_in[u]; });
    }
};

// Adds the non-member with the most edges into s if the grown set is still
// gamma-dense. If the best-connected vertex fails the density test every
// other vertex does too, so one check suffices.
bool grow_once(working_set& w, const gamma_ratio& gamma) {
    const int n = w.g->vertex_count();
    if (w.size == n) return false;
    int best = -1;
    int bd = -1;
    for (int v = 0; v < n; ++v) {
        if (!w.s.test(v) && w.deg_in[v] > bd) {
            bd = w.deg_in[v];
            best = v;
        }
    }
    if (best < 0 || w.e + bd < required_edges(w.size + 1, gamma)) return false;
    w.add(best);
    return true;
}

// 1-swap: replace a member by a non-member when that strictly increases the
// induced edge count (size unchanged, so density is preserved).
bool swap_once(working_set& w) {
    const int n = w.g->vertex_count();
    for (int u = w.s.next_member(0); u >= 0; u = w.s.next_member(u + 1)) {
        for (int v = 0; v < n; ++v) {
            if (w.s.test(v)) continue;
            if (w.deg_in[v] - (w.g->has_edge(u, v) ? 1 : 0) > w.deg_in[u]) {
                w.drop(u);
                w.add(v);
                return true;
            }
        }
    }
    return false;
}

// 1-drop/2-add: remove one member and add two vertices, accepted when the
// enlarged set is gamma-dense (a net size gain of one).
bool drop_two_add_once(working_set& w, const gamma_ratio& gamma) {
    const int n = w.g->vertex_count();
    if (w.size < 1 || w.size + 1 > n) return false;
    const std::int64_t need = required_edges(w.size + 1, gamma);
    for (int u = w.s.next_member(0); u >= 0; u = w.s.next_member(u + 1)) {
        w.drop(u);
        for (int v = 0; v < n; ++v) {
            if (w.s.test(v)) continue;
            const std::int64_t ev = w.e + w.deg_in[v];
            for (int x = v + 1; x < n; ++x) {
                if (w.s.test(x)) continue;
                if (ev + w.deg_in[x] + (w.g->has_edge(v, x) ? 1 : 0) >= need) {
                    w.add(v);
                    w.add(x);
                    return true;
                }
            }
        }
        w.add(u);
    }
    return false;
}

}  // namespace

qc_result heuristic(const graph& g, const gamma_ratio& gamma, int restarts, rng::stream& rs) {
    const auto t0 = clock_type::now();
    if (restarts < 1) throw std::invalid_argument("heuristic needs restarts >= 1");
    const int n = g.vertex_count();
    qc_result best;
    best.witness = vertex_set(n);
    if (n == 0) {
        best.exact = true;
        best.wall_ms = ms_since(t0);
        return best;
    }

    // Seeds come from the top quarter of the degree order.
    std::vector<int> by_degree(n);
    std::iota(by_degree.begin(), by_degree.end(), 0);
    std::stable_sort(by_degree.begin(), by_degree.end(),
                     [&](int a, int b) { return g.degree(a) > g.degree(b); });
    const int pool = std::max(1, n / 4);

    working_set w(g);
    for (int t = 0; t < restarts; ++t) {
        const int seed = by_degree[static_cast<int>(rs.next_below(static_cast<std::uint64_t>(pool)))];
        w.reset();
        w.add(seed);
        for (;;) {
            while (grow_once(w, gamma)) {
            }
            if (swap_once(w)) continue;
            if (drop_two_add_once(w, gamma)) continue;
            break;
        }
        const bool better =
            w.size > best.size || (w.size == best.size && w.e > best.witness_edges) ||
            (w.size == best.size && w.e == best.witness_edges && vertex_set::mask_less(w.s, best.witness));
        if (t == 0 || better) {
            best.size = w.size;
            best.witness = w.s;
            best.witness_edges = w.e;
        }
    }
    best.exact = best.size == n;
    best.wall_ms = ms_since(t0);
    return best;
}

namespace {

// Depth-first decision search for one target size r: does a gamma-dense
// r-set exist? Single-threaded; candidates are scanned in the static
// descending-degree order so suffixes are plain bitmask truncations.
struct bb_search {
    const std::vector<vertex_set>* adj;
    int n = 0;
    int r = 0;
    std::int64_t need = 0;
    std::uint64_t budget = 0;
    std::uint64_t nodes = 0;
    bool aborted = false;

    std::vector<vertex_set> avail;  // per-depth candidate suffixes
    vertex_set p;
    std::vector<int> vals_p, vals_c, vals_2;        // bound scratch, reordered
    std::vector<std::vector<int>> cands, cand_dp;   // per-depth, order-preserving

    bool found = false;
    vertex_set found_set;
    std::int64_t found_edges = 0;

    bb_search(const std::vector<vertex_set>& a, int n_, int r_, std::int64_t need_,
              std::uint64_t budget_)
        : adj(&a), n(n_), r(r_), need(need_), budget(budget_), p(n_) {
        avail.assign(r_ + 1, vertex_set(n_));
        cands.assign(r_ + 1, {});
        cand_dp.assign(r_ + 1, {});
    }

    bool dfs(int depth, std::int64_t e) {
        if (++nodes > budget) {
            aborted = true;
            return false;
        }
        const int q = r - depth;
        if (q == 0) {
            if (e < need) return false;
            found = true;
            found_set = p;
            found_edges = e;
            return true;
        }
        const vertex_set& a = avail[depth];

        // Optimistic completion bound over the q picks still to make: each
        // pick v contributes deg(v -> p) plus its share of candidate-candidate
        // edges. ub2 maximizes the combined per-vertex score 2*deg_p +
        // min(deg_cand, q-1) and halves the total; ub1 maximizes the two parts
        // separately (pair part capped at C(q,2)) and is only worth computing
        // when ub2 alone fails to prune.
        auto& cand = cands[depth];
        auto& cdp = cand_dp[depth];
        cand.clear();
        cdp.clear();
        vals_p.clear();
        vals_c.clear();
        vals_2.clear();
        a.for_each([&](int v) {
            const int dp = popcount_and((*adj)[v].words(), p.words());
            const int dc = popcount_and((*adj)[v].words(), a.words());
            const int dcc = std::min(dc, q - 1);
            cand.push_back(v);
            cdp.push_back(dp);
            vals_p.push_back(dp);
            vals_c.push_back(dcc);
            vals_2.push_back(2 * dp + dcc);
        });
        const int m = static_cast<int>(cand.size());
        if (m < q) return false;
        const std::int64_t ub2 = topq_sum(vals_2, q) / 2;
        if (e + ub2 < need) return false;
        const std::int64_t ub1 =
            topq_sum(vals_p, q) + std::min(pairs_of(q), topq_sum(vals_c, q) / 2);
        if (e + ub1 < need) return false;

        // Children past m - q cannot gather q picks from the remaining suffix.
        for (int i = 0; i + q <= m; ++i) {
            const int v = cand[i];
            avail[depth + 1] = a;
            avail[depth + 1].keep_above(v);
            p.add(v);
            const bool ok = dfs(depth + 1, e + cdp[i]);
            p.remove(v);
            if (ok) return true;
            if (aborted) return false;
        }
        return false;
    }
};

}  // namespace

qc_result exact_bb(const graph& g, const gamma_ratio& gamma, std::uint64_t budget) {
    const auto t0 = clock_type::now();
    if (gamma.is_zero()) throw std::invalid_argument("exact_bb requires gamma > 0");
    const int n = g.vertex_count();

    // Warm start from the heuristic on a fixed stream so the whole call is
    // deterministic.
    rng::stream hs(rng::derive(0x5eedb00a, 17));
    qc_result best = heuristic(g, gamma, 16, hs);
    std::uint64_t nodes_total = 0;
    if (best.size >= n) {
        best.exact = true;
        best.nodes_explored = 0;
        best.wall_ms = ms_since(t0);
        return best;
    }

    // Static relabel by descending degree (ties by index).
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return g.degree(a) > g.degree(b); });
    std::vector<int> pos(n);
    for (int k = 0; k < n; ++k) pos[order[k]] = k;
    std::vector<vertex_set> adj(n, vertex_set(n));
    for (int i = 0; i < n; ++i) {
        for_each_bit(g.row(i), [&](int j) { adj[pos[i]].add(pos[j]); });
    }

    bool aborted = false;
    for (int r = best.size + 1; r <= n; ++r) {
        const std::int64_t need = required_edges(r, gamma);

        // Peel vertices that cannot sit in any gamma-dense r-set drawn from
        // the survivors: C(r-1,2) + min(deg, r-1) < need. Mostly bites when
        // gamma is close to 1.
        vertex_set survivors = vertex_set::all(n);
        for (bool changed = true; changed;) {
            changed = false;
            for (int v = survivors.next_member(0); v >= 0; v = survivors.next_member(v + 1)) {
                const int dv = popcount_and(adj[v].words(), survivors.words());
                if (pairs_of(r - 1) + std::min<std::int64_t>(dv, r - 1) < need) {
                    survivors.remove(v);
                    changed = true;
                }
            }
        }

        bool found = false;
        if (survivors.count() >= r) {
            bb_search s(adj, n, r, need, budget - nodes_total);
            s.avail[0] = survivors;
            found = s.dfs(0, 0);
            nodes_total += s.nodes;
            if (s.aborted) {
                aborted = true;
                break;
            }
            if (found) {
                best.size = r;
                best.witness = vertex_set(n);
                s.found_set.for_each([&](int v) { best.witness.add(order[v]); });
                best.witness_edges = s.found_edges;
            }
        }
        if (!found && heredity_early_stop_valid(r, n, gamma)) break;
    }
    best.exact = !aborted;
    best.nodes_explored = nodes_total;
    best.wall_ms = ms_since(t0);
    return best;
}

qc_result qc_number(const graph& g, const gamma_ratio& gamma, std::uint64_t budget) {
    const int n = g.vertex_count();
    if (gamma.is_zero()) {
        const auto t0 = clock_type::now();
        qc_result res;
        res.size = n;
        res.witness = vertex_set::all(n);
        res.witness_edges = g.edge_count();
        res.exact = true;
        res.wall_ms = ms_since(t0);
        return res;
    }
    if (n <= 18) return brute_force(g, gamma);
    return exact_bb(g, gamma, budget);
}

}  // namespace qc
