#include "progfree/search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <numeric>
#include <set>
#include <thread>

namespace progfree {

std::string semantics_name(Semantics sem) {
    return sem == Semantics::literal ? "literal" : "distinct";
}

Semantics parse_semantics(const std::string& name) {
    if (name == "literal") return Semantics::literal;
    if (name == "distinct") return Semantics::distinct;
    throw std::invalid_argument("unknown semantics: " + name);
}

std::optional<ApWitness> contains_kap(const std::vector<ExpVec>& s, int k, int q, int n,
                                      Semantics sem) {
    if (k < 3) throw std::domain_error("contains_kap requires k >= 3");
    std::set<ExpVec> members(s.begin(), s.end());
    const std::uint64_t total = static_cast<std::uint64_t>(std::llround(std::pow(q, n)));
    for (const ExpVec& a : s) {
        for (std::uint64_t dc = 1; dc < total; ++dc) {
            const ExpVec d = decode_point(dc, q, n);
            bool inside = true;
            std::set<ExpVec> seen;
            ExpVec cur = a;
            for (int j = 0; j < k && inside; ++j) {
                if (!members.count(cur)) inside = false;
                seen.insert(cur);
                cur = add_points_mod(cur, d, q);
            }
            if (!inside) continue;
            if (sem == Semantics::distinct && static_cast<int>(seen.size()) < k) continue;
            return ApWitness{a, d};
        }
    }
    return std::nullopt;
}

namespace {

constexpr int kMaxPoints = 512;

struct Bits {
    std::array<std::uint64_t, kMaxPoints / 64> w{};

    void set(int i) { w[i >> 6] |= 1ull << (i & 63); }
    bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1u; }
    bool subset_of(const Bits& other) const {
        for (size_t j = 0; j < w.size(); ++j)
            if (w[j] & ~other.w[j]) return false;
        return true;
    }
};

struct ApTable {
    int point_count = 0;
    std::vector<Bits> masks;                    // deduplicated point sets of k-APs
    std::vector<std::vector<int>> masks_of;     // per point: indices of masks through it
    std::vector<int> order;                     // branch order: degree desc, code asc
};

ApTable build_table(int q, int n, int k, Semantics sem) {
    ApTable table;
    const std::uint64_t total = static_cast<std::uint64_t>(std::llround(std::pow(q, n)));
    table.point_count = static_cast<int>(total);
    std::set<std::vector<std::uint64_t>> seen;
    for (std::uint64_t ac = 0; ac < total; ++ac) {
        const ExpVec a = decode_point(ac, q, n);
        for (std::uint64_t dc = 1; dc < total; ++dc) {
            const ExpVec d = decode_point(dc, q, n);
            Bits mask;
            int distinct_points = 0;
            ExpVec cur = a;
            for (int j = 0; j < k; ++j) {
                const int code = static_cast<int>(encode_point(cur, q));
                if (!mask.test(code)) {
                    mask.set(code);
                    ++distinct_points;
                }
                cur = add_points_mod(cur, d, q);
            }
            if (sem == Semantics::distinct && distinct_points < k) continue;
            std::vector<std::uint64_t> key(mask.w.begin(), mask.w.end());
            if (seen.insert(std::move(key)).second) table.masks.push_back(mask);
        }
    }
    table.masks_of.assign(table.point_count, {});
    for (size_t mi = 0; mi < table.masks.size(); ++mi)
        for (int v = 0; v < table.point_count; ++v)
            if (table.masks[mi].test(v)) table.masks_of[v].push_back(static_cast<int>(mi));
    table.order.resize(table.point_count);
    std::iota(table.order.begin(), table.order.end(), 0);
    std::stable_sort(table.order.begin(), table.order.end(), [&](int a, int b) {
        const size_t da = table.masks_of[a].size(), db = table.masks_of[b].size();
        if (da != db) return da > db;
        return a < b;
    });
    return table;
}

// True iff adding v to chosen completes no progression mask.
bool include_legal(const ApTable& table, const Bits& chosen, int v) {
    Bits next = chosen;
    next.set(v);
    for (int mi : table.masks_of[v])
        if (table.masks[mi].subset_of(next)) return false;
    return true;
}

struct Best {
    int size = 0;
    std::vector<int> points;  // ascending codes
};

// Sequential DFS with optional node budget; improves `best` in place.
// Returns false if the budget ran out somewhere below.
bool dfs(const ApTable& table, Bits chosen, int idx, int size, Best& best,
         std::uint64_t& nodes, std::uint64_t max_nodes) {
    if (nodes >= max_nodes) return false;
    ++nodes;
    const int total = table.point_count;
    if (size + (total - idx) <= best.size) return true;  // cannot beat best
    if (idx == total) {
        if (size > best.size) {
            best.size = size;
            best.points.clear();
            for (int v = 0; v < total; ++v)
                if (chosen.test(v)) best.points.push_back(v);
        }
        return true;
    }
    const int v = table.order[idx];
    bool complete = true;
    if (include_legal(table, chosen, v)) {
        Bits next = chosen;
        next.set(v);
        complete = dfs(table, next, idx + 1, size + 1, best, nodes, max_nodes) && complete;
    }
    complete = dfs(table, chosen, idx + 1, size, best, nodes, max_nodes) && complete;
    return complete;
}

struct Task {
    Bits chosen;
    int idx = 0;
    int size = 0;
};

// Enumerates all include/exclude prefixes down to split_depth, in DFS order
// (include first).  Prefixes whose include step is illegal are dropped, which
// mirrors what the sequential search would prune immediately.
void enumerate_tasks(const ApTable& table, const Task& t, int split_depth, std::vector<Task>& out,
                     std::uint64_t& nodes) {
    ++nodes;
    if (t.idx >= split_depth || t.idx == table.point_count) {
        out.push_back(t);
        return;
    }
    const int v = table.order[t.idx];
    if (include_legal(table, t.chosen, v)) {
        Task inc = t;
        inc.chosen.set(v);
        ++inc.idx;
        ++inc.size;
        enumerate_tasks(table, inc, split_depth, out, nodes);
    }
    Task exc = t;
    ++exc.idx;
    enumerate_tasks(table, exc, split_depth, out, nodes);
}

// Deterministic greedy seed: walk the branch order, include when legal.
Best greedy_seed(const ApTable& table) {
    Best best;
    Bits chosen;
    for (int idx = 0; idx < table.point_count; ++idx) {
        const int v = table.order[idx];
        if (include_legal(table, chosen, v)) {
            chosen.set(v);
            ++best.size;
        }
    }
    for (int v = 0; v < table.point_count; ++v)
        if (chosen.test(v)) best.points.push_back(v);
    return best;
}

}  // namespace

SearchResult max_progression_free(int q, int n, int k, Semantics sem, const SearchBudget& budget,
                                  int threads) {
    if (k < 3) throw std::domain_error("max_progression_free requires k >= 3");
    if (q < 2 || n < 1) throw std::domain_error("max_progression_free requires q >= 2, n >= 1");
    const double total = std::pow(q, n);
    if (total > budget.max_points)
        throw std::domain_error("instance exceeds the configured scale guard");
    if (total > kMaxPoints) throw std::domain_error("instance exceeds compiled point capacity");
    if (threads < 1) threads = 1;

    const ApTable table = build_table(q, n, k, sem);
    SearchResult result;
    result.budget_nodes = budget.max_nodes;

    const Best seed = greedy_seed(table);

    if (budget.max_nodes != UINT64_MAX) {
        // Budgeted: run one sequential DFS so the cutoff is deterministic.
        Best best = seed;
        std::uint64_t nodes = 0;
        const bool complete = dfs(table, Bits{}, 0, 0, best, nodes, budget.max_nodes);
        result.max_size = best.size;
        for (int code : best.points) result.witness.push_back(decode_point(code, q, n));
        result.nodes_explored = nodes;
        result.optimal = complete;
        return result;
    }

    // Unbudgeted: fixed task decomposition independent of thread count.
    const int split_depth = std::min(table.point_count, 6);
    std::vector<Task> tasks;
    std::uint64_t prefix_nodes = 0;
    enumerate_tasks(table, Task{}, split_depth, tasks, prefix_nodes);

    std::vector<Best> bests(tasks.size());
    std::vector<std::uint64_t> node_counts(tasks.size(), 0);
    std::atomic<size_t> cursor{0};
    auto worker = [&]() {
        for (;;) {
            const size_t i = cursor.fetch_add(1);
            if (i >= tasks.size()) return;
            Best local = seed;  // per-task bound: deterministic node counts
            dfs(table, tasks[i].chosen, tasks[i].idx, tasks[i].size, local, node_counts[i],
                UINT64_MAX);
            bests[i] = std::move(local);
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    Best best = seed;
    for (const Best& b : bests)
        if (b.size > best.size) best = b;  // task order = global DFS order
    result.max_size = best.size;
    for (int code : best.points) result.witness.push_back(decode_point(code, q, n));
    result.nodes_explored = prefix_nodes + std::accumulate(node_counts.begin(), node_counts.end(),
                                                           std::uint64_t{0});
    result.optimal = true;
    return result;
}

std::vector<ExpVec> product_set(const std::vector<ExpVec>& s1, const std::vector<ExpVec>& s2) {
    std::vector<ExpVec> out;
    out.reserve(s1.size() * s2.size());
    for (const ExpVec& a : s1) {
        for (const ExpVec& b : s2) {
            ExpVec p = a;
            p.insert(p.end(), b.begin(), b.end());
            out.push_back(std::move(p));
        }
    }
    return out;
}

BoundConsistency bound_consistency(int q, int n, int k, const SearchBudget& budget, int threads) {
    BoundConsistency report;
    report.q = q;
    report.n = n;
    report.k = k;
    const SearchResult main = max_progression_free(q, n, k, Semantics::literal, budget, threads);
    report.max_size = main.max_size;

    report.theorem_applicable = (q >= k && is_prime_power(q));
    report.theorem_holds = true;
    if (report.theorem_applicable) {
        const BoundReport bound = progression_bound(k, q);
        report.c_value = bound.c_value;
        const long double powed = std::pow(static_cast<long double>(bound.c_value), n);
        report.bound_floor = BigInt(static_cast<long long>(std::floor(powed)));
        report.theorem_holds = BigInt(report.max_size) <= report.bound_floor;
    }

    for (int divisor = 2; divisor < q; ++divisor) {
        if (q % divisor != 0) continue;
        ReductionEntry entry;
        entry.divisor = divisor;
        entry.sub_max =
            max_progression_free(divisor, n, k, Semantics::literal, budget, threads).max_size;
        entry.rhs = big_pow(BigInt(q / divisor), static_cast<unsigned>(n)) * entry.sub_max;
        entry.holds = BigInt(report.max_size) <= entry.rhs;
        report.reductions_hold = report.reductions_hold && entry.holds;
        report.reductions.push_back(std::move(entry));
    }
    report.ok = report.theorem_holds && report.reductions_hold;
    return report;
}

}  // namespace progfree
