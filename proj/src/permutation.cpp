#include "chordlink/permutation.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "chordlink/error.hpp"

namespace chordlink {

namespace {

constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max() / 4;

/// First/last candidates of one group.
struct Candidates {
    std::vector<int> first;
    std::vector<int> last;
};

std::vector<int> with_fillers(const std::vector<int>& members,
                              const std::unordered_set<int>& neighbor_keys, bool prune)
{
    if (!prune || members.size() <= 2)
        return members;
    std::vector<int> out;
    std::vector<int> fillers;
    for (int key : members) {
        if (neighbor_keys.contains(key))
            out.push_back(key);
        else
            fillers.push_back(key);
    }
    std::sort(fillers.begin(), fillers.end());
    for (std::size_t i = 0; i < fillers.size() && i < 2; ++i)
        out.push_back(fillers[i]);
    return out;
}

std::vector<Candidates> candidate_sets(const KeyGroups& groups, bool prune)
{
    const std::size_t k = groups.size();
    std::vector<std::unordered_set<int>> keys(k);
    for (std::size_t i = 0; i < k; ++i)
        keys[i].insert(groups[i].begin(), groups[i].end());
    std::vector<Candidates> out(k);
    for (std::size_t i = 0; i < k; ++i) {
        out[i].first = with_fillers(groups[i], keys[(i + k - 1) % k], prune);
        out[i].last = with_fillers(groups[i], keys[(i + 1) % k], prune);
        std::sort(out[i].first.begin(), out[i].first.end());
        std::sort(out[i].last.begin(), out[i].last.end());
    }
    return out;
}

/// Cost-to-go tables for a fixed first element of group 0.
///
/// g[i][j] is the minimum number of mismatches on boundaries i..k-1 when l_i = cand[i].last[j].
/// The recurrence over (f_i, l_i) pairs only depends on f_i through f_i != l_i, which is
/// resolved by keeping the two best g values per group.
struct CostToGo {
    std::vector<std::vector<std::size_t>> g;
};

struct TwoBest {
    std::size_t best = kInf;
    int best_key = 0;
    std::size_t second = kInf;
};

TwoBest two_best(const std::vector<int>& keys, const std::vector<std::size_t>& values)
{
    TwoBest t;
    for (std::size_t j = 0; j < keys.size(); ++j) {
        if (values[j] < t.best) {
            t.second = t.best;
            t.best = values[j];
            t.best_key = keys[j];
        } else if (values[j] < t.second) {
            t.second = values[j];
        }
    }
    return t;
}

/// min over l != f of g(l); a singleton group uses l == f.
std::size_t best_for_first(int f, const TwoBest& t, bool singleton)
{
    if (singleton)
        return t.best;
    return t.best_key == f ? t.second : t.best;
}

CostToGo cost_to_go(const KeyGroups& groups, const std::vector<Candidates>& cand, int f0)
{
    const std::size_t k = groups.size();
    CostToGo c;
    c.g.resize(k);
    c.g[k - 1].resize(cand[k - 1].last.size());
    for (std::size_t j = 0; j < cand[k - 1].last.size(); ++j)
        c.g[k - 1][j] = cand[k - 1].last[j] == f0 ? 0 : 1;

    for (std::size_t i = k - 1; i-- > 0;) {
        const std::size_t nxt = i + 1;
        const bool singleton = groups[nxt].size() == 1;
        const TwoBest t = two_best(cand[nxt].last, c.g[nxt]);
        std::unordered_map<int, std::size_t> best_first;
        std::size_t min_best = kInf;
        for (int f : cand[nxt].first) {
            const std::size_t b = best_for_first(f, t, singleton);
            best_first.emplace(f, b);
            min_best = std::min(min_best, b);
        }
        c.g[i].resize(cand[i].last.size());
        for (std::size_t j = 0; j < cand[i].last.size(); ++j) {
            std::size_t v = min_best + 1;
            if (auto it = best_first.find(cand[i].last[j]); it != best_first.end())
                v = std::min(v, it->second);
            c.g[i][j] = v;
        }
    }
    return c;
}

/// Best l for a chosen f within group i, smallest key on ties.
std::pair<int, std::size_t> choose_last(const std::vector<int>& last,
                                        const std::vector<std::size_t>& g, int f, bool singleton)
{
    int key = 0;
    std::size_t best = kInf;
    for (std::size_t j = 0; j < last.size(); ++j) {
        if (!singleton && last[j] == f)
            continue;
        if (g[j] < best) {
            best = g[j];
            key = last[j];
        }
    }
    return {key, best};
}

std::vector<int> arrange(const std::vector<int>& members, int first, int last)
{
    if (members.size() == 1)
        return members;
    std::vector<int> middle;
    for (int key : members) {
        if (key != first && key != last)
            middle.push_back(key);
    }
    std::sort(middle.begin(), middle.end());
    std::vector<int> out;
    out.reserve(members.size());
    out.push_back(first);
    out.insert(out.end(), middle.begin(), middle.end());
    out.push_back(last);
    return out;
}

}  // namespace

std::size_t boundary_mismatch_cost(const KeyGroups& orders)
{
    const std::size_t k = orders.size();
    if (k < 2)
        return 0;
    std::size_t cost = 0;
    for (std::size_t i = 0; i < k; ++i) {
        if (orders[i].back() != orders[(i + 1) % k].front())
            ++cost;
    }
    return cost;
}

BoundaryPermutation permute_boundaries(const KeyGroups& groups, bool prune)
{
    const std::size_t k = groups.size();
    for (const auto& g : groups) {
        if (g.empty())
            throw InputError("group without members");
    }
    if (k == 0)
        return {};
    if (k == 1) {
        std::vector<int> sorted = groups[0];
        std::sort(sorted.begin(), sorted.end());
        return {{arrange(groups[0], sorted.front(), sorted.size() > 1 ? sorted[1] : sorted[0])}, 0};
    }

    const auto cand = candidate_sets(groups, prune);
    const bool single0 = groups[0].size() == 1;

    int best_f0 = 0;
    std::size_t best_total = kInf;
    for (int f0 : cand[0].first) {
        const CostToGo c = cost_to_go(groups, cand, f0);
        const std::size_t total = choose_last(cand[0].last, c.g[0], f0, single0).second;
        if (total < best_total) {
            best_total = total;
            best_f0 = f0;
        }
    }

    const CostToGo c = cost_to_go(groups, cand, best_f0);
    BoundaryPermutation out;
    out.orders.resize(k);
    int prev_last = choose_last(cand[0].last, c.g[0], best_f0, single0).first;
    out.orders[0] = arrange(groups[0], best_f0, prev_last);
    for (std::size_t i = 1; i < k; ++i) {
        const bool singleton = groups[i].size() == 1;
        const TwoBest t = two_best(cand[i].last, c.g[i]);
        int f = 0;
        std::size_t best = kInf;
        for (int key : cand[i].first) {
            const std::size_t v = (key == prev_last ? 0 : 1) + best_for_first(key, t, singleton);
            if (v < best) {
                best = v;
                f = key;
            }
        }
        const int l = choose_last(cand[i].last, c.g[i], f, singleton).first;
        out.orders[i] = arrange(groups[i], f, l);
        prev_last = l;
    }
    out.cost = boundary_mismatch_cost(out.orders);
    if (out.cost != best_total)
        throw InvariantError("boundary DP reconstruction disagrees with its table");
    return out;
}

BoundaryPermutation brute_force_boundaries(const KeyGroups& groups, std::size_t limit)
{
    double count = 1.0;
    for (const auto& g : groups) {
        if (g.empty())
            throw InputError("group without members");
        for (std::size_t i = 2; i <= g.size(); ++i)
            count *= static_cast<double>(i);
    }
    if (count > static_cast<double>(limit))
        throw InputError("permutation oracle refused: instance has too many permutations");

    KeyGroups current = groups;
    for (auto& g : current)
        std::sort(g.begin(), g.end());
    BoundaryPermutation best{current, boundary_mismatch_cost(current)};
    if (groups.empty())
        return best;

    // Odometer over std::next_permutation of every group.
    while (true) {
        std::size_t i = 0;
        while (i < current.size() && !std::next_permutation(current[i].begin(), current[i].end()))
            ++i;
        if (i == current.size())
            break;
        const std::size_t cost = boundary_mismatch_cost(current);
        if (cost < best.cost)
            best = {current, cost};
    }
    return best;
}

std::vector<Group> build_groups(std::span<const Copy> copies)
{
    const std::size_t n = copies.size();
    if (n == 0)
        return {};
    auto same_group = [&](std::size_t a, std::size_t b) {
        return copies[a].neighbor && copies[b].neighbor && *copies[a].neighbor == *copies[b].neighbor;
    };
    std::size_t start = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!same_group((i + n - 1) % n, i)) {
            start = i;
            break;
        }
    }
    std::vector<Group> groups;
    std::map<NodeIndex, std::size_t> by_neighbor;
    for (std::size_t step = 0; step < n; ++step) {
        const std::size_t idx = (start + step) % n;
        const Copy& c = copies[idx];
        if (c.introvert()) {
            groups.push_back({std::nullopt, {idx}});
            continue;
        }
        auto [it, fresh] = by_neighbor.emplace(*c.neighbor, groups.size());
        if (fresh)
            groups.push_back({c.neighbor, {}});
        groups[it->second].slots.push_back(idx);
    }
    return groups;
}

std::size_t chi_cost(std::span<const NodeIndex> circular_nodes)
{
    const std::size_t n = circular_nodes.size();
    std::unordered_map<NodeIndex, std::size_t> count;
    for (NodeIndex v : circular_nodes)
        ++count[v];
    std::size_t cost = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const NodeIndex v = circular_nodes[i];
        if (count[v] >= 2 && circular_nodes[(i + 1) % n] != v)
            ++cost;
    }
    return cost;
}

std::size_t chi_cost(std::span<const Copy> copies)
{
    std::vector<NodeIndex> nodes;
    nodes.reserve(copies.size());
    for (const Copy& c : copies)
        nodes.push_back(c.node);
    return chi_cost(nodes);
}

PermutationResult permute_groups(const Graph& graph, std::span<const Copy> copies,
                                 std::span<const Group> groups, PermutationStrategy strategy)
{
    // Keys rank the involved nodes by id so ties resolve by id order.
    std::vector<NodeIndex> involved;
    for (const Copy& c : copies)
        involved.push_back(c.node);
    std::sort(involved.begin(), involved.end(), [&](NodeIndex a, NodeIndex b) {
        return graph.node(a).id < graph.node(b).id;
    });
    involved.erase(std::unique(involved.begin(), involved.end()), involved.end());
    std::unordered_map<NodeIndex, int> key_of;
    for (std::size_t i = 0; i < involved.size(); ++i)
        key_of.emplace(involved[i], static_cast<int>(i));

    KeyGroups keyed;
    keyed.reserve(groups.size());
    for (const Group& g : groups) {
        std::vector<int> keys;
        for (std::size_t slot : g.slots)
            keys.push_back(key_of.at(copies[slot].node));
        keyed.push_back(std::move(keys));
    }

    BoundaryPermutation bp;
    switch (strategy) {
    case PermutationStrategy::Dp:
        bp = permute_boundaries(keyed);
        break;
    case PermutationStrategy::Oracle:
        bp = brute_force_boundaries(keyed);
        break;
    case PermutationStrategy::None:
        bp = {keyed, boundary_mismatch_cost(keyed)};
        break;
    }

    PermutationResult out{std::vector<Copy>(copies.begin(), copies.end()), bp.cost};
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const Group& g = groups[gi];
        std::unordered_map<int, const Copy*> member_by_key;
        for (std::size_t slot : g.slots)
            member_by_key.emplace(key_of.at(copies[slot].node), &copies[slot]);
        for (std::size_t j = 0; j < g.slots.size(); ++j) {
            const Copy* member = member_by_key.at(bp.orders[gi][j]);
            Copy& slot = out.copies[g.slots[j]];
            slot.node = member->node;
            slot.edge = member->edge;
        }
    }
    return out;
}

}  // namespace chordlink
