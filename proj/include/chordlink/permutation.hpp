#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "chordlink/graph.hpp"
#include "chordlink/replication.hpp"

namespace chordlink {

/// Circular sequence of groups; each group lists pairwise-distinct node keys in boundary order.
/// Keys order the tie-breaking: smaller key wins.
using KeyGroups = std::vector<std::vector<int>>;

struct BoundaryPermutation {
    KeyGroups orders;
    std::size_t cost = 0;  // group boundaries whose neighboring elements are different nodes
};

/// Number of i with last(B_i) != first(B_{i+1 mod k}). A lone group has no boundary.
std::size_t boundary_mismatch_cost(const KeyGroups& orders);

/// Dynamic program over (first, last) choices per group, repeated for every choice of the first
/// element of group 0. Exact when every group occupies a contiguous stretch of the boundary.
///
/// Among optimal answers the one with lexicographically smallest keys in the decision order
/// (f_0, l_0, f_1, l_1, ...) is returned; the remaining members of a group sit between its
/// first and last element in ascending key order. With `prune`, members that cannot match the
/// neighboring group are dropped from the first/last candidates up front (two are kept as
/// fillers so a mismatching endpoint is still available); the answer is unchanged.
BoundaryPermutation permute_boundaries(const KeyGroups& groups, bool prune = true);

/// Exhaustive minimum over all within-group permutations. Throws InputError when the number of
/// permutations exceeds `limit`.
BoundaryPermutation brute_force_boundaries(const KeyGroups& groups,
                                           std::size_t limit = 10'000'000);

/// A run of copies attached to one external node, or a fixed introvert singleton.
struct Group {
    std::optional<NodeIndex> neighbor;
    std::vector<std::size_t> slots;  // indices into the copy sequence, boundary order
};

/// Groups extrovert copies by external neighbor. The sequence is read starting at a group
/// boundary, and groups are ordered by their first copy from there.
std::vector<Group> build_groups(std::span<const Copy> copies);

/// Sum over copies of multi-copy nodes of chi(v, n(v)): 1 when another node's copy sits between
/// v and the next copy of the same node, 0 otherwise. Single-copy nodes contribute 0.
std::size_t chi_cost(std::span<const NodeIndex> circular_nodes);
std::size_t chi_cost(std::span<const Copy> copies);

enum class PermutationStrategy { Dp, Oracle, None };

struct PermutationResult {
    std::vector<Copy> copies;  // same slots, members reassigned within groups
    std::size_t boundary_mismatch_cost = 0;
};

/// Reassigns members to the slots of each group. Keys for tie-breaking follow node id order.
PermutationResult permute_groups(const Graph& graph, std::span<const Copy> copies,
                                 std::span<const Group> groups, PermutationStrategy strategy);

}  // namespace chordlink
