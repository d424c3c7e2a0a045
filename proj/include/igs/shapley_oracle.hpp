#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "igs/diffusion.hpp"
#include "igs/graph.hpp"

namespace igs {

// Exact Group Shapley values of node sets under the spread function, by
// exhaustive enumeration. Two independent routes are provided: the
// weighted-subset definition and the merged-player permutation average.
// Both are ground truth for estimator and selection tests; feasible only
// at enumeration scale.
class GroupShapleyOracle {
public:
    explicit GroupShapleyOracle(const InfluenceGraph& graph);

    // sum over T subset of V\S of |T|!(n-|S|-|T|)!/(n-|S|+1)! * (sigma(T u S) - sigma(T)).
    // Requires n - |S| <= 18.
    double subsets(const std::vector<uint32_t>& group) const;

    // Average of sigma(T u S) - sigma(T) over all permutations of
    // (V \ S) + merged player, T the prefix before the merged player.
    // Requires n - |S| + 1 <= 9.
    double permutations(const std::vector<uint32_t>& group) const;

    double sigma_of_mask(uint64_t mask) const;

private:
    const InfluenceGraph* graph_;
    ExactSigmaEvaluator sigma_;
    mutable std::unordered_map<uint64_t, double> memo_;
};

// One-shot conveniences over a fresh oracle.
double exact_group_shapley_subsets(const InfluenceGraph& graph, const std::vector<uint32_t>& group);
double exact_group_shapley_permutations(const InfluenceGraph& graph, const std::vector<uint32_t>& group);

// Empirical frequency, over `samples` random permutations of (V \ S) plus
// the merged player, that no element of R \ S precedes the merged player.
// Converges to 1 / (|R \ S| + 1). Requires R and S to intersect.
double intersection_probability_check(uint32_t n, const std::vector<uint32_t>& group,
                                      const std::vector<uint32_t>& rr_members, uint64_t samples,
                                      uint64_t base_seed);

} // namespace igs
