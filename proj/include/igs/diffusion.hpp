#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "igs/graph.hpp"
#include "igs/rng.hpp"

namespace igs {

// One joint draw of triggering sets: T_v per node, plus the forward
// adjacency of the induced live-edge graph G_X.
struct LiveEdgeOutcome {
    const InfluenceGraph* graph = nullptr;
    std::vector<std::vector<uint32_t>> triggering; // T_v, subset of in-neighbors
    std::vector<std::vector<uint32_t>> live_out;   // u -> {v : u in T_v}
};

// All nodes that reach a sampled root in a live-edge outcome.
struct RRSet {
    uint32_t root = 0;
    std::vector<uint32_t> members; // sorted ascending, contains root
};

// Ordered sequence of t RR sets plus a node -> set-indices inverted index.
// Set i is a pure function of (base_seed, i); see sample_rr_collection.
struct RRSample {
    uint32_t n = 0;
    uint64_t t = 0;
    uint64_t base_seed = 0;
    DiffusionModel model = DiffusionModel::IC;
    std::vector<RRSet> sets;
    std::vector<uint32_t> set_sizes;

    // CSR inverted index: for node v, the ascending indices of sets that
    // contain v live in index_data[index_offsets[v] .. index_offsets[v+1]).
    std::vector<uint64_t> index_offsets;
    std::vector<uint32_t> index_data;

    void build_index();
};

inline constexpr uint64_t kDefaultMemberCap = 100'000'000; // cap on sum of |R_i|

// IC: each in-arc of v joins T_v independently with its probability.
// LT: v picks one in-neighbor u with probability p_uv, none with 1 - sum.
LiveEdgeOutcome sample_live_edge_outcome(const InfluenceGraph& graph, Rng& rng);

// Exact forward-reachable set of `seeds` in the live-edge graph (BFS).
// Returns a sorted node list.
std::vector<uint32_t> forward_reachable(const LiveEdgeOutcome& outcome,
                                        const std::vector<uint32_t>& seeds);

// Mean of |rho_X(seeds)| over `trials` independent outcomes; trial i draws
// from the counter stream (base_seed, i), so the result is deterministic.
double simulate_sigma(const InfluenceGraph& graph, const std::vector<uint32_t>& seeds,
                      uint64_t trials, uint64_t base_seed);

// Exact expected spread by exhaustive outcome enumeration. Feasible when the
// number of genuinely random IC arcs is at most 22, or the product of LT
// per-node choice counts is at most 2^22; throws InputError otherwise.
double exact_sigma(const InfluenceGraph& graph, const std::vector<uint32_t>& seeds);

// Repeated-query variant of exact_sigma over node bitmasks (n <= 64).
// Small instances cache per-outcome reachability closures up front.
class ExactSigmaEvaluator {
public:
    explicit ExactSigmaEvaluator(const InfluenceGraph& graph);
    double sigma(uint64_t seed_mask) const;
    uint64_t outcome_count() const { return outcome_count_; }

private:
    const InfluenceGraph* graph_;
    uint64_t outcome_count_ = 0;
    bool cached_ = false;
    std::vector<double> probs_;          // per outcome
    std::vector<uint64_t> reach_;        // outcome-major: n closure masks each
};

// Reverse lazy expansion: sample a uniform root, then triggering sets only
// for nodes entering the set.
RRSet sample_rr_set(const InfluenceGraph& graph, Rng& rng);

// t RR sets where set i is drawn from the counter stream (base_seed, i);
// bitwise identical output for any worker_count. Throws ResourceLimitError
// once the summed member count would exceed max_total_members.
RRSample sample_rr_collection(const InfluenceGraph& graph, uint64_t t, uint64_t base_seed,
                              unsigned worker_count = 1,
                              uint64_t max_total_members = kDefaultMemberCap);

// Binary RRSample serialization (header: n, t, base_seed, model; then
// per-set root and length-prefixed sorted member list).
void dump_rr_sample(const RRSample& sample, std::ostream& out);
void dump_rr_sample_file(const RRSample& sample, const std::string& path);
RRSample load_rr_sample(std::istream& in);
RRSample load_rr_sample_file(const std::string& path);

} // namespace igs
