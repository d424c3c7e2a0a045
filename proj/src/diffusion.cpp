#include "igs/diffusion.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <fstream>
#include <functional>
#include <thread>

#include "igs/errors.hpp"

namespace igs {

namespace {

constexpr uint32_t kMaxRandomIcArcs = 22;
constexpr uint64_t kMaxLtOutcomes = uint64_t{1} << 22;
constexpr uint64_t kCacheableOutcomes = uint64_t{1} << 14;

// Scratch buffers shared across many BFS/sampling calls.
struct Workspace {
    std::vector<uint32_t> stamp;
    uint32_t epoch = 0;
    std::vector<uint32_t> queue;

    void reset(uint32_t n) {
        if (stamp.size() < n) stamp.assign(n, 0);
        ++epoch;
        if (epoch == 0) { // stamp wrap-around
            std::fill(stamp.begin(), stamp.end(), 0);
            epoch = 1;
        }
        queue.clear();
    }
    bool mark(uint32_t v) {
        if (stamp[v] == epoch) return false;
        stamp[v] = epoch;
        return true;
    }
};

RRSet sample_rr_set_into(const InfluenceGraph& graph, Rng& rng, Workspace& ws) {
    const uint32_t n = graph.node_count();
    ws.reset(n);
    RRSet rr;
    rr.root = rng.next_below(n);
    ws.mark(rr.root);
    ws.queue.push_back(rr.root);
    for (size_t head = 0; head < ws.queue.size(); ++head) {
        uint32_t v = ws.queue[head];
        if (graph.model() == DiffusionModel::IC) {
            for (const auto* it = graph.in_begin(v); it != graph.in_end(v); ++it) {
                if (rng.next_unit() < it->value && ws.mark(it->neighbor)) {
                    ws.queue.push_back(it->neighbor);
                }
            }
        } else {
            double x = rng.next_unit();
            double acc = 0.0;
            for (const auto* it = graph.in_begin(v); it != graph.in_end(v); ++it) {
                acc += it->value;
                if (x < acc) {
                    if (ws.mark(it->neighbor)) ws.queue.push_back(it->neighbor);
                    break;
                }
            }
        }
    }
    rr.members = ws.queue;
    std::sort(rr.members.begin(), rr.members.end());
    return rr;
}

// LT choice table: per node with random in-neighbor choices, the effective
// options (zero-probability options pruned).
struct LtOption {
    uint32_t neighbor; // or UINT32_MAX for "none"
    double prob;
};
struct LtChoices {
    std::vector<uint32_t> nodes;
    std::vector<std::vector<LtOption>> opts;
    uint64_t total = 1;
};

LtChoices build_lt_choices(const InfluenceGraph& graph) {
    LtChoices c;
    for (uint32_t v = 0; v < graph.node_count(); ++v) {
        if (graph.in_degree(v) == 0) continue;
        std::vector<LtOption> o;
        for (const auto* it = graph.in_begin(v); it != graph.in_end(v); ++it) {
            if (it->value > 0.0) o.push_back({it->neighbor, it->value});
        }
        double none = 1.0 - graph.in_weight_sum(v);
        if (none > 0.0) o.push_back({UINT32_MAX, none});
        if (o.empty()) continue;
        if (o.size() == 1 && o[0].neighbor == UINT32_MAX) continue;
        c.total *= o.size();
        if (c.total > kMaxLtOutcomes) {
            throw InputError("exact enumeration infeasible: LT outcome count exceeds 2^22");
        }
        c.nodes.push_back(v);
        c.opts.push_back(std::move(o));
    }
    return c;
}

std::vector<Arc> random_ic_arcs(const InfluenceGraph& graph) {
    std::vector<Arc> random_arcs;
    for (const Arc& a : graph.arcs()) {
        if (a.value > 0.0 && a.value < 1.0) random_arcs.push_back(a);
    }
    if (random_arcs.size() > kMaxRandomIcArcs) {
        throw InputError("exact enumeration infeasible: " + std::to_string(random_arcs.size()) +
                         " random IC arcs (limit " + std::to_string(kMaxRandomIcArcs) + ")");
    }
    return random_arcs;
}

// Number of live-edge outcomes exact enumeration walks; throws if infeasible.
uint64_t outcome_count(const InfluenceGraph& graph) {
    if (graph.model() == DiffusionModel::IC) {
        return uint64_t{1} << random_ic_arcs(graph).size();
    }
    return build_lt_choices(graph).total;
}

// Enumerates every live-edge outcome, invoking cb(prob, live_out) with a
// reusable forward adjacency. Used by both exact_sigma and the evaluator.
void enumerate_outcomes(const InfluenceGraph& graph,
                        const std::function<void(double, const std::vector<std::vector<uint32_t>>&)>& cb) {
    const uint32_t n = graph.node_count();
    std::vector<std::vector<uint32_t>> live(n);

    if (graph.model() == DiffusionModel::IC) {
        std::vector<Arc> random_arcs = random_ic_arcs(graph);
        std::vector<Arc> certain_arcs;
        for (const Arc& a : graph.arcs()) {
            if (a.value == 1.0) certain_arcs.push_back(a);
        }
        const uint64_t outcomes = uint64_t{1} << random_arcs.size();
        for (uint64_t mask = 0; mask < outcomes; ++mask) {
            for (auto& l : live) l.clear();
            double prob = 1.0;
            for (const Arc& a : certain_arcs) live[a.src].push_back(a.dst);
            for (size_t i = 0; i < random_arcs.size(); ++i) {
                if (mask & (uint64_t{1} << i)) {
                    prob *= random_arcs[i].value;
                    live[random_arcs[i].src].push_back(random_arcs[i].dst);
                } else {
                    prob *= 1.0 - random_arcs[i].value;
                }
            }
            cb(prob, live);
        }
        return;
    }

    LtChoices c = build_lt_choices(graph);
    std::vector<size_t> choice(c.nodes.size(), 0);
    while (true) {
        for (auto& l : live) l.clear();
        double prob = 1.0;
        for (size_t i = 0; i < c.nodes.size(); ++i) {
            const LtOption& o = c.opts[i][choice[i]];
            prob *= o.prob;
            if (o.neighbor != UINT32_MAX) live[o.neighbor].push_back(c.nodes[i]);
        }
        cb(prob, live);
        size_t pos = 0;
        while (pos < c.nodes.size() && ++choice[pos] == c.opts[pos].size()) {
            choice[pos] = 0;
            ++pos;
        }
        if (pos == c.nodes.size()) break;
    }
}

uint64_t reachable_count(const std::vector<std::vector<uint32_t>>& live,
                         const std::vector<uint32_t>& seeds, Workspace& ws, uint32_t n) {
    ws.reset(n);
    for (uint32_t s : seeds) {
        if (ws.mark(s)) ws.queue.push_back(s);
    }
    for (size_t head = 0; head < ws.queue.size(); ++head) {
        for (uint32_t v : live[ws.queue[head]]) {
            if (ws.mark(v)) ws.queue.push_back(v);
        }
    }
    return ws.queue.size();
}

} // namespace

void RRSample::build_index() {
    set_sizes.resize(sets.size());
    index_offsets.assign(n + 1, 0);
    for (size_t i = 0; i < sets.size(); ++i) {
        set_sizes[i] = static_cast<uint32_t>(sets[i].members.size());
        for (uint32_t v : sets[i].members) index_offsets[v + 1]++;
    }
    for (uint32_t v = 0; v < n; ++v) index_offsets[v + 1] += index_offsets[v];
    index_data.resize(index_offsets[n]);
    std::vector<uint64_t> cursor(index_offsets.begin(), index_offsets.end() - 1);
    for (size_t i = 0; i < sets.size(); ++i) {
        for (uint32_t v : sets[i].members) {
            index_data[cursor[v]++] = static_cast<uint32_t>(i);
        }
    }
}

LiveEdgeOutcome sample_live_edge_outcome(const InfluenceGraph& graph, Rng& rng) {
    const uint32_t n = graph.node_count();
    LiveEdgeOutcome out;
    out.graph = &graph;
    out.triggering.resize(n);
    out.live_out.resize(n);
    for (uint32_t v = 0; v < n; ++v) {
        if (graph.model() == DiffusionModel::IC) {
            for (const auto* it = graph.in_begin(v); it != graph.in_end(v); ++it) {
                if (rng.next_unit() < it->value) out.triggering[v].push_back(it->neighbor);
            }
        } else {
            double x = rng.next_unit();
            double acc = 0.0;
            for (const auto* it = graph.in_begin(v); it != graph.in_end(v); ++it) {
                acc += it->value;
                if (x < acc) {
                    out.triggering[v].push_back(it->neighbor);
                    break;
                }
            }
        }
        for (uint32_t u : out.triggering[v]) out.live_out[u].push_back(v);
    }
    return out;
}

std::vector<uint32_t> forward_reachable(const LiveEdgeOutcome& outcome,
                                        const std::vector<uint32_t>& seeds) {
    Workspace ws;
    const uint32_t n = outcome.graph->node_count();
    reachable_count(outcome.live_out, seeds, ws, n);
    std::vector<uint32_t> result = ws.queue;
    std::sort(result.begin(), result.end());
    return result;
}

double simulate_sigma(const InfluenceGraph& graph, const std::vector<uint32_t>& seeds,
                      uint64_t trials, uint64_t base_seed) {
    if (trials == 0) throw InputError("simulate_sigma requires trials >= 1");
    Workspace ws;
    const uint32_t n = graph.node_count();
    uint64_t total = 0;
    for (uint64_t i = 0; i < trials; ++i) {
        Rng rng(base_seed, i);
        LiveEdgeOutcome outcome = sample_live_edge_outcome(graph, rng);
        total += reachable_count(outcome.live_out, seeds, ws, n);
    }
    return static_cast<double>(total) / static_cast<double>(trials);
}

double exact_sigma(const InfluenceGraph& graph, const std::vector<uint32_t>& seeds) {
    Workspace ws;
    const uint32_t n = graph.node_count();
    double acc = 0.0;
    enumerate_outcomes(graph, [&](double prob, const std::vector<std::vector<uint32_t>>& live) {
        acc += prob * static_cast<double>(reachable_count(live, seeds, ws, n));
    });
    return acc;
}

ExactSigmaEvaluator::ExactSigmaEvaluator(const InfluenceGraph& graph) : graph_(&graph) {
    const uint32_t n = graph.node_count();
    outcome_count_ = outcome_count(graph);
    cached_ = n <= 64 && outcome_count_ <= kCacheableOutcomes;
    if (!cached_) return;

    probs_.reserve(outcome_count_);
    reach_.reserve(outcome_count_ * n);
    Workspace ws;
    std::vector<uint32_t> single(1);
    enumerate_outcomes(graph, [&](double prob, const std::vector<std::vector<uint32_t>>& live) {
        probs_.push_back(prob);
        for (uint32_t v = 0; v < n; ++v) {
            single[0] = v;
            reachable_count(live, single, ws, n);
            uint64_t mask = 0;
            for (uint32_t u : ws.queue) mask |= uint64_t{1} << u;
            reach_.push_back(mask);
        }
    });
}

double ExactSigmaEvaluator::sigma(uint64_t seed_mask) const {
    const uint32_t n = graph_->node_count();
    if (!cached_) {
        std::vector<uint32_t> seeds;
        for (uint32_t v = 0; v < n && v < 64; ++v) {
            if (seed_mask & (uint64_t{1} << v)) seeds.push_back(v);
        }
        return exact_sigma(*graph_, seeds);
    }
    double acc = 0.0;
    for (size_t x = 0; x < probs_.size(); ++x) {
        uint64_t reach = 0;
        uint64_t rest = seed_mask;
        while (rest) {
            uint32_t v = static_cast<uint32_t>(std::countr_zero(rest));
            rest &= rest - 1;
            reach |= reach_[x * n + v];
        }
        acc += probs_[x] * static_cast<double>(std::popcount(reach));
    }
    return acc;
}

RRSet sample_rr_set(const InfluenceGraph& graph, Rng& rng) {
    Workspace ws;
    return sample_rr_set_into(graph, rng, ws);
}

RRSample sample_rr_collection(const InfluenceGraph& graph, uint64_t t, uint64_t base_seed,
                              unsigned worker_count, uint64_t max_total_members) {
    if (t == 0) throw InputError("sample_rr_collection requires t >= 1");
    if (t > UINT32_MAX) throw ResourceLimitError("sample_rr_collection: t exceeds index range");
    if (worker_count == 0) worker_count = 1;

    RRSample sample;
    sample.n = graph.node_count();
    sample.t = t;
    sample.base_seed = base_seed;
    sample.model = graph.model();
    sample.sets.resize(t);

    std::atomic<uint64_t> total_members{0};
    std::atomic<bool> over_cap{false};
    unsigned workers = static_cast<unsigned>(std::min<uint64_t>(worker_count, t));

    auto run = [&](unsigned w) {
        Workspace ws;
        for (uint64_t i = w; i < t; i += workers) {
            if (over_cap.load(std::memory_order_relaxed)) return;
            Rng rng(base_seed, i);
            sample.sets[i] = sample_rr_set_into(graph, rng, ws);
            uint64_t after = total_members.fetch_add(sample.sets[i].members.size(),
                                                     std::memory_order_relaxed) +
                             sample.sets[i].members.size();
            if (after > max_total_members) over_cap.store(true, std::memory_order_relaxed);
        }
    };

    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& th : pool) th.join();
    }
    if (over_cap.load()) {
        throw ResourceLimitError("sample_rr_collection: total RR-set members exceed cap of " +
                                 std::to_string(max_total_members));
    }
    sample.build_index();
    return sample;
}

namespace {

constexpr uint32_t kDumpMagic = 0x52534749; // "IGSR"
constexpr uint32_t kDumpVersion = 1;

template <typename T>
void write_pod(std::ostream& out, T value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_pod(std::istream& in) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) throw InputError("RR sample file truncated");
    return value;
}

} // namespace

void dump_rr_sample(const RRSample& sample, std::ostream& out) {
    write_pod(out, kDumpMagic);
    write_pod(out, kDumpVersion);
    write_pod(out, static_cast<uint32_t>(sample.model));
    write_pod(out, static_cast<uint64_t>(sample.n));
    write_pod(out, sample.t);
    write_pod(out, sample.base_seed);
    for (const RRSet& rr : sample.sets) {
        write_pod(out, rr.root);
        write_pod(out, static_cast<uint32_t>(rr.members.size()));
        out.write(reinterpret_cast<const char*>(rr.members.data()),
                  static_cast<std::streamsize>(rr.members.size() * sizeof(uint32_t)));
    }
}

void dump_rr_sample_file(const RRSample& sample, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open '" + path + "' for writing");
    dump_rr_sample(sample, out);
}

RRSample load_rr_sample(std::istream& in) {
    if (read_pod<uint32_t>(in) != kDumpMagic) throw InputError("not an RR sample file");
    if (read_pod<uint32_t>(in) != kDumpVersion) throw InputError("unsupported RR sample version");
    RRSample sample;
    sample.model = static_cast<DiffusionModel>(read_pod<uint32_t>(in));
    sample.n = static_cast<uint32_t>(read_pod<uint64_t>(in));
    sample.t = read_pod<uint64_t>(in);
    sample.base_seed = read_pod<uint64_t>(in);
    if (sample.t == 0) throw InputError("RR sample file has t = 0");
    sample.sets.resize(sample.t);
    for (RRSet& rr : sample.sets) {
        rr.root = read_pod<uint32_t>(in);
        uint32_t len = read_pod<uint32_t>(in);
        if (len == 0) throw InputError("RR sample file contains an empty set");
        rr.members.resize(len);
        in.read(reinterpret_cast<char*>(rr.members.data()),
                static_cast<std::streamsize>(len * sizeof(uint32_t)));
        if (!in) throw InputError("RR sample file truncated");
        for (uint32_t v : rr.members) {
            if (v >= sample.n) throw InputError("RR sample member out of range");
        }
        if (!std::is_sorted(rr.members.begin(), rr.members.end())) {
            throw InputError("RR sample members not sorted");
        }
        if (!std::binary_search(rr.members.begin(), rr.members.end(), rr.root)) {
            throw InputError("RR sample root missing from members");
        }
    }
    sample.build_index();
    return sample;
}

RRSample load_rr_sample_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open RR sample file '" + path + "'");
    return load_rr_sample(in);
}

} // namespace igs
