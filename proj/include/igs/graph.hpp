#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace igs {

enum class DiffusionModel : uint8_t { IC = 0, LT = 1 };

const char* model_name(DiffusionModel model);
DiffusionModel parse_model(const std::string& name); // "ic" | "lt"

struct Arc {
    uint32_t src = 0;
    uint32_t dst = 0;
    double value = 0.0; // probability (IC) or weight (LT), in [0,1]
};

// Directed influence graph over dense node ids 0..n-1. Immutable after
// construction; safe to share across sampling workers.
class InfluenceGraph {
public:
    // Validates all invariants; throws InputError on violation.
    static InfluenceGraph from_arcs(uint32_t n, std::vector<Arc> arcs, DiffusionModel model);

    uint32_t node_count() const { return n_; }
    DiffusionModel model() const { return model_; }
    const std::vector<Arc>& arcs() const { return arcs_; }

    // In-neighbors of v as (neighbor, value) pairs, CSR layout.
    struct InArc {
        uint32_t neighbor;
        double value;
    };
    const InArc* in_begin(uint32_t v) const { return in_list_.data() + in_offsets_[v]; }
    const InArc* in_end(uint32_t v) const { return in_list_.data() + in_offsets_[v + 1]; }
    uint32_t in_degree(uint32_t v) const {
        return static_cast<uint32_t>(in_offsets_[v + 1] - in_offsets_[v]);
    }
    double in_weight_sum(uint32_t v) const { return in_weight_sum_[v]; }

    // External labels. Graphs built from arcs get decimal-id labels.
    const std::string& label(uint32_t id) const { return labels_[id]; }
    std::optional<uint32_t> id_of(const std::string& label) const;

private:
    uint32_t n_ = 0;
    DiffusionModel model_ = DiffusionModel::IC;
    std::vector<Arc> arcs_;
    std::vector<uint64_t> in_offsets_;
    std::vector<InArc> in_list_;
    std::vector<double> in_weight_sum_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, uint32_t> label_to_id_;

    friend InfluenceGraph load_edge_list(std::istream&, DiffusionModel);
    void build_adjacency();
};

// Parses the edge-list text format: one `<src> <dst> <value>` arc per line,
// whitespace separated, `#` starts a comment line. Labels are mapped to
// dense ids in first-appearance order. Throws InputError with the offending
// line number on malformed input.
InfluenceGraph load_edge_list(std::istream& in, DiffusionModel model);
InfluenceGraph load_edge_list_text(const std::string& text, DiffusionModel model);
InfluenceGraph load_edge_list_file(const std::string& path, DiffusionModel model);

// Writes the graph back in the edge-list format using its labels.
std::string serialize_edge_list(const InfluenceGraph& graph);

// Returns std::nullopt if all invariants hold, otherwise a description of
// the first violation found.
std::optional<std::string> validate(uint32_t n, const std::vector<Arc>& arcs, DiffusionModel model);

// Maps node labels to ids; throws InputError on unknown labels.
std::vector<uint32_t> resolve_labels(const InfluenceGraph& graph,
                                     const std::vector<std::string>& labels);

} // namespace igs
