#include "igs/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "igs/errors.hpp"

namespace igs {

namespace {

constexpr double kLtWeightTolerance = 1e-12;

double parse_value(const std::string& token, size_t line_no) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw InputError("line " + std::to_string(line_no) + ": cannot parse value '" + token + "'");
    }
    return v;
}

} // namespace

const char* model_name(DiffusionModel model) {
    return model == DiffusionModel::IC ? "ic" : "lt";
}

DiffusionModel parse_model(const std::string& name) {
    if (name == "ic" || name == "IC") return DiffusionModel::IC;
    if (name == "lt" || name == "LT") return DiffusionModel::LT;
    throw InputError("unknown diffusion model '" + name + "' (expected 'ic' or 'lt')");
}

std::optional<std::string> validate(uint32_t n, const std::vector<Arc>& arcs, DiffusionModel model) {
    if (n < 2) {
        return "graph has " + std::to_string(n) + " nodes; at least 2 required";
    }
    std::unordered_set<uint64_t> seen;
    seen.reserve(arcs.size());
    std::vector<double> in_sum(n, 0.0);
    for (size_t i = 0; i < arcs.size(); ++i) {
        const Arc& a = arcs[i];
        if (a.src >= n || a.dst >= n) {
            return "arc " + std::to_string(i) + " references node id out of range";
        }
        if (a.src == a.dst) {
            return "self-loop at node " + std::to_string(a.src);
        }
        if (!(a.value >= 0.0 && a.value <= 1.0)) {
            return "arc (" + std::to_string(a.src) + "," + std::to_string(a.dst) +
                   ") has value " + std::to_string(a.value) + " outside [0,1]";
        }
        uint64_t key = (static_cast<uint64_t>(a.src) << 32) | a.dst;
        if (!seen.insert(key).second) {
            return "duplicate arc (" + std::to_string(a.src) + "," + std::to_string(a.dst) + ")";
        }
        in_sum[a.dst] += a.value;
    }
    if (model == DiffusionModel::LT) {
        for (uint32_t v = 0; v < n; ++v) {
            if (in_sum[v] > 1.0 + kLtWeightTolerance) {
                return "node " + std::to_string(v) + " has LT in-weight sum " +
                       std::to_string(in_sum[v]) + " > 1";
            }
        }
    }
    return std::nullopt;
}

void InfluenceGraph::build_adjacency() {
    in_offsets_.assign(n_ + 1, 0);
    for (const Arc& a : arcs_) in_offsets_[a.dst + 1]++;
    for (uint32_t v = 0; v < n_; ++v) in_offsets_[v + 1] += in_offsets_[v];
    in_list_.resize(arcs_.size());
    std::vector<uint64_t> cursor(in_offsets_.begin(), in_offsets_.end() - 1);
    for (const Arc& a : arcs_) {
        in_list_[cursor[a.dst]++] = InArc{a.src, a.value};
    }
    in_weight_sum_.assign(n_, 0.0);
    for (uint32_t v = 0; v < n_; ++v) {
        double s = 0.0;
        for (const InArc* it = in_begin(v); it != in_end(v); ++it) s += it->value;
        in_weight_sum_[v] = s;
    }
}

InfluenceGraph InfluenceGraph::from_arcs(uint32_t n, std::vector<Arc> arcs, DiffusionModel model) {
    if (auto violation = validate(n, arcs, model)) {
        throw InputError(*violation);
    }
    InfluenceGraph g;
    g.n_ = n;
    g.model_ = model;
    g.arcs_ = std::move(arcs);
    g.labels_.reserve(n);
    for (uint32_t v = 0; v < n; ++v) {
        g.labels_.push_back(std::to_string(v));
        g.label_to_id_.emplace(g.labels_.back(), v);
    }
    g.build_adjacency();
    return g;
}

std::optional<uint32_t> InfluenceGraph::id_of(const std::string& label) const {
    auto it = label_to_id_.find(label);
    if (it == label_to_id_.end()) return std::nullopt;
    return it->second;
}

InfluenceGraph load_edge_list(std::istream& in, DiffusionModel model) {
    InfluenceGraph g;
    g.model_ = model;
    std::string line;
    size_t line_no = 0;
    auto intern = [&g](const std::string& label) -> uint32_t {
        auto it = g.label_to_id_.find(label);
        if (it != g.label_to_id_.end()) return it->second;
        uint32_t id = static_cast<uint32_t>(g.labels_.size());
        g.labels_.push_back(label);
        g.label_to_id_.emplace(label, id);
        return id;
    };
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string src, dst, val, extra;
        if (!(ls >> src)) continue;       // blank line
        if (src[0] == '#') continue;      // comment
        if (!(ls >> dst >> val)) {
            throw InputError("line " + std::to_string(line_no) + ": expected '<src> <dst> <value>'");
        }
        if (ls >> extra) {
            throw InputError("line " + std::to_string(line_no) + ": trailing token '" + extra + "'");
        }
        double v = parse_value(val, line_no);
        g.arcs_.push_back(Arc{intern(src), intern(dst), v});
    }
    g.n_ = static_cast<uint32_t>(g.labels_.size());
    if (auto violation = validate(g.n_, g.arcs_, model)) {
        throw InputError(*violation);
    }
    g.build_adjacency();
    return g;
}

InfluenceGraph load_edge_list_text(const std::string& text, DiffusionModel model) {
    std::istringstream in(text);
    return load_edge_list(in, model);
}

InfluenceGraph load_edge_list_file(const std::string& path, DiffusionModel model) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open graph file '" + path + "'");
    return load_edge_list(in, model);
}

std::string serialize_edge_list(const InfluenceGraph& graph) {
    std::ostringstream out;
    out.precision(17);
    for (const Arc& a : graph.arcs()) {
        out << graph.label(a.src) << ' ' << graph.label(a.dst) << ' ' << a.value << '\n';
    }
    return out.str();
}

std::vector<uint32_t> resolve_labels(const InfluenceGraph& graph,
                                     const std::vector<std::string>& labels) {
    std::vector<uint32_t> ids;
    ids.reserve(labels.size());
    for (const std::string& label : labels) {
        auto id = graph.id_of(label);
        if (!id) throw InputError("unknown node label '" + label + "'");
        ids.push_back(*id);
    }
    return ids;
}

} // namespace igs
