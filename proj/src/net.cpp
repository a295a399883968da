#include "egoref/net.hpp"

#include <algorithm>

namespace egoref {

std::vector<double> AffineStage::apply(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != cols) throw Error("affine stage: dimension mismatch");
    std::vector<double> y(rows, 0.0);
    for (int r = 0; r < rows; ++r) {
        double acc = bias[r];
        const double* w = weights.data() + static_cast<std::size_t>(r) * cols;
        for (int c = 0; c < cols; ++c) acc += w[c] * x[c];
        y[r] = row_relu(r) ? std::max(0.0, acc) : acc;
    }
    return y;
}

std::vector<double> Ffnn::apply(const std::vector<double>& x) const {
    std::vector<double> cur = x;
    for (const auto& stage : stages) cur = stage.apply(cur);
    return cur;
}

int GnnSpec::output_dim() const {
    return layers.empty() ? input_dim : layers.back().combine.output_dim();
}

void GnnSpec::validate() const {
    int dim = input_dim;
    for (const auto& layer : layers) {
        if (layer.combine.input_dim() != 2 * dim)
            throw Error("gnn layer combine expects dimension " + std::to_string(2 * dim));
        for (std::size_t s = 0; s + 1 < layer.combine.stages.size(); ++s)
            if (layer.combine.stages[s].rows != layer.combine.stages[s + 1].cols)
                throw Error("ffnn stage dimensions do not chain");
        dim = layer.combine.output_dim();
    }
}

int HeGnnSpec::inner_output_dim() const { return is_leaf() ? 0 : inner->output_dim(); }

HeGnnSpec he_leaf(GnnSpec gnn) { return HeGnnSpec{nullptr, std::move(gnn), std::nullopt}; }

HeGnnSpec he_node(HeGnnSpec inner, GnnSpec outer, std::optional<int> radius) {
    HeGnnSpec out;
    out.inner = std::make_shared<const HeGnnSpec>(std::move(inner));
    out.outer = std::move(outer);
    out.radius = radius;
    if (out.inner->input_dim() != out.input_dim() + 1)
        throw Error("hierarchical spec: inner input dim must be outer context dim + 1");
    return out;
}

Embedding multihot(const Graph& g) {
    Embedding emb(g.node_count(), std::vector<double>(g.universe().size(), 0.0));
    for (int v = 0; v < g.node_count(); ++v)
        for (int p : g.labels(v)) emb[v][p] = 1.0;
    return emb;
}

Embedding run_gnn(const GnnSpec& spec, const Graph& g, const Embedding& emb) {
    if (static_cast<int>(emb.size()) != g.node_count()) throw Error("embedding size mismatch");
    for (const auto& row : emb)
        if (static_cast<int>(row.size()) != spec.input_dim)
            throw Error("embedding dimension mismatch: expected " + std::to_string(spec.input_dim));
    Embedding cur = emb;
    for (const auto& layer : spec.layers) {
        int dim = cur.empty() ? 0 : static_cast<int>(cur[0].size());
        Embedding next(g.node_count());
        for (int v = 0; v < g.node_count(); ++v) {
            std::vector<double> input(cur[v]);
            std::vector<double> agg(dim, 0.0);
            for (int u : g.neighbors(v))
                for (int c = 0; c < dim; ++c) agg[c] += cur[u][c];
            input.insert(input.end(), agg.begin(), agg.end());
            next[v] = layer.combine.apply(input);
        }
        cur = std::move(next);
    }
    return cur;
}

Embedding run_hegnn(const HeGnnSpec& spec, const Graph& g, const Embedding& emb) {
    if (spec.is_leaf()) return run_gnn(spec.outer, g, emb);
    if (static_cast<int>(emb.size()) != g.node_count()) throw Error("embedding size mismatch");
    Embedding extended(g.node_count());
    for (int v = 0; v < g.node_count(); ++v) {
        std::vector<double> nested;
        if (spec.radius) {
            EgoSubgraph ego = ego_subgraph(g, v, *spec.radius);
            Embedding sub(ego.graph.node_count());
            for (int s = 0; s < ego.graph.node_count(); ++s) {
                sub[s] = emb[ego.to_orig[s]];
                sub[s].push_back(s == ego.to_sub[v] ? 1.0 : 0.0);
            }
            nested = run_hegnn(*spec.inner, ego.graph, sub)[ego.to_sub[v]];
        } else {
            Embedding marked(g.node_count());
            for (int u = 0; u < g.node_count(); ++u) {
                marked[u] = emb[u];
                marked[u].push_back(u == v ? 1.0 : 0.0);
            }
            nested = run_hegnn(*spec.inner, g, marked)[v];
        }
        extended[v] = emb[v];
        extended[v].insert(extended[v].end(), nested.begin(), nested.end());
    }
    return run_gnn(spec.outer, g, extended);
}

int classify(const GnnSpec& spec, const Graph& g, int v) {
    if (spec.output_dim() != 1) throw Error("classify requires output dimension 1");
    return run_gnn(spec, g, multihot(g))[v][0] > 0.5 ? 1 : 0;
}

int classify(const HeGnnSpec& spec, const Graph& g, int v) {
    if (spec.output_dim() != 1) throw Error("classify requires output dimension 1");
    return run_hegnn(spec, g, multihot(g))[v][0] > 0.5 ? 1 : 0;
}

namespace {

AffineStage identity_stage(int dim) {
    AffineStage s;
    s.rows = s.cols = dim;
    s.weights.assign(static_cast<std::size_t>(dim) * dim, 0.0);
    for (int i = 0; i < dim; ++i) s.weights[static_cast<std::size_t>(i) * dim + i] = 1.0;
    s.bias.assign(dim, 0.0);
    s.relu = false;
    return s;
}

// Combine that returns the own-embedding half unchanged (used for padding).
GnnLayer passthrough_layer(int dim) {
    AffineStage s;
    s.rows = dim;
    s.cols = 2 * dim;
    s.weights.assign(static_cast<std::size_t>(dim) * 2 * dim, 0.0);
    for (int i = 0; i < dim; ++i) s.weights[static_cast<std::size_t>(i) * 2 * dim + i] = 1.0;
    s.bias.assign(dim, 0.0);
    s.relu = false;
    return GnnLayer{Ffnn{{s}}};
}

// Block composition of per-member combine networks within one layer. The
// layer input is laid out as (own_1 .. own_m ++ agg_1 .. agg_m), so the first
// stage of each member reads a split column range; later stages chain the
// contiguous per-member outputs. Stage counts are padded with identities.
Ffnn layer_block(const std::vector<Ffnn>& members) {
    std::size_t stages = 0;
    for (const auto& m : members) stages = std::max(stages, m.stages.size());
    std::vector<std::vector<AffineStage>> padded;
    std::vector<int> half;  // member input dim D_j (first stage reads 2*D_j)
    for (const auto& m : members) {
        std::vector<AffineStage> s = m.stages;
        while (s.size() < stages) s.push_back(identity_stage(m.output_dim()));
        half.push_back(m.input_dim() / 2);
        padded.push_back(std::move(s));
    }
    int total_half = 0;
    for (int h : half) total_half += h;

    Ffnn out;
    for (std::size_t si = 0; si < stages; ++si) {
        AffineStage stage;
        int rows = 0, cols = 0;
        for (const auto& p : padded) {
            rows += p[si].rows;
            cols += p[si].cols;
        }
        stage.rows = rows;
        stage.cols = cols;
        stage.weights.assign(static_cast<std::size_t>(rows) * cols, 0.0);
        stage.bias.assign(rows, 0.0);
        stage.relu_mask.assign(rows, 0);
        int row_off = 0, col_off = 0, own_off = 0;
        for (std::size_t j = 0; j < padded.size(); ++j) {
            const AffineStage& s = padded[j][si];
            auto source_col = [&](int c) {
                if (si > 0) return col_off + c;
                // Split layout: own part then the aggregate part.
                return c < half[j] ? own_off + c : total_half + own_off + (c - half[j]);
            };
            for (int r = 0; r < s.rows; ++r) {
                stage.bias[row_off + r] = s.bias[r];
                stage.relu_mask[row_off + r] = s.row_relu(r) ? 1 : 0;
                for (int c = 0; c < s.cols; ++c)
                    stage.weights[static_cast<std::size_t>(row_off + r) * cols + source_col(c)] =
                        s.weights[static_cast<std::size_t>(r) * s.cols + c];
            }
            row_off += s.rows;
            col_off += s.cols;
            own_off += half[j];
        }
        // Collapse the mask when uniform.
        bool all = true, none = true;
        for (auto m : stage.relu_mask) (m ? none : all) = false;
        if (all || none) {
            stage.relu = all;
            stage.relu_mask.clear();
        }
        out.stages.push_back(std::move(stage));
    }
    return out;
}

// First layer of a concatenated network: copies the D-dimensional own
// embedding m times (the aggregate half is ignored).
GnnLayer copy_layer(int d, int m) {
    AffineStage s;
    s.rows = d * m;
    s.cols = 2 * d;
    s.weights.assign(static_cast<std::size_t>(s.rows) * s.cols, 0.0);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < d; ++i)
            s.weights[static_cast<std::size_t>(j * d + i) * s.cols + i] = 1.0;
    s.bias.assign(s.rows, 0.0);
    s.relu = false;
    return GnnLayer{Ffnn{{s}}};
}

std::vector<GnnSpec> pad_to_same_depth(const std::vector<GnnSpec>& specs) {
    std::size_t depth = 0;
    for (const auto& s : specs) depth = std::max(depth, s.layers.size());
    std::vector<GnnSpec> out = specs;
    for (auto& s : out)
        while (s.layers.size() < depth) s.layers.push_back(passthrough_layer(s.output_dim()));
    return out;
}

}  // namespace

GnnSpec concat(const std::vector<GnnSpec>& specs) {
    if (specs.empty()) throw Error("concat: empty spec list");
    if (specs.size() == 1) return specs[0];
    int d = specs[0].input_dim;
    for (const auto& s : specs)
        if (s.input_dim != d) throw Error("concat: input dimensions differ");
    auto members = pad_to_same_depth(specs);
    std::size_t depth = members[0].layers.size();

    GnnSpec out;
    out.input_dim = d;
    out.layers.push_back(copy_layer(d, static_cast<int>(members.size())));
    for (std::size_t l = 0; l < depth; ++l) {
        std::vector<Ffnn> combines;
        for (const auto& m : members) combines.push_back(m.layers[l].combine);
        out.layers.push_back(GnnLayer{layer_block(combines)});
    }
    out.validate();
    return out;
}

namespace {

// Outer network of a hierarchical concatenation: the input is
// (v ++ y_1 ++ ... ++ y_m) and each member outer expects (v ++ y_j).
GnnLayer rearrange_layer(int d, const std::vector<int>& inner_dims) {
    int total_inner = 0;
    for (int id : inner_dims) total_inner += id;
    AffineStage s;
    s.cols = 2 * (d + total_inner);
    s.rows = 0;
    for (int id : inner_dims) s.rows += d + id;
    s.weights.assign(static_cast<std::size_t>(s.rows) * s.cols, 0.0);
    s.bias.assign(s.rows, 0.0);
    s.relu = false;
    int row = 0, inner_off = d;
    for (int id : inner_dims) {
        for (int i = 0; i < d; ++i)
            s.weights[static_cast<std::size_t>(row + i) * s.cols + i] = 1.0;
        for (int i = 0; i < id; ++i)
            s.weights[static_cast<std::size_t>(row + d + i) * s.cols + (inner_off + i)] = 1.0;
        row += d + id;
        inner_off += id;
    }
    return GnnLayer{Ffnn{{s}}};
}

}  // namespace

HeGnnSpec concat(const std::vector<HeGnnSpec>& specs) {
    if (specs.empty()) throw Error("concat: empty spec list");
    if (specs.size() == 1) return specs[0];
    for (const auto& s : specs) {
        if (s.depth() != specs[0].depth()) throw Error("concat: nesting depths differ");
        if (s.radius != specs[0].radius) throw Error("concat: radii differ");
        if (s.input_dim() != specs[0].input_dim()) throw Error("concat: input dimensions differ");
    }
    if (specs[0].is_leaf()) {
        std::vector<GnnSpec> leaves;
        for (const auto& s : specs) leaves.push_back(s.outer);
        return he_leaf(concat(leaves));
    }

    std::vector<HeGnnSpec> inners;
    std::vector<int> inner_dims;
    for (const auto& s : specs) {
        inners.push_back(*s.inner);
        inner_dims.push_back(s.inner_output_dim());
    }
    HeGnnSpec inner = concat(inners);

    int d = specs[0].input_dim();
    auto outers = pad_to_same_depth([&] {
        std::vector<GnnSpec> out;
        for (const auto& s : specs) out.push_back(s.outer);
        return out;
    }());
    GnnSpec outer;
    outer.input_dim = d + inner.output_dim();
    outer.layers.push_back(rearrange_layer(d, inner_dims));
    for (std::size_t l = 0; l < outers[0].layers.size(); ++l) {
        std::vector<Ffnn> combines;
        for (const auto& m : outers) combines.push_back(m.layers[l].combine);
        outer.layers.push_back(GnnLayer{layer_block(combines)});
    }
    outer.validate();
    return he_node(std::move(inner), std::move(outer), specs[0].radius);
}

namespace {

nlohmann::json stage_to_json(const AffineStage& s) {
    nlohmann::json j = {{"rows", s.rows},
                        {"cols", s.cols},
                        {"weights", s.weights},
                        {"bias", s.bias},
                        {"relu", s.relu}};
    if (!s.relu_mask.empty()) j["relu_mask"] = s.relu_mask;
    return j;
}

AffineStage stage_from_json(const nlohmann::json& j) {
    AffineStage s;
    s.rows = j.at("rows").get<int>();
    s.cols = j.at("cols").get<int>();
    s.weights = j.at("weights").get<std::vector<double>>();
    s.bias = j.at("bias").get<std::vector<double>>();
    s.relu = j.at("relu").get<bool>();
    if (j.contains("relu_mask")) s.relu_mask = j.at("relu_mask").get<std::vector<std::uint8_t>>();
    if (static_cast<int>(s.weights.size()) != s.rows * s.cols ||
        static_cast<int>(s.bias.size()) != s.rows)
        throw Error("spec json: stage shape mismatch");
    if (!s.relu_mask.empty() && static_cast<int>(s.relu_mask.size()) != s.rows)
        throw Error("spec json: relu mask shape mismatch");
    return s;
}

}  // namespace

nlohmann::json gnn_to_json(const GnnSpec& spec) {
    nlohmann::json layers = nlohmann::json::array();
    for (const auto& layer : spec.layers) {
        nlohmann::json stages = nlohmann::json::array();
        for (const auto& s : layer.combine.stages) stages.push_back(stage_to_json(s));
        layers.push_back({{"combine", stages}});
    }
    return {{"format", 1}, {"kind", "gnn"}, {"input_dim", spec.input_dim}, {"layers", layers}};
}

GnnSpec gnn_from_json(const nlohmann::json& j) {
    if (j.at("format").get<int>() != 1) throw Error("spec json: unsupported format");
    if (j.at("kind").get<std::string>() != "gnn") throw Error("spec json: expected kind 'gnn'");
    GnnSpec spec;
    spec.input_dim = j.at("input_dim").get<int>();
    for (const auto& lj : j.at("layers")) {
        GnnLayer layer;
        for (const auto& sj : lj.at("combine")) layer.combine.stages.push_back(stage_from_json(sj));
        spec.layers.push_back(std::move(layer));
    }
    spec.validate();
    return spec;
}

nlohmann::json hegnn_to_json(const HeGnnSpec& spec) {
    if (spec.is_leaf()) return gnn_to_json(spec.outer);
    nlohmann::json j = {{"format", 1},
                        {"kind", "hegnn"},
                        {"inner", hegnn_to_json(*spec.inner)},
                        {"outer", gnn_to_json(spec.outer)}};
    if (spec.radius)
        j["radius"] = *spec.radius;
    else
        j["radius"] = nullptr;
    return j;
}

HeGnnSpec hegnn_from_json(const nlohmann::json& j) {
    if (j.at("kind").get<std::string>() == "gnn") return he_leaf(gnn_from_json(j));
    if (j.at("format").get<int>() != 1) throw Error("spec json: unsupported format");
    if (j.at("kind").get<std::string>() != "hegnn") throw Error("spec json: unknown kind");
    HeGnnSpec inner = hegnn_from_json(j.at("inner"));
    GnnSpec outer = gnn_from_json(j.at("outer"));
    std::optional<int> radius;
    if (!j.at("radius").is_null()) radius = j.at("radius").get<int>();
    return he_node(std::move(inner), std::move(outer), radius);
}

nlohmann::json spec_to_json(const HeGnnSpec& spec) { return hegnn_to_json(spec); }

HeGnnSpec spec_from_json(const nlohmann::json& j) { return hegnn_from_json(j); }

}  // namespace egoref
