#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include <json.hpp>

#include "egoref/graph.hpp"

namespace egoref {

// One affine stage y = W x + b, optionally followed by ReLU. Weights are
// stored row-major; all compiled constructions use integer entries, so
// evaluation of integer inputs stays exact. Concatenated specs may mix
// activated and plain rows in one stage; `relu_mask` (when nonempty)
// overrides `relu` per row.
struct AffineStage {
    int rows = 0;
    int cols = 0;
    std::vector<double> weights;  // rows x cols, row-major
    std::vector<double> bias;     // rows
    bool relu = true;
    std::vector<std::uint8_t> relu_mask;

    bool row_relu(int r) const { return relu_mask.empty() ? relu : relu_mask[r] != 0; }
    std::vector<double> apply(const std::vector<double>& x) const;
};

struct Ffnn {
    std::vector<AffineStage> stages;

    int input_dim() const { return stages.empty() ? 0 : stages.front().cols; }
    int output_dim() const { return stages.empty() ? 0 : stages.back().rows; }
    std::vector<double> apply(const std::vector<double>& x) const;
};

// Message-passing layer: neighbor Sum aggregation, then the combine network
// on (own embedding concat aggregate).
struct GnnLayer {
    Ffnn combine;  // input dim 2*D_i, output dim D_{i+1}
};

struct GnnSpec {
    int input_dim = 0;
    std::vector<GnnLayer> layers;  // empty = identity network

    int output_dim() const;
    void validate() const;
};

// Hierarchical spec: a leaf wraps a plain network; an inner node runs its
// inner spec on the (radius-restricted) marked copy per node, concatenates
// the result to the embedding, and runs the outer network on the whole graph.
struct HeGnnSpec {
    std::shared_ptr<const HeGnnSpec> inner;  // null for a leaf
    GnnSpec outer;
    std::optional<int> radius;  // meaningful when inner != null; empty = unbounded

    bool is_leaf() const { return inner == nullptr; }
    int input_dim() const { return is_leaf() ? outer.input_dim : outer.input_dim - inner_output_dim(); }
    int inner_output_dim() const;
    int output_dim() const { return outer.output_dim(); }
    int depth() const { return is_leaf() ? 0 : inner->depth() + 1; }
};

HeGnnSpec he_leaf(GnnSpec gnn);
HeGnnSpec he_node(HeGnnSpec inner, GnnSpec outer, std::optional<int> radius);

using Embedding = std::vector<std::vector<double>>;  // per node

// Multi-hot label encoding over the graph's universe.
Embedding multihot(const Graph& g);

Embedding run_gnn(const GnnSpec& spec, const Graph& g, const Embedding& emb);
Embedding run_hegnn(const HeGnnSpec& spec, const Graph& g, const Embedding& emb);

// 1 iff the scalar output exceeds 1/2 (compiled nets emit exact {0,1}).
int classify(const GnnSpec& spec, const Graph& g, int v);
int classify(const HeGnnSpec& spec, const Graph& g, int v);

// Output concatenation: run(concat(specs))(v) = run(spec_1)(v) ++ ... for all
// inputs, bit-exactly. Members must share the input dimension (and nesting
// depth and radius in the hierarchical case).
GnnSpec concat(const std::vector<GnnSpec>& specs);
HeGnnSpec concat(const std::vector<HeGnnSpec>& specs);

nlohmann::json gnn_to_json(const GnnSpec& spec);
GnnSpec gnn_from_json(const nlohmann::json& j);
nlohmann::json hegnn_to_json(const HeGnnSpec& spec);
HeGnnSpec hegnn_from_json(const nlohmann::json& j);

// Serialized form of either spec kind; dispatches on the "kind" field.
nlohmann::json spec_to_json(const HeGnnSpec& spec);
HeGnnSpec spec_from_json(const nlohmann::json& j);

}  // namespace egoref
