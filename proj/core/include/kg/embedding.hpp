#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kg/graph.hpp"
#include "kg/tensor.hpp"

namespace kg {

enum class ModelKind { TransE, TransH, DistMult, RESCAL, ComplEx };

// Accepts "transe", "transh", "distmult", "rescal", "complex".
ModelKind parse_model_kind(std::string_view name);
std::string_view to_string(ModelKind kind);

// Entity/relation embeddings plus model-specific extras. Real models store
// order-1 tensors of length d_e (RESCAL relations are d_e × d_e matrices);
// complex vectors are stored interleaved (re0, im0, re1, im1, ...) with
// length 2·d_e. TransH keeps one hyperplane normal per label under the aux
// key "w:<label>"; q is the TransE norm exponent.
struct EmbeddingModel {
  ModelKind kind = ModelKind::TransE;
  std::size_t d_e = 0;
  std::size_t d_r = 0;
  std::uint64_t seed = 0;
  int q = 2;
  std::map<std::string, Tensor> entity_emb;
  std::map<std::string, Tensor> relation_emb;
  std::map<std::string, Tensor> aux;

  bool operator==(const EmbeddingModel&) const = default;
};

struct ScoredEdge {
  std::array<std::string, 3> edge;
  double score = 0.0;
};

struct TrainConfig {
  std::size_t dim = 50;
  std::size_t epochs = 100;
  double learning_rate = 0.01;
  double margin = 1.0;
  std::size_t negatives_per_positive = 2;
  std::uint64_t seed = 42;
  int p = 2;  // TransE norm exponent
};

// Plausibility of one edge under the model's scoring function. Nodes or
// labels outside the model's vocabulary raise Error.
double score(const EmbeddingModel& m, const std::array<std::string, 3>& edge);

// Gradient of score with respect to every parameter it touches, keyed
// "e:<node>", "r:<label>", "w:<label>". A self-loop's subject and object
// contributions land in one "e:" entry.
std::map<std::string, Tensor> score_gradient(const EmbeddingModel& m,
                                             const std::array<std::string, 3>& edge);

// SGD over margin-ranking loss max(0, margin − score(pos) + score(neg)),
// negatives drawn by corrupting one endpoint with a uniformly chosen node
// until the result is not an edge of g. Norm constraints are re-projected
// after every update, so they hold at each epoch boundary. Deterministic
// for a fixed config; single-threaded.
EmbeddingModel train(const Graph& g, ModelKind kind, const TrainConfig& cfg);

// Scores (s, p, x) for every node x the model knows and returns the top k,
// best first, ties broken by node name.
std::vector<std::pair<std::string, double>> predict(const EmbeddingModel& m,
                                                    const std::string& s,
                                                    const std::string& p,
                                                    std::size_t k);

// Model persistence:
//   H<TAB>kind<TAB>d_e<TAB>d_r<TAB>seed
//   AUX<TAB>q<TAB>2            (TransE norm exponent)
//   AUX<TAB>w:label<TAB>v1 v2 ...
//   E<TAB>node<TAB>v1 v2 ...
//   R<TAB>label<TAB>v1 v2 ...
// Rows are sorted, values are shortest round-trip decimals. Loading keeps
// the stored coordinates as-is; nothing is re-projected.
std::string to_model_tsv(const EmbeddingModel& m);
EmbeddingModel parse_model_tsv(std::string_view text);

}  // namespace kg
