#pragma once

#include <Eigen/Sparse>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hofj/polynomial.hpp"

namespace hofj {

using SparseMat = Eigen::SparseMatrix<double>;

enum class SamplingMode { LiteralUniform, WeightProportional };

SamplingMode sampling_mode_from_name(const std::string& name);
std::string sampling_mode_name(SamplingMode m);

struct SparsifierConfig {
  std::int64_t sample_budget = 0;  // M, the number of sampled edges
  SamplingMode mode = SamplingMode::LiteralUniform;
  std::uint64_t seed = 0;
  bool record_diagnostics = true;

  void validate() const;
};

/// A length-r walk (u_0,...,u_r) through a picked edge, with the path
/// statistic z = sum over traversed edges of 2 / w.
struct SampledPath {
  std::vector<NodeId> nodes;
  int r = 0;
  double z = 0.0;
};

/// Sampled multigraph merged into a Laplacian surrogate for L_beta, plus
/// sampling diagnostics.
struct SparsifierOutput {
  SparseMat laplacian;
  std::vector<Edge> merged_edges;  // canonical u < v, sorted, weights > 0
  std::int64_t merged_edge_count = 0;
  std::int64_t self_loop_samples = 0;
  std::vector<std::int64_t> per_r_counts;
  double total_added_weight = 0.0;
  double self_loop_weight = 0.0;  // included in total_added_weight, not in the Laplacian
  std::optional<double> epsilon_estimate;
  SamplingMode mode = SamplingMode::LiteralUniform;
  std::uint64_t seed = 0;
  std::int64_t sample_budget = 0;
};

/// Draws length-r paths: pick an edge (uniformly over E, or with probability
/// w_e / total weight in weight-proportional mode), split uniformly at
/// k in {1..r}, walk (k-1) steps from one endpoint and (r-k) from the other.
class PathSampler {
 public:
  PathSampler(const WeightedGraph& g, SamplingMode mode);
  SampledPath sample(int r, RandomStream& rng) const;

 private:
  const WeightedGraph* g_;
  SamplingMode mode_;
  std::vector<double> edge_cumw_;  // built only in weight-proportional mode
};

/// One-off convenience wrapper around PathSampler.
SampledPath path_sample(const WeightedGraph& g, int r, RandomStream& rng,
                        SamplingMode mode = SamplingMode::LiteralUniform);

/// Monte-Carlo sparsifier for L_beta: M independent path samples, each
/// contributing one weighted endpoint pair; parallel contributions merge by
/// weight summation and samples with u_0 = u_r are counted but contribute
/// nothing. In literal-uniform mode r is drawn uniformly from {1..T} and the
/// added weight is 2 r m T beta_r / (M z); in weight-proportional mode r is
/// drawn with probability beta_r and the weight is 2 r m / (M z). Both give
/// E[L_tilde] = L_beta; r with beta_r = 0 contribute zero weight in literal
/// mode. Deterministic given (seed, mode).
SparsifierOutput build_sparsifier(const WeightedGraph& g, const PolynomialSpec& spec,
                                  const SparsifierConfig& cfg);

struct SimilarityResult {
  double max_ratio = 0.0;
  double min_ratio = 0.0;
  double epsilon_estimate = 0.0;
  int degenerate_count = 0;  // vectors with vanishing surrogate quadratic form
  int trials = 0;
};

/// Ratios (x' L_beta x) / (x' L_tilde x) over random mean-zero vectors;
/// epsilon_estimate = max(max_ratio - 1, 1 - min_ratio). Degenerate vectors
/// (zero surrogate form, a disconnected-sparsifier signal) are counted, not
/// fatal; with no usable vector the estimate is NaN.
SimilarityResult spectral_similarity_check(const DenseOperator& l_beta,
                                           const SparseMat& l_tilde, int trials,
                                           RandomStream& rng);

/// Largest singular value of D^{-1} (L_tilde - L_beta), dense computation.
double singular_gap_estimate(const WeightedGraph& g, const DenseOperator& l_beta,
                             const SparseMat& l_tilde,
                             std::size_t dense_cap = kDefaultDenseCap);

}  // namespace hofj
