#include "hofj/sparsifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace hofj {

namespace {

std::uint64_t pair_key(NodeId a, NodeId b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint64_t>(static_cast<std::uint32_t>(b));
}

}  // namespace

SamplingMode sampling_mode_from_name(const std::string& name) {
  if (name == "literal-uniform") return SamplingMode::LiteralUniform;
  if (name == "weight-proportional") return SamplingMode::WeightProportional;
  throw std::invalid_argument("unknown sampling mode '" + name +
                              "' (expected literal-uniform or weight-proportional)");
}

std::string sampling_mode_name(SamplingMode m) {
  return m == SamplingMode::LiteralUniform ? "literal-uniform" : "weight-proportional";
}

void SparsifierConfig::validate() const {
  if (sample_budget < 1)
    throw std::invalid_argument("sparsifier: sample budget M must be >= 1");
}

PathSampler::PathSampler(const WeightedGraph& g, SamplingMode mode) : g_(&g), mode_(mode) {
  if (mode_ == SamplingMode::WeightProportional) {
    edge_cumw_.reserve(static_cast<std::size_t>(g.edge_count()));
    double run = 0.0;
    for (const Edge& e : g.edges()) {
      run += e.w;
      edge_cumw_.push_back(run);
    }
  }
}

SampledPath PathSampler::sample(int r, RandomStream& rng) const {
  if (r < 1) throw std::invalid_argument("path_sample: r must be >= 1");

  std::size_t edge_index;
  if (mode_ == SamplingMode::LiteralUniform) {
    edge_index = static_cast<std::size_t>(
        rng.uniform_index(static_cast<std::uint64_t>(g_->edge_count())));
  } else {
    const double x = rng.uniform01() * edge_cumw_.back();
    auto it = std::upper_bound(edge_cumw_.begin(), edge_cumw_.end(), x);
    if (it == edge_cumw_.end()) --it;
    edge_index = static_cast<std::size_t>(it - edge_cumw_.begin());
  }
  const Edge e = g_->edges()[edge_index];

  const int k = 1 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(r)));

  SampledPath p;
  p.r = r;
  p.nodes.assign(static_cast<std::size_t>(r) + 1, 0);
  p.z = 2.0 / e.w;

  // Positions k-1 .. 0: a (k-1)-step walk from one endpoint of e.
  p.nodes[static_cast<std::size_t>(k - 1)] = e.u;
  NodeId cur = e.u;
  for (int i = k - 2; i >= 0; --i) {
    const auto [next, w] = g_->sample_neighbor_weighted(cur, rng);
    p.z += 2.0 / w;
    p.nodes[static_cast<std::size_t>(i)] = next;
    cur = next;
  }
  // Positions k .. r: an (r-k)-step walk from the other endpoint.
  p.nodes[static_cast<std::size_t>(k)] = e.v;
  cur = e.v;
  for (int i = k + 1; i <= r; ++i) {
    const auto [next, w] = g_->sample_neighbor_weighted(cur, rng);
    p.z += 2.0 / w;
    p.nodes[static_cast<std::size_t>(i)] = next;
    cur = next;
  }
  return p;
}

SampledPath path_sample(const WeightedGraph& g, int r, RandomStream& rng, SamplingMode mode) {
  return PathSampler(g, mode).sample(r, rng);
}

SparsifierOutput build_sparsifier(const WeightedGraph& g, const PolynomialSpec& spec,
                                  const SparsifierConfig& cfg) {
  spec.validate();
  cfg.validate();

  const int t_degree = spec.degree();
  const double m = static_cast<double>(g.edge_count());
  const double budget = static_cast<double>(cfg.sample_budget);
  RandomStream rng = RandomStream::derive(cfg.seed, 0);
  PathSampler sampler(g, cfg.mode);

  std::vector<double> beta_cum(spec.beta.size());
  double beta_total = 0.0;
  for (std::size_t i = 0; i < spec.beta.size(); ++i) {
    beta_total += spec.beta[i];
    beta_cum[i] = beta_total;
  }

  SparsifierOutput out;
  out.mode = cfg.mode;
  out.seed = cfg.seed;
  out.sample_budget = cfg.sample_budget;
  out.per_r_counts.assign(static_cast<std::size_t>(t_degree), 0);

  std::unordered_map<std::uint64_t, double> acc;
  acc.reserve(static_cast<std::size_t>(std::min<std::int64_t>(cfg.sample_budget, 1 << 22)));

  for (std::int64_t i = 0; i < cfg.sample_budget; ++i) {
    int r;
    double scale;  // added weight is scale / z
    if (cfg.mode == SamplingMode::LiteralUniform) {
      r = 1 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(t_degree)));
      const double beta_r = spec.beta[static_cast<std::size_t>(r - 1)];
      ++out.per_r_counts[static_cast<std::size_t>(r - 1)];
      if (beta_r == 0.0) continue;  // consumed budget, zero weight
      scale = 2.0 * r * m * t_degree * beta_r / budget;
    } else {
      const double x = rng.uniform01() * beta_total;
      const auto it = std::upper_bound(beta_cum.begin(), beta_cum.end(), x);
      r = 1 + static_cast<int>(std::min<std::ptrdiff_t>(it - beta_cum.begin(), t_degree - 1));
      ++out.per_r_counts[static_cast<std::size_t>(r - 1)];
      scale = 2.0 * r * m / budget;
    }

    const SampledPath p = sampler.sample(r, rng);
    const double w = scale / p.z;
    out.total_added_weight += w;
    const NodeId a = p.nodes.front();
    const NodeId b = p.nodes.back();
    if (a == b) {
      ++out.self_loop_samples;
      out.self_loop_weight += w;
      continue;
    }
    acc[pair_key(std::min(a, b), std::max(a, b))] += w;
  }

  out.merged_edges.reserve(acc.size());
  for (const auto& [key, w] : acc) {
    const NodeId a = static_cast<NodeId>(key >> 32);
    const NodeId b = static_cast<NodeId>(key & 0xffffffffULL);
    out.merged_edges.push_back(Edge{a, b, w});
  }
  // Canonical merge order keeps the assembled Laplacian bit-stable.
  std::sort(out.merged_edges.begin(), out.merged_edges.end(),
            [](const Edge& x, const Edge& y) {
              return x.u != y.u ? x.u < y.u : x.v < y.v;
            });
  out.merged_edge_count = static_cast<std::int64_t>(out.merged_edges.size());

  const Eigen::Index n = g.node_count();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(out.merged_edges.size() * 4);
  for (const Edge& e : out.merged_edges) {
    triplets.emplace_back(e.u, e.u, e.w);
    triplets.emplace_back(e.v, e.v, e.w);
    triplets.emplace_back(e.u, e.v, -e.w);
    triplets.emplace_back(e.v, e.u, -e.w);
  }
  out.laplacian.resize(n, n);
  out.laplacian.setFromTriplets(triplets.begin(), triplets.end());
  out.laplacian.makeCompressed();
  return out;
}

SimilarityResult spectral_similarity_check(const DenseOperator& l_beta,
                                           const SparseMat& l_tilde, int trials,
                                           RandomStream& rng) {
  if (trials < 1) throw std::invalid_argument("spectral_similarity_check: trials must be >= 1");
  if (l_beta.mat.rows() != l_tilde.rows())
    throw std::invalid_argument("spectral_similarity_check: dimension mismatch");
  if (l_beta.kind != OperatorKind::PolynomialLaplacian)
    throw std::invalid_argument("spectral_similarity_check: dense side must be a Laplacian");

  const Eigen::Index n = l_beta.mat.rows();
  SimilarityResult res;
  res.trials = trials;
  res.max_ratio = -std::numeric_limits<double>::infinity();
  res.min_ratio = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    Vector x(n);
    for (Eigen::Index i = 0; i < n; ++i) x[i] = rng.uniform_real(-1.0, 1.0);
    x.array() -= x.mean();  // orthogonal to the all-ones vector
    const double denom = x.dot(l_tilde * x);
    if (!(denom > 0.0)) {
      ++res.degenerate_count;
      continue;
    }
    const double ratio = x.dot(l_beta.mat * x) / denom;
    res.max_ratio = std::max(res.max_ratio, ratio);
    res.min_ratio = std::min(res.min_ratio, ratio);
  }
  if (res.degenerate_count == trials) {
    res.max_ratio = res.min_ratio = res.epsilon_estimate =
        std::numeric_limits<double>::quiet_NaN();
  } else {
    res.epsilon_estimate = std::max(res.max_ratio - 1.0, 1.0 - res.min_ratio);
  }
  return res;
}

double singular_gap_estimate(const WeightedGraph& g, const DenseOperator& l_beta,
                             const SparseMat& l_tilde, std::size_t dense_cap) {
  if (static_cast<std::size_t>(g.node_count()) > dense_cap)
    throw std::invalid_argument("singular_gap_estimate: graph above the dense cap");
  if (l_beta.kind != OperatorKind::PolynomialLaplacian)
    throw std::invalid_argument("singular_gap_estimate: dense side must be a Laplacian");
  Matrix delta = Matrix(l_tilde) - l_beta.mat;
  const Vector d = degree_vector(g);
  for (Eigen::Index i = 0; i < delta.rows(); ++i) delta.row(i) /= d[i];
  Eigen::BDCSVD<Matrix> svd(delta);
  return svd.singularValues()(0);
}

}  // namespace hofj
