#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hofj/rng.hpp"

namespace hofj {

using NodeId = std::int32_t;

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  double w = 1.0;
};

/// Ingestion bookkeeping for load_edge_list / WeightedGraph::from_edges.
struct LoadStats {
  std::size_t line_count = 0;
  std::size_t comment_count = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_merged = 0;
  bool directed_hint = false;
};

/// Simple weighted undirected graph, immutable after construction.
///
/// Stores a canonical edge list (u < v, sorted), per-node degrees
/// d_i = sum of incident weights, and a per-node adjacency index with
/// cumulative-weight prefix sums so that a neighbor can be sampled with
/// probability w_uv / d_u by binary search in O(log n).
class WeightedGraph {
 public:
  WeightedGraph() = default;

  /// Build from a raw edge list over nodes 0..n-1. Duplicate and reciprocal
  /// entries are merged by summing weights; self-loops are dropped (counted
  /// in `stats` when given). Throws on non-positive weights or out-of-range
  /// node ids.
  static WeightedGraph from_edges(NodeId n, const std::vector<Edge>& raw,
                                  LoadStats* stats = nullptr,
                                  std::vector<std::string> original_ids = {});

  NodeId node_count() const { return n_; }
  std::int64_t edge_count() const { return static_cast<std::int64_t>(edges_.size()); }

  /// Canonical merged edge list, u < v, sorted lexicographically.
  const std::vector<Edge>& edges() const { return edges_; }

  double degree(NodeId i) const { return degree_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& degrees() const { return degree_; }
  double total_weight() const { return total_weight_; }

  std::size_t neighbor_count(NodeId u) const {
    return static_cast<std::size_t>(offsets_[u + 1] - offsets_[u]);
  }
  NodeId neighbor(NodeId u, std::size_t k) const {
    return adj_[static_cast<std::size_t>(offsets_[u]) + k];
  }
  double neighbor_weight(NodeId u, std::size_t k) const;

  /// Weight of edge (u, v), or 0 when absent.
  double edge_weight(NodeId u, NodeId v) const;

  /// Neighbor v of u with probability w_uv / d_u. Throws for isolated nodes.
  NodeId sample_neighbor(NodeId u, RandomStream& rng) const;
  /// Same draw, also returning the traversed edge weight.
  std::pair<NodeId, double> sample_neighbor_weighted(NodeId u, RandomStream& rng) const;

  /// Original input ids (one per compacted node), empty when constructed
  /// directly from numeric 0..n-1 edges.
  const std::vector<std::string>& original_ids() const { return original_ids_; }

 private:
  void build_index();

  NodeId n_ = 0;
  std::vector<Edge> edges_;
  std::vector<double> degree_;
  double total_weight_ = 0.0;
  std::vector<std::int64_t> offsets_;  // size n_ + 1
  std::vector<NodeId> adj_;            // size 2m, sorted by id within a node
  std::vector<double> adj_cumw_;       // running prefix of weights within a node
  std::vector<std::string> original_ids_;
};

/// Parse a whitespace-delimited edge-list file. Lines starting with '#' or
/// '%' are comments; data lines are `u v` or `u v w` (default weight 1).
/// Node ids may be arbitrary non-negative integers or strings; they are
/// compacted to dense 0..n-1 (numeric sort when all ids are numeric,
/// lexicographic otherwise) with the original ids retained.
/// Reciprocal/duplicate edges merge by weight summation; self-loops are
/// dropped and counted. Throws on malformed lines (with the line number),
/// non-positive weights, and empty graphs.
WeightedGraph load_edge_list(const std::string& path, bool directed_hint = false,
                             LoadStats* stats = nullptr);

bool is_connected(const WeightedGraph& g);

/// Induced subgraph on the largest connected component, ids compacted.
/// Ties between equal-size components go to the one containing the smallest
/// node id (equivalently the smallest original id under ordered compaction).
WeightedGraph largest_connected_component(const WeightedGraph& g);

/// Endpoint after `steps` neighbor draws from `start`.
NodeId random_walk(const WeightedGraph& g, NodeId start, int steps, RandomStream& rng);

/// Full visited sequence (start included; length steps + 1).
std::vector<NodeId> random_walk_path(const WeightedGraph& g, NodeId start, int steps,
                                     RandomStream& rng);

/// Two-column `compacted_id original_id` text file.
void write_id_map(const WeightedGraph& g, const std::string& path);

/// Canonical `u v w` edge-list text file.
void write_edge_list(const WeightedGraph& g, const std::string& path);

}  // namespace hofj
