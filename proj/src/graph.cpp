#include "hofj/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace hofj {

namespace {

std::uint64_t pair_key(NodeId a, NodeId b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint64_t>(static_cast<std::uint32_t>(b));
}

bool is_unsigned_integer(const std::string& tok) {
  if (tok.empty()) return false;
  for (char c : tok)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

WeightedGraph WeightedGraph::from_edges(NodeId n, const std::vector<Edge>& raw,
                                        LoadStats* stats,
                                        std::vector<std::string> original_ids) {
  if (n <= 0) throw std::invalid_argument("graph: node count must be positive");

  std::unordered_map<std::uint64_t, double> merged;
  merged.reserve(raw.size());
  std::size_t self_loops = 0;
  std::size_t duplicates = 0;
  for (const Edge& e : raw) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw std::invalid_argument("graph: edge endpoint out of range");
    if (!(e.w > 0.0)) throw std::invalid_argument("graph: edge weight must be positive");
    if (e.u == e.v) {
      ++self_loops;
      continue;
    }
    const auto [a, b] = std::minmax(e.u, e.v);
    auto [it, inserted] = merged.try_emplace(pair_key(a, b), e.w);
    if (!inserted) {
      it->second += e.w;
      ++duplicates;
    }
  }
  if (merged.empty()) throw std::invalid_argument("graph: no edges after cleaning");
  if (stats) {
    stats->self_loops_dropped += self_loops;
    stats->duplicates_merged += duplicates;
  }

  WeightedGraph g;
  g.n_ = n;
  g.edges_.reserve(merged.size());
  for (const auto& [key, w] : merged) {
    const NodeId a = static_cast<NodeId>(key >> 32);
    const NodeId b = static_cast<NodeId>(key & 0xffffffffULL);
    g.edges_.push_back(Edge{a, b, w});
  }
  std::sort(g.edges_.begin(), g.edges_.end(), [](const Edge& x, const Edge& y) {
    return x.u != y.u ? x.u < y.u : x.v < y.v;
  });
  g.original_ids_ = std::move(original_ids);
  g.build_index();
  return g;
}

void WeightedGraph::build_index() {
  degree_.assign(static_cast<std::size_t>(n_), 0.0);
  offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
  total_weight_ = 0.0;

  for (const Edge& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
    degree_[static_cast<std::size_t>(e.u)] += e.w;
    degree_[static_cast<std::size_t>(e.v)] += e.w;
    total_weight_ += e.w;
  }
  for (NodeId i = 0; i < n_; ++i) offsets_[i + 1] += offsets_[i];

  const std::size_t slots = static_cast<std::size_t>(offsets_[n_]);
  adj_.assign(slots, 0);
  adj_cumw_.assign(slots, 0.0);
  std::vector<std::int64_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adj_[static_cast<std::size_t>(cursor[e.u])] = e.v;
    adj_cumw_[static_cast<std::size_t>(cursor[e.u]++)] = e.w;
    adj_[static_cast<std::size_t>(cursor[e.v])] = e.u;
    adj_cumw_[static_cast<std::size_t>(cursor[e.v]++)] = e.w;
  }
  // Sort each node's slice by neighbor id, then turn weights into prefix sums.
  for (NodeId u = 0; u < n_; ++u) {
    const std::size_t lo = static_cast<std::size_t>(offsets_[u]);
    const std::size_t hi = static_cast<std::size_t>(offsets_[u + 1]);
    std::vector<std::pair<NodeId, double>> slice;
    slice.reserve(hi - lo);
    for (std::size_t k = lo; k < hi; ++k) slice.emplace_back(adj_[k], adj_cumw_[k]);
    std::sort(slice.begin(), slice.end());
    double run = 0.0;
    for (std::size_t k = lo; k < hi; ++k) {
      adj_[k] = slice[k - lo].first;
      run += slice[k - lo].second;
      adj_cumw_[k] = run;
    }
  }
}

double WeightedGraph::neighbor_weight(NodeId u, std::size_t k) const {
  const std::size_t base = static_cast<std::size_t>(offsets_[u]);
  const double prev = k == 0 ? 0.0 : adj_cumw_[base + k - 1];
  return adj_cumw_[base + k] - prev;
}

double WeightedGraph::edge_weight(NodeId u, NodeId v) const {
  const std::size_t lo = static_cast<std::size_t>(offsets_[u]);
  const std::size_t hi = static_cast<std::size_t>(offsets_[u + 1]);
  const auto begin = adj_.begin() + static_cast<std::ptrdiff_t>(lo);
  const auto end = adj_.begin() + static_cast<std::ptrdiff_t>(hi);
  const auto it = std::lower_bound(begin, end, v);
  if (it == end || *it != v) return 0.0;
  const std::size_t k = static_cast<std::size_t>(it - begin);
  return neighbor_weight(u, k);
}

NodeId WeightedGraph::sample_neighbor(NodeId u, RandomStream& rng) const {
  return sample_neighbor_weighted(u, rng).first;
}

std::pair<NodeId, double> WeightedGraph::sample_neighbor_weighted(NodeId u,
                                                                  RandomStream& rng) const {
  const std::size_t lo = static_cast<std::size_t>(offsets_[u]);
  const std::size_t hi = static_cast<std::size_t>(offsets_[u + 1]);
  if (lo == hi) throw std::invalid_argument("sample_neighbor: isolated node");
  const double x = rng.uniform01() * degree_[static_cast<std::size_t>(u)];
  const auto begin = adj_cumw_.begin() + static_cast<std::ptrdiff_t>(lo);
  const auto end = adj_cumw_.begin() + static_cast<std::ptrdiff_t>(hi);
  auto it = std::upper_bound(begin, end, x);
  if (it == end) --it;  // guards the x == degree rounding edge
  const std::size_t k = static_cast<std::size_t>(it - begin);
  return {adj_[lo + k], neighbor_weight(u, k)};
}

WeightedGraph load_edge_list(const std::string& path, bool directed_hint,
                             LoadStats* stats) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_edge_list: cannot open '" + path + "'");

  struct RawEdge {
    std::string u, v;
    double w;
  };
  std::vector<RawEdge> raw;
  bool all_numeric = true;

  LoadStats local;
  local.directed_hint = directed_hint;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    ++local.line_count;
    std::istringstream ls(line);
    std::string u, v, wtok, extra;
    if (!(ls >> u)) continue;  // blank line
    if (u[0] == '#' || u[0] == '%') {
      ++local.comment_count;
      continue;
    }
    if (!(ls >> v))
      throw std::runtime_error("load_edge_list: malformed line " + std::to_string(line_no) +
                               " (expected `u v [w]`)");
    double w = 1.0;
    if (ls >> wtok) {
      try {
        std::size_t pos = 0;
        w = std::stod(wtok, &pos);
        if (pos != wtok.size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw std::runtime_error("load_edge_list: malformed weight on line " +
                                 std::to_string(line_no));
      }
      if (ls >> extra)
        throw std::runtime_error("load_edge_list: too many fields on line " +
                                 std::to_string(line_no));
    }
    if (!(w > 0.0))
      throw std::runtime_error("load_edge_list: non-positive weight on line " +
                               std::to_string(line_no));
    all_numeric = all_numeric && is_unsigned_integer(u) && is_unsigned_integer(v);
    raw.push_back(RawEdge{std::move(u), std::move(v), w});
  }
  if (raw.empty()) throw std::runtime_error("load_edge_list: empty graph in '" + path + "'");

  // Compact ids: numeric order when every id is a non-negative integer,
  // lexicographic otherwise.
  std::vector<std::string> ids;
  ids.reserve(raw.size() * 2);
  for (const RawEdge& e : raw) {
    ids.push_back(e.u);
    ids.push_back(e.v);
  }
  if (all_numeric) {
    std::sort(ids.begin(), ids.end(), [](const std::string& a, const std::string& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
  } else {
    std::sort(ids.begin(), ids.end());
  }
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::unordered_map<std::string, NodeId> index;
  index.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) index.emplace(ids[i], static_cast<NodeId>(i));

  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const RawEdge& e : raw)
    edges.push_back(Edge{index.at(e.u), index.at(e.v), e.w});

  const NodeId n = static_cast<NodeId>(ids.size());
  WeightedGraph g = WeightedGraph::from_edges(n, edges, &local, std::move(ids));
  if (stats) *stats = local;
  return g;
}

bool is_connected(const WeightedGraph& g) {
  const NodeId n = g.node_count();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::queue<NodeId> q;
  q.push(0);
  seen[0] = 1;
  NodeId visited = 1;
  while (!q.empty()) {
    const NodeId u = q.front();
    q.pop();
    for (std::size_t k = 0; k < g.neighbor_count(u); ++k) {
      const NodeId v = g.neighbor(u, k);
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        ++visited;
        q.push(v);
      }
    }
  }
  return visited == n;
}

WeightedGraph largest_connected_component(const WeightedGraph& g) {
  const NodeId n = g.node_count();
  std::vector<NodeId> component(static_cast<std::size_t>(n), -1);
  NodeId component_count = 0;
  std::vector<std::int64_t> sizes;
  for (NodeId s = 0; s < n; ++s) {
    if (component[static_cast<std::size_t>(s)] >= 0) continue;
    std::queue<NodeId> q;
    q.push(s);
    component[static_cast<std::size_t>(s)] = component_count;
    std::int64_t size = 1;
    while (!q.empty()) {
      const NodeId u = q.front();
      q.pop();
      for (std::size_t k = 0; k < g.neighbor_count(u); ++k) {
        const NodeId v = g.neighbor(u, k);
        if (component[static_cast<std::size_t>(v)] < 0) {
          component[static_cast<std::size_t>(v)] = component_count;
          ++size;
          q.push(v);
        }
      }
    }
    sizes.push_back(size);
    ++component_count;
  }

  // Components are discovered in increasing order of their minimum node id,
  // so keeping the first strictly-largest one realizes the tie-break.
  NodeId best = 0;
  for (NodeId c = 1; c < component_count; ++c)
    if (sizes[static_cast<std::size_t>(c)] > sizes[static_cast<std::size_t>(best)]) best = c;

  std::vector<NodeId> remap(static_cast<std::size_t>(n), -1);
  std::vector<std::string> kept_ids;
  const bool has_ids = !g.original_ids().empty();
  NodeId next = 0;
  for (NodeId u = 0; u < n; ++u) {
    if (component[static_cast<std::size_t>(u)] == best) {
      remap[static_cast<std::size_t>(u)] = next++;
      if (has_ids) kept_ids.push_back(g.original_ids()[static_cast<std::size_t>(u)]);
    }
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (component[static_cast<std::size_t>(e.u)] == best)
      edges.push_back(Edge{remap[static_cast<std::size_t>(e.u)],
                           remap[static_cast<std::size_t>(e.v)], e.w});
  }
  return WeightedGraph::from_edges(next, edges, nullptr, std::move(kept_ids));
}

NodeId random_walk(const WeightedGraph& g, NodeId start, int steps, RandomStream& rng) {
  if (steps < 0) throw std::invalid_argument("random_walk: steps must be non-negative");
  NodeId cur = start;
  for (int i = 0; i < steps; ++i) cur = g.sample_neighbor(cur, rng);
  return cur;
}

std::vector<NodeId> random_walk_path(const WeightedGraph& g, NodeId start, int steps,
                                     RandomStream& rng) {
  if (steps < 0) throw std::invalid_argument("random_walk: steps must be non-negative");
  std::vector<NodeId> path;
  path.reserve(static_cast<std::size_t>(steps) + 1);
  path.push_back(start);
  NodeId cur = start;
  for (int i = 0; i < steps; ++i) {
    cur = g.sample_neighbor(cur, rng);
    path.push_back(cur);
  }
  return path;
}

void write_id_map(const WeightedGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_id_map: cannot open '" + path + "'");
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const std::string& orig = g.original_ids().empty()
                                  ? std::to_string(u)
                                  : g.original_ids()[static_cast<std::size_t>(u)];
    out << u << ' ' << orig << '\n';
  }
}

void write_edge_list(const WeightedGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_edge_list: cannot open '" + path + "'");
  out.precision(17);
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.w << '\n';
}

}  // namespace hofj
