#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "numera/realline.hpp"

namespace numera {

/// Copy of the automaton restricted to states with positive growth
/// coefficient, edges labeled by the affine maps rescaling each partition
/// cell onto [0,1].
struct FLAutomaton {
  struct Edge {
    int from, to;  // node indices
    int letter;
    AffineMap map;
    std::string name;  // id_<letter> when the map is the identity, else f_<letter>
  };
  AlgField field;
  std::vector<int> node_state;   // node index -> original state id
  std::vector<int> node_of;      // original state id -> node index or -1
  std::vector<std::string> node_names;
  int initial_node = -1;
  std::vector<Edge> edges;                  // ordered by (from, letter)
  std::vector<std::vector<int>> out_edges;  // per node, indices into edges
};

inline FLAutomaton build_FL(const GrowthProfile& g, const Dfa& d) {
  FLAutomaton fl;
  fl.field = g.field;
  fl.node_of.assign(d.num_states(), -1);
  for (int q = 0; q < d.num_states(); ++q) {
    if (g.a[q].is_zero_value()) continue;
    fl.node_of[q] = static_cast<int>(fl.node_state.size());
    fl.node_state.push_back(q);
    fl.node_names.push_back("A_" + d.state_names[q]);
  }
  fl.initial_node = fl.node_of[d.initial];
  fl.out_edges.assign(fl.node_state.size(), {});
  for (std::size_t i = 0; i < fl.node_state.size(); ++i) {
    PartitionRow row = partition_row(g, d, fl.node_state[i]);
    for (const auto& c : row.cells) {
      FLAutomaton::Edge e;
      e.from = static_cast<int>(i);
      e.to = fl.node_of[d.step(fl.node_state[i], c.letter)];
      e.letter = c.letter;
      AlgNum slope = (c.hi - c.lo).inverse();
      e.map = {slope, -(slope * c.lo)};
      bool ident = e.map.is_identity();
      e.name = (ident ? "id_" : "f_") + d.alphabet.name(c.letter);
      fl.out_edges[i].push_back(static_cast<int>(fl.edges.size()));
      fl.edges.push_back(std::move(e));
    }
  }
  return fl;
}

/// Composition of a path of maps in reversed order: the first map of the
/// path is applied first.
inline AffineMap compose_path(const FLAutomaton& fl,
                              const std::vector<int>& edge_path) {
  AffineMap f = AffineMap::identity(fl.field);
  for (int ei : edge_path) f = fl.edges[ei].map.after(f);
  return f;
}

/// Exact fixed point of the composition along a cycle.
inline AlgNum compose_fixed_point(const FLAutomaton& fl,
                                  const std::vector<int>& cycle) {
  if (!cycle.empty() &&
      fl.edges[cycle.back()].to != fl.edges[cycle.front()].from)
    throw DomainError("edge path is not a cycle");
  for (std::size_t i = 0; i + 1 < cycle.size(); ++i)
    if (fl.edges[cycle[i]].to != fl.edges[cycle[i + 1]].from)
      throw DomainError("edge path is not connected");
  return compose_path(fl, cycle).fixed_point();
}

/// A real with an ultimately periodic representation, with its witnesses.
struct UPValue {
  AlgNum value;
  UpWord word;
  std::vector<int> path_edges, cycle_edges;
};

namespace detail {
inline std::vector<int> shortest_edge_path(const FLAutomaton& fl, int from,
                                           int to) {
  std::vector<int> in_edge(fl.node_state.size(), -1);
  std::vector<bool> seen(fl.node_state.size(), false);
  std::vector<int> queue{from};
  seen[from] = true;
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (int ei : fl.out_edges[queue[h]]) {
      int t = fl.edges[ei].to;
      if (seen[t]) continue;
      seen[t] = true;
      in_edge[t] = ei;
      queue.push_back(t);
    }
  if (!seen[to]) return {-1};  // unreachable marker
  std::vector<int> path;
  for (int u = to; u != from; u = fl.edges[in_edge[u]].from)
    path.push_back(in_edge[u]);
  std::reverse(path.begin(), path.end());
  return path;
}

template <typename Fn>
inline void walks(const FLAutomaton& fl, int from, int len,
                  std::vector<int>& acc, Fn&& visit) {
  if (len == 0) {
    visit(acc);
    return;
  }
  for (int ei : fl.out_edges[from]) {
    acc.push_back(ei);
    walks(fl, fl.edges[ei].to, len - 1, acc, visit);
    acc.pop_back();
  }
}
}  // namespace detail

/// Enumerates values with ultimately periodic representations: fixed
/// points of cycle compositions at each node, pulled back along paths
/// from the initial node and through the initial rescaling of [1/theta,1].
/// Cycles are enumerated by (length, edge order); for each node the
/// shortest access path is always considered, plus all paths up to
/// path_len_max.  Deduplicated by exact value, first witness kept.
inline std::vector<UPValue> enumerate_up_values(const GrowthProfile& g,
                                                const Dfa& d,
                                                int cycle_len_max,
                                                int path_len_max) {
  FLAutomaton fl = build_FL(g, d);
  const AlgField& f = g.field;
  AlgNum theta = f.root();
  std::vector<UPValue> out;

  auto emit = [&](const std::vector<int>& cycle,
                  const std::vector<int>& path) {
    AlgNum x;
    try {
      x = compose_fixed_point(fl, cycle);
    } catch (const NoUniqueFixedPointError&) {
      return;  // all-identity cycle: every point fixed, nothing canonical
    }
    // pull back along the access path, then undo the initial rescaling
    AlgNum y = x;
    for (auto it = path.rbegin(); it != path.rend(); ++it)
      y = fl.edges[*it].map.inverse().apply(y);
    AlgNum value = ((theta - f.one()) * y + f.one()) / theta;
    for (const auto& v : out)
      if (compare(v.value, value) == 0) return;
    Word u, v;
    for (int ei : path) u.push_back(fl.edges[ei].letter);
    for (int ei : cycle) v.push_back(fl.edges[ei].letter);
    UPValue up{value, UpWord(std::move(u), std::move(v)), path, cycle};
    if (compare(value_of_up(g, d, up.word), value) != 0)
      throw InternalError("witness fails the value round-trip");
    out.push_back(std::move(up));
  };

  for (std::size_t node = 0; node < fl.node_state.size(); ++node) {
    // access paths: the shortest one plus everything up to path_len_max
    std::vector<std::vector<int>> paths;
    auto shortest =
        detail::shortest_edge_path(fl, fl.initial_node, static_cast<int>(node));
    if (shortest.size() == 1 && !shortest.empty() && shortest[0] == -1)
      continue;  // node unreachable from the initial node
    for (int len = 0; len <= path_len_max; ++len) {
      std::vector<int> acc;
      detail::walks(fl, fl.initial_node, len, acc,
                    [&](const std::vector<int>& p) {
                      if (p.empty() ? fl.initial_node == static_cast<int>(node)
                                    : fl.edges[p.back()].to ==
                                          static_cast<int>(node))
                        paths.push_back(p);
                    });
    }
    if (static_cast<int>(shortest.size()) > path_len_max)
      paths.push_back(shortest);

    for (int len = 1; len <= cycle_len_max; ++len) {
      std::vector<int> acc;
      detail::walks(fl, static_cast<int>(node), len, acc,
                    [&](const std::vector<int>& c) {
                      if (fl.edges[c.back()].to != static_cast<int>(node))
                        return;
                      for (const auto& p : paths) emit(c, p);
                    });
    }
  }
  return out;
}

/// Recognizers over the edge-name alphabet for the cycle language at q
/// (phi) and the access language from the initial node to q (nu).
inline std::pair<Dfa, Dfa> phi_nu_automata(const FLAutomaton& fl, int state) {
  int target = fl.node_of[state];
  if (target < 0) throw DomainError("state carries no weight");
  std::set<std::string> names;
  for (const auto& e : fl.edges) names.insert(e.name);
  Alphabet alpha(std::vector<std::string>(names.begin(), names.end()));

  auto skeleton = [&](int init) {
    Dfa d;
    d.alphabet = alpha;
    for (const auto& n : fl.node_names) d.add_state(n, false);
    d.initial = init;
    for (const auto& e : fl.edges) d.delta[e.from][alpha.index(e.name)] = e.to;
    d.final_states[target] = true;
    return d;
  };
  return {skeleton(target), skeleton(fl.initial_node)};
}

}  // namespace numera
