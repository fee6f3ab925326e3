#pragma once

// Connectivity machinery: union-find reachability, bridges, cutvertices,
// exact edge connectivity (Stoer-Wagner on multiplicity weights), girth.
//
// Loops never affect reachability, bridges, or edge connectivity. A vertex
// carrying a loop is a cutvertex whenever the graph has any other edge: the
// loop alone forms one side of an edge bipartition meeting only at that
// vertex.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "relopt/multigraph.hpp"

namespace relopt {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n), count_(n) {
    for (int i = 0; i < n; ++i) parent_[i] = i;
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    --count_;
    return true;
  }
  int components() const { return count_; }

 private:
  std::vector<int> parent_;
  int count_;
};

inline bool is_connected(const Multigraph& g) {
  UnionFind uf(g.n());
  for (const Edge& e : g.edges()) uf.unite(e.u, e.v);
  return uf.components() == 1;
}

// connectivity of g with the edges in drop_mask removed (m <= 64)
inline bool connected_without(const Multigraph& g, std::uint64_t drop_mask) {
  UnionFind uf(g.n());
  for (int id = 0; id < g.m(); ++id) {
    if (drop_mask >> id & 1) continue;
    uf.unite(g.edge(id).u, g.edge(id).v);
  }
  return uf.components() == 1;
}

namespace detail {

struct DfsState {
  const Multigraph* g;
  std::vector<std::vector<std::pair<int, int>>> adj;  // vertex -> (nbr, edge id)
  std::vector<int> disc, low;
  std::vector<bool> is_bridge, is_cut;
  int timer = 0;

  explicit DfsState(const Multigraph& graph) : g(&graph) {
    adj.resize(graph.n());
    for (int id = 0; id < graph.m(); ++id) {
      const Edge& e = graph.edge(id);
      if (e.u == e.v) continue;
      adj[e.u].push_back({e.v, id});
      adj[e.v].push_back({e.u, id});
    }
    disc.assign(graph.n(), -1);
    low.assign(graph.n(), 0);
    is_bridge.assign(graph.m(), false);
    is_cut.assign(graph.n(), false);
  }

  void run(int root) {
    // iterative DFS; parallel edges reuse distinct ids so a doubled edge is
    // never a bridge
    struct Frame {
      int v, parent_edge;
      size_t next = 0;
      int children = 0;
    };
    std::vector<Frame> stack;
    disc[root] = low[root] = timer++;
    stack.push_back({root, -1});
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next < adj[f.v].size()) {
        auto [w, id] = adj[f.v][f.next++];
        if (id == f.parent_edge) continue;
        if (disc[w] == -1) {
          disc[w] = low[w] = timer++;
          ++f.children;
          stack.push_back({w, id});
        } else {
          low[f.v] = std::min(low[f.v], disc[w]);
        }
      } else {
        int v = f.v;
        int pe = f.parent_edge;
        bool is_root = stack.size() == 1;
        if (is_root) {
          if (f.children >= 2) is_cut[v] = true;
        }
        stack.pop_back();
        if (!stack.empty()) {
          int p = stack.back().v;
          low[p] = std::min(low[p], low[v]);
          if (low[v] > disc[p]) is_bridge[pe] = true;
          if (stack.size() > 1 && low[v] >= disc[p]) is_cut[p] = true;
        }
      }
    }
  }
};

}  // namespace detail

inline std::vector<int> find_bridges(const Multigraph& g) {
  detail::DfsState st(g);
  for (int v = 0; v < g.n(); ++v)
    if (st.disc[v] == -1) st.run(v);
  std::vector<int> out;
  for (int id = 0; id < g.m(); ++id)
    if (st.is_bridge[id]) out.push_back(id);
  return out;
}

inline std::vector<int> find_cutvertices(const Multigraph& g) {
  detail::DfsState st(g);
  for (int v = 0; v < g.n(); ++v)
    if (st.disc[v] == -1) st.run(v);
  std::vector<int> out;
  for (int v = 0; v < g.n(); ++v) {
    bool cut = st.is_cut[v];
    if (g.loop_count(v) > 0 && g.m() >= 2) cut = true;
    if (cut) out.push_back(v);
  }
  return out;
}

// Exact edge connectivity by Stoer-Wagner over multiplicity weights.
// Returns nullopt for a single vertex (no cut exists), 0 if disconnected.
inline std::optional<long long> edge_connectivity(const Multigraph& g) {
  if (g.n() == 1) return std::nullopt;
  if (!is_connected(g)) return 0;
  const int n = g.n();
  std::vector<std::vector<long long>> w(n, std::vector<long long>(n, 0));
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) continue;
    w[e.u][e.v] += 1;
    w[e.v][e.u] += 1;
  }
  std::vector<int> active(n);
  for (int i = 0; i < n; ++i) active[i] = i;
  long long best = std::numeric_limits<long long>::max();
  while (active.size() > 1) {
    std::vector<long long> weight(active.size(), 0);
    std::vector<bool> added(active.size(), false);
    int prev = -1, last = -1;
    for (size_t it = 0; it < active.size(); ++it) {
      int sel = -1;
      for (size_t i = 0; i < active.size(); ++i)
        if (!added[i] && (sel == -1 || weight[i] > weight[sel]))
          sel = static_cast<int>(i);
      added[sel] = true;
      prev = last;
      last = sel;
      for (size_t i = 0; i < active.size(); ++i)
        if (!added[i]) weight[i] += w[active[sel]][active[i]];
    }
    best = std::min(best, weight[last]);
    // merge last into prev
    int a = active[prev], b = active[last];
    for (int v : active) {
      if (v == a || v == b) continue;
      w[a][v] += w[b][v];
      w[v][a] += w[v][b];
    }
    active.erase(active.begin() + last);
  }
  return best;
}

struct ConnectivityReport {
  bool connected = false;
  std::vector<int> bridges;                      // edge ids, ascending
  std::vector<int> cutvertices;                  // vertex ids, ascending
  std::optional<long long> edge_connectivity;    // nullopt: single vertex
};

inline ConnectivityReport connectivity_report(const Multigraph& g) {
  ConnectivityReport r;
  r.connected = is_connected(g);
  r.bridges = find_bridges(g);
  r.cutvertices = find_cutvertices(g);
  r.edge_connectivity = relopt::edge_connectivity(g);
  return r;
}

// Length of a shortest cycle: 1 for a loop, 2 for a parallel pair, otherwise
// BFS on the underlying simple graph. nullopt for a forest.
inline std::optional<int> girth(const Multigraph& g) {
  for (int id = 0; id < g.m(); ++id)
    if (g.is_loop(id)) return 1;
  std::vector<std::vector<int>> adj(g.n());
  {
    std::vector<std::vector<int>> mult(g.n());
    for (const Edge& e : g.edges()) {
      for (int x : mult[e.u])
        if (x == e.v) return 2;
      mult[e.u].push_back(e.v);
      mult[e.v].push_back(e.u);
    }
    adj = std::move(mult);
  }
  std::optional<int> best;
  for (int src = 0; src < g.n(); ++src) {
    std::vector<int> dist(g.n(), -1), parent(g.n(), -1);
    std::vector<int> queue{src};
    dist[src] = 0;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int v = queue[qi];
      for (int w : adj[v]) {
        if (dist[w] == -1) {
          dist[w] = dist[v] + 1;
          parent[w] = v;
          queue.push_back(w);
        } else if (w != parent[v]) {
          int len = dist[v] + dist[w] + 1;
          if (!best || len < *best) best = len;
        }
      }
    }
  }
  return best;
}

}  // namespace relopt
