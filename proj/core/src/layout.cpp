// Copyright 2026 The qec-sched Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qecsched/layout.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

namespace qecsched {

ConnectivityGraph::ConnectivityGraph(int vertex_count,
                                     std::span<const std::pair<int, int>> edges)
    : vertex_count_(vertex_count), adjacency_(static_cast<std::size_t>(vertex_count)) {
  if (vertex_count < 1) throw std::invalid_argument("graph needs at least one vertex");
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count) {
      throw std::invalid_argument("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                  ") out of range");
    }
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    adjacency_[static_cast<std::size_t>(u)].push_back(v);
    adjacency_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& nbrs : adjacency_) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  const auto from_zero = bfs_from(0);
  for (int v = 0; v < vertex_count; ++v) {
    if (from_zero[static_cast<std::size_t>(v)] < 0) {
      throw std::invalid_argument("graph is not connected (vertex " + std::to_string(v) +
                                  " unreachable)");
    }
  }
  if (vertex_count <= kDistanceCacheLimit) {
    const auto n = static_cast<std::size_t>(vertex_count);
    distances_.resize(n * n);
    for (int s = 0; s < vertex_count; ++s) {
      const auto row = bfs_from(s);
      for (std::size_t t = 0; t < n; ++t) {
        distances_[static_cast<std::size_t>(s) * n + t] = static_cast<std::uint16_t>(row[t]);
      }
    }
  }
}

std::vector<int> ConnectivityGraph::bfs_from(int source) const {
  std::vector<int> dist(static_cast<std::size_t>(vertex_count_), -1);
  std::deque<int> queue{source};
  dist[static_cast<std::size_t>(source)] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int w : adjacency_[static_cast<std::size_t>(u)]) {
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

bool ConnectivityGraph::adjacent(int u, int v) const {
  const auto& nbrs = adjacency_[static_cast<std::size_t>(u)];
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

int ConnectivityGraph::distance(int u, int v) const {
  if (u == v) return 0;
  if (!distances_.empty()) {
    return distances_[static_cast<std::size_t>(u) * static_cast<std::size_t>(vertex_count_) +
                      static_cast<std::size_t>(v)];
  }
  return bfs_from(u)[static_cast<std::size_t>(v)];
}

std::vector<std::pair<int, int>> ConnectivityGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < vertex_count_; ++u) {
    for (int v : adjacency_[static_cast<std::size_t>(u)]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

int graph_distance(const ConnectivityGraph& graph, int u, int v) {
  return graph.distance(u, v);
}

Placement::Placement(std::vector<int> to_vertex) : to_vertex_(std::move(to_vertex)) {
  from_vertex_.assign(to_vertex_.size(), -1);
  for (std::size_t q = 0; q < to_vertex_.size(); ++q) {
    const int v = to_vertex_[q];
    if (v < 0 || static_cast<std::size_t>(v) >= to_vertex_.size() ||
        from_vertex_[static_cast<std::size_t>(v)] != -1) {
      throw std::invalid_argument("placement is not a permutation");
    }
    from_vertex_[static_cast<std::size_t>(v)] = static_cast<int>(q);
  }
}

void Placement::swap_qubits(int q1, int q2) {
  auto& v1 = to_vertex_[static_cast<std::size_t>(q1)];
  auto& v2 = to_vertex_[static_cast<std::size_t>(q2)];
  std::swap(v1, v2);
  from_vertex_[static_cast<std::size_t>(v1)] = q1;
  from_vertex_[static_cast<std::size_t>(v2)] = q2;
}

namespace {

std::vector<std::pair<int, int>> path_edges(int count) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v + 1 < count; ++v) edges.emplace_back(v, v + 1);
  return edges;
}

}  // namespace

Layout line_layout(int n, int m) {
  if (n < 1 || m < 1) throw std::invalid_argument("line layout needs n >= 1 and m >= 1");
  std::vector<int> order(static_cast<std::size_t>(n + m));
  for (int q = 0; q < n + m; ++q) order[static_cast<std::size_t>(q)] = q;
  return line_layout_ordered(n, m, order);
}

Layout line_layout_ordered(int n, int m, std::span<const int> order) {
  if (n < 1 || m < 1) throw std::invalid_argument("line layout needs n >= 1 and m >= 1");
  const int total = n + m;
  if (static_cast<int>(order.size()) != total) {
    throw std::invalid_argument("line order must list all n+m qubits");
  }
  std::vector<int> to_vertex(static_cast<std::size_t>(total), -1);
  for (int k = 0; k < total; ++k) {
    const int q = order[static_cast<std::size_t>(k)];
    if (q < 0 || q >= total || to_vertex[static_cast<std::size_t>(q)] != -1) {
      throw std::invalid_argument("line order is not a permutation of qubits");
    }
    to_vertex[static_cast<std::size_t>(q)] = k;
  }
  const auto edges = path_edges(total);
  Layout layout;
  layout.num_data = n;
  layout.num_ancilla = m;
  layout.graph = ConnectivityGraph(total, edges);
  layout.placement = Placement(std::move(to_vertex));
  for (int k = 0; k < total; ++k) layout.coords.push_back({0, k});
  return layout;
}

std::vector<int> surround_slot_indices(int d, int m) {
  if (d < 3 || d % 2 == 0) throw std::invalid_argument("surround layout needs odd d >= 3");
  if (m < 1 || m > 4 * d) {
    throw std::invalid_argument("surround layout needs 1 <= m <= 4d (got m=" +
                                std::to_string(m) + ")");
  }
  std::vector<int> slots;
  for (int k = 0; k < m; ++k) slots.push_back(static_cast<int>((static_cast<long long>(k) * 4 * d) / m));
  return slots;
}

GridCoord surround_slot_cell(int d, int index) {
  // Clockwise: top row left->right, right column top->bottom, bottom row
  // right->left, left column bottom->top.
  if (index < d) return {0, 1 + index};
  index -= d;
  if (index < d) return {1 + index, d + 1};
  index -= d;
  if (index < d) return {d + 1, d - index};
  index -= d;
  return {d - index, 0};
}

Layout surround_layout(int d, int m) {
  const auto slots = surround_slot_indices(d, m);
  const int n = d * d;
  const int total = n + m;
  const int side = d + 2;
  // Grid cell -> vertex, -1 for deleted cells.
  std::vector<int> vertex_of_cell(static_cast<std::size_t>(side * side), -1);
  auto cell_id = [side](int r, int c) { return static_cast<std::size_t>(r * side + c); };
  Layout layout;
  layout.num_data = n;
  layout.num_ancilla = m;
  layout.coords.resize(static_cast<std::size_t>(total));
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      const int v = r * d + c;
      vertex_of_cell[cell_id(r + 1, c + 1)] = v;
      layout.coords[static_cast<std::size_t>(v)] = {r + 1, c + 1};
    }
  }
  for (int j = 0; j < m; ++j) {
    const auto cell = surround_slot_cell(d, slots[static_cast<std::size_t>(j)]);
    const int v = n + j;
    vertex_of_cell[cell_id(cell.row, cell.col)] = v;
    layout.coords[static_cast<std::size_t>(v)] = cell;
  }
  std::vector<std::pair<int, int>> edges;
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      const int u = vertex_of_cell[cell_id(r, c)];
      if (u < 0) continue;
      if (c + 1 < side) {
        const int v = vertex_of_cell[cell_id(r, c + 1)];
        if (v >= 0) edges.emplace_back(u, v);
      }
      if (r + 1 < side) {
        const int v = vertex_of_cell[cell_id(r + 1, c)];
        if (v >= 0) edges.emplace_back(u, v);
      }
    }
  }
  layout.graph = ConnectivityGraph(total, edges);
  std::vector<int> to_vertex(static_cast<std::size_t>(total));
  for (int q = 0; q < total; ++q) to_vertex[static_cast<std::size_t>(q)] = q;
  layout.placement = Placement(std::move(to_vertex));
  return layout;
}

void check_layout(const Layout& layout) {
  if (layout.num_data < 1 || layout.num_ancilla < 1) {
    throw std::invalid_argument("layout needs at least one data and one ancilla qubit");
  }
  const int total = layout.num_data + layout.num_ancilla;
  if (layout.graph.vertex_count() != total) {
    throw std::invalid_argument("graph has " + std::to_string(layout.graph.vertex_count()) +
                                " vertices, expected n+m = " + std::to_string(total));
  }
  if (layout.placement.size() != total) {
    throw std::invalid_argument("placement size differs from n+m");
  }
  if (!layout.coords.empty() && static_cast<int>(layout.coords.size()) != total) {
    throw std::invalid_argument("coords must list every vertex");
  }
}

}  // namespace qecsched
