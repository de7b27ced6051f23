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

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace qecsched {

/// Undirected, connected qubit-connectivity graph on vertices 0..V-1.
///
/// Immutable after construction. All-pairs hop distances are cached when
/// V <= kDistanceCacheLimit; larger graphs answer distance() by BFS.
class ConnectivityGraph {
 public:
  static constexpr int kDistanceCacheLimit = 4096;

  ConnectivityGraph() = default;
  /// Throws std::invalid_argument on self-loops, out-of-range endpoints or a
  /// disconnected graph. Duplicate edges are merged.
  ConnectivityGraph(int vertex_count, std::span<const std::pair<int, int>> edges);

  int vertex_count() const { return vertex_count_; }
  std::span<const int> neighbors(int v) const { return adjacency_[static_cast<std::size_t>(v)]; }
  bool adjacent(int u, int v) const;
  int distance(int u, int v) const;

  /// Edges as (u, v) with u < v, sorted.
  std::vector<std::pair<int, int>> edges() const;

 private:
  std::vector<int> bfs_from(int source) const;

  int vertex_count_ = 0;
  std::vector<std::vector<int>> adjacency_;
  std::vector<std::uint16_t> distances_;  // row-major, empty when not cached
};

/// Unweighted shortest-path length between two vertices.
int graph_distance(const ConnectivityGraph& graph, int u, int v);

/// Bijection between qubits and vertices.
///
/// Qubit ids are unified: data qubits are 0..n-1, ancilla a_i is n+i.
class Placement {
 public:
  Placement() = default;
  /// `to_vertex[q]` is the vertex of qubit q; must be a permutation.
  explicit Placement(std::vector<int> to_vertex);

  int size() const { return static_cast<int>(to_vertex_.size()); }
  int vertex_of(int qubit) const { return to_vertex_[static_cast<std::size_t>(qubit)]; }
  int qubit_at(int vertex) const { return from_vertex_[static_cast<std::size_t>(vertex)]; }
  const std::vector<int>& to_vertex() const { return to_vertex_; }
  const std::vector<int>& from_vertex() const { return from_vertex_; }

  /// Exchanges the locations of two qubits.
  void swap_qubits(int q1, int q2);

  friend bool operator==(const Placement& a, const Placement& b) {
    return a.to_vertex_ == b.to_vertex_;
  }

 private:
  std::vector<int> to_vertex_;
  std::vector<int> from_vertex_;
};

struct GridCoord {
  int row = 0;
  int col = 0;
  friend bool operator==(const GridCoord&, const GridCoord&) = default;
};

/// Graph plus the initial placement of n data and m ancilla qubits.
struct Layout {
  int num_data = 0;
  int num_ancilla = 0;
  ConnectivityGraph graph;
  Placement placement;
  /// Optional per-vertex grid coordinates (for emitted circuit annotations).
  std::vector<GridCoord> coords;
};

/// Path graph 0-1-...-(n+m-1); d_i at vertex i-1, a_j at vertex n+j-1.
Layout line_layout(int n, int m);

/// Path graph whose vertex k holds qubit `order[k]` (unified ids).
Layout line_layout_ordered(int n, int m, std::span<const int> order);

/// Ring slot indices picked for m ancillas around a d x d data block:
/// floor(k * 4d / m) for k = 0..m-1.
std::vector<int> surround_slot_indices(int d, int m);

/// Grid cell of ring slot `index` (clockwise from (0, 1) on the
/// (d+2) x (d+2) grid).
GridCoord surround_slot_cell(int d, int index);

/// Data block of a distance-d rotated surface code with m ancillas placed
/// evenly on the surrounding ring. Unselected ring cells are not vertices.
///
/// Vertex numbering: data cell (r, c) -> r*d + c, ancilla a_j -> d*d + j.
Layout surround_layout(int d, int m);

/// Checks that `layout` is self-consistent (placement size, graph size).
void check_layout(const Layout& layout);

}  // namespace qecsched
