#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace mcensus {

// Connected 4-valent multigraph on n vertices: the face-pairing skeleton of a
// census triangulation. adj[u][v] is the number of parallel edges between u
// and v; adj[v][v] counts loops, each loop contributing 2 to the degree.
struct QuadGraph {
  int n = 0;
  std::vector<std::vector<uint8_t>> adj;

  QuadGraph() = default;
  explicit QuadGraph(int n_) : n(n_), adj(n_, std::vector<uint8_t>(n_, 0)) {}

  int degree(int v) const;
  bool connected() const;
  bool valid() const;  // all degrees 4 and connected

  // Lexicographically least serialization over vertex relabelings:
  // "Q<n>:" followed by the upper triangle (diagonal included) of the
  // relabeled multiplicity matrix, one digit per entry, rows concatenated.
  std::string canonical_code() const;

  // All vertex permutations that fix the multiplicity matrix.
  std::vector<std::vector<int>> automorphisms() const;

  // One entry per edge instance, (u, v) with u <= v, sorted; loops appear as
  // (v, v). A multiplicity-m pair contributes m entries.
  std::vector<std::pair<int, int>> edge_list() const;

  static QuadGraph from_code(const std::string& code);
};

struct CanonResult {
  std::string code;
  std::vector<std::vector<int>> autos;
};
// Canonical code together with the full automorphism group.
CanonResult canonical_form(const QuadGraph& g);

// One representative per isomorphism class of connected 4-valent multigraphs
// on n vertices, emitted in canonical-code order. Deterministic across runs.
std::vector<QuadGraph> enumerate_quadgraphs(int n);
void enumerate_quadgraphs(int n, const std::function<void(const QuadGraph&)>& fn);

// Admissibility filter for the closed census. Rejects graphs containing a
// forbidden portion:
//   (1) three or more parallel edges between two vertices;
//   (2) two disjoint chains of double edges, each ending in a loop, whose
//       free ends are joined by a single edge;
//   (3) a chain end whose two free slots attach by single edges to two
//       distinct vertices that carry a double edge between them;
// except when the whole graph is a closed chain of double edges with a loop
// at each end, which is admissible as a whole.
bool filter_useful_closed(const QuadGraph& g);

// Admissibility filter for brick candidates: (1) no pair of edges
// disconnects the graph, and (2) every disconnecting 4-edge cut leaves at
// least one component that is either a bare vertex or a path of double
// edges, loop-free, with its two free slots at each end on the cut.
bool filter_useful_bricks(const QuadGraph& g);

}  // namespace mcensus
