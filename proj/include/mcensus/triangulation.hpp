#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mcensus/quadgraph.hpp"

namespace mcensus {

// Permutation of {0,1,2,3}: perm[i] = image of i.
using Perm4 = std::array<uint8_t, 4>;

constexpr Perm4 kIdPerm{0, 1, 2, 3};

int perm_sign(const Perm4& p);                    // +1 even, -1 odd
Perm4 perm_compose(const Perm4& a, const Perm4& b);  // (a ∘ b)[i] = a[b[i]]
Perm4 perm_inverse(const Perm4& p);
int perm_index(const Perm4& p);                   // 0..23, lexicographic rank
Perm4 perm_from_index(int idx);

// The three vertices of face f (the face opposite vertex f), ascending.
std::array<int, 3> face_vertices(int f);

// One glued face: partner tetrahedron, partner face, and the vertex map from
// this tetrahedron's labels to the partner's (perm[face] == partner face).
struct FaceGluing {
  int tet = -1;
  int face = -1;
  Perm4 perm = kIdPerm;
};

// Face slots for a graph: each edge instance occupies one face at each
// endpoint, assigned in edge-list order by a per-vertex counter.  Loops use
// two faces of the same tetrahedron.
struct EdgeSlot {
  int tet0, face0;
  int tet1, face1;
};
std::vector<EdgeSlot> edge_face_slots(const QuadGraph& g);

// The 6 permutations available for one edge: bijections of the two matched
// face-vertex triples (ascending order composed with one of the six
// bijections), extended to all four labels by face |-> face.
Perm4 edge_label_perm(int face_from, int face_to, int label);

class Triangulation {
 public:
  // Takes the full gluing table; validates the involution property.
  explicit Triangulation(std::vector<std::array<FaceGluing, 4>> glue);

  // Assemble from a 4-valent graph plus one label (0..5) per edge instance.
  static Triangulation from_gluing(const QuadGraph& g,
                                   const std::vector<int>& labels);

  static Triangulation parse(const std::string& text);
  std::string serialize() const;

  int size() const { return n_; }
  const FaceGluing& gluing(int tet, int face) const {
    return glue_[tet][face];
  }

  int num_vertex_classes() const { return num_vertex_classes_; }
  int num_edge_classes() const { return num_edge_classes_; }
  int vertex_class(int tet, int v) const {
    return vertex_class_[tet * 4 + v];
  }
  int edge_class(int tet, int a, int b) const;
  int edge_class_size(int c) const { return edge_class_size_[c]; }
  bool edge_class_bad(int c) const { return edge_class_bad_[c]; }
  bool has_bad_edge() const;

  int link_euler(int vertex_cls) const { return link_euler_[vertex_cls]; }
  bool link_orientable(int vertex_cls) const {
    return link_orientable_[vertex_cls];
  }

  bool orientable() const { return orientable_; }

  bool is_candidate_closed() const;
  bool is_candidate_ideal() const;

  // Replaces the two distinct tetrahedra sharing the given face by three
  // around a new central edge.  Throws std::invalid_argument when the face is
  // glued to the same tetrahedron.
  Triangulation pachner_23(int tet, int face) const;

  // Complete combinatorial-isomorphism invariant: lexicographically least
  // breadth-first serialization over all start tetrahedra and relabelings,
  // rendered in a printable base-64-like alphabet.
  std::string isomorphism_signature() const;

 private:
  void compute_cells();

  int n_ = 0;
  std::vector<std::array<FaceGluing, 4>> glue_;

  int num_vertex_classes_ = 0;
  int num_edge_classes_ = 0;
  std::vector<int> vertex_class_;        // 4n corners
  std::vector<int> edge_class_;          // 6n undirected tet edges
  std::vector<int> edge_class_size_;
  std::vector<char> edge_class_bad_;
  std::vector<int> link_euler_;
  std::vector<char> link_orientable_;
  bool orientable_ = false;
};

}  // namespace mcensus
