#pragma once

#include <utility>
#include <vector>

#include "mcensus/quadgraph.hpp"
#include "mcensus/triangulation.hpp"

namespace mcensus {

enum class PruneVerdict { kClean, kViolates };

// Which non-minimality criteria are active.
struct PruneFlags {
  bool faces = true;      // small embedded spine faces (edge classes of
                          // degree <= 3 meeting three distinct tetrahedra)
  bool incidence = true;  // a spine face crossing one face-gluing three
                          // times, or twice with opposite directions
                          // (closed orientable searches only)
  bool disc = true;       // short bounding curves on the spine (complete
                          // closed orientable gluings only)
};

// A gluing of the tetrahedra of a 4-valent graph built one edge label at a
// time, in stack discipline.  Each push links the three edge slots of the
// newly glued face pair into the partially formed edge-identification
// orbits and evaluates the monotone-safe criteria: an edge identified to
// itself reversed (never a manifold), a completed orbit forming a small
// embedded face, and — for closed orientable searches — a partial orbit
// already crossing one face-gluing three times or twice with opposite
// directions.  Extending labels never un-merges an orbit, so a violation
// reported here persists in every completion.
class PartialGluing {
 public:
  PartialGluing(const QuadGraph& g, bool closed_orientable);

  int num_edges() const { return int(slots_.size()); }
  int depth() const { return depth_; }
  bool complete() const { return depth_ == num_edges(); }
  const QuadGraph& graph() const { return *graph_; }

  // Labels applied so far, in edge order (depth() entries).
  std::vector<int> labels() const {
    return std::vector<int>(labels_.begin(), labels_.begin() + depth_);
  }

  // Applies label (0..5) to the next unlabeled edge instance.  The label
  // stays applied whatever the verdict; call pop_label to undo.
  PruneVerdict push_label(int label, const PruneFlags& flags);
  void pop_label();

  // Assembles the complete triangulation; requires complete().
  Triangulation to_triangulation() const;

 private:
  struct Link {
    int other = -1;       // partner port, -1 when the slot is unglued
    signed char twist = 0;     // +1 order-preserving, -1 order-reversing
    int gluing = -1;      // edge-instance index that created the link
    signed char out_sign = 0;  // crossing direction when exiting this port
  };

  PruneVerdict examine_component(int start_port, const PruneFlags& flags);

  const QuadGraph* graph_;
  bool closed_orientable_;
  std::vector<EdgeSlot> slots_;
  std::vector<int> labels_;
  int depth_ = 0;
  std::vector<Link> links_;                             // 12n ports
  std::vector<std::array<std::pair<int, int>, 3>> undo_;
};

// Criterion checks on complete triangulations (the incremental search embeds
// the same logic; these are the reference implementations used by tests and
// by the census final pass).

// A minimal spine contains no embedded face with at most 3 edges: violated
// by an edge class of degree <= 3 whose slots lie in pairwise distinct
// tetrahedra.
PruneVerdict check_small_face(const Triangulation& t);

// Closed orientable criterion: no spine face crosses one face-gluing three
// times, or twice with opposite directions.
PruneVerdict check_edge_incidence(const Triangulation& t);

// Closed orientable criterion on complete gluings: searches for a simple
// closed curve on the spine crossing the singular set transversely in at
// most 3 points, bounding a disc in the complementary ball, and not
// contained in a small neighborhood of a point.  Returns kClean when the
// triangulation is not a closed orientable candidate (precondition).
PruneVerdict check_disc_curve(const Triangulation& t);

}  // namespace mcensus
