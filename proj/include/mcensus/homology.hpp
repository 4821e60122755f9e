#pragma once

#include <string>
#include <vector>

#include "mcensus/smith.hpp"
#include "mcensus/triangulation.hpp"

namespace mcensus {

struct AbelianGroup {
  int rank = 0;                // free rank b1
  std::vector<Int> torsion;    // invariant factors d1 | d2 | ..., each >= 2

  bool operator==(const AbelianGroup&) const = default;

  // "<b1>;<d1,d2,...>", e.g. "0;5,5" for Z5+Z5, "1;" for Z.
  std::string to_string() const;
};

// First homology of the manifold the triangulation carries.  Closed inputs
// give H1 of the closed manifold; ideal inputs give H1 of the compact
// manifold (complex minus open vertex stars).  Both come from the same
// presentation: generators are the glued face pairs (dual 1-cells), relators
// are the edge-class boundary walks plus a spanning tree of the dual graph.
AbelianGroup homology_h1(const Triangulation& t);

// Lower complexity bound from the torsion of H1: exact value of
// 2*log5|Tor| + b1 - 1 when |Tor| is a power of five, a conservative
// round-down otherwise, clamped at zero.
int pervova_lower_bound(const AbelianGroup& h);

}  // namespace mcensus
