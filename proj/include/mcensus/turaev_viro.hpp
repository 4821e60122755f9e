#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "mcensus/numberfield.hpp"
#include "mcensus/triangulation.hpp"

namespace mcensus {

// State-sum invariant at level r (r >= 3): edge colours 0..r-2, admissible
// triples colour the triangles, and each colouring contributes a product of
// loop, theta and tetrahedral network evaluations.  All arithmetic is exact
// in the real cyclotomic field Q(2 cos(pi/r)); the numeric embedding reports
// the value at the standard real root.
class StateSumEngine {
 public:
  explicit StateSumEngine(int r);

  int r() const { return r_; }
  const CosineField& field() const { return field_; }

  // Quantum integer [n] and factorial [n]!.
  FieldElem qint(int n);
  FieldElem qfact(int n);
  // Loop value of colour a: (-1)^a [a+1].
  FieldElem loop(int a);
  // Total weight w^2 = sum of loop(a)^2.
  FieldElem total_weight();

  bool admissible(int a, int b, int c) const;
  // Theta network of an admissible triple.
  FieldElem theta(int a, int b, int c);
  // Tetrahedral network; faces (A,B,E), (C,D,E), (A,D,F), (B,C,F) must all
  // be admissible.  Opposite edge pairs are (A,C), (B,D), (E,F).
  FieldElem tet(int A, int B, int E, int C, int D, int F);

  // The invariant of a triangulation whose faces are all glued.  Exact value.
  FieldElem invariant(const Triangulation& t);
  // Independent evaluation in double arithmetic (trigonometric quantum
  // integers), for cross-checking the exact path.
  double invariant_double(const Triangulation& t);

  struct ColouringPlan;

 private:
  ColouringPlan make_plan(const Triangulation& t) const;

  int r_;
  CosineField field_;
  std::vector<FieldElem> qint_, qfact_, loop_;
  std::unordered_map<uint64_t, FieldElem> theta_memo_, tet_memo_;
};

}  // namespace mcensus
