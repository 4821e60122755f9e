#include "mcensus/turaev_viro.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace mcensus {

namespace {

uint64_t triple_key(int a, int b, int c) {
  return uint64_t(a) | uint64_t(b) << 8 | uint64_t(c) << 16;
}

uint64_t six_key(int A, int B, int E, int C, int D, int F) {
  return uint64_t(A) | uint64_t(B) << 8 | uint64_t(E) << 16 |
         uint64_t(C) << 24 | uint64_t(D) << 32 | uint64_t(F) << 40;
}

}  // namespace

StateSumEngine::StateSumEngine(int r) : r_(r), field_(r) {
  if (r < 3) throw std::invalid_argument("state-sum level must be at least 3");
  qint_.push_back(field_.zero());
  qint_.push_back(field_.one());
  FieldElem d = field_.generator();
  for (int n = 2; n <= 2 * r_; ++n)
    qint_.push_back(d * qint_[n - 1] - qint_[n - 2]);
  qfact_.push_back(field_.one());
  for (int n = 1; n <= 2 * r_; ++n)
    qfact_.push_back(qfact_[n - 1] * qint_[n]);
  for (int a = 0; a <= r_ - 2; ++a)
    loop_.push_back(a % 2 ? -qint_[a + 1] : qint_[a + 1]);
}

FieldElem StateSumEngine::qint(int n) { return qint_.at(n); }
FieldElem StateSumEngine::qfact(int n) { return qfact_.at(n); }
FieldElem StateSumEngine::loop(int a) { return loop_.at(a); }

FieldElem StateSumEngine::total_weight() {
  FieldElem w2 = field_.zero();
  for (int a = 0; a <= r_ - 2; ++a) w2 += loop_[a] * loop_[a];
  return w2;
}

bool StateSumEngine::admissible(int a, int b, int c) const {
  if ((a + b + c) % 2) return false;
  if (c < std::abs(a - b) || c > a + b) return false;
  return a + b + c <= 2 * (r_ - 2);
}

FieldElem StateSumEngine::theta(int a, int b, int c) {
  assert(admissible(a, b, c));
  int s[3] = {a, b, c};
  std::sort(s, s + 3);
  uint64_t key = triple_key(s[0], s[1], s[2]);
  auto it = theta_memo_.find(key);
  if (it != theta_memo_.end()) return it->second;
  int m = (s[0] + s[1] - s[2]) / 2;
  int n = (s[1] + s[2] - s[0]) / 2;
  int p = (s[2] + s[0] - s[1]) / 2;
  FieldElem v = qfact_[m + n + p + 1] * qfact_[m] * qfact_[n] * qfact_[p] /
                (qfact_[m + n] * qfact_[n + p] * qfact_[p + m]);
  if ((m + n + p) % 2) v = -v;
  theta_memo_.emplace(key, v);
  return v;
}

FieldElem StateSumEngine::tet(int A, int B, int E, int C, int D, int F) {
  uint64_t key = six_key(A, B, E, C, D, F);
  auto it = tet_memo_.find(key);
  if (it != tet_memo_.end()) return it->second;
  int a[4] = {(A + B + E) / 2, (C + D + E) / 2, (A + D + F) / 2,
              (B + C + F) / 2};
  int b[3] = {(A + B + C + D) / 2, (A + C + E + F) / 2, (B + D + E + F) / 2};
  int lo = *std::max_element(a, a + 4);
  int hi = *std::min_element(b, b + 3);
  FieldElem sum = field_.zero();
  for (int s = lo; s <= hi; ++s) {
    FieldElem term = qfact_[s + 1];
    for (int i = 0; i < 4; ++i) term /= qfact_[s - a[i]];
    for (int j = 0; j < 3; ++j) term /= qfact_[b[j] - s];
    if (s % 2) term = -term;
    sum += term;
  }
  FieldElem inner = field_.one();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j) inner *= qfact_[b[j] - a[i]];
  FieldElem outer =
      qfact_[A] * qfact_[B] * qfact_[C] * qfact_[D] * qfact_[E] * qfact_[F];
  FieldElem v = inner / outer * sum;
  tet_memo_.emplace(key, v);
  return v;
}

// Shared colouring schedule: edge classes in assignment order, faces keyed to
// the moment their last edge is coloured, tetrahedra evaluated at the leaves.
struct StateSumEngine::ColouringPlan {
  int num_classes = 0;
  int num_vertices = 0;
  std::vector<std::array<int, 3>> faces;      // edge classes per face cell
  std::vector<std::array<int, 6>> tets;       // A,B,E,C,D,F slots per tet
  std::vector<int> order;                     // class assignment order
  std::vector<std::vector<int>> ready_faces;  // faces complete at step i
};

StateSumEngine::ColouringPlan StateSumEngine::make_plan(
    const Triangulation& t) const {
  ColouringPlan plan;
  plan.num_classes = t.num_edge_classes();
  plan.num_vertices = t.num_vertex_classes();
  for (int a = 0; a < t.size(); ++a)
    for (int f = 0; f < 4; ++f) {
      const FaceGluing& fg = t.gluing(a, f);
      if (std::make_pair(a, f) > std::make_pair(fg.tet, fg.face)) continue;
      auto verts = face_vertices(f);
      plan.faces.push_back({t.edge_class(a, verts[0], verts[1]),
                            t.edge_class(a, verts[0], verts[2]),
                            t.edge_class(a, verts[1], verts[2])});
    }
  for (int a = 0; a < t.size(); ++a)
    plan.tets.push_back({t.edge_class(a, 0, 1), t.edge_class(a, 0, 2),
                         t.edge_class(a, 1, 2), t.edge_class(a, 2, 3),
                         t.edge_class(a, 1, 3), t.edge_class(a, 0, 3)});
  // Assignment order: greedily pick the class closing the most faces.
  std::vector<char> chosen(plan.num_classes, 0);
  while (int(plan.order.size()) < plan.num_classes) {
    int best = -1, best_score = -1;
    for (int c = 0; c < plan.num_classes; ++c) {
      if (chosen[c]) continue;
      int score = 0;
      for (const auto& f : plan.faces) {
        bool uses = false;
        int missing = 0;
        for (int e : f) {
          if (e == c) uses = true;
          if (!chosen[e] && e != c) ++missing;
        }
        if (uses && missing == 0) ++score;
      }
      if (score > best_score) {
        best_score = score;
        best = c;
      }
    }
    chosen[best] = 1;
    plan.order.push_back(best);
  }
  std::vector<int> pos(plan.num_classes);
  for (int i = 0; i < plan.num_classes; ++i) pos[plan.order[i]] = i;
  plan.ready_faces.resize(plan.num_classes);
  for (size_t fi = 0; fi < plan.faces.size(); ++fi) {
    int last = 0;
    for (int e : plan.faces[fi]) last = std::max(last, pos[e]);
    plan.ready_faces[last].push_back(int(fi));
  }
  return plan;
}

namespace {

// Generic depth-first evaluation over admissible colourings; Alg supplies the
// arithmetic (exact field elements or plain doubles).
template <typename Alg>
typename Alg::Value evaluate_plan(
    const typename StateSumEngine::ColouringPlan& plan, int num_colours,
    Alg& alg) {
  std::vector<int> colour(plan.num_classes, 0);
  typename Alg::Value total = alg.zero();
  std::vector<int> stack_colour;
  // Recursive lambda over assignment depth.
  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == plan.num_classes) {
      total = alg.add(total, alg.term(plan, colour));
      return;
    }
    int cls = plan.order[depth];
    for (int col = 0; col < num_colours; ++col) {
      colour[cls] = col;
      bool ok = true;
      for (int fi : plan.ready_faces[depth]) {
        const auto& f = plan.faces[fi];
        if (!alg.engine->admissible(colour[f[0]], colour[f[1]],
                                    colour[f[2]])) {
          ok = false;
          break;
        }
      }
      if (ok) self(self, depth + 1);
    }
  };
  rec(rec, 0);
  return alg.finish(plan, total);
}

}  // namespace

FieldElem StateSumEngine::invariant(const Triangulation& t) {
  ColouringPlan plan = make_plan(t);
  struct ExactAlg {
    StateSumEngine* engine;
    using Value = FieldElem;
    Value zero() { return engine->field().zero(); }
    Value add(const Value& a, const Value& b) { return a + b; }
    Value term(const ColouringPlan& plan, const std::vector<int>& colour) {
      Value v = engine->field().one();
      for (int c = 0; c < plan.num_classes; ++c) v *= engine->loop(colour[c]);
      for (const auto& f : plan.faces)
        v /= engine->theta(colour[f[0]], colour[f[1]], colour[f[2]]);
      for (const auto& s : plan.tets)
        v *= engine->tet(colour[s[0]], colour[s[1]], colour[s[2]],
                         colour[s[3]], colour[s[4]], colour[s[5]]);
      return v;
    }
    Value finish(const ColouringPlan& plan, const Value& total) {
      return total * engine->total_weight().pow(-long(plan.num_vertices));
    }
  } alg{this};
  return evaluate_plan(plan, r_ - 1, alg);
}

double StateSumEngine::invariant_double(const Triangulation& t) {
  ColouringPlan plan = make_plan(t);
  // Trigonometric quantum data, fully independent of the field arithmetic.
  int r = r_;
  std::vector<double> qi(2 * r + 1), qf(2 * r + 1);
  double s1 = std::sin(M_PI / r);
  for (int n = 0; n <= 2 * r; ++n) qi[n] = std::sin(n * M_PI / r) / s1;
  qf[0] = 1.0;
  for (int n = 1; n <= 2 * r; ++n) qf[n] = qf[n - 1] * qi[n];
  auto dloop = [&](int a) { return (a % 2 ? -1.0 : 1.0) * qi[a + 1]; };
  auto dtheta = [&](int a, int b, int c) {
    int m = (a + b - c) / 2, n = (b + c - a) / 2, p = (c + a - b) / 2;
    double v = qf[m + n + p + 1] * qf[m] * qf[n] * qf[p] /
               (qf[m + n] * qf[n + p] * qf[p + m]);
    return (m + n + p) % 2 ? -v : v;
  };
  auto dtet = [&](int A, int B, int E, int C, int D, int F) {
    int a[4] = {(A + B + E) / 2, (C + D + E) / 2, (A + D + F) / 2,
                (B + C + F) / 2};
    int b[3] = {(A + B + C + D) / 2, (A + C + E + F) / 2,
                (B + D + E + F) / 2};
    int lo = *std::max_element(a, a + 4);
    int hi = *std::min_element(b, b + 3);
    double sum = 0;
    for (int s = lo; s <= hi; ++s) {
      double term = qf[s + 1];
      for (int i = 0; i < 4; ++i) term /= qf[s - a[i]];
      for (int j = 0; j < 3; ++j) term /= qf[b[j] - s];
      sum += (s % 2) ? -term : term;
    }
    double inner = 1.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 3; ++j) inner *= qf[b[j] - a[i]];
    double outer = qf[A] * qf[B] * qf[C] * qf[D] * qf[E] * qf[F];
    return inner / outer * sum;
  };
  double w2 = 0;
  for (int a = 0; a <= r - 2; ++a) w2 += dloop(a) * dloop(a);
  struct DoubleAlg {
    StateSumEngine* engine;
    decltype(dloop)* pl;
    decltype(dtheta)* pt;
    decltype(dtet)* px;
    double w2;
    using Value = double;
    Value zero() { return 0.0; }
    Value add(Value a, Value b) { return a + b; }
    Value term(const ColouringPlan& plan, const std::vector<int>& colour) {
      double v = 1.0;
      for (int c = 0; c < plan.num_classes; ++c) v *= (*pl)(colour[c]);
      for (const auto& f : plan.faces)
        v /= (*pt)(colour[f[0]], colour[f[1]], colour[f[2]]);
      for (const auto& s : plan.tets)
        v *= (*px)(colour[s[0]], colour[s[1]], colour[s[2]], colour[s[3]],
                   colour[s[4]], colour[s[5]]);
      return v;
    }
    Value finish(const ColouringPlan& plan, Value total) {
      return total * std::pow(w2, -plan.num_vertices);
    }
  } alg{this, &dloop, &dtheta, &dtet, w2};
  return evaluate_plan(plan, r_ - 1, alg);
}

}  // namespace mcensus
