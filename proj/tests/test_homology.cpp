#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>
#include <string>
#include <vector>

#include "mcensus/homology.hpp"
#include "mcensus/quadgraph.hpp"
#include "mcensus/triangulation.hpp"

using namespace mcensus;

namespace {

template <typename F>
void for_each_gluing(const QuadGraph& g, F&& fn) {
  auto slots = edge_face_slots(g);
  std::vector<int> labels(slots.size(), 0);
  while (true) {
    fn(Triangulation::from_gluing(g, labels));
    size_t k = 0;
    for (; k < labels.size(); ++k) {
      if (labels[k] < 5) {
        labels[k] += 1;
        break;
      }
      labels[k] = 0;
    }
    if (k == labels.size()) break;
  }
}

std::vector<std::vector<Int>> mat(std::vector<std::vector<long>> in) {
  std::vector<std::vector<Int>> out;
  for (auto& row : in) out.emplace_back(row.begin(), row.end());
  return out;
}

}  // namespace

TEST_CASE("smith normal form on known matrices") {
  auto d = smith_normal_form(mat({{2, 0}, {0, 3}}));
  REQUIRE(d.size() == 2);
  CHECK(d[0] == 1);
  CHECK(d[1] == 6);

  d = smith_normal_form(mat({{4, 0}, {0, 6}}));
  REQUIRE(d.size() == 2);
  CHECK(d[0] == 2);
  CHECK(d[1] == 12);

  d = smith_normal_form(mat({{2, 4}, {6, 8}}));
  REQUIRE(d.size() == 2);
  CHECK(d[0] == 2);
  CHECK(d[1] == 4);

  d = smith_normal_form(mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  REQUIRE(d.size() == 3);
  CHECK(d[0] == 1);
  CHECK(d[2] == 1);

  d = smith_normal_form(mat({{0, 0}, {0, 0}}));
  CHECK(d.empty());

  // Random invariance: shuffling rows/columns and adding row multiples never
  // changes the result.
  std::mt19937 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::vector<Int>> m(3, std::vector<Int>(4));
    for (auto& row : m)
      for (auto& v : row) v = int(rng() % 21) - 10;
    auto base = smith_normal_form(m);
    auto twisted = m;
    for (int ops = 0; ops < 6; ++ops) {
      int i = rng() % 3, j = rng() % 3;
      if (i == j) continue;
      long c = long(rng() % 7) - 3;
      for (int col = 0; col < 4; ++col) twisted[i][col] += c * twisted[j][col];
    }
    CHECK(smith_normal_form(twisted) == base);
  }
}

TEST_CASE("divisibility chain always holds") {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::vector<Int>> m(4, std::vector<Int>(4));
    for (auto& row : m)
      for (auto& v : row) v = int(rng() % 41) - 20;
    auto d = smith_normal_form(m);
    for (size_t i = 0; i + 1 < d.size(); ++i) {
      CHECK(d[i] > 0);
      CHECK(d[i + 1] % d[i] == 0);
    }
  }
}

TEST_CASE("one-tetrahedron closed candidates have the expected groups") {
  std::set<std::string> groups;
  for_each_gluing(enumerate_quadgraphs(1)[0], [&](const Triangulation& t) {
    if (t.is_candidate_closed()) groups.insert(homology_h1(t).to_string());
  });
  // The three closed manifolds with a one-tetrahedron triangulation: the
  // sphere and the two lens spaces of complexity one.
  CHECK(groups == std::set<std::string>{"0;", "0;4", "0;5"});
}

TEST_CASE("two-tetrahedron closed candidates cover the seed groups") {
  std::set<std::string> groups;
  for (const auto& g : enumerate_quadgraphs(2))
    for_each_gluing(g, [&](const Triangulation& t) {
      if (t.is_candidate_closed()) groups.insert(homology_h1(t).to_string());
    });
  // Projective space, L(3,1) and the sphere bundle all triangulate with two
  // tetrahedra.
  CHECK(groups.count("0;2"));
  CHECK(groups.count("0;3"));
  CHECK(groups.count("1;"));
}

TEST_CASE("ideal candidates include an integral-homology cusp") {
  std::set<std::string> groups;
  for (const auto& g : enumerate_quadgraphs(2))
    for_each_gluing(g, [&](const Triangulation& t) {
      if (t.is_candidate_ideal() && t.orientable() &&
          t.num_vertex_classes() == 1)
        groups.insert(homology_h1(t).to_string());
    });
  CHECK(groups.count("1;"));  // knot-complement-like: H1 = Z
}

TEST_CASE("homology is invariant under the 2-3 move") {
  std::mt19937 rng(424242);
  int tested = 0;
  for (const auto& g : enumerate_quadgraphs(2)) {
    for_each_gluing(g, [&](const Triangulation& t) {
      if (tested >= 10) return;
      if (!t.is_candidate_closed() && !t.is_candidate_ideal()) return;
      ++tested;
      auto before = homology_h1(t);
      Triangulation cur = t;
      for (int moves = 0; moves < 4; ++moves) {
        std::vector<std::pair<int, int>> internal;
        for (int a = 0; a < cur.size(); ++a)
          for (int f = 0; f < 4; ++f)
            if (cur.gluing(a, f).tet != a) internal.emplace_back(a, f);
        REQUIRE(!internal.empty());
        auto [a, f] = internal[rng() % internal.size()];
        cur = cur.pachner_23(a, f);
        CHECK(homology_h1(cur) == before);
      }
    });
  }
  CHECK(tested == 10);
}

TEST_CASE("torsion lower bound") {
  AbelianGroup five_five{0, {5, 5}};
  CHECK(pervova_lower_bound(five_five) == 3);
  AbelianGroup trivial{0, {}};
  CHECK(pervova_lower_bound(trivial) == 0);
  AbelianGroup z{1, {}};
  CHECK(pervova_lower_bound(z) == 0);
  AbelianGroup z125{0, {125}};
  CHECK(pervova_lower_bound(z125) == 5);  // 2*3 + 0 - 1
  // Non-power-of-five torsion rounds down: |Tor| = 7, 2*log5(7) = 2.41...
  AbelianGroup z7{0, {7}};
  CHECK(pervova_lower_bound(z7) == 1);
  // Rank contributes linearly.
  AbelianGroup z2_5{2, {5}};
  CHECK(pervova_lower_bound(z2_5) == 3);  // 2*1 + 2 - 1
}

TEST_CASE("group string round trip") {
  AbelianGroup g{2, {3, 12}};
  CHECK(g.to_string() == "2;3,12");
  AbelianGroup t{0, {}};
  CHECK(t.to_string() == "0;");
}
