#include "mcensus/homology.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace mcensus {

std::string AbelianGroup::to_string() const {
  std::ostringstream out;
  out << rank << ';';
  for (size_t i = 0; i < torsion.size(); ++i) {
    if (i) out << ',';
    out << torsion[i];
  }
  return out.str();
}

AbelianGroup homology_h1(const Triangulation& t) {
  int n = t.size();
  // Generators: glued face pairs, identified by their lexicographically
  // smaller (tet, face) side; oriented from that side to the other.
  std::map<std::pair<int, int>, int> pair_id;
  std::vector<std::pair<int, int>> pair_tail;
  for (int a = 0; a < n; ++a)
    for (int f = 0; f < 4; ++f) {
      const FaceGluing& fg = t.gluing(a, f);
      if (std::make_pair(a, f) <= std::make_pair(fg.tet, fg.face)) {
        pair_id[{a, f}] = int(pair_tail.size());
        pair_tail.emplace_back(a, f);
      }
    }
  auto gen_of = [&](int a, int f) {
    const FaceGluing& fg = t.gluing(a, f);
    auto key = std::min(std::make_pair(a, f),
                        std::make_pair(fg.tet, fg.face));
    return pair_id.at(key);
  };
  // Crossing face (a,f) into the partner contributes +1 when leaving through
  // the tail side, -1 through the head side, 0 on a face glued to itself.
  auto sign_of = [&](int a, int f) {
    const FaceGluing& fg = t.gluing(a, f);
    if (fg.tet == a && fg.face == f) return 0;
    return std::make_pair(a, f) < std::make_pair(fg.tet, fg.face) ? 1 : -1;
  };
  int gens = int(pair_tail.size());

  std::vector<std::vector<Int>> rel;

  // Spanning tree of the dual graph: each tree face pair is killed.
  {
    std::vector<char> seen(n, 0);
    for (int s = 0; s < n; ++s) {
      if (seen[s]) continue;
      seen[s] = 1;
      std::vector<int> stack{s};
      while (!stack.empty()) {
        int a = int(stack.back());
        stack.pop_back();
        for (int f = 0; f < 4; ++f) {
          int b = t.gluing(a, f).tet;
          if (seen[b]) continue;
          seen[b] = 1;
          stack.push_back(b);
          std::vector<Int> row(gens, 0);
          row[gen_of(a, f)] = 1;
          rel.push_back(std::move(row));
        }
      }
    }
  }

  // One relator per edge class: walk around the edge, recording each face
  // crossing with its orientation sign.
  std::vector<char> walked(6 * n, 0);
  auto edge_index = [](int a, int b) {
    static const int tbl[4][4] = {{-1, 0, 1, 2},
                                  {0, -1, 3, 4},
                                  {1, 3, -1, 5},
                                  {2, 4, 5, -1}};
    return tbl[a][b];
  };
  for (int a0 = 0; a0 < n; ++a0)
    for (int x = 0; x < 4; ++x)
      for (int y = x + 1; y < 4; ++y) {
        if (walked[a0 * 6 + edge_index(x, y)]) continue;
        std::vector<Int> row(gens, 0);
        // Initial state: pretend we entered through the smaller free face.
        int faces[2], k = 0;
        for (int f = 0; f < 4; ++f)
          if (f != x && f != y) faces[k++] = f;
        int ct = a0, ca = x, cb = y, enter = faces[0];
        do {
          walked[ct * 6 + edge_index(ca, cb)] = 1;
          int leave = -1;
          for (int f = 0; f < 4; ++f)
            if (f != ca && f != cb && f != enter) leave = f;
          row[gen_of(ct, leave)] += sign_of(ct, leave);
          const FaceGluing& fg = t.gluing(ct, leave);
          int na = fg.perm[ca], nb = fg.perm[cb];
          enter = fg.perm[leave];
          ct = fg.tet;
          ca = na;
          cb = nb;
        } while (!(ct == a0 && ca == x && cb == y && enter == faces[0]));
        rel.push_back(std::move(row));
      }

  auto d = smith_normal_form(std::move(rel));
  AbelianGroup out;
  out.rank = gens - int(d.size());
  for (const Int& v : d)
    if (v > 1) out.torsion.push_back(v);
  return out;
}

int pervova_lower_bound(const AbelianGroup& h) {
  Int tor = 1;
  for (const Int& d : h.torsion) tor *= d;
  Int x = tor;
  int k = 0;
  bool power_of_five = true;
  while (x > 1) {
    if (x % 5 == 0) {
      x /= 5;
      ++k;
    } else {
      power_of_five = false;
      break;
    }
  }
  int value;
  if (power_of_five) {
    value = 2 * k + h.rank - 1;
  } else {
    // floor(2*log5 |Tor|): the largest m with 5^m <= |Tor|^2.
    Int sq = tor * tor, p = 1;
    int m = 0;
    while (p * 5 <= sq) {
      p *= 5;
      ++m;
    }
    value = m + h.rank - 1;
  }
  return std::max(0, value);
}

}  // namespace mcensus
