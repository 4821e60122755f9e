#include "mcensus/pruning.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace mcensus {

namespace {

// Undirected tetrahedron edges in the fixed order (0,1) (0,2) (0,3) (1,2)
// (1,3) (2,3); kEdgeOf[a][b] is the index of edge {a,b}.
constexpr int kEdgeOf[4][4] = {{-1, 0, 1, 2},
                               {0, -1, 3, 4},
                               {1, 3, -1, 5},
                               {2, 4, 5, -1}};
constexpr int kEdgeEnds[6][2] = {{0, 1}, {0, 2}, {0, 3},
                                 {1, 2}, {1, 3}, {2, 3}};

// The two faces adjacent to edge e (the faces opposite its non-endpoints),
// ascending.
inline std::pair<int, int> adjacent_faces(int e) {
  bool used[4] = {false, false, false, false};
  used[kEdgeEnds[e][0]] = used[kEdgeEnds[e][1]] = true;
  int f0 = -1, f1 = -1;
  for (int f = 0; f < 4; ++f) {
    if (used[f]) continue;
    if (f0 < 0) f0 = f; else f1 = f;
  }
  return {f0, f1};
}

// Port = one of the two face-sides of one tetrahedron edge.
inline int port_of(int tet, int e, int face) {
  auto [f0, f1] = adjacent_faces(e);
  int side = face == f0 ? 0 : 1;
  return (tet * 6 + e) * 2 + side;
}

inline int port_instance(int port) { return port / 2; }

}  // namespace

PartialGluing::PartialGluing(const QuadGraph& g, bool closed_orientable)
    : graph_(&g),
      closed_orientable_(closed_orientable),
      slots_(edge_face_slots(g)),
      labels_(slots_.size(), -1),
      links_(size_t(g.n) * 12) {}

PruneVerdict PartialGluing::push_label(int label, const PruneFlags& flags) {
  if (complete()) throw std::logic_error("all edges already labeled");
  if (label < 0 || label >= 6) throw std::invalid_argument("label not in 0..5");
  int k = depth_;
  const EdgeSlot& s = slots_[k];
  Perm4 p = edge_label_perm(s.face0, s.face1, label);
  auto fv = face_vertices(s.face0);
  std::array<std::pair<int, int>, 3> made{};
  for (int i = 0; i < 3; ++i) {
    int a = fv[i], b = fv[(i + 1) % 3];
    if (a > b) std::swap(a, b);
    int pa = p[a], pb = p[b];
    signed char twist = pa < pb ? 1 : -1;
    if (pa > pb) std::swap(pa, pb);
    int pu = port_of(s.tet0, kEdgeOf[a][b], s.face0);
    int pv = port_of(s.tet1, kEdgeOf[pa][pb], s.face1);
    links_[pu] = Link{pv, twist, k, 1};
    links_[pv] = Link{pu, twist, k, -1};
    made[i] = {pu, pv};
  }
  labels_[k] = label;
  depth_ += 1;
  undo_.push_back(made);

  PruneVerdict verdict = PruneVerdict::kClean;
  // The three new links may share a component; walk each once.
  std::set<int> walked_anchor_instances;
  for (auto [pu, pv] : made) {
    if (walked_anchor_instances.count(port_instance(pu))) continue;
    PruneVerdict v = examine_component(pu, flags);
    // Mark every instance of the examined component (examine_component is
    // cheap; re-walking just to mark keeps the code in one place).
    int cur = pu;
    walked_anchor_instances.insert(port_instance(cur));
    // Forward sweep around the component from pu in both directions.
    for (int dir = 0; dir < 2; ++dir) {
      int pos = dir == 0 ? pu : (links_[pu].other >= 0 ? links_[pu].other : -1);
      if (dir == 1 && pos >= 0) walked_anchor_instances.insert(port_instance(pos));
      while (pos >= 0) {
        int exit = pos ^ 1;
        if (links_[exit].other < 0) break;
        pos = links_[exit].other;
        if (!walked_anchor_instances.insert(port_instance(pos)).second) break;
      }
    }
    if (v == PruneVerdict::kViolates) verdict = v;
  }
  return verdict;
}

void PartialGluing::pop_label() {
  if (depth_ == 0) throw std::logic_error("nothing to pop");
  for (auto [pu, pv] : undo_.back()) {
    links_[pu] = Link{};
    links_[pv] = Link{};
  }
  undo_.pop_back();
  depth_ -= 1;
  labels_[depth_] = -1;
}

PruneVerdict PartialGluing::examine_component(int start_port,
                                              const PruneFlags& flags) {
  // Rewind to a chain end, or detect that the component is a closed cycle.
  int anchor = start_port;
  bool cycle = false;
  int cur = start_port;
  while (links_[cur].other >= 0) {
    cur = links_[cur].other ^ 1;  // cross the link, then the instance
    if (cur == start_port) {
      cycle = true;
      break;
    }
  }
  if (!cycle) anchor = cur ^ 1;  // entry port of the chain's first instance

  // Walk forward: enter instance at `pos`, cross it, follow the link.
  int twist = 1;
  std::vector<int> tets;
  std::map<int, std::pair<int, int>> tally;  // gluing -> (+count, -count)
  int pos = anchor;
  while (true) {
    tets.push_back(port_instance(pos) / 6);
    int exit = pos ^ 1;
    const Link& ln = links_[exit];
    if (ln.other < 0) break;  // chain end
    twist *= ln.twist;
    if (ln.out_sign > 0) tally[ln.gluing].first += 1;
    else tally[ln.gluing].second += 1;
    pos = ln.other;
    if (pos == anchor) break;  // cycle closed
  }

  if (cycle) {
    if (twist < 0) return PruneVerdict::kViolates;  // edge reversed onto itself
    if (flags.faces && tets.size() <= 3) {
      std::vector<int> sorted = tets;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end())
        return PruneVerdict::kViolates;
    }
  }
  if (flags.incidence && closed_orientable_) {
    for (const auto& [g, counts] : tally) {
      if (counts.first + counts.second >= 3) return PruneVerdict::kViolates;
      if (counts.first >= 1 && counts.second >= 1)
        return PruneVerdict::kViolates;
    }
  }
  return PruneVerdict::kClean;
}

Triangulation PartialGluing::to_triangulation() const {
  if (!complete()) throw std::logic_error("gluing incomplete");
  return Triangulation::from_gluing(*graph_, labels());
}

PruneVerdict check_small_face(const Triangulation& t) {
  std::vector<std::vector<int>> tets_by_class(t.num_edge_classes());
  for (int tet = 0; tet < t.size(); ++tet)
    for (int e = 0; e < 6; ++e)
      tets_by_class[t.edge_class(tet, kEdgeEnds[e][0], kEdgeEnds[e][1])]
          .push_back(tet);
  for (auto& tets : tets_by_class) {
    if (tets.size() > 3) continue;
    std::sort(tets.begin(), tets.end());
    if (std::adjacent_find(tets.begin(), tets.end()) == tets.end())
      return PruneVerdict::kViolates;
  }
  return PruneVerdict::kClean;
}

namespace {

// One crossing of an edge-class orbit through a face-gluing, with enough
// attachment data to rebuild boundary positions of the dual spine face.
struct Crossing {
  int exit_port;   // port on the side the walk left through
  int entry_port;  // port on the arriving side
  int page_tet;    // tetrahedron traversed just before this crossing
  // Vertex labels of the oriented edge on each side: index 0 carries the
  // orientation class "0" of the edge class, index 1 the class "1".
  int exit_vertex[2];
  int entry_vertex[2];
};

struct OrbitTable {
  std::vector<std::vector<Crossing>> crossings_by_class;
  std::vector<char> bad;
  // port -> (class, position)
  std::unordered_map<int, std::pair<int, int>> position;
  // port * 4 + vertex -> orientation side (0/1)
  std::unordered_map<int, int> side;
};

// Walks every edge-class orbit of a complete triangulation.
OrbitTable build_orbits(const Triangulation& t) {
  OrbitTable table;
  int n = t.size();
  std::vector<char> visited(size_t(n) * 6, 0);
  for (int tet0 = 0; tet0 < n; ++tet0)
    for (int e0 = 0; e0 < 6; ++e0) {
      if (visited[tet0 * 6 + e0]) continue;
      std::vector<Crossing> orbit;
      bool bad = false;
      int tet = tet0;
      int u = kEdgeEnds[e0][0], v = kEdgeEnds[e0][1];
      auto [fa, fb] = adjacent_faces(e0);
      int exit_face = fa;
      int start_port = port_of(tet, e0, exit_face);
      while (true) {
        int e = kEdgeOf[u][v];
        visited[tet * 6 + e] = 1;
        const FaceGluing& fg = t.gluing(tet, exit_face);
        Crossing c;
        c.page_tet = tet;
        c.exit_port = port_of(tet, e, exit_face);
        c.exit_vertex[0] = u;
        c.exit_vertex[1] = v;
        int nu = fg.perm[u], nv = fg.perm[v];
        int ne = kEdgeOf[nu][nv];
        c.entry_port = port_of(fg.tet, ne, fg.face);
        c.entry_vertex[0] = nu;
        c.entry_vertex[1] = nv;
        orbit.push_back(c);
        tet = fg.tet;
        u = nu;
        v = nv;
        auto [ga, gb] = adjacent_faces(ne);
        exit_face = fg.face == ga ? gb : ga;
        int next_port = port_of(tet, ne, exit_face);
        if (next_port == start_port) {
          bad = u > v;  // orbit closed with the edge reversed
          break;
        }
        // A closed orbit must return through the start port; crossing it with
        // the opposite entry face cannot happen in a complete gluing.
      }
      int cls = int(table.crossings_by_class.size());
      for (int i = 0; i < int(orbit.size()); ++i) {
        const Crossing& c = orbit[i];
        table.position[c.exit_port] = {cls, i};
        table.position[c.entry_port] = {cls, i};
        table.side[c.exit_port * 4 + c.exit_vertex[0]] = 0;
        table.side[c.exit_port * 4 + c.exit_vertex[1]] = 1;
        table.side[c.entry_port * 4 + c.entry_vertex[0]] = 0;
        table.side[c.entry_port * 4 + c.entry_vertex[1]] = 1;
      }
      table.crossings_by_class.push_back(std::move(orbit));
      table.bad.push_back(bad);
    }
  return table;
}

}  // namespace

PruneVerdict check_edge_incidence(const Triangulation& t) {
  OrbitTable table = build_orbits(t);
  for (int cls = 0; cls < int(table.crossings_by_class.size()); ++cls) {
    if (table.bad[cls]) continue;
    // Gluing identity and crossing direction from the exit port: the gluing
    // is named by its lexicographically smaller (tet, face) side.
    std::map<std::pair<int, int>, std::pair<int, int>> tally;
    for (const Crossing& c : table.crossings_by_class[cls]) {
      int exit_tet = port_instance(c.exit_port) / 6;
      int exit_e = port_instance(c.exit_port) % 6;
      auto [fa, fb] = adjacent_faces(exit_e);
      int exit_face = (c.exit_port & 1) == 0 ? fa : fb;
      const FaceGluing& fg = t.gluing(exit_tet, exit_face);
      std::pair<int, int> here{exit_tet, exit_face};
      std::pair<int, int> there{fg.tet, fg.face};
      bool forward = here < there;
      auto& counts = tally[forward ? here : there];
      (forward ? counts.first : counts.second) += 1;
    }
    for (const auto& [g, counts] : tally) {
      if (counts.first + counts.second >= 3) return PruneVerdict::kViolates;
      if (counts.first >= 1 && counts.second >= 1)
        return PruneVerdict::kViolates;
    }
  }
  return PruneVerdict::kClean;
}

namespace {

// An arc through the spine face of one edge class, between two boundary
// positions.
struct Arc {
  int cls = -1;
  int pos_a = -1, pos_b = -1;
};

// Builds the arc between two crossing-point attachments, or reports that no
// embedded essential arc exists (different classes, equal positions, or
// opposite orientation sides).
bool make_arc(const OrbitTable& table, int port_a, int vertex_a, int port_b,
              int vertex_b, Arc* out) {
  auto ia = table.position.find(port_a);
  auto ib = table.position.find(port_b);
  if (ia == table.position.end() || ib == table.position.end()) return false;
  if (ia->second.first != ib->second.first) return false;
  int cls = ia->second.first;
  if (table.bad[cls]) return false;
  if (ia->second.second == ib->second.second) return false;
  int side_a = table.side.at(port_a * 4 + vertex_a);
  int side_b = table.side.at(port_b * 4 + vertex_b);
  if (side_a != side_b) return false;
  out->cls = cls;
  out->pos_a = ia->second.second;
  out->pos_b = ib->second.second;
  return true;
}

// Two chords of one disc boundary cross iff their endpoint pairs strictly
// interleave; shared endpoints can always be pushed apart along the shared
// boundary segment.
bool arcs_cross(const Arc& x, const Arc& y, int cycle_len) {
  if (x.cls != y.cls) return false;
  if (x.pos_a == y.pos_a || x.pos_a == y.pos_b || x.pos_b == y.pos_a ||
      x.pos_b == y.pos_b)
    return false;
  auto between = [&](int a, int b, int q) {
    // q strictly inside the cyclic interval (a, b)
    int span = (b - a + cycle_len) % cycle_len;
    int off = (q - a + cycle_len) % cycle_len;
    return off > 0 && off < span;
  };
  bool in1 = between(x.pos_a, x.pos_b, y.pos_a);
  bool in2 = between(x.pos_a, x.pos_b, y.pos_b);
  return in1 != in2;
}

// Tetrahedra whose corner this arc can cut: non-empty only when the arc
// joins cyclically consecutive boundary positions.
std::vector<int> corner_tets(const OrbitTable& table, const Arc& arc) {
  std::vector<int> tets;
  const auto& orbit = table.crossings_by_class[arc.cls];
  int d = int(orbit.size());
  if ((arc.pos_a + 1) % d == arc.pos_b)
    tets.push_back(orbit[arc.pos_b].page_tet);
  if ((arc.pos_b + 1) % d == arc.pos_a)
    tets.push_back(orbit[arc.pos_a].page_tet);
  return tets;
}

struct Germ {
  int port_a, port_b;  // the two wings joined at this corner channel
  int corner;          // vertex label shared by both wings
};

}  // namespace

PruneVerdict check_disc_curve(const Triangulation& t) {
  if (!t.is_candidate_closed() || !t.orientable()) return PruneVerdict::kClean;
  OrbitTable table = build_orbits(t);

  // Crossing germs: one per (face-gluing, corner) pair — the channel through
  // which a curve can cross the dual spine edge between the two wings meeting
  // at that corner.
  std::vector<Germ> germs;
  for (int tet = 0; tet < t.size(); ++tet)
    for (int f = 0; f < 4; ++f) {
      const FaceGluing& fg = t.gluing(tet, f);
      if (std::pair(fg.tet, fg.face) < std::pair(tet, f)) continue;
      auto fv = face_vertices(f);
      for (int i = 0; i < 3; ++i) {
        int v = fv[i], x = fv[(i + 1) % 3], y = fv[(i + 2) % 3];
        Germ g;
        g.corner = v;
        g.port_a = port_of(tet, kEdgeOf[std::min(v, x)][std::max(v, x)], f);
        g.port_b = port_of(tet, kEdgeOf[std::min(v, y)][std::max(v, y)], f);
        germs.push_back(g);
      }
    }
  int m = int(germs.size());

  // One crossing: an arc joining the two wings of a single germ.
  Arc arc;
  for (const Germ& g : germs)
    if (make_arc(table, g.port_a, g.corner, g.port_b, g.corner, &arc))
      return PruneVerdict::kViolates;

  // Two crossings: two arcs pairing the wings of two distinct germs.
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const Germ& g = germs[i];
      const Germ& h = germs[j];
      for (int swap = 0; swap < 2; ++swap) {
        int h1 = swap ? h.port_b : h.port_a;
        int h2 = swap ? h.port_a : h.port_b;
        Arc a1, a2;
        if (!make_arc(table, g.port_a, g.corner, h1, h.corner, &a1)) continue;
        if (!make_arc(table, g.port_b, g.corner, h2, h.corner, &a2)) continue;
        if (arcs_cross(a1, a2,
                       int(table.crossings_by_class[a1.cls].size())))
          continue;
        return PruneVerdict::kViolates;
      }
    }

  // Three crossings: arcs (1->2), (2->3), (3->1) with a wing orientation
  // chosen at every germ; curves cutting the three corners of one
  // tetrahedron are the trivial vertex-linking triangles and do not count.
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k) {
        const Germ* tri[3] = {&germs[i], &germs[j], &germs[k]};
        for (int mask = 0; mask < 8; ++mask) {
          Arc arcs3[3];
          bool ok = true;
          for (int s = 0; s < 3 && ok; ++s) {
            const Germ* from = tri[s];
            const Germ* to = tri[(s + 1) % 3];
            int fp = (mask >> s & 1) ? from->port_a : from->port_b;
            int tp = (mask >> ((s + 1) % 3) & 1) ? to->port_b : to->port_a;
            ok = make_arc(table, fp, from->corner, tp, to->corner, &arcs3[s]);
          }
          if (!ok) continue;
          bool crossing_pair = false;
          for (int s = 0; s < 3 && !crossing_pair; ++s)
            for (int u = s + 1; u < 3 && !crossing_pair; ++u)
              crossing_pair =
                  arcs_cross(arcs3[s], arcs3[u],
                             int(table.crossings_by_class[arcs3[s].cls].size()));
          if (crossing_pair) continue;
          // Vertex-triangle exclusion: all three arcs can cut the corner of
          // one common tetrahedron.
          std::vector<int> common = corner_tets(table, arcs3[0]);
          for (int s = 1; s < 3 && !common.empty(); ++s) {
            std::vector<int> next = corner_tets(table, arcs3[s]);
            std::vector<int> kept;
            for (int tet : common)
              if (std::find(next.begin(), next.end(), tet) != next.end())
                kept.push_back(tet);
            common = kept;
          }
          if (!common.empty()) continue;
          return PruneVerdict::kViolates;
        }
      }

  return PruneVerdict::kClean;
}

}  // namespace mcensus
