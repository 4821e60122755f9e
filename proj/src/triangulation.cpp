#include "mcensus/triangulation.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mcensus {

namespace {

constexpr int kS3[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                           {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};

// Undirected tet-edge index for the pair {a,b}, a != b.
constexpr int kEdgeIndex[4][4] = {{-1, 0, 1, 2},
                                  {0, -1, 3, 4},
                                  {1, 3, -1, 5},
                                  {2, 4, 5, -1}};

int dir_index(int a, int b) { return a * 3 + (b > a ? b - 1 : b); }

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

int perm_sign(const Perm4& p) {
  int inv = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[i] > p[j]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

Perm4 perm_compose(const Perm4& a, const Perm4& b) {
  return {a[b[0]], a[b[1]], a[b[2]], a[b[3]]};
}

Perm4 perm_inverse(const Perm4& p) {
  Perm4 inv{};
  for (uint8_t i = 0; i < 4; ++i) inv[p[i]] = i;
  return inv;
}

int perm_index(const Perm4& p) {
  int idx = 0;
  for (int i = 0; i < 4; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < 4; ++j)
      if (p[j] < p[i]) ++smaller;
    idx = idx * (4 - i) + smaller;
  }
  return idx;
}

Perm4 perm_from_index(int idx) {
  std::array<uint8_t, 4> avail{0, 1, 2, 3};
  Perm4 p{};
  int radix[4] = {6, 2, 1, 1};
  int used = 0;
  for (int i = 0; i < 4; ++i) {
    int d = idx / radix[i];
    idx %= radix[i];
    p[i] = avail[d];
    for (int j = d; j + used < 3; ++j) avail[j] = avail[j + 1];
    ++used;
  }
  return p;
}

std::array<int, 3> face_vertices(int f) {
  std::array<int, 3> out{};
  int k = 0;
  for (int v = 0; v < 4; ++v)
    if (v != f) out[k++] = v;
  return out;
}

std::vector<EdgeSlot> edge_face_slots(const QuadGraph& g) {
  std::vector<EdgeSlot> slots;
  std::vector<int> next_face(g.n, 0);
  for (auto [u, v] : g.edge_list()) {
    EdgeSlot s;
    s.tet0 = u;
    s.face0 = next_face[u]++;
    s.tet1 = v;
    s.face1 = next_face[v]++;
    slots.push_back(s);
  }
  for (int v = 0; v < g.n; ++v)
    if (next_face[v] != 4)
      throw std::invalid_argument("graph is not 4-valent");
  return slots;
}

Perm4 edge_label_perm(int face_from, int face_to, int label) {
  auto a = face_vertices(face_from);
  auto b = face_vertices(face_to);
  Perm4 p{};
  for (int k = 0; k < 3; ++k) p[a[k]] = uint8_t(b[kS3[label][k]]);
  p[face_from] = uint8_t(face_to);
  return p;
}

Triangulation::Triangulation(std::vector<std::array<FaceGluing, 4>> glue)
    : n_(int(glue.size())), glue_(std::move(glue)) {
  for (int t = 0; t < n_; ++t)
    for (int f = 0; f < 4; ++f) {
      const FaceGluing& fg = glue_[t][f];
      if (fg.tet < 0 || fg.tet >= n_ || fg.face < 0 || fg.face > 3)
        throw std::invalid_argument("face gluing out of range");
      if (fg.perm[f] != fg.face)
        throw std::invalid_argument("gluing permutation does not match faces");
      const FaceGluing& back = glue_[fg.tet][fg.face];
      if (back.tet != t || back.face != f ||
          back.perm != perm_inverse(fg.perm))
        throw std::invalid_argument("gluing table is not an involution");
    }
  compute_cells();
}

Triangulation Triangulation::from_gluing(const QuadGraph& g,
                                         const std::vector<int>& labels) {
  auto slots = edge_face_slots(g);
  if (labels.size() != slots.size())
    throw std::invalid_argument("one label per edge instance required");
  std::vector<std::array<FaceGluing, 4>> glue(g.n);
  for (size_t i = 0; i < slots.size(); ++i) {
    const EdgeSlot& s = slots[i];
    Perm4 p = edge_label_perm(s.face0, s.face1, labels[i]);
    glue[s.tet0][s.face0] = {s.tet1, s.face1, p};
    glue[s.tet1][s.face1] = {s.tet0, s.face0, perm_inverse(p)};
  }
  return Triangulation(std::move(glue));
}

int Triangulation::edge_class(int tet, int a, int b) const {
  return edge_class_[tet * 6 + kEdgeIndex[a][b]];
}

bool Triangulation::has_bad_edge() const {
  return std::any_of(edge_class_bad_.begin(), edge_class_bad_.end(),
                     [](char c) { return c != 0; });
}

void Triangulation::compute_cells() {
  // Directed tet-edge orbits (12 per tetrahedron) drive both the bad-edge
  // test and the link vertex count; undirected orbits are the edge classes.
  Dsu dir(12 * n_), und(6 * n_), cor(4 * n_);
  for (int t = 0; t < n_; ++t)
    for (int f = 0; f < 4; ++f) {
      const Perm4& p = glue_[t][f].perm;
      int tp = glue_[t][f].tet;
      for (int a = 0; a < 4; ++a) {
        if (a == f) continue;
        cor.unite(t * 4 + a, tp * 4 + p[a]);
        for (int b = 0; b < 4; ++b) {
          if (b == a || b == f) continue;
          dir.unite(t * 12 + dir_index(a, b), tp * 12 + dir_index(p[a], p[b]));
          und.unite(t * 6 + kEdgeIndex[a][b],
                    tp * 6 + kEdgeIndex[p[a]][p[b]]);
        }
      }
    }

  auto renumber = [](Dsu& d, int total, std::vector<int>& out) {
    out.assign(total, -1);
    std::vector<int> name(total, -1);
    int next = 0;
    for (int i = 0; i < total; ++i) {
      int r = d.find(i);
      if (name[r] < 0) name[r] = next++;
      out[i] = name[r];
    }
    return next;
  };

  num_edge_classes_ = renumber(und, 6 * n_, edge_class_);
  num_vertex_classes_ = renumber(cor, 4 * n_, vertex_class_);

  edge_class_size_.assign(num_edge_classes_, 0);
  edge_class_bad_.assign(num_edge_classes_, 0);
  for (int t = 0; t < n_; ++t)
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        int c = edge_class_[t * 6 + kEdgeIndex[a][b]];
        edge_class_size_[c] += 1;
        if (dir.find(t * 12 + dir_index(a, b)) ==
            dir.find(t * 12 + dir_index(b, a)))
          edge_class_bad_[c] = 1;
      }

  // Vertex links: faces = corners, edges = glued side pairs, vertices =
  // directed tet-edge orbits attributed to the class of a base corner.
  std::vector<int> faces(num_vertex_classes_, 0);
  std::vector<int> sides(num_vertex_classes_, 0);  // doubled count
  std::vector<int> verts(num_vertex_classes_, 0);
  for (int t = 0; t < n_; ++t)
    for (int v = 0; v < 4; ++v) faces[vertex_class_[t * 4 + v]] += 1;
  for (int t = 0; t < n_; ++t)
    for (int v = 0; v < 4; ++v)
      for (int f = 0; f < 4; ++f) {
        if (f == v) continue;
        // Side of the link triangle at corner (t,v) lying on face f; glued
        // to its image side.  Each orbit of the side involution counts once.
        int self = t * 16 + v * 4 + f;
        const FaceGluing& fg = glue_[t][f];
        int img = fg.tet * 16 + int(fg.perm[v]) * 4 + fg.face;
        if (self <= img) sides[vertex_class_[t * 4 + v]] += 1;
      }
  std::vector<char> orbit_seen(12 * n_, 0);
  for (int t = 0; t < n_; ++t)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        if (a == b) continue;
        int r = dir.find(t * 12 + dir_index(a, b));
        if (orbit_seen[r]) continue;
        orbit_seen[r] = 1;
        verts[vertex_class_[t * 4 + a]] += 1;
      }
  link_euler_.assign(num_vertex_classes_, 0);
  for (int c = 0; c < num_vertex_classes_; ++c)
    link_euler_[c] = verts[c] - sides[c] + faces[c];

  // Orientability by sign propagation: a coherent assignment needs the
  // parity flip sign' = -sign(perm) * sign across every gluing.
  auto propagate = [&](int count, auto neighbors) {
    std::vector<int> sign(count, 0);
    bool ok = true;
    for (int s = 0; s < count && ok; ++s) {
      if (sign[s] != 0) continue;
      sign[s] = 1;
      std::vector<int> stack{s};
      while (!stack.empty() && ok) {
        int x = stack.back();
        stack.pop_back();
        neighbors(x, [&](int y, int flip) {
          int want = sign[x] * flip;
          if (sign[y] == 0) {
            sign[y] = want;
            stack.push_back(y);
          } else if (sign[y] != want) {
            ok = false;
          }
        });
      }
    }
    return ok;
  };

  orientable_ = propagate(n_, [&](int t, auto visit) {
    for (int f = 0; f < 4; ++f)
      visit(glue_[t][f].tet, -perm_sign(glue_[t][f].perm));
  });

  link_orientable_.assign(num_vertex_classes_, 1);
  bool all_links = propagate(4 * n_, [&](int c, auto visit) {
    int t = c / 4, v = c % 4;
    for (int f = 0; f < 4; ++f) {
      if (f == v) continue;
      const FaceGluing& fg = glue_[t][f];
      visit(fg.tet * 4 + fg.perm[v], -perm_sign(fg.perm));
    }
  });
  if (!all_links) {
    // Redo per class to record which links fail.
    for (int c = 0; c < num_vertex_classes_; ++c) {
      bool ok = propagate(4 * n_, [&](int x, auto visit) {
        int t = x / 4, v = x % 4;
        if (vertex_class_[x] != c) return;
        for (int f = 0; f < 4; ++f) {
          if (f == v) continue;
          const FaceGluing& fg = glue_[t][f];
          visit(fg.tet * 4 + fg.perm[v], -perm_sign(fg.perm));
        }
      });
      link_orientable_[c] = ok ? 1 : 0;
    }
  }
}

bool Triangulation::is_candidate_closed() const {
  return num_vertex_classes_ == 1 && !has_bad_edge() && link_euler_[0] == 2;
}

bool Triangulation::is_candidate_ideal() const {
  if (has_bad_edge()) return false;
  for (int c = 0; c < num_vertex_classes_; ++c)
    if (link_euler_[c] != 0) return false;
  return true;
}

Triangulation Triangulation::pachner_23(int t0, int f0) const {
  const FaceGluing& internal = glue_[t0][f0];
  int t1 = internal.tet, f1 = internal.face;
  if (t1 == t0)
    throw std::invalid_argument("move needs a face shared by two tetrahedra");
  const Perm4& p = internal.perm;  // t0 labels -> t1 labels
  auto e = face_vertices(f0);      // equator vertices, in t0 labels

  // New tetrahedra N_0..N_2 sit around a central edge joining the two apexes
  // (the off-face vertices).  N_i omits equator vertex i; slots are
  // 0 -> apex of t0, 1 -> apex of t1, 2/3 -> the remaining equator pair.
  auto pair_of = [](int i) {
    std::array<int, 2> out{};
    int k = 0;
    for (int m = 0; m < 3; ++m)
      if (m != i) out[k++] = m;
    return out;
  };
  auto slot_of = [&](int i, int eq) {
    auto pr = pair_of(i);
    return eq == pr[0] ? 2 : 3;
  };
  // t0 labels -> N_i slot labels (apex1 takes the slot of the absent vertex).
  auto t0_to_slots = [&](int i) {
    Perm4 m{};
    m[f0] = 0;
    m[e[i]] = 1;
    for (int q : pair_of(i)) m[e[q]] = uint8_t(slot_of(i, q));
    return m;
  };
  auto t1_to_slots = [&](int i) {
    Perm4 m{};
    m[f1] = 1;
    m[p[e[i]]] = 0;
    for (int q : pair_of(i)) m[p[e[q]]] = uint8_t(slot_of(i, q));
    return m;
  };

  int base = n_ - 2;  // new tets take indices base..base+2
  std::vector<int> re(n_, -1);
  int next = 0;
  for (int t = 0; t < n_; ++t)
    if (t != t0 && t != t1) re[t] = next++;
  std::vector<int> m_of_t0_face(4, -1), m_of_t1_face(4, -1);
  for (int i = 0; i < 3; ++i) {
    m_of_t0_face[e[i]] = i;
    m_of_t1_face[p[e[i]]] = i;
  }

  std::vector<std::array<FaceGluing, 4>> glue(base + 3);

  // Turns an old-world gluing target (map into tet q's labels, face g) into a
  // new-world record, rerouting into the replacement tetrahedra when the
  // target face belonged to the removed pair.
  auto finish = [&](const Perm4& to_old, int q, int g) -> FaceGluing {
    FaceGluing out;
    if (q != t0 && q != t1) {
      out.tet = re[q];
      out.perm = to_old;
      out.face = g;
      return out;
    }
    if (q == t0) {
      int m = m_of_t0_face[g];
      out.tet = base + m;
      out.perm = perm_compose(t0_to_slots(m), to_old);
      out.face = 1;  // {apex0, E_j, E_k} is the face opposite slot 1
      return out;
    }
    int m = m_of_t1_face[g];
    out.tet = base + m;
    out.perm = perm_compose(t1_to_slots(m), to_old);
    out.face = 0;  // {apex1, E_j, E_k} is the face opposite slot 0
    return out;
  };

  // Old tetrahedra keep their outside gluings, rerouted if they hit t0/t1.
  for (int t = 0; t < n_; ++t) {
    if (t == t0 || t == t1) continue;
    for (int f = 0; f < 4; ++f) {
      const FaceGluing& fg = glue_[t][f];
      glue[re[t]][f] = finish(fg.perm, fg.tet, fg.face);
    }
  }

  for (int i = 0; i < 3; ++i) {
    auto pr = pair_of(i);
    // Face opposite slot 1: external, formerly t0's face opposite e[i].
    {
      const FaceGluing& fg = glue_[t0][e[i]];
      Perm4 slots_to_t0 = perm_inverse(t0_to_slots(i));
      glue[base + i][1] = finish(perm_compose(fg.perm, slots_to_t0), fg.tet,
                                 fg.face);
    }
    // Face opposite slot 0: external, formerly t1's face opposite p[e[i]].
    {
      const FaceGluing& fg = glue_[t1][p[e[i]]];
      Perm4 slots_to_t1 = perm_inverse(t1_to_slots(i));
      glue[base + i][0] = finish(perm_compose(fg.perm, slots_to_t1), fg.tet,
                                 fg.face);
    }
    // Faces opposite slots 2 and 3: internal, shared with the other new tets.
    for (int q : pr) {
      int src_slot = slot_of(i, q);   // slot of E_q inside N_i
      int dst = slot_of(q, i);        // slot of E_i inside N_q
      Perm4 m{};
      m[0] = 0;
      m[1] = 1;
      m[src_slot] = uint8_t(dst);
      int third = pr[0] == q ? pr[1] : pr[0];  // the shared equator vertex
      m[slot_of(i, third)] = uint8_t(slot_of(q, third));
      FaceGluing out;
      out.tet = base + q;
      out.face = dst;
      out.perm = m;
      glue[base + i][src_slot] = out;
    }
  }

  return Triangulation(std::move(glue));
}

std::string Triangulation::serialize() const {
  std::ostringstream out;
  out << n_ << "\n";
  for (int t = 0; t < n_; ++t) {
    for (int f = 0; f < 4; ++f) {
      const FaceGluing& fg = glue_[t][f];
      if (f) out << ' ';
      out << fg.tet << ':' << int(fg.perm[0]) << int(fg.perm[1])
          << int(fg.perm[2]) << int(fg.perm[3]);
    }
    out << "\n";
  }
  return out.str();
}

Triangulation Triangulation::parse(const std::string& text) {
  std::istringstream in(text);
  int n = 0;
  if (!(in >> n) || n <= 0) throw std::invalid_argument("bad tetrahedron count");
  std::vector<std::array<FaceGluing, 4>> glue(n);
  for (int t = 0; t < n; ++t)
    for (int f = 0; f < 4; ++f) {
      std::string entry;
      if (!(in >> entry)) throw std::invalid_argument("truncated gluing table");
      size_t colon = entry.find(':');
      if (colon == std::string::npos || entry.size() != colon + 5)
        throw std::invalid_argument("malformed gluing entry: " + entry);
      FaceGluing fg;
      fg.tet = std::stoi(entry.substr(0, colon));
      for (int k = 0; k < 4; ++k) {
        char c = entry[colon + 1 + k];
        if (c < '0' || c > '3')
          throw std::invalid_argument("malformed permutation in: " + entry);
        fg.perm[k] = uint8_t(c - '0');
      }
      fg.face = fg.perm[f];
      glue[t][f] = fg;
    }
  return Triangulation(std::move(glue));
}

std::string Triangulation::isomorphism_signature() const {
  std::vector<uint8_t> best;
  std::vector<int> idx(n_);
  std::vector<Perm4> rel(n_);
  std::vector<int> order;
  for (int s = 0; s < n_; ++s)
    for (int pi = 0; pi < 24; ++pi) {
      std::fill(idx.begin(), idx.end(), -1);
      order.clear();
      idx[s] = 0;
      rel[s] = perm_from_index(pi);
      order.push_back(s);
      std::vector<uint8_t> ser;
      ser.reserve(1 + 8 * n_);
      ser.push_back(uint8_t(n_));
      for (int qi = 0; qi < int(order.size()); ++qi) {
        int t = order[qi];
        Perm4 inv = perm_inverse(rel[t]);
        for (int j = 0; j < 4; ++j) {
          const FaceGluing& fg = glue_[t][inv[j]];
          if (idx[fg.tet] < 0) {
            idx[fg.tet] = int(order.size());
            rel[fg.tet] = perm_compose(rel[t], perm_inverse(fg.perm));
            order.push_back(fg.tet);
          }
          Perm4 sigma = perm_compose(rel[fg.tet], perm_compose(fg.perm, inv));
          ser.push_back(uint8_t(idx[fg.tet]));
          ser.push_back(uint8_t(perm_index(sigma)));
        }
      }
      if (best.empty() || ser < best) best = ser;
    }
  static const char kAlpha[] =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789+-";
  std::string out;
  out.reserve(best.size());
  for (uint8_t b : best) {
    if (b >= 64) throw std::logic_error("signature byte out of range");
    out.push_back(kAlpha[b]);
  }
  return out;
}

}  // namespace mcensus
