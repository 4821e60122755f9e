#include "mcensus/quadgraph.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

namespace mcensus {

int QuadGraph::degree(int v) const {
  int d = 2 * adj[v][v];
  for (int u = 0; u < n; ++u)
    if (u != v) d += adj[v][u];
  return d;
}

bool QuadGraph::connected() const {
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u = 0; u < n; ++u)
      if (u != v && adj[v][u] > 0 && !seen[u]) {
        seen[u] = 1;
        stack.push_back(u);
      }
  }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

bool QuadGraph::valid() const {
  if (n <= 0) return false;
  for (int v = 0; v < n; ++v)
    if (degree(v) != 4) return false;
  return connected();
}

std::vector<std::pair<int, int>> QuadGraph::edge_list() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n; ++u)
    for (int v = u; v < n; ++v)
      for (int k = 0; k < adj[u][v]; ++k) out.emplace_back(u, v);
  return out;
}

QuadGraph QuadGraph::from_code(const std::string& code) {
  if (code.size() < 3 || code[0] != 'Q')
    throw std::invalid_argument("bad graph code: " + code);
  auto colon = code.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("bad graph code: " + code);
  int n = std::stoi(code.substr(1, colon - 1));
  QuadGraph g(n);
  size_t pos = colon + 1;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      if (pos >= code.size() || code[pos] < '0' || code[pos] > '9')
        throw std::invalid_argument("bad graph code: " + code);
      g.adj[i][j] = g.adj[j][i] = uint8_t(code[pos] - '0');
      ++pos;
    }
  if (pos != code.size())
    throw std::invalid_argument("bad graph code: " + code);
  return g;
}

namespace {

// Individualization-refinement canonizer. Small graphs only (n <= ~16): the
// refinement is recomputed from scratch on each split and the minimum is
// taken over all leaves of the search tree.
struct Canonizer {
  const QuadGraph& g;
  int n;
  std::string best;
  std::vector<std::vector<int>> best_orders;

  explicit Canonizer(const QuadGraph& g_) : g(g_), n(g_.n) {}

  // Equitable refinement of an ordered partition. Splitting decisions depend
  // only on multiplicity data, never on vertex labels, so isomorphic graphs
  // refine in parallel.
  void refine(std::vector<std::vector<int>>& cells) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t ci = 0; ci < cells.size(); ++ci) {
        if (cells[ci].size() <= 1) continue;
        std::vector<std::pair<std::vector<int>, int>> keyed;
        keyed.reserve(cells[ci].size());
        for (int v : cells[ci]) {
          std::vector<int> key;
          key.push_back(g.adj[v][v]);
          for (const auto& d : cells) {
            int s = 0;
            for (int u : d)
              if (u != v) s += g.adj[v][u];
            key.push_back(s);
          }
          keyed.emplace_back(std::move(key), v);
        }
        std::stable_sort(keyed.begin(), keyed.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::vector<int>> sub;
        for (size_t k = 0; k < keyed.size(); ++k) {
          if (k == 0 || keyed[k].first != keyed[k - 1].first) sub.emplace_back();
          sub.back().push_back(keyed[k].second);
        }
        if (sub.size() > 1) {
          cells.erase(cells.begin() + ci);
          cells.insert(cells.begin() + ci, sub.begin(), sub.end());
          changed = true;
          break;
        }
      }
    }
  }

  std::string serialize(const std::vector<int>& order) const {
    std::string s = "Q" + std::to_string(n) + ":";
    s.reserve(s.size() + size_t(n) * (n + 1) / 2);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) s += char('0' + g.adj[order[i]][order[j]]);
    return s;
  }

  void rec(std::vector<std::vector<int>> cells) {
    refine(cells);
    int target = -1;
    for (size_t i = 0; i < cells.size(); ++i)
      if (cells[i].size() > 1) {
        target = int(i);
        break;
      }
    if (target < 0) {
      std::vector<int> order;
      order.reserve(n);
      for (const auto& c : cells) order.push_back(c[0]);
      std::string code = serialize(order);
      if (best.empty() || code < best) {
        best = std::move(code);
        best_orders.assign(1, order);
      } else if (code == best) {
        best_orders.push_back(order);
      }
      return;
    }
    for (int v : cells[target]) {
      auto next = cells;
      std::vector<int> rest;
      for (int u : cells[target])
        if (u != v) rest.push_back(u);
      next[target] = {v};
      next.insert(next.begin() + target + 1, std::move(rest));
      rec(std::move(next));
    }
  }

  void run() {
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    rec({all});
  }
};

}  // namespace

CanonResult canonical_form(const QuadGraph& g) {
  for (int v = 0; v < g.n; ++v)
    if (g.degree(v) != 4)
      throw std::invalid_argument("canonical_form: vertex degree != 4");
  Canonizer c(g);
  c.run();
  CanonResult res;
  res.code = c.best;
  // Every pair of minimal leaves differs by an automorphism, and every
  // automorphism maps the first minimal leaf to another minimal leaf, so the
  // collected orders give the whole group.
  const auto& base = c.best_orders.front();
  std::vector<int> base_inv(g.n);
  for (int i = 0; i < g.n; ++i) base_inv[base[i]] = i;
  for (const auto& ord : c.best_orders) {
    std::vector<int> perm(g.n);
    for (int v = 0; v < g.n; ++v) perm[v] = ord[base_inv[v]];
    res.autos.push_back(std::move(perm));
  }
  return res;
}

std::string QuadGraph::canonical_code() const { return canonical_form(*this).code; }

std::vector<std::vector<int>> QuadGraph::automorphisms() const {
  return canonical_form(*this).autos;
}

namespace {

// Ordered generation of degree-4 multiplicity matrices. Vertices are
// introduced in first-touch order (each vertex after 0 must be touched by an
// earlier row before its own row is filled), fresh vertices touched by one
// row take non-increasing multiplicities, and the results are deduplicated
// by canonical code. First-touch order forces connectivity.
struct Enumerator {
  int n;
  QuadGraph g;
  std::vector<int> deg;
  std::set<std::string> codes;

  explicit Enumerator(int n_) : n(n_), g(n_), deg(n_, 0) {}

  void fill_row(int r) {
    if (r == n) {
      codes.insert(canonical_form(g).code);
      return;
    }
    if (r > 0 && deg[r] == 0) return;  // untouched vertex: dead branch
    int max_loops = (4 - deg[r]) / 2;
    for (int l = max_loops; l >= 0; --l) {
      g.adj[r][r] = uint8_t(l);
      deg[r] += 2 * l;
      dist(r, r + 1, 4 - deg[r], 4, true);
      deg[r] -= 2 * l;
      g.adj[r][r] = 0;
    }
  }

  // Distribute `rem` edge endpoints of row r over columns c..n-1.
  void dist(int r, int c, int rem, int fresh_cap, bool fresh_allowed) {
    if (c == n) {
      if (rem != 0) return;
      if (r + 1 < n && deg[r + 1] == 0) return;  // next vertex must be touched
      fill_row(r + 1);
      return;
    }
    bool fresh = deg[c] == 0;
    int cap = std::min(rem, 4 - deg[c]);
    if (fresh) {
      if (fresh_allowed) {
        int m_hi = std::min(cap, fresh_cap);
        for (int m = m_hi; m >= 1; --m) {
          g.adj[r][c] = g.adj[c][r] = uint8_t(m);
          deg[r] += m;
          deg[c] += m;
          dist(r, c + 1, rem - m, m, true);
          deg[r] -= m;
          deg[c] -= m;
          g.adj[r][c] = g.adj[c][r] = 0;
        }
      }
      // Skipping a fresh vertex blocks all later fresh vertices this row,
      // so fresh vertices are introduced consecutively.
      dist(r, c + 1, rem, fresh_cap, false);
    } else {
      for (int m = cap; m >= 0; --m) {
        g.adj[r][c] = g.adj[c][r] = uint8_t(m);
        deg[r] += m;
        deg[c] += m;
        dist(r, c + 1, rem - m, fresh_cap, fresh_allowed);
        deg[r] -= m;
        deg[c] -= m;
        g.adj[r][c] = g.adj[c][r] = 0;
      }
    }
  }
};

}  // namespace

void enumerate_quadgraphs(int n, const std::function<void(const QuadGraph&)>& fn) {
  if (n <= 0) return;
  Enumerator e(n);
  e.fill_row(0);
  for (const auto& code : e.codes) fn(QuadGraph::from_code(code));
}

std::vector<QuadGraph> enumerate_quadgraphs(int n) {
  std::vector<QuadGraph> out;
  enumerate_quadgraphs(n, [&](const QuadGraph& g) { out.push_back(g); });
  return out;
}

namespace {

struct ChainScan {
  // One-ended chains: vertex list starting at the loop end; `end` is the
  // last vertex, whose two remaining slots are single edges to `t1` and
  // `t2`. If the walk closes into a loop at the far end the structure is a
  // double-ended chain instead.
  struct Chain {
    std::vector<int> verts;
    int end = -1;
    int t1 = -1, t2 = -1;
  };
  std::vector<Chain> chains;
  bool whole_graph_is_double_chain = false;

  explicit ChainScan(const QuadGraph& g) {
    if (g.n == 1 && g.adj[0][0] == 2) {
      whole_graph_is_double_chain = true;
      return;
    }
    std::vector<char> consumed(g.n, 0);  // vertices already in some chain
    for (int v = 0; v < g.n; ++v) {
      if (consumed[v] || g.adj[v][v] != 1) continue;
      Chain ch;
      ch.verts.push_back(v);
      int prev = -1, cur = v;
      for (;;) {
        // Remaining (non-loop, non-entry) slots of cur.
        int dbl_next = -1, singles = 0, s1 = -1, s2 = -1;
        bool closes = false;
        int slots = 0;
        for (int u = 0; u < g.n; ++u) {
          if (u == cur) continue;
          int m = g.adj[cur][u];
          if (u == prev) m -= 2;  // entry double edge
          if (m <= 0) continue;
          slots += m;
          if (m == 2 && g.adj[cur][u] == 2 && u != prev)
            dbl_next = u;
          else if (m == 1) {
            if (singles == 0) s1 = u;
            else s2 = u;
            singles += 1;
          }
        }
        if (cur != v && g.adj[cur][cur] == 1 && slots == 0) {
          closes = true;  // far-end loop: double-ended chain
        }
        if (closes) {
          for (int w : ch.verts) consumed[w] = 1;
          if (int(ch.verts.size()) == g.n) whole_graph_is_double_chain = true;
          ch.end = -1;
          break;
        }
        if (dbl_next >= 0 && singles == 0 && slots == 2) {
          // Clean continuation through a double edge; a looped far vertex
          // closes the walk on the next iteration.
          prev = cur;
          cur = dbl_next;
          ch.verts.push_back(cur);
          continue;
        }
        // Free end: exactly two single slots to distinct vertices.
        ch.end = cur;
        ch.t1 = s1;
        ch.t2 = s2;
        for (int w : ch.verts) consumed[w] = 1;
        break;
      }
      if (ch.end >= 0) chains.push_back(std::move(ch));
    }
  }
};

}  // namespace

bool filter_useful_closed(const QuadGraph& g) {
  for (int u = 0; u < g.n; ++u)
    for (int v = u + 1; v < g.n; ++v)
      if (g.adj[u][v] >= 3) return false;
  ChainScan scan(g);
  if (scan.whole_graph_is_double_chain) return true;
  // Two chain ends joined by a single edge.
  for (size_t i = 0; i < scan.chains.size(); ++i)
    for (size_t j = i + 1; j < scan.chains.size(); ++j)
      if (g.adj[scan.chains[i].end][scan.chains[j].end] == 1) return false;
  // Chain end attached to a double edge by two single edges.
  for (const auto& ch : scan.chains) {
    if (ch.t1 >= 0 && ch.t2 >= 0 && ch.t1 != ch.t2 && g.adj[ch.t1][ch.t2] >= 2)
      return false;
  }
  return true;
}

namespace {

bool connected_after_removal(const QuadGraph& g,
                             const std::vector<std::pair<int, int>>& edges,
                             const std::vector<int>& removed) {
  std::vector<std::vector<int>> m(g.n, std::vector<int>(g.n, 0));
  for (int u = 0; u < g.n; ++u)
    for (int v = 0; v < g.n; ++v) m[u][v] = g.adj[u][v];
  for (int idx : removed) {
    auto [u, v] = edges[idx];
    m[u][v] -= 1;
    if (u != v) m[v][u] -= 1;
  }
  std::vector<char> seen(g.n, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u = 0; u < g.n; ++u)
      if (u != v && m[v][u] > 0 && !seen[u]) {
        seen[u] = 1;
        ++count;
        stack.push_back(u);
      }
  }
  return count == g.n;
}

// Components of g minus the removed edge instances.
std::vector<std::vector<int>> components_after_removal(
    const QuadGraph& g, const std::vector<std::pair<int, int>>& edges,
    const std::vector<int>& removed, std::vector<std::vector<int>>& m) {
  m.assign(g.n, std::vector<int>(g.n, 0));
  for (int u = 0; u < g.n; ++u)
    for (int v = 0; v < g.n; ++v) m[u][v] = g.adj[u][v];
  for (int idx : removed) {
    auto [u, v] = edges[idx];
    m[u][v] -= 1;
    if (u != v) m[v][u] -= 1;
  }
  std::vector<std::vector<int>> comps;
  std::vector<char> seen(g.n, 0);
  for (int s = 0; s < g.n; ++s) {
    if (seen[s]) continue;
    std::vector<int> comp, stack = {s};
    seen[s] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (int u = 0; u < g.n; ++u)
        if (u != v && m[v][u] > 0 && !seen[u]) {
          seen[u] = 1;
          stack.push_back(u);
        }
    }
    comps.push_back(std::move(comp));
  }
  return comps;
}

// Shape of one side of a disconnecting 4-edge cut.
//   kVertex    -- a bare vertex (all four cut edges attach to it);
//   kChain     -- a loop-free path of double edges; `parallel_ends` counts
//                 the path ends whose two cut edges go, as a parallel pair,
//                 to a single vertex of the other side;
//   kTriangle  -- a triangle with exactly one doubled side (free slots 2 at
//                 the apex, 1 + 1 on the doubled pair);
//   kOther     -- anything else.
struct CutSide {
  enum Shape { kOther, kVertex, kChain, kTriangle } shape = kOther;
  int size = 0;            // vertices on this side
  int parallel_ends = 0;   // chains only
};

CutSide classify_cut_side(const std::vector<std::vector<int>>& m,
                          const std::vector<int>& comp,
                          const std::vector<std::pair<int, int>>& cut,
                          const std::vector<char>& inside) {
  CutSide side;
  side.size = int(comp.size());
  for (int v : comp)
    if (m[v][v] != 0) return side;
  // The two far endpoints of the cut edges leaving vertex x, when x carries
  // exactly two of them; parallel means both land on the same far vertex.
  auto end_parallel = [&](int x) {
    int far1 = -1, far2 = -1;
    for (auto [u, v] : cut) {
      int far = -1;
      if (u == x && !inside[v]) far = v;
      else if (v == x && !inside[u]) far = u;
      if (far < 0) continue;
      if (far1 < 0) far1 = far;
      else far2 = far;
    }
    return far1 >= 0 && far1 == far2;
  };
  if (comp.size() == 1) {
    side.shape = CutSide::kVertex;
    return side;
  }
  int dbl = 0, sgl = 0;
  for (size_t i = 0; i < comp.size(); ++i)
    for (size_t j = i + 1; j < comp.size(); ++j) {
      int w = m[comp[i]][comp[j]];
      if (w == 1) sgl += 1;
      else if (w == 2) dbl += 1;
      else if (w != 0) return side;
    }
  if (comp.size() == 3 && dbl == 1 && sgl == 2) {
    // Triangle with one doubled side; the apex is the vertex not on the
    // doubled pair and must join the two single edges.
    int a = -1, b = -1;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (m[comp[i]][comp[j]] == 2) { a = comp[i]; b = comp[j]; }
    for (int v : comp)
      if (v != a && v != b && m[a][v] == 1 && m[b][v] == 1) {
        side.shape = CutSide::kTriangle;
        return side;
      }
    return side;
  }
  if (sgl != 0) return side;
  int ends[2] = {-1, -1};
  int end_count = 0;
  for (int v : comp) {
    int deg = 0;
    for (int u : comp)
      if (u != v && m[v][u] == 2) deg += 1;
    if (deg == 1) {
      if (end_count < 2) ends[end_count] = v;
      end_count += 1;
    } else if (deg != 2) {
      return side;
    }
  }
  // Two degree-1 path ends; connectivity of the component rules out cycles.
  if (end_count != 2) return side;
  side.shape = CutSide::kChain;
  side.parallel_ends =
      (end_parallel(ends[0]) ? 1 : 0) + (end_parallel(ends[1]) ? 1 : 0);
  return side;
}

// Allowed forms for one side of a disconnecting 4-edge cut.  Bare vertices,
// triangles with a doubled side, and chains of up to 4 double edges are
// always acceptable.  A longer chain is acceptable only when one of its ends
// attaches to the far side by a parallel edge pair, or the far side is
// itself a chain, or it is a 5-chain whose far side has at most 4 vertices.
// The list is calibrated against the published pass-counts
// 1, 2, 4, 11, 27, 57, 205, 1008, 6549 for n = 3..11.
bool cut_side_allowed(const CutSide& side, const CutSide& other) {
  switch (side.shape) {
    case CutSide::kVertex:
    case CutSide::kTriangle:
      return true;
    case CutSide::kChain:
      if (side.size <= 4) return true;
      if (side.parallel_ends >= 1) return true;
      if (other.shape == CutSide::kChain) return true;
      return side.size == 5 && other.size <= 4;
    default:
      return false;
  }
}

}  // namespace

bool filter_useful_bricks(const QuadGraph& g) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < g.n; ++u)
    for (int v = u; v < g.n; ++v)
      if (u != v)
        for (int k = 0; k < g.adj[u][v]; ++k) edges.emplace_back(u, v);
  int e = int(edges.size());
  for (int i = 0; i < e; ++i)
    for (int j = i + 1; j < e; ++j)
      if (!connected_after_removal(g, edges, {i, j})) return false;
  std::vector<std::vector<int>> m;
  for (int a = 0; a < e; ++a)
    for (int b = a + 1; b < e; ++b)
      for (int c = b + 1; c < e; ++c)
        for (int d = c + 1; d < e; ++d) {
          auto comps = components_after_removal(g, edges, {a, b, c, d}, m);
          if (comps.size() < 2) continue;
          // In a graph with no disconnecting edge pair, a disconnecting
          // quadruple always yields exactly two components.
          std::vector<std::pair<int, int>> cut;
          for (int idx : {a, b, c, d}) cut.push_back(edges[idx]);
          std::vector<char> in0(g.n, 0), in1(g.n, 0);
          for (int v : comps[0]) in0[v] = 1;
          for (int v : comps[1]) in1[v] = 1;
          CutSide s0 = classify_cut_side(m, comps[0], cut, in0);
          CutSide s1 = classify_cut_side(m, comps[1], cut, in1);
          if (!cut_side_allowed(s0, s1) && !cut_side_allowed(s1, s0))
            return false;
        }
  return true;
}

}  // namespace mcensus
