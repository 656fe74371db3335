#ifndef TWOBRIDGE_DIAGRAM_HPP
#define TWOBRIDGE_DIAGRAM_HPP

#include "words.hpp"

#include <array>
#include <numeric>
#include <optional>
#include <vector>

namespace twobridge {

// strand rows: 1 top, 2 middle, 3 bottom. Lower letters act on {2,3}, Upper on {1,2}.
enum class OrientationState : std::uint8_t { O1 = 1, O2 = 2, O3 = 3 };

inline int index_of(OrientationState o) { return static_cast<int>(o); }
inline OrientationState state_of(int strand) { return static_cast<OrientationState>(strand); }
inline std::string state_name(OrientationState o) { return "o" + std::to_string(index_of(o)); }

// 180 degree rotation of the plat exchanges top and bottom rows
inline OrientationState flip(OrientationState o) { return state_of(4 - index_of(o)); }

inline int swap_strand(Letter l, int strand) {
  if (l == Letter::Lower) return strand == 1 ? 1 : 5 - strand;
  return strand == 3 ? 3 : 3 - strand;
}

inline OrientationState orientation_after(OrientationState o, std::span<const Letter> z) {
  int s = index_of(o);
  for (Letter l : z) s = swap_strand(l, s);
  return state_of(s);
}

enum class Cap : std::uint8_t { TopMiddle, MiddleBottom };

inline bool cap_has(Cap cap, int strand) { return cap == Cap::TopMiddle ? strand != 3 : strand != 1; }
inline int cap_partner(Cap cap, int strand) { return cap == Cap::TopMiddle ? 3 - strand : 5 - strand; }
inline int cap_free(Cap cap) { return cap == Cap::TopMiddle ? 3 : 1; }
inline Cap flip(Cap cap) { return cap == Cap::TopMiddle ? Cap::MiddleBottom : Cap::TopMiddle; }

// left cap, right cap; the two ends left free are joined by an outer arc
struct Closure {
  Cap left = Cap::TopMiddle;
  Cap right = Cap::TopMiddle;
  friend bool operator==(const Closure&, const Closure&) = default;
};

struct PlatDiagram {
  BraidWord letters;
  Closure closure;

  int crossings() const { return static_cast<int>(letters.size()); }
  int columns() const { return crossings() + 1; }
  int node(int x, int strand) const { return 3 * x + strand - 1; }
  int node_count() const { return 3 * columns(); }
};

inline PlatDiagram build_diagram(BraidWord z) {
  if (z.empty()) throw DomainError("build_diagram needs a nonempty braid word");
  Closure cl{Cap::TopMiddle, z.back() == Letter::Lower ? Cap::TopMiddle : Cap::MiddleBottom};
  return PlatDiagram{std::move(z), cl};
}

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n), rank_(n, 0), sets_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    --sets_;
  }

  int sets() const { return sets_; }

 private:
  std::vector<int> parent_;
  std::vector<int> rank_;
  int sets_;
};

namespace detail {

inline void join_closure(const PlatDiagram& d, UnionFind& uf) {
  const int n = d.crossings();
  const Cap L = d.closure.left, R = d.closure.right;
  const int l0 = L == Cap::TopMiddle ? 1 : 2, r0 = R == Cap::TopMiddle ? 1 : 2;
  uf.unite(d.node(0, l0), d.node(0, l0 + 1));
  uf.unite(d.node(n, r0), d.node(n, r0 + 1));
  uf.unite(d.node(0, cap_free(L)), d.node(n, cap_free(R)));
}

}  // namespace detail

// number of closed components of the diagram itself
inline int link_components(const PlatDiagram& d) {
  UnionFind uf(d.node_count());
  for (int k = 1; k <= d.crossings(); ++k)
    for (int s = 1; s <= 3; ++s) uf.unite(d.node(k - 1, s), d.node(k, swap_strand(d.letters[k - 1], s)));
  detail::join_closure(d, uf);
  return uf.sets();
}

// circles of the all-A resolution
inline int all_A_components(const PlatDiagram& d) {
  UnionFind uf(d.node_count());
  for (int k = 1; k <= d.crossings(); ++k) {
    if (d.letters[k - 1] == Letter::Lower) {
      uf.unite(d.node(k - 1, 2), d.node(k - 1, 3));
      uf.unite(d.node(k, 2), d.node(k, 3));
      uf.unite(d.node(k - 1, 1), d.node(k, 1));
    } else {
      uf.unite(d.node(k - 1, 1), d.node(k, 1));
      uf.unite(d.node(k - 1, 2), d.node(k, 2));
      uf.unite(d.node(k - 1, 3), d.node(k, 3));
    }
  }
  detail::join_closure(d, uf);
  return uf.sets();
}

struct Orientation {
  std::vector<int> signs;                     // per crossing, +1 / -1
  std::vector<OrientationState> cut_states;   // per column x = 0..n
};

struct OrientationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Orientation orient_diagram(const PlatDiagram& d) {
  const int n = d.crossings();
  const Cap L = d.closure.left, R = d.closure.right;
  // heading[node]: +1 traversed rightward, -1 leftward, 0 unvisited
  std::vector<int> heading(d.node_count(), 0);

  // step out of (x,s) through side `right`; returns the next node and whether it is entered from its left
  auto step = [&](int x, int s, bool right) -> std::array<int, 3> {
    if (right) {
      if (x < n) return {x + 1, swap_strand(d.letters[x], s), 1};
      if (cap_has(R, s)) return {n, cap_partner(R, s), 0};
      return {0, cap_free(L), 1};
    }
    if (x > 0) return {x - 1, swap_strand(d.letters[x - 1], s), 0};
    if (cap_has(L, s)) return {0, cap_partner(L, s), 1};
    return {n, cap_free(R), 0};
  };

  if (!cap_has(L, 2)) throw OrientationError("left cap must contain the middle strand");
  int x = 0, s = 2;
  bool entered_left = true;
  int visited = 0;
  while (true) {
    const int id = d.node(x, s);
    if (heading[id] != 0) break;
    heading[id] = entered_left ? 1 : -1;
    ++visited;
    auto [nx, ns, nl] = step(x, s, entered_left);
    x = nx;
    s = ns;
    entered_left = nl == 1;
  }
  if (visited != d.node_count()) throw OrientationError("diagram has more than one component");

  Orientation o;
  o.cut_states.resize(n + 1);
  for (int col = 0; col <= n; ++col) {
    int left = 0, count = 0;
    for (int t = 1; t <= 3; ++t)
      if (heading[d.node(col, t)] < 0) {
        left = t;
        ++count;
      }
    if (count != 1) throw OrientationError("cut without a unique leftward strand");
    o.cut_states[col] = state_of(left);
  }

  o.signs.resize(n);
  for (int k = 1; k <= n; ++k) {
    // over strand runs bottom-left to top-right at Lower, top-left to bottom-right at Upper
    const bool lower = d.letters[k - 1] == Letter::Lower;
    const int over_from = lower ? 3 : 1, under_from = 2;
    auto dir = [&](int from) -> std::array<int, 2> {
      const int to = swap_strand(d.letters[k - 1], from);
      const int dy = from - to;  // y grows upward, strand index grows downward
      return heading[d.node(k - 1, from)] > 0 ? std::array<int, 2>{1, dy} : std::array<int, 2>{-1, -dy};
    };
    const auto u = dir(over_from), v = dir(under_from);
    const int cross = u[0] * v[1] - u[1] * v[0];
    o.signs[k - 1] = cross > 0 ? 1 : -1;
  }
  return o;
}

struct DiagramMetrics {
  int c_plus = 0;
  int s_A = 0;
  int signature = 0;
};

inline DiagramMetrics diagram_metrics(const PlatDiagram& d) {
  DiagramMetrics m;
  for (int sg : orient_diagram(d).signs) m.c_plus += sg > 0;
  m.s_A = all_A_components(d);
  m.signature = m.s_A - m.c_plus - 1;
  return m;
}

inline DiagramMetrics word_metrics(const RunWord& w) { return diagram_metrics(build_diagram(to_braid(w))); }

inline int signature(const RunWord& w) { return word_metrics(w).signature; }

}  // namespace twobridge

#endif
