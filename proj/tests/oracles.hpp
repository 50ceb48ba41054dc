#pragma once

// Independent reference implementations used by the tests.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "portline/layering.hpp"
#include "portline/random.hpp"
#include "portline/routing.hpp"

namespace oracle {

using portline::WeightedArc;

/// Minimum weighted span by exhaustive search over layer values 0..n-1.
/// Layers are assigned in topological order; partial cost prunes.
inline long min_total_span(std::size_t n, const std::vector<WeightedArc>& arcs) {
  std::vector<std::vector<std::size_t>> in(n);
  std::vector<int> indeg(n, 0);
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    in[arcs[k].head].push_back(k);
    ++indeg[arcs[k].head];
  }
  std::vector<std::uint32_t> topo;
  std::vector<int> d = indeg;
  for (std::uint32_t v = 0; v < n; ++v)
    if (d[v] == 0) topo.push_back(v);
  for (std::size_t i = 0; i < topo.size(); ++i)
    for (const auto& a : arcs)
      if (a.tail == topo[i] && --d[a.head] == 0) topo.push_back(a.head);
  std::vector<int> layer(n, -1);
  long best = std::numeric_limits<long>::max();
  std::function<void(std::size_t, long)> go = [&](std::size_t i, long cost) {
    if (cost >= best) return;
    if (i == topo.size()) {
      best = cost;
      return;
    }
    const auto v = topo[i];
    int lo = 0;
    for (auto k : in[v]) lo = std::max(lo, layer[arcs[k].tail] + 1);
    for (int y = lo; y < static_cast<int>(n); ++y) {
      long add = 0;
      for (auto k : in[v]) add += arcs[k].weight * (y - layer[arcs[k].tail]);
      layer[v] = y;
      go(i + 1, cost + add);
    }
    layer[v] = -1;
  };
  go(0, 0);
  return best;
}

/// Random connected DAG: a random spanning tree oriented along a random
/// vertex permutation, plus extra arcs along the same permutation.
inline std::vector<WeightedArc> random_dag(std::size_t n, std::size_t extra, portline::Rng& rng) {
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  rng.shuffle(perm);
  std::vector<WeightedArc> arcs;
  auto add = [&](std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    arcs.push_back({perm[i], perm[j], 1 + static_cast<long>(rng.index(2))});
  };
  for (std::size_t i = 1; i < n; ++i) add(rng.index(i), i);
  for (std::size_t k = 0; k < extra; ++k) {
    const std::size_t i = rng.index(n), j = rng.index(n);
    if (i != j) add(i, j);
  }
  return arcs;
}

/// Spans intersect if they share a point (closed intervals).
inline bool spans_meet(const portline::BandPiece& a, const portline::BandPiece& b) {
  return a.left <= b.right && b.left <= a.right;
}

/// Fewest lines for the pieces of one corridor, by backtracking. Rules:
/// pieces whose spans meet take distinct lines; inside a band, an interleaved
/// right-going pair (a.left < b.left <= a.right < b.right) puts a above b and
/// left-going arcs mirror that, an enclosing cap lies above the enclosed one
/// and an enclosing cup below it; where a leg hanging from the upper boundary
/// shares x with a leg standing on the lower one, the upper leg's line is higher.
inline int min_lines(const std::vector<portline::BandPiece>& pieces) {
  using portline::Band;
  const std::size_t n = pieces.size();
  struct Leg {
    double x;
    bool upper;
  };
  auto legs = [](const portline::BandPiece& p) -> std::vector<Leg> {
    switch (p.band) {
      case Band::Right: return {{p.left, false}, {p.right, true}};
      case Band::Left: return {{p.left, true}, {p.right, false}};
      case Band::Cap: return {{p.left, false}, {p.right, false}};
      case Band::Cup: return {{p.left, true}, {p.right, true}};
      case Band::Vertical: return {};
    }
    return {};
  };
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < n; ++i)
    if (pieces[i].band != Band::Vertical) active.push_back(i);
  const std::size_t m = active.size();
  if (m == 0) return 0;
  std::vector<std::vector<char>> above(m, std::vector<char>(m, 0)), distinct(m, std::vector<char>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      const auto& a = pieces[active[i]];
      const auto& b = pieces[active[j]];
      if (spans_meet(a, b)) distinct[i][j] = 1;
      const bool interleaved = a.left < b.left && b.left <= a.right && a.right < b.right;
      const bool encloses = a.left <= b.left && b.right <= a.right && (a.left < b.left || b.right < a.right);
      if (a.band == b.band) {
        if (a.band == Band::Right && interleaved) above[i][j] = 1;
        if (a.band == Band::Left && interleaved) above[j][i] = 1;
        if (a.band == Band::Cap && encloses) above[i][j] = 1;
        if (a.band == Band::Cup && encloses) above[j][i] = 1;
      }
      for (const auto& la : legs(a))
        for (const auto& lb : legs(b))
          if (la.x == lb.x && la.upper && !lb.upper) above[i][j] = 1;
    }
  for (int k = 1; k <= static_cast<int>(m); ++k) {
    std::vector<int> line(m, -1);
    std::function<bool(std::size_t)> go = [&](std::size_t i) {
      if (i == m) return true;
      for (int l = 0; l < k; ++l) {
        bool ok = true;
        for (std::size_t j = 0; j < i && ok; ++j) {
          if (distinct[i][j] && line[j] == l) ok = false;
          if (above[i][j] && !(l > line[j])) ok = false;
          if (above[j][i] && !(line[j] > l)) ok = false;
        }
        if (!ok) continue;
        line[i] = l;
        if (go(i + 1)) return true;
      }
      line[i] = -1;
      return false;
    };
    if (go(0)) return k;
  }
  return -1;  // contradictory rules
}

/// Fewest lines for a full corridor when every piece only has to avoid
/// pieces whose spans meet it (a lower bound for any valid routing).
inline int min_lines_unconstrained(const std::vector<portline::BandPiece>& pieces) {
  // Interval graphs are perfect: the optimum is the maximum clique.
  int best = 0;
  for (const auto& p : pieces) {
    if (p.band == portline::Band::Vertical) continue;
    for (double x : {p.left, p.right}) {
      int c = 0;
      for (const auto& q : pieces)
        if (q.band != portline::Band::Vertical && q.left <= x && x <= q.right) ++c;
      best = std::max(best, c);
    }
  }
  return best;
}

/// Draws distinct x positions for each boundary so that no two lower legs and
/// no two upper legs share an x.
struct Boundaries {
  std::vector<double> lower, upper;
  explicit Boundaries(portline::Rng& rng, int span = 14) {
    for (int x = 0; x < span; ++x) {
      lower.push_back(x);
      upper.push_back(x);
    }
    rng.shuffle(lower);
    rng.shuffle(upper);
  }
};

/// A piece of the given band with fresh boundary positions, or nothing if
/// the pools cannot provide one.
inline std::optional<portline::BandPiece> random_piece(portline::Band band, Boundaries& b, portline::Rng& rng) {
  const bool lower_left = band == portline::Band::Right || band == portline::Band::Cap;
  const bool lower_right = band == portline::Band::Left || band == portline::Band::Cap;
  auto& lp = lower_left ? b.lower : b.upper;
  auto& rp = lower_right ? b.lower : b.upper;
  for (int attempt = 0; attempt < 50; ++attempt) {
    if (lp.empty() || rp.empty()) return std::nullopt;
    const std::size_t i = rng.index(lp.size()), j = rng.index(rp.size());
    if (&lp == &rp && i == j) continue;
    double l = lp[i], r = rp[j];
    if (band == portline::Band::Cap || band == portline::Band::Cup) {
      if (l > r) std::swap(l, r);
    } else if (!(l < r)) {
      continue;
    }
    // Erase the larger index first when both come from one pool.
    if (&lp == &rp) {
      lp.erase(lp.begin() + static_cast<std::ptrdiff_t>(std::max(i, j)));
      lp.erase(lp.begin() + static_cast<std::ptrdiff_t>(std::min(i, j)));
    } else {
      lp.erase(lp.begin() + static_cast<std::ptrdiff_t>(i));
      rp.erase(rp.begin() + static_cast<std::ptrdiff_t>(j));
    }
    return portline::BandPiece{band, l, r};
  }
  return std::nullopt;
}

}  // namespace oracle
