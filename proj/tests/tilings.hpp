#pragma once

// Exhaustive enumeration of partitions of the unit cuboid into at most k
// leaf cuboids, independent of the admissibility checker. Leaf volumes are
// unit fractions 1/N with N a product of arities, so the possible volume
// multisets are solutions of an Egyptian fraction equation; those bound the
// denominators, and a corner-filling search over the resulting grid finds
// every tiling exactly once.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "cantorv/cantor_terms.hpp"

namespace oracle {

namespace tiling_detail {

using boost::multiprecision::cpp_rational;

inline bool in_monoid(std::int64_t n, std::vector<int> const& gens) {
  if (n == 1) {
    return true;
  }
  for (int g : gens) {
    if (n % g == 0 && in_monoid(n / g, gens)) {
      return true;
    }
  }
  return false;
}

// Every N occurring in a solution of 1 = 1/N_1 + ... + 1/N_j, j <= k.
inline std::set<std::int64_t> volume_denominators(std::vector<int> const& gens, std::size_t k) {
  std::set<std::int64_t> out;
  std::vector<std::int64_t> stack;
  std::function<void(cpp_rational const&, std::size_t, std::int64_t)> go =
      [&](cpp_rational const& rest, std::size_t left, std::int64_t min_n) {
        // 1/N <= rest and left/N >= rest
        auto lo_q = cpp_rational(1) / rest;
        auto lo = static_cast<std::int64_t>(boost::multiprecision::numerator(lo_q) /
                                            boost::multiprecision::denominator(lo_q));
        if (lo * rest < 1) {
          ++lo;
        }
        auto hi_q = cpp_rational(static_cast<long long>(left)) / rest;
        auto hi = static_cast<std::int64_t>(boost::multiprecision::numerator(hi_q) /
                                            boost::multiprecision::denominator(hi_q));
        for (auto n = std::max(lo, min_n); n <= hi; ++n) {
          if (!in_monoid(n, gens)) {
            continue;
          }
          auto r = rest - cpp_rational(1, n);
          stack.push_back(n);
          if (r == 0) {
            out.insert(stack.begin(), stack.end());
          } else if (left > 1) {
            go(r, left - 1, n);
          }
          stack.pop_back();
        }
      };
  go(cpp_rational(1), k, 1);
  return out;
}

}  // namespace tiling_detail

// All leaf sets of at most k leaves partitioning the unit cuboid of a
// one-root spec, each sorted canonically.
inline std::vector<std::vector<cantorv::Leaf>> all_tilings(cantorv::AlgebraSpec const& spec,
                                                           std::size_t k) {
  using cantorv::Interval;
  using cantorv::Leaf;
  std::vector<int> all_arities;
  for (int c = 0; c < spec.color_count(); ++c) {
    all_arities.push_back(spec.arity(c));
  }
  auto vols = tiling_detail::volume_denominators(all_arities, k);
  std::int64_t max_n = vols.empty() ? 1 : *vols.rbegin();

  std::size_t m = static_cast<std::size_t>(spec.block_count());
  std::vector<std::vector<std::int64_t>> dens(m);
  std::vector<std::int64_t> grid(m, 1);
  for (std::size_t b = 0; b < m; ++b) {
    std::vector<int> gens;
    for (int c : spec.block_colors(static_cast<int>(b))) {
      gens.push_back(spec.arity(c));
    }
    for (std::int64_t d = 1; d <= max_n; ++d) {
      if (tiling_detail::in_monoid(d, gens)) {
        dens[b].push_back(d);
        grid[b] = std::lcm(grid[b], d);
      }
    }
  }

  // Candidate boxes in grid units: per block [lo, hi).
  struct Box {
    Leaf leaf;
    std::vector<std::int64_t> lo, hi;
  };
  std::vector<Box> boxes;
  std::vector<std::size_t> pick(m, 0);
  std::function<void(std::size_t, std::int64_t)> build = [&](std::size_t b, std::int64_t vol) {
    if (b == m) {
      if (!vols.count(vol)) {
        return;
      }
      std::vector<std::size_t> idx(m, 0);
      std::function<void(std::size_t)> place = [&](std::size_t a) {
        if (a == m) {
          Box box;
          box.leaf.root = 0;
          for (std::size_t q = 0; q < m; ++q) {
            auto d = dens[q][pick[q]];
            box.leaf.coords.push_back(Interval{static_cast<std::int64_t>(idx[q]), d});
            box.lo.push_back(static_cast<std::int64_t>(idx[q]) * (grid[q] / d));
            box.hi.push_back(static_cast<std::int64_t>(idx[q] + 1) * (grid[q] / d));
          }
          if (cantorv::is_valid_leaf(spec, box.leaf)) {
            boxes.push_back(std::move(box));
          }
          return;
        }
        for (idx[a] = 0; static_cast<std::int64_t>(idx[a]) < dens[a][pick[a]]; ++idx[a]) {
          place(a + 1);
        }
      };
      place(0);
      return;
    }
    for (pick[b] = 0; pick[b] < dens[b].size(); ++pick[b]) {
      if (vol * dens[b][pick[b]] <= max_n) {
        build(b + 1, vol * dens[b][pick[b]]);
      }
    }
  };
  build(0, 1);

  std::size_t cells = 1;
  for (auto g : grid) {
    cells *= static_cast<std::size_t>(g);
  }
  auto cell_of = [&](std::vector<std::int64_t> const& p) {
    std::size_t id = 0;
    for (std::size_t b = 0; b < m; ++b) {
      id = id * static_cast<std::size_t>(grid[b]) + static_cast<std::size_t>(p[b]);
    }
    return id;
  };
  std::vector<std::vector<std::size_t>> by_corner(cells);
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    by_corner[cell_of(boxes[i].lo)].push_back(i);
  }

  std::vector<char> used(cells, 0);
  std::vector<std::size_t> chosen;
  std::vector<std::vector<Leaf>> out;
  auto for_cells = [&](Box const& box, auto&& f) {
    std::vector<std::int64_t> p = box.lo;
    while (true) {
      if (!f(cell_of(p))) {
        return false;
      }
      std::size_t b = m;
      while (b > 0) {
        --b;
        if (++p[b] < box.hi[b]) {
          break;
        }
        p[b] = box.lo[b];
        if (b == 0) {
          return true;
        }
      }
    }
  };
  std::function<void(std::size_t)> fill = [&](std::size_t from) {
    while (from < cells && used[from]) {
      ++from;
    }
    if (from == cells) {
      std::vector<Leaf> t;
      for (auto i : chosen) {
        t.push_back(boxes[i].leaf);
      }
      std::sort(t.begin(), t.end());
      out.push_back(std::move(t));
      return;
    }
    if (chosen.size() == k) {
      return;
    }
    for (auto i : by_corner[from]) {
      bool free = for_cells(boxes[i], [&](std::size_t c) { return !used[c]; });
      if (!free) {
        continue;
      }
      for_cells(boxes[i], [&](std::size_t c) {
        used[c] = 1;
        return true;
      });
      chosen.push_back(i);
      fill(from + 1);
      chosen.pop_back();
      for_cells(boxes[i], [&](std::size_t c) {
        used[c] = 0;
        return true;
      });
    }
  };
  fill(0);
  return out;
}

}  // namespace oracle
