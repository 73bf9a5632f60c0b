#pragma once

// Random and exhaustive samplers of bases and cones shared by the unit and
// acceptance tests.

#include <random>

#include "cantorv/cones.hpp"
#include "oracles.hpp"

namespace oracle {

using namespace cantorv;

// Random expansions from X until the basis has at least `size` leaves.
inline Basis random_basis(SpecPtr const& s, std::size_t size, std::mt19937_64& rng) {
  Basis b = Basis::root(s);
  while (b.size() < size) {
    b = expand(b, rng() % b.size(), static_cast<int>(rng() % static_cast<std::uint64_t>(s->color_count())));
  }
  return b;
}

// Replaces every support leaf by a random admissible refinement of it.
inline Cone refine_support(Cone const& u, std::mt19937_64& rng) {
  auto const& spec = u.spec();
  std::vector<Leaf> out;
  for (auto const& l : u.support()) {
    std::vector<Leaf> cells{l};
    std::size_t steps = rng() % 3;
    for (std::size_t k = 0; k < steps; ++k) {
      std::size_t i = rng() % cells.size();
      int c = static_cast<int>(rng() % static_cast<std::uint64_t>(spec.color_count()));
      auto kids = split_leaf(spec, cells[i], c);
      cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(i));
      cells.insert(cells.end(), kids.begin(), kids.end());
    }
    out.insert(out.end(), cells.begin(), cells.end());
  }
  return Cone::from_leaves(u.spec_ptr(), out);
}

// A random subset of the leaves of a random basis.
inline Cone random_cone(SpecPtr const& s, std::mt19937_64& rng) {
  Basis b = Basis::root(s);
  std::size_t steps = rng() % 4;
  for (std::size_t k = 0; k < steps; ++k) {
    b = expand(b, rng() % b.size(), static_cast<int>(rng() % static_cast<std::uint64_t>(s->color_count())));
  }
  std::vector<Leaf> leaves;
  for (auto const& l : b.leaves()) {
    if (rng() % 2) {
      leaves.push_back(l);
    }
  }
  return Cone::from_leaves(s, leaves);
}

// All labelled partitions of the leaves of each basis of size <= max_size
// into n cones.
inline std::vector<ConeTuple> all_tuples(SpecPtr const& s, std::size_t max_size,
                                         std::size_t n) {
  std::vector<ConeTuple> out;
  for (auto const& b : enumerate_bases(s, max_size)) {
    std::size_t total = 1;
    for (std::size_t k = 0; k < b.size(); ++k) {
      total *= n;
    }
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<std::vector<Leaf>> parts(n);
      std::size_t c = code;
      for (auto const& l : b.leaves()) {
        parts[c % n].push_back(l);
        c /= n;
      }
      ConeTuple t;
      for (auto& p : parts) {
        t.push_back(Cone::from_leaves(s, p));
      }
      out.push_back(std::move(t));
    }
  }
  return out;
}

}  // namespace oracle
