#include <doctest.h>

#include <map>
#include <set>

#include "cantorv/cantor_terms.hpp"
#include "cantorv/error.hpp"
#include "oracles.hpp"

using namespace cantorv;
using oracle::leaf1;
using oracle::leaf2;

namespace {

Basis halves(SpecPtr const& s) { return expand(Basis::root(s), 0, 0); }

Basis basis1(SpecPtr const& s, std::vector<std::pair<std::int64_t, std::int64_t>> const& ivs) {
  std::vector<Leaf> leaves;
  for (auto [i, d] : ivs) {
    leaves.push_back(leaf1(i, d));
  }
  return Basis::from_leaves(s, leaves);
}

}  // namespace

TEST_CASE("interval order and containment") {
  CHECK(compare(Interval{0, 2}, Interval{0, 3}) == std::strong_ordering::greater);
  CHECK(compare(Interval{1, 2}, Interval{2, 4}) == std::strong_ordering::greater);
  CHECK(compare(Interval{1, 4}, Interval{1, 2}) == std::strong_ordering::less);
  CHECK(contains(Interval{0, 1}, Interval{5, 6}));
  CHECK(contains(Interval{1, 3}, Interval{3, 8}));  // [3/8,1/2) inside [1/3,2/3)
  CHECK_FALSE(overlaps(Interval{0, 2}, Interval{1, 2}));
  CHECK(overlaps(Interval{0, 2}, Interval{1, 3}));
}

TEST_CASE("geometric containment is not descent") {
  auto s = oracle::stein23();
  CHECK(contains(leaf1(1, 3), leaf1(3, 8)));
  CHECK_FALSE(is_descendant(*s, leaf1(1, 3), leaf1(3, 8)));
  CHECK(is_descendant(*s, leaf1(0, 2), leaf1(1, 6)));
}

TEST_CASE("expand splits the owning block left to right") {
  auto s = oracle::v21();
  auto h = halves(s);
  REQUIRE(h.size() == 2);
  CHECK(h[0] == leaf1(0, 2));
  CHECK(h[1] == leaf1(1, 2));
  CHECK_THROWS_AS(expand(h, 2, 0), InvalidArgument);
  CHECK_THROWS_AS(expand(h, 0, 1), InvalidArgument);
}

TEST_CASE("2V expansion orders commute to the grid") {
  auto s = oracle::brin2v();
  auto x = Basis::root(s);
  Interval lo{0, 2}, hi{1, 2}, all{0, 1};
  auto a = expand(x, 0, 0);
  a = expand(a, leaf2(hi, all), 1);
  a = expand(a, leaf2(lo, all), 1);
  auto b = expand(x, 0, 1);
  b = expand(b, leaf2(all, hi), 0);
  b = expand(b, leaf2(all, lo), 0);
  CHECK(a == b);
  CHECK(a.size() == 4);
  CHECK(a == max_elementary(x));
}

TEST_CASE("contract inverts expand") {
  for (auto const& [name, s] : oracle::bundled_specs()) {
    CAPTURE(name);
    auto bases = enumerate_bases(s, 5);
    for (auto const& b : bases) {
      for (std::size_t i = 0; i < b.size(); ++i) {
        for (int c = 0; c < s->color_count(); ++c) {
          auto e = expand(b, i, c);
          auto kids = split_leaf(*s, b[i], c);
          CHECK(contract(e, kids, c) == b);
        }
      }
    }
  }
}

TEST_CASE("contract rejects non-families and inadmissible results") {
  auto s = oracle::stein23();
  auto b = basis1(s, {{0, 6}, {1, 6}, {2, 6}, {1, 2}});
  CHECK_THROWS_AS(contract(b, {leaf1(0, 6), leaf1(2, 6)}, 0), InvalidArgument);
  CHECK(contract(b, {leaf1(0, 6), leaf1(1, 6), leaf1(2, 6)}, 1) == halves(s));
  // [0,1/3) is not a part of any split of [0,1/2).
  CHECK_THROWS_AS(contract(b, {leaf1(0, 6), leaf1(1, 6)}, 0), NotAdmissible);
  // Merging the middle sixths of {[0,1/2),[1/2,2/3),[2/3,5/6),[5/6,1)}
  // would produce the inadmissible {[0,1/2),[1/2,2/3),[2/3,1)}.
  auto d = basis1(s, {{0, 2}, {3, 6}, {4, 6}, {5, 6}});
  CHECK_THROWS_AS(contract(d, {leaf1(4, 6), leaf1(5, 6)}, 0), NotAdmissible);
}

TEST_CASE("Stein inadmissible witness") {
  auto s = oracle::stein23();
  std::vector<Leaf> w{leaf1(0, 2), leaf1(3, 6), leaf1(2, 3)};
  CHECK_FALSE(is_admissible(*s, w).admissible);
  CHECK_THROWS_AS(Basis::from_leaves(s, w), NotAdmissible);
  // Non-partitions are errors, not false.
  CHECK_THROWS_AS(is_admissible(*s, {leaf1(0, 2)}), InvalidArgument);
  CHECK_THROWS_AS(is_admissible(*s, {leaf1(0, 2), leaf1(0, 3), leaf1(1, 2)}), InvalidArgument);
  CHECK_THROWS_AS(is_admissible(*s, {leaf1(0, 5), leaf1(1, 1)}), InvalidArgument);

  auto three = enumerate_bases(s, 3);
  std::set<std::vector<Leaf>> sizes3;
  for (auto const& b : three) {
    if (b.size() == 3) {
      sizes3.insert(b.leaves());
    }
  }
  std::set<std::vector<Leaf>> expected{
      {leaf1(0, 3), leaf1(1, 3), leaf1(2, 3)},
      {leaf1(0, 4), leaf1(1, 4), leaf1(1, 2)},
      {leaf1(0, 2), leaf1(2, 4), leaf1(3, 4)}};
  CHECK(sizes3 == expected);
}

TEST_CASE("certificate replays to the basis") {
  for (auto const& [name, s] : oracle::bundled_specs()) {
    CAPTURE(name);
    for (auto const& b : enumerate_bases(s, 6)) {
      auto script = script_of(b);
      CHECK(replay(s, script) == b);
    }
  }
}

TEST_CASE("enumeration counts") {
  auto v = enumerate_bases(oracle::v21(), 3);
  std::map<std::size_t, int> counts;
  for (auto const& b : v) {
    ++counts[b.size()];
  }
  CHECK(counts == std::map<std::size_t, int>{{1, 1}, {2, 1}, {3, 2}});

  int two = 0;
  for (auto const& b : enumerate_bases(oracle::brin2v(), 2)) {
    two += b.size() == 2;
  }
  CHECK(two == 2);

  auto s = oracle::v31();
  for (auto const& b : enumerate_bases(s, 9)) {
    CHECK(b.size() % 2 == 1);
  }
  CHECK_THROWS_AS(enumerate_bases(oracle::v21(), 9, 10), CapExceeded);
}

TEST_CASE("enumeration matches the BFS poset") {
  for (auto const& [name, s] : oracle::bundled_specs()) {
    CAPTURE(name);
    auto p = oracle::build_poset(s, 5);
    auto e = enumerate_bases(s, 5);
    CHECK(e.size() == p.bases.size());
    for (std::size_t i = 1; i < e.size(); ++i) {
      CHECK((e[i - 1].size() < e[i].size() ||
             (e[i - 1].size() == e[i].size() && e[i - 1].leaves() < e[i].leaves())));
    }
  }
}

TEST_CASE("leq agrees with reachability") {
  for (auto const& [name, s] : oracle::bundled_specs()) {
    CAPTURE(name);
    auto p = oracle::build_poset(s, 5);
    for (std::size_t i = 0; i < p.bases.size(); ++i) {
      for (std::size_t j = 0; j < p.bases.size(); ++j) {
        CHECK(leq(p.bases[i], p.bases[j]) == p.le(i, j));
      }
    }
  }
}

TEST_CASE("lub and glb against brute force") {
  for (auto const& [name, s] : oracle::bundled_specs()) {
    CAPTURE(name);
    auto p = oracle::build_poset(s, 5);
    std::size_t n = p.bases.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        auto const& a = p.bases[i];
        auto const& b = p.bases[j];
        auto u = lub(a, b);
        CHECK(u == lub(b, a));
        auto ui = p.find(u);
        bool any_upper = false;
        for (std::size_t k = 0; k < n; ++k) {
          if (p.le(i, k) && p.le(j, k)) {
            any_upper = true;
            REQUIRE(ui);
            CHECK(p.le(*ui, k));
          }
        }
        CHECK(any_upper == ui.has_value());
        auto g = glb(a, b);
        CHECK(g == glb(b, a));
        auto gi = p.find(g);
        REQUIRE(gi);
        CHECK(p.le(*gi, i));
        CHECK(p.le(*gi, j));
        for (std::size_t k = 0; k < n; ++k) {
          if (p.le(k, i) && p.le(k, j)) {
            CHECK(p.le(k, *gi));
          }
        }
      }
    }
  }
}

TEST_CASE("lub examples") {
  auto s = oracle::stein23();
  auto x = Basis::root(s);
  auto h = expand(x, 0, 0);
  auto t = expand(x, 0, 1);
  auto u = lub(h, t);
  CHECK(u.size() == 6);
  CHECK(u == max_elementary(x));
  CHECK(glb(h, t) == x);
  CHECK(lub(h, h) == h);

  auto q = oracle::brin2v();
  auto xq = Basis::root(q);
  CHECK(lub(expand(xq, 0, 0), expand(xq, 0, 1)).size() == 4);
  CHECK_FALSE(leq(expand(xq, 0, 0), expand(xq, 0, 1)));
  CHECK_THROWS_AS(leq(x, xq), SpecMismatch);
}

TEST_CASE("elementary relations") {
  auto v = oracle::v21();
  auto x = Basis::root(v);
  auto h = halves(v);
  auto four = expand(expand(h, 0, 0), 2, 0);
  CHECK_FALSE(elementary_leq(x, four));
  CHECK(very_elementary_leq(x, h));
  CHECK(elementary_leq(h, h));
  CHECK_THROWS_AS(elementary_leq(h, x), NotComparable);

  auto q = oracle::brin2v();
  auto grid = max_elementary(Basis::root(q));
  CHECK(elementary_leq(Basis::root(q), grid));
  CHECK_FALSE(very_elementary_leq(Basis::root(q), grid));

  auto b = basis1(v, {{0, 4}, {1, 4}, {1, 2}});
  CHECK(elementary_core(x, b) == h);
  CHECK(elementary_core(x, max_elementary(x)) == max_elementary(x));
  CHECK(max_elementary(h).size() == 4);
}

TEST_CASE("elementary core is the brute-force maximum") {
  for (auto const& [name, s] : oracle::bundled_specs()) {
    CAPTURE(name);
    auto p = oracle::build_poset(s, 5);
    std::size_t n = p.bases.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || !p.le(i, j)) {
          continue;
        }
        auto core = elementary_core(p.bases[i], p.bases[j]);
        auto ci = p.find(core);
        REQUIRE(ci);
        CHECK(elementary_leq(p.bases[i], core));
        CHECK(p.le(*ci, j));
        for (std::size_t k = 0; k < n; ++k) {
          if (p.le(i, k) && p.le(k, j) && elementary_leq(p.bases[i], p.bases[k])) {
            CHECK(p.le(k, *ci));
          }
        }
      }
    }
  }
}

TEST_CASE("elementary sandwich stability") {
  auto s = oracle::brin23();
  auto p = oracle::build_poset(s, 6);
  std::size_t n = p.bases.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (!p.le(a, b) || !elementary_leq(p.bases[a], p.bases[b])) {
        continue;
      }
      for (std::size_t c = 0; c < n; ++c) {
        if (p.le(a, c) && p.le(c, b)) {
          CHECK(elementary_leq(p.bases[a], p.bases[c]));
          CHECK(elementary_leq(p.bases[c], p.bases[b]));
        }
      }
    }
  }
}

TEST_CASE("path basis contains the leaf") {
  auto s = oracle::mixed();
  Leaf l = leaf2(Interval{5, 12}, Interval{1, 4});
  auto b = path_basis(s, l);
  CHECK(b.index_of(l).has_value());
  CHECK(b.size() == 1 + 1 + 2 + 1 + 1 + 1);
}

TEST_CASE("prefix uniqueness") {
  auto s = oracle::mixed();
  auto p = oracle::build_poset(s, 6);
  for (std::size_t i = 0; i < p.bases.size(); i += 7) {
    for (std::size_t j = 0; j < p.bases.size(); ++j) {
      if (!p.le(i, j)) {
        continue;
      }
      for (auto const& l : p.bases[j].leaves()) {
        int ancestors = 0;
        for (auto const& a : p.bases[i].leaves()) {
          ancestors += is_descendant(*s, a, l);
        }
        CHECK(ancestors == 1);
      }
    }
  }
}
