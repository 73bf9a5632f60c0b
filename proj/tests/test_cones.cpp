#include <doctest.h>

#include <random>

#include "cantorv/cones.hpp"
#include "cantorv/error.hpp"
#include "oracles.hpp"
#include "samplers.hpp"

using namespace cantorv;
using oracle::leaf1;
using oracle::all_tuples;
using oracle::random_cone;
using oracle::refine_support;

namespace {

Cone cone1(SpecPtr const& s, std::vector<std::pair<std::int64_t, std::int64_t>> const& ivs) {
  std::vector<Leaf> leaves;
  for (auto [i, d] : ivs) {
    leaves.push_back(leaf1(i, d));
  }
  return Cone::from_leaves(s, leaves);
}

}  // namespace

TEST_CASE("cone equality through a common basis") {
  for (auto const& [name, s] : oracle::bundled_specs()) {
    CAPTURE(name);
    auto root = Cone::full(s);
    for (int c = 0; c < s->color_count(); ++c) {
      auto kids = split_leaf(*s, Basis::root(s)[0], c);
      CHECK(cone_equals(root, Cone::from_leaves(s, kids)));
    }
    CHECK_FALSE(cone_equals(Cone::empty(s), root));
    for (auto const& b : enumerate_bases(s, 5)) {
      CHECK(cone_equals(root, Cone::from_leaves(s, b.leaves())));
    }
  }
}

TEST_CASE("norms") {
  auto s = oracle::v31();
  CHECK(cone_norm(cone1(s, {{0, 3}})) == 1);
  CHECK(cone_norm(cone1(s, {{0, 3}, {1, 3}})) == 2);
  CHECK(cone_norm(cone1(s, {{0, 9}, {1, 9}, {1, 3}})) == 1);
  CHECK(cone_norm(Cone::empty(s)) == 0);
  CHECK(cone_norm(Cone::full(s)) == 1);
}

TEST_CASE("norm and disjointness survive refinement") {
  std::mt19937_64 rng(7);
  for (auto const& [name, s] : oracle::bundled_specs()) {
    CAPTURE(name);
    for (int k = 0; k < 40; ++k) {
      auto u = random_cone(s, rng);
      auto v = random_cone(s, rng);
      auto u2 = refine_support(u, rng);
      auto v2 = refine_support(v, rng);
      CHECK(cone_equals(u, u2));
      CHECK(cone_norm(u) == cone_norm(u2));
      CHECK(cone_disjoint(u, v) == cone_disjoint(u2, v2));
      bool geometric = true;
      for (auto const& a : u.support()) {
        for (auto const& b : v.support()) {
          geometric = geometric && !overlaps(a, b);
        }
      }
      CHECK(cone_disjoint(u, v) == geometric);
    }
  }
}

TEST_CASE("disjointness") {
  auto s = oracle::v21();
  CHECK(cone_disjoint(cone1(s, {{0, 2}}), cone1(s, {{1, 2}})));
  CHECK_FALSE(cone_disjoint(cone1(s, {{0, 2}}), cone1(s, {{1, 4}})));
}

TEST_CASE("the action is a group action") {
  for (auto const& [name, s] : oracle::bundled_specs()) {
    CAPTURE(name);
    std::mt19937_64 rng(11);
    auto id = Element::identity(s);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      auto g = random_element(s, 6, seed);
      auto h = random_element(s, 6, seed + 1000);
      auto u = random_cone(s, rng);
      CHECK(cone_equals(act(id, u), u));
      CHECK(cone_equals(act(invert(g), act(g, u)), u));
      CHECK(cone_equals(act(compose(g, h), u), act(g, act(h, u))));
      CHECK(cone_equals(act(g, Cone::full(s)), Cone::full(s)));
      CHECK(cone_norm(act(g, u)) == cone_norm(u));
    }
  }
}

TEST_CASE("Stein canonical contraction is not confluent") {
  // [0,2/3) is both {[0,1/2),[1/2,2/3)} and {[0,1/3),[1/3,2/3)}; neither
  // contracts further, so support shapes differ while the cones agree.
  auto s = oracle::stein23();
  auto a = cone1(s, {{0, 2}, {3, 6}});
  auto b = cone1(s, {{0, 3}, {1, 3}});
  CHECK(cone_equals(a, b));
  CHECK(a.support().size() == 2);
  CHECK(b.support().size() == 2);
}

TEST_CASE("classification and witnesses") {
  auto s = oracle::v21();
  ConeTuple halves{cone1(s, {{0, 2}}), cone1(s, {{1, 2}})};
  ConeTuple quarter{cone1(s, {{0, 4}}), cone1(s, {{1, 4}, {1, 2}})};
  CHECK(tuple_classify(halves) == std::vector<int>{1, 1});
  CHECK(tuple_classify(quarter) == std::vector<int>{1, 1});
  auto g = tuple_witness(quarter, halves);
  REQUIRE(g);
  CHECK(tuple_equals(act(*g, quarter), halves));
  auto id = tuple_witness(halves, halves);
  REQUIRE(id);
  CHECK(tuple_equals(act(*id, halves), halves));
  ConeTuple bad{cone1(s, {{0, 2}}), cone1(s, {{0, 2}})};
  CHECK_THROWS_AS(tuple_classify(bad), InvalidArgument);

  auto t = oracle::v31();
  ConeTuple a{cone1(t, {{0, 3}}), cone1(t, {{1, 3}, {2, 3}})};
  ConeTuple b{cone1(t, {{0, 3}, {1, 3}}), cone1(t, {{2, 3}})};
  ConeTuple c{Cone::full(t), Cone::empty(t)};
  CHECK(tuple_classify(a) == std::vector<int>{1, 2});
  CHECK_FALSE(tuple_witness(a, b));
  CHECK_FALSE(tuple_witness(a, c));
  CHECK(tuple_classify(c) == std::vector<int>{1, 0});
}

TEST_CASE("witness exists iff invariants match") {
  for (auto const& s : {oracle::v31(), oracle::stein23()}) {
    auto tuples = all_tuples(s, 3, 2);
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      for (std::size_t j = 0; j < tuples.size(); ++j) {
        bool same = tuple_classify(tuples[i]) == tuple_classify(tuples[j]);
        auto g = tuple_witness(tuples[i], tuples[j]);
        CHECK(g.has_value() == same);
        if (g) {
          CHECK(tuple_equals(act(*g, tuples[i]), tuples[j]));
        }
      }
    }
  }
}

TEST_CASE("stabilizer shape and samples") {
  auto s = oracle::v21();
  ConeTuple halves{cone1(s, {{0, 2}}), cone1(s, {{1, 2}})};
  auto shape = tuple_stabilizer_shape(halves);
  CHECK(shape.sizes == std::vector<std::size_t>{1, 1});
  CHECK(shape.render() == "V_1 x V_1");
  CHECK(tuple_stabilizer_shape({Cone::full(s)}).sizes == std::vector<std::size_t>{1});
  auto r2 = oracle::spec("roots=2; block[2]");
  CHECK(tuple_stabilizer_shape({Cone::full(r2)}).sizes == std::vector<std::size_t>{2});

  for (auto const& [name, sp] : oracle::bundled_specs()) {
    CAPTURE(name);
    std::mt19937_64 rng(5);
    for (int k = 0; k < 10; ++k) {
      auto u = random_cone(sp, rng);
      // Complement on the witness basis.
      auto w = witness_basis(u);
      auto in = cone_subset(u, w);
      std::vector<Leaf> comp;
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (!std::binary_search(in.begin(), in.end(), i)) {
          comp.push_back(w[i]);
        }
      }
      ConeTuple t{u, Cone::from_leaves(sp, comp)};
      REQUIRE(is_covering(t));
      REQUIRE(is_disjoint(t));
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto g = stabilizer_sample(t, 3, seed);
        CHECK(tuple_equals(act(g, t), t));
      }
    }
  }
}

TEST_CASE("disjointify") {
  auto s = oracle::v21();
  auto left = cone1(s, {{0, 2}});
  auto right = cone1(s, {{1, 2}});
  auto d = disjointify({left, right});
  REQUIRE(d.size() == 3);
  CHECK(cone_equals(d[0], left));
  CHECK(cone_equals(d[1], right));
  CHECK(d[2].is_empty());
  auto full = disjointify({Cone::full(s), Cone::full(s)});
  CHECK(full[0].is_empty());
  CHECK(full[1].is_empty());
  CHECK(cone_equals(full[2], Cone::full(s)));
  CHECK(disjointify_subset(0) == std::vector<int>{0});
  CHECK(disjointify_subset(2) == std::vector<int>{0, 1});
  CHECK_THROWS_AS(disjointify({left}), InvalidArgument);

  for (auto const& [name, sp] : oracle::bundled_specs()) {
    CAPTURE(name);
    std::mt19937_64 rng(3);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      auto u = random_cone(sp, rng);
      auto v = random_cone(sp, rng);
      ConeTuple t{u, cone_union(v, Cone::full(sp)), v};
      auto dj = disjointify(t);
      CHECK(is_covering(dj));
      CHECK(is_disjoint(dj));
      auto g = random_element(sp, 6, seed);
      CHECK(tuple_equals(act(g, dj), disjointify(act(g, t))));
    }
  }
}

TEST_CASE("intersection plumbing") {
  auto s = oracle::stein23();
  auto a = cone1(s, {{0, 2}});
  auto b = cone1(s, {{1, 3}});
  auto i = cone_intersection(a, b);
  CHECK(cone_equals(i, cone1(s, {{2, 6}})));
  CHECK(cone_intersection(a, cone1(s, {{1, 2}})).is_empty());
}
