#include <doctest.h>

#include "cantorv/error.hpp"
#include "cantorv/serialize.hpp"
#include "groups.hpp"
#include "oracles.hpp"

using namespace cantorv;
using namespace oracle;

TEST_CASE("leaf and interval text") {
  auto s = brin2v();
  auto leaf = leaf2(iv(1, 2), iv(3, 4));
  CHECK(render_leaf(leaf) == "root:0 [1/2,1/1) [3/4,1/1)");
  CHECK(parse_leaf(*s, "root:0 [1/2,1) [3/4,4/4)") == leaf);
  CHECK(parse_leaf(*s, "root:0 [2/4,1/1) [6/8,1/1)") == leaf);
  CHECK_THROWS_AS(parse_leaf(*s, "root:0 [1/3,1) [0,1)"), ParseError);
  CHECK_THROWS_AS(parse_leaf(*s, "root:0 [1/4,3/4) [0,1)"), ParseError);
  CHECK_THROWS_AS(parse_leaf(*s, "root:0 [0,1/2)"), ParseError);
  CHECK_THROWS_AS(parse_leaf(*v21(), "root:0 [0,1/3)"), ParseError);
  CHECK(parse_leaf(*stein23(), "root:0 [1/6,2/6)") == leaf1(1, 6));
}

TEST_CASE("basis round trip over enumerated posets") {
  for (auto const& [name, s] : bundled_specs()) {
    CAPTURE(name);
    for (auto const& b : enumerate_bases(s, 5)) {
      auto text = render_basis(b);
      CHECK(read_basis(text) == b);
      CHECK(read_basis(text, s) == b);
      CHECK(replay(s, parse_script(render_script(script_of(b)))) == b);
    }
  }
}

TEST_CASE("basis files") {
  auto s = stein23();
  auto b = read_basis("# halves\nspec: roots=1; block[2,3]\nroot:0 [0,1/2)\nroot:0 [1/2,1)\n");
  CHECK(b.size() == 2);
  CHECK(read_basis("E 0 0\nE 1 1\n", s).size() == 4);
  CHECK_THROWS_AS(read_basis("root:0 [0,1/2)\n"), ParseError);
  CHECK_THROWS_AS(read_basis("spec: roots=1; block[2]\nroot:0 [0,1)\n", s), SpecMismatch);
  CHECK_THROWS_AS(read_basis("root:0 [0,1/2)\nroot:0 [1/2,2/3)\nroot:0 [2/3,1)\n", s),
                  NotAdmissible);
  auto raw = read_leaves("root:0 [0,1/2)\nroot:0 [1/2,2/3)\nroot:0 [2/3,1)\n", s);
  CHECK(raw.size() == 3);
  CHECK_FALSE(is_admissible(*s, raw).admissible);
  auto list = enumerate_bases(s, 3);
  CHECK(read_basis_list(render_basis_list(list, s)) == list);
}

TEST_CASE("element round trip") {
  for (auto const& [name, s] : bundled_specs()) {
    CAPTURE(name);
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      auto g = random_element(s, 6, seed);
      auto text = render_element(g);
      auto h = read_element(text);
      CHECK(equals(g, h));
      CHECK(render_element(h) == text);
    }
  }
  CHECK_THROWS_AS(read_element("spec: roots=1; block[2]\ndomain:\nperm: 0\n"), ParseError);
  CHECK_THROWS_AS(read_element("spec: roots=1; block[2]\ndomain:\nE 0 0\nrange:\nperm: 0 1\n"),
                  Error);
}

TEST_CASE("cone and tuple round trip") {
  auto s = v21();
  auto u = Cone::from_leaves(s, {leaf1(0, 4), leaf1(1, 4), leaf1(3, 4)});
  auto text = render_cone(u);
  CHECK(text == "spec: roots=1; block[2]\nroot:0 [0/1,1/2)\nroot:0 [3/4,1/1)\n");
  CHECK(cone_equals(read_cone(text), u));
  CHECK(read_cone("EMPTY\n", s).is_empty());
  ConeTuple t{u, Cone::empty(s), Cone::from_leaves(s, {leaf1(2, 4)})};
  auto back = read_cone_tuple(render_cone_tuple(t));
  CHECK(tuple_equals(back, t));
  CHECK(render_cone_tuple(back) == render_cone_tuple(t));
}

TEST_CASE("group and kernel files") {
  auto q = sigma_group();
  auto gens = read_group(render_group(q.generators));
  CHECK(gens.size() == 1);
  CHECK(equals(gens[0], q.generators[0]));
  auto multi = read_group(render_group(s3_group().generators));
  CHECK(close_subgroup(multi[0].spec_ptr(), multi, 16).order() == 6);

  auto c = centralizer_structure(mixed_z2_group());
  for (std::size_t f = 0; f < c.factors.size(); ++f) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      auto k = random_kernel_element(c, f, 5, seed);
      auto text = render_kernel(c, k);
      auto back = read_kernel(text, c);
      CHECK(back.factor == k.factor);
      CHECK(back.basis == k.basis);
      CHECK(back.labels == k.labels);
    }
  }
  CHECK_THROWS_AS(read_kernel("factor: 9\nbasis:\nlabels: 0\n", c), ParseError);
}
