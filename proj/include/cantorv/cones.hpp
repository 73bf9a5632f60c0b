#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cantorv/elements.hpp"

namespace cantorv {

// A cone: the union of the point sets of finitely many leaf cuboids, possibly
// empty. Stored as a greedily contracted leaf list in canonical order. The
// contraction is deterministic but not confluent for every spec, so compare
// cones with cone_equals, not by support.
class Cone {
 public:
  static Cone empty(SpecPtr spec);
  static Cone full(SpecPtr spec);
  // Throws InvalidArgument on malformed leaves.
  static Cone from_leaves(SpecPtr spec, std::vector<Leaf> leaves);

  std::vector<Leaf> const& support() const noexcept { return support_; }
  bool is_empty() const noexcept { return support_.empty(); }
  SpecPtr const& spec_ptr() const noexcept { return spec_; }
  AlgebraSpec const& spec() const noexcept { return *spec_; }

 private:
  Cone(SpecPtr spec, std::vector<Leaf> support);

  SpecPtr spec_;
  std::vector<Leaf> support_;
};

// A basis >= X on which every given leaf is a union of basis leaves.
Basis witness_basis(SpecPtr const& spec, std::vector<Leaf> const& leaves);
Basis witness_basis(Cone const& u);

// Indices of the leaves of b lying in u; b must refine u's witness basis.
std::vector<std::size_t> cone_subset(Cone const& u, Basis const& b);

bool cone_equals(Cone const& u, Cone const& v);
int cone_norm(Cone const& u);
bool cone_disjoint(Cone const& u, Cone const& v);
Cone act(Element const& g, Cone const& u);

// Point-set intersection and union (plumbing beyond the disjointness test).
Cone cone_intersection(Cone const& u, Cone const& v);
Cone cone_union(Cone const& u, Cone const& v);

using ConeTuple = std::vector<Cone>;

bool is_covering(ConeTuple const& t);
bool is_disjoint(ConeTuple const& t);
ConeTuple act(Element const& g, ConeTuple const& t);
bool tuple_equals(ConeTuple const& a, ConeTuple const& b);

// Norm tuple of a covering, disjoint tuple. Throws InvalidArgument otherwise.
std::vector<int> tuple_classify(ConeTuple const& t);

// An element g with act(g, t1) = t2 componentwise, if the invariants agree.
std::optional<Element> tuple_witness(ConeTuple const& t1, ConeTuple const& t2);

struct StabilizerShape {
  std::vector<std::size_t> sizes;  // k_i = |A_i| on the common witness basis
  std::string render() const;      // "V_k1 x V_k2 x ..."
};

StabilizerShape tuple_stabilizer_shape(ConeTuple const& t);

// A pseudo-random element fixing every cone of t, glued from one random
// element per nonempty cone.
Element stabilizer_sample(ConeTuple const& t, std::size_t extra_expansions, std::uint64_t seed);

// For a covering tuple of length n: entry S (nonempty subsets in binary
// counter order, bit k standing for cone k) holds the points lying in exactly
// the cones of S. The result is covering and disjoint.
ConeTuple disjointify(ConeTuple const& t);

// Subset S of {0..n-1} at position `index` of the disjointify order.
std::vector<int> disjointify_subset(std::size_t index);

}  // namespace cantorv
