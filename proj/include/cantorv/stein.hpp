#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cantorv/cantor_terms.hpp"

namespace cantorv {

using Simplex = std::vector<std::uint32_t>;  // sorted vertex indices

// A finite abstract simplicial complex stored dimension by dimension. Every
// simplex list is sorted.
struct SimplicialComplex {
  std::size_t vertex_count = 0;
  std::vector<std::vector<Simplex>> simplices;  // simplices[k]: the k-simplices

  int dimension() const noexcept { return static_cast<int>(simplices.size()) - 1; }
  std::vector<std::size_t> f_vector() const;
  long long euler_characteristic() const;
  bool contains(Simplex const& s) const;
  // Throws InvalidArgument if some face of a simplex is missing.
  void check_face_closed() const;
};

// Builds the complex from a list of simplices (any order, duplicates allowed)
// and adds every face.
SimplicialComplex complex_from_simplices(std::size_t vertex_count,
                                         std::vector<Simplex> simplices);

// All cliques of a graph as simplices.
SimplicialComplex flag_complex(std::size_t vertex_count,
                               std::vector<std::vector<bool>> const& adjacent);

// Full subcomplex on the given vertices, renumbered in the given order.
SimplicialComplex induced_subcomplex(SimplicialComplex const& k,
                                     std::vector<std::uint32_t> const& vertices);

// Vertices are the simplices of k in (dimension, lexicographic) order;
// simplices are chains under inclusion.
SimplicialComplex barycentric_subdivision(SimplicialComplex const& k);

// Exact isomorphism test by backtracking on vertex bijections.
bool isomorphic(SimplicialComplex const& a, SimplicialComplex const& b);

// Bases as vertices plus the complex on their indices.
struct BasisComplex {
  std::vector<Basis> vertices;
  SimplicialComplex complex;
};

// Vertices: bases >= X with at most size_cap leaves. Simplices: chains
// Y_0 < ... < Y_k with Y_0 elementary below Y_k.
BasisComplex build_stein(SpecPtr const& spec, std::size_t size_cap,
                         std::size_t simplex_cap = 2000000);

// L(A): every B >= X with B elementary and strictly below a, with all chains.
BasisComplex descending_link(Basis const& a);

// L_0(A): the same for very elementary B.
BasisComplex very_elementary_link(Basis const& a);

// (c_s, ..., c_2) and b = |B|; ordered lexicographically.
struct Height {
  std::vector<std::size_t> c;
  std::size_t b = 0;

  friend bool operator==(Height const&, Height const&) = default;
  friend std::strong_ordering operator<=>(Height const& x, Height const& y);
  std::string render() const;
};

// Throws NotComparable unless b <= a, InvalidArgument unless elementary.
Height height(Basis const& a, Basis const& b);

struct HLink {
  int link_case = 0;  // 0: b in L_0(A); 1: some leaf of b expanded once; 2: otherwise
  std::vector<Basis> vertices;       // down vertices first, then up vertices
  std::size_t down_count = 0;
  SimplicialComplex complex;         // full subcomplex of L(A)
  SimplicialComplex downlink;        // on vertices [0, down_count)
  SimplicialComplex uplink;          // on vertices [down_count, end), renumbered from 0
};

// lk_h(B) inside L(A), split into downlink (C < B, c(C) = c(B)) and uplink
// (C > B, c(C) < c(B)). Throws InvalidArgument unless b lies in L(A).
HLink h_descending_link(Basis const& a, Basis const& b);

// Vertices are (color, subset) with |subset| = arity; simplices are sets of
// pairwise disjoint subsets. vertex_labels receives the labels if given.
struct KnVertex {
  int color = 0;
  std::vector<std::uint32_t> subset;

  friend bool operator==(KnVertex const&, KnVertex const&) = default;
};
SimplicialComplex model_Kn(AlgebraSpec const& spec, std::size_t n,
                           std::vector<KnVertex>* vertex_labels = nullptr);

// The geometric analogue of K_n for a basis: vertices are the sibling
// families among the leaves of a (labelled by color), simplices are sets of
// disjoint families whose joint contraction is admissible.
SimplicialComplex geometric_Kn(Basis const& a, std::vector<KnVertex>* vertex_labels = nullptr);

struct ChainComplexReport {
  std::vector<std::size_t> f;                // simplex counts per dimension
  std::vector<std::size_t> betti_gf2;        // reduced, dimensions 0..dim
  std::optional<std::vector<std::size_t>> betti_q;
  bool empty = false;                        // then reduced b_{-1} = 1
  long long euler = 0;
  bool euler_consistent = false;
  bool acyclic_gf2() const;
  std::string render_tsv() const;
};

// Reduced Betti numbers by boundary ranks over GF(2) and, if rational is set,
// over Q by fraction-free elimination. Throws CapExceeded if some dimension
// has more than simplex_cap simplices.
ChainComplexReport homology(SimplicialComplex const& k, bool rational = false,
                            std::size_t simplex_cap = 20000);

}  // namespace cantorv
