#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cantorv/cones.hpp"
#include "cantorv/elements.hpp"

namespace cantorv {

// A permutation of {0..m-1}; p[k] is the image of k.
using Perm = std::vector<std::size_t>;

// Y <- lub(Y, g(lub(domain g, Y))) over g in Q until stable. Throws
// IterationCapExceeded after max_iter rounds.
Basis invariant_basis(FiniteSubgroup const& q, std::size_t max_iter = 64);

struct MinimizeResult {
  Basis basis;
  bool exhaustive = true;  // false if the BFS hit its state cap
  std::size_t states = 0;
};

// BFS over contractions of whole Q-orbits of sibling families that keep the
// basis Q-invariant; returns the smallest basis reached (ties: canonical
// order). Throws InvalidArgument if y is not Q-invariant.
MinimizeResult minimize_invariant_basis(Basis const& y, FiniteSubgroup const& q,
                                        std::size_t state_cap = 20000);

struct Orbit {
  std::vector<std::size_t> leaves;      // indices into Y in letter order; leaves[0] is marked
  std::vector<std::size_t> stabilizer;  // of the marked leaf, indices into Q
  std::size_t type = 0;
};

struct OrbitType {
  std::string id;                       // "trivial", "regular" or "m<m>_<k>"
  std::size_t m = 0;
  std::vector<std::size_t> stabilizer;  // canonical representative H of the class
  std::vector<std::size_t> coset_reps;  // letter k is the coset coset_reps[k] H
  std::vector<Perm> phi;                // phi[q] acting on letters
  std::vector<std::size_t> orbits;      // indices into InvariantBasisReport::orbits
  std::size_t r() const noexcept { return orbits.size(); }
};

struct InvariantBasisReport {
  FiniteSubgroup q;
  Basis y;
  std::vector<Perm> action;   // action[q] permutes the leaves of Y
  std::vector<std::vector<std::size_t>> table;  // table[a][b] = index of q_a q_b
  std::vector<Orbit> orbits;  // ordered by marked leaf
  std::vector<OrbitType> types;  // realized types, ordered by (m, H)
  bool minimal_exhaustive = true;
  std::optional<std::size_t> t_total;  // conjugacy classes of subgroups, small Q only
};

// Y must be Q-invariant; throws InvalidArgument otherwise. Marked leaves are
// the least leaf of the orbit whose stabilizer is exactly the class
// representative H, so every orbit of a type is identified with Q/H the same
// way.
InvariantBasisReport orbit_types(Basis const& y, FiniteSubgroup const& q);

// All permutations of {0..m-1} commuting with every generator, identity
// first then lexicographic. Throws CapExceeded if m > cap.
std::vector<Perm> perm_centralizer(std::vector<Perm> const& gens, std::size_t m,
                                   std::size_t cap = 8);

std::vector<Perm> type_centralizer_L(InvariantBasisReport const& report, std::size_t type,
                                     std::size_t cap = 8);

// |N_Q(H)| / |H| for the class representative of `type`.
std::size_t zassenhaus_order(InvariantBasisReport const& report, std::size_t type);

struct CentralizerFactor {
  std::size_t type = 0;  // index into report.types
  std::vector<Perm> L;
  SpecPtr quotient;      // same blocks, r_i roots
};

struct CentralizerStructure {
  InvariantBasisReport report;
  std::vector<CentralizerFactor> factors;  // one per realized type

  std::string statement() const;  // "C = K_regular x| V_1 x ..."
  std::string render() const;     // line-oriented report
};

CentralizerStructure centralizer_structure(FiniteSubgroup const& q, std::size_t l_cap = 8);

// A map from the leaves of a basis of the quotient algebra to L of a factor.
struct KernelElement {
  std::size_t factor = 0;
  Basis basis;
  std::vector<std::size_t> labels;  // labels[k] indexes factor.L for basis[k]
};

KernelElement kernel_identity(CentralizerStructure const& c, std::size_t factor);

// Diagonal propagation of labels onto m >= k.basis.
KernelElement kernel_expand(KernelElement const& k, Basis const& m);
bool kernel_equals(KernelElement const& a, KernelElement const& b);

// The induced action of an element of the quotient group on labels.
KernelElement kernel_act(Element const& v, KernelElement const& k);

KernelElement random_kernel_element(CentralizerStructure const& c, std::size_t factor,
                                    std::size_t size_bound, std::uint64_t seed);

// Y with the orbits of the factor's type refined along `a`: quotient root j
// stands for the j-th orbit of the type, and each of its leaves is carried
// into every leaf of that orbit.
Basis lift_basis(CentralizerStructure const& c, std::size_t factor, Basis const& a);

// The element acting on orbit j letterwise by the label of the quotient leaf.
// Throws InvalidArgument on malformed labels.
Element build_kernel_element(CentralizerStructure const& c, KernelElement const& k);

// Entry s is the cone of quotient leaves labelled L[s].
ConeTuple encode_kernel_element(CentralizerStructure const& c, KernelElement const& k);

// Lift of v in V_{r_i} acting diagonally on the orbits of the factor's type
// and fixing marked letters. Throws InvalidArgument if v is over another spec.
Element splitting_lift(CentralizerStructure const& c, std::size_t factor, Element const& v);

struct NormalizerReport {
  Basis y;
  std::vector<Perm> q_action;   // Q on Y
  std::vector<Perm> normalizer;  // N_{S(Y)}(Q) as permutations of Y
  std::vector<Perm> centralizer;  // C_{S(Y)}(Q)
  std::vector<Perm> coset_reps;   // one per coset of C in N
  std::size_t weyl_order() const noexcept { return coset_reps.size(); }
  std::string render() const;
};

// Exhaustive over S(Y) for a minimal invariant Y. Throws CapExceeded if
// |Y|! > cap.
NormalizerReport normalizer_analysis(FiniteSubgroup const& q, std::size_t cap = 40320);

// For g in N_{S(Y)}(Q): the realized type index that type i is carried to by
// conjugation.
std::vector<std::size_t> type_transport(InvariantBasisReport const& report, Perm const& g);

}  // namespace cantorv
