#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "cantorv/algebra_spec.hpp"

namespace cantorv {

// Half-open interval [index/den, (index+1)/den) of the unit interval. Every
// interval reachable by subdivision has this form with den in the arity
// monoid of its block, so the pair is a canonical exact representation.
struct Interval {
  std::int64_t index = 0;
  std::int64_t den = 1;

  friend bool operator==(Interval const&, Interval const&) = default;
};

// Order by lower endpoint, then upper endpoint.
std::strong_ordering compare(Interval const& a, Interval const& b);
bool contains(Interval const& outer, Interval const& inner);
bool overlaps(Interval const& a, Interval const& b);

// A leaf of U_r(Sigma): root index plus one interval per block.
struct Leaf {
  int root = 0;
  boost::container::small_vector<Interval, 3> coords;

  friend bool operator==(Leaf const&, Leaf const&) = default;
};

// Canonical leaf order: root, then per block (lo, hi).
std::strong_ordering operator<=>(Leaf const& a, Leaf const& b);

struct LeafHash {
  std::size_t operator()(Leaf const& leaf) const noexcept;
};

Leaf root_leaf(AlgebraSpec const& spec, int root);
bool is_valid_leaf(AlgebraSpec const& spec, Leaf const& leaf);

// Children of `leaf` under `color`, left to right.
std::vector<Leaf> split_leaf(AlgebraSpec const& spec, Leaf const& leaf, int color);

// The leaf whose `color` split has `leaf` as a child, if any.
std::optional<Leaf> parent_along(AlgebraSpec const& spec, Leaf const& leaf, int color);

bool contains(Leaf const& outer, Leaf const& inner);
bool overlaps(Leaf const& a, Leaf const& b);

// Per-color subdivision exponents of `leaf` relative to `ancestor`, indexed
// by global color; nullopt unless `leaf` is reachable from `ancestor` by
// descending operations.
std::optional<std::vector<int>> relative_exponents(AlgebraSpec const& spec,
                                                   Leaf const& ancestor,
                                                   Leaf const& leaf);
bool is_descendant(AlgebraSpec const& spec, Leaf const& ancestor, Leaf const& leaf);

// Carries `leaf` (a descendant of `from`) to the descendant of `to` reached by
// the same descending word.
Leaf transport(Leaf const& from, Leaf const& to, Leaf const& leaf);

// Recursive split tree certifying that a leaf set is reachable from its root.
struct SplitTree {
  Leaf cuboid;
  int color = -1;  // -1 marks a leaf of the basis
  std::vector<SplitTree> children;
};

// Running tally of the |B| = r (mod d) law over every basis constructed.
struct ModDAudit {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
};
ModDAudit mod_d_audit();
void reset_mod_d_audit();

class Basis {
 public:
  // X: the r root cuboids.
  static Basis root(SpecPtr spec);

  // Validates the leaves, the exact partition of every root cuboid and
  // admissibility. Throws InvalidArgument or NotAdmissible.
  static Basis from_leaves(SpecPtr spec, std::vector<Leaf> leaves);

  // For leaf sets that are admissible by construction.
  static Basis trusted(SpecPtr spec, std::vector<Leaf> leaves);

  SpecPtr const& spec_ptr() const noexcept { return spec_; }
  AlgebraSpec const& spec() const noexcept { return *spec_; }
  std::vector<Leaf> const& leaves() const noexcept { return leaves_; }
  std::size_t size() const noexcept { return leaves_.size(); }
  Leaf const& operator[](std::size_t i) const { return leaves_[i]; }

  std::optional<std::size_t> index_of(Leaf const& leaf) const;

  // Index of the leaf of this basis that is an ancestor of (or equal to)
  // `leaf`.
  std::optional<std::size_t> ancestor_of(Leaf const& leaf) const;

  std::vector<SplitTree> certificate() const;

  friend bool operator==(Basis const& a, Basis const& b);

 private:
  Basis(SpecPtr spec, std::vector<Leaf> leaves);

  SpecPtr spec_;
  std::vector<Leaf> leaves_;  // canonical order
};

bool same_spec(Basis const& a, Basis const& b);

// Ordered expansion steps; leaf indices refer to the canonical order of the
// basis at the time of the step.
struct ExpansionStep {
  std::size_t leaf = 0;
  int color = 0;

  friend bool operator==(ExpansionStep const&, ExpansionStep const&) = default;
};

struct ExpansionScript {
  std::vector<ExpansionStep> steps;

  friend bool operator==(ExpansionScript const&, ExpansionScript const&) = default;
};

Basis replay(ExpansionScript const& script, Basis const& start);
Basis replay(SpecPtr spec, ExpansionScript const& script);
// A script taking X to `b`, derived from the admissibility certificate.
ExpansionScript script_of(Basis const& b);

Basis expand(Basis const& b, Leaf const& leaf, int color);
Basis expand(Basis const& b, std::size_t leaf_index, int color);

// Replaces a complete sibling family along `color` by its parent. Throws
// InvalidArgument if `family` is not such a family in `b`, NotAdmissible if
// the contracted set is not reachable from X.
Basis contract(Basis const& b, std::vector<Leaf> const& family, int color);

struct AdmissibilityReport {
  bool admissible = false;
  std::vector<SplitTree> certificate;  // one tree per root when admissible
};

// Decides reachability from X. Malformed leaves or a non-partition raise
// InvalidArgument rather than returning false.
AdmissibilityReport is_admissible(AlgebraSpec const& spec, std::vector<Leaf> leaves);

// Throws InvalidArgument unless the leaves are valid and partition every
// root cuboid exactly.
void check_partition(AlgebraSpec const& spec, std::span<Leaf const> leaves);

// a <= b: b is obtained from a by expansions.
bool leq(Basis const& a, Basis const& b);
Basis lub(Basis const& a, Basis const& b);
Basis glb(Basis const& a, Basis const& b);

// a <= b with no color repeated on any path (elementary) / every path of
// length at most one (very elementary). Throws NotComparable unless a <= b.
bool elementary_leq(Basis const& a, Basis const& b);
bool very_elementary_leq(Basis const& a, Basis const& b);

// E(a): every color applied exactly once to every leaf.
Basis max_elementary(Basis const& a);

// glb(E(a), b) for a < b.
Basis elementary_core(Basis const& a, Basis const& b);

// Cap on enumeration sizes; CANTORV_CAP overrides the default.
std::size_t default_enumeration_cap();

// All bases >= X with at most max_size leaves, ordered by size then leaves.
std::vector<Basis> enumerate_bases(SpecPtr const& spec, std::size_t max_size,
                                   std::size_t cap = default_enumeration_cap());

// A basis >= X containing `leaf`, obtained along a single expansion path.
Basis path_basis(SpecPtr const& spec, Leaf const& leaf);

namespace detail {

// Memoized pattern analysis below a single cuboid. Cells are always passed
// in canonical order and are assumed to partition the cuboid.
class PatternOracle {
 public:
  explicit PatternOracle(AlgebraSpec const& spec) : spec_(spec) {}

  bool admissible(Leaf const& cuboid, std::span<Leaf const> cells);

  // Cells grouped by part of the `color` split, if every cell lies in one
  // part and every part's pattern is admissible.
  std::optional<std::vector<std::vector<Leaf>>> split(Leaf const& cuboid,
                                                      std::span<Leaf const> cells,
                                                      int color);

  SplitTree tree(Leaf const& cuboid, std::span<Leaf const> cells);

  std::vector<Leaf> lub(Leaf const& cuboid, std::vector<Leaf> const& p,
                        std::vector<Leaf> const& q);
  std::vector<Leaf> glb(Leaf const& cuboid, std::vector<Leaf> const& p,
                        std::vector<Leaf> const& q);

 private:
  int first_color(Leaf const& cuboid, std::span<Leaf const> cells);
  // Every cell lies in one part of the `color` split.
  bool fits(Leaf const& cuboid, std::span<Leaf const> cells, int color) const;
  std::vector<Leaf> refine_to_split(Leaf const& cuboid, std::vector<Leaf> const& p,
                                    int color);

  struct KeyHash {
    std::size_t operator()(std::vector<Leaf> const& key) const noexcept;
  };

  AlgebraSpec const& spec_;
  // -2: not admissible, -1: trivial pattern, otherwise the first split color.
  std::unordered_map<std::vector<Leaf>, int, KeyHash> memo_;
};

// Leaves of `cells` lying inside `cuboid`, in canonical order.
std::vector<Leaf> cells_inside(Leaf const& cuboid, std::span<Leaf const> cells);

}  // namespace detail

}  // namespace cantorv
