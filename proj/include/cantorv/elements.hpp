#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "cantorv/cantor_terms.hpp"

namespace cantorv {

// A group element of V_r(Sigma): domain leaf j is carried affinely onto range
// leaf perm[j]. Elements act on the left, so compose(g, h) applies h first.
class Element {
 public:
  // Throws SpecMismatch or InvalidArgument.
  Element(Basis domain, Basis range, std::vector<std::size_t> perm);

  static Element identity(SpecPtr spec);

  Basis const& domain() const noexcept { return domain_; }
  Basis const& range() const noexcept { return range_; }
  std::vector<std::size_t> const& perm() const noexcept { return perm_; }
  std::size_t size() const noexcept { return perm_.size(); }
  SpecPtr const& spec_ptr() const noexcept { return domain_.spec_ptr(); }
  AlgebraSpec const& spec() const noexcept { return domain_.spec(); }

  // Same diagram, not merely the same map; see equals().
  friend bool operator==(Element const&, Element const&) = default;

 private:
  Basis domain_;
  Basis range_;
  std::vector<std::size_t> perm_;
};

// Image of a descendant of some domain leaf; nullopt if `leaf` lies below no
// domain leaf.
std::optional<Leaf> apply(Element const& g, Leaf const& leaf);

// g over a finer domain m >= domain(g).
Element expand_domain(Element const& g, Basis const& m);

// g * h, i.e. u -> g(h(u)); reduced.
Element compose(Element const& g, Element const& h);
Element invert(Element const& g);
Element power(Element const& g, long long k);
Element conjugate(Element const& g, Element const& by);  // by * g * by^-1

// Equality of maps, decided on the common refinement of the domains.
bool equals(Element const& g, Element const& h);
bool is_identity(Element const& g);
bool commutes(Element const& g, Element const& h);

// Contracts matching sibling families until none remain.
Element reduce(Element const& g);

// Least k <= cap with g^k = 1. Also nullopt when the powers outgrow the
// 2^60 denominator bound of Interval before k reaches the cap.
std::optional<std::size_t> order_of(Element const& g, std::size_t cap);

// The element sending dom[k] onto ran[k]. Both lists must be admissible
// bases of equal size; throws InvalidArgument or NotAdmissible.
Element element_from_pairs(SpecPtr const& spec, std::vector<Leaf> const& dom,
                           std::vector<Leaf> const& ran);

// Domain = range = b.
Element permutation_element(Basis const& b, std::vector<std::size_t> perm);

// The element X -> images, x_j to images[j]. Throws NotAdmissible unless the
// images form an admissible basis.
Element construct_from_images(SpecPtr const& spec, std::vector<Leaf> const& images);

struct Representation {
  Basis range;
  std::vector<std::size_t> perm;  // y leaf k -> range leaf perm[k]
};

// A diagram of g with domain exactly y, if one exists.
std::optional<Representation> represent_on(Element const& g, Basis const& y);

// Deterministic in (spec, size_bound, seed).
Element random_element(SpecPtr const& spec, std::size_t size_bound, std::uint64_t seed);

struct FiniteSubgroup {
  std::vector<Element> elements;  // identity first, then discovery order
  std::vector<Element> generators;

  std::size_t order() const noexcept { return elements.size(); }
  // Index of the element equal to g, if present.
  std::optional<std::size_t> find(Element const& g) const;
};

// Throws CapExceeded if the closure grows beyond `cap` elements.
FiniteSubgroup close_subgroup(SpecPtr const& spec, std::vector<Element> const& gens,
                              std::size_t cap);

}  // namespace cantorv
