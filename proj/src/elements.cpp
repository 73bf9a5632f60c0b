#include "cantorv/elements.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "cantorv/error.hpp"

namespace cantorv {

namespace {

using i128 = __int128;

std::vector<std::size_t> inverse_perm(std::vector<std::size_t> const& p) {
  std::vector<std::size_t> inv(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    inv[p[j]] = j;
  }
  return inv;
}

// Builds an element from matched leaf lists (domain[k] -> range[k]).
Element from_pairs(SpecPtr const& spec, std::vector<Leaf> const& dom, std::vector<Leaf> const& ran) {
  Basis d = Basis::trusted(spec, dom);
  Basis r = Basis::trusted(spec, ran);
  std::vector<std::size_t> perm(dom.size());
  for (std::size_t k = 0; k < dom.size(); ++k) {
    perm[*d.index_of(dom[k])] = *r.index_of(ran[k]);
  }
  return Element(std::move(d), std::move(r), std::move(perm));
}

// Smallest cuboid containing all leaves, if it is itself a valid leaf.
std::optional<Leaf> bounding_leaf(AlgebraSpec const& spec, std::vector<Leaf> const& leaves) {
  Leaf out;
  out.root = leaves.front().root;
  for (auto const& l : leaves) {
    if (l.root != out.root) {
      return std::nullopt;
    }
  }
  for (int b = 0; b < spec.block_count(); ++b) {
    auto bi = static_cast<std::size_t>(b);
    i128 lcm = 1;
    for (auto const& l : leaves) {
      auto den = l.coords[bi].den;
      lcm = lcm / std::gcd(static_cast<std::int64_t>(lcm % den), den) * den;
      if (lcm > (i128{1} << 62)) {
        return std::nullopt;
      }
    }
    i128 lo = lcm;
    i128 hi = 0;
    for (auto const& l : leaves) {
      auto const& iv = l.coords[bi];
      i128 scale = lcm / iv.den;
      lo = std::min(lo, iv.index * scale);
      hi = std::max(hi, (iv.index + 1) * scale);
    }
    i128 len = hi - lo;
    if (lcm % len != 0 || lo % len != 0) {
      return std::nullopt;
    }
    auto den = static_cast<std::int64_t>(lcm / len);
    if (!spec.exponents(b, den)) {
      return std::nullopt;
    }
    out.coords.push_back(Interval{static_cast<std::int64_t>(lo / len), den});
  }
  return out;
}

}  // namespace

Element::Element(Basis domain, Basis range, std::vector<std::size_t> perm)
    : domain_(std::move(domain)), range_(std::move(range)), perm_(std::move(perm)) {
  if (!same_spec(domain_, range_)) {
    throw SpecMismatch();
  }
  if (domain_.size() != range_.size()) {
    throw InvalidArgument("domain and range have different sizes");
  }
  if (perm_.size() != domain_.size()) {
    throw InvalidArgument("permutation length does not match the bases");
  }
  std::vector<char> seen(perm_.size(), 0);
  for (auto p : perm_) {
    if (p >= perm_.size() || seen[p]) {
      throw InvalidArgument("map is not a bijection");
    }
    seen[p] = 1;
  }
}

Element Element::identity(SpecPtr spec) {
  Basis x = Basis::root(std::move(spec));
  std::vector<std::size_t> perm(x.size());
  std::iota(perm.begin(), perm.end(), 0);
  return Element(x, x, std::move(perm));
}

std::optional<Leaf> apply(Element const& g, Leaf const& leaf) {
  auto i = g.domain().ancestor_of(leaf);
  if (!i) {
    return std::nullopt;
  }
  return transport(g.domain()[*i], g.range()[g.perm()[*i]], leaf);
}

Element expand_domain(Element const& g, Basis const& m) {
  std::vector<Leaf> images;
  images.reserve(m.size());
  for (auto const& l : m.leaves()) {
    auto img = apply(g, l);
    if (!img) {
      throw InvalidArgument("basis is not a refinement of the domain");
    }
    images.push_back(std::move(*img));
  }
  return from_pairs(g.spec_ptr(), m.leaves(), images);
}

Element compose(Element const& g, Element const& h) {
  if (!same_spec(g.domain(), h.domain())) {
    throw SpecMismatch();
  }
  Basis m = lub(h.range(), g.domain());
  auto hinv = inverse_perm(h.perm());
  std::vector<Leaf> dom;
  std::vector<Leaf> ran;
  dom.reserve(m.size());
  ran.reserve(m.size());
  for (auto const& l : m.leaves()) {
    auto k = *h.range().ancestor_of(l);
    auto j = hinv[k];
    dom.push_back(transport(h.range()[k], h.domain()[j], l));
    ran.push_back(*apply(g, l));
  }
  return reduce(from_pairs(g.spec_ptr(), dom, ran));
}

Element invert(Element const& g) {
  return Element(g.range(), g.domain(), inverse_perm(g.perm()));
}

Element power(Element const& g, long long k) {
  Element base = k < 0 ? invert(g) : g;
  unsigned long long n = k < 0 ? static_cast<unsigned long long>(-k) : static_cast<unsigned long long>(k);
  Element acc = Element::identity(g.spec_ptr());
  while (n > 0) {
    if (n & 1U) {
      acc = compose(base, acc);
    }
    n >>= 1U;
    if (n > 0) {
      base = compose(base, base);
    }
  }
  return acc;
}

Element conjugate(Element const& g, Element const& by) {
  return compose(by, compose(g, invert(by)));
}

bool equals(Element const& g, Element const& h) {
  if (!same_spec(g.domain(), h.domain())) {
    throw SpecMismatch();
  }
  if (g == h) {
    return true;
  }
  Basis m = lub(g.domain(), h.domain());
  for (auto const& l : m.leaves()) {
    if (*apply(g, l) != *apply(h, l)) {
      return false;
    }
  }
  return true;
}

bool is_identity(Element const& g) {
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (g.domain()[j] != g.range()[g.perm()[j]]) {
      return false;
    }
  }
  return true;
}

bool commutes(Element const& g, Element const& h) {
  return equals(compose(g, h), compose(h, g));
}

Element reduce(Element const& g) {
  auto const& spec = g.spec();
  std::vector<Leaf> dom = g.domain().leaves();
  std::vector<Leaf> ran(dom.size());
  for (std::size_t j = 0; j < dom.size(); ++j) {
    ran[j] = g.range()[g.perm()[j]];
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t j = 0; j < dom.size() && !changed; ++j) {
      for (int c = 0; c < spec.color_count() && !changed; ++c) {
        auto parent = parent_along(spec, dom[j], c);
        if (!parent) {
          continue;
        }
        auto kids = split_leaf(spec, *parent, c);
        if (kids.front() != dom[j]) {
          continue;  // visit each family from its first child
        }
        std::vector<std::size_t> idx;
        for (auto const& k : kids) {
          auto it = std::find(dom.begin(), dom.end(), k);
          if (it == dom.end()) {
            break;
          }
          idx.push_back(static_cast<std::size_t>(it - dom.begin()));
        }
        if (idx.size() != kids.size()) {
          continue;
        }
        auto rparent = parent_along(spec, ran[idx.front()], c);
        if (!rparent) {
          continue;
        }
        auto rkids = split_leaf(spec, *rparent, c);
        bool match = true;
        for (std::size_t k = 0; k < kids.size(); ++k) {
          match = match && ran[idx[k]] == rkids[k];
        }
        if (!match) {
          continue;
        }
        std::vector<Leaf> nd;
        std::vector<Leaf> nr;
        for (std::size_t t = 0; t < dom.size(); ++t) {
          if (std::find(idx.begin(), idx.end(), t) == idx.end()) {
            nd.push_back(dom[t]);
            nr.push_back(ran[t]);
          }
        }
        nd.push_back(*parent);
        nr.push_back(*rparent);
        if (!is_admissible(spec, nd).admissible || !is_admissible(spec, nr).admissible) {
          continue;
        }
        dom = std::move(nd);
        ran = std::move(nr);
        changed = true;
      }
    }
  }
  return from_pairs(g.spec_ptr(), dom, ran);
}

std::optional<std::size_t> order_of(Element const& g, std::size_t cap) {
  Element cur = g;
  for (std::size_t k = 1; k <= cap; ++k) {
    if (is_identity(cur)) {
      return k;
    }
    if (k < cap) {
      try {
        cur = compose(g, cur);
      } catch (CapExceeded const&) {
        // Powers outgrew exact interval arithmetic before reaching the cap.
        return std::nullopt;
      }
    }
  }
  return std::nullopt;
}

Element element_from_pairs(SpecPtr const& spec, std::vector<Leaf> const& dom,
                           std::vector<Leaf> const& ran) {
  if (dom.size() != ran.size()) {
    throw InvalidArgument("domain and range have different sizes");
  }
  if (!is_admissible(*spec, dom).admissible || !is_admissible(*spec, ran).admissible) {
    throw NotAdmissible("leaf list is not an admissible basis");
  }
  return from_pairs(spec, dom, ran);
}

Element permutation_element(Basis const& b, std::vector<std::size_t> perm) {
  if (perm.size() != b.size()) {
    throw InvalidArgument("permutation length " + std::to_string(perm.size()) +
                          " does not match basis size " + std::to_string(b.size()));
  }
  return Element(b, b, std::move(perm));
}

Element construct_from_images(SpecPtr const& spec, std::vector<Leaf> const& images) {
  if (images.size() != static_cast<std::size_t>(spec->roots())) {
    throw InvalidArgument("expected one image per root");
  }
  Basis r = Basis::from_leaves(spec, images);
  Basis x = Basis::root(spec);
  std::vector<std::size_t> perm(images.size());
  for (std::size_t j = 0; j < images.size(); ++j) {
    perm[j] = *r.index_of(images[j]);
  }
  return Element(std::move(x), std::move(r), std::move(perm));
}

std::optional<Representation> represent_on(Element const& g, Basis const& y) {
  if (!same_spec(g.domain(), y)) {
    throw SpecMismatch();
  }
  auto const& spec = g.spec();
  Basis m = lub(g.domain(), y);
  std::vector<std::vector<Leaf>> groups(y.size());
  for (auto const& l : m.leaves()) {
    groups[*y.ancestor_of(l)].push_back(l);
  }
  std::vector<Leaf> targets;
  targets.reserve(y.size());
  for (std::size_t k = 0; k < y.size(); ++k) {
    std::vector<Leaf> images;
    for (auto const& l : groups[k]) {
      images.push_back(*apply(g, l));
    }
    auto box = bounding_leaf(spec, images);
    if (!box) {
      return std::nullopt;
    }
    for (std::size_t t = 0; t < groups[k].size(); ++t) {
      if (transport(y[k], *box, groups[k][t]) != images[t]) {
        return std::nullopt;
      }
    }
    targets.push_back(std::move(*box));
  }
  std::vector<Leaf> sorted = targets;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    return std::nullopt;
  }
  if (!is_admissible(spec, sorted).admissible) {
    return std::nullopt;
  }
  Basis range = Basis::trusted(g.spec_ptr(), std::move(sorted));
  std::vector<std::size_t> perm(y.size());
  for (std::size_t k = 0; k < y.size(); ++k) {
    perm[k] = *range.index_of(targets[k]);
  }
  return Representation{std::move(range), std::move(perm)};
}

Element random_element(SpecPtr const& spec, std::size_t size_bound, std::uint64_t seed) {
  auto r = static_cast<std::size_t>(spec->roots());
  if (size_bound < r) {
    throw InvalidArgument("size bound is below the number of roots");
  }
  std::mt19937_64 rng(seed);
  auto below = [&rng](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

  // A color multiset shared by domain and range keeps the sizes equal.
  std::vector<int> colors;
  std::size_t size = r;
  std::size_t target = r + below(size_bound - r + 1);
  for (int attempts = 0; attempts < 64 && size < target; ++attempts) {
    int c = static_cast<int>(below(static_cast<std::size_t>(spec->color_count())));
    auto grow = static_cast<std::size_t>(spec->arity(c) - 1);
    if (size + grow <= size_bound) {
      colors.push_back(c);
      size += grow;
    }
  }
  auto grow_basis = [&](std::vector<int> const& cs) {
    Basis b = Basis::root(spec);
    for (int c : cs) {
      b = expand(b, below(b.size()), c);
    }
    return b;
  };
  Basis dom = grow_basis(colors);
  std::vector<int> shuffled = colors;
  for (std::size_t i = shuffled.size(); i > 1; --i) {
    std::swap(shuffled[i - 1], shuffled[below(i)]);
  }
  Basis ran = grow_basis(shuffled);
  std::vector<std::size_t> perm(dom.size());
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = perm.size(); i > 1; --i) {
    std::swap(perm[i - 1], perm[below(i)]);
  }
  return reduce(Element(std::move(dom), std::move(ran), std::move(perm)));
}

std::optional<std::size_t> FiniteSubgroup::find(Element const& g) const {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (equals(elements[i], g)) {
      return i;
    }
  }
  return std::nullopt;
}

FiniteSubgroup close_subgroup(SpecPtr const& spec, std::vector<Element> const& gens,
                              std::size_t cap) {
  if (cap < 1) {
    throw InvalidArgument("cap must be at least 1");
  }
  FiniteSubgroup q;
  q.generators = gens;
  q.elements.push_back(Element::identity(spec));
  for (std::size_t i = 0; i < q.elements.size(); ++i) {
    for (auto const& g : gens) {
      Element p = compose(g, q.elements[i]);
      if (!q.find(p)) {
        if (q.elements.size() >= cap) {
          throw CapExceeded("subgroup closure exceeded cap of " + std::to_string(cap));
        }
        q.elements.push_back(std::move(p));
      }
    }
  }
  return q;
}

}  // namespace cantorv
