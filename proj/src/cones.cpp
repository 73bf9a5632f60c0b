#include "cantorv/cones.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "cantorv/error.hpp"

namespace cantorv {

namespace {

// Greedy contraction of complete sibling families, scanning leaves in
// canonical order and colors in index order, restarting after every merge.
std::vector<Leaf> contract_greedily(AlgebraSpec const& spec, std::vector<Leaf> leaves) {
  std::sort(leaves.begin(), leaves.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < leaves.size() && !changed; ++i) {
      for (int c = 0; c < spec.color_count() && !changed; ++c) {
        auto parent = parent_along(spec, leaves[i], c);
        if (!parent) {
          continue;
        }
        auto kids = split_leaf(spec, *parent, c);
        if (kids.front() != leaves[i]) {
          continue;
        }
        bool all = std::all_of(kids.begin(), kids.end(), [&](Leaf const& k) {
          return std::binary_search(leaves.begin(), leaves.end(), k);
        });
        if (!all) {
          continue;
        }
        std::vector<Leaf> next;
        for (auto const& l : leaves) {
          if (!std::binary_search(kids.begin(), kids.end(), l)) {
            next.push_back(l);
          }
        }
        next.push_back(*parent);
        std::sort(next.begin(), next.end());
        leaves = std::move(next);
        changed = true;
      }
    }
  }
  return leaves;
}

bool in_support(std::vector<Leaf> const& support, Leaf const& l) {
  return std::any_of(support.begin(), support.end(),
                     [&](Leaf const& s) { return contains(s, l); });
}

void require_spec(Cone const& u, Cone const& v) {
  if (u.spec_ptr() != v.spec_ptr() && !(u.spec() == v.spec())) {
    throw SpecMismatch();
  }
}

std::vector<Leaf> all_support(ConeTuple const& t) {
  std::vector<Leaf> out;
  for (auto const& u : t) {
    out.insert(out.end(), u.support().begin(), u.support().end());
  }
  return out;
}

// Common witness basis of a tuple and, per cone, its leaf indices.
struct TupleOnBasis {
  Basis w;
  std::vector<std::vector<std::size_t>> parts;
};

TupleOnBasis on_common_basis(ConeTuple const& t) {
  if (t.empty()) {
    throw InvalidArgument("empty tuple");
  }
  for (auto const& u : t) {
    require_spec(t.front(), u);
  }
  Basis w = witness_basis(t.front().spec_ptr(), all_support(t));
  std::vector<std::vector<std::size_t>> parts;
  for (auto const& u : t) {
    parts.push_back(cone_subset(u, w));
  }
  return {std::move(w), std::move(parts)};
}

bool covering_on(TupleOnBasis const& tb) {
  std::vector<char> hit(tb.w.size(), 0);
  for (auto const& p : tb.parts) {
    for (auto i : p) {
      hit[i] = 1;
    }
  }
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

bool disjoint_on(TupleOnBasis const& tb) {
  std::vector<char> hit(tb.w.size(), 0);
  for (auto const& p : tb.parts) {
    for (auto i : p) {
      if (hit[i]) {
        return false;
      }
      hit[i] = 1;
    }
  }
  return true;
}

TupleOnBasis require_partition(ConeTuple const& t) {
  auto tb = on_common_basis(t);
  if (!covering_on(tb) || !disjoint_on(tb)) {
    throw InvalidArgument("tuple is not covering and disjoint");
  }
  return tb;
}

// Expansion counts per color adding exactly `amount` leaves, if possible.
std::optional<std::vector<int>> decompose(AlgebraSpec const& spec, std::size_t amount) {
  std::vector<int> last(amount + 1, -2);
  last[0] = -1;
  for (std::size_t v = 1; v <= amount; ++v) {
    for (int c = 0; c < spec.color_count(); ++c) {
      auto step = static_cast<std::size_t>(spec.arity(c) - 1);
      if (step <= v && last[v - step] != -2) {
        last[v] = c;
        break;
      }
    }
  }
  if (last[amount] == -2) {
    return std::nullopt;
  }
  std::vector<int> counts(static_cast<std::size_t>(spec.color_count()), 0);
  for (std::size_t v = amount; v > 0;) {
    int c = last[v];
    ++counts[static_cast<std::size_t>(c)];
    v -= static_cast<std::size_t>(spec.arity(c) - 1);
  }
  return counts;
}

// Expands the first leaf of `part` (inside basis w) once per requested color.
void pad(Basis& w, std::vector<Leaf>& part, std::vector<int> const& counts) {
  for (std::size_t c = 0; c < counts.size(); ++c) {
    for (int k = 0; k < counts[c]; ++k) {
      std::sort(part.begin(), part.end());
      Leaf l = part.front();
      auto kids = split_leaf(w.spec(), l, static_cast<int>(c));
      w = expand(w, l, static_cast<int>(c));
      part.erase(part.begin());
      part.insert(part.end(), kids.begin(), kids.end());
    }
  }
  std::sort(part.begin(), part.end());
}

std::vector<Leaf> leaves_at(Basis const& w, std::vector<std::size_t> const& idx) {
  std::vector<Leaf> out;
  for (auto i : idx) {
    out.push_back(w[i]);
  }
  return out;
}

}  // namespace

Cone::Cone(SpecPtr spec, std::vector<Leaf> support)
    : spec_(std::move(spec)), support_(std::move(support)) {}

Cone Cone::empty(SpecPtr spec) { return Cone(std::move(spec), {}); }

Cone Cone::full(SpecPtr spec) {
  Basis x = Basis::root(spec);
  return Cone(std::move(spec), x.leaves());
}

Cone Cone::from_leaves(SpecPtr spec, std::vector<Leaf> leaves) {
  for (auto const& l : leaves) {
    if (!is_valid_leaf(*spec, l)) {
      throw InvalidArgument("malformed leaf");
    }
  }
  if (leaves.empty()) {
    return empty(std::move(spec));
  }
  Basis w = witness_basis(spec, leaves);
  std::vector<Leaf> cells;
  for (auto const& l : w.leaves()) {
    if (in_support(leaves, l)) {
      cells.push_back(l);
    }
  }
  auto support = contract_greedily(*spec, std::move(cells));
  return Cone(std::move(spec), std::move(support));
}

Basis witness_basis(SpecPtr const& spec, std::vector<Leaf> const& leaves) {
  Basis w = Basis::root(spec);
  std::vector<Leaf> sorted = leaves;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (auto const& l : sorted) {
    if (!w.index_of(l)) {
      w = lub(w, path_basis(spec, l));
    }
  }
  return w;
}

Basis witness_basis(Cone const& u) { return witness_basis(u.spec_ptr(), u.support()); }

std::vector<std::size_t> cone_subset(Cone const& u, Basis const& b) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (in_support(u.support(), b[i])) {
      out.push_back(i);
    }
  }
  return out;
}

bool cone_equals(Cone const& u, Cone const& v) {
  require_spec(u, v);
  if (u.support() == v.support()) {
    return true;
  }
  if (u.is_empty() || v.is_empty()) {
    return false;
  }
  auto tb = on_common_basis({u, v});
  return tb.parts[0] == tb.parts[1];
}

int cone_norm(Cone const& u) {
  if (u.is_empty()) {
    return 0;
  }
  auto n = cone_subset(u, witness_basis(u)).size();
  int d = u.spec().d();
  int t = static_cast<int>(n % static_cast<std::size_t>(d));
  return t == 0 ? d : t;
}

bool cone_disjoint(Cone const& u, Cone const& v) {
  require_spec(u, v);
  if (u.is_empty() || v.is_empty()) {
    return true;
  }
  return disjoint_on(on_common_basis({u, v}));
}

Cone act(Element const& g, Cone const& u) {
  if (g.spec_ptr() != u.spec_ptr() && !(g.spec() == u.spec())) {
    throw SpecMismatch();
  }
  if (u.is_empty()) {
    return u;
  }
  Basis m = lub(witness_basis(u), g.domain());
  std::vector<Leaf> images;
  for (auto i : cone_subset(u, m)) {
    images.push_back(*apply(g, m[i]));
  }
  return Cone::from_leaves(u.spec_ptr(), std::move(images));
}

Cone cone_intersection(Cone const& u, Cone const& v) {
  require_spec(u, v);
  if (u.is_empty() || v.is_empty()) {
    return Cone::empty(u.spec_ptr());
  }
  auto tb = on_common_basis({u, v});
  std::vector<std::size_t> both;
  std::set_intersection(tb.parts[0].begin(), tb.parts[0].end(), tb.parts[1].begin(),
                        tb.parts[1].end(), std::back_inserter(both));
  return Cone::from_leaves(u.spec_ptr(), leaves_at(tb.w, both));
}

Cone cone_union(Cone const& u, Cone const& v) {
  require_spec(u, v);
  std::vector<Leaf> all = u.support();
  all.insert(all.end(), v.support().begin(), v.support().end());
  return Cone::from_leaves(u.spec_ptr(), std::move(all));
}

bool is_covering(ConeTuple const& t) { return covering_on(on_common_basis(t)); }

bool is_disjoint(ConeTuple const& t) { return disjoint_on(on_common_basis(t)); }

ConeTuple act(Element const& g, ConeTuple const& t) {
  ConeTuple out;
  out.reserve(t.size());
  for (auto const& u : t) {
    out.push_back(act(g, u));
  }
  return out;
}

bool tuple_equals(ConeTuple const& a, ConeTuple const& b) {
  if (a.size() != b.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!cone_equals(a[i], b[i])) {
      return false;
    }
  }
  return true;
}

std::vector<int> tuple_classify(ConeTuple const& t) {
  require_partition(t);
  std::vector<int> out;
  for (auto const& u : t) {
    out.push_back(cone_norm(u));
  }
  return out;
}

std::optional<Element> tuple_witness(ConeTuple const& t1, ConeTuple const& t2) {
  if (t1.size() != t2.size()) {
    return std::nullopt;
  }
  auto tb1 = require_partition(t1);
  auto tb2 = require_partition(t2);
  require_spec(t1.front(), t2.front());
  if (tuple_classify(t1) != tuple_classify(t2)) {
    return std::nullopt;
  }
  auto const& spec = t1.front().spec();
  std::size_t max_step = 1;
  for (int c = 0; c < spec.color_count(); ++c) {
    max_step = std::max(max_step, static_cast<std::size_t>(spec.arity(c) - 1));
  }
  Basis w1 = tb1.w;
  Basis w2 = tb2.w;
  std::vector<std::vector<Leaf>> p1;
  std::vector<std::vector<Leaf>> p2;
  for (std::size_t i = 0; i < t1.size(); ++i) {
    p1.push_back(leaves_at(tb1.w, tb1.parts[i]));
    p2.push_back(leaves_at(tb2.w, tb2.parts[i]));
  }
  for (std::size_t i = 0; i < t1.size(); ++i) {
    std::size_t a = p1[i].size();
    std::size_t b = p2[i].size();
    if (a == 0 && b == 0) {
      continue;
    }
    // Both sides grow by sums of (n_c - 1); equal norms make a common total
    // reachable within a bounded window above max(a, b).
    std::size_t lo = std::max(a, b);
    std::size_t hi = lo + 4 * max_step * max_step + 4;
    bool done = false;
    for (std::size_t target = lo; target <= hi && !done; ++target) {
      auto ca = decompose(spec, target - a);
      auto cb = decompose(spec, target - b);
      if (ca && cb) {
        pad(w1, p1[i], *ca);
        pad(w2, p2[i], *cb);
        done = true;
      }
    }
    if (!done) {
      return std::nullopt;
    }
  }
  std::vector<Leaf> dom;
  std::vector<Leaf> ran;
  for (std::size_t i = 0; i < t1.size(); ++i) {
    dom.insert(dom.end(), p1[i].begin(), p1[i].end());
    ran.insert(ran.end(), p2[i].begin(), p2[i].end());
  }
  Element g = reduce(element_from_pairs(t1.front().spec_ptr(), dom, ran));
  if (!tuple_equals(act(g, t1), t2)) {
    throw Error("tuple witness failed its own verification");
  }
  return g;
}

std::string StabilizerShape::render() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    os << (i ? " x " : "");
    if (sizes[i] == 0) {
      os << "1";
    } else {
      os << "V_" << sizes[i];
    }
  }
  return os.str();
}

StabilizerShape tuple_stabilizer_shape(ConeTuple const& t) {
  auto tb = require_partition(t);
  StabilizerShape s;
  for (auto const& p : tb.parts) {
    s.sizes.push_back(p.size());
  }
  return s;
}

Element stabilizer_sample(ConeTuple const& t, std::size_t extra_expansions, std::uint64_t seed) {
  auto tb = require_partition(t);
  auto const& spec_ptr = t.front().spec_ptr();
  auto const& spec = *spec_ptr;
  std::mt19937_64 rng(seed);
  auto below = [&rng](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

  Basis w1 = tb.w;
  Basis w2 = tb.w;
  std::vector<Leaf> dom;
  std::vector<Leaf> ran;
  for (auto const& idx : tb.parts) {
    if (idx.empty()) {
      continue;
    }
    auto grow = [&](Basis& w, std::vector<Leaf> part, std::vector<int> const& colors) {
      for (int c : colors) {
        std::size_t k = below(part.size());
        Leaf l = part[k];
        auto kids = split_leaf(spec, l, c);
        w = expand(w, l, c);
        part.erase(part.begin() + static_cast<std::ptrdiff_t>(k));
        part.insert(part.end(), kids.begin(), kids.end());
      }
      std::sort(part.begin(), part.end());
      return part;
    };
    std::vector<int> colors;
    std::size_t n = below(extra_expansions + 1);
    for (std::size_t k = 0; k < n; ++k) {
      colors.push_back(static_cast<int>(below(static_cast<std::size_t>(spec.color_count()))));
    }
    auto a = grow(w1, leaves_at(tb.w, idx), colors);
    for (std::size_t k = colors.size(); k > 1; --k) {
      std::swap(colors[k - 1], colors[below(k)]);
    }
    auto b = grow(w2, leaves_at(tb.w, idx), colors);
    for (std::size_t k = b.size(); k > 1; --k) {
      std::swap(b[k - 1], b[below(k)]);
    }
    dom.insert(dom.end(), a.begin(), a.end());
    ran.insert(ran.end(), b.begin(), b.end());
  }
  return reduce(element_from_pairs(spec_ptr, dom, ran));
}

std::vector<int> disjointify_subset(std::size_t index) {
  std::vector<int> out;
  std::size_t mask = index + 1;
  for (int k = 0; mask != 0; ++k, mask >>= 1U) {
    if (mask & 1U) {
      out.push_back(k);
    }
  }
  return out;
}

ConeTuple disjointify(ConeTuple const& t) {
  if (t.size() > 16) {
    throw CapExceeded("disjointify supports at most 16 cones");
  }
  auto tb = on_common_basis(t);
  if (!covering_on(tb)) {
    throw InvalidArgument("tuple is not covering");
  }
  std::vector<std::size_t> mask(tb.w.size(), 0);
  for (std::size_t k = 0; k < tb.parts.size(); ++k) {
    for (auto i : tb.parts[k]) {
      mask[i] |= std::size_t{1} << k;
    }
  }
  std::size_t n = (std::size_t{1} << t.size()) - 1;
  std::vector<std::vector<Leaf>> cells(n);
  for (std::size_t i = 0; i < tb.w.size(); ++i) {
    cells[mask[i] - 1].push_back(tb.w[i]);
  }
  ConeTuple out;
  out.reserve(n);
  for (auto& c : cells) {
    out.push_back(Cone::from_leaves(t.front().spec_ptr(), std::move(c)));
  }
  return out;
}

}  // namespace cantorv
