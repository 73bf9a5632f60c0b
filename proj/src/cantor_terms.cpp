#include "cantorv/cantor_terms.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <deque>
#include <limits>
#include <set>
#include <string>
#include <unordered_set>

#include <boost/multiprecision/cpp_int.hpp>

#include "cantorv/error.hpp"

namespace cantorv {

namespace {

using i128 = __int128;

constexpr std::int64_t kMaxDen = std::int64_t{1} << 60;

std::atomic<std::uint64_t> g_checked{0};
std::atomic<std::uint64_t> g_violations{0};

void audit(AlgebraSpec const& spec, std::size_t size) {
  g_checked.fetch_add(1, std::memory_order_relaxed);
  auto d = static_cast<std::size_t>(spec.d());
  auto r = static_cast<std::size_t>(spec.roots());
  if (size % d != r % d) {
    g_violations.fetch_add(1, std::memory_order_relaxed);
  }
}

void require_same_spec(Basis const& a, Basis const& b) {
  if (!same_spec(a, b)) {
    throw SpecMismatch();
  }
}

// Leaves of `b` grouped by root, each group in canonical order.
std::vector<std::vector<Leaf>> by_root(AlgebraSpec const& spec, std::vector<Leaf> const& leaves) {
  std::vector<std::vector<Leaf>> out(static_cast<std::size_t>(spec.roots()));
  for (auto const& l : leaves) {
    out[static_cast<std::size_t>(l.root)].push_back(l);
  }
  return out;
}

void append_tree_leaves(SplitTree const& t, std::vector<Leaf>& out) {
  if (t.color < 0) {
    out.push_back(t.cuboid);
    return;
  }
  for (auto const& c : t.children) {
    append_tree_leaves(c, out);
  }
}

}  // namespace

std::strong_ordering compare(Interval const& a, Interval const& b) {
  i128 lo_a = static_cast<i128>(a.index) * b.den;
  i128 lo_b = static_cast<i128>(b.index) * a.den;
  if (lo_a != lo_b) {
    return lo_a < lo_b ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  i128 hi_a = static_cast<i128>(a.index + 1) * b.den;
  i128 hi_b = static_cast<i128>(b.index + 1) * a.den;
  if (hi_a != hi_b) {
    return hi_a < hi_b ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

bool contains(Interval const& outer, Interval const& inner) {
  // outer.lo <= inner.lo and inner.hi <= outer.hi
  return static_cast<i128>(outer.index) * inner.den <= static_cast<i128>(inner.index) * outer.den &&
         static_cast<i128>(inner.index + 1) * outer.den <=
             static_cast<i128>(outer.index + 1) * inner.den;
}

bool overlaps(Interval const& a, Interval const& b) {
  // a.lo < b.hi and b.lo < a.hi
  return static_cast<i128>(a.index) * b.den < static_cast<i128>(b.index + 1) * a.den &&
         static_cast<i128>(b.index) * a.den < static_cast<i128>(a.index + 1) * b.den;
}

std::strong_ordering operator<=>(Leaf const& a, Leaf const& b) {
  if (a.root != b.root) {
    return a.root <=> b.root;
  }
  std::size_t n = std::min(a.coords.size(), b.coords.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto c = compare(a.coords[i], b.coords[i]);
    if (c != std::strong_ordering::equal) {
      return c;
    }
  }
  return a.coords.size() <=> b.coords.size();
}

std::size_t LeafHash::operator()(Leaf const& leaf) const noexcept {
  std::size_t h = std::hash<int>{}(leaf.root);
  auto mix = [&h](std::int64_t v) {
    h ^= std::hash<std::int64_t>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  for (auto const& iv : leaf.coords) {
    mix(iv.index);
    mix(iv.den);
  }
  return h;
}

Leaf root_leaf(AlgebraSpec const& spec, int root) {
  Leaf out{root, {}};
  out.coords.assign(static_cast<std::size_t>(spec.block_count()), Interval{0, 1});
  return out;
}

bool is_valid_leaf(AlgebraSpec const& spec, Leaf const& leaf) {
  if (leaf.root < 0 || leaf.root >= spec.roots()) {
    return false;
  }
  if (leaf.coords.size() != static_cast<std::size_t>(spec.block_count())) {
    return false;
  }
  for (int b = 0; b < spec.block_count(); ++b) {
    auto const& iv = leaf.coords[static_cast<std::size_t>(b)];
    if (iv.den < 1 || iv.index < 0 || iv.index >= iv.den) {
      return false;
    }
    if (!spec.exponents(b, iv.den)) {
      return false;
    }
  }
  return true;
}

std::vector<Leaf> split_leaf(AlgebraSpec const& spec, Leaf const& leaf, int color) {
  if (color < 0 || color >= spec.color_count()) {
    throw InvalidArgument("invalid color " + std::to_string(color));
  }
  auto const& info = spec.color(color);
  auto b = static_cast<std::size_t>(info.block);
  std::int64_t n = info.arity;
  Interval iv = leaf.coords.at(b);
  if (iv.den > kMaxDen / n) {
    throw CapExceeded("interval denominator exceeds 2^60");
  }
  std::vector<Leaf> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t j = 0; j < n; ++j) {
    Leaf child = leaf;
    child.coords[b] = Interval{iv.index * n + j, iv.den * n};
    out.push_back(std::move(child));
  }
  return out;
}

std::optional<Leaf> parent_along(AlgebraSpec const& spec, Leaf const& leaf, int color) {
  auto const& info = spec.color(color);
  auto b = static_cast<std::size_t>(info.block);
  Interval iv = leaf.coords.at(b);
  auto exps = spec.exponents(info.block, iv.den);
  if (!exps || (*exps)[static_cast<std::size_t>(info.position)] < 1) {
    return std::nullopt;
  }
  Leaf parent = leaf;
  parent.coords[b] = Interval{iv.index / info.arity, iv.den / info.arity};
  return parent;
}

bool contains(Leaf const& outer, Leaf const& inner) {
  if (outer.root != inner.root || outer.coords.size() != inner.coords.size()) {
    return false;
  }
  for (std::size_t i = 0; i < outer.coords.size(); ++i) {
    if (!contains(outer.coords[i], inner.coords[i])) {
      return false;
    }
  }
  return true;
}

bool overlaps(Leaf const& a, Leaf const& b) {
  if (a.root != b.root || a.coords.size() != b.coords.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    if (!overlaps(a.coords[i], b.coords[i])) {
      return false;
    }
  }
  return true;
}

std::optional<std::vector<int>> relative_exponents(AlgebraSpec const& spec, Leaf const& ancestor,
                                                   Leaf const& leaf) {
  if (!contains(ancestor, leaf)) {
    return std::nullopt;
  }
  std::vector<int> out(static_cast<std::size_t>(spec.color_count()), 0);
  for (int b = 0; b < spec.block_count(); ++b) {
    auto ea = spec.exponents(b, ancestor.coords[static_cast<std::size_t>(b)].den);
    auto el = spec.exponents(b, leaf.coords[static_cast<std::size_t>(b)].den);
    if (!ea || !el) {
      return std::nullopt;
    }
    auto const& colors = spec.block_colors(b);
    for (std::size_t k = 0; k < colors.size(); ++k) {
      int diff = (*el)[k] - (*ea)[k];
      if (diff < 0) {
        return std::nullopt;
      }
      out[static_cast<std::size_t>(colors[k])] = diff;
    }
  }
  return out;
}

bool is_descendant(AlgebraSpec const& spec, Leaf const& ancestor, Leaf const& leaf) {
  return relative_exponents(spec, ancestor, leaf).has_value();
}

Leaf transport(Leaf const& from, Leaf const& to, Leaf const& leaf) {
  Leaf out;
  out.root = to.root;
  out.coords.resize(leaf.coords.size());
  for (std::size_t b = 0; b < leaf.coords.size(); ++b) {
    std::int64_t q = leaf.coords[b].den / from.coords[b].den;
    std::int64_t offset = leaf.coords[b].index - from.coords[b].index * q;
    if (to.coords[b].den > kMaxDen / q) {
      throw CapExceeded("interval denominator exceeds 2^60");
    }
    out.coords[b] = Interval{to.coords[b].index * q + offset, to.coords[b].den * q};
  }
  return out;
}

ModDAudit mod_d_audit() {
  return ModDAudit{g_checked.load(), g_violations.load()};
}

void reset_mod_d_audit() {
  g_checked.store(0);
  g_violations.store(0);
}

// ---------------------------------------------------------------------------
// Basis

Basis::Basis(SpecPtr spec, std::vector<Leaf> leaves)
    : spec_(std::move(spec)), leaves_(std::move(leaves)) {
  std::sort(leaves_.begin(), leaves_.end());
  audit(*spec_, leaves_.size());
}

Basis Basis::root(SpecPtr spec) {
  std::vector<Leaf> leaves;
  for (int r = 0; r < spec->roots(); ++r) {
    leaves.push_back(root_leaf(*spec, r));
  }
  return Basis(std::move(spec), std::move(leaves));
}

Basis Basis::from_leaves(SpecPtr spec, std::vector<Leaf> leaves) {
  auto report = is_admissible(*spec, leaves);
  if (!report.admissible) {
    throw NotAdmissible("leaf set is not reachable from X by expansions");
  }
  return Basis(std::move(spec), std::move(leaves));
}

Basis Basis::trusted(SpecPtr spec, std::vector<Leaf> leaves) {
  return Basis(std::move(spec), std::move(leaves));
}

std::optional<std::size_t> Basis::index_of(Leaf const& leaf) const {
  auto it = std::lower_bound(leaves_.begin(), leaves_.end(), leaf);
  if (it == leaves_.end() || *it != leaf) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - leaves_.begin());
}

std::optional<std::size_t> Basis::ancestor_of(Leaf const& leaf) const {
  // Leaves are disjoint, so the only candidate is the last leaf whose lower
  // corner does not exceed the query's in canonical order; a linear scan is
  // simpler and cheap at the sizes used here.
  for (std::size_t i = 0; i < leaves_.size(); ++i) {
    if (contains(leaves_[i], leaf)) {
      if (is_descendant(*spec_, leaves_[i], leaf)) {
        return i;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::vector<SplitTree> Basis::certificate() const {
  detail::PatternOracle oracle(*spec_);
  std::vector<SplitTree> out;
  for (auto const& cells : by_root(*spec_, leaves_)) {
    out.push_back(oracle.tree(root_leaf(*spec_, cells.front().root), cells));
  }
  return out;
}

bool operator==(Basis const& a, Basis const& b) {
  return same_spec(a, b) && a.leaves_ == b.leaves_;
}

bool same_spec(Basis const& a, Basis const& b) {
  return a.spec_ptr() == b.spec_ptr() || a.spec() == b.spec();
}

// ---------------------------------------------------------------------------
// Scripts, expand, contract

Basis expand(Basis const& b, std::size_t leaf_index, int color) {
  if (leaf_index >= b.size()) {
    throw InvalidArgument("leaf index " + std::to_string(leaf_index) + " out of range");
  }
  if (color < 0 || color >= b.spec().color_count()) {
    throw InvalidArgument("invalid color " + std::to_string(color));
  }
  auto children = split_leaf(b.spec(), b[leaf_index], color);
  std::vector<Leaf> leaves;
  leaves.reserve(b.size() + children.size() - 1);
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i != leaf_index) {
      leaves.push_back(b[i]);
    }
  }
  for (auto& c : children) {
    leaves.push_back(std::move(c));
  }
  return Basis::trusted(b.spec_ptr(), std::move(leaves));
}

Basis expand(Basis const& b, Leaf const& leaf, int color) {
  auto idx = b.index_of(leaf);
  if (!idx) {
    throw InvalidArgument("leaf is not in the basis");
  }
  return expand(b, *idx, color);
}

Basis contract(Basis const& b, std::vector<Leaf> const& family, int color) {
  auto const& spec = b.spec();
  if (color < 0 || color >= spec.color_count()) {
    throw InvalidArgument("invalid color " + std::to_string(color));
  }
  if (family.empty()) {
    throw InvalidArgument("empty family");
  }
  auto parent = parent_along(spec, family.front(), color);
  if (!parent) {
    throw InvalidArgument("leaves are not a sibling family along color " + std::to_string(color));
  }
  auto children = split_leaf(spec, *parent, color);
  auto sorted = family;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != children) {
    throw InvalidArgument("leaves are not a sibling family along color " + std::to_string(color));
  }
  std::vector<Leaf> leaves;
  std::size_t found = 0;
  for (auto const& l : b.leaves()) {
    if (std::binary_search(children.begin(), children.end(), l)) {
      ++found;
    } else {
      leaves.push_back(l);
    }
  }
  if (found != children.size()) {
    throw InvalidArgument("sibling family is not contained in the basis");
  }
  leaves.push_back(*parent);
  if (!is_admissible(spec, leaves).admissible) {
    throw NotAdmissible("contracted leaf set is not reachable from X");
  }
  return Basis::trusted(b.spec_ptr(), std::move(leaves));
}

Basis replay(ExpansionScript const& script, Basis const& start) {
  Basis cur = start;
  for (auto const& step : script.steps) {
    cur = expand(cur, step.leaf, step.color);
  }
  return cur;
}

Basis replay(SpecPtr spec, ExpansionScript const& script) {
  return replay(script, Basis::root(std::move(spec)));
}

ExpansionScript script_of(Basis const& b) {
  ExpansionScript script;
  Basis cur = Basis::root(b.spec_ptr());
  std::vector<SplitTree const*> stack;
  auto trees = b.certificate();
  for (auto it = trees.rbegin(); it != trees.rend(); ++it) {
    stack.push_back(&*it);
  }
  while (!stack.empty()) {
    auto const* node = stack.back();
    stack.pop_back();
    if (node->color < 0) {
      continue;
    }
    auto idx = *cur.index_of(node->cuboid);
    script.steps.push_back({idx, node->color});
    cur = expand(cur, idx, node->color);
    for (auto it = node->children.rbegin(); it != node->children.rend(); ++it) {
      stack.push_back(&*it);
    }
  }
  return script;
}

// ---------------------------------------------------------------------------
// Admissibility

void check_partition(AlgebraSpec const& spec, std::span<Leaf const> leaves) {
  using boost::multiprecision::cpp_rational;
  std::vector<cpp_rational> volume(static_cast<std::size_t>(spec.roots()));
  for (auto const& l : leaves) {
    if (!is_valid_leaf(spec, l)) {
      throw InvalidArgument("malformed leaf");
    }
    cpp_rational v = 1;
    for (auto const& iv : l.coords) {
      v /= iv.den;
    }
    volume[static_cast<std::size_t>(l.root)] += v;
  }
  for (std::size_t r = 0; r < volume.size(); ++r) {
    if (volume[r] != 1) {
      throw InvalidArgument("leaves do not partition root cuboid " + std::to_string(r));
    }
  }
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    for (std::size_t j = i + 1; j < leaves.size(); ++j) {
      if (overlaps(leaves[i], leaves[j])) {
        throw InvalidArgument("leaves overlap");
      }
    }
  }
}

AdmissibilityReport is_admissible(AlgebraSpec const& spec, std::vector<Leaf> leaves) {
  check_partition(spec, leaves);
  std::sort(leaves.begin(), leaves.end());
  detail::PatternOracle oracle(spec);
  AdmissibilityReport report;
  for (auto const& cells : by_root(spec, leaves)) {
    Leaf c = root_leaf(spec, cells.front().root);
    if (!oracle.admissible(c, cells)) {
      report.certificate.clear();
      return report;
    }
    report.certificate.push_back(oracle.tree(c, cells));
  }
  report.admissible = true;
  return report;
}

namespace detail {

std::size_t PatternOracle::KeyHash::operator()(std::vector<Leaf> const& key) const noexcept {
  std::size_t h = key.size();
  LeafHash lh;
  for (auto const& l : key) {
    h ^= lh(l) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::vector<Leaf> cells_inside(Leaf const& cuboid, std::span<Leaf const> cells) {
  std::vector<Leaf> out;
  for (auto const& c : cells) {
    if (contains(cuboid, c)) {
      out.push_back(c);
    }
  }
  return out;
}

bool PatternOracle::fits(Leaf const& cuboid, std::span<Leaf const> cells, int color) const {
  auto const& info = spec_.color(color);
  auto b = static_cast<std::size_t>(info.block);
  Interval iv = cuboid.coords[b];
  if (iv.den > kMaxDen / info.arity) {
    return false;
  }
  std::int64_t den = iv.den * info.arity;
  for (auto const& cell : cells) {
    auto const& c = cell.coords[b];
    // the only part that can hold c is the one holding its lower endpoint
    auto k = static_cast<std::int64_t>(static_cast<i128>(c.index) * den / c.den);
    if (!contains(Interval{k, den}, c)) {
      return false;
    }
  }
  return true;
}

std::optional<std::vector<std::vector<Leaf>>> PatternOracle::split(Leaf const& cuboid,
                                                                   std::span<Leaf const> cells,
                                                                   int color) {
  if (!fits(cuboid, cells, color)) {
    return std::nullopt;
  }
  auto parts = split_leaf(spec_, cuboid, color);
  std::vector<std::vector<Leaf>> groups(parts.size());
  for (auto& g : groups) {
    g.reserve(cells.size());
  }
  for (auto const& cell : cells) {
    for (std::size_t k = 0; k < parts.size(); ++k) {
      if (contains(parts[k], cell)) {
        groups[k].push_back(cell);
        break;
      }
    }
  }
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (groups[k].empty() || !admissible(parts[k], groups[k])) {
      return std::nullopt;
    }
  }
  return groups;
}

int PatternOracle::first_color(Leaf const& cuboid, std::span<Leaf const> cells) {
  if (cells.size() == 1) {
    return cells.front() == cuboid ? -1 : -2;
  }
  std::vector<Leaf> key;
  key.reserve(cells.size() + 1);
  key.push_back(cuboid);
  key.insert(key.end(), cells.begin(), cells.end());
  if (auto it = memo_.find(key); it != memo_.end()) {
    return it->second;
  }
  int result = -2;
  for (int c = 0; c < spec_.color_count(); ++c) {
    if (split(cuboid, cells, c)) {
      result = c;
      break;
    }
  }
  memo_.emplace(std::move(key), result);
  return result;
}

bool PatternOracle::admissible(Leaf const& cuboid, std::span<Leaf const> cells) {
  return first_color(cuboid, cells) != -2;
}

SplitTree PatternOracle::tree(Leaf const& cuboid, std::span<Leaf const> cells) {
  int c = first_color(cuboid, cells);
  if (c == -2) {
    throw NotAdmissible("pattern is not admissible");
  }
  SplitTree t{cuboid, c, {}};
  if (c < 0) {
    return t;
  }
  auto groups = *split(cuboid, cells, c);
  auto parts = split_leaf(spec_, cuboid, c);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    t.children.push_back(tree(parts[k], groups[k]));
  }
  return t;
}

std::vector<Leaf> PatternOracle::refine_to_split(Leaf const& cuboid, std::vector<Leaf> const& p,
                                                 int color) {
  if (split(cuboid, p, color)) {
    return p;
  }
  if (p.size() == 1) {
    return split_leaf(spec_, cuboid, color);
  }
  int i = first_color(cuboid, p);
  auto groups = *split(cuboid, p, i);
  auto parts = split_leaf(spec_, cuboid, i);
  std::vector<Leaf> out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    auto sub = refine_to_split(parts[k], groups[k], color);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Leaf> PatternOracle::lub(Leaf const& cuboid, std::vector<Leaf> const& p,
                                     std::vector<Leaf> const& q) {
  if (p.size() == 1) {
    return q;
  }
  if (q.size() == 1) {
    return p;
  }
  for (int c = 0; c < spec_.color_count(); ++c) {
    if (!fits(cuboid, p, c) || !fits(cuboid, q, c)) {
      continue;
    }
    auto sp = split(cuboid, p, c);
    if (!sp) {
      continue;
    }
    auto sq = split(cuboid, q, c);
    if (!sq) {
      continue;
    }
    auto parts = split_leaf(spec_, cuboid, c);
    std::vector<Leaf> out;
    for (std::size_t k = 0; k < parts.size(); ++k) {
      auto sub = lub(parts[k], (*sp)[k], (*sq)[k]);
      out.insert(out.end(), sub.begin(), sub.end());
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  int j = first_color(cuboid, q);
  return lub(cuboid, refine_to_split(cuboid, p, j), q);
}

std::vector<Leaf> PatternOracle::glb(Leaf const& cuboid, std::vector<Leaf> const& p,
                                     std::vector<Leaf> const& q) {
  if (p.size() == 1 || q.size() == 1) {
    return {cuboid};
  }
  for (int c = 0; c < spec_.color_count(); ++c) {
    if (!fits(cuboid, p, c) || !fits(cuboid, q, c)) {
      continue;
    }
    auto sp = split(cuboid, p, c);
    if (!sp) {
      continue;
    }
    auto sq = split(cuboid, q, c);
    if (!sq) {
      continue;
    }
    auto parts = split_leaf(spec_, cuboid, c);
    std::vector<Leaf> out;
    for (std::size_t k = 0; k < parts.size(); ++k) {
      auto sub = glb(parts[k], (*sp)[k], (*sq)[k]);
      out.insert(out.end(), sub.begin(), sub.end());
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  return {cuboid};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Order, lub, glb

namespace {

bool leq_with(detail::PatternOracle& oracle, Basis const& a, Basis const& b) {
  std::vector<std::vector<Leaf>> groups(a.size());
  for (auto const& l : b.leaves()) {
    bool placed = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (contains(a[i], l)) {
        groups[i].push_back(l);
        placed = true;
        break;
      }
    }
    if (!placed) {
      return false;
    }
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (groups[i].empty() || !oracle.admissible(a[i], groups[i])) {
      return false;
    }
  }
  return true;
}

}  // namespace

bool leq(Basis const& a, Basis const& b) {
  require_same_spec(a, b);
  detail::PatternOracle oracle(a.spec());
  return leq_with(oracle, a, b);
}

Basis lub(Basis const& a, Basis const& b) {
  require_same_spec(a, b);
  if (a == b) {
    return a;
  }
  auto const& spec = a.spec();
  detail::PatternOracle oracle(spec);
  auto ga = by_root(spec, a.leaves());
  auto gb = by_root(spec, b.leaves());
  std::vector<Leaf> leaves;
  for (int r = 0; r < spec.roots(); ++r) {
    auto sub = oracle.lub(root_leaf(spec, r), ga[static_cast<std::size_t>(r)],
                          gb[static_cast<std::size_t>(r)]);
    leaves.insert(leaves.end(), sub.begin(), sub.end());
  }
  auto out = Basis::trusted(a.spec_ptr(), std::move(leaves));
  if (!leq_with(oracle, a, out) || !leq_with(oracle, b, out)) {
    throw NotBounded("lub construction did not produce a common upper bound");
  }
  return out;
}

Basis glb(Basis const& a, Basis const& b) {
  require_same_spec(a, b);
  if (a == b) {
    return a;
  }
  auto const& spec = a.spec();
  detail::PatternOracle oracle(spec);
  auto ga = by_root(spec, a.leaves());
  auto gb = by_root(spec, b.leaves());
  std::vector<Leaf> leaves;
  for (int r = 0; r < spec.roots(); ++r) {
    auto sub = oracle.glb(root_leaf(spec, r), ga[static_cast<std::size_t>(r)],
                          gb[static_cast<std::size_t>(r)]);
    leaves.insert(leaves.end(), sub.begin(), sub.end());
  }
  return Basis::trusted(a.spec_ptr(), std::move(leaves));
}

namespace {

template <class Pred>
bool path_exponents_all(Basis const& a, Basis const& b, Pred pred) {
  if (!leq(a, b)) {
    throw NotComparable("first basis is not below the second");
  }
  for (auto const& l : b.leaves()) {
    auto i = a.ancestor_of(l);
    auto e = relative_exponents(a.spec(), a[*i], l);
    if (!pred(*e)) {
      return false;
    }
  }
  return true;
}

}  // namespace

bool elementary_leq(Basis const& a, Basis const& b) {
  return path_exponents_all(a, b, [](std::vector<int> const& e) {
    return std::all_of(e.begin(), e.end(), [](int x) { return x <= 1; });
  });
}

bool very_elementary_leq(Basis const& a, Basis const& b) {
  return path_exponents_all(a, b, [](std::vector<int> const& e) {
    int s = 0;
    for (int x : e) {
      s += x;
    }
    return s <= 1;
  });
}

Basis max_elementary(Basis const& a) {
  auto const& spec = a.spec();
  std::vector<Leaf> cur = a.leaves();
  for (int c = 0; c < spec.color_count(); ++c) {
    std::vector<Leaf> next;
    next.reserve(cur.size() * static_cast<std::size_t>(spec.arity(c)));
    for (auto const& l : cur) {
      auto kids = split_leaf(spec, l, c);
      next.insert(next.end(), kids.begin(), kids.end());
    }
    cur = std::move(next);
  }
  return Basis::trusted(a.spec_ptr(), std::move(cur));
}

Basis elementary_core(Basis const& a, Basis const& b) {
  if (a == b || !leq(a, b)) {
    throw NotComparable("elementary core requires a < b");
  }
  return glb(max_elementary(a), b);
}

std::size_t default_enumeration_cap() {
  if (char const* env = std::getenv("CANTORV_CAP")) {
    try {
      long long v = std::stoll(env);
      if (v > 0) {
        return static_cast<std::size_t>(v);
      }
    } catch (std::exception const&) {
    }
  }
  return 200000;
}

std::vector<Basis> enumerate_bases(SpecPtr const& spec, std::size_t max_size, std::size_t cap) {
  if (max_size < static_cast<std::size_t>(spec->roots())) {
    throw InvalidArgument("maximum size is below the number of roots");
  }
  struct VecHash {
    std::size_t operator()(std::vector<Leaf> const& v) const noexcept {
      std::size_t h = v.size();
      LeafHash lh;
      for (auto const& l : v) {
        h ^= lh(l) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      }
      return h;
    }
  };
  std::unordered_set<std::vector<Leaf>, VecHash> seen;
  std::vector<Basis> out;
  std::deque<Basis> queue;
  Basis x = Basis::root(spec);
  seen.insert(x.leaves());
  queue.push_back(x);
  while (!queue.empty()) {
    Basis cur = std::move(queue.front());
    queue.pop_front();
    for (std::size_t i = 0; i < cur.size(); ++i) {
      for (int c = 0; c < spec->color_count(); ++c) {
        if (cur.size() + static_cast<std::size_t>(spec->arity(c)) - 1 > max_size) {
          continue;
        }
        Basis next = expand(cur, i, c);
        if (seen.insert(next.leaves()).second) {
          if (seen.size() > cap) {
            throw CapExceeded("basis enumeration exceeded cap of " + std::to_string(cap));
          }
          queue.push_back(std::move(next));
        }
      }
    }
    out.push_back(std::move(cur));
  }
  std::sort(out.begin(), out.end(), [](Basis const& a, Basis const& b) {
    if (a.size() != b.size()) {
      return a.size() < b.size();
    }
    return a.leaves() < b.leaves();
  });
  return out;
}

Basis path_basis(SpecPtr const& spec, Leaf const& leaf) {
  if (!is_valid_leaf(*spec, leaf)) {
    throw InvalidArgument("malformed leaf");
  }
  Basis cur = Basis::root(spec);
  Leaf node = root_leaf(*spec, leaf.root);
  for (int b = 0; b < spec->block_count(); ++b) {
    auto exps = *spec->exponents(b, leaf.coords[static_cast<std::size_t>(b)].den);
    auto const& colors = spec->block_colors(b);
    for (std::size_t k = 0; k < colors.size(); ++k) {
      for (int e = 0; e < exps[k]; ++e) {
        auto kids = split_leaf(*spec, node, colors[k]);
        cur = expand(cur, node, colors[k]);
        auto it = std::find_if(kids.begin(), kids.end(),
                               [&](Leaf const& kid) { return contains(kid, leaf); });
        node = *it;
      }
    }
  }
  return cur;
}

}  // namespace cantorv
