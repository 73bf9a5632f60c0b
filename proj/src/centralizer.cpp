#include "cantorv/centralizer.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "cantorv/error.hpp"

namespace cantorv {

namespace {

Perm identity_perm(std::size_t n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

// a after b.
Perm after(Perm const& a, Perm const& b) {
  Perm out(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) {
    out[k] = a[b[k]];
  }
  return out;
}

Perm inverse(Perm const& p) {
  Perm out(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    out[p[k]] = k;
  }
  return out;
}

std::string render_perm(Perm const& p) {
  std::string s = "[";
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k) {
      s += ',';
    }
    s += std::to_string(p[k]);
  }
  return s + "]";
}

SpecPtr spec_of(FiniteSubgroup const& q) {
  if (q.elements.empty()) {
    throw InvalidArgument("empty subgroup");
  }
  return q.elements.front().spec_ptr();
}

// Permutation of Y induced by each element of Q; nullopt if some element
// does not fix Y setwise.
std::optional<std::vector<Perm>> try_action(Basis const& y, std::vector<Element> const& els) {
  std::vector<Perm> out;
  out.reserve(els.size());
  for (auto const& g : els) {
    auto rep = represent_on(g, y);
    if (!rep || !(rep->range == y)) {
      return std::nullopt;
    }
    out.push_back(rep->perm);
  }
  return out;
}

std::vector<Perm> action_on(Basis const& y, std::vector<Element> const& els) {
  auto a = try_action(y, els);
  if (!a) {
    throw InvalidArgument("basis is not invariant under the subgroup");
  }
  return *a;
}

bool less_basis(Basis const& a, Basis const& b) {
  if (a.size() != b.size()) {
    return a.size() < b.size();
  }
  return a.leaves() < b.leaves();
}

// Q as an abstract group via its faithful action on Y.
struct GroupData {
  std::vector<Perm> action;
  std::vector<std::vector<std::size_t>> table;
  std::vector<std::size_t> inv;
  std::size_t id = 0;
};

GroupData group_data(std::vector<Perm> action) {
  GroupData g;
  std::map<Perm, std::size_t> index;
  for (std::size_t a = 0; a < action.size(); ++a) {
    if (!index.emplace(action[a], a).second) {
      throw InvalidArgument("subgroup lists an element twice");
    }
  }
  std::size_t n = action.size();
  g.table.assign(n, std::vector<std::size_t>(n));
  g.inv.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      auto it = index.find(after(action[a], action[b]));
      if (it == index.end()) {
        throw InvalidArgument("element list is not closed under composition");
      }
      g.table[a][b] = it->second;
    }
    g.inv[a] = index.at(inverse(action[a]));
  }
  g.id = index.at(identity_perm(action.front().size()));
  g.action = std::move(action);
  return g;
}

using Subgroup = std::vector<std::size_t>;  // sorted element indices

Subgroup conjugate_subgroup(GroupData const& g, Subgroup const& h, std::size_t a) {
  Subgroup out;
  out.reserve(h.size());
  for (auto x : h) {
    out.push_back(g.table[g.table[a][x]][g.inv[a]]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Subgroup canonical_class(GroupData const& g, Subgroup const& h) {
  Subgroup best = h;
  for (std::size_t a = 0; a < g.table.size(); ++a) {
    best = std::min(best, conjugate_subgroup(g, h, a));
  }
  return best;
}

Subgroup close(GroupData const& g, Subgroup gens) {
  std::set<std::size_t> s(gens.begin(), gens.end());
  s.insert(g.id);
  std::vector<std::size_t> items(s.begin(), s.end());
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      for (auto p : {g.table[items[i]][items[j]], g.table[items[j]][items[i]]}) {
        if (s.insert(p).second) {
          items.push_back(p);
        }
      }
    }
  }
  return Subgroup(s.begin(), s.end());
}

// Conjugacy classes of subgroups, as canonical representatives.
std::set<Subgroup> subgroup_classes(GroupData const& g) {
  std::set<Subgroup> seen{close(g, {})};
  std::deque<Subgroup> todo(seen.begin(), seen.end());
  while (!todo.empty()) {
    Subgroup h = todo.front();
    todo.pop_front();
    for (std::size_t a = 0; a < g.table.size(); ++a) {
      if (std::binary_search(h.begin(), h.end(), a)) {
        continue;
      }
      Subgroup gens = h;
      gens.push_back(a);
      Subgroup k = close(g, gens);
      if (seen.insert(k).second) {
        todo.push_back(std::move(k));
      }
    }
  }
  std::set<Subgroup> classes;
  for (auto const& h : seen) {
    classes.insert(canonical_class(g, h));
  }
  return classes;
}

constexpr std::size_t kSubgroupEnumerationCap = 64;

}  // namespace

Basis invariant_basis(FiniteSubgroup const& q, std::size_t max_iter) {
  SpecPtr spec = spec_of(q);
  Basis y = Basis::root(spec);
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    Basis next = y;
    for (auto const& g : q.elements) {
      Element e = expand_domain(g, lub(g.domain(), y));
      next = lub(next, e.range());
    }
    if (next == y && try_action(y, q.elements)) {
      return y;
    }
    y = std::move(next);
  }
  throw IterationCapExceeded("no invariant basis within " + std::to_string(max_iter) +
                             " rounds");
}

MinimizeResult minimize_invariant_basis(Basis const& y, FiniteSubgroup const& q,
                                        std::size_t state_cap) {
  auto const& spec = y.spec();
  action_on(y, q.elements);
  MinimizeResult res{y, true, 0};
  std::set<std::vector<Leaf>> seen{y.leaves()};
  std::deque<Basis> todo{y};
  while (!todo.empty()) {
    Basis cur = std::move(todo.front());
    todo.pop_front();
    ++res.states;
    if (less_basis(cur, res.basis)) {
      res.basis = cur;
    }
    auto act = action_on(cur, q.elements);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      for (int c = 0; c < spec.color_count(); ++c) {
        auto parent = parent_along(spec, cur[i], c);
        if (!parent) {
          continue;
        }
        auto kids = split_leaf(spec, *parent, c);
        if (kids.front() != cur[i]) {
          continue;
        }
        std::vector<std::size_t> fam;
        for (auto const& k : kids) {
          auto at = cur.index_of(k);
          if (!at) {
            break;
          }
          fam.push_back(*at);
        }
        if (fam.size() != kids.size()) {
          continue;
        }
        // The orbit of the family; each image must again be a family in order.
        std::set<Leaf> parents;
        std::set<std::size_t> removed;
        bool ok = true;
        for (auto const& p : act) {
          auto img_parent = parent_along(spec, cur[p[fam[0]]], c);
          if (!img_parent) {
            ok = false;
            break;
          }
          auto img_kids = split_leaf(spec, *img_parent, c);
          for (std::size_t j = 0; j < fam.size() && ok; ++j) {
            ok = cur[p[fam[j]]] == img_kids[j];
            removed.insert(p[fam[j]]);
          }
          if (!ok) {
            break;
          }
          parents.insert(*img_parent);
        }
        if (!ok) {
          continue;
        }
        std::vector<Leaf> leaves(parents.begin(), parents.end());
        for (std::size_t k = 0; k < cur.size(); ++k) {
          if (!removed.count(k)) {
            leaves.push_back(cur[k]);
          }
        }
        std::sort(leaves.begin(), leaves.end());
        if (seen.count(leaves) || !is_admissible(spec, leaves).admissible) {
          continue;
        }
        seen.insert(leaves);
        Basis next = Basis::trusted(y.spec_ptr(), leaves);
        if (!try_action(next, q.elements)) {
          continue;
        }
        if (seen.size() > state_cap) {
          res.exhaustive = false;
          continue;
        }
        todo.push_back(std::move(next));
      }
    }
  }
  return res;
}

InvariantBasisReport orbit_types(Basis const& y, FiniteSubgroup const& q) {
  InvariantBasisReport rep{q, y, {}, {}, {}, {}, true, std::nullopt};
  GroupData g = group_data(action_on(y, q.elements));
  rep.action = g.action;
  rep.table = g.table;
  std::size_t n = g.table.size();

  std::vector<Subgroup> stab(y.size());
  for (std::size_t k = 0; k < y.size(); ++k) {
    for (std::size_t a = 0; a < n; ++a) {
      if (g.action[a][k] == k) {
        stab[k].push_back(a);
      }
    }
  }

  // Orbits, each with its class representative and marked leaf.
  struct Raw {
    Subgroup h;
    std::size_t marked;
  };
  std::vector<Raw> raws;
  std::vector<bool> done(y.size(), false);
  for (std::size_t k = 0; k < y.size(); ++k) {
    if (done[k]) {
      continue;
    }
    std::set<std::size_t> orbit;
    for (std::size_t a = 0; a < n; ++a) {
      orbit.insert(g.action[a][k]);
    }
    Subgroup h = canonical_class(g, stab[k]);
    std::size_t marked = y.size();
    for (auto x : orbit) {
      done[x] = true;
      if (marked == y.size() && stab[x] == h) {
        marked = x;
      }
    }
    raws.push_back({std::move(h), marked});
  }
  std::sort(raws.begin(), raws.end(), [](Raw const& a, Raw const& b) { return a.marked < b.marked; });

  // Type order: index m, then representative.
  std::set<std::pair<std::size_t, Subgroup>> keys;
  for (auto const& r : raws) {
    keys.insert({n / r.h.size(), r.h});
  }
  std::optional<std::set<Subgroup>> all;
  if (n <= kSubgroupEnumerationCap) {
    all = subgroup_classes(g);
    rep.t_total = all->size();
  }
  std::map<Subgroup, std::size_t> type_of;
  for (auto const& [m, h] : keys) {
    OrbitType t;
    t.m = m;
    t.stabilizer = h;
    if (m == 1) {
      t.id = "trivial";
    } else if (h.size() == 1) {
      t.id = "regular";
    } else {
      std::size_t ordinal = 1;
      if (all) {
        for (auto const& other : *all) {
          if (other < h && n / other.size() == m) {
            ++ordinal;
          }
        }
      } else {
        for (auto const& [m2, h2] : keys) {
          if (m2 == m && h2 < h) {
            ++ordinal;
          }
        }
      }
      t.id = "m" + std::to_string(m) + "_" + std::to_string(ordinal);
    }
    std::vector<std::size_t> letter_of(n, n);
    for (std::size_t a = 0; a < n; ++a) {
      if (letter_of[a] != n) {
        continue;
      }
      for (auto x : h) {
        letter_of[g.table[a][x]] = t.coset_reps.size();
      }
      t.coset_reps.push_back(a);
    }
    for (std::size_t a = 0; a < n; ++a) {
      Perm p(m);
      for (std::size_t k = 0; k < m; ++k) {
        p[k] = letter_of[g.table[a][t.coset_reps[k]]];
      }
      t.phi.push_back(std::move(p));
    }
    type_of[h] = rep.types.size();
    rep.types.push_back(std::move(t));
  }

  for (auto const& r : raws) {
    Orbit o;
    o.type = type_of.at(r.h);
    o.stabilizer = r.h;
    auto& t = rep.types[o.type];
    for (auto a : t.coset_reps) {
      o.leaves.push_back(g.action[a][r.marked]);
    }
    t.orbits.push_back(rep.orbits.size());
    rep.orbits.push_back(std::move(o));
  }
  return rep;
}

std::vector<Perm> perm_centralizer(std::vector<Perm> const& gens, std::size_t m,
                                   std::size_t cap) {
  if (m > cap) {
    throw CapExceeded("permutation degree " + std::to_string(m) + " exceeds cap " +
                      std::to_string(cap));
  }
  std::vector<Perm> out;
  Perm p = identity_perm(m);
  do {
    bool ok = true;
    for (auto const& g : gens) {
      if (after(p, g) != after(g, p)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      out.push_back(p);
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<Perm> type_centralizer_L(InvariantBasisReport const& report, std::size_t type,
                                     std::size_t cap) {
  auto const& t = report.types.at(type);
  return perm_centralizer(t.phi, t.m, cap);
}

std::size_t zassenhaus_order(InvariantBasisReport const& report, std::size_t type) {
  GroupData g = group_data(report.action);
  auto const& h = report.types.at(type).stabilizer;
  std::size_t normalizer = 0;
  for (std::size_t a = 0; a < g.table.size(); ++a) {
    if (conjugate_subgroup(g, h, a) == h) {
      ++normalizer;
    }
  }
  return normalizer / h.size();
}

CentralizerStructure centralizer_structure(FiniteSubgroup const& q, std::size_t l_cap) {
  auto min = minimize_invariant_basis(invariant_basis(q), q);
  CentralizerStructure c{orbit_types(min.basis, q), {}};
  c.report.minimal_exhaustive = min.exhaustive;
  auto const& spec = min.basis.spec();
  for (std::size_t i = 0; i < c.report.types.size(); ++i) {
    auto r = static_cast<int>(c.report.types[i].r());
    c.factors.push_back({i, type_centralizer_L(c.report, i, l_cap),
                         std::make_shared<AlgebraSpec const>(spec.with_roots(r))});
  }
  return c;
}

std::string CentralizerStructure::statement() const {
  std::string s = "C =";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    auto const& t = report.types[factors[i].type];
    s += i ? " x " : " ";
    s += "(K_" + t.id + " x| V_" + std::to_string(t.r()) + ")";
  }
  return s;
}

std::string CentralizerStructure::render() const {
  std::ostringstream out;
  out << "t_realized=" << factors.size();
  if (report.t_total) {
    out << " t_total=" << *report.t_total;
  }
  out << " |Q|=" << report.q.order() << " |Y|=" << report.y.size()
      << " d=" << report.y.spec().d()
      << " minimal=" << (report.minimal_exhaustive ? "exhaustive" : "bounded") << '\n';
  for (auto const& f : factors) {
    auto const& t = report.types[f.type];
    out << "type=" << t.id << " m=" << t.m << " r=" << t.r() << " |L|=" << f.L.size() << " L=";
    for (std::size_t k = 0; k < f.L.size(); ++k) {
      out << (k ? ";" : "") << render_perm(f.L[k]);
    }
    out << '\n';
  }
  out << statement() << '\n';
  return out.str();
}

namespace {

CentralizerFactor const& factor_at(CentralizerStructure const& c, std::size_t f) {
  if (f >= c.factors.size()) {
    throw InvalidArgument("no factor " + std::to_string(f));
  }
  return c.factors[f];
}

void require_quotient(CentralizerFactor const& f, Basis const& a) {
  if (!(a.spec() == *f.quotient)) {
    throw SpecMismatch();
  }
}

Leaf lift_leaf(CentralizerStructure const& c, CentralizerFactor const& f, Leaf const& a,
               std::size_t letter) {
  auto const& t = c.report.types[f.type];
  auto const& orbit = c.report.orbits[t.orbits.at(static_cast<std::size_t>(a.root))];
  return transport(root_leaf(*f.quotient, a.root), c.report.y[orbit.leaves[letter]], a);
}

void check_labels(CentralizerStructure const& c, KernelElement const& k) {
  auto const& f = factor_at(c, k.factor);
  require_quotient(f, k.basis);
  if (k.labels.size() != k.basis.size()) {
    throw InvalidArgument("one label per basis leaf expected");
  }
  for (auto l : k.labels) {
    if (l >= f.L.size()) {
      throw InvalidArgument("label " + std::to_string(l) + " outside L");
    }
  }
}

}  // namespace

Basis lift_basis(CentralizerStructure const& c, std::size_t factor, Basis const& a) {
  auto const& f = factor_at(c, factor);
  require_quotient(f, a);
  auto const& t = c.report.types[f.type];
  std::set<std::size_t> replaced;
  for (auto o : t.orbits) {
    auto const& ls = c.report.orbits[o].leaves;
    replaced.insert(ls.begin(), ls.end());
  }
  std::vector<Leaf> leaves;
  for (std::size_t k = 0; k < c.report.y.size(); ++k) {
    if (!replaced.count(k)) {
      leaves.push_back(c.report.y[k]);
    }
  }
  for (auto const& l : a.leaves()) {
    for (std::size_t letter = 0; letter < t.m; ++letter) {
      leaves.push_back(lift_leaf(c, f, l, letter));
    }
  }
  return Basis::from_leaves(c.report.y.spec_ptr(), std::move(leaves));
}

KernelElement kernel_identity(CentralizerStructure const& c, std::size_t factor) {
  auto const& f = factor_at(c, factor);
  Basis x = Basis::root(f.quotient);
  return {factor, x, std::vector<std::size_t>(x.size(), 0)};
}

KernelElement kernel_expand(KernelElement const& k, Basis const& m) {
  if (!leq(k.basis, m)) {
    throw NotComparable("target basis does not refine the kernel basis");
  }
  KernelElement out{k.factor, m, std::vector<std::size_t>(m.size())};
  for (std::size_t j = 0; j < m.size(); ++j) {
    out.labels[j] = k.labels[*k.basis.ancestor_of(m[j])];
  }
  return out;
}

bool kernel_equals(KernelElement const& a, KernelElement const& b) {
  if (a.factor != b.factor) {
    return false;
  }
  Basis m = lub(a.basis, b.basis);
  return kernel_expand(a, m).labels == kernel_expand(b, m).labels;
}

KernelElement kernel_act(Element const& v, KernelElement const& k) {
  if (!(v.spec() == k.basis.spec())) {
    throw SpecMismatch();
  }
  Element e = expand_domain(v, lub(v.domain(), k.basis));
  auto src = kernel_expand(k, e.domain());
  KernelElement out{k.factor, e.range(), std::vector<std::size_t>(e.size())};
  for (std::size_t j = 0; j < e.size(); ++j) {
    out.labels[e.perm()[j]] = src.labels[j];
  }
  return out;
}

KernelElement random_kernel_element(CentralizerStructure const& c, std::size_t factor,
                                    std::size_t size_bound, std::uint64_t seed) {
  auto const& f = factor_at(c, factor);
  std::mt19937_64 rng(seed);
  Basis b = Basis::root(f.quotient);
  for (int attempts = 0; attempts < 16; ++attempts) {
    int color = static_cast<int>(rng() % static_cast<std::uint64_t>(f.quotient->color_count()));
    std::size_t at = rng() % b.size();
    if (b.size() + static_cast<std::size_t>(f.quotient->arity(color)) - 1 > size_bound) {
      continue;
    }
    b = expand(b, at, color);
  }
  KernelElement k{factor, b, std::vector<std::size_t>(b.size())};
  for (auto& l : k.labels) {
    l = rng() % f.L.size();
  }
  return k;
}

Element build_kernel_element(CentralizerStructure const& c, KernelElement const& k) {
  check_labels(c, k);
  auto const& f = c.factors[k.factor];
  Basis b = lift_basis(c, k.factor, k.basis);
  Perm perm = identity_perm(b.size());
  auto m = c.report.types[f.type].m;
  for (std::size_t j = 0; j < k.basis.size(); ++j) {
    auto const& l = f.L[k.labels[j]];
    for (std::size_t letter = 0; letter < m; ++letter) {
      perm[*b.index_of(lift_leaf(c, f, k.basis[j], letter))] =
          *b.index_of(lift_leaf(c, f, k.basis[j], l[letter]));
    }
  }
  return reduce(permutation_element(b, std::move(perm)));
}

ConeTuple encode_kernel_element(CentralizerStructure const& c, KernelElement const& k) {
  check_labels(c, k);
  auto const& f = c.factors[k.factor];
  std::vector<std::vector<Leaf>> parts(f.L.size());
  for (std::size_t j = 0; j < k.basis.size(); ++j) {
    parts[k.labels[j]].push_back(k.basis[j]);
  }
  ConeTuple out;
  for (auto& p : parts) {
    out.push_back(Cone::from_leaves(f.quotient, std::move(p)));
  }
  return out;
}

Element splitting_lift(CentralizerStructure const& c, std::size_t factor, Element const& v) {
  auto const& f = factor_at(c, factor);
  require_quotient(f, v.domain());
  Basis dom = lift_basis(c, factor, v.domain());
  Basis ran = lift_basis(c, factor, v.range());
  std::vector<std::size_t> perm(dom.size(), dom.size());
  for (std::size_t k = 0; k < dom.size(); ++k) {
    if (auto at = ran.index_of(dom[k])) {
      perm[k] = *at;  // leaves outside the type stay put
    }
  }
  auto m = c.report.types[f.type].m;
  for (std::size_t j = 0; j < v.size(); ++j) {
    for (std::size_t letter = 0; letter < m; ++letter) {
      auto from = *dom.index_of(lift_leaf(c, f, v.domain()[j], letter));
      perm[from] = *ran.index_of(lift_leaf(c, f, v.range()[v.perm()[j]], letter));
    }
  }
  return reduce(Element(std::move(dom), std::move(ran), std::move(perm)));
}

NormalizerReport normalizer_analysis(FiniteSubgroup const& q, std::size_t cap) {
  Basis y = minimize_invariant_basis(invariant_basis(q), q).basis;
  std::size_t fact = 1;
  for (std::size_t k = 2; k <= y.size(); ++k) {
    fact *= k;
    if (fact > cap) {
      throw CapExceeded("|Y|! exceeds cap " + std::to_string(cap));
    }
  }
  NormalizerReport rep{y, action_on(y, q.elements), {}, {}, {}};
  std::set<Perm> qset(rep.q_action.begin(), rep.q_action.end());
  Perm s = identity_perm(y.size());
  do {
    Perm sinv = inverse(s);
    bool normal = true;
    bool central = true;
    for (auto const& g : rep.q_action) {
      Perm conj = after(after(s, g), sinv);
      normal = normal && qset.count(conj);
      central = central && conj == g;
    }
    if (normal) {
      rep.normalizer.push_back(s);
    }
    if (central) {
      rep.centralizer.push_back(s);
    }
  } while (std::next_permutation(s.begin(), s.end()));
  std::set<Perm> covered;
  for (auto const& n : rep.normalizer) {
    if (covered.count(n)) {
      continue;
    }
    rep.coset_reps.push_back(n);
    for (auto const& cc : rep.centralizer) {
      covered.insert(after(n, cc));
    }
  }
  return rep;
}

std::string NormalizerReport::render() const {
  std::ostringstream out;
  out << "|Y|=" << y.size() << " |N|=" << normalizer.size() << " |C|=" << centralizer.size()
      << " weyl=" << weyl_order() << '\n';
  for (auto const& r : coset_reps) {
    out << "rep=" << render_perm(r) << '\n';
  }
  return out.str();
}

std::vector<std::size_t> type_transport(InvariantBasisReport const& report, Perm const& g) {
  std::vector<std::size_t> orbit_of(report.y.size());
  for (std::size_t o = 0; o < report.orbits.size(); ++o) {
    for (auto l : report.orbits[o].leaves) {
      orbit_of[l] = o;
    }
  }
  std::vector<std::size_t> out(report.types.size(), report.types.size());
  for (auto const& o : report.orbits) {
    auto target = orbit_of[g[o.leaves[0]]];
    auto image = report.orbits[target].type;
    for (auto l : o.leaves) {
      if (orbit_of[g[l]] != target) {
        throw InvalidArgument("permutation does not carry orbits to orbits");
      }
    }
    auto& slot = out[o.type];
    if (slot != report.types.size() && slot != image) {
      throw InvalidArgument("permutation does not respect orbit types");
    }
    slot = image;
  }
  return out;
}

}  // namespace cantorv
