#include "cantorv/stein.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "cantorv/error.hpp"

namespace cantorv {

namespace {

using boost::multiprecision::cpp_int;

void sort_lists(SimplicialComplex& k) {
  for (auto& list : k.simplices) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  while (!k.simplices.empty() && k.simplices.back().empty()) {
    k.simplices.pop_back();
  }
}

void add_simplex(SimplicialComplex& k, Simplex s) {
  std::size_t dim = s.size() - 1;
  if (k.simplices.size() <= dim) {
    k.simplices.resize(dim + 1);
  }
  k.simplices[dim].push_back(std::move(s));
}

// Every clique extending `clique` by vertices from `candidates`.
void extend_cliques(std::vector<std::vector<bool>> const& adj, Simplex& clique,
                    std::vector<std::uint32_t> const& candidates, SimplicialComplex& out) {
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    auto v = candidates[i];
    clique.push_back(v);
    add_simplex(out, clique);
    std::vector<std::uint32_t> next;
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      if (adj[v][candidates[j]]) {
        next.push_back(candidates[j]);
      }
    }
    extend_cliques(adj, clique, next, out);
    clique.pop_back();
  }
}

// Sibling families present among the leaves of b, with their parents.
struct Family {
  int color;
  std::vector<std::uint32_t> members;  // indices into b, in child order
  Leaf parent;
};

std::vector<Family> families(Basis const& b) {
  auto const& spec = b.spec();
  std::vector<Family> out;
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (int c = 0; c < spec.color_count(); ++c) {
      auto parent = parent_along(spec, b[i], c);
      if (!parent) {
        continue;
      }
      auto kids = split_leaf(spec, *parent, c);
      if (kids.front() != b[i]) {
        continue;
      }
      Family f{c, {}, *parent};
      for (auto const& k : kids) {
        auto at = b.index_of(k);
        if (!at) {
          break;
        }
        f.members.push_back(static_cast<std::uint32_t>(*at));
      }
      if (f.members.size() == kids.size()) {
        out.push_back(std::move(f));
      }
    }
  }
  return out;
}

// b with the given families replaced by their parents, if admissible.
std::optional<Basis> contract_families(Basis const& b, std::vector<Family const*> const& fs) {
  std::vector<bool> gone(b.size(), false);
  std::vector<Leaf> leaves;
  for (auto const* f : fs) {
    for (auto m : f->members) {
      gone[m] = true;
    }
    leaves.push_back(f->parent);
  }
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (!gone[k]) {
      leaves.push_back(b[k]);
    }
  }
  std::sort(leaves.begin(), leaves.end());
  if (!is_admissible(b.spec(), leaves).admissible) {
    return std::nullopt;
  }
  return Basis::trusted(b.spec_ptr(), std::move(leaves));
}

// Order complex of a family of bases under <=.
BasisComplex chains_of(std::vector<Basis> bases) {
  std::sort(bases.begin(), bases.end(), [](Basis const& x, Basis const& y) {
    if (x.size() != y.size()) {
      return x.size() < y.size();
    }
    return x.leaves() < y.leaves();
  });
  std::size_t n = bases.size();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (bases[i].size() < bases[j].size() && leq(bases[i], bases[j])) {
        adj[i][j] = adj[j][i] = true;
      }
    }
  }
  BasisComplex out{std::move(bases), flag_complex(n, adj)};
  return out;
}

std::size_t path_length(AlgebraSpec const& spec, Leaf const& ancestor, Leaf const& leaf) {
  auto e = *relative_exponents(spec, ancestor, leaf);
  return static_cast<std::size_t>(std::accumulate(e.begin(), e.end(), 0));
}

// Row rank over GF(2) of rows given as sorted column lists.
std::size_t rank_gf2(std::vector<std::vector<std::uint32_t>> const& rows, std::size_t cols) {
  std::size_t words = (cols + 63) / 64;
  std::map<std::size_t, std::vector<std::uint64_t>> pivots;  // lowest set bit -> row
  std::size_t rank = 0;
  for (auto const& r : rows) {
    std::vector<std::uint64_t> bits(words, 0);
    for (auto c : r) {
      bits[c / 64] ^= std::uint64_t{1} << (c % 64);
    }
    while (true) {
      std::size_t lead = cols;
      for (std::size_t w = 0; w < words; ++w) {
        if (bits[w]) {
          lead = w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits[w]));
          break;
        }
      }
      if (lead == cols) {
        break;
      }
      auto it = pivots.find(lead);
      if (it == pivots.end()) {
        pivots.emplace(lead, std::move(bits));
        ++rank;
        break;
      }
      for (std::size_t w = lead / 64; w < words; ++w) {
        bits[w] ^= it->second[w];
      }
    }
  }
  return rank;
}

using SparseRow = std::vector<std::pair<std::uint32_t, cpp_int>>;

void normalize(SparseRow& r) {
  cpp_int g = 0;
  for (auto const& [c, v] : r) {
    g = gcd(g, abs(v));
  }
  if (g > 1) {
    for (auto& [c, v] : r) {
      v /= g;
    }
  }
  if (!r.empty() && r.front().second < 0) {
    for (auto& [c, v] : r) {
      v = -v;
    }
  }
}

// Rank over Q by integer row operations (fraction free), rows kept primitive.
std::size_t rank_q(std::vector<SparseRow> rows) {
  std::map<std::uint32_t, SparseRow> pivots;
  std::size_t rank = 0;
  for (auto& r : rows) {
    normalize(r);
    while (!r.empty()) {
      auto it = pivots.find(r.front().first);
      if (it == pivots.end()) {
        pivots.emplace(r.front().first, std::move(r));
        ++rank;
        break;
      }
      SparseRow const& p = it->second;
      cpp_int a = p.front().second;
      cpp_int b = r.front().second;
      SparseRow next;
      std::size_t i = 0;
      std::size_t j = 0;
      while (i < r.size() || j < p.size()) {
        if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
          next.emplace_back(r[i].first, a * r[i].second);
          ++i;
        } else if (i == r.size() || p[j].first < r[i].first) {
          next.emplace_back(p[j].first, -b * p[j].second);
          ++j;
        } else {
          cpp_int v = a * r[i].second - b * p[j].second;
          if (v != 0) {
            next.emplace_back(r[i].first, std::move(v));
          }
          ++i;
          ++j;
        }
      }
      r = std::move(next);
      normalize(r);
    }
  }
  return rank;
}

}  // namespace

std::vector<std::size_t> SimplicialComplex::f_vector() const {
  std::vector<std::size_t> f;
  for (auto const& list : simplices) {
    f.push_back(list.size());
  }
  return f;
}

long long SimplicialComplex::euler_characteristic() const {
  long long chi = 0;
  for (std::size_t k = 0; k < simplices.size(); ++k) {
    auto n = static_cast<long long>(simplices[k].size());
    chi += (k % 2 == 0) ? n : -n;
  }
  return chi;
}

bool SimplicialComplex::contains(Simplex const& s) const {
  if (s.empty() || s.size() > simplices.size()) {
    return false;
  }
  auto const& list = simplices[s.size() - 1];
  return std::binary_search(list.begin(), list.end(), s);
}

void SimplicialComplex::check_face_closed() const {
  for (std::size_t k = 1; k < simplices.size(); ++k) {
    for (auto const& s : simplices[k]) {
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        Simplex face = s;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
        if (!contains(face)) {
          throw InvalidArgument("complex is not closed under faces");
        }
      }
    }
  }
}

SimplicialComplex complex_from_simplices(std::size_t vertex_count,
                                         std::vector<Simplex> simplices) {
  std::set<Simplex> all;
  for (auto& s : simplices) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.empty() || s.size() > 24) {
      throw InvalidArgument("simplex size out of range");
    }
    if (s.back() >= vertex_count) {
      throw InvalidArgument("simplex vertex out of range");
    }
    if (all.count(s)) {
      continue;
    }
    std::uint32_t subsets = 1u << s.size();
    for (std::uint32_t mask = 1; mask < subsets; ++mask) {
      Simplex face;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (mask & (1u << i)) {
          face.push_back(s[i]);
        }
      }
      all.insert(std::move(face));
    }
  }
  SimplicialComplex k;
  k.vertex_count = vertex_count;
  for (auto const& s : all) {
    add_simplex(k, s);
  }
  sort_lists(k);
  return k;
}

SimplicialComplex flag_complex(std::size_t vertex_count,
                               std::vector<std::vector<bool>> const& adjacent) {
  SimplicialComplex k;
  k.vertex_count = vertex_count;
  std::vector<std::uint32_t> all(vertex_count);
  std::iota(all.begin(), all.end(), 0);
  Simplex clique;
  extend_cliques(adjacent, clique, all, k);
  sort_lists(k);
  return k;
}

SimplicialComplex induced_subcomplex(SimplicialComplex const& k,
                                     std::vector<std::uint32_t> const& vertices) {
  std::map<std::uint32_t, std::uint32_t> renumber;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    renumber[vertices[i]] = static_cast<std::uint32_t>(i);
  }
  SimplicialComplex out;
  out.vertex_count = vertices.size();
  for (auto const& list : k.simplices) {
    for (auto const& s : list) {
      Simplex t;
      for (auto v : s) {
        auto it = renumber.find(v);
        if (it == renumber.end()) {
          break;
        }
        t.push_back(it->second);
      }
      if (t.size() == s.size()) {
        std::sort(t.begin(), t.end());
        add_simplex(out, std::move(t));
      }
    }
  }
  sort_lists(out);
  return out;
}

SimplicialComplex barycentric_subdivision(SimplicialComplex const& k) {
  std::vector<Simplex> faces;
  for (auto const& list : k.simplices) {
    faces.insert(faces.end(), list.begin(), list.end());
  }
  std::size_t n = faces.size();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      auto const& a = faces[i];
      auto const& b = faces[j];
      if (a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end())) {
        adj[i][j] = adj[j][i] = true;
      }
    }
  }
  return flag_complex(n, adj);
}

bool isomorphic(SimplicialComplex const& a, SimplicialComplex const& b) {
  if (a.vertex_count != b.vertex_count || a.f_vector() != b.f_vector()) {
    return false;
  }
  std::size_t n = a.vertex_count;
  auto signature = [n](SimplicialComplex const& k) {
    std::vector<std::vector<std::size_t>> sig(n, std::vector<std::size_t>(k.simplices.size(), 0));
    for (std::size_t d = 0; d < k.simplices.size(); ++d) {
      for (auto const& s : k.simplices[d]) {
        for (auto v : s) {
          ++sig[v][d];
        }
      }
    }
    return sig;
  };
  auto adjacency = [n](SimplicialComplex const& k) {
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    if (k.simplices.size() > 1) {
      for (auto const& e : k.simplices[1]) {
        adj[e[0]][e[1]] = adj[e[1]][e[0]] = true;
      }
    }
    return adj;
  };
  auto sa = signature(a);
  auto sb = signature(b);
  auto aa = adjacency(a);
  auto ab = adjacency(b);
  std::vector<std::uint32_t> map(n, 0);
  std::vector<bool> used(n, false);

  auto full_check = [&]() {
    for (auto const& list : a.simplices) {
      for (auto const& s : list) {
        Simplex t;
        for (auto v : s) {
          t.push_back(map[v]);
        }
        std::sort(t.begin(), t.end());
        if (!b.contains(t)) {
          return false;
        }
      }
    }
    return true;
  };
  auto search = [&](auto&& self, std::size_t v) -> bool {
    if (v == n) {
      return full_check();
    }
    for (std::uint32_t w = 0; w < n; ++w) {
      if (used[w] || sa[v] != sb[w]) {
        continue;
      }
      bool ok = true;
      for (std::size_t u = 0; u < v && ok; ++u) {
        ok = aa[u][v] == ab[map[u]][w];
      }
      if (!ok) {
        continue;
      }
      used[w] = true;
      map[v] = w;
      if (self(self, v + 1)) {
        return true;
      }
      used[w] = false;
    }
    return false;
  };
  return search(search, 0);
}

BasisComplex build_stein(SpecPtr const& spec, std::size_t size_cap, std::size_t simplex_cap) {
  auto bases = enumerate_bases(spec, size_cap);
  std::size_t n = bases.size();
  SimplicialComplex k;
  k.vertex_count = n;
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    // Elementary expansions of vertex i within the cap, in index order.
    std::vector<std::uint32_t> above;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (bases[i].size() < bases[j].size() && leq(bases[i], bases[j]) &&
          elementary_leq(bases[i], bases[j])) {
        above.push_back(static_cast<std::uint32_t>(j));
      }
    }
    std::vector<std::vector<bool>> adj(above.size(), std::vector<bool>(above.size(), false));
    for (std::size_t x = 0; x < above.size(); ++x) {
      for (std::size_t y = x + 1; y < above.size(); ++y) {
        auto const& bx = bases[above[x]];
        auto const& by = bases[above[y]];
        if (bx.size() < by.size() && leq(bx, by)) {
          adj[x][y] = adj[y][x] = true;
        }
      }
    }
    SimplicialComplex local = flag_complex(above.size(), adj);
    add_simplex(k, {static_cast<std::uint32_t>(i)});
    ++count;
    for (auto const& list : local.simplices) {
      for (auto const& s : list) {
        Simplex t{static_cast<std::uint32_t>(i)};
        for (auto v : s) {
          t.push_back(above[v]);
        }
        add_simplex(k, std::move(t));
        if (++count > simplex_cap) {
          throw CapExceeded("Stein complex exceeds " + std::to_string(simplex_cap) +
                            " simplices");
        }
      }
    }
  }
  sort_lists(k);
  return {std::move(bases), std::move(k)};
}

BasisComplex descending_link(Basis const& a) {
  std::set<std::vector<Leaf>> seen{a.leaves()};
  std::vector<Basis> found;
  std::vector<Basis> todo{a};
  while (!todo.empty()) {
    Basis cur = std::move(todo.back());
    todo.pop_back();
    auto fs = families(cur);
    for (auto const& f : fs) {
      auto next = contract_families(cur, {&f});
      if (!next || seen.count(next->leaves())) {
        continue;
      }
      seen.insert(next->leaves());
      if (!elementary_leq(*next, a)) {
        continue;
      }
      found.push_back(*next);
      todo.push_back(std::move(*next));
    }
  }
  return chains_of(std::move(found));
}

BasisComplex very_elementary_link(Basis const& a) {
  auto l = descending_link(a);
  std::vector<Basis> keep;
  for (auto const& b : l.vertices) {
    if (very_elementary_leq(b, a)) {
      keep.push_back(b);
    }
  }
  return chains_of(std::move(keep));
}

std::strong_ordering operator<=>(Height const& x, Height const& y) {
  if (auto c = x.c <=> y.c; c != 0) {
    return c;
  }
  return x.b <=> y.b;
}

std::string Height::render() const {
  std::string s = "(";
  for (auto v : c) {
    s += std::to_string(v) + ",";
  }
  return s + std::to_string(b) + ")";
}

Height height(Basis const& a, Basis const& b) {
  if (!leq(b, a)) {
    throw NotComparable("height needs B <= A");
  }
  if (!elementary_leq(b, a)) {
    throw InvalidArgument("height needs an elementary expansion B <= A");
  }
  auto const& spec = a.spec();
  auto s = static_cast<std::size_t>(spec.color_count());
  Height h;
  h.c.assign(s > 1 ? s - 1 : 0, 0);
  h.b = b.size();
  for (auto const& l : a.leaves()) {
    auto len = path_length(spec, b[*b.ancestor_of(l)], l);
    if (len >= 2) {
      ++h.c[s - len];
    }
  }
  return h;
}

HLink h_descending_link(Basis const& a, Basis const& b) {
  auto l = descending_link(a);
  auto it = std::find(l.vertices.begin(), l.vertices.end(), b);
  if (it == l.vertices.end()) {
    throw InvalidArgument("B is not a vertex of L(A)");
  }
  auto const& spec = a.spec();
  Height hb = height(a, b);
  HLink out;
  if (std::all_of(hb.c.begin(), hb.c.end(), [](std::size_t v) { return v == 0; })) {
    out.link_case = 0;
  } else {
    std::vector<bool> once(b.size(), true);
    for (auto const& leaf : a.leaves()) {
      auto k = *b.ancestor_of(leaf);
      if (path_length(spec, b[k], leaf) != 1) {
        once[k] = false;
      }
    }
    out.link_case = std::find(once.begin(), once.end(), true) != once.end() ? 1 : 2;
  }
  std::vector<std::uint32_t> down;
  std::vector<std::uint32_t> up;
  for (std::size_t i = 0; i < l.vertices.size(); ++i) {
    auto const& c = l.vertices[i];
    if (c == b || !(height(a, c) < hb)) {
      continue;
    }
    if (c.size() < b.size() && leq(c, b)) {
      down.push_back(static_cast<std::uint32_t>(i));
    } else if (b.size() < c.size() && leq(b, c)) {
      up.push_back(static_cast<std::uint32_t>(i));
    }
  }
  std::vector<std::uint32_t> both = down;
  both.insert(both.end(), up.begin(), up.end());
  for (auto v : both) {
    out.vertices.push_back(l.vertices[v]);
  }
  out.down_count = down.size();
  out.complex = induced_subcomplex(l.complex, both);
  out.downlink = induced_subcomplex(l.complex, down);
  out.uplink = induced_subcomplex(l.complex, up);
  return out;
}

SimplicialComplex model_Kn(AlgebraSpec const& spec, std::size_t n,
                           std::vector<KnVertex>* vertex_labels) {
  std::vector<KnVertex> vs;
  for (int c = 0; c < spec.color_count(); ++c) {
    auto m = static_cast<std::size_t>(spec.arity(c));
    if (m > n) {
      continue;
    }
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(m), true);
    do {
      KnVertex v{c, {}};
      for (std::size_t i = 0; i < n; ++i) {
        if (pick[i]) {
          v.subset.push_back(static_cast<std::uint32_t>(i));
        }
      }
      vs.push_back(std::move(v));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  std::vector<std::vector<bool>> adj(vs.size(), std::vector<bool>(vs.size(), false));
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      std::vector<std::uint32_t> common;
      std::set_intersection(vs[i].subset.begin(), vs[i].subset.end(), vs[j].subset.begin(),
                            vs[j].subset.end(), std::back_inserter(common));
      adj[i][j] = adj[j][i] = common.empty();
    }
  }
  auto k = flag_complex(vs.size(), adj);
  if (vertex_labels) {
    *vertex_labels = std::move(vs);
  }
  return k;
}

SimplicialComplex geometric_Kn(Basis const& a, std::vector<KnVertex>* vertex_labels) {
  std::vector<Family> fs;
  for (auto& f : families(a)) {
    if (contract_families(a, {&f})) {
      std::sort(f.members.begin(), f.members.end());
      fs.push_back(std::move(f));
    }
  }
  std::sort(fs.begin(), fs.end(), [](Family const& x, Family const& y) {
    return std::tie(x.color, x.members) < std::tie(y.color, y.members);
  });
  std::size_t n = fs.size();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      std::vector<std::uint32_t> common;
      std::set_intersection(fs[i].members.begin(), fs[i].members.end(), fs[j].members.begin(),
                            fs[j].members.end(), std::back_inserter(common));
      adj[i][j] = adj[j][i] = common.empty();
    }
  }
  auto cliques = flag_complex(n, adj);
  std::vector<Simplex> keep;
  for (auto const& list : cliques.simplices) {
    for (auto const& s : list) {
      std::vector<Family const*> chosen;
      for (auto v : s) {
        chosen.push_back(&fs[v]);
      }
      if (contract_families(a, chosen)) {
        keep.push_back(s);
      }
    }
  }
  if (vertex_labels) {
    vertex_labels->clear();
    for (auto const& f : fs) {
      vertex_labels->push_back({f.color, f.members});
    }
  }
  return complex_from_simplices(n, std::move(keep));
}

bool ChainComplexReport::acyclic_gf2() const {
  return !empty && std::all_of(betti_gf2.begin(), betti_gf2.end(),
                               [](std::size_t v) { return v == 0; });
}

std::string ChainComplexReport::render_tsv() const {
  std::ostringstream out;
  out << "dim\tsimplices\tbetti_gf2";
  if (betti_q) {
    out << "\tbetti_q";
  }
  out << '\n';
  if (empty) {
    out << "-1\t1\t1";
    if (betti_q) {
      out << "\t1";
    }
    out << '\n';
  }
  for (std::size_t k = 0; k < f.size(); ++k) {
    out << k << '\t' << f[k] << '\t' << betti_gf2[k];
    if (betti_q) {
      out << '\t' << (*betti_q)[k];
    }
    out << '\n';
  }
  out << "euler\t" << euler << '\n';
  out << "euler_consistent\t" << (euler_consistent ? "yes" : "no") << '\n';
  return out.str();
}

ChainComplexReport homology(SimplicialComplex const& k, bool rational, std::size_t simplex_cap) {
  ChainComplexReport rep;
  rep.f = k.f_vector();
  rep.euler = k.euler_characteristic();
  for (auto n : rep.f) {
    if (n > simplex_cap) {
      throw CapExceeded("dimension with " + std::to_string(n) + " simplices exceeds cap");
    }
  }
  rep.empty = rep.f.empty();
  std::size_t top = rep.f.size();
  // ranks[k] = rank of the boundary C_k -> C_{k-1}; C_{-1} is the augmentation.
  std::vector<std::size_t> r2(top + 1, 0);
  std::vector<std::size_t> rq(top + 1, 0);
  if (!rep.empty) {
    r2[0] = rq[0] = 1;
  }
  for (std::size_t d = 1; d < top; ++d) {
    auto const& faces = k.simplices[d - 1];
    std::vector<std::vector<std::uint32_t>> rows2;
    std::vector<SparseRow> rowsq;
    for (auto const& s : k.simplices[d]) {
      std::vector<std::pair<std::uint32_t, int>> entries;
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        Simplex face = s;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
        auto at = std::lower_bound(faces.begin(), faces.end(), face) - faces.begin();
        entries.emplace_back(static_cast<std::uint32_t>(at), drop % 2 == 0 ? 1 : -1);
      }
      std::sort(entries.begin(), entries.end());
      std::vector<std::uint32_t> cols;
      SparseRow row;
      for (auto [c, v] : entries) {
        cols.push_back(c);
        row.emplace_back(c, cpp_int(v));
      }
      rows2.push_back(std::move(cols));
      rowsq.push_back(std::move(row));
    }
    r2[d] = rank_gf2(rows2, faces.size());
    if (rational) {
      rq[d] = rank_q(std::move(rowsq));
    }
  }
  auto betti = [&](std::vector<std::size_t> const& r) {
    std::vector<std::size_t> b(top);
    for (std::size_t d = 0; d < top; ++d) {
      b[d] = rep.f[d] - r[d] - r[d + 1];
    }
    return b;
  };
  auto consistent = [&](std::vector<std::size_t> const& b) {
    long long reduced = rep.empty ? -1 : 0;
    for (std::size_t d = 0; d < b.size(); ++d) {
      auto v = static_cast<long long>(b[d]);
      reduced += (d % 2 == 0) ? v : -v;
    }
    return reduced == rep.euler - 1;
  };
  rep.betti_gf2 = betti(r2);
  rep.euler_consistent = consistent(rep.betti_gf2);
  if (rational) {
    rep.betti_q = betti(rq);
    rep.euler_consistent = rep.euler_consistent && consistent(*rep.betti_q);
  }
  return rep;
}

}  // namespace cantorv
