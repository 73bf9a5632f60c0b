#include "cantorv/serialize.hpp"

#include <charconv>
#include <numeric>
#include <optional>
#include <sstream>

#include "cantorv/error.hpp"

namespace cantorv {

namespace {

struct Line {
  std::size_t no = 0;
  std::string_view text;
};

std::string_view trim(std::string_view s) {
  auto const ws = " \t\r";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) {
    return {};
  }
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<Line> lines_of(std::string_view text) {
  std::vector<Line> out;
  std::size_t no = 0;
  while (!text.empty()) {
    ++no;
    auto nl = text.find('\n');
    auto raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    raw = trim(raw);
    if (!raw.empty()) {
      out.push_back({no, raw});
    }
  }
  return out;
}

[[noreturn]] void fail(Line const& l, std::string const& msg) {
  throw ParseError("line " + std::to_string(l.no) + ": " + msg);
}

bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

std::int64_t parse_int(std::string_view s, Line const& l) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    fail(l, "expected an integer, got '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) {
      ++i;
    }
    auto b = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') {
      ++i;
    }
    if (i > b) {
      out.push_back(s.substr(b, i - b));
    }
  }
  return out;
}

// p/q or a bare integer, as a reduced fraction with positive denominator.
std::pair<__int128, __int128> parse_fraction(std::string_view s, Line const& l) {
  auto slash = s.find('/');
  __int128 p = parse_int(s.substr(0, slash), l);
  __int128 q = slash == std::string_view::npos ? 1 : parse_int(s.substr(slash + 1), l);
  if (q <= 0) {
    fail(l, "denominator must be positive");
  }
  auto g = std::gcd(p < 0 ? -p : p, q);
  return {p / g, q / g};
}

Interval parse_interval(std::string_view s, Line const& l) {
  if (s.size() < 5 || s.front() != '[' || s.back() != ')') {
    fail(l, "expected [lo,hi), got '" + std::string(s) + "'");
  }
  auto body = s.substr(1, s.size() - 2);
  auto comma = body.find(',');
  if (comma == std::string_view::npos) {
    fail(l, "expected [lo,hi), got '" + std::string(s) + "'");
  }
  auto [a, b] = parse_fraction(trim(body.substr(0, comma)), l);
  auto [c, e] = parse_fraction(trim(body.substr(comma + 1)), l);
  __int128 wn = c * b - a * e;
  __int128 wd = b * e;
  if (a < 0 || wn <= 0 || c > e || wd % wn != 0) {
    fail(l, "interval '" + std::string(s) + "' does not have length 1/N");
  }
  __int128 n = wd / wn;
  if (a * n % b != 0) {
    fail(l, "interval '" + std::string(s) + "' is not grid aligned");
  }
  if (n > (__int128{1} << 60)) {
    throw CapExceeded("interval denominator exceeds 2^60");
  }
  return {static_cast<std::int64_t>(a * n / b), static_cast<std::int64_t>(n)};
}

Leaf parse_leaf_line(AlgebraSpec const& spec, Line const& l) {
  auto ws = words(l.text);
  if (ws.empty() || !starts_with(ws[0], "root:")) {
    fail(l, "expected 'root:<k>'");
  }
  Leaf leaf;
  leaf.root = static_cast<int>(parse_int(ws[0].substr(5), l));
  if (ws.size() != static_cast<std::size_t>(spec.block_count()) + 1) {
    fail(l, "expected " + std::to_string(spec.block_count()) + " intervals");
  }
  for (std::size_t k = 1; k < ws.size(); ++k) {
    leaf.coords.push_back(parse_interval(ws[k], l));
  }
  if (!is_valid_leaf(spec, leaf)) {
    fail(l, "not a leaf of " + spec.render());
  }
  return leaf;
}

ExpansionStep parse_step(Line const& l) {
  auto ws = words(l.text);
  if (ws.size() != 3 || ws[0] != "E") {
    fail(l, "expected 'E <leaf> <color>'");
  }
  auto leaf = parse_int(ws[1], l);
  auto color = parse_int(ws[2], l);
  if (leaf < 0 || color < 0) {
    fail(l, "negative index");
  }
  return {static_cast<std::size_t>(leaf), static_cast<int>(color)};
}

struct Doc {
  SpecPtr spec;
  std::vector<Line> body;
};

Doc open(std::string_view text, SpecPtr const& fallback) {
  Doc d;
  auto ls = lines_of(text);
  std::size_t start = 0;
  if (!ls.empty() && starts_with(ls[0].text, "spec:")) {
    auto parsed = parse_spec_ptr(ls[0].text.substr(5));
    if (fallback && !(*fallback == *parsed)) {
      throw SpecMismatch();
    }
    d.spec = fallback ? fallback : parsed;
    start = 1;
  } else if (fallback) {
    d.spec = fallback;
  } else {
    throw ParseError("no 'spec:' header and no spec given");
  }
  d.body.assign(ls.begin() + static_cast<std::ptrdiff_t>(start), ls.end());
  return d;
}

std::vector<std::vector<Line>> sections(std::vector<Line> const& body) {
  std::vector<std::vector<Line>> out(1);
  for (auto const& l : body) {
    if (l.text == "---") {
      out.emplace_back();
    } else {
      out.back().push_back(l);
    }
  }
  return out;
}

Basis basis_from_lines(SpecPtr const& spec, std::vector<Line> const& ls) {
  if (ls.empty()) {
    throw ParseError("empty basis");
  }
  if (starts_with(ls[0].text, "E ") || ls[0].text == "E") {
    ExpansionScript s;
    for (auto const& l : ls) {
      s.steps.push_back(parse_step(l));
    }
    return replay(spec, s);
  }
  std::vector<Leaf> leaves;
  for (auto const& l : ls) {
    leaves.push_back(parse_leaf_line(*spec, l));
  }
  return Basis::from_leaves(spec, std::move(leaves));
}

std::string body_of_basis(Basis const& b) {
  std::string out;
  for (auto const& leaf : b.leaves()) {
    out += render_leaf(leaf);
    out += '\n';
  }
  return out;
}

std::string body_of_element(Element const& g, bool as_is = false) {
  auto r = as_is ? g : reduce(g);
  std::ostringstream out;
  out << "domain:\n" << render_script(script_of(r.domain()));
  out << "range:\n" << render_script(script_of(r.range()));
  out << "perm:";
  for (auto p : r.perm()) {
    out << ' ' << p;
  }
  out << '\n';
  return out.str();
}

Element element_from_lines(SpecPtr const& spec, std::vector<Line> const& ls) {
  enum { none, dom, ran } mode = none;
  ExpansionScript ds, rs;
  std::optional<std::vector<std::size_t>> perm;
  bool saw_domain = false, saw_range = false;
  for (auto const& l : ls) {
    if (l.text == "domain:") {
      mode = dom;
      saw_domain = true;
    } else if (l.text == "range:") {
      mode = ran;
      saw_range = true;
    } else if (starts_with(l.text, "perm:")) {
      perm.emplace();
      for (auto w : words(l.text.substr(5))) {
        auto v = parse_int(w, l);
        if (v < 0) {
          fail(l, "negative index");
        }
        perm->push_back(static_cast<std::size_t>(v));
      }
      mode = none;
    } else if (mode == dom) {
      ds.steps.push_back(parse_step(l));
    } else if (mode == ran) {
      rs.steps.push_back(parse_step(l));
    } else {
      fail(l, "unexpected '" + std::string(l.text) + "'");
    }
  }
  if (!saw_domain || !saw_range || !perm) {
    throw ParseError("element needs 'domain:', 'range:' and 'perm:'");
  }
  return Element(replay(spec, ds), replay(spec, rs), std::move(*perm));
}

Cone cone_from_lines(SpecPtr const& spec, std::vector<Line> const& ls) {
  if (ls.size() == 1 && ls[0].text == "EMPTY") {
    return Cone::empty(spec);
  }
  if (ls.empty()) {
    throw ParseError("empty cone section; write EMPTY");
  }
  std::vector<Leaf> leaves;
  for (auto const& l : ls) {
    leaves.push_back(parse_leaf_line(*spec, l));
  }
  return Cone::from_leaves(spec, std::move(leaves));
}

std::string body_of_cone(Cone const& u) {
  if (u.is_empty()) {
    return "EMPTY\n";
  }
  std::string out;
  for (auto const& leaf : u.support()) {
    out += render_leaf(leaf);
    out += '\n';
  }
  return out;
}

}  // namespace

std::string render_rational(std::int64_t num, std::int64_t den) {
  auto g = std::gcd(num, den);
  return std::to_string(num / g) + "/" + std::to_string(den / g);
}

std::string render_interval(Interval const& iv) {
  return "[" + render_rational(iv.index, iv.den) + "," + render_rational(iv.index + 1, iv.den) +
         ")";
}

std::string render_leaf(Leaf const& leaf) {
  std::string out = "root:" + std::to_string(leaf.root);
  for (auto const& iv : leaf.coords) {
    out += ' ';
    out += render_interval(iv);
  }
  return out;
}

Leaf parse_leaf(AlgebraSpec const& spec, std::string_view line) {
  return parse_leaf_line(spec, Line{1, trim(line)});
}

std::string render_script(ExpansionScript const& script) {
  std::string out;
  for (auto const& s : script.steps) {
    out += "E " + std::to_string(s.leaf) + " " + std::to_string(s.color) + "\n";
  }
  return out;
}

ExpansionScript parse_script(std::string_view text) {
  ExpansionScript s;
  for (auto const& l : lines_of(text)) {
    s.steps.push_back(parse_step(l));
  }
  return s;
}

std::string render_spec_header(AlgebraSpec const& spec) { return "spec: " + spec.render() + "\n"; }

SpecPtr read_spec_header(std::string_view text) {
  auto ls = lines_of(text);
  if (!ls.empty() && starts_with(ls[0].text, "spec:")) {
    return parse_spec_ptr(ls[0].text.substr(5));
  }
  return nullptr;
}

std::string render_basis(Basis const& b) { return render_spec_header(b.spec()) + body_of_basis(b); }

Basis read_basis(std::string_view text, SpecPtr const& fallback) {
  auto d = open(text, fallback);
  return basis_from_lines(d.spec, d.body);
}

std::vector<Leaf> read_leaves(std::string_view text, SpecPtr const& fallback, SpecPtr* spec_out) {
  auto d = open(text, fallback);
  if (spec_out) {
    *spec_out = d.spec;
  }
  if (!d.body.empty() && starts_with(d.body[0].text, "E")) {
    return basis_from_lines(d.spec, d.body).leaves();
  }
  std::vector<Leaf> leaves;
  for (auto const& l : d.body) {
    leaves.push_back(parse_leaf_line(*d.spec, l));
  }
  return leaves;
}

std::string render_basis_list(std::vector<Basis> const& bases, SpecPtr const& spec) {
  std::string out = render_spec_header(*spec);
  for (std::size_t k = 0; k < bases.size(); ++k) {
    if (k) {
      out += "---\n";
    }
    out += body_of_basis(bases[k]);
  }
  return out;
}

std::vector<Basis> read_basis_list(std::string_view text, SpecPtr const& fallback) {
  auto d = open(text, fallback);
  std::vector<Basis> out;
  if (d.body.empty()) {
    return out;
  }
  for (auto const& s : sections(d.body)) {
    out.push_back(basis_from_lines(d.spec, s));
  }
  return out;
}

std::string render_element(Element const& g, bool as_is) {
  return render_spec_header(g.spec()) + body_of_element(g, as_is);
}

Element read_element(std::string_view text, SpecPtr const& fallback) {
  auto d = open(text, fallback);
  return element_from_lines(d.spec, d.body);
}

std::string render_cone(Cone const& u) { return render_spec_header(u.spec()) + body_of_cone(u); }

Cone read_cone(std::string_view text, SpecPtr const& fallback) {
  auto d = open(text, fallback);
  return cone_from_lines(d.spec, d.body);
}

std::string render_cone_tuple(ConeTuple const& t) {
  if (t.empty()) {
    throw InvalidArgument("cannot serialize an empty tuple");
  }
  std::string out = render_spec_header(t.front().spec());
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (k) {
      out += "---\n";
    }
    out += body_of_cone(t[k]);
  }
  return out;
}

ConeTuple read_cone_tuple(std::string_view text, SpecPtr const& fallback) {
  auto d = open(text, fallback);
  ConeTuple t;
  for (auto const& s : sections(d.body)) {
    t.push_back(cone_from_lines(d.spec, s));
  }
  return t;
}

std::string render_group(std::vector<Element> const& gens) {
  if (gens.empty()) {
    throw InvalidArgument("a group file needs at least one element");
  }
  std::string out = render_spec_header(gens.front().spec());
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (k) {
      out += "---\n";
    }
    out += body_of_element(gens[k]);
  }
  return out;
}

std::vector<Element> read_group(std::string_view text, SpecPtr const& fallback) {
  auto d = open(text, fallback);
  std::vector<Element> out;
  for (auto const& s : sections(d.body)) {
    out.push_back(element_from_lines(d.spec, s));
  }
  return out;
}

std::string render_kernel(CentralizerStructure const& c, KernelElement const& k) {
  if (k.factor >= c.factors.size()) {
    throw InvalidArgument("no factor " + std::to_string(k.factor));
  }
  std::ostringstream out;
  out << render_spec_header(k.basis.spec()) << "factor: " << k.factor << '\n';
  out << "basis:\n" << render_script(script_of(k.basis)) << "labels:";
  for (auto l : k.labels) {
    out << ' ' << l;
  }
  out << '\n';
  return out.str();
}

KernelElement read_kernel(std::string_view text, CentralizerStructure const& c) {
  auto ls = lines_of(text);
  std::size_t i = 0;
  SpecPtr header;
  if (i < ls.size() && starts_with(ls[i].text, "spec:")) {
    header = parse_spec_ptr(ls[i].text.substr(5));
    ++i;
  }
  if (i >= ls.size() || !starts_with(ls[i].text, "factor:")) {
    throw ParseError("kernel element needs 'factor: <i>'");
  }
  auto f = parse_int(trim(ls[i].text.substr(7)), ls[i]);
  if (f < 0 || static_cast<std::size_t>(f) >= c.factors.size()) {
    fail(ls[i], "no factor " + std::to_string(f));
  }
  ++i;
  auto const& factor = c.factors[static_cast<std::size_t>(f)];
  if (header && !(*header == *factor.quotient)) {
    throw SpecMismatch();
  }
  if (i >= ls.size() || ls[i].text != "basis:") {
    throw ParseError("kernel element needs 'basis:'");
  }
  ++i;
  ExpansionScript s;
  while (i < ls.size() && !starts_with(ls[i].text, "labels:")) {
    s.steps.push_back(parse_step(ls[i]));
    ++i;
  }
  if (i >= ls.size()) {
    throw ParseError("kernel element needs 'labels:'");
  }
  KernelElement k{static_cast<std::size_t>(f), replay(factor.quotient, s), {}};
  for (auto w : words(ls[i].text.substr(7))) {
    auto v = parse_int(w, ls[i]);
    if (v < 0 || static_cast<std::size_t>(v) >= factor.L.size()) {
      fail(ls[i], "label out of range");
    }
    k.labels.push_back(static_cast<std::size_t>(v));
  }
  if (k.labels.size() != k.basis.size()) {
    fail(ls[i], "expected one label per basis leaf");
  }
  return k;
}

}  // namespace cantorv
