#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cantorv/centralizer.hpp"
#include "cantorv/cones.hpp"
#include "cantorv/elements.hpp"

namespace cantorv {

// Line-oriented text formats. Blank lines and `#` comments are ignored. Any
// object file may begin with `spec: <dsl>`; the writers always emit it. A
// reader given a fallback spec uses it when the header is absent and throws
// SpecMismatch when the header names a different spec.
//
//   .basis  leaf lines `root:<k> [p/q,p/q) ...` (one interval per block), or
//           `E <leaf> <color>` lines replayed from X
//   .elem   `domain:` script, `range:` script, `perm: i0 i1 ...`
//   .cone   leaf lines or `EMPTY`; tuples separate cones by `---`
//   .grp    elements separated by `---`
//   .kern   `factor: <i>`, `basis:` script over the quotient, `labels: ...`

std::string render_rational(std::int64_t num, std::int64_t den);
std::string render_interval(Interval const& iv);
std::string render_leaf(Leaf const& leaf);
Leaf parse_leaf(AlgebraSpec const& spec, std::string_view line);

std::string render_script(ExpansionScript const& script);
ExpansionScript parse_script(std::string_view text);

std::string render_spec_header(AlgebraSpec const& spec);

// Header spec of a file, if present.
SpecPtr read_spec_header(std::string_view text);

std::string render_basis(Basis const& b);
Basis read_basis(std::string_view text, SpecPtr const& fallback = nullptr);

// Leaves of a .basis file without the admissibility check.
std::vector<Leaf> read_leaves(std::string_view text, SpecPtr const& fallback,
                              SpecPtr* spec_out = nullptr);

// Several bases under one header, separated by `---`.
std::string render_basis_list(std::vector<Basis> const& bases, SpecPtr const& spec);
std::vector<Basis> read_basis_list(std::string_view text, SpecPtr const& fallback = nullptr);

// Emits reduce(g) unless `as_is` is set.
std::string render_element(Element const& g, bool as_is = false);
Element read_element(std::string_view text, SpecPtr const& fallback = nullptr);

std::string render_cone(Cone const& u);
Cone read_cone(std::string_view text, SpecPtr const& fallback = nullptr);
std::string render_cone_tuple(ConeTuple const& t);
ConeTuple read_cone_tuple(std::string_view text, SpecPtr const& fallback = nullptr);

std::string render_group(std::vector<Element> const& gens);
std::vector<Element> read_group(std::string_view text, SpecPtr const& fallback = nullptr);

// Labels are indices into the factor's L; the basis lives over the quotient
// spec, which the header names.
std::string render_kernel(CentralizerStructure const& c, KernelElement const& k);
KernelElement read_kernel(std::string_view text, CentralizerStructure const& c);

}  // namespace cantorv
