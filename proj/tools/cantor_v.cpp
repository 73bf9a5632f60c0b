// cantor-v: command-line front end. Exit codes: 0 success, 1 domain error,
// 2 usage error (bad flags, unreadable files).

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "cantorv/centralizer.hpp"
#include "cantorv/error.hpp"
#include "cantorv/serialize.hpp"
#include "cantorv/stein.hpp"

using namespace cantorv;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw UsageError("cannot read " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

struct Options {
  std::string spec_path;
  SpecPtr spec;

  // The --spec file if given, else the header of the first object file read.
  SpecPtr const& fallback() {
    if (!spec && !spec_path.empty()) {
      spec = parse_spec_ptr(slurp(spec_path));
    }
    return spec;
  }
  SpecPtr const& require_spec() {
    if (!fallback()) {
      throw UsageError("--spec is required");
    }
    return spec;
  }
  void adopt(SpecPtr const& s) {
    if (!spec) {
      spec = s;
    }
  }

  Basis basis(std::string const& path) {
    auto b = read_basis(slurp(path), fallback());
    adopt(b.spec_ptr());
    return b;
  }
  Element element(std::string const& path) {
    auto g = read_element(slurp(path), fallback());
    adopt(g.spec_ptr());
    return g;
  }
  ConeTuple tuple(std::string const& path) {
    auto t = read_cone_tuple(slurp(path), fallback());
    adopt(t.front().spec_ptr());
    return t;
  }
  FiniteSubgroup group(std::string const& path, std::size_t cap) {
    auto gens = read_group(slurp(path), fallback());
    adopt(gens.front().spec_ptr());
    return close_subgroup(gens.front().spec_ptr(), gens, cap);
  }
};

std::size_t env_cap(std::size_t dflt) {
  if (auto const* v = std::getenv("CANTORV_CAP")) {
    try {
      return static_cast<std::size_t>(std::stoull(v));
    } catch (std::exception const&) {
      throw UsageError("CANTORV_CAP must be a positive integer");
    }
  }
  return dflt;
}

void print_tuple(ConeTuple const& t) {
  if (t.size() == 1) {
    std::cout << render_cone(t.front());
  } else {
    std::cout << render_cone_tuple(t);
  }
}

void print_ints(std::string const& key, std::vector<int> const& v) {
  std::cout << key << '=';
  for (std::size_t k = 0; k < v.size(); ++k) {
    std::cout << (k ? "," : "") << v[k];
  }
  std::cout << '\n';
}

void print_f_vector(SimplicialComplex const& k) {
  std::cout << "dim\tsimplices\n";
  auto f = k.f_vector();
  for (std::size_t d = 0; d < f.size(); ++d) {
    std::cout << d << '\t' << f[d] << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in Brin-like Higman-Thompson groups V_r(Sigma)", "cantor-v"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--spec", opt.spec_path, "Algebra specification (.alg); optional when files carry a spec: header")
      ->check(CLI::ExistingFile);

  std::function<void()> action;
  std::string a, b;
  std::size_t leaf = 0, max_size = 4, cap = 64, size = 6, factor = 0, n = 2;
  int color = 0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> indices;
  std::string group_path, kernel_path, link_path, vertex_path, part = "full", geometric;
  bool very = false, rational = false, emit_kernel = false;

  auto file_arg = [](CLI::App* c, std::string const& name, std::string& target,
                     std::string const& desc) {
    c->add_option(name, target, desc)->required()->check(CLI::ExistingFile);
  };
  auto group_opt = [&](CLI::App* c) {
    c->add_option("--group", group_path, "Generators of a finite subgroup (.grp)")
        ->required()
        ->check(CLI::ExistingFile);
    c->add_option("--cap", cap, "Closure cap for the subgroup")->capture_default_str();
  };

  // spec
  auto* spec_cmd = app.add_subcommand("spec", "Algebra specifications")->require_subcommand(1);
  auto* spec_check = spec_cmd->add_subcommand("check", "Validate a specification");
  file_arg(spec_check, "file", a, "Specification (.alg)");
  spec_check->callback([&] {
    action = [&] {
      auto text = slurp(a);
      try {
        auto s = parse_spec(text);
        std::cout << "valid; d=" << compute_d(s) << "; blocks=" << s.block_count()
                  << "; complete=" << yes_no(is_complete(s)) << '\n';
      } catch (SpecError const& e) {
        std::cout << "invalid; " << e.what() << '\n';
        throw;
      }
    };
  });
  auto* spec_norm = spec_cmd->add_subcommand("normalize", "Canonical form and normalized roots");
  file_arg(spec_norm, "file", a, "Specification (.alg)");
  spec_norm->callback([&] {
    action = [&] {
      auto s = parse_spec(slurp(a));
      std::cout << s.render() << "\n# roots mod d: " << s.normalized_roots() << '\n';
    };
  });

  // basis
  auto* basis_cmd = app.add_subcommand("basis", "Admissible bases")->require_subcommand(1);
  auto* b_expand = basis_cmd->add_subcommand("expand", "Expand one leaf");
  file_arg(b_expand, "basis", a, "Basis (.basis)");
  b_expand->add_option("--leaf", leaf, "Canonical leaf index")->required();
  b_expand->add_option("--color", color, "Color index")->required();
  b_expand->callback([&] {
    action = [&] { std::cout << render_basis(expand(opt.basis(a), leaf, color)); };
  });
  auto* b_contract = basis_cmd->add_subcommand("contract", "Contract a sibling family");
  file_arg(b_contract, "basis", a, "Basis (.basis)");
  b_contract->add_option("--leaves", indices, "Comma separated leaf indices")
      ->required()
      ->delimiter(',');
  b_contract->add_option("--color", color, "Color index")->required();
  b_contract->callback([&] {
    action = [&] {
      auto x = opt.basis(a);
      std::vector<Leaf> fam;
      for (auto i : indices) {
        if (i >= x.size()) {
          throw InvalidArgument("leaf index " + std::to_string(i) + " out of range");
        }
        fam.push_back(x[i]);
      }
      std::cout << render_basis(contract(x, fam, color));
    };
  });
  auto* b_adm = basis_cmd->add_subcommand("admissible", "Decide reachability from X");
  file_arg(b_adm, "basis", a, "Leaf set (.basis)");
  b_adm->callback([&] {
    action = [&] {
      SpecPtr s;
      auto leaves = read_leaves(slurp(a), opt.fallback(), &s);
      std::cout << "admissible=" << yes_no(is_admissible(*s, leaves).admissible) << '\n';
    };
  });
  auto binary_basis = [&](std::string const& name, std::string const& desc,
                          std::function<void(Basis const&, Basis const&)> f) {
    auto* c = basis_cmd->add_subcommand(name, desc);
    file_arg(c, "a", a, "First basis");
    file_arg(c, "b", b, "Second basis");
    c->callback([&, f] {
      action = [&, f] {
        auto x = opt.basis(a);
        auto y = opt.basis(b);
        f(x, y);
      };
    });
  };
  binary_basis("leq", "Whether b is an expansion of a", [](Basis const& x, Basis const& y) {
    std::cout << yes_no(leq(x, y)) << '\n';
  });
  binary_basis("lub", "Least upper bound", [](Basis const& x, Basis const& y) {
    std::cout << render_basis(lub(x, y));
  });
  binary_basis("glb", "Greatest lower bound", [](Basis const& x, Basis const& y) {
    std::cout << render_basis(glb(x, y));
  });
  binary_basis("core", "glb(E(a), b) for a < b", [](Basis const& x, Basis const& y) {
    std::cout << render_basis(elementary_core(x, y));
  });
  auto* b_enum = basis_cmd->add_subcommand("enumerate", "All bases >= X up to a size");
  b_enum->add_option("--max-size", max_size, "Largest basis size")->required();
  b_enum->callback([&] {
    action = [&] {
      auto const& s = opt.require_spec();
      auto all = enumerate_bases(s, max_size, env_cap(default_enumeration_cap()));
      std::cout << "# count=" << all.size() << '\n' << render_basis_list(all, s);
    };
  });

  // elem
  auto* elem_cmd = app.add_subcommand("elem", "Group elements; a product g1*g2 applies g2 first")
                       ->require_subcommand(1);
  auto unary_elem = [&](std::string const& name, std::string const& desc,
                        std::function<void(Element const&)> f) {
    auto* c = elem_cmd->add_subcommand(name, desc);
    file_arg(c, "g", a, "Element (.elem)");
    c->callback([&, f] { action = [&, f] { f(opt.element(a)); }; });
    return c;
  };
  auto binary_elem = [&](std::string const& name, std::string const& desc,
                         std::function<void(Element const&, Element const&)> f) {
    auto* c = elem_cmd->add_subcommand(name, desc);
    file_arg(c, "g1", a, "First element (.elem)");
    file_arg(c, "g2", b, "Second element (.elem)");
    c->callback([&, f] {
      action = [&, f] {
        auto g = opt.element(a);
        auto h = opt.element(b);
        f(g, h);
      };
    });
  };
  binary_elem("mul", "The product g1*g2", [](Element const& g, Element const& h) {
    std::cout << render_element(compose(g, h));
  });
  binary_elem("eq", "Equality as maps", [](Element const& g, Element const& h) {
    std::cout << yes_no(equals(g, h)) << '\n';
  });
  unary_elem("inv", "Inverse", [](Element const& g) { std::cout << render_element(invert(g)); });
  unary_elem("reduce", "Reduced diagram", [](Element const& g) {
    std::cout << render_element(reduce(g));
  });
  unary_elem("order", "Order up to --cap", [&](Element const& g) {
    auto o = order_of(g, cap);
    if (o) {
      std::cout << "order=" << *o << '\n';
    } else {
      std::cout << "order>" << cap << '\n';
    }
  })->add_option("--cap", cap, "Largest order tried")->capture_default_str();
  auto* e_random = elem_cmd->add_subcommand("random", "Seeded random element");
  e_random->add_option("--seed", seed, "Random seed")->required();
  e_random->add_option("--size", size, "Largest diagram size")->capture_default_str();
  e_random->callback([&] {
    action = [&] { std::cout << render_element(random_element(opt.require_spec(), size, seed)); };
  });
  auto* e_perm = elem_cmd->add_subcommand("perm", "Permutation of the leaves of a basis");
  file_arg(e_perm, "basis", a, "Basis (.basis)");
  e_perm->add_option("--perm", indices, "Image of each canonical leaf index")
      ->required()
      ->delimiter(',');
  e_perm->callback([&] {
    action = [&] { std::cout << render_element(permutation_element(opt.basis(a), indices)); };
  });
  auto* e_rep = elem_cmd->add_subcommand("represent-on", "A diagram of g with the given domain");
  file_arg(e_rep, "g", a, "Element (.elem)");
  file_arg(e_rep, "basis", b, "Domain (.basis)");
  e_rep->callback([&] {
    action = [&] {
      auto g = opt.element(a);
      auto y = opt.basis(b);
      auto r = represent_on(g, y);
      if (!r) {
        throw InvalidArgument("g has no diagram with this domain");
      }
      std::cout << render_element(Element(y, r->range, r->perm), true);
    };
  });

  // cone
  auto* cone_cmd = app.add_subcommand("cone", "Cones and cone tuples")->require_subcommand(1);
  auto binary_cone = [&](std::string const& name, std::string const& desc,
                         std::function<void(ConeTuple const&, ConeTuple const&)> f) {
    auto* c = cone_cmd->add_subcommand(name, desc);
    file_arg(c, "u", a, "First cone or tuple (.cone)");
    file_arg(c, "v", b, "Second cone or tuple (.cone)");
    c->callback([&, f] {
      action = [&, f] {
        auto x = opt.tuple(a);
        auto y = opt.tuple(b);
        f(x, y);
      };
    });
  };
  auto single = [](ConeTuple const& t) -> Cone const& {
    if (t.size() != 1) {
      throw InvalidArgument("expected a single cone, got a tuple");
    }
    return t.front();
  };
  binary_cone("eq", "Equality as point sets", [](ConeTuple const& x, ConeTuple const& y) {
    std::cout << yes_no(tuple_equals(x, y)) << '\n';
  });
  binary_cone("disjoint", "Disjointness of two cones", [&](ConeTuple const& x, ConeTuple const& y) {
    std::cout << yes_no(cone_disjoint(single(x), single(y))) << '\n';
  });
  binary_cone("witness", "An element carrying the first tuple to the second",
              [](ConeTuple const& x, ConeTuple const& y) {
                auto g = tuple_witness(x, y);
                if (!g) {
                  throw InvalidArgument("no element carries the first tuple to the second");
                }
                std::cout << render_element(*g);
              });
  auto* c_norm = cone_cmd->add_subcommand("norm", "Norm of a cone");
  file_arg(c_norm, "u", a, "Cone (.cone)");
  c_norm->callback([&] {
    action = [&] {
      auto v = cone_norm(single(opt.tuple(a)));
      std::cout << "norm=" << v << '\n';
    };
  });
  auto* c_act = cone_cmd->add_subcommand("act", "Image of a cone or tuple under g");
  file_arg(c_act, "g", a, "Element (.elem)");
  file_arg(c_act, "u", b, "Cone or tuple (.cone)");
  c_act->callback([&] {
    action = [&] {
      auto g = opt.element(a);
      print_tuple(act(g, opt.tuple(b)));
    };
  });
  auto* c_class = cone_cmd->add_subcommand("classify", "Norm tuple of a covering disjoint tuple");
  file_arg(c_class, "t", a, "Tuple (.cone)");
  c_class->callback([&] {
    action = [&] {
      auto t = opt.tuple(a);
      print_ints("norms", tuple_classify(t));
      std::cout << "stabilizer=" << tuple_stabilizer_shape(t).render() << '\n';
    };
  });
  auto* c_disj = cone_cmd->add_subcommand("disjointify", "Refine a covering tuple to a disjoint one");
  file_arg(c_disj, "t", a, "Tuple (.cone)");
  c_disj->callback([&] { action = [&] { print_tuple(disjointify(opt.tuple(a))); }; });

  // centralizer
  auto* cen_cmd = app.add_subcommand("centralizer", "Centralizers of finite subgroups")
                      ->require_subcommand(1);
  auto* cen_an = cen_cmd->add_subcommand("analyze", "Orbit types and the product decomposition");
  group_opt(cen_an);
  cen_an->callback([&] {
    action = [&] { std::cout << centralizer_structure(opt.group(group_path, cap)).render(); };
  });
  auto kernel_of = [&](CentralizerStructure const& c) {
    if (!kernel_path.empty()) {
      return read_kernel(slurp(kernel_path), c);
    }
    return random_kernel_element(c, factor, size, seed);
  };
  auto* cen_bk = cen_cmd->add_subcommand("build-kernel", "Element of K_i from a kernel file or a seed");
  group_opt(cen_bk);
  auto* kopt = cen_bk->add_option("--kernel", kernel_path, "Kernel element (.kern)")
                   ->check(CLI::ExistingFile);
  cen_bk->add_option("--seed", seed, "Random seed for a random kernel element")->excludes(kopt);
  cen_bk->add_option("--factor", factor, "Factor index for --seed")->capture_default_str();
  cen_bk->add_option("--size", size, "Quotient basis size bound for --seed")->capture_default_str();
  cen_bk->add_flag("--emit-kernel", emit_kernel, "Print the kernel element instead of its image");
  cen_bk->callback([&] {
    if (kernel_path.empty() && cen_bk->count("--seed") == 0) {
      throw CLI::RequiredError("--kernel or --seed");
    }
    action = [&] {
      auto c = centralizer_structure(opt.group(group_path, cap));
      auto k = kernel_of(c);
      std::cout << (emit_kernel ? render_kernel(c, k) : render_element(build_kernel_element(c, k)));
    };
  });
  auto* cen_enc = cen_cmd->add_subcommand("encode", "Cone tuple of a kernel element");
  group_opt(cen_enc);
  cen_enc->add_option("--kernel", kernel_path, "Kernel element (.kern)")
      ->required()
      ->check(CLI::ExistingFile);
  cen_enc->callback([&] {
    action = [&] {
      auto c = centralizer_structure(opt.group(group_path, cap));
      print_tuple(encode_kernel_element(c, read_kernel(slurp(kernel_path), c)));
    };
  });
  auto* cen_lift = cen_cmd->add_subcommand("lift", "Splitting lift of an element of V_{r_i}");
  group_opt(cen_lift);
  cen_lift->add_option("--factor", factor, "Factor index")->capture_default_str();
  file_arg(cen_lift, "v", a, "Element over the quotient spec (.elem)");
  cen_lift->callback([&] {
    action = [&] {
      auto c = centralizer_structure(opt.group(group_path, cap));
      if (factor >= c.factors.size()) {
        throw InvalidArgument("no factor " + std::to_string(factor));
      }
      auto v = read_element(slurp(a), c.factors[factor].quotient);
      std::cout << render_element(splitting_lift(c, factor, v));
    };
  });

  // normalizer
  auto* nor_cmd = app.add_subcommand("normalizer", "Normalizers and Weyl groups")->require_subcommand(1);
  auto* nor_an = nor_cmd->add_subcommand("analyze", "N(Q)/C(Q) inside S(Y)");
  group_opt(nor_an);
  nor_an->callback([&] {
    action = [&] {
      std::cout << normalizer_analysis(opt.group(group_path, cap), env_cap(40320)).render();
    };
  });

  // stein
  auto* st_cmd = app.add_subcommand("stein", "Stein complexes and descending links (TSV)")
                     ->require_subcommand(1);
  auto* st_build = st_cmd->add_subcommand("build", "Simplex counts of the complex up to a size");
  st_build->add_option("--max-size", max_size, "Largest basis size")->required();
  st_build->callback([&] {
    action = [&] {
      auto bc = build_stein(opt.require_spec(), max_size);
      std::cout << "vertices\t" << bc.vertices.size() << '\n';
      print_f_vector(bc.complex);
    };
  });
  auto* st_link = st_cmd->add_subcommand("link", "Vertices and simplex counts of L(A)");
  file_arg(st_link, "a", a, "Basis A (.basis)");
  st_link->add_flag("--very", very, "Very elementary link L_0(A)");
  st_link->callback([&] {
    action = [&] {
      auto x = opt.basis(a);
      auto lk = very ? very_elementary_link(x) : descending_link(x);
      std::cout << "vertex\tsize\theight\n";
      for (std::size_t k = 0; k < lk.vertices.size(); ++k) {
        std::cout << k << '\t' << lk.vertices[k].size() << '\t'
                  << height(x, lk.vertices[k]).render() << '\n';
      }
      std::cout << '\n';
      print_f_vector(lk.complex);
    };
  });
  auto* st_heights = st_cmd->add_subcommand("heights", "Height and link case of every vertex of L(A)");
  file_arg(st_heights, "a", a, "Basis A (.basis)");
  st_heights->callback([&] {
    action = [&] {
      auto x = opt.basis(a);
      auto lk = descending_link(x);
      std::cout << "vertex\tsize\theight\tcase\tdown\tup\n";
      for (std::size_t k = 0; k < lk.vertices.size(); ++k) {
        auto h = h_descending_link(x, lk.vertices[k]);
        std::cout << k << '\t' << lk.vertices[k].size() << '\t'
                  << height(x, lk.vertices[k]).render() << '\t' << h.link_case << '\t'
                  << h.down_count << '\t' << h.vertices.size() - h.down_count << '\n';
      }
    };
  });
  auto* st_hom = st_cmd->add_subcommand("homology", "Reduced Betti numbers");
  auto* hs = st_hom->add_option("--max-size", max_size, "Stein complex up to this size");
  auto* hl = st_hom->add_option("--link", link_path, "Descending link of this basis")
                 ->check(CLI::ExistingFile);
  st_hom->add_option("--vertex", vertex_path, "With --link: h-link of this vertex of L(A)")
      ->check(CLI::ExistingFile)
      ->needs(hl);
  st_hom->add_option("--part", part, "h-link part: full, down or up")
      ->check(CLI::IsMember({"full", "down", "up"}))
      ->capture_default_str();
  st_hom->add_flag("--very", very, "With --link: use L_0(A)");
  st_hom->add_flag("--rational", rational, "Also compute ranks over Q");
  hs->excludes(hl);
  st_hom->callback([&] {
    if (st_hom->count("--max-size") == 0 && link_path.empty()) {
      throw CLI::RequiredError("--max-size or --link");
    }
    action = [&] {
      SimplicialComplex k;
      if (!link_path.empty()) {
        auto x = opt.basis(link_path);
        if (!vertex_path.empty()) {
          auto h = h_descending_link(x, opt.basis(vertex_path));
          k = part == "down" ? h.downlink : part == "up" ? h.uplink : h.complex;
        } else {
          k = (very ? very_elementary_link(x) : descending_link(x)).complex;
        }
      } else {
        k = build_stein(opt.require_spec(), max_size).complex;
      }
      std::cout << homology(k, rational, env_cap(20000)).render_tsv();
    };
  });
  auto* st_kn = st_cmd->add_subcommand("kn", "Model complex K_n or the family complex of a basis");
  st_kn->add_option("--n", n, "Number of labelled points")->capture_default_str();
  st_kn->add_option("--geometric", geometric, "Family complex of this basis instead")
      ->check(CLI::ExistingFile);
  st_kn->add_flag("--rational", rational, "Also compute ranks over Q");
  st_kn->callback([&] {
    action = [&] {
      auto k = geometric.empty() ? model_Kn(*opt.require_spec(), n)
                                 : geometric_Kn(opt.basis(geometric));
      std::cout << "vertices\t" << k.vertex_count << '\n';
      std::cout << homology(k, rational, env_cap(20000)).render_tsv();
    };
  });

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    auto code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    action();
  } catch (UsageError const& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (cantorv::Error const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
