#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>

#include "cantorv/cantor_terms.hpp"

// Also fails the run if any basis built by the tests broke |B| = r mod d.
int main(int argc, char** argv) {
  doctest::Context ctx(argc, argv);
  int rc = ctx.run();
  auto audit = cantorv::mod_d_audit();
  if (audit.violations > 0) {
    std::fprintf(stderr, "mod-d audit: %llu violations in %llu bases\n",
                 static_cast<unsigned long long>(audit.violations),
                 static_cast<unsigned long long>(audit.checked));
    return rc ? rc : 1;
  }
  return rc;
}
