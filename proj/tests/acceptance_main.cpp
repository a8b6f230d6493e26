// Acceptance gate: runs every criterion and prints one line per result as
// it completes.
#include <cstdio>
#include <string>

#include "stab/validation.hpp"

int main(int argc, char** argv) {
  stab::ValidationOptions options;
  if (argc > 1) options.only = argv[1];
  const auto results =
      stab::run_acceptance(options, [](const stab::CriterionResult& r) {
        std::printf("[%s] %-28s %s (%.1f s)\n", r.pass ? "PASS" : "FAIL",
                    r.id.c_str(), r.detail.c_str(), r.seconds);
        std::fflush(stdout);
      });
  bool all_pass = true;
  for (const auto& r : results) all_pass = all_pass && r.pass;
  std::printf("%zu criteria, %s\n", results.size(),
              all_pass ? "all passed" : "FAILURES PRESENT");
  return all_pass ? 0 : 1;
}
