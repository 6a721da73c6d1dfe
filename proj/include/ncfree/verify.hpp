#ifndef NCFREE_VERIFY_HPP
#define NCFREE_VERIFY_HPP

#include <random>
#include <string>
#include <vector>

#include "ncfree/free_ops.hpp"

namespace ncfree {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  int max_n = 5;    // largest ground-set size for exhaustive lattice sweeps
  int order = 6;    // truncation order for distribution-level checks
  int trials = 10;  // randomized repetitions (suites enforce their own minimums)
  unsigned long long seed = 1;
};

/// Names of the individual suites, in report order.
const std::vector<std::string>& verify_suite_names();

/// Runs one named suite ("all" runs every suite) and returns one result
/// per check. Unknown names are an error.
std::vector<CheckResult> run_verify_suite(const std::string& name, const VerifyOptions& options);

/// Uniform random exact rationals on every word of the table domain.
MomentFunctional random_moment_functional(int order, const std::vector<std::string>& names,
                                          std::mt19937_64& rng, int magnitude = 4);
CumulantTable random_cumulant_table(int order, const std::vector<std::string>& names,
                                    std::mt19937_64& rng, int magnitude = 4);
/// Random alternating-cumulant data; tracial forces beta = alpha.
RDiagonalSpec random_rdiag_spec(int order, std::mt19937_64& rng, int magnitude = 4,
                                bool tracial = false);
/// Random tracial functional: values constant on cyclic rotation classes.
MomentFunctional random_tracial_functional(int order, const std::vector<std::string>& names,
                                           std::mt19937_64& rng, int magnitude = 4);

Rational random_rational(std::mt19937_64& rng, int magnitude);

}  // namespace ncfree

#endif
