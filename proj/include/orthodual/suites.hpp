#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "orthodual/krawtchouk.hpp"
#include "orthodual/report.hpp"
#include "orthodual/simulate.hpp"

namespace orthodual {

struct SuiteOptions {
  std::uint64_t seed = 20240917;
  std::size_t mc_samples = 100000;
  int threads = 0;  // 0: default_thread_count()
  bool timings = false;
};

struct SuiteResult {
  int id = 0;
  std::string name;
  std::vector<CheckRecord> records;
  double seconds = 0.0;        // always measured
  double time_budget = 0.0;    // seconds
  bool pass = false;           // every record passes
};

inline constexpr int kSuiteCount = 10;

std::string suite_name(int id);
/// Runs acceptance criterion `id` (1..kSuiteCount).
SuiteResult run_suite(int id, const SuiteOptions& options);

/// Strictly positive probability vector of length m: a Dirichlet(shape) draw
/// with integer shape.
Eigen::VectorXd random_probability(Philox4x32& rng, int m, int shape = 1);
/// kappa_from_p of a Dirichlet(2) draw.
Kappa random_kappa(Philox4x32& rng, int n);

}  // namespace orthodual
