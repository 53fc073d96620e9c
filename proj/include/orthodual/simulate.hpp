#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "orthodual/statespace.hpp"
#include "orthodual/verify.hpp"

namespace orthodual {

/// Philox4x32-10 counter-based generator.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key);

  /// Stream `stream` of the generator seeded by `seed`: key = seed, counter
  /// words 2..3 = stream, words 0..1 count blocks.
  Philox4x32(std::uint64_t seed, std::uint64_t stream);

  std::uint32_t next_u32();
  /// Uniform in (0, 1) with 53 random bits.
  double uniform();
  /// Exp(1).
  double exponential();

 private:
  Key key_;
  Counter ctr_;
  Counter buf_{};
  int used_ = 4;
};

struct ProcessSpec {
  ProcessKind kind = ProcessKind::Sep;
  int n = 1;
  Graph graph;
};

struct Trajectory {
  Configuration initial;
  std::vector<double> times;             // strictly increasing, <= horizon
  std::vector<Configuration> states;     // state entered at times[k]
  double horizon = 0.0;

  const Configuration& final_state() const { return states.empty() ? initial : states.back(); }
};

/// Exact-in-law path on [0, T] from `initial`, drawing from (seed, stream).
Trajectory gillespie_run(const ProcessSpec& process, const Configuration& initial, double T, std::uint64_t seed,
                         std::uint64_t stream = 0);

/// "time,rank" lines, the initial state at time 0 first.
void write_trajectory(std::ostream& out, const Trajectory& traj, const ConfigSpace& space);

/// Worker count: ORTHODUAL_THREADS when set to a positive integer, else 1.
int default_thread_count();

struct McDualityResult {
  double mean_forward = 0.0;
  double mean_dual = 0.0;
  double stderr_forward = 0.0;
  double stderr_dual = 0.0;
  std::size_t samples = 0;
  double z = 0.0;  // |mean_forward - mean_dual| / sqrt(se_f^2 + se_d^2), 0 when both are exact
  std::optional<double> exact;         // (exp(T L) D)[xi0, eta0]
  std::optional<double> exact_dual;    // (D exp(T L')^T)[xi0, eta0]
  std::optional<double> z_forward_exact;
  std::optional<double> z_dual_exact;
};

/// Forward runs from xi0 (rank in D's row space) score D(xi_T, eta0); dual
/// runs from eta0 (rank in D's column space) score D(xi0, eta_T). Sample i
/// uses streams 2i and 2i+1, so results do not depend on `threads`.
McDualityResult mc_duality_test(const ProcessSpec& process, const DualityMatrix& d, std::size_t xi0,
                                std::size_t eta0, double T, std::size_t samples, std::uint64_t seed,
                                int threads = 0);

/// Empirical law of the state at time T over `samples` runs, indexed by rank.
std::vector<double> empirical_law(const ProcessSpec& process, const ConfigSpace& space, std::size_t start, double T,
                                  std::size_t samples, std::uint64_t seed, int threads = 0);

/// Pairwise (cascade) sum.
double pairwise_sum(const double* v, std::size_t n);

}  // namespace orthodual
