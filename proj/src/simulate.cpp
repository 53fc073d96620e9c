#include "orthodual/simulate.hpp"

#include <cmath>
#include <cstdlib>
#include <ostream>
#include <thread>

#include "orthodual/error.hpp"
#include "orthodual/expm.hpp"
#include "orthodual/generators.hpp"

namespace orthodual {
namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

std::vector<Move> moves(const ProcessSpec& process, const Configuration& c) {
  return process.kind == ProcessKind::Sep ? sep_moves(c, process.graph.edges(), process.n)
                                          : irw_moves(c, process.graph.edges(), process.n);
}

// Runs body(i) for i in [0, count) over `threads` workers in contiguous chunks.
template <class Body>
void parallel_for(std::size_t count, int threads, Body body) {
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
};

MeanStderr summarize(const std::vector<double>& v) {
  const std::size_t n = v.size();
  MeanStderr out;
  out.mean = pairwise_sum(v.data(), n) / static_cast<double>(n);
  if (n < 2) return out;
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) sq[i] = (v[i] - out.mean) * (v[i] - out.mean);
  const double var = pairwise_sum(sq.data(), n) / static_cast<double>(n - 1);
  out.stderr_ = std::sqrt(var / static_cast<double>(n));
  return out;
}

}  // namespace

Philox4x32::Counter Philox4x32::block(Counter c, Key k) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      k[0] += kW0;
      k[1] += kW1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kM0, c[0], hi0, lo0);
    mulhilo(kM1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }
  return c;
}

Philox4x32::Philox4x32(std::uint64_t seed, std::uint64_t stream)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      ctr_{0, 0, static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)} {}

std::uint32_t Philox4x32::next_u32() {
  if (used_ == 4) {
    buf_ = block(ctr_, key_);
    if (++ctr_[0] == 0) ++ctr_[1];
    used_ = 0;
  }
  return buf_[static_cast<std::size_t>(used_++)];
}

double Philox4x32::uniform() {
  const std::uint64_t a = next_u32() >> 5;
  const std::uint64_t b = next_u32() >> 6;
  return (static_cast<double>((a << 26) | b) + 0.5) * 0x1.0p-53;
}

double Philox4x32::exponential() { return -std::log(uniform()); }

Trajectory gillespie_run(const ProcessSpec& process, const Configuration& initial, double T, std::uint64_t seed,
                         std::uint64_t stream) {
  if (!(T >= 0.0)) throw Error(ErrorCode::InvalidArgument, "horizon must be nonnegative");
  const int width = process.kind == ProcessKind::Sep ? process.n + 1 : process.n;
  if (initial.num_sites() != process.graph.num_sites() || initial.width() != width) {
    throw Error(ErrorCode::DimensionMismatch, "initial state does not match the process");
  }
  Trajectory traj;
  traj.initial = initial;
  traj.horizon = T;
  Philox4x32 rng(seed, stream);
  Configuration current = initial;
  double t = 0.0;
  for (;;) {
    const std::vector<Move> out = moves(process, current);
    double total = 0.0;
    for (const auto& m : out) total += m.rate;
    if (total <= 0.0) break;
    t += rng.exponential() / total;
    if (t > T) break;
    const double u = rng.uniform() * total;
    double acc = 0.0;
    std::size_t pick = out.size() - 1;
    for (std::size_t k = 0; k < out.size(); ++k) {
      acc += out[k].rate;
      if (u < acc) {
        pick = k;
        break;
      }
    }
    current = out[pick].target;
    traj.times.push_back(t);
    traj.states.push_back(current);
  }
  return traj;
}

void write_trajectory(std::ostream& out, const Trajectory& traj, const ConfigSpace& space) {
  const auto old = out.precision(17);
  out << "time,rank\n0," << space.rank(traj.initial) << '\n';
  for (std::size_t k = 0; k < traj.times.size(); ++k) out << traj.times[k] << ',' << space.rank(traj.states[k]) << '\n';
  out.precision(old);
}

int default_thread_count() {
  if (const char* env = std::getenv("ORTHODUAL_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 1024) return static_cast<int>(v);
  }
  return 1;
}

double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

McDualityResult mc_duality_test(const ProcessSpec& process, const DualityMatrix& d, std::size_t xi0,
                                std::size_t eta0, double T, std::size_t samples, std::uint64_t seed, int threads) {
  if (samples == 0) throw Error(ErrorCode::InvalidArgument, "mc_duality_test needs samples > 0");
  if (xi0 >= d.rows() || eta0 >= d.cols()) throw Error(ErrorCode::InvalidArgument, "start state outside the space");
  if (threads <= 0) threads = default_thread_count();
  const ConfigSpace& sa = d.row_space();
  const ConfigSpace& sb = d.col_space();
  const Eigen::VectorXd col = d.column(eta0);
  Eigen::VectorXd row(static_cast<Eigen::Index>(d.cols()));
  d.row(xi0, row);
  const Configuration start_a = sa.unrank(xi0);
  const Configuration start_b = sb.unrank(eta0);
  std::vector<double> fwd(samples), dual(samples);
  parallel_for(samples, threads, [&](std::size_t i) {
    const Trajectory a = gillespie_run(process, start_a, T, seed, 2 * i);
    fwd[i] = col(static_cast<Eigen::Index>(sa.rank(a.final_state())));
    const Trajectory b = gillespie_run(process, start_b, T, seed, 2 * i + 1);
    dual[i] = row(static_cast<Eigen::Index>(sb.rank(b.final_state())));
  });
  McDualityResult res;
  res.samples = samples;
  const MeanStderr f = summarize(fwd);
  const MeanStderr g = summarize(dual);
  res.mean_forward = f.mean;
  res.mean_dual = g.mean;
  res.stderr_forward = f.stderr_;
  res.stderr_dual = g.stderr_;
  const double se = std::hypot(f.stderr_, g.stderr_);
  const double diff = std::abs(f.mean - g.mean);
  res.z = se > 0.0 ? diff / se : (diff == 0.0 ? 0.0 : INFINITY);
  if (sa.size() <= kExpmReferenceLimit && sb.size() <= kExpmReferenceLimit) {
    const SparseOperator la = process.kind == ProcessKind::Sep ? sep_generator(sa, process.graph)
                                                               : irw_generator(sa, process.graph);
    const SparseOperator lb = process.kind == ProcessKind::Sep ? sep_generator(sb, process.graph)
                                                               : irw_generator(sb, process.graph);
    res.exact = expm_action(la.matrix(), col, T).value(static_cast<Eigen::Index>(xi0));
    res.exact_dual = expm_action(lb.matrix(), row, T).value(static_cast<Eigen::Index>(eta0));
    auto zscore = [](double mean, double se_, double ref) {
      const double dd = std::abs(mean - ref);
      return se_ > 0.0 ? dd / se_ : (dd <= 1e-12 * std::max(1.0, std::abs(ref)) ? 0.0 : INFINITY);
    };
    res.z_forward_exact = zscore(f.mean, f.stderr_, *res.exact);
    res.z_dual_exact = zscore(g.mean, g.stderr_, *res.exact_dual);
  }
  return res;
}

std::vector<double> empirical_law(const ProcessSpec& process, const ConfigSpace& space, std::size_t start, double T,
                                  std::size_t samples, std::uint64_t seed, int threads) {
  if (samples == 0) throw Error(ErrorCode::InvalidArgument, "empirical_law needs samples > 0");
  if (threads <= 0) threads = default_thread_count();
  const Configuration s0 = space.unrank(start);
  std::vector<std::size_t> finals(samples);
  parallel_for(samples, threads, [&](std::size_t i) {
    finals[i] = space.rank(gillespie_run(process, s0, T, seed, i).final_state());
  });
  std::vector<double> law(space.size(), 0.0);
  for (std::size_t r : finals) law[r] += 1.0;
  for (double& v : law) v /= static_cast<double>(samples);
  return law;
}

}  // namespace orthodual
