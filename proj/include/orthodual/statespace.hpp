#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace orthodual {

/// Particle counts at one site. SEP: (xi_0, ..., xi_n) with xi_0 the holes.
/// IRW: (xi_1, ..., xi_n).
using SiteConfig = std::vector<int>;

/// Edge between two sites, stored 0-based with x < y.
struct Edge {
  int x = 0;
  int y = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

class Graph {
 public:
  Graph() = default;

  int num_sites() const { return num_sites_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::string describe() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  friend Graph build_graph(int, const std::vector<std::pair<int, int>>&);
  int num_sites_ = 0;
  std::vector<Edge> edges_;
};

/// Validates a graph given with 1-based endpoints. Edge order is kept.
Graph build_graph(int num_sites, const std::vector<std::pair<int, int>>& edges);

/// Edge-list text: first line "L", then one "x y" pair per line (1-based).
/// Blank lines and lines starting with '#' are ignored.
Graph parse_graph(std::istream& in);
Graph read_graph_file(const std::string& path);
std::string format_graph(const Graph& graph);

/// Presets: "single", "edge", "triangle", "path-k"/"pathk", "cycle-k", "complete-k".
Graph preset_graph(std::string_view name);

/// Graph with the same sites as `graph` and only the edge {x, y}.
Graph single_edge_graph(const Graph& graph, const Edge& edge);

/// Binomial coefficient, saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Multinomial coefficient (sum c)! / prod c_i!.
double multinomial(std::span<const int> counts);

/// Rank/unrank of weak compositions of `total` into `parts` parts, in
/// reverse-lexicographic order: (total, 0, ..., 0) has rank 0 and
/// (0, ..., 0, total) has rank size() - 1.
class CompositionIndexer {
 public:
  CompositionIndexer() = default;
  CompositionIndexer(int total, int parts);

  int total() const { return total_; }
  int parts() const { return parts_; }
  std::size_t size() const { return size_; }

  std::size_t rank(std::span<const int> composition) const;
  void unrank(std::size_t r, std::span<int> out) const;
  SiteConfig unrank(std::size_t r) const;

 private:
  // Number of compositions of t into k parts.
  std::size_t count(int t, int k) const;
  int total_ = 0;
  int parts_ = 1;
  std::size_t size_ = 1;
};

enum class ProcessKind { Sep, Irw };

/// A configuration on all sites, stored site-major.
class Configuration {
 public:
  Configuration() = default;
  Configuration(int num_sites, int width) : width_(width), counts_(static_cast<std::size_t>(num_sites * width), 0) {}

  int num_sites() const { return width_ == 0 ? 0 : static_cast<int>(counts_.size()) / width_; }
  int width() const { return width_; }
  int& at(int site, int species) { return counts_[static_cast<std::size_t>(site * width_ + species)]; }
  int at(int site, int species) const { return counts_[static_cast<std::size_t>(site * width_ + species)]; }
  std::span<const int> site(int x) const { return {counts_.data() + x * width_, static_cast<std::size_t>(width_)}; }
  std::span<int> site(int x) { return {counts_.data() + x * width_, static_cast<std::size_t>(width_)}; }
  const std::vector<int>& counts() const { return counts_; }
  std::string to_string() const;

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  int width_ = 0;
  std::vector<int> counts_;
};

/// An exactly enumerated state space: a SEP space Omega_{2j}^L or an IRW
/// sector with fixed species totals. Immutable after construction.
///
/// SEP ordering: per-site reverse-lexicographic on (xi_0..xi_n), sites
/// combined by mixed radix with site 1 most significant.
/// IRW ordering: per species, the placement (xi_i^1..xi_i^L) is ranked
/// reverse-lexicographically; species combined by mixed radix with species
/// 1 most significant.
class ConfigSpace {
 public:
  static constexpr std::size_t kDefaultCap = 10'000'000;

  ConfigSpace() = default;

  ProcessKind kind() const { return kind_; }
  const Graph& graph() const { return graph_; }
  int species() const { return n_; }
  int two_j() const { return two_j_; }
  const std::vector<int>& totals() const { return totals_; }
  int num_sites() const { return graph_.num_sites(); }
  /// Entries per site in a Configuration: n+1 for SEP, n for IRW.
  int site_width() const { return kind_ == ProcessKind::Sep ? n_ + 1 : n_; }
  std::size_t size() const { return size_; }

  /// SEP only: number of single-site states C(2j+n, n).
  std::size_t local_size() const { return local_.size(); }
  const CompositionIndexer& local_indexer() const { return local_; }

  std::size_t rank(const Configuration& c) const;
  Configuration unrank(std::size_t r) const;
  bool contains(const Configuration& c) const;

  /// Same parameters (kind, n, 2j or totals, graph).
  bool same_parameters(const ConfigSpace& other) const;
  std::string describe() const;

 private:
  friend ConfigSpace enumerate_sep(const Graph&, int, int, std::size_t);
  friend ConfigSpace enumerate_irw_sector(const Graph&, int, std::vector<int>, std::size_t);

  ProcessKind kind_ = ProcessKind::Sep;
  Graph graph_;
  int n_ = 0;
  int two_j_ = 0;
  std::vector<int> totals_;
  std::size_t size_ = 0;
  CompositionIndexer local_;                    // SEP
  std::vector<CompositionIndexer> placements_;  // IRW, one per species
  std::vector<std::size_t> radix_;              // mixed radix weights
};

ConfigSpace enumerate_sep(const Graph& graph, int n, int two_j, std::size_t cap = ConfigSpace::kDefaultCap);
ConfigSpace enumerate_irw_sector(const Graph& graph, int n, std::vector<int> totals,
                                 std::size_t cap = ConfigSpace::kDefaultCap);

/// Single-site SEP space Omega_{2j} (one site, no edges).
ConfigSpace single_site_sep(int n, int two_j);

}  // namespace orthodual
