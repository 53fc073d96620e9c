#include "orthodual/statespace.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "orthodual/error.hpp"

namespace orthodual {

std::string Graph::describe() const {
  std::ostringstream os;
  os << "L=" << num_sites_ << " edges=";
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (i) os << ';';
    os << edges_[i].x + 1 << '-' << edges_[i].y + 1;
  }
  return os.str();
}

Graph build_graph(int num_sites, const std::vector<std::pair<int, int>>& edges) {
  if (num_sites < 1) throw Error(ErrorCode::InvalidArgument, "number of sites must be positive");
  Graph g;
  g.num_sites_ = num_sites;
  std::set<std::pair<int, int>> seen;
  for (auto [a, b] : edges) {
    if (a < 1 || a > num_sites || b < 1 || b > num_sites) {
      throw Error(ErrorCode::EndpointOutOfRange,
                  "edge (" + std::to_string(a) + "," + std::to_string(b) + ") with L=" + std::to_string(num_sites));
    }
    if (a == b) throw Error(ErrorCode::SelfLoop, "edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
    const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
    if (!seen.insert(key).second) {
      throw Error(ErrorCode::DuplicateEdge, "edge {" + std::to_string(key.first) + "," + std::to_string(key.second) + "}");
    }
    g.edges_.push_back({key.first - 1, key.second - 1});
  }
  return g;
}

Graph parse_graph(std::istream& in) {
  std::string line;
  int num_sites = -1;
  std::vector<std::pair<int, int>> edges;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    if (num_sites < 0) {
      if (!(ls >> num_sites)) throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected L");
      continue;
    }
    int x = 0, y = 0;
    if (!(ls >> x >> y)) throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected 'x y'");
    std::string rest;
    if (ls >> rest) throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": trailing tokens");
    edges.emplace_back(x, y);
  }
  if (num_sites < 0) throw Error(ErrorCode::ParseError, "empty graph file");
  return build_graph(num_sites, edges);
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open graph file '" + path + "'");
  return parse_graph(in);
}

std::string format_graph(const Graph& graph) {
  std::ostringstream os;
  os << graph.num_sites() << '\n';
  for (const auto& e : graph.edges()) os << e.x + 1 << ' ' << e.y + 1 << '\n';
  return os.str();
}

Graph preset_graph(std::string_view name) {
  auto size_suffix = [&](std::string_view prefix) -> int {
    std::string_view rest = name.substr(prefix.size());
    if (!rest.empty() && rest.front() == '-') rest.remove_prefix(1);
    int k = 0;
    for (char c : rest) {
      if (c < '0' || c > '9') throw Error(ErrorCode::InvalidArgument, "bad graph preset '" + std::string(name) + "'");
      k = k * 10 + (c - '0');
    }
    if (rest.empty() || k < 1) throw Error(ErrorCode::InvalidArgument, "bad graph preset '" + std::string(name) + "'");
    return k;
  };
  std::vector<std::pair<int, int>> edges;
  if (name == "single") return build_graph(1, {});
  if (name == "edge") return build_graph(2, {{1, 2}});
  if (name == "triangle") return build_graph(3, {{1, 2}, {2, 3}, {1, 3}});
  if (name.starts_with("path")) {
    const int k = size_suffix("path");
    for (int x = 1; x < k; ++x) edges.emplace_back(x, x + 1);
    return build_graph(k, edges);
  }
  if (name.starts_with("cycle")) {
    const int k = size_suffix("cycle");
    if (k < 3) throw Error(ErrorCode::InvalidArgument, "cycle needs at least 3 sites");
    for (int x = 1; x < k; ++x) edges.emplace_back(x, x + 1);
    edges.emplace_back(1, k);
    return build_graph(k, edges);
  }
  if (name.starts_with("complete")) {
    const int k = size_suffix("complete");
    for (int x = 1; x <= k; ++x)
      for (int y = x + 1; y <= k; ++y) edges.emplace_back(x, y);
    return build_graph(k, edges);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown graph preset '" + std::string(name) + "'");
}

Graph single_edge_graph(const Graph& graph, const Edge& edge) {
  const auto& es = graph.edges();
  if (std::find(es.begin(), es.end(), edge) == es.end()) {
    throw Error(ErrorCode::InvalidArgument, "edge is not part of the graph");
  }
  return build_graph(graph.num_sites(), {{edge.x + 1, edge.y + 1}});
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

double multinomial(std::span<const int> counts) {
  double r = 1.0;
  int running = 0;
  for (int c : counts) {
    for (int i = 1; i <= c; ++i) r = r * static_cast<double>(running + i) / static_cast<double>(i);
    running += c;
  }
  return r;
}

CompositionIndexer::CompositionIndexer(int total, int parts) : total_(total), parts_(parts) {
  if (total < 0 || parts < 1) throw Error(ErrorCode::InvalidArgument, "composition needs total >= 0 and parts >= 1");
  size_ = count(total, parts);
}

std::size_t CompositionIndexer::count(int t, int k) const {
  return static_cast<std::size_t>(binomial(static_cast<std::uint64_t>(t + k - 1), static_cast<std::uint64_t>(k - 1)));
}

std::size_t CompositionIndexer::rank(std::span<const int> c) const {
  std::size_t r = 0;
  int remaining = total_;
  for (int i = 0; i + 1 < parts_; ++i) {
    const int k = parts_ - 1 - i;
    // compositions sharing the prefix with a larger entry at i
    r += static_cast<std::size_t>(
        binomial(static_cast<std::uint64_t>(remaining - c[i] - 1 + k), static_cast<std::uint64_t>(k)));
    remaining -= c[i];
  }
  return r;
}

void CompositionIndexer::unrank(std::size_t r, std::span<int> out) const {
  int remaining = total_;
  for (int i = 0; i + 1 < parts_; ++i) {
    const int k = parts_ - 1 - i;
    for (int v = remaining; v >= 0; --v) {
      const std::size_t cnt = count(remaining - v, k);
      if (r < cnt) {
        out[i] = v;
        break;
      }
      r -= cnt;
    }
    remaining -= out[i];
  }
  out[parts_ - 1] = remaining;
}

SiteConfig CompositionIndexer::unrank(std::size_t r) const {
  SiteConfig c(static_cast<std::size_t>(parts_));
  unrank(r, c);
  return c;
}

std::string Configuration::to_string() const {
  std::ostringstream os;
  for (int x = 0; x < num_sites(); ++x) {
    if (x) os << '|';
    for (int i = 0; i < width_; ++i) {
      if (i) os << ',';
      os << at(x, i);
    }
  }
  return os.str();
}

namespace {

std::size_t checked_mul(std::size_t a, std::size_t b, std::size_t cap) {
  if (a != 0 && b > cap / a) throw Error(ErrorCode::CapacityExceeded, "more than " + std::to_string(cap) + " states");
  const std::size_t r = a * b;
  if (r > cap) throw Error(ErrorCode::CapacityExceeded, std::to_string(r) + " states > cap " + std::to_string(cap));
  return r;
}

}  // namespace

ConfigSpace enumerate_sep(const Graph& graph, int n, int two_j, std::size_t cap) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "species count n must be >= 1");
  if (two_j < 1) throw Error(ErrorCode::InvalidArgument, "capacity 2j must be >= 1");
  if (graph.num_sites() < 1) throw Error(ErrorCode::InvalidArgument, "graph has no sites");
  ConfigSpace s;
  s.kind_ = ProcessKind::Sep;
  s.graph_ = graph;
  s.n_ = n;
  s.two_j_ = two_j;
  s.local_ = CompositionIndexer(two_j, n + 1);
  const int L = graph.num_sites();
  s.radix_.assign(static_cast<std::size_t>(L), 1);
  std::size_t size = 1;
  for (int x = L - 1; x >= 0; --x) {
    s.radix_[static_cast<std::size_t>(x)] = size;
    size = checked_mul(size, s.local_.size(), cap);
  }
  s.size_ = size;
  return s;
}

ConfigSpace enumerate_irw_sector(const Graph& graph, int n, std::vector<int> totals, std::size_t cap) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "species count n must be >= 1");
  if (static_cast<int>(totals.size()) != n) {
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(n) + " species totals");
  }
  for (int t : totals) {
    if (t < 0) throw Error(ErrorCode::InvalidArgument, "species totals must be non-negative");
  }
  if (graph.num_sites() < 1) throw Error(ErrorCode::InvalidArgument, "graph has no sites");
  ConfigSpace s;
  s.kind_ = ProcessKind::Irw;
  s.graph_ = graph;
  s.n_ = n;
  s.totals_ = std::move(totals);
  s.radix_.assign(static_cast<std::size_t>(n), 1);
  std::size_t size = 1;
  for (int i = 0; i < n; ++i) s.placements_.emplace_back(s.totals_[static_cast<std::size_t>(i)], graph.num_sites());
  for (int i = n - 1; i >= 0; --i) {
    s.radix_[static_cast<std::size_t>(i)] = size;
    size = checked_mul(size, s.placements_[static_cast<std::size_t>(i)].size(), cap);
  }
  s.size_ = size;
  return s;
}

ConfigSpace single_site_sep(int n, int two_j) { return enumerate_sep(build_graph(1, {}), n, two_j); }

std::size_t ConfigSpace::rank(const Configuration& c) const {
  const int L = num_sites();
  std::size_t r = 0;
  if (kind_ == ProcessKind::Sep) {
    for (int x = 0; x < L; ++x) r += local_.rank(c.site(x)) * radix_[static_cast<std::size_t>(x)];
    return r;
  }
  std::vector<int> placement(static_cast<std::size_t>(L));
  for (int i = 0; i < n_; ++i) {
    for (int x = 0; x < L; ++x) placement[static_cast<std::size_t>(x)] = c.at(x, i);
    r += placements_[static_cast<std::size_t>(i)].rank(placement) * radix_[static_cast<std::size_t>(i)];
  }
  return r;
}

Configuration ConfigSpace::unrank(std::size_t r) const {
  const int L = num_sites();
  Configuration c(L, site_width());
  if (kind_ == ProcessKind::Sep) {
    for (int x = 0; x < L; ++x) {
      const std::size_t w = radix_[static_cast<std::size_t>(x)];
      local_.unrank(r / w, c.site(x));
      r %= w;
    }
    return c;
  }
  std::vector<int> placement(static_cast<std::size_t>(L));
  for (int i = 0; i < n_; ++i) {
    const std::size_t w = radix_[static_cast<std::size_t>(i)];
    placements_[static_cast<std::size_t>(i)].unrank(r / w, placement);
    r %= w;
    for (int x = 0; x < L; ++x) c.at(x, i) = placement[static_cast<std::size_t>(x)];
  }
  return c;
}

bool ConfigSpace::contains(const Configuration& c) const {
  if (c.num_sites() != num_sites() || c.width() != site_width()) return false;
  for (int v : c.counts()) {
    if (v < 0) return false;
  }
  if (kind_ == ProcessKind::Sep) {
    for (int x = 0; x < num_sites(); ++x) {
      int sum = 0;
      for (int v : c.site(x)) sum += v;
      if (sum != two_j_) return false;
    }
    return true;
  }
  for (int i = 0; i < n_; ++i) {
    int sum = 0;
    for (int x = 0; x < num_sites(); ++x) sum += c.at(x, i);
    if (sum != totals_[static_cast<std::size_t>(i)]) return false;
  }
  return true;
}

bool ConfigSpace::same_parameters(const ConfigSpace& o) const {
  return kind_ == o.kind_ && n_ == o.n_ && two_j_ == o.two_j_ && totals_ == o.totals_ && graph_ == o.graph_;
}

std::string ConfigSpace::describe() const {
  std::ostringstream os;
  if (kind_ == ProcessKind::Sep) {
    os << "SEP n=" << n_ << " two_j=" << two_j_;
  } else {
    os << "IRW n=" << n_ << " totals=";
    for (std::size_t i = 0; i < totals_.size(); ++i) os << (i ? "," : "") << totals_[i];
  }
  os << ' ' << graph_.describe() << " size=" << size_;
  return os.str();
}

}  // namespace orthodual
