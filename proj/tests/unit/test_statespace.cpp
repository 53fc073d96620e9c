#include <algorithm>
#include <set>
#include <sstream>

#include "check_error.hpp"
#include "doctest.h"
#include "orthodual/statespace.hpp"

using namespace orthodual;

namespace {

// Every vector in {0..bound}^len, in lexicographic order.
std::vector<std::vector<int>> all_vectors(int len, int bound) {
  std::vector<std::vector<int>> out;
  std::vector<int> v(static_cast<std::size_t>(len), 0);
  while (true) {
    out.push_back(v);
    int i = len - 1;
    while (i >= 0 && v[static_cast<std::size_t>(i)] == bound) v[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
    ++v[static_cast<std::size_t>(i)];
  }
  return out;
}

std::size_t brute_sep_size(int sites, int n, int two_j) {
  std::size_t local = 0;
  for (const auto& v : all_vectors(n + 1, two_j)) {
    int s = 0;
    for (int c : v) s += c;
    local += s == two_j;
  }
  std::size_t total = 1;
  for (int x = 0; x < sites; ++x) total *= local;
  return total;
}

std::size_t brute_irw_size(int sites, const std::vector<int>& totals) {
  std::size_t total = 1;
  for (int t : totals) {
    std::size_t count = 0;
    for (const auto& v : all_vectors(sites, t)) {
      int s = 0;
      for (int c : v) s += c;
      count += s == t;
    }
    total *= count;
  }
  return total;
}

void check_roundtrip(const ConfigSpace& space) {
  for (std::size_t r = 0; r < space.size(); ++r) {
    const Configuration c = space.unrank(r);
    REQUIRE(space.contains(c));
    REQUIRE(space.rank(c) == r);
  }
}

}  // namespace

TEST_CASE("build_graph accepts simple graphs") {
  const Graph edge = build_graph(2, {{1, 2}});
  CHECK(edge.num_sites() == 2);
  CHECK(edge.edges().size() == 1);
  CHECK(edge.edges()[0] == Edge{0, 1});
  const Graph path = build_graph(3, {{1, 2}, {2, 3}});
  CHECK(path.edges().size() == 2);
  CHECK(path == preset_graph("path-3"));
  CHECK(path == preset_graph("path3"));
}

TEST_CASE("build_graph rejects malformed edges") {
  CHECK_ERROR_CODE(build_graph(2, {{1, 1}}), SelfLoop);
  CHECK_ERROR_CODE(build_graph(2, {{1, 2}, {2, 1}}), DuplicateEdge);
  CHECK_ERROR_CODE(build_graph(2, {{1, 3}}), EndpointOutOfRange);
  CHECK_ERROR_CODE(build_graph(2, {{0, 1}}), EndpointOutOfRange);
  CHECK_ERROR_CODE(build_graph(0, {}), InvalidArgument);
}

TEST_CASE("graph presets") {
  CHECK(preset_graph("single").num_sites() == 1);
  CHECK(preset_graph("single").edges().empty());
  CHECK(preset_graph("edge") == build_graph(2, {{1, 2}}));
  CHECK(preset_graph("triangle") == build_graph(3, {{1, 2}, {2, 3}, {1, 3}}));
  CHECK(preset_graph("cycle-4").edges().size() == 4);
  CHECK(preset_graph("complete-4").edges().size() == 6);
  CHECK_ERROR_CODE(preset_graph("cycle-2"), InvalidArgument);
  CHECK_ERROR_CODE(preset_graph("hexagon"), InvalidArgument);
  CHECK_ERROR_CODE(preset_graph("path-x"), InvalidArgument);
}

TEST_CASE("edge-list files") {
  std::istringstream in("# two triangles sharing a site\n5\n1 2\n2 3\n\n1 3\n3 4\n4 5\n3 5\n");
  const Graph g = parse_graph(in);
  CHECK(g.num_sites() == 5);
  CHECK(g.edges().size() == 6);
  std::istringstream round(format_graph(g));
  CHECK(parse_graph(round) == g);
  std::istringstream bad("3\n1 2 3\n");
  CHECK_ERROR_CODE(parse_graph(bad), ParseError);
  std::istringstream loop("2\n2 2\n");
  CHECK_ERROR_CODE(parse_graph(loop), SelfLoop);
}

TEST_CASE("SEP sizes") {
  CHECK(enumerate_sep(preset_graph("edge"), 1, 1).size() == 4);
  CHECK(enumerate_sep(preset_graph("edge"), 2, 2).size() == 36);
  CHECK(enumerate_sep(preset_graph("path-3"), 2, 2).size() == 216);
  for (int sites = 1; sites <= 3; ++sites)
    for (int n = 1; n <= 3; ++n)
      for (int two_j = 1; two_j <= 3; ++two_j) {
        const Graph g = sites == 1 ? preset_graph("single") : preset_graph("path-" + std::to_string(sites));
        const ConfigSpace s = enumerate_sep(g, n, two_j);
        CHECK(s.size() == brute_sep_size(sites, n, two_j));
        CHECK(s.local_size() == binomial(static_cast<std::uint64_t>(two_j + n), static_cast<std::uint64_t>(n)));
      }
}

TEST_CASE("IRW sector sizes") {
  CHECK(enumerate_irw_sector(preset_graph("edge"), 1, {1}).size() == 2);
  CHECK(enumerate_irw_sector(preset_graph("edge"), 2, {1, 1}).size() == 4);
  CHECK(enumerate_irw_sector(preset_graph("path-3"), 1, {2}).size() == 6);
  CHECK(enumerate_irw_sector(preset_graph("triangle"), 2, {0, 0}).size() == 1);
  for (const auto& totals : std::vector<std::vector<int>>{{0}, {3}, {4}, {2, 1}, {1, 3}, {2, 2, 1}}) {
    for (int sites = 1; sites <= 3; ++sites) {
      const Graph g = sites == 1 ? preset_graph("single") : preset_graph("path-" + std::to_string(sites));
      CHECK(enumerate_irw_sector(g, static_cast<int>(totals.size()), totals).size() == brute_irw_size(sites, totals));
    }
  }
}

TEST_CASE("rank and unrank are inverse and configurations satisfy the constraints") {
  for (const char* name : {"single", "edge", "path-3", "triangle"}) {
    const Graph g = preset_graph(name);
    for (int n = 1; n <= 3; ++n)
      for (int two_j = 1; two_j <= 3; ++two_j) {
        const ConfigSpace s = enumerate_sep(g, n, two_j);
        check_roundtrip(s);
        for (std::size_t r = 0; r < s.size(); ++r) {
          const Configuration c = s.unrank(r);
          for (int x = 0; x < g.num_sites(); ++x) {
            int sum = 0;
            for (int v : c.site(x)) {
              REQUIRE(v >= 0);
              sum += v;
            }
            REQUIRE(sum == two_j);
          }
        }
      }
    for (const auto& totals : std::vector<std::vector<int>>{{0}, {2}, {1, 1}, {2, 3}}) {
      const int n = static_cast<int>(totals.size());
      const ConfigSpace s = enumerate_irw_sector(g, n, totals);
      check_roundtrip(s);
      for (std::size_t r = 0; r < s.size(); ++r) {
        const Configuration c = s.unrank(r);
        for (int i = 0; i < n; ++i) {
          int sum = 0;
          for (int x = 0; x < g.num_sites(); ++x) sum += c.at(x, i);
          REQUIRE(sum == totals[static_cast<std::size_t>(i)]);
        }
      }
    }
  }
}

TEST_CASE("enumeration is deterministic and injective") {
  const ConfigSpace a = enumerate_sep(preset_graph("triangle"), 2, 2);
  const ConfigSpace b = enumerate_sep(preset_graph("triangle"), 2, 2);
  std::set<std::vector<int>> seen;
  for (std::size_t r = 0; r < a.size(); ++r) {
    CHECK(a.unrank(r) == b.unrank(r));
    seen.insert(a.unrank(r).counts());
  }
  CHECK(seen.size() == a.size());
}

TEST_CASE("documented ordering") {
  const CompositionIndexer idx(3, 3);
  CHECK(idx.size() == 10);
  CHECK(idx.unrank(0) == SiteConfig{3, 0, 0});
  CHECK(idx.unrank(idx.size() - 1) == SiteConfig{0, 0, 3});
  const std::vector<int> mid{1, 1, 1};
  CHECK(idx.unrank(idx.rank(mid)) == SiteConfig{1, 1, 1});
  const ConfigSpace s = enumerate_sep(preset_graph("edge"), 1, 1);
  // Site 1 most significant: (hole, hole), (hole, particle), (particle, hole), (particle, particle).
  CHECK(s.unrank(0).counts() == std::vector<int>{1, 0, 1, 0});
  CHECK(s.unrank(1).counts() == std::vector<int>{1, 0, 0, 1});
  CHECK(s.unrank(2).counts() == std::vector<int>{0, 1, 1, 0});
  CHECK(s.unrank(3).counts() == std::vector<int>{0, 1, 0, 1});
}

TEST_CASE("state-space cap and argument checks") {
  CHECK_ERROR_CODE(enumerate_sep(preset_graph("path-6"), 3, 3, 1000), CapacityExceeded);
  CHECK_ERROR_CODE(enumerate_irw_sector(preset_graph("path-6"), 1, {40}, 1000), CapacityExceeded);
  CHECK_ERROR_CODE(enumerate_sep(preset_graph("edge"), 0, 1), InvalidArgument);
  CHECK_ERROR_CODE(enumerate_sep(preset_graph("edge"), 1, 0), InvalidArgument);
  CHECK_ERROR_CODE(enumerate_irw_sector(preset_graph("edge"), 2, {1}), DimensionMismatch);
  CHECK_ERROR_CODE(enumerate_irw_sector(preset_graph("edge"), 1, {-1}), InvalidArgument);
  const ConfigSpace s = enumerate_sep(preset_graph("edge"), 1, 1);
  Configuration bad(2, 2);
  bad.at(0, 0) = 2;
  CHECK_FALSE(s.contains(bad));
}

TEST_CASE("multinomial and binomial helpers") {
  CHECK(binomial(6, 2) == 15);
  CHECK(binomial(2, 5) == 0);
  CHECK(binomial(200, 100) == UINT64_MAX);
  const std::vector<int> c{2, 1, 1};
  CHECK(multinomial(c) == doctest::Approx(12.0));
}
