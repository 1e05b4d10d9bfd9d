#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "gpm/error.hpp"
#include "gpm/graphgroup.hpp"
#include "support.hpp"

using namespace gpm;

using gpm::testing::code_of;

TEST_CASE("cyclic group is addition mod n") {
  const auto g = FiniteGroup::cyclic(7);
  CHECK(g.order() == 7);
  CHECK(g.identity() == 0);
  for (int a = 0; a < 7; ++a) {
    CHECK(g.inv(a) == (7 - a) % 7);
    for (int b = 0; b < 7; ++b) CHECK(g.mul(a, b) == (a + b) % 7);
  }
}

TEST_CASE("symmetric group matches composition of permutations") {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(4);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const auto g = FiniteGroup::symmetric(4);
  REQUIRE(g.order() == 24);
  CHECK(g.identity() == 0);
  for (int a = 0; a < 24; ++a)
    for (int b = 0; b < 24; ++b) {
      std::vector<int> c(4);
      for (int i = 0; i < 4; ++i) c[i] = perms[a][perms[b][i]];
      CHECK(perms[g.mul(a, b)] == c);
    }
}

TEST_CASE("dihedral group acts on Z/n by x -> k + (-1)^j x") {
  const int n = 5;
  const auto g = FiniteGroup::dihedral(n);
  REQUIRE(g.order() == 2 * n);
  auto apply = [&](int idx, int x) {
    const int k = idx % n, j = idx / n;
    return ((j ? -x : x) + k + 2 * n) % n;
  };
  for (int a = 0; a < 2 * n; ++a)
    for (int b = 0; b < 2 * n; ++b)
      for (int x = 0; x < n; ++x) CHECK(apply(g.mul(a, b), x) == apply(a, apply(b, x)));
}

TEST_CASE("group axioms are checked") {
  // Smallest non-associative loop: a Latin square with identity and inverses.
  const std::vector<std::vector<int>> loop{
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK(code_of([&] { FiniteGroup(derive_structure(loop)); }) == ErrorCode::NotAssociative);
  CHECK(code_of([] { derive_structure({{0, 1}, {1, 1}}); }) == ErrorCode::NotLatinSquare);
  CHECK(code_of([] { derive_structure({{0, 2, 1}, {2, 1, 0}, {1, 0, 2}}); }) == ErrorCode::BadIdentity);
  CHECK(code_of([] { derive_structure({{0, 1}, {1}}); }) == ErrorCode::NotLatinSquare);

  GroupTable t = derive_structure({{0, 1}, {1, 0}});
  t.inverse = {0, 0};
  CHECK(code_of([&] { validate_group(t); }) == ErrorCode::BadInverse);
  t.inverse = {0, 1};
  t.identity = 1;
  CHECK(code_of([&] { validate_group(t); }) == ErrorCode::BadIdentity);
}

TEST_CASE("group presets respect the size cap") {
  CHECK(preset_group(GroupPreset::Symmetric, 5).order() == 120);
  CHECK(code_of([] { preset_group(GroupPreset::Symmetric, 6); }) == ErrorCode::TooLarge);
  CHECK(code_of([] { preset_group(GroupPreset::Cyclic, 121); }) == ErrorCode::TooLarge);
  CHECK(code_of([] { preset_group(GroupPreset::Cyclic, 0); }) == ErrorCode::ConfigSchema);
  CHECK(preset_group(GroupPreset::Dihedral, 60).order() == 120);
}

TEST_CASE("graphs") {
  SimplicialGraph g(GraphData{{10, 20, 30}, {{30, 10}, {10, 20}}});
  CHECK(g.size() == 3);
  CHECK(g.adjacent(0, 2));
  CHECK(g.adjacent(2, 0));
  CHECK_FALSE(g.adjacent(1, 2));
  CHECK_FALSE(g.adjacent(0, 0));
  CHECK(g.index_of(30) == 2);
  CHECK(g.edges() == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}});

  CHECK(code_of([] { SimplicialGraph(GraphData{{0, 1}, {{1, 1}}}); }) == ErrorCode::LoopEdge);
  CHECK(code_of([] { SimplicialGraph(GraphData{{0, 1}, {{0, 2}}}); }) == ErrorCode::UnknownVertex);
  CHECK(code_of([] { SimplicialGraph(GraphData{{0, 0}, {}}); }) == ErrorCode::UnknownVertex);
  CHECK(code_of([&] { g.index_of(5); }) == ErrorCode::UnknownVertex);

  const auto k12 = SimplicialGraph::complete_multipartite({1, 2});
  CHECK(k12.edge_count() == 2);
  CHECK(k12.adjacent(0, 1));
  CHECK(k12.adjacent(0, 2));
  CHECK_FALSE(k12.adjacent(1, 2));
  CHECK(SimplicialGraph::complete(4).edge_count() == 6);
  CHECK(SimplicialGraph::edgeless(4).edge_count() == 0);
  CHECK(SimplicialGraph::path(4).edge_count() == 3);
}
