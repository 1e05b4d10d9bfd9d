#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <random>
#include <set>

#include "gpm/wordcraft.hpp"
#include "support.hpp"

using namespace gpm;
using gpm::testing::code_of;
using gpm::testing::random_word;

namespace {

GraphProduct z2_product(SimplicialGraph g) {
  std::vector<FiniteGroup> groups(static_cast<std::size_t>(g.size()), FiniteGroup::cyclic(2));
  return GraphProduct(std::move(g), std::move(groups));
}

GPElement word(const GraphProduct& gp, LetterSeq w) { return normalize(w, gp); }

using IMat = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

/// Tits representation of a right-angled Coxeter group: faithful, so two
/// words are equal in the group iff their matrices agree.
IMat tits(std::span<const Letter> w, const SimplicialGraph& g) {
  const int n = g.size();
  IMat m = IMat::Identity(n, n);
  for (const Letter& l : w) {
    if (l.elem == 0) continue;
    IMat s = IMat::Identity(n, n);
    for (int v = 0; v < n; ++v) {
      const long long b = v == l.vertex ? 1 : (g.adjacent(v, l.vertex) ? 0 : -1);
      s(l.vertex, v) -= 2 * b;
    }
    m = m * s;
  }
  return m;
}

/// Z/2 * Z/3 ≅ PSL(2, Z) via S = [[0,-1],[1,0]] and U = [[0,-1],[1,1]].
IMat modular(std::span<const Letter> w) {
  IMat S(2, 2), U(2, 2);
  S << 0, -1, 1, 0;
  U << 0, -1, 1, 1;
  IMat m = IMat::Identity(2, 2);
  for (const Letter& l : w)
    for (int k = 0; k < l.elem; ++k) m = m * (l.vertex == 0 ? S : U);
  return m;
}

bool equal_up_to_sign(const IMat& a, const IMat& b) { return a == b || a == -b; }

}  // namespace

TEST_CASE("normalize: commuting letters, merging and cancellation") {
  const auto gp = z2_product(SimplicialGraph(GraphData{{0, 1, 2}, {{0, 1}}}));
  CHECK(word(gp, {{1, 1}, {0, 1}}) == word(gp, {{0, 1}, {1, 1}}));
  CHECK(word(gp, {{1, 1}, {0, 1}}).letters() == LetterSeq{{0, 1}, {1, 1}});
  CHECK(word(gp, {{2, 1}, {0, 1}}).letters() == LetterSeq{{2, 1}, {0, 1}});
  CHECK(word(gp, {{0, 1}, {1, 1}, {0, 1}}).letters() == LetterSeq{{1, 1}});
  CHECK(word(gp, {{0, 1}, {2, 1}, {2, 1}, {0, 1}}).is_identity());
  CHECK(word(gp, {{0, 0}, {1, 0}}).is_identity());

  const GraphProduct z3(SimplicialGraph::edgeless(2), {FiniteGroup::cyclic(3), FiniteGroup::cyclic(3)});
  CHECK(word(z3, {{0, 1}, {0, 1}}).letters() == LetterSeq{{0, 2}});
  CHECK(word(z3, {{0, 2}, {1, 1}, {1, 2}, {0, 2}}).letters() == LetterSeq{{0, 1}});
  CHECK(code_of([&] { word(z3, {{0, 3}}); }) == ErrorCode::ElementOutOfRange);
  CHECK(code_of([&] { word(z3, {{2, 1}}); }) == ErrorCode::UnknownVertex);
}

TEST_CASE("normalize agrees with the Tits representation of a right-angled Coxeter group") {
  const auto g = SimplicialGraph(GraphData{{0, 1, 2, 3, 4}, {{0, 1}, {1, 2}, {2, 3}, {0, 4}}});
  const auto gp = z2_product(g);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> len(0, 9);
  int equal_pairs = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const LetterSeq a = random_word(gp, len(rng), rng);
    const LetterSeq b = random_word(gp, len(rng), rng);
    const GPElement x = normalize(a, gp), y = normalize(b, gp);
    CHECK(tits(x.letters(), g) == tits(a, g));
    CHECK(is_reduced(x.letters(), gp));
    const bool same = tits(a, g) == tits(b, g);
    CHECK((x == y) == same);
    equal_pairs += same;
  }
  CHECK(equal_pairs > 10);
}

TEST_CASE("normalize agrees with PSL(2,Z) for Z/2 * Z/3") {
  const GraphProduct gp(SimplicialGraph::edgeless(2), {FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)});
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> len(0, 10);
  for (int trial = 0; trial < 2000; ++trial) {
    const LetterSeq a = random_word(gp, len(rng), rng);
    const LetterSeq b = random_word(gp, len(rng), rng);
    const GPElement x = normalize(a, gp), y = normalize(b, gp);
    CHECK(equal_up_to_sign(modular(x.letters()), modular(a)));
    CHECK((x == y) == equal_up_to_sign(modular(a), modular(b)));
  }
}

TEST_CASE("group law") {
  const GraphProduct gp(SimplicialGraph::path(3),
                        {FiniteGroup::cyclic(3), FiniteGroup::symmetric(3), FiniteGroup::dihedral(4)});
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const GPElement x = normalize(random_word(gp, 6, rng), gp);
    const GPElement y = normalize(random_word(gp, 6, rng), gp);
    const GPElement z = normalize(random_word(gp, 6, rng), gp);
    CHECK(multiply(x, inverse(x, gp), gp).is_identity());
    CHECK(multiply(multiply(x, y, gp), z, gp) == multiply(x, multiply(y, z, gp), gp));
    CHECK(inverse(multiply(x, y, gp), gp) == multiply(inverse(y, gp), inverse(x, gp), gp));
  }
  const GraphProduct other(SimplicialGraph::edgeless(1), {FiniteGroup::cyclic(2)});
  CHECK(code_of([&] { multiply(gp.letter(2, 5), gp.letter(2, 5), other); }) == ErrorCode::ContextMismatch);
}

TEST_CASE("canonical form is the lex-least rearrangement by vertex") {
  const GraphProduct gp(SimplicialGraph(GraphData{{0, 1, 2, 3}, {{0, 2}, {1, 2}, {1, 3}, {0, 3}}}),
                        {FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)});
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const GPElement x = normalize(random_word(gp, 7, rng), gp);
    VertexWord least = x.vertices();
    for (const LetterSeq& r : rearrangements(x, gp)) {
      VertexWord vw;
      for (const Letter& l : r) vw.push_back(l.vertex);
      least = std::min(least, vw);
      CHECK(normalize(r, gp) == x);
    }
    CHECK(x.vertices() == least);
  }
}

TEST_CASE("rearrangements") {
  const auto tri = z2_product(SimplicialGraph::complete(3));
  CHECK(rearrangements(word(tri, {{0, 1}, {1, 1}, {2, 1}}), tri).size() == 6);
  const auto free3 = z2_product(SimplicialGraph::edgeless(3));
  CHECK(rearrangements(word(free3, {{0, 1}, {1, 1}, {2, 1}}), free3).size() == 1);
  CHECK(rearrangements(GPElement{}, free3).size() == 1);
  const auto path = z2_product(SimplicialGraph::path(3));
  // 1 commutes with both ends: three places for it around "0 2".
  CHECK(rearrangements(word(path, {{0, 1}, {2, 1}, {1, 1}}), path).size() == 3);
  CHECK(code_of([&] { rearrangements(word(tri, {{0, 1}, {1, 1}, {2, 1}}), tri, 3); }) == ErrorCode::BudgetExceeded);
}

TEST_CASE("reducedness of vertex words") {
  const auto g = SimplicialGraph::path(3);
  CHECK(is_reduced(VertexWord{0, 2, 0}, g));
  CHECK_FALSE(is_reduced(VertexWord{0, 1, 0}, g));
  CHECK_FALSE(is_reduced(VertexWord{2, 2}, g));
  CHECK(is_reduced(VertexWord{}, g));
  CHECK(is_reduced(VertexWord{1, 0, 2, 1}, g) == false);
}

TEST_CASE("truncation order and complete sets") {
  const auto gp = z2_product(SimplicialGraph::path(3));
  const GPElement x = word(gp, {{0, 1}, {2, 1}, {1, 1}});
  const ElementSet trunc = truncations(x, gp);
  // Left: drop 0 -> "2 1"; drop 1 (it can lead) -> "0 2". Right: drop 1, or 2 -> "0 1".
  CHECK(trunc == ElementSet{word(gp, {{2, 1}, {1, 1}}), word(gp, {{0, 1}, {2, 1}}), word(gp, {{0, 1}, {1, 1}})});
  CHECK(truncation_order_leq(gp.letter(1, 1), x, gp));
  CHECK(truncation_order_leq(GPElement{}, x, gp));
  CHECK_FALSE(truncation_order_leq(x, gp.letter(1, 1), gp));
  CHECK_FALSE(truncation_order_leq(word(gp, {{2, 1}, {0, 1}}), x, gp));

  const ElementSet D = down_set(x, gp);
  CHECK(D.size() == 8);
  CHECK(is_complete(D, gp));
  CHECK(complete_closure({x}, gp) == D);
  CHECK_FALSE(is_complete({GPElement{}, x}, gp));
  CHECK_FALSE(is_complete({x}, gp));

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    ElementSet X;
    for (int k = 0; k < 3; ++k) X.insert(normalize(random_word(gp, 5, rng), gp));
    const ElementSet C = complete_closure(X, gp);
    CHECK(is_complete(C, gp));
    for (const auto& y : C) {
      bool below = false;
      for (const auto& z : X) below = below || truncation_order_leq(y, z, gp);
      CHECK((below || y.is_identity()));
    }
  }
}

TEST_CASE("non-commutative length") {
  const auto g = SimplicialGraph::path(3);
  CHECK(nc_length(VertexWord{2, 1, 0}, 0, g) == 1);
  CHECK(nc_length(VertexWord{0, 2, 0}, 0, g) == 2);
  CHECK(nc_length(VertexWord{0, 1}, 0, g) == 0);
  CHECK(nc_length(VertexWord{0, 2}, 0, g) == -1);
  CHECK(nc_length(VertexWord{}, 0, g) == -1);

  const auto gp = z2_product(g);
  CHECK(nc_length(word(gp, {{0, 1}, {2, 1}}), 0, gp) == -1);
  CHECK(nc_length_down(word(gp, {{0, 1}, {2, 1}}), 0, gp) == 0);
  CHECK(nc_length_down(word(gp, {{0, 1}, {2, 1}, {0, 1}, {2, 1}}), 0, gp) == 2);
  CHECK(code_of([&] { nc_length_set({}, 0, gp); }) == ErrorCode::EmptySet);

  // The definition is independent of which v0 occurrence is moved to the end.
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const GPElement x = normalize(random_word(gp, 7, rng), gp);
    std::set<int> seen;
    for (const LetterSeq& r : rearrangements(x, gp)) {
      if (r.empty() || r.back().vertex != 0) continue;
      VertexWord vw;
      for (const Letter& l : r) vw.push_back(l.vertex);
      seen.insert(nc_length(vw, 0, g));
    }
    CHECK(seen.size() <= 1);
    if (!seen.empty()) CHECK(*seen.begin() == nc_length(x, 0, gp));
  }
}

TEST_CASE("standard form: hand examples") {
  const auto gp = z2_product(SimplicialGraph::path(3));
  // x = 2·0·1 = 2·1·0: b can be empty, so y = 2, c = 1.
  StandardForm f = standard_form(word(gp, {{2, 1}, {0, 1}, {1, 1}}), 0, gp);
  CHECK(f.y == gp.letter(2, 1));
  CHECK(f.c == gp.letter(1, 1));
  CHECK(f.a == Letter{0, 1});
  CHECK(f.b.is_identity());
  // x = 1·0·2: minimal b puts the commuting 1 into c.
  f = standard_form(word(gp, {{1, 1}, {0, 1}, {2, 1}}), 0, gp);
  CHECK(f.y.is_identity());
  CHECK(f.c == gp.letter(1, 1));
  CHECK(f.b == gp.letter(2, 1));

  const auto free2 = z2_product(SimplicialGraph::edgeless(2));
  f = standard_form(word(free2, {{0, 1}, {1, 1}, {0, 1}, {1, 1}}), 0, free2);
  CHECK(f.y == word(free2, {{0, 1}, {1, 1}}));
  CHECK(f.c.is_identity());
  CHECK(f.b == free2.letter(1, 1));
  CHECK(code_of([&] { standard_form(free2.letter(1, 1), 0, free2); }) == ErrorCode::NoV0Letter);
}

TEST_CASE("standard form is unique and reassembles x") {
  const GraphProduct gp(SimplicialGraph(GraphData{{0, 1, 2, 3}, {{0, 1}, {1, 2}, {1, 3}}}),
                        {FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)});
  std::mt19937_64 rng(17);
  int checked = 0;
  while (checked < 100) {
    const GPElement x = normalize(random_word(gp, 7, rng), gp);
    for (int v0 = 0; v0 < 4; ++v0) {
      if (std::none_of(x.letters().begin(), x.letters().end(), [&](const Letter& l) { return l.vertex == v0; })) continue;
      const auto cands = standard_form_candidates(x, v0, gp);
      REQUIRE(cands.size() == 1);
      const StandardForm& f = cands.front();
      const GPElement yc = multiply(f.y, f.c, gp);
      const GPElement yca = multiply(yc, gp.letter(v0, f.a.elem), gp);
      CHECK(multiply(yca, f.b, gp) == x);
      CHECK(yca.length() + f.b.length() == x.length());
      CHECK(truncation_order_leq(yca, x, gp));
      CHECK(nc_length(yca, v0, gp) == nc_length_down(x, v0, gp));
      ++checked;
    }
  }
}

TEST_CASE("ball of K_{1,2} over Z/2 factors as Z/2 x D_inf") {
  const auto gp = z2_product(SimplicialGraph::complete_multipartite({1, 2}));
  for (int L = 1; L <= 5; ++L) {
    // Independent enumeration: centre letter (or not) times an alternating word in the leaves.
    std::set<GPElement> direct;
    for (int c = 0; c <= 1; ++c)
      for (int k = 0; k + c <= L; ++k)
        for (int first = 1; first <= 2; ++first) {
          LetterSeq w;
          if (c) w.push_back({0, 1});
          for (int i = 0; i < k; ++i) w.push_back({i % 2 == 0 ? first : 3 - first, 1});
          direct.insert(normalize(w, gp));
        }
    const auto B = ball(gp, L);
    CHECK(B.size() == direct.size());
    CHECK(std::set<GPElement>(B.begin(), B.end()) == direct);
    std::size_t expected = 0;
    for (int c = 0; c <= 1; ++c) expected += 1 + 2 * static_cast<std::size_t>(L - c);
    CHECK(B.size() == expected);
  }
}

TEST_CASE("ball ordering and budget") {
  const GraphProduct gp(SimplicialGraph::edgeless(2), {FiniteGroup::cyclic(3), FiniteGroup::cyclic(2)});
  const auto B = ball(gp, 3);
  // Free product Z/3 * Z/2: lengths 0..3 give 1, 3, 4, 6 elements.
  CHECK(B.size() == 14);
  CHECK(std::is_sorted(B.begin(), B.end()));
  CHECK(B.front().is_identity());
  CHECK(code_of([&] { ball(gp, 10, 50); }) == ErrorCode::BudgetExceeded);
  CHECK(alphabet(gp).size() == 3);
  CHECK(format_element(B.back(), gp) == "[1:1 0:2 1:1]");
  CHECK(format_element(GPElement{}, gp) == "[]");
}
