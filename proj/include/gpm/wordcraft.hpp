#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "gpm/graphgroup.hpp"

namespace gpm {

/// One syllable of a graph-product word: a nonidentity element of the group
/// sitting at `vertex` (an index into the graph's vertex list).
struct Letter {
  int vertex = 0;
  int elem = 0;
  auto operator<=>(const Letter&) const = default;
};

using LetterSeq = std::vector<Letter>;
using VertexWord = std::vector<int>;

/// An element of the graph product, stored as its canonical reduced word:
/// the lexicographically least (by vertex index) reduced rearrangement.
/// Equality of elements is equality of these sequences.
class GPElement {
 public:
  GPElement() = default;

  /// Wraps letters that are already canonical. No checking; use normalize().
  static GPElement from_canonical(LetterSeq letters) {
    GPElement x;
    x.letters_ = std::move(letters);
    return x;
  }

  const LetterSeq& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }
  VertexWord vertices() const;

  auto operator<=>(const GPElement& other) const {
    if (auto c = letters_.size() <=> other.letters_.size(); c != 0) return c;
    return letters_ <=> other.letters_;
  }
  bool operator==(const GPElement&) const = default;

 private:
  LetterSeq letters_;
};

using ElementSet = std::set<GPElement>;

inline constexpr std::size_t kDefaultBudget = 100000;

/// Graph plus one finite group per vertex: the data that determines the
/// graph product as a group.
class GraphProduct {
 public:
  GraphProduct() = default;
  /// Throws ContextMismatch when the group count differs from the vertex count.
  GraphProduct(SimplicialGraph graph, std::vector<FiniteGroup> groups);

  const SimplicialGraph& graph() const { return graph_; }
  const FiniteGroup& group(int v) const { return groups_.at(static_cast<std::size_t>(v)); }
  const std::vector<FiniteGroup>& groups() const { return groups_; }
  int vertex_count() const { return graph_.size(); }
  bool commute(int u, int v) const { return graph_.adjacent(u, v); }

  /// Single-letter element; the identity when `elem` is the vertex identity.
  GPElement letter(int vertex, int elem) const;

  bool operator==(const GraphProduct& other) const = default;

 private:
  SimplicialGraph graph_;
  std::vector<FiniteGroup> groups_;
};

// -- group law ---------------------------------------------------------------

/// Canonical reduced representative of a raw letter sequence. Identity letters
/// are dropped, same-vertex letters that can be brought together are merged.
/// Throws UnknownVertex, ElementOutOfRange.
GPElement normalize(std::span<const Letter> raw, const GraphProduct& ctx);

/// Throws ContextMismatch when a letter does not belong to `ctx`.
GPElement multiply(const GPElement& x, const GPElement& y, const GraphProduct& ctx);
GPElement inverse(const GPElement& x, const GraphProduct& ctx);

/// Lex-least rearrangement of an already reduced letter sequence.
LetterSeq canonical_order(std::span<const Letter> reduced, const GraphProduct& ctx);

// -- reduced words and rearrangements -----------------------------------------

bool is_reduced(const VertexWord& word, const SimplicialGraph& graph);
bool is_reduced(std::span<const Letter> word, const GraphProduct& ctx);

/// All letter sequences equivalent to `x` by commuting transpositions, in BFS
/// discovery order starting from the canonical sequence. Throws BudgetExceeded.
std::vector<LetterSeq> rearrangements(const GPElement& x, const GraphProduct& ctx,
                                      std::size_t budget = kDefaultBudget);

/// Positions of letters that can be moved to the front (resp. back) of some
/// rearrangement.
std::vector<std::size_t> leading_positions(std::span<const Letter> w, const GraphProduct& ctx);
std::vector<std::size_t> trailing_positions(std::span<const Letter> w, const GraphProduct& ctx);

/// One-step left and right truncations of x (canonical forms).
ElementSet truncations(const GPElement& x, const GraphProduct& ctx);

// -- truncation order and complete sets ----------------------------------------

/// x ⪯ y: x is reached from y by a chain of left/right truncations of
/// rearrangements (or x == y, or x is the identity). Throws BudgetExceeded.
bool truncation_order_leq(const GPElement& x, const GPElement& y, const GraphProduct& ctx,
                          std::size_t budget = kDefaultBudget);

/// Smallest complete set containing X and the identity.
ElementSet complete_closure(const ElementSet& X, const GraphProduct& ctx, std::size_t budget = kDefaultBudget);
ElementSet down_set(const GPElement& x, const GraphProduct& ctx, std::size_t budget = kDefaultBudget);

/// The completeness predicate checked literally: identity present, and both
/// truncations of every rearrangement of every member are members.
bool is_complete(const ElementSet& X, const GraphProduct& ctx, std::size_t budget = kDefaultBudget);

// -- non-commutative length and standard form ---------------------------------

/// Right-hand non-commutative length with respect to v0, or -1 when no
/// rearrangement ends in a v0 letter.
int nc_length(const GPElement& x, int v0, const GraphProduct& ctx);
int nc_length(const VertexWord& w, int v0, const SimplicialGraph& graph);
/// Max over members. Throws EmptySet.
int nc_length_set(const ElementSet& X, int v0, const GraphProduct& ctx);
/// ‖{x}^⪯‖_{v0}.
int nc_length_down(const GPElement& x, int v0, const GraphProduct& ctx);

/// x = y·c·a·b with a the distinguished v0 letter.
struct StandardForm {
  GPElement y;
  GPElement c;
  Letter a;
  GPElement b;
  auto operator<=>(const StandardForm&) const = default;
};

/// Every decomposition attaining the lexicographic minimum (|b|, |y|) of the
/// standard-form search. Uniqueness means this has exactly one member.
/// Throws NoV0Letter, BudgetExceeded.
std::vector<StandardForm> standard_form_candidates(const GPElement& x, int v0, const GraphProduct& ctx,
                                                   std::size_t budget = kDefaultBudget);

/// Throws NoV0Letter, BudgetExceeded, NotUnique.
StandardForm standard_form(const GPElement& x, int v0, const GraphProduct& ctx,
                           std::size_t budget = kDefaultBudget);

// -- enumeration ---------------------------------------------------------------

/// All elements with at most `radius` letters, ordered by (length, letters).
std::vector<GPElement> ball(const GraphProduct& ctx, int radius, std::size_t budget = kDefaultBudget);

/// Every nonidentity letter of every vertex group.
std::vector<Letter> alphabet(const GraphProduct& ctx);

/// "[v:g v:g ...]" with vertex labels; "[]" for the identity.
std::string format_element(const GPElement& x, const GraphProduct& ctx);

}  // namespace gpm

template <>
struct std::hash<gpm::GPElement> {
  std::size_t operator()(const gpm::GPElement& x) const noexcept {
    std::size_t h = x.length();
    for (const auto& l : x.letters()) h = h * 1000003u ^ (static_cast<std::size_t>(l.vertex) << 16 ^ static_cast<std::size_t>(l.elem));
    return h;
  }
};
