#pragma once

#include <string>
#include <utility>
#include <vector>

namespace gpm {

/// Raw graph data as it arrives from a config: vertex labels in their total
/// order, and edges given by label.
struct GraphData {
  std::vector<int> vertices;
  std::vector<std::pair<int, int>> edges;
};

/// Throws LoopEdge or UnknownVertex. Duplicate labels are reported as
/// UnknownVertex since the label no longer identifies a vertex.
void validate_graph(const GraphData& data);

/// Undirected loop-free graph. Vertices are addressed internally by their
/// position in the declared list; that position is the total order used by
/// canonical normal forms.
class SimplicialGraph {
 public:
  SimplicialGraph() = default;
  explicit SimplicialGraph(GraphData data);

  static SimplicialGraph edgeless(int n);
  static SimplicialGraph complete(int n);
  /// Complete multipartite graph; parts are consecutive index ranges.
  static SimplicialGraph complete_multipartite(const std::vector<int>& part_sizes);
  static SimplicialGraph path(int n);

  int size() const { return static_cast<int>(labels_.size()); }
  bool adjacent(int u, int v) const { return adj_[static_cast<std::size_t>(u * size() + v)] != 0; }
  int label(int v) const { return labels_.at(static_cast<std::size_t>(v)); }
  /// Throws UnknownVertex.
  int index_of(int label) const;
  const std::vector<int>& labels() const { return labels_; }
  /// Edges as index pairs (u < v), sorted.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  bool operator==(const SimplicialGraph& other) const {
    return labels_ == other.labels_ && edges_ == other.edges_;
  }

 private:
  std::vector<int> labels_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<char> adj_;
};

/// Raw multiplication table. `identity` and `inverse` may be left empty, in
/// which case `derive_structure` fills them from the table.
struct GroupTable {
  std::vector<std::vector<int>> mult;
  int identity = -1;
  std::vector<int> inverse;
};

/// Exhaustive axiom check: Latin square, two-sided identity, inverses,
/// associativity over all triples. Throws the matching ErrorCode.
void validate_group(const GroupTable& table);

/// Finds the identity and inverses of a Latin-square table. Throws
/// NotLatinSquare / BadIdentity / BadInverse if they do not exist.
GroupTable derive_structure(std::vector<std::vector<int>> mult);

class FiniteGroup {
 public:
  FiniteGroup() = default;
  /// Validates; throws on any axiom failure.
  explicit FiniteGroup(GroupTable table, std::string name = {});

  static FiniteGroup cyclic(int n);
  /// Permutations of {0..n-1} in lexicographic order, composed as
  /// (p*q)(i) = p(q(i)). Index 0 is the identity.
  static FiniteGroup symmetric(int n);
  /// Order 2n; element r^k s^j has index k + n*j.
  static FiniteGroup dihedral(int n);

  static constexpr int kMaxOrder = 120;

  int order() const { return static_cast<int>(inverse_.size()); }
  int identity() const { return identity_; }
  int mul(int a, int b) const { return mult_[static_cast<std::size_t>(a * order() + b)]; }
  int inv(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
  bool contains(int a) const { return a >= 0 && a < order(); }
  const std::string& name() const { return name_; }
  std::vector<std::vector<int>> table() const;

  bool operator==(const FiniteGroup& other) const {
    return mult_ == other.mult_ && identity_ == other.identity_;
  }

 private:
  std::vector<int> mult_;
  std::vector<int> inverse_;
  int identity_ = 0;
  std::string name_;
};

enum class GroupPreset { Cyclic, Symmetric, Dihedral };

/// Throws TooLarge when the resulting order exceeds FiniteGroup::kMaxOrder,
/// ConfigSchema for a nonpositive parameter.
FiniteGroup preset_group(GroupPreset kind, int n);

}  // namespace gpm
