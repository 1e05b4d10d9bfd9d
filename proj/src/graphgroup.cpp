#include "gpm/graphgroup.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "gpm/error.hpp"

namespace gpm {

void validate_graph(const GraphData& data) {
  std::set<int> labels(data.vertices.begin(), data.vertices.end());
  if (labels.size() != data.vertices.size()) {
    throw Error(ErrorCode::UnknownVertex, "duplicate vertex label");
  }
  for (const auto& [u, v] : data.edges) {
    if (!labels.contains(u) || !labels.contains(v)) {
      throw Error(ErrorCode::UnknownVertex,
                  "edge (" + std::to_string(u) + "," + std::to_string(v) + ") names an undeclared vertex");
    }
    if (u == v) {
      throw Error(ErrorCode::LoopEdge, "loop edge at vertex " + std::to_string(u));
    }
  }
}

SimplicialGraph::SimplicialGraph(GraphData data) {
  validate_graph(data);
  labels_ = std::move(data.vertices);
  const int n = size();
  adj_.assign(static_cast<std::size_t>(n * n), 0);
  std::set<std::pair<int, int>> edges;
  for (const auto& [lu, lv] : data.edges) {
    int u = index_of(lu);
    int v = index_of(lv);
    if (u > v) std::swap(u, v);
    edges.emplace(u, v);
    adj_[static_cast<std::size_t>(u * n + v)] = 1;
    adj_[static_cast<std::size_t>(v * n + u)] = 1;
  }
  edges_.assign(edges.begin(), edges.end());
}

int SimplicialGraph::index_of(int label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) {
    throw Error(ErrorCode::UnknownVertex, "unknown vertex " + std::to_string(label));
  }
  return static_cast<int>(it - labels_.begin());
}

SimplicialGraph SimplicialGraph::edgeless(int n) {
  GraphData d;
  d.vertices.resize(static_cast<std::size_t>(n));
  std::iota(d.vertices.begin(), d.vertices.end(), 0);
  return SimplicialGraph(std::move(d));
}

SimplicialGraph SimplicialGraph::complete(int n) {
  GraphData d;
  d.vertices.resize(static_cast<std::size_t>(n));
  std::iota(d.vertices.begin(), d.vertices.end(), 0);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) d.edges.emplace_back(u, v);
  return SimplicialGraph(std::move(d));
}

SimplicialGraph SimplicialGraph::complete_multipartite(const std::vector<int>& part_sizes) {
  GraphData d;
  std::vector<int> part;
  for (std::size_t p = 0; p < part_sizes.size(); ++p)
    for (int k = 0; k < part_sizes[p]; ++k) part.push_back(static_cast<int>(p));
  const int n = static_cast<int>(part.size());
  d.vertices.resize(static_cast<std::size_t>(n));
  std::iota(d.vertices.begin(), d.vertices.end(), 0);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (part[static_cast<std::size_t>(u)] != part[static_cast<std::size_t>(v)]) d.edges.emplace_back(u, v);
  return SimplicialGraph(std::move(d));
}

SimplicialGraph SimplicialGraph::path(int n) {
  GraphData d;
  d.vertices.resize(static_cast<std::size_t>(n));
  std::iota(d.vertices.begin(), d.vertices.end(), 0);
  for (int u = 0; u + 1 < n; ++u) d.edges.emplace_back(u, u + 1);
  return SimplicialGraph(std::move(d));
}

// ---------------------------------------------------------------------------

void validate_group(const GroupTable& table) {
  const auto& m = table.mult;
  const int n = static_cast<int>(m.size());
  if (n == 0) throw Error(ErrorCode::BadIdentity, "empty group table");
  for (const auto& row : m) {
    if (static_cast<int>(row.size()) != n) throw Error(ErrorCode::NotLatinSquare, "table is not square");
  }
  for (int a = 0; a < n; ++a) {
    std::vector<char> row_seen(static_cast<std::size_t>(n), 0), col_seen(static_cast<std::size_t>(n), 0);
    for (int b = 0; b < n; ++b) {
      int r = m[a][b];
      int c = m[b][a];
      if (r < 0 || r >= n || c < 0 || c >= n) {
        throw Error(ErrorCode::NotLatinSquare, "table entry out of range");
      }
      if (row_seen[r]++ || col_seen[c]++) {
        throw Error(ErrorCode::NotLatinSquare, "row or column " + std::to_string(a) + " repeats an element");
      }
    }
  }
  const int e = table.identity;
  if (e < 0 || e >= n) throw Error(ErrorCode::BadIdentity, "identity index out of range");
  for (int a = 0; a < n; ++a) {
    if (m[e][a] != a || m[a][e] != a) {
      throw Error(ErrorCode::BadIdentity, "element " + std::to_string(e) + " is not a two-sided identity");
    }
  }
  if (static_cast<int>(table.inverse.size()) != n) throw Error(ErrorCode::BadInverse, "inverse array has wrong size");
  for (int a = 0; a < n; ++a) {
    int ai = table.inverse[a];
    if (ai < 0 || ai >= n || m[ai][a] != e || m[a][ai] != e) {
      throw Error(ErrorCode::BadInverse, "bad inverse for element " + std::to_string(a));
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (m[m[a][b]][c] != m[a][m[b][c]]) {
          throw Error(ErrorCode::NotAssociative, "(ab)c != a(bc) for (" + std::to_string(a) + "," +
                                                     std::to_string(b) + "," + std::to_string(c) + ")");
        }
}

GroupTable derive_structure(std::vector<std::vector<int>> mult) {
  GroupTable t;
  t.mult = std::move(mult);
  const int n = static_cast<int>(t.mult.size());
  for (const auto& row : t.mult)
    if (static_cast<int>(row.size()) != n) throw Error(ErrorCode::NotLatinSquare, "table is not square");
  for (int a = 0; a < n && t.identity < 0; ++a) {
    bool ok = true;
    for (int b = 0; b < n && ok; ++b) ok = t.mult[a][b] == b && t.mult[b][a] == b;
    if (ok) t.identity = a;
  }
  if (t.identity < 0) {
    // Let validation pick the most specific diagnosis (a constant table is
    // not a Latin square before it lacks an identity).
    t.identity = 0;
    t.inverse.assign(static_cast<std::size_t>(n), 0);
    validate_group(t);
    throw Error(ErrorCode::BadIdentity, "table has no identity element");
  }
  t.inverse.assign(static_cast<std::size_t>(n), -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (t.mult[a][b] == t.identity && t.mult[b][a] == t.identity) t.inverse[a] = b;
  validate_group(t);
  return t;
}

FiniteGroup::FiniteGroup(GroupTable table, std::string name) : name_(std::move(name)) {
  validate_group(table);
  const int n = static_cast<int>(table.mult.size());
  mult_.reserve(static_cast<std::size_t>(n * n));
  for (const auto& row : table.mult) mult_.insert(mult_.end(), row.begin(), row.end());
  inverse_ = std::move(table.inverse);
  identity_ = table.identity;
}

std::vector<std::vector<int>> FiniteGroup::table() const {
  const int n = order();
  std::vector<std::vector<int>> t(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a)
    t[a].assign(mult_.begin() + a * n, mult_.begin() + (a + 1) * n);
  return t;
}

FiniteGroup FiniteGroup::cyclic(int n) { return preset_group(GroupPreset::Cyclic, n); }
FiniteGroup FiniteGroup::symmetric(int n) { return preset_group(GroupPreset::Symmetric, n); }
FiniteGroup FiniteGroup::dihedral(int n) { return preset_group(GroupPreset::Dihedral, n); }

namespace {

std::vector<std::vector<int>> cyclic_table(int n) {
  std::vector<std::vector<int>> m(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) m[a][b] = (a + b) % n;
  return m;
}

std::vector<std::vector<int>> symmetric_table(int n) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const int order = static_cast<int>(perms.size());
  std::vector<std::vector<int>> m(static_cast<std::size_t>(order), std::vector<int>(static_cast<std::size_t>(order)));
  std::vector<int> prod(static_cast<std::size_t>(n));
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      for (int i = 0; i < n; ++i) prod[i] = perms[a][perms[b][i]];
      m[a][b] = static_cast<int>(std::lower_bound(perms.begin(), perms.end(), prod) - perms.begin());
    }
  return m;
}

// r^k s^j with s r s = r^{-1}:  (r^a s^i)(r^b s^j) = r^{a + (-1)^i b} s^{i+j}
std::vector<std::vector<int>> dihedral_table(int n) {
  const int order = 2 * n;
  std::vector<std::vector<int>> m(static_cast<std::size_t>(order), std::vector<int>(static_cast<std::size_t>(order)));
  for (int x = 0; x < order; ++x)
    for (int y = 0; y < order; ++y) {
      int a = x % n, i = x / n, b = y % n, j = y / n;
      int k = ((a + (i ? -b : b)) % n + n) % n;
      m[x][y] = k + n * ((i + j) % 2);
    }
  return m;
}

}  // namespace

FiniteGroup preset_group(GroupPreset kind, int n) {
  if (n < 1) throw Error(ErrorCode::ConfigSchema, "group preset parameter must be positive");
  switch (kind) {
    case GroupPreset::Cyclic:
      if (n > FiniteGroup::kMaxOrder) throw Error(ErrorCode::TooLarge, "cyclic group order exceeds 120");
      return FiniteGroup(derive_structure(cyclic_table(n)), "Z/" + std::to_string(n));
    case GroupPreset::Symmetric: {
      long order = 1;
      for (int k = 2; k <= n; ++k) order *= k;
      if (order > FiniteGroup::kMaxOrder) throw Error(ErrorCode::TooLarge, "symmetric group order exceeds 120");
      return FiniteGroup(derive_structure(symmetric_table(n)), "S" + std::to_string(n));
    }
    case GroupPreset::Dihedral:
      if (2 * n > FiniteGroup::kMaxOrder) throw Error(ErrorCode::TooLarge, "dihedral group order exceeds 120");
      return FiniteGroup(derive_structure(dihedral_table(n)), "D" + std::to_string(n));
  }
  throw Error(ErrorCode::ConfigSchema, "unknown group preset");
}

}  // namespace gpm
