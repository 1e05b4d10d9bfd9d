#include "gpm/wordcraft.hpp"

#include <algorithm>
#include <deque>

#include "gpm/error.hpp"

namespace gpm {

VertexWord GPElement::vertices() const {
  VertexWord w;
  w.reserve(letters_.size());
  for (const auto& l : letters_) w.push_back(l.vertex);
  return w;
}

GraphProduct::GraphProduct(SimplicialGraph graph, std::vector<FiniteGroup> groups)
    : graph_(std::move(graph)), groups_(std::move(groups)) {
  if (static_cast<int>(groups_.size()) != graph_.size()) {
    throw Error(ErrorCode::ContextMismatch, "need exactly one group per vertex");
  }
}

GPElement GraphProduct::letter(int vertex, int elem) const {
  Letter l{vertex, elem};
  return normalize(std::span<const Letter>(&l, 1), *this);
}

namespace {

void check_letter(const Letter& l, const GraphProduct& ctx) {
  if (l.vertex < 0 || l.vertex >= ctx.vertex_count()) {
    throw Error(ErrorCode::UnknownVertex, "letter names vertex index " + std::to_string(l.vertex));
  }
  if (!ctx.group(l.vertex).contains(l.elem)) {
    throw Error(ErrorCode::ElementOutOfRange, "element " + std::to_string(l.elem) + " is not in the group at vertex " +
                                                  std::to_string(ctx.graph().label(l.vertex)));
  }
}

LetterSeq without(std::span<const Letter> w, std::size_t pos) {
  LetterSeq out;
  out.reserve(w.size() - 1);
  for (std::size_t i = 0; i < w.size(); ++i)
    if (i != pos) out.push_back(w[i]);
  return out;
}

int count_noncommuting(std::span<const Letter> w, int v0, const GraphProduct& ctx) {
  int n = 0;
  for (const auto& l : w)
    if (!ctx.commute(l.vertex, v0)) ++n;
  return n;
}

}  // namespace

LetterSeq canonical_order(std::span<const Letter> reduced, const GraphProduct& ctx) {
  LetterSeq rest(reduced.begin(), reduced.end());
  LetterSeq out;
  out.reserve(rest.size());
  while (!rest.empty()) {
    std::size_t pick = rest.size();
    for (std::size_t i = 0; i < rest.size(); ++i) {
      bool leading = true;
      for (std::size_t j = 0; j < i && leading; ++j) leading = ctx.commute(rest[j].vertex, rest[i].vertex);
      if (leading && (pick == rest.size() || rest[i].vertex < rest[pick].vertex)) pick = i;
    }
    out.push_back(rest[pick]);
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return out;
}

GPElement normalize(std::span<const Letter> raw, const GraphProduct& ctx) {
  LetterSeq w;
  w.reserve(raw.size());
  for (const Letter& l : raw) {
    check_letter(l, ctx);
    const FiniteGroup& g = ctx.group(l.vertex);
    if (l.elem == g.identity()) continue;
    // Find a letter at the same vertex that can slide to the right end.
    std::ptrdiff_t merge_at = -1;
    for (std::ptrdiff_t j = static_cast<std::ptrdiff_t>(w.size()) - 1; j >= 0; --j) {
      if (w[j].vertex == l.vertex) {
        merge_at = j;
        break;
      }
      if (!ctx.commute(w[j].vertex, l.vertex)) break;
    }
    if (merge_at < 0) {
      w.push_back(l);
      continue;
    }
    int prod = g.mul(w[merge_at].elem, l.elem);
    if (prod == g.identity()) {
      w.erase(w.begin() + merge_at);
    } else {
      w[merge_at].elem = prod;
    }
  }
  return GPElement::from_canonical(canonical_order(w, ctx));
}

GPElement multiply(const GPElement& x, const GPElement& y, const GraphProduct& ctx) {
  LetterSeq cat;
  cat.reserve(x.length() + y.length());
  cat.insert(cat.end(), x.letters().begin(), x.letters().end());
  cat.insert(cat.end(), y.letters().begin(), y.letters().end());
  try {
    return normalize(cat, ctx);
  } catch (const Error& e) {
    throw Error(ErrorCode::ContextMismatch, std::string("operand does not belong to this graph product: ") + e.what());
  }
}

GPElement inverse(const GPElement& x, const GraphProduct& ctx) {
  LetterSeq w;
  w.reserve(x.length());
  for (auto it = x.letters().rbegin(); it != x.letters().rend(); ++it) {
    w.push_back({it->vertex, ctx.group(it->vertex).inv(it->elem)});
  }
  return GPElement::from_canonical(canonical_order(w, ctx));
}

bool is_reduced(const VertexWord& word, const SimplicialGraph& graph) {
  for (std::size_t k = 0; k < word.size(); ++k)
    for (std::size_t l = k + 1; l < word.size(); ++l) {
      if (word[k] != word[l]) continue;
      bool separated = false;
      for (std::size_t p = k + 1; p < l && !separated; ++p) separated = !graph.adjacent(word[k], word[p]);
      if (!separated) return false;
    }
  return true;
}

bool is_reduced(std::span<const Letter> word, const GraphProduct& ctx) {
  VertexWord v;
  v.reserve(word.size());
  for (const auto& l : word) v.push_back(l.vertex);
  return is_reduced(v, ctx.graph());
}

std::vector<LetterSeq> rearrangements(const GPElement& x, const GraphProduct& ctx, std::size_t budget) {
  std::vector<LetterSeq> order{x.letters()};
  std::set<LetterSeq> seen{x.letters()};
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (std::size_t i = 0; i + 1 < order[head].size(); ++i) {
      const LetterSeq& cur = order[head];
      if (!ctx.commute(cur[i].vertex, cur[i + 1].vertex)) continue;
      LetterSeq next = cur;
      std::swap(next[i], next[i + 1]);
      if (seen.insert(next).second) {
        if (seen.size() > budget) throw Error(ErrorCode::BudgetExceeded, "rearrangement budget exceeded");
        order.push_back(std::move(next));
      }
    }
  }
  return order;
}

std::vector<std::size_t> leading_positions(std::span<const Letter> w, const GraphProduct& ctx) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    bool ok = true;
    for (std::size_t j = 0; j < i && ok; ++j) ok = ctx.commute(w[j].vertex, w[i].vertex);
    if (ok) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> trailing_positions(std::span<const Letter> w, const GraphProduct& ctx) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    bool ok = true;
    for (std::size_t j = i + 1; j < w.size() && ok; ++j) ok = ctx.commute(w[j].vertex, w[i].vertex);
    if (ok) out.push_back(i);
  }
  return out;
}

ElementSet truncations(const GPElement& x, const GraphProduct& ctx) {
  ElementSet out;
  const auto& w = x.letters();
  for (std::size_t i : leading_positions(w, ctx)) out.insert(GPElement::from_canonical(canonical_order(without(w, i), ctx)));
  for (std::size_t i : trailing_positions(w, ctx)) out.insert(GPElement::from_canonical(canonical_order(without(w, i), ctx)));
  return out;
}

bool truncation_order_leq(const GPElement& x, const GPElement& y, const GraphProduct& ctx, std::size_t budget) {
  if (x.is_identity() || x == y) return true;
  if (x.length() >= y.length()) return false;
  std::set<GPElement> visited{y};
  std::vector<GPElement> stack{y};
  while (!stack.empty()) {
    GPElement cur = std::move(stack.back());
    stack.pop_back();
    for (const GPElement& t : truncations(cur, ctx)) {
      if (t == x) return true;
      if (t.length() > x.length() && visited.insert(t).second) {
        if (visited.size() > budget) throw Error(ErrorCode::BudgetExceeded, "truncation-order budget exceeded");
        stack.push_back(t);
      }
    }
  }
  return false;
}

ElementSet complete_closure(const ElementSet& X, const GraphProduct& ctx, std::size_t budget) {
  ElementSet out(X.begin(), X.end());
  out.insert(GPElement{});
  std::deque<GPElement> queue(X.begin(), X.end());
  while (!queue.empty()) {
    GPElement cur = std::move(queue.front());
    queue.pop_front();
    for (const GPElement& t : truncations(cur, ctx)) {
      if (out.insert(t).second) {
        if (out.size() > budget) throw Error(ErrorCode::BudgetExceeded, "closure budget exceeded");
        queue.push_back(t);
      }
    }
  }
  return out;
}

ElementSet down_set(const GPElement& x, const GraphProduct& ctx, std::size_t budget) {
  return complete_closure(ElementSet{x}, ctx, budget);
}

bool is_complete(const ElementSet& X, const GraphProduct& ctx, std::size_t budget) {
  if (!X.contains(GPElement{})) return false;
  for (const GPElement& x : X) {
    if (x.is_identity()) continue;
    for (const LetterSeq& r : rearrangements(x, ctx, budget)) {
      auto left = GPElement::from_canonical(canonical_order(std::span<const Letter>(r).subspan(1), ctx));
      auto right = GPElement::from_canonical(canonical_order(std::span<const Letter>(r).first(r.size() - 1), ctx));
      if (!X.contains(left) || !X.contains(right)) return false;
    }
  }
  return true;
}

int nc_length(const GPElement& x, int v0, const GraphProduct& ctx) {
  const auto& w = x.letters();
  for (std::size_t i : trailing_positions(w, ctx)) {
    if (w[i].vertex == v0) return count_noncommuting(without(w, i), v0, ctx);
  }
  return -1;
}

int nc_length(const VertexWord& w, int v0, const SimplicialGraph& graph) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] != v0) continue;
    bool trailing = true;
    for (std::size_t j = i + 1; j < w.size() && trailing; ++j) trailing = graph.adjacent(w[j], v0);
    if (!trailing) continue;
    int n = 0;
    for (std::size_t j = 0; j < w.size(); ++j)
      if (j != i && !graph.adjacent(w[j], v0)) ++n;
    return n;
  }
  return -1;
}

int nc_length_set(const ElementSet& X, int v0, const GraphProduct& ctx) {
  if (X.empty()) throw Error(ErrorCode::EmptySet, "non-commutative length of an empty set");
  int best = -1;
  for (const GPElement& x : X) best = std::max(best, nc_length(x, v0, ctx));
  return best;
}

int nc_length_down(const GPElement& x, int v0, const GraphProduct& ctx) {
  return nc_length_set(down_set(x, ctx), v0, ctx);
}

std::vector<StandardForm> standard_form_candidates(const GPElement& x, int v0, const GraphProduct& ctx,
                                                   std::size_t budget) {
  const auto& xl = x.letters();
  if (std::none_of(xl.begin(), xl.end(), [&](const Letter& l) { return l.vertex == v0; })) {
    throw Error(ErrorCode::NoV0Letter, "element has no letter at the distinguished vertex");
  }
  const int target = nc_length_down(x, v0, ctx);
  const auto rs = rearrangements(x, ctx, budget);
  const std::size_t n = xl.size();

  // Pass 1: split points (r, p) where r[0..p] ends in v0 and attains the
  // target length; keep those with the shortest tail b.
  std::size_t best_tail = n;
  std::vector<std::pair<const LetterSeq*, std::size_t>> splits;
  for (const LetterSeq& r : rs) {
    for (std::size_t p = 0; p < n; ++p) {
      if (r[p].vertex != v0) continue;
      if (count_noncommuting(std::span<const Letter>(r).first(p), v0, ctx) != target) continue;
      std::size_t tail = n - 1 - p;
      if (tail < best_tail) {
        best_tail = tail;
        splits.clear();
      }
      if (tail == best_tail) splits.emplace_back(&r, p);
    }
  }

  // Pass 2: shortest y with y·a ⪯ x and the same non-commutative length.
  std::size_t best_head = n;
  std::set<StandardForm> found;
  for (const auto& [r, p] : splits) {
    std::span<const Letter> seq(*r);
    for (std::size_t i = 0; i <= p && i <= best_head; ++i) {
      LetterSeq ya(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(i));
      if (count_noncommuting(ya, v0, ctx) != target) continue;
      ya.push_back(seq[p]);
      if (!is_reduced(ya, ctx)) continue;
      if (!truncation_order_leq(GPElement::from_canonical(canonical_order(ya, ctx)), x, ctx, budget)) continue;
      if (i < best_head) {
        best_head = i;
        found.clear();
      }
      found.insert(StandardForm{
          GPElement::from_canonical(canonical_order(seq.first(i), ctx)),
          GPElement::from_canonical(canonical_order(seq.subspan(i, p - i), ctx)),
          seq[p],
          GPElement::from_canonical(canonical_order(seq.subspan(p + 1), ctx)),
      });
      break;
    }
  }
  return {found.begin(), found.end()};
}

StandardForm standard_form(const GPElement& x, int v0, const GraphProduct& ctx, std::size_t budget) {
  auto all = standard_form_candidates(x, v0, ctx, budget);
  if (all.size() != 1) {
    throw Error(ErrorCode::NotUnique, "standard form search returned " + std::to_string(all.size()) + " minimizers");
  }
  return all.front();
}

std::vector<Letter> alphabet(const GraphProduct& ctx) {
  std::vector<Letter> out;
  for (int v = 0; v < ctx.vertex_count(); ++v) {
    const FiniteGroup& g = ctx.group(v);
    for (int a = 0; a < g.order(); ++a)
      if (a != g.identity()) out.push_back({v, a});
  }
  return out;
}

std::vector<GPElement> ball(const GraphProduct& ctx, int radius, std::size_t budget) {
  std::vector<GPElement> out{GPElement{}};
  const auto letters = alphabet(ctx);
  std::vector<GPElement> frontier{GPElement{}};
  for (int len = 1; len <= radius; ++len) {
    ElementSet next;
    for (const GPElement& x : frontier) {
      for (const Letter& l : letters) {
        LetterSeq w = x.letters();
        w.push_back(l);
        GPElement y = normalize(w, ctx);
        if (static_cast<int>(y.length()) == len) next.insert(std::move(y));
      }
      if (out.size() + next.size() > budget) throw Error(ErrorCode::BudgetExceeded, "ball enumeration budget exceeded");
    }
    frontier.assign(next.begin(), next.end());
    out.insert(out.end(), frontier.begin(), frontier.end());
  }
  return out;
}

std::string format_element(const GPElement& x, const GraphProduct& ctx) {
  std::string out = "[";
  for (std::size_t i = 0; i < x.length(); ++i) {
    const Letter& l = x.letters()[i];
    if (i) out += ' ';
    out += std::to_string(ctx.graph().label(l.vertex)) + ":" + std::to_string(l.elem);
  }
  return out + "]";
}

}  // namespace gpm
