#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pathchain/digraph.hpp"
#include "pathchain/errors.hpp"

namespace pathchain {

/// An elementary p-path: a sequence of p+1 vertex ids, repetitions allowed.
/// Ordered lexicographically, which fixes the canonical term order of chains.
class ElemPath {
 public:
  explicit ElemPath(std::vector<VertexId> vertices) : v_(std::move(vertices)) {
    if (v_.empty()) throw Error("elementary path must be nonempty");
  }

  ElemPath(std::initializer_list<VertexId> vertices) : ElemPath(std::vector<VertexId>(vertices)) {}

  int degree() const noexcept { return static_cast<int>(v_.size()) - 1; }
  std::size_t size() const noexcept { return v_.size(); }
  VertexId operator[](std::size_t i) const noexcept { return v_[i]; }
  VertexId front() const noexcept { return v_.front(); }
  VertexId back() const noexcept { return v_.back(); }
  const std::vector<VertexId>& vertices() const noexcept { return v_; }

  /// No two consecutive vertices equal.
  bool is_regular() const noexcept {
    for (std::size_t i = 1; i < v_.size(); ++i)
      if (v_[i] == v_[i - 1]) return false;
    return true;
  }

  /// The path with the q-th vertex removed.
  ElemPath face(std::size_t q) const {
    std::vector<VertexId> w;
    w.reserve(v_.size() - 1);
    for (std::size_t i = 0; i < v_.size(); ++i)
      if (i != q) w.push_back(v_[i]);
    return ElemPath(std::move(w));
  }

  auto operator<=>(const ElemPath&) const = default;

 private:
  std::vector<VertexId> v_;
};

/// A sparse field-coefficient combination of elementary paths of one degree.
/// No explicit zeros are stored; iteration follows the canonical path order.
/// Degree -1 is the distinguished empty chain that ∂ of a 0-chain lands in.
template <class Field>
class Chain {
 public:
  using Elem = typename Field::Element;

  explicit Chain(int degree = -1) : degree_(degree) {}

  int degree() const noexcept { return degree_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t term_count() const noexcept { return terms_.size(); }
  const std::map<ElemPath, Elem>& terms() const noexcept { return terms_; }

  void add_term(const Field& f, const ElemPath& path, const Elem& coeff) {
    if (path.degree() != degree_) throw DegreeMismatchError();
    if (f.is_zero(coeff)) return;
    auto [it, inserted] = terms_.emplace(path, coeff);
    if (!inserted) {
      it->second = f.add(it->second, coeff);
      if (f.is_zero(it->second)) terms_.erase(it);
    }
  }

  Elem coeff(const Field& f, const ElemPath& path) const {
    auto it = terms_.find(path);
    return it == terms_.end() ? f.zero() : it->second;
  }

  void add(const Field& f, const Chain& other) {
    if (other.degree_ != degree_) throw DegreeMismatchError();
    for (const auto& [p, c] : other.terms_) add_term(f, p, c);
  }

  void scale(const Field& f, const Elem& s) {
    if (f.is_zero(s)) {
      terms_.clear();
      return;
    }
    for (auto& [p, c] : terms_) c = f.mul(c, s);
  }

  Chain negated(const Field& f) const {
    Chain out(degree_);
    for (const auto& [p, c] : terms_) out.terms_.emplace(p, f.neg(c));
    return out;
  }

  bool equals(const Field& f, const Chain& other) const {
    if (degree_ != other.degree_ || terms_.size() != other.terms_.size()) return false;
    auto it = other.terms_.begin();
    for (const auto& [p, c] : terms_) {
      if (p != it->first || !f.eq(c, it->second)) return false;
      ++it;
    }
    return true;
  }

 private:
  int degree_;
  std::map<ElemPath, Elem> terms_;
};

/// ∂ on the regular quotient: alternating sum of vertex deletions, with any
/// face containing two equal consecutive vertices dropped.
template <class Field>
Chain<Field> boundary(const Field& f, const Chain<Field>& c) {
  if (c.degree() < 0) throw Error("boundary requires degree >= 0");
  Chain<Field> out(c.degree() - 1);
  if (c.degree() == 0) return out;
  for (const auto& [path, coeff] : c.terms()) {
    for (std::size_t q = 0; q < path.size(); ++q) {
      ElemPath face = path.face(q);
      if (!face.is_regular()) continue;
      out.add_term(f, face, (q % 2 == 0) ? coeff : f.neg(coeff));
    }
  }
  return out;
}

namespace detail {

/// Allowedness without vertex-existence errors; paths touching unknown ids
/// are simply not allowed.
inline bool allowed_in(const Digraph& g, const ElemPath& p) noexcept {
  const auto n = static_cast<VertexId>(g.vertex_count());
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] < 0 || p[i] >= n) return false;
  for (std::size_t i = 1; i < p.size(); ++i)
    if (!g.has_arrow(p[i - 1], p[i])) return false;
  return true;
}

}  // namespace detail

/// True iff every consecutive pair of the path is an arrow of g.
inline bool is_allowed(const ElemPath& p, const Digraph& g) {
  const auto n = static_cast<VertexId>(g.vertex_count());
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] < 0 || p[i] >= n) throw UnknownVertexError("id " + std::to_string(p[i]));
  return detail::allowed_in(g, p);
}

inline constexpr std::size_t kNoBudget = std::numeric_limits<std::size_t>::max();

/// All allowed elementary paths of the given degree in canonical lexicographic
/// order, optionally restricted to fixed endpoints. Enumeration is a forward
/// DFS over out-adjacency; exceeding `budget` results raises BudgetExceeded.
inline std::vector<ElemPath> allowed_paths(
    const Digraph& g, int degree,
    std::optional<std::pair<VertexId, VertexId>> endpoints = std::nullopt,
    std::size_t budget = kNoBudget) {
  if (degree < 0) throw Error("path degree must be nonnegative");
  std::vector<ElemPath> out;
  std::vector<VertexId> prefix;
  auto emit = [&](std::vector<VertexId> vertices) {
    if (out.size() >= budget) throw BudgetExceededError(out.size() + 1);
    out.emplace_back(std::move(vertices));
  };
  auto extend = [&](auto&& self, VertexId v) -> void {
    prefix.push_back(v);
    if (static_cast<int>(prefix.size()) == degree + 1) {
      if (!endpoints || prefix.back() == endpoints->second) emit(prefix);
    } else {
      for (VertexId w : g.out(v)) self(self, w);
    }
    prefix.pop_back();
  };
  if (endpoints) {
    const auto n = static_cast<VertexId>(g.vertex_count());
    if (endpoints->first < 0 || endpoints->first >= n || endpoints->second < 0 ||
        endpoints->second >= n)
      throw UnknownVertexError("endpoint out of range");
    extend(extend, endpoints->first);
  } else {
    for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) extend(extend, v);
  }
  return out;
}

/// ∂-invariance: every term of c and of ∂c is allowed in g.
template <class Field>
bool is_invariant(const Field& f, const Chain<Field>& c, const Digraph& g) {
  for (const auto& [p, coeff] : c.terms())
    if (!detail::allowed_in(g, p)) return false;
  if (c.degree() <= 0) return true;
  const Chain<Field> d = boundary(f, c);
  for (const auto& [p, coeff] : d.terms())
    if (!detail::allowed_in(g, p)) return false;
  return true;
}

/// Splits a chain into its (first vertex, last vertex) clusters. The parts sum
/// back to the input exactly; the zero chain yields an empty map.
template <class Field>
std::map<std::pair<VertexId, VertexId>, Chain<Field>> cluster_decompose(const Field& f,
                                                                        const Chain<Field>& c) {
  std::map<std::pair<VertexId, VertexId>, Chain<Field>> parts;
  for (const auto& [p, coeff] : c.terms()) {
    auto key = std::make_pair(p.front(), p.back());
    auto [it, inserted] = parts.try_emplace(key, c.degree());
    it->second.add_term(f, p, coeff);
  }
  return parts;
}

/// Projects a single (a,b)-cluster of degree 3 onto its middle edges:
/// each term e_{a i j b} contributes its coefficient to e_{i j}.
template <class Field>
Chain<Field> edge_projection(const Field& f, const Chain<Field>& c) {
  if (c.degree() != 3) throw NotAClusterError();
  Chain<Field> out(1);
  std::optional<std::pair<VertexId, VertexId>> ends;
  for (const auto& [p, coeff] : c.terms()) {
    if (!ends) ends = std::make_pair(p.front(), p.back());
    if (p.front() != ends->first || p.back() != ends->second) throw NotAClusterError();
    out.add_term(f, ElemPath{p[1], p[2]}, coeff);
  }
  return out;
}

/// A vertex map between digraphs under which every arrow either maps to an
/// arrow or collapses to a vertex. Validated at construction.
class DigraphMorphism {
 public:
  DigraphMorphism(Digraph source, Digraph target, std::vector<VertexId> vertex_map)
      : source_(std::move(source)), target_(std::move(target)), map_(std::move(vertex_map)) {
    if (map_.size() != source_.vertex_count())
      throw Error("morphism vertex map must be total over the source");
    for (VertexId w : map_)
      if (w < 0 || static_cast<std::size_t>(w) >= target_.vertex_count())
        throw UnknownVertexError("morphism image out of range");
    for (auto [u, v] : source_.arrows()) {
      VertexId fu = map_[static_cast<std::size_t>(u)];
      VertexId fv = map_[static_cast<std::size_t>(v)];
      if (fu != fv && !target_.has_arrow(fu, fv))
        throw Error("vertex map is not a digraph morphism: arrow (" + source_.label(u) + ", " +
                    source_.label(v) + ") maps to a non-arrow");
    }
  }

  const Digraph& source() const noexcept { return source_; }
  const Digraph& target() const noexcept { return target_; }
  VertexId operator()(VertexId v) const { return map_.at(static_cast<std::size_t>(v)); }
  const std::vector<VertexId>& vertex_map() const noexcept { return map_; }

 private:
  Digraph source_;
  Digraph target_;
  std::vector<VertexId> map_;
};

/// f_*: relabels every term through the morphism, dropping terms whose image
/// is irregular, and combines like terms.
template <class Field>
Chain<Field> induced_map(const Field& f, const DigraphMorphism& m, const Chain<Field>& c) {
  Chain<Field> out(c.degree());
  for (const auto& [p, coeff] : c.terms()) {
    std::vector<VertexId> image;
    image.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) image.push_back(m(p[i]));
    ElemPath q(std::move(image));
    if (!q.is_regular()) continue;
    out.add_term(f, q, coeff);
  }
  return out;
}

/// True iff the target arrows are exactly the projections of source arrows
/// between distinct fibers.
inline bool is_merging_map(const DigraphMorphism& m) {
  std::set<std::pair<VertexId, VertexId>> projected;
  for (auto [u, v] : m.source().arrows()) {
    VertexId fu = m(u), fv = m(v);
    if (fu != fv) projected.emplace(fu, fv);
  }
  const auto target_arrows = m.target().arrows();
  return projected.size() == target_arrows.size() &&
         std::equal(projected.begin(), projected.end(), target_arrows.begin());
}

}  // namespace pathchain
