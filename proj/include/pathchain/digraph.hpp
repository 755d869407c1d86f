#pragma once

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstdint>
#include <queue>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pathchain/errors.hpp"

namespace pathchain {

using VertexId = std::int32_t;

/// A subset of the vertices 0..n-1 of a fixed digraph, stored as a bitset
/// with a cached cardinality. All set algebra used by the per-pair analysis
/// runs on these.
class VertexSubset {
 public:
  VertexSubset() = default;

  explicit VertexSubset(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  static VertexSubset of(std::size_t universe, std::initializer_list<VertexId> ids) {
    VertexSubset s(universe);
    for (VertexId v : ids) s.insert(v);
    return s;
  }

  std::size_t universe() const noexcept { return universe_; }
  std::size_t count() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }

  bool contains(VertexId v) const noexcept {
    if (v < 0 || static_cast<std::size_t>(v) >= universe_) return false;
    return (words_[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1u;
  }

  void insert(VertexId v) {
    assert(v >= 0 && static_cast<std::size_t>(v) < universe_);
    std::uint64_t& w = words_[static_cast<std::size_t>(v) >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (v & 63);
    if (!(w & bit)) {
      w |= bit;
      ++count_;
    }
  }

  void erase(VertexId v) {
    if (v < 0 || static_cast<std::size_t>(v) >= universe_) return;
    std::uint64_t& w = words_[static_cast<std::size_t>(v) >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (v & 63);
    if (w & bit) {
      w &= ~bit;
      --count_;
    }
  }

  VertexSubset& operator&=(const VertexSubset& o) {
    assert(universe_ == o.universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    recount();
    return *this;
  }

  VertexSubset& operator|=(const VertexSubset& o) {
    assert(universe_ == o.universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    recount();
    return *this;
  }

  /// Set difference: removes every element of `o`.
  VertexSubset& operator-=(const VertexSubset& o) {
    assert(universe_ == o.universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    recount();
    return *this;
  }

  friend VertexSubset operator&(VertexSubset a, const VertexSubset& b) { return a &= b; }
  friend VertexSubset operator|(VertexSubset a, const VertexSubset& b) { return a |= b; }
  friend VertexSubset operator-(VertexSubset a, const VertexSubset& b) { return a -= b; }

  bool intersects(const VertexSubset& o) const {
    assert(universe_ == o.universe_);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  bool operator==(const VertexSubset& o) const {
    return universe_ == o.universe_ && words_ == o.words_;
  }

  /// Elements in ascending order.
  std::vector<VertexId> to_vector() const {
    std::vector<VertexId> out;
    out.reserve(count_);
    for_each([&](VertexId v) { out.push_back(v); });
    return out;
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        const int bit = std::countr_zero(w);
        fn(static_cast<VertexId>(i * 64 + static_cast<std::size_t>(bit)));
        w &= w - 1;
      }
    }
  }

 private:
  void recount() {
    std::size_t c = 0;
    for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
    count_ = c;
  }

  std::size_t universe_ = 0;
  std::size_t count_ = 0;
  std::vector<std::uint64_t> words_;
};

/// A spanning forest of a digraph viewed as an undirected graph. Edges are a
/// subset of the host's arrows; each component is rooted at its minimum-id
/// vertex and carries a BFS parent map.
struct Forest {
  std::vector<std::pair<VertexId, VertexId>> edges;  // host arrows, sorted
  std::vector<VertexId> parent;                      // -1 at roots
  std::vector<std::int32_t> depth;
  std::vector<VertexId> roots;  // ascending

  std::size_t edge_count() const noexcept { return edges.size(); }

  bool has_edge(std::pair<VertexId, VertexId> e) const {
    return std::binary_search(edges.begin(), edges.end(), e);
  }

  /// True when the undirected pair {u, v} is a tree edge.
  bool joins(VertexId u, VertexId v) const {
    return (parent[static_cast<std::size_t>(u)] == v) ||
           (parent[static_cast<std::size_t>(v)] == u);
  }
};

/// A finite digraph without self-loops. Vertices are dense ids 0..n-1 with a
/// label table; adjacency lists are sorted. Immutable after construction, so
/// instances can be shared freely across threads.
class Digraph {
 public:
  Digraph() = default;

  /// Builds from an explicit label table and id arrows. Duplicate arrows are
  /// dropped silently; a self-loop raises SelfLoopError.
  Digraph(std::vector<std::string> labels, std::vector<std::pair<VertexId, VertexId>> arrows)
      : labels_(std::move(labels)) {
    const std::size_t n = labels_.size();
    out_.resize(n);
    in_.resize(n);
    for (std::size_t i = 0; i < n; ++i) index_.emplace(labels_[i], static_cast<VertexId>(i));
    if (index_.size() != n) throw Error("vertex labels are not distinct");
    std::sort(arrows.begin(), arrows.end());
    arrows.erase(std::unique(arrows.begin(), arrows.end()), arrows.end());
    for (auto [u, v] : arrows) {
      if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n)
        throw UnknownVertexError("arrow endpoint out of range");
      if (u == v) throw SelfLoopError(labels_[static_cast<std::size_t>(u)]);
      out_[static_cast<std::size_t>(u)].push_back(v);
      in_[static_cast<std::size_t>(v)].push_back(u);
      ++arrow_count_;
    }
    for (auto& a : in_) std::sort(a.begin(), a.end());
  }

  /// Builds from labelled edges; vertex ids follow first appearance, with any
  /// extra isolated vertices appended afterwards.
  static Digraph from_edges(const std::vector<std::pair<std::string, std::string>>& edges,
                            const std::vector<std::string>& isolated = {}) {
    std::vector<std::string> labels;
    std::unordered_map<std::string, VertexId> ids;
    auto intern = [&](const std::string& tok) {
      auto [it, inserted] = ids.emplace(tok, static_cast<VertexId>(labels.size()));
      if (inserted) labels.push_back(tok);
      return it->second;
    };
    std::vector<std::pair<VertexId, VertexId>> arrows;
    arrows.reserve(edges.size());
    for (const auto& [u, v] : edges) {
      if (u == v) throw SelfLoopError(u);
      const VertexId iu = intern(u);
      const VertexId iv = intern(v);
      arrows.emplace_back(iu, iv);
    }
    for (const auto& tok : isolated) intern(tok);
    return Digraph(std::move(labels), std::move(arrows));
  }

  std::size_t vertex_count() const noexcept { return labels_.size(); }
  std::size_t arrow_count() const noexcept { return arrow_count_; }

  const std::vector<std::string>& labels() const noexcept { return labels_; }

  const std::string& label(VertexId v) const {
    check_vertex(v);
    return labels_[static_cast<std::size_t>(v)];
  }

  VertexId id_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw UnknownVertexError(label);
    return it->second;
  }

  bool has_vertex(const std::string& label) const { return index_.count(label) != 0; }

  bool has_arrow(VertexId u, VertexId v) const {
    if (u < 0 || static_cast<std::size_t>(u) >= vertex_count()) return false;
    const auto& a = out_[static_cast<std::size_t>(u)];
    return std::binary_search(a.begin(), a.end(), v);
  }

  const std::vector<VertexId>& out(VertexId v) const {
    check_vertex(v);
    return out_[static_cast<std::size_t>(v)];
  }

  const std::vector<VertexId>& in(VertexId v) const {
    check_vertex(v);
    return in_[static_cast<std::size_t>(v)];
  }

  /// All arrows in canonical (tail, head) order.
  std::vector<std::pair<VertexId, VertexId>> arrows() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    out.reserve(arrow_count_);
    for (std::size_t u = 0; u < out_.size(); ++u)
      for (VertexId v : out_[u]) out.emplace_back(static_cast<VertexId>(u), v);
    return out;
  }

  VertexSubset out_neighborhood(VertexId v) const {
    check_vertex(v);
    VertexSubset s(vertex_count());
    for (VertexId w : out_[static_cast<std::size_t>(v)]) s.insert(w);
    return s;
  }

  VertexSubset in_neighborhood(VertexId v) const {
    check_vertex(v);
    VertexSubset s(vertex_count());
    for (VertexId w : in_[static_cast<std::size_t>(v)]) s.insert(w);
    return s;
  }

  /// The induced digraph from A to B together with the map from its dense ids
  /// back to host ids. Vertices are A ∪ B in ascending host order, isolated
  /// vertices retained; arrows are exactly those starting in A and ending in B.
  std::pair<Digraph, std::vector<VertexId>> induced_from_to_mapped(const VertexSubset& from,
                                                                   const VertexSubset& to) const {
    if (from.intersects(to)) throw OverlappingSetsError();
    std::vector<VertexId> to_host = (from | to).to_vector();
    std::vector<VertexId> host_to_new(vertex_count(), -1);
    std::vector<std::string> labels;
    labels.reserve(to_host.size());
    for (std::size_t i = 0; i < to_host.size(); ++i) {
      host_to_new[static_cast<std::size_t>(to_host[i])] = static_cast<VertexId>(i);
      labels.push_back(label(to_host[i]));
    }
    std::vector<std::pair<VertexId, VertexId>> arrows;
    from.for_each([&](VertexId u) {
      for (VertexId v : out_[static_cast<std::size_t>(u)])
        if (to.contains(v))
          arrows.emplace_back(host_to_new[static_cast<std::size_t>(u)],
                              host_to_new[static_cast<std::size_t>(v)]);
    });
    return {Digraph(std::move(labels), std::move(arrows)), std::move(to_host)};
  }

  Digraph induced_from_to(const VertexSubset& from, const VertexSubset& to) const {
    return induced_from_to_mapped(from, to).first;
  }

  /// All arrows with tail in A and head in B; A and B may overlap.
  std::vector<std::pair<VertexId, VertexId>> edge_set_between(const VertexSubset& from,
                                                              const VertexSubset& to) const {
    std::vector<std::pair<VertexId, VertexId>> out;
    from.for_each([&](VertexId u) {
      for (VertexId v : out_[static_cast<std::size_t>(u)])
        if (to.contains(v)) out.emplace_back(u, v);
    });
    return out;
  }

  /// Adjacency with arrow directions ignored, sorted ascending.
  std::vector<std::vector<VertexId>> undirected_adjacency() const {
    std::vector<std::vector<VertexId>> adj(vertex_count());
    for (std::size_t v = 0; v < vertex_count(); ++v) {
      auto& a = adj[v];
      a.reserve(out_[v].size() + in_[v].size());
      std::merge(out_[v].begin(), out_[v].end(), in_[v].begin(), in_[v].end(),
                 std::back_inserter(a));
      a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    return adj;
  }

  /// Partition into undirected connected components, ordered by minimum id.
  std::vector<VertexSubset> undirected_components() const {
    const auto adj = undirected_adjacency();
    std::vector<VertexSubset> comps;
    std::vector<bool> seen(vertex_count(), false);
    for (std::size_t s = 0; s < vertex_count(); ++s) {
      if (seen[s]) continue;
      VertexSubset comp(vertex_count());
      std::queue<VertexId> q;
      q.push(static_cast<VertexId>(s));
      seen[s] = true;
      while (!q.empty()) {
        VertexId v = q.front();
        q.pop();
        comp.insert(v);
        for (VertexId w : adj[static_cast<std::size_t>(v)]) {
          if (!seen[static_cast<std::size_t>(w)]) {
            seen[static_cast<std::size_t>(w)] = true;
            q.push(w);
          }
        }
      }
      comps.push_back(std::move(comp));
    }
    return comps;
  }

  /// Deterministic spanning forest of the undirected view: BFS from the
  /// minimum-id vertex of each component, neighbors explored in ascending id
  /// order. Forest edges are stored as the underlying host arrows.
  Forest spanning_forest() const {
    const auto adj = undirected_adjacency();
    Forest f;
    f.parent.assign(vertex_count(), -1);
    f.depth.assign(vertex_count(), 0);
    std::vector<bool> seen(vertex_count(), false);
    for (std::size_t s = 0; s < vertex_count(); ++s) {
      if (seen[s]) continue;
      f.roots.push_back(static_cast<VertexId>(s));
      std::queue<VertexId> q;
      q.push(static_cast<VertexId>(s));
      seen[s] = true;
      while (!q.empty()) {
        VertexId v = q.front();
        q.pop();
        for (VertexId w : adj[static_cast<std::size_t>(v)]) {
          if (seen[static_cast<std::size_t>(w)]) continue;
          seen[static_cast<std::size_t>(w)] = true;
          f.parent[static_cast<std::size_t>(w)] = v;
          f.depth[static_cast<std::size_t>(w)] = f.depth[static_cast<std::size_t>(v)] + 1;
          f.edges.emplace_back(has_arrow(v, w) ? std::pair{v, w} : std::pair{w, v});
          q.push(w);
        }
      }
    }
    std::sort(f.edges.begin(), f.edges.end());
    return f;
  }

  /// The unique undirected cycle closed by the off-forest arrow e, returned as
  /// a cyclic vertex sequence starting at e's tail and traversing e first.
  std::vector<VertexId> fundamental_cycle(const Forest& forest,
                                          std::pair<VertexId, VertexId> e) const {
    auto [u, v] = e;
    if (!has_arrow(u, v))
      throw UnknownEdgeError("(" + describe(u) + ", " + describe(v) + ")");
    if (forest.has_edge(e)) throw EdgeInForestError("(" + label(u) + ", " + label(v) + ")");
    assert(forest.parent.size() == vertex_count());
    // Walk both endpoints up to their lowest common ancestor.
    std::vector<VertexId> from_head{v};
    std::vector<VertexId> from_tail{u};
    VertexId x = v, y = u;
    auto dep = [&](VertexId w) { return forest.depth[static_cast<std::size_t>(w)]; };
    auto par = [&](VertexId w) { return forest.parent[static_cast<std::size_t>(w)]; };
    while (dep(x) > dep(y)) from_head.push_back(x = par(x));
    while (dep(y) > dep(x)) from_tail.push_back(y = par(y));
    while (x != y) {
      from_head.push_back(x = par(x));
      from_tail.push_back(y = par(y));
    }
    // Cycle: tail, e's head, ... up to the LCA ..., back down toward the tail.
    std::vector<VertexId> cycle{u};
    cycle.insert(cycle.end(), from_head.begin(), from_head.end());
    if (cycle.back() == u) cycle.pop_back();  // LCA is the tail itself
    for (auto i = static_cast<std::int64_t>(from_tail.size()) - 2; i >= 1; --i)
      cycle.push_back(from_tail[static_cast<std::size_t>(i)]);
    return cycle;
  }

 private:
  void check_vertex(VertexId v) const {
    if (v < 0 || static_cast<std::size_t>(v) >= vertex_count())
      throw UnknownVertexError("id " + std::to_string(v));
  }

  std::string describe(VertexId v) const {
    return (v >= 0 && static_cast<std::size_t>(v) < vertex_count())
               ? labels_[static_cast<std::size_t>(v)]
               : "id " + std::to_string(v);
  }

  std::vector<std::string> labels_;
  std::unordered_map<std::string, VertexId> index_;
  std::vector<std::vector<VertexId>> out_;
  std::vector<std::vector<VertexId>> in_;
  std::size_t arrow_count_ = 0;
};

}  // namespace pathchain
