#pragma once

#include <algorithm>
#include <atomic>
#include <cassert>
#include <exception>
#include <cstddef>
#include <mutex>
#include <optional>
#include <queue>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include "pathchain/chains.hpp"
#include "pathchain/digraph.hpp"
#include "pathchain/errors.hpp"

namespace pathchain {

/// Which side of the middle layer an S_k edge touches: FromComponent edges
/// leave the component for the common region, ToComponent edges enter it.
enum class LinkSide { FromComponent, ToComponent };

struct LinkEdge {
  VertexId tail, head;  // host ids
  LinkSide side;

  std::pair<VertexId, VertexId> edge() const noexcept { return {tail, head}; }
};

/// Everything the per-pair basis construction derives from an ordered vertex
/// pair (a, b): the neighborhood split, the induced middle digraph
/// H = Ind(succ_only, pred_only) with its components and spanning forest, the
/// direct-edge set behind the single-term generators, and the per-component
/// link groups S_k behind the two-terminal generators.
struct PairAnalysis {
  VertexId a = 0, b = 0;

  VertexSubset succ;       // N+(a) \ {b}
  VertexSubset pred;       // N-(b) \ {a}
  VertexSubset common;     // succ ∩ pred
  VertexSubset succ_only;  // succ \ pred
  VertexSubset pred_only;  // pred \ succ

  Digraph middle;                      // Ind(succ_only, pred_only), dense ids
  std::vector<VertexId> middle_to_host;
  std::vector<VertexSubset> components;  // of middle, min-id order
  Forest forest;                         // of middle
  std::vector<std::pair<VertexId, VertexId>> off_forest_edges;  // middle ids, lexicographic

  std::vector<std::pair<VertexId, VertexId>> direct_edges;  // host ids, lexicographic
  std::vector<std::vector<LinkEdge>> link_groups;           // per component, lexicographic

  std::size_t cycle_space_dim() const noexcept {
    return middle.arrow_count() - middle.vertex_count() + components.size();
  }

  std::size_t link_dim() const noexcept {
    std::size_t d = 0;
    for (const auto& group : link_groups)
      if (group.size() >= 2) d += group.size() - 1;
    return d;
  }
};

/// Runs the per-pair decomposition for (a, b); a = b is handled identically.
inline PairAnalysis analyze_pair(const Digraph& g, VertexId a, VertexId b) {
  PairAnalysis pa;
  pa.a = a;
  pa.b = b;
  pa.succ = g.out_neighborhood(a);
  pa.succ.erase(b);
  pa.pred = g.in_neighborhood(b);
  pa.pred.erase(a);
  pa.common = pa.succ & pa.pred;
  pa.succ_only = pa.succ - pa.pred;
  pa.pred_only = pa.pred - pa.succ;

  auto [middle, to_host] = g.induced_from_to_mapped(pa.succ_only, pa.pred_only);
  pa.middle = std::move(middle);
  pa.middle_to_host = std::move(to_host);
  pa.components = pa.middle.undirected_components();
  pa.forest = pa.middle.spanning_forest();
  for (auto e : pa.middle.arrows())
    if (!pa.forest.has_edge(e)) pa.off_forest_edges.push_back(e);

  // Region sets of the dimension formula: direct edges run from
  // N+(a) ∩ (N-(b) ∪ {b}) to (N+(a) ∪ {a}) ∩ N-(b). With a -> b these pick up
  // b and a; otherwise both collapse to the common neighborhood.
  VertexSubset direct_tails = g.in_neighborhood(b);
  direct_tails.insert(b);
  direct_tails &= g.out_neighborhood(a);
  VertexSubset direct_heads = g.out_neighborhood(a);
  direct_heads.insert(a);
  direct_heads &= g.in_neighborhood(b);

  direct_tails.for_each([&](VertexId i) {
    for (VertexId j : g.out(i))
      if (direct_heads.contains(j)) pa.direct_edges.emplace_back(i, j);
  });

  // Component index of each middle vertex, then the link groups.
  std::vector<std::size_t> comp_of(pa.middle.vertex_count());
  for (std::size_t k = 0; k < pa.components.size(); ++k)
    pa.components[k].for_each([&](VertexId v) { comp_of[static_cast<std::size_t>(v)] = k; });
  std::vector<VertexId> host_to_middle(g.vertex_count(), -1);
  for (std::size_t i = 0; i < pa.middle_to_host.size(); ++i)
    host_to_middle[static_cast<std::size_t>(pa.middle_to_host[i])] = static_cast<VertexId>(i);

  pa.link_groups.resize(pa.components.size());
  for (std::size_t mv = 0; mv < pa.middle.vertex_count(); ++mv) {
    const VertexId host = pa.middle_to_host[mv];
    if (!pa.succ_only.contains(host)) continue;
    for (VertexId j : g.out(host))
      if (direct_heads.contains(j))
        pa.link_groups[comp_of[mv]].push_back({host, j, LinkSide::FromComponent});
  }
  direct_tails.for_each([&](VertexId c) {
    for (VertexId j : g.out(c)) {
      if (!pa.pred_only.contains(j)) continue;
      const std::size_t k = comp_of[static_cast<std::size_t>(host_to_middle[j])];
      pa.link_groups[k].push_back({c, j, LinkSide::ToComponent});
    }
  });
  for (auto& group : pa.link_groups)
    std::sort(group.begin(), group.end(),
              [](const LinkEdge& x, const LinkEdge& y) { return x.edge() < y.edge(); });
  return pa;
}

/// dim of the (a,b) summand by the structural formula:
/// cycle space of the middle digraph + direct edges + link surplus.
inline std::size_t pair_dimension(const PairAnalysis& pa) {
  return pa.cycle_space_dim() + pa.direct_edges.size() + pa.link_dim();
}

enum class GeneratorKind { B0, B1, B2 };

struct B0Provenance {
  std::pair<VertexId, VertexId> off_forest_edge;  // host ids
  std::vector<VertexId> cycle;                    // host ids, tail of the edge first
};

struct B1Provenance {
  std::pair<VertexId, VertexId> edge;  // host ids
};

struct B2Provenance {
  std::size_t component = 0;
  LinkEdge base, partner;
  std::vector<VertexId> walk;  // host ids, base endpoint .. partner endpoint
};

/// One emitted basis chain with its construction record. Coefficients are
/// always +1 or -1; the B0 anchor (off-forest edge) and B2 anchor (base edge)
/// carry +1.
template <class Field>
struct BasisElement {
  Chain<Field> chain;
  GeneratorKind kind;
  std::variant<B0Provenance, B1Provenance, B2Provenance> provenance;
};

namespace detail {

template <class Field>
void add_sign_term(const Field& f, Chain<Field>& chain, VertexId a, VertexId i, VertexId j,
                   VertexId b, bool positive) {
  chain.add_term(f, ElemPath{a, i, j, b}, positive ? f.one() : f.neg(f.one()));
}

}  // namespace detail

/// Cycle-type generators: one element per off-forest edge e of the middle
/// digraph, with alternating signs along the fundamental cycle C_e and the
/// term of e normalized to +1.
template <class Field>
std::vector<BasisElement<Field>> b0_generators(const Field& f, const Digraph& g,
                                               const PairAnalysis& pa) {
  (void)g;
  std::vector<BasisElement<Field>> out;
  out.reserve(pa.off_forest_edges.size());
  for (auto e : pa.off_forest_edges) {
    const std::vector<VertexId> cycle = pa.middle.fundamental_cycle(pa.forest, e);
    const std::size_t len = cycle.size();
    BasisElement<Field> elem{Chain<Field>(3), GeneratorKind::B0, B0Provenance{}};
    for (std::size_t k = 0; k < len; ++k) {
      const VertexId x = cycle[k];
      const VertexId y = cycle[(k + 1) % len];
      const VertexId hx = pa.middle_to_host[static_cast<std::size_t>(x)];
      const VertexId hy = pa.middle_to_host[static_cast<std::size_t>(y)];
      // Orientation: middle arrows always run succ_only -> pred_only.
      const bool forward = pa.succ_only.contains(hx);
      detail::add_sign_term(f, elem.chain, pa.a, forward ? hx : hy, forward ? hy : hx, pa.b,
                            k % 2 == 0);
    }
    B0Provenance prov;
    prov.off_forest_edge = {pa.middle_to_host[static_cast<std::size_t>(e.first)],
                            pa.middle_to_host[static_cast<std::size_t>(e.second)]};
    prov.cycle.reserve(len);
    for (VertexId v : cycle) prov.cycle.push_back(pa.middle_to_host[static_cast<std::size_t>(v)]);
    elem.provenance = std::move(prov);
    out.push_back(std::move(elem));
  }
  return out;
}

/// Single-term generators: e_{a i j b} for each direct edge (i, j).
template <class Field>
std::vector<BasisElement<Field>> b1_generators(const Field& f, const Digraph& g,
                                               const PairAnalysis& pa) {
  (void)g;
  std::vector<BasisElement<Field>> out;
  out.reserve(pa.direct_edges.size());
  for (auto [i, j] : pa.direct_edges) {
    BasisElement<Field> elem{Chain<Field>(3), GeneratorKind::B1, B1Provenance{{i, j}}};
    detail::add_sign_term(f, elem.chain, pa.a, i, j, pa.b, true);
    out.push_back(std::move(elem));
  }
  return out;
}

/// Two-terminal generators: for each component whose link group S_k has n_k
/// edges, n_k - 1 elements pairing the lexicographically smallest edge with
/// each of the others. The connecting walk is the BFS-shortest undirected walk
/// inside the component between the two link endpoints (ascending-id
/// tie-break); signs alternate along [base, walk..., partner] from +1.
template <class Field>
std::vector<BasisElement<Field>> b2_generators(const Field& f, const Digraph& g,
                                               const PairAnalysis& pa) {
  (void)g;
  std::vector<BasisElement<Field>> out;
  std::vector<VertexId> host_to_middle;
  const auto middle_endpoint = [&](const LinkEdge& e) {
    const VertexId host = e.side == LinkSide::FromComponent ? e.tail : e.head;
    return host_to_middle[static_cast<std::size_t>(host)];
  };
  bool adjacency_ready = false;
  std::vector<std::vector<VertexId>> adj;
  for (std::size_t k = 0; k < pa.link_groups.size(); ++k) {
    const auto& group = pa.link_groups[k];
    if (group.size() < 2) continue;
    if (host_to_middle.empty()) {
      host_to_middle.assign(pa.succ.universe(), -1);
      for (std::size_t i = 0; i < pa.middle_to_host.size(); ++i)
        host_to_middle[static_cast<std::size_t>(pa.middle_to_host[i])] = static_cast<VertexId>(i);
    }
    if (!adjacency_ready) {
      adj = pa.middle.undirected_adjacency();
      adjacency_ready = true;
    }
    const LinkEdge& base = group.front();
    // One BFS from the base endpoint serves every partner in the component.
    const VertexId source = middle_endpoint(base);
    std::vector<VertexId> parent(pa.middle.vertex_count(), -1);
    std::vector<bool> seen(pa.middle.vertex_count(), false);
    std::queue<VertexId> q;
    q.push(source);
    seen[static_cast<std::size_t>(source)] = true;
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop();
      for (VertexId w : adj[static_cast<std::size_t>(v)]) {
        if (seen[static_cast<std::size_t>(w)]) continue;
        seen[static_cast<std::size_t>(w)] = true;
        parent[static_cast<std::size_t>(w)] = v;
        q.push(w);
      }
    }
    for (std::size_t s = 1; s < group.size(); ++s) {
      const LinkEdge& partner = group[s];
      std::vector<VertexId> walk;  // middle ids, source .. target
      for (VertexId v = middle_endpoint(partner); v != -1;
           v = parent[static_cast<std::size_t>(v)])
        walk.push_back(v);
      std::reverse(walk.begin(), walk.end());
      assert(walk.front() == source);

      BasisElement<Field> elem{Chain<Field>(3), GeneratorKind::B2, B2Provenance{}};
      bool positive = true;
      detail::add_sign_term(f, elem.chain, pa.a, base.tail, base.head, pa.b, positive);
      for (std::size_t t = 1; t < walk.size(); ++t) {
        positive = !positive;
        const VertexId hx = pa.middle_to_host[static_cast<std::size_t>(walk[t - 1])];
        const VertexId hy = pa.middle_to_host[static_cast<std::size_t>(walk[t])];
        const bool forward = pa.succ_only.contains(hx);
        detail::add_sign_term(f, elem.chain, pa.a, forward ? hx : hy, forward ? hy : hx, pa.b,
                              positive);
      }
      positive = !positive;
      detail::add_sign_term(f, elem.chain, pa.a, partner.tail, partner.head, pa.b, positive);

      B2Provenance prov;
      prov.component = k;
      prov.base = base;
      prov.partner = partner;
      prov.walk.reserve(walk.size());
      for (VertexId v : walk) prov.walk.push_back(pa.middle_to_host[static_cast<std::size_t>(v)]);
      elem.provenance = std::move(prov);
      out.push_back(std::move(elem));
    }
  }
  return out;
}

template <class Field>
struct PairBasis {
  VertexId a = 0, b = 0;
  std::size_t dim = 0;
  std::vector<BasisElement<Field>> elements;
};

/// The assembled global basis: per-pair entries for every ordered pair with a
/// nonzero summand, in (a, b) order, plus the total dimension.
template <class Field>
struct Omega3Basis {
  std::vector<PairBasis<Field>> pairs;
  std::size_t total_dim = 0;
};

struct Omega3Options {
  unsigned jobs = 1;
  /// Basis materialization refuses graphs above this vertex count;
  /// dimension-only computations are unguarded.
  std::size_t max_basis_vertices = 4096;
};

namespace detail {

/// Runs fn(pair_index) for every ordered pair 0..n*n-1, fanning out over
/// `jobs` threads. fn must write only to its own slot. The first exception
/// thrown by any worker is rethrown on the calling thread.
template <class Fn>
void for_each_ordered_pair(std::size_t n, unsigned jobs, Fn&& fn) {
  const std::size_t total = n * n;
  if (jobs <= 1 || total < 2) {
    for (std::size_t idx = 0; idx < total; ++idx) fn(idx);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    try {
      for (std::size_t idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1)) {
        if (failed.load(std::memory_order_relaxed)) return;
        fn(idx);
      }
    } catch (...) {
      std::scoped_lock lock(error_mutex);
      if (!error) error = std::current_exception();
      failed.store(true, std::memory_order_relaxed);
    }
  };
  std::vector<std::thread> pool;
  const unsigned count = std::min<unsigned>(jobs, std::thread::hardware_concurrency() > 0
                                                      ? std::thread::hardware_concurrency()
                                                      : jobs);
  for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

/// Per-pair basis of the (a,b) summand.
template <class Field>
PairBasis<Field> pair_basis(const Field& f, const Digraph& g, const PairAnalysis& pa) {
  PairBasis<Field> pb;
  pb.a = pa.a;
  pb.b = pa.b;
  pb.dim = pair_dimension(pa);
  auto append = [&](std::vector<BasisElement<Field>>&& v) {
    for (auto& e : v) pb.elements.push_back(std::move(e));
  };
  append(b0_generators(f, g, pa));
  append(b1_generators(f, g, pa));
  append(b2_generators(f, g, pa));
  assert(pb.elements.size() == pb.dim);
  return pb;
}

/// The full structural basis of Omega_3(G): every ordered pair (a, b),
/// including a = b, processed independently and merged in canonical order.
/// Results are byte-deterministic for fixed input, whatever `jobs` is.
template <class Field>
Omega3Basis<Field> omega3_basis(const Field& f, const Digraph& g, const Omega3Options& opts = {}) {
  const std::size_t n = g.vertex_count();
  if (n > opts.max_basis_vertices) throw BudgetExceededError(n);
  std::vector<std::optional<PairBasis<Field>>> slots(n * n);
  detail::for_each_ordered_pair(n, opts.jobs, [&](std::size_t idx) {
    const auto a = static_cast<VertexId>(idx / n);
    const auto b = static_cast<VertexId>(idx % n);
    PairAnalysis pa = analyze_pair(g, a, b);
    if (pair_dimension(pa) == 0) return;
    slots[idx] = pair_basis(f, g, pa);
  });
  Omega3Basis<Field> basis;
  for (auto& slot : slots) {
    if (!slot) continue;
    basis.total_dim += slot->dim;
    basis.pairs.push_back(std::move(*slot));
  }
  return basis;
}

/// dim Omega_3(G) by the per-pair formula; never materializes chains.
inline std::size_t omega3_dim(const Digraph& g, unsigned jobs = 1) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> dims(n * n, 0);
  detail::for_each_ordered_pair(n, jobs, [&](std::size_t idx) {
    dims[idx] = pair_dimension(analyze_pair(g, static_cast<VertexId>(idx / n),
                                            static_cast<VertexId>(idx % n)));
  });
  std::size_t total = 0;
  for (std::size_t d : dims) total += d;
  return total;
}

}  // namespace pathchain
