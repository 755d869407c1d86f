#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pathchain/chains.hpp"
#include "pathchain/digraph.hpp"
#include "pathchain/errors.hpp"

namespace pathchain {

/// SplitMix64: the fixture PRNG. Chosen because its output stream is fully
/// specified by the seed, independent of platform and standard library.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), from the top 53 bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound).
  std::uint64_t next_below(std::uint64_t bound) { return bound ? next() % bound : 0; }

 private:
  std::uint64_t state_;
};

/// The trapezohedron T_m: vertices a, b, i0..i(m-1), j0..j(m-1) and the 4m
/// arrows a -> i_k -> j_k -> b, i_{k+1} -> j_k, indices mod m.
inline Digraph trapezohedron(std::size_t m) {
  if (m < 2) throw OrderTooSmallError(m);
  std::vector<std::string> labels{"a", "b"};
  for (std::size_t k = 0; k < m; ++k) labels.push_back("i" + std::to_string(k));
  for (std::size_t k = 0; k < m; ++k) labels.push_back("j" + std::to_string(k));
  const auto i = [&](std::size_t k) { return static_cast<VertexId>(2 + (k % m)); };
  const auto j = [&](std::size_t k) { return static_cast<VertexId>(2 + m + (k % m)); };
  std::vector<std::pair<VertexId, VertexId>> arrows;
  arrows.reserve(4 * m);
  for (std::size_t k = 0; k < m; ++k) {
    arrows.emplace_back(0, i(k));
    arrows.emplace_back(i(k), j(k));
    arrows.emplace_back(j(k), 1);
    arrows.emplace_back(i(k + 1), j(k));
  }
  return Digraph(std::move(labels), std::move(arrows));
}

/// The canonical generator of Omega_3(T_m): the alternating sum
/// sum_k (e_{a i_k j_k b} - e_{a i_{k+1} j_k b}) over trapezohedron(m)'s ids.
template <class Field>
Chain<Field> trapezohedron_chain(const Field& f, std::size_t m) {
  if (m < 2) throw OrderTooSmallError(m);
  const auto i = [&](std::size_t k) { return static_cast<VertexId>(2 + (k % m)); };
  const auto j = [&](std::size_t k) { return static_cast<VertexId>(2 + m + (k % m)); };
  Chain<Field> c(3);
  for (std::size_t k = 0; k < m; ++k) {
    c.add_term(f, ElemPath{0, i(k), j(k), 1}, f.one());
    c.add_term(f, ElemPath{0, i(k + 1), j(k), 1}, f.neg(f.one()));
  }
  return c;
}

/// Collapses each block of a vertex partition to a single vertex. The quotient
/// has one vertex per block (labelled after the block's minimum-id member) and
/// an arrow between distinct blocks iff some pair of members has one; internal
/// arrows disappear. Returns the quotient and the projection morphism, which
/// is a merging map by construction.
inline std::pair<Digraph, DigraphMorphism> merging_quotient(const Digraph& g,
                                                            const std::vector<VertexSubset>& blocks) {
  const std::size_t n = g.vertex_count();
  std::vector<VertexId> block_of(n, -1);
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (blocks[k].universe() != n || blocks[k].empty())
      throw NotAPartitionError("blocks must be nonempty subsets of the vertex set");
    bool first = true;
    blocks[k].for_each([&](VertexId v) {
      if (block_of[static_cast<std::size_t>(v)] != -1)
        throw NotAPartitionError("blocks overlap at '" + g.label(v) + "'");
      block_of[static_cast<std::size_t>(v)] = static_cast<VertexId>(k);
      if (first) {
        labels.push_back(g.label(v));
        first = false;
      }
    });
  }
  for (std::size_t v = 0; v < n; ++v)
    if (block_of[v] == -1)
      throw NotAPartitionError("vertex '" + g.label(static_cast<VertexId>(v)) + "' is uncovered");
  std::vector<std::pair<VertexId, VertexId>> arrows;
  for (auto [u, v] : g.arrows()) {
    VertexId bu = block_of[static_cast<std::size_t>(u)];
    VertexId bv = block_of[static_cast<std::size_t>(v)];
    if (bu != bv) arrows.emplace_back(bu, bv);
  }
  Digraph quotient(std::move(labels), std::move(arrows));
  DigraphMorphism projection(g, quotient, std::move(block_of));
  return {std::move(quotient), std::move(projection)};
}

/// Parameters of a seeded Erdos-Renyi style digraph: every ordered pair
/// (u, v), u != v, becomes an arrow independently with probability p, so
/// double arrows arise naturally.
struct RandomSpec {
  std::size_t n = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
};

/// Deterministic random digraph: pairs are visited in row-major order and
/// decided by one SplitMix64 draw each, so a seed pins the arrow set exactly.
inline Digraph random_digraph(const RandomSpec& spec) {
  SplitMix64 rng(spec.seed);
  std::vector<std::string> labels;
  labels.reserve(spec.n);
  for (std::size_t v = 0; v < spec.n; ++v) labels.push_back("v" + std::to_string(v));
  std::vector<std::pair<VertexId, VertexId>> arrows;
  for (std::size_t u = 0; u < spec.n; ++u)
    for (std::size_t v = 0; v < spec.n; ++v) {
      if (u == v) continue;
      if (rng.next_double() < spec.p)
        arrows.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
    }
  return Digraph(std::move(labels), std::move(arrows));
}

}  // namespace pathchain
