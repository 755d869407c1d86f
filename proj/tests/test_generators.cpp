#include <catch2/catch_amalgamated.hpp>

#include "pathchain/field.hpp"
#include "pathchain/generators.hpp"
#include "pathchain/oracle.hpp"

using namespace pathchain;

namespace {
const PrimeField gf;
}

TEST_CASE("trapezohedron shape") {
  auto t2 = trapezohedron(2);
  REQUIRE(t2.vertex_count() == 6);
  REQUIRE(t2.arrow_count() == 8);

  auto t5 = trapezohedron(5);
  REQUIRE(t5.vertex_count() == 12);
  REQUIRE(t5.arrow_count() == 20);
  for (std::size_t k = 0; k < 5; ++k) {
    auto i = [&](std::size_t x) { return t5.id_of("i" + std::to_string(x % 5)); };
    auto j = [&](std::size_t x) { return t5.id_of("j" + std::to_string(x % 5)); };
    REQUIRE(t5.has_arrow(t5.id_of("a"), i(k)));
    REQUIRE(t5.has_arrow(i(k), j(k)));
    REQUIRE(t5.has_arrow(j(k), t5.id_of("b")));
    REQUIRE(t5.has_arrow(i(k + 1), j(k)));
  }

  REQUIRE_THROWS_AS(trapezohedron(1), OrderTooSmallError);
  REQUIRE_THROWS_AS(trapezohedron_chain(gf, 1), OrderTooSmallError);
}

TEST_CASE("canonical trapezohedron chain") {
  auto tau2 = trapezohedron_chain(gf, 2);
  REQUIRE(tau2.term_count() == 4);
  auto t2 = trapezohedron(2);
  auto id = [&](const char* l) { return t2.id_of(l); };
  REQUIRE(gf.eq(tau2.coeff(gf, ElemPath{id("a"), id("i0"), id("j0"), id("b")}), gf.one()));
  REQUIRE(gf.eq(tau2.coeff(gf, ElemPath{id("a"), id("i1"), id("j0"), id("b")}),
                gf.neg(gf.one())));
  REQUIRE(gf.eq(tau2.coeff(gf, ElemPath{id("a"), id("i1"), id("j1"), id("b")}), gf.one()));
  REQUIRE(gf.eq(tau2.coeff(gf, ElemPath{id("a"), id("i0"), id("j1"), id("b")}),
                gf.neg(gf.one())));

  for (std::size_t m = 2; m <= 8; ++m) {
    auto c = trapezohedron_chain(gf, m);
    REQUIRE(c.term_count() == 2 * m);
    REQUIRE(is_invariant(gf, c, trapezohedron(m)));
  }

  auto d = boundary(gf, tau2);
  REQUIRE(d.term_count() == 8);
  for (const auto& [p, coeff] : d.terms()) REQUIRE(is_allowed(p, t2));
}

TEST_CASE("trapezohedra have one-dimensional Omega_3 and the oracle basis matches") {
  for (std::size_t m = 2; m <= 8; ++m) {
    auto tm = trapezohedron(m);
    REQUIRE(omega_dim(gf, tm, 3) == 1);
    auto basis = omega_basis(gf, tm, 3);
    REQUIRE(basis.size() == 1);
    // The kernel chain is a scalar multiple of the canonical chain.
    auto tau = trapezohedron_chain(gf, m);
    std::vector<Chain<PrimeField>> both{basis[0], tau};
    REQUIRE(rank_of(gf, both) == 1);
  }
}

TEST_CASE("merging quotients") {
  auto t2 = trapezohedron(2);
  // Singleton partition: an isomorphic copy.
  std::vector<VertexSubset> singletons;
  for (std::size_t v = 0; v < t2.vertex_count(); ++v)
    singletons.push_back(VertexSubset::of(t2.vertex_count(), {static_cast<VertexId>(v)}));
  auto [copy, ident] = merging_quotient(t2, singletons);
  REQUIRE(copy.vertex_count() == t2.vertex_count());
  REQUIRE(copy.arrow_count() == t2.arrow_count());
  REQUIRE(is_merging_map(ident));

  // Everything into one block: a point with no arrows.
  auto [point, collapse] = merging_quotient(t2, {VertexSubset::of(6, {0, 1, 2, 3, 4, 5})});
  REQUIRE(point.vertex_count() == 1);
  REQUIRE(point.arrow_count() == 0);
  REQUIRE(is_merging_map(collapse));

  // Partition violations.
  REQUIRE_THROWS_AS(merging_quotient(t2, {VertexSubset::of(6, {0, 1})}), NotAPartitionError);
  REQUIRE_THROWS_AS(
      merging_quotient(t2, {VertexSubset::of(6, {0, 1, 2}), VertexSubset::of(6, {2, 3, 4, 5})}),
      NotAPartitionError);

  // Quotients by random partitions are always merging maps, and push
  // invariant chains to invariant chains.
  SplitMix64 rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 2 + rng.next_below(4);
    auto tm = trapezohedron(m);
    std::vector<VertexSubset> blocks(1 + rng.next_below(tm.vertex_count()),
                                     VertexSubset(tm.vertex_count()));
    for (std::size_t v = 0; v < tm.vertex_count(); ++v)
      blocks[rng.next_below(blocks.size())].insert(static_cast<VertexId>(v));
    std::erase_if(blocks, [](const VertexSubset& b) { return b.empty(); });
    auto [q, proj] = merging_quotient(tm, blocks);
    REQUIRE(is_merging_map(proj));
    auto image = induced_map(gf, proj, trapezohedron_chain(gf, m));
    REQUIRE(is_invariant(gf, image, q));
  }
}

TEST_CASE("seeded random digraphs are reproducible and loop-free") {
  REQUIRE(random_digraph({0, 0.5, 1}).vertex_count() == 0);
  auto complete = random_digraph({3, 1.0, 5});
  REQUIRE(complete.arrow_count() == 6);
  auto empty = random_digraph({5, 0.0, 5});
  REQUIRE(empty.arrow_count() == 0);
  REQUIRE(empty.vertex_count() == 5);

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto g1 = random_digraph({12, 0.3, seed});
    auto g2 = random_digraph({12, 0.3, seed});
    REQUIRE(g1.arrows() == g2.arrows());
    for (auto [u, v] : g1.arrows()) REQUIRE(u != v);
  }
}
