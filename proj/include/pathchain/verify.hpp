#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pathchain/digraph.hpp"
#include "pathchain/io.hpp"
#include "pathchain/omega3.hpp"
#include "pathchain/oracle.hpp"

namespace pathchain {

struct VerifyReport {
  bool ok = true;
  std::size_t structural_dim = 0;
  std::size_t oracle_dim = 0;
  std::size_t checks = 0;
  std::vector<std::string> failures;

  void fail(std::string what) {
    ok = false;
    failures.push_back(std::move(what));
  }
};

/// Cross-validates the structural computation against the exact-linear-algebra
/// oracle: per-pair and total dimensions, the structural counting identities,
/// ∂-invariance of every emitted generator, and the rank of the emitted basis.
template <class Field>
VerifyReport verify_graph(const Field& f, const Digraph& g,
                          const OracleOptions& oracle_opts = {}) {
  VerifyReport report;
  const auto n = static_cast<VertexId>(g.vertex_count());
  std::vector<Chain<Field>> all_chains;
  std::size_t structural_total = 0;

  for (VertexId a = 0; a < n; ++a) {
    for (VertexId b = 0; b < n; ++b) {
      const std::string where = "pair (" + g.label(a) + ", " + g.label(b) + ")";
      PairAnalysis pa = analyze_pair(g, a, b);
      const std::size_t structural = pair_dimension(pa);
      structural_total += structural;
      ++report.checks;
      const std::size_t oracle = omega_pair_dim(f, g, 3, a, b, oracle_opts);
      if (structural != oracle)
        report.fail(where + ": structural dim " + std::to_string(structural) +
                    " != oracle dim " + std::to_string(oracle));
      if (structural == 0) continue;

      PairBasis<Field> pb = pair_basis(f, g, pa);
      if (pb.elements.size() != structural)
        report.fail(where + ": emitted " + std::to_string(pb.elements.size()) +
                    " generators for dim " + std::to_string(structural));
      const auto b0 = static_cast<std::size_t>(
          std::count_if(pb.elements.begin(), pb.elements.end(),
                        [](const auto& e) { return e.kind == GeneratorKind::B0; }));
      const auto b2 = static_cast<std::size_t>(
          std::count_if(pb.elements.begin(), pb.elements.end(),
                        [](const auto& e) { return e.kind == GeneratorKind::B2; }));
      if (b0 != pa.cycle_space_dim())
        report.fail(where + ": |B0| != |E(H)| - |V(H)| + t");
      if (b2 != pa.link_dim())
        report.fail(where + ": |B2| != sum of max(0, |S_k| - 1)");
      std::vector<Chain<Field>> pair_chains;
      for (const auto& elem : pb.elements) {
        if (!is_invariant(f, elem.chain, g))
          report.fail(where + ": emitted generator is not partial-invariant");
        pair_chains.push_back(elem.chain);
        all_chains.push_back(elem.chain);
      }
      if (rank_of(f, pair_chains) != structural)
        report.fail(where + ": basis rank != dim");
    }
  }

  report.structural_dim = structural_total;
  report.oracle_dim = omega_dim(f, g, 3, oracle_opts);
  if (report.structural_dim != report.oracle_dim)
    report.fail("total: structural dim " + std::to_string(report.structural_dim) +
                " != oracle dim " + std::to_string(report.oracle_dim));
  if (rank_of(f, all_chains) != report.structural_dim)
    report.fail("total: rank of emitted basis != dim");
  return report;
}

/// Replays a basis document against the graph it claims to describe: graph
/// summary and digest, then an exact comparison with a freshly computed
/// document, locating the first mismatching pair, plus ∂-invariance of every
/// stored generator.
template <class Field>
VerifyReport verify_document(const Field& f, const Digraph& g, const BasisDocument& doc,
                             const Omega3Options& omega_opts = {}) {
  VerifyReport report;
  if (doc.vertices != g.vertex_count() || doc.arrows != g.arrow_count())
    report.fail("graph summary does not match input graph");
  if (doc.digest != input_digest(g)) report.fail("input digest mismatch");
  if (doc.field != f.name())
    report.fail("document field '" + doc.field + "' does not match '" + f.name() + "'");

  for (const auto& pr : doc.pairs) {
    const std::string where = "pair (" + pr.a + ", " + pr.b + ")";
    for (const auto& gen : pr.generators) {
      Chain<Field> chain(3);
      bool resolvable = true;
      for (const auto& term : gen.terms) {
        std::vector<VertexId> ids;
        for (const auto& label : term.path) {
          if (!g.has_vertex(label)) {
            report.fail(where + ": unknown vertex '" + label + "' in a stored term");
            resolvable = false;
            break;
          }
          ids.push_back(g.id_of(label));
        }
        if (!resolvable) break;
        chain.add_term(f, ElemPath(std::move(ids)), f.from_int(term.coeff));
      }
      if (resolvable && !is_invariant(f, chain, g))
        report.fail(where + ": stored generator is not partial-invariant");
    }
  }

  const BasisDocument fresh = make_basis_document(f, g, omega3_basis(f, g, omega_opts));
  report.structural_dim = fresh.total_dim;
  if (doc.total_dim != fresh.total_dim)
    report.fail("total_dim " + std::to_string(doc.total_dim) + " != computed " +
                std::to_string(fresh.total_dim));
  const std::size_t common = std::min(doc.pairs.size(), fresh.pairs.size());
  for (std::size_t i = 0; i < common; ++i) {
    const auto& stored = doc.pairs[i];
    const auto& computed = fresh.pairs[i];
    const std::string where = "pair (" + computed.a + ", " + computed.b + ")";
    if (stored.a != computed.a || stored.b != computed.b) {
      report.fail("pair list diverges at " + where);
      break;
    }
    if (stored.dim != computed.dim) {
      report.fail(where + ": stored dim " + std::to_string(stored.dim) + " != computed " +
                  std::to_string(computed.dim));
      continue;
    }
    if (write_basis(BasisDocument{0, 0, "", "", "", stored.dim, {stored}}) !=
        write_basis(BasisDocument{0, 0, "", "", "", computed.dim, {computed}}))
      report.fail(where + ": stored generators differ from computed generators");
  }
  if (doc.pairs.size() != fresh.pairs.size())
    report.fail("document has " + std::to_string(doc.pairs.size()) + " pair records, computed " +
                std::to_string(fresh.pairs.size()));
  report.checks = doc.pairs.size() + 1;
  return report;
}

}  // namespace pathchain
