// Minimal library walkthrough: build a graph, compute the Omega_3 basis,
// cross-check it with the oracle, and print the document.

#include <iostream>

#include "pathchain/field.hpp"
#include "pathchain/generators.hpp"
#include "pathchain/io.hpp"
#include "pathchain/omega3.hpp"
#include "pathchain/oracle.hpp"

int main() {
  using namespace pathchain;
  const PrimeField field;

  // A hexagonal drum with a shortcut: the trapezohedron of order 3 plus one
  // extra arrow a -> j0, which turns two of its squares into triangles.
  auto g = trapezohedron(3);
  std::vector<std::pair<std::string, std::string>> edges;
  for (auto [u, v] : g.arrows()) edges.emplace_back(g.label(u), g.label(v));
  edges.emplace_back("a", "j0");
  g = Digraph::from_edges(edges);

  const auto basis = omega3_basis(field, g);
  std::cout << "dim Omega3 = " << basis.total_dim
            << " (oracle: " << omega_dim(field, g, 3) << ")\n\n";

  for (const auto& pb : basis.pairs) {
    std::cout << "pair (" << g.label(pb.a) << ", " << g.label(pb.b) << "), dim " << pb.dim
              << ":\n";
    for (const auto& elem : pb.elements) {
      std::cout << "  ";
      bool first = true;
      for (const auto& [path, coeff] : elem.chain.terms()) {
        std::cout << (field.eq(coeff, field.one()) ? (first ? "" : "+ ") : "- ") << "e[";
        for (std::size_t i = 0; i < path.size(); ++i)
          std::cout << (i ? " " : "") << g.label(path[i]);
        std::cout << "] ";
        first = false;
      }
      std::cout << "\n";
    }
  }

  std::cout << "\n" << write_basis(make_basis_document(field, g, basis));
  return 0;
}
