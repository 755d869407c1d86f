#pragma once

#include <utility>
#include <vector>

#include "pathchain/digraph.hpp"
#include "pathchain/generators.hpp"

namespace fixtures {

using pathchain::Digraph;

/// a <-> b.
inline Digraph two_cycle() { return Digraph::from_edges({{"a", "b"}, {"b", "a"}}); }

/// a -> i -> j -> b with the shortcuts i -> b and a -> j: the smallest graph
/// whose Omega_3 is spanned by a single elementary path.
inline Digraph shortcut_square() {
  return Digraph::from_edges({{"a", "i"}, {"i", "j"}, {"j", "b"}, {"i", "b"}, {"a", "j"}});
}

/// Five vertices a, i, j, c, b where the (a, b) basis has one two-terminal
/// generator: S_1 = {(i, c), (c, j)} around the single middle arrow i -> j.
inline Digraph linked_pentagon() {
  return Digraph::from_edges({{"a", "i"},
                              {"i", "j"},
                              {"j", "b"},
                              {"a", "c"},
                              {"c", "b"},
                              {"i", "c"},
                              {"c", "j"}});
}

inline Digraph path3() { return Digraph::from_edges({{"a", "b"}, {"b", "c"}}); }

inline Digraph triangle() {
  return Digraph::from_edges({{"a", "b"}, {"b", "c"}, {"a", "c"}});
}

}  // namespace fixtures
