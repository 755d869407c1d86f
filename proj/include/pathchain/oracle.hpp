#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "pathchain/chains.hpp"
#include "pathchain/digraph.hpp"
#include "pathchain/errors.hpp"

namespace pathchain {

struct OracleOptions {
  /// Cap on the number of allowed paths the oracle will enumerate.
  std::size_t budget = 2'000'000;
};

/// The boundary map restricted to its non-allowed coordinates: rows are the
/// allowed p-paths in canonical order, columns the non-allowed regular
/// (p-1)-paths that appear in some row's boundary. Omega_p is the kernel of
/// this matrix read as a map out of the row space.
template <class Field>
struct BoundaryMatrix {
  std::vector<ElemPath> rows;
  std::vector<ElemPath> cols;
  // Per row: (column index, coefficient), column indices ascending.
  std::vector<std::vector<std::pair<std::size_t, typename Field::Element>>> entries;
};

template <class Field>
BoundaryMatrix<Field> boundary_matrix(const Field& f, const Digraph& g,
                                      std::vector<ElemPath> allowed) {
  BoundaryMatrix<Field> m;
  m.rows = std::move(allowed);
  std::vector<std::map<ElemPath, typename Field::Element>> row_faces(m.rows.size());
  std::map<ElemPath, std::size_t> col_index;
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    const ElemPath& path = m.rows[r];
    if (path.degree() == 0) continue;  // boundary of degree 0 is zero
    for (std::size_t q = 0; q < path.size(); ++q) {
      ElemPath face = path.face(q);
      if (!face.is_regular() || detail::allowed_in(g, face)) continue;
      auto coeff = (q % 2 == 0) ? f.one() : f.neg(f.one());
      auto [it, inserted] = row_faces[r].emplace(face, coeff);
      if (!inserted) it->second = f.add(it->second, coeff);
      col_index.emplace(face, 0);
    }
  }
  m.cols.reserve(col_index.size());
  for (auto& [face, idx] : col_index) {
    idx = m.cols.size();
    m.cols.push_back(face);
  }
  m.entries.resize(m.rows.size());
  for (std::size_t r = 0; r < m.rows.size(); ++r)
    for (const auto& [face, coeff] : row_faces[r])
      if (!f.is_zero(coeff)) m.entries[r].emplace_back(col_index.at(face), coeff);
  return m;
}

namespace detail {

/// Sparse exact row-echelon elimination. Pivots sit on the smallest column
/// index of each inserted row; insertion order is the caller's, which keeps
/// every downstream result deterministic.
template <class Field>
class RowEchelon {
 public:
  using Elem = typename Field::Element;
  using Row = std::map<std::size_t, Elem>;

  explicit RowEchelon(const Field& f) : f_(f) {}

  /// Reduces the row against current pivots; if nonzero remains it becomes a
  /// new pivot (normalized to leading coefficient 1) and the rank grows.
  bool add_row(Row row) {
    while (!row.empty()) {
      const std::size_t lead = row.begin()->first;
      auto pivot = pivots_.find(lead);
      if (pivot == pivots_.end()) {
        const Elem leading = row.begin()->second;
        for (auto& [c, v] : row) v = f_.div(v, leading);
        pivots_.emplace(lead, std::move(row));
        return true;
      }
      const Elem factor = row.begin()->second;
      for (const auto& [c, v] : pivot->second) {
        const Elem delta = f_.mul(factor, v);
        auto it = row.find(c);
        if (it == row.end()) {
          row.emplace(c, f_.neg(delta));
        } else {
          it->second = f_.sub(it->second, delta);
          if (f_.is_zero(it->second)) row.erase(it);
        }
      }
    }
    return false;
  }

  std::size_t rank() const noexcept { return pivots_.size(); }

  /// Kernel basis of the stacked rows seen as linear conditions on variables
  /// 0..nvars-1: one vector per free variable, taken in ascending order, with
  /// the free coordinate set to 1 and pivot coordinates back-substituted.
  std::vector<std::vector<std::pair<std::size_t, Elem>>> kernel_basis(std::size_t nvars) const {
    std::vector<std::vector<std::pair<std::size_t, Elem>>> basis;
    std::vector<bool> is_pivot(nvars, false);
    for (const auto& [lead, row] : pivots_) is_pivot[lead] = true;
    for (std::size_t j = 0; j < nvars; ++j) {
      if (is_pivot[j]) continue;
      std::map<std::size_t, Elem> v;
      v.emplace(j, f_.one());
      // Echelon rows are only forward-reduced, so walk pivots bottom-up.
      for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
        const auto& [lead, row] = *it;
        if (lead > j) continue;
        Elem acc = f_.zero();
        for (const auto& [c, coeff] : row) {
          if (c == lead) continue;
          auto vc = v.find(c);
          if (vc != v.end()) acc = f_.add(acc, f_.mul(coeff, vc->second));
        }
        if (!f_.is_zero(acc)) v.emplace(lead, f_.neg(acc));
      }
      basis.emplace_back(v.begin(), v.end());
    }
    return basis;
  }

 private:
  const Field& f_;
  std::map<std::size_t, Row> pivots_;
};

/// Builds the linear conditions "coefficient of every non-allowed face
/// vanishes" as rows over the allowed-path coordinates and eliminates them.
template <class Field>
RowEchelon<Field> eliminate_conditions(const Field& f, const BoundaryMatrix<Field>& m) {
  std::vector<typename RowEchelon<Field>::Row> conditions(m.cols.size());
  for (std::size_t r = 0; r < m.rows.size(); ++r)
    for (const auto& [c, coeff] : m.entries[r]) conditions[c].emplace(r, coeff);
  RowEchelon<Field> elim(f);
  for (auto& row : conditions) elim.add_row(std::move(row));
  return elim;
}

}  // namespace detail

/// dim Omega_p(G), computed literally from the definition: the nullity of the
/// boundary matrix over the active field.
template <class Field>
std::size_t omega_dim(const Field& f, const Digraph& g, int degree,
                      const OracleOptions& opts = {}) {
  auto paths = allowed_paths(g, degree, std::nullopt, opts.budget);
  const std::size_t nvars = paths.size();
  auto m = boundary_matrix(f, g, std::move(paths));
  return nvars - detail::eliminate_conditions(f, m).rank();
}

/// A deterministic kernel basis of the boundary matrix; every chain is
/// ∂-invariant and the count equals omega_dim.
template <class Field>
std::vector<Chain<Field>> omega_basis(const Field& f, const Digraph& g, int degree,
                                      const OracleOptions& opts = {}) {
  auto paths = allowed_paths(g, degree, std::nullopt, opts.budget);
  auto m = boundary_matrix(f, g, std::move(paths));
  auto elim = detail::eliminate_conditions(f, m);
  std::vector<Chain<Field>> basis;
  for (const auto& vec : elim.kernel_basis(m.rows.size())) {
    Chain<Field> c(degree);
    for (const auto& [r, coeff] : vec) c.add_term(f, m.rows[r], coeff);
    basis.push_back(std::move(c));
  }
  return basis;
}

/// dim of the (a,b)-cluster summand: the same kernel computation restricted
/// to allowed p-paths from a to b.
template <class Field>
std::size_t omega_pair_dim(const Field& f, const Digraph& g, int degree, VertexId a, VertexId b,
                           const OracleOptions& opts = {}) {
  auto paths = allowed_paths(g, degree, std::make_pair(a, b), opts.budget);
  const std::size_t nvars = paths.size();
  auto m = boundary_matrix(f, g, std::move(paths));
  return nvars - detail::eliminate_conditions(f, m).rank();
}

/// Rank of the coefficient matrix of a family of same-degree chains.
template <class Field>
std::size_t rank_of(const Field& f, const std::vector<Chain<Field>>& chains) {
  if (chains.empty()) return 0;
  const int degree = chains.front().degree();
  std::map<ElemPath, std::size_t> col;
  for (const auto& c : chains) {
    if (c.degree() != degree) throw DegreeMismatchError();
    for (const auto& [p, coeff] : c.terms()) col.emplace(p, 0);
  }
  std::size_t next = 0;
  for (auto& [p, idx] : col) idx = next++;
  detail::RowEchelon<Field> elim(f);
  for (const auto& c : chains) {
    typename detail::RowEchelon<Field>::Row row;
    for (const auto& [p, coeff] : c.terms()) row.emplace(col.at(p), coeff);
    elim.add_row(std::move(row));
  }
  return elim.rank();
}

/// Closed-form count for dim Omega_2: directed triangles, squares between
/// non-adjacent ordered pairs (each family of k parallel length-2 routes
/// contributing k-1), and two per double arrow. Cross-checked against
/// omega_dim(., 2) by the test suite.
inline std::size_t omega2_formula(const Digraph& g) {
  const auto n = static_cast<VertexId>(g.vertex_count());
  std::size_t count = 0;
  for (VertexId a = 0; a < n; ++a) {
    for (VertexId c = 0; c < n; ++c) {
      if (a == c) continue;
      std::size_t routes = 0;  // middle vertices v with a -> v -> c
      for (VertexId v : g.out(a))
        if (g.has_arrow(v, c)) ++routes;
      if (g.has_arrow(a, c))
        count += routes;  // triangles: every route is individually invariant
      else if (routes > 0)
        count += routes - 1;  // squares: routes must cancel pairwise
    }
  }
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v : g.out(u))
      if (u < v && g.has_arrow(v, u)) count += 2;
  return count;
}

}  // namespace pathchain
