#pragma once

#include <array>
#include <cstddef>
#include <istream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "pathchain/digraph.hpp"
#include "pathchain/errors.hpp"
#include "pathchain/omega3.hpp"
#include "pathchain/version.hpp"

namespace pathchain {

/// Edge-list grammar: one record per line; `#` starts a comment; blank lines
/// are skipped; `u v` declares the arrow u -> v; a single token declares an
/// isolated vertex. Tokens are arbitrary non-whitespace UTF-8.
inline Digraph parse_edge_list(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::string> isolated;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream tokens(line);
    std::string u, v, extra;
    if (!(tokens >> u)) continue;
    if (!(tokens >> v)) {
      isolated.push_back(u);
      continue;
    }
    if (tokens >> extra) throw ParseError(lineno, "expected at most two tokens");
    if (u == v) throw SelfLoopError(u, lineno);
    edges.emplace_back(std::move(u), std::move(v));
  }
  return Digraph::from_edges(edges, isolated);
}

inline Digraph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

/// Inverse of the grammar above: arrow lines in canonical id order, then
/// isolated vertices.
inline std::string emit_edge_list(const Digraph& g) {
  std::string out;
  for (auto [u, v] : g.arrows()) out += g.label(u) + " " + g.label(v) + "\n";
  for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v)
    if (g.out(v).empty() && g.in(v).empty()) out += g.label(v) + "\n";
  return out;
}

/// DOT subset: quoted labels, isolated vertices as bare nodes, arrows in
/// canonical order.
inline std::string export_dot(const Digraph& g) {
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') q += '\\';
      q += c;
    }
    return q + "\"";
  };
  std::string out = "digraph {\n";
  for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v)
    if (g.out(v).empty() && g.in(v).empty()) out += "  " + quote(g.label(v)) + ";\n";
  for (auto [u, v] : g.arrows())
    out += "  " + quote(g.label(u)) + " -> " + quote(g.label(v)) + ";\n";
  out += "}\n";
  return out;
}

/// SHA-256 of the canonicalized graph: one `v <label>` line per vertex in
/// ascending label order, then one `e <tail> <head>` line per arrow in
/// ascending label-pair order. Recorded in basis documents for provenance.
inline std::string input_digest(const Digraph& g) {
  std::vector<std::string> vertex_lines;
  vertex_lines.reserve(g.vertex_count());
  for (const auto& label : g.labels()) vertex_lines.push_back("v " + label + "\n");
  std::sort(vertex_lines.begin(), vertex_lines.end());
  std::vector<std::string> edge_lines;
  edge_lines.reserve(g.arrow_count());
  for (auto [u, v] : g.arrows()) edge_lines.push_back("e " + g.label(u) + " " + g.label(v) + "\n");
  std::sort(edge_lines.begin(), edge_lines.end());
  std::string data;
  for (const auto& l : vertex_lines) data += l;
  for (const auto& l : edge_lines) data += l;

  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out = "sha256:";
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

/// The serialized basis artifact. Stable, canonical JSON: object keys sorted,
/// pair records sorted by (a, b) label, terms in canonical chain order.
struct BasisDocument {
  struct Term {
    std::array<std::string, 4> path;
    int coeff = 1;  // +1 or -1
  };
  struct Generator {
    std::string kind;  // "B0" | "B1" | "B2"
    std::vector<Term> terms;
    nlohmann::json provenance;
  };
  struct Pair {
    std::string a, b;
    std::size_t dim = 0;
    std::vector<Generator> generators;
  };

  std::size_t vertices = 0;
  std::size_t arrows = 0;
  std::string digest;
  std::string field;
  std::string tool_version;
  std::size_t total_dim = 0;
  std::vector<Pair> pairs;
};

inline const char* kBasisSchema = "pathchain-basis/1";

namespace detail {

template <class Field>
int coeff_sign(const Field& f, const typename Field::Element& c) {
  if (f.eq(c, f.one())) return 1;
  if (f.eq(c, f.neg(f.one()))) return -1;
  throw Error("basis coefficient is not +1 or -1: " + f.to_string(c));
}

inline nlohmann::json edge_json(const Digraph& g, std::pair<VertexId, VertexId> e) {
  return nlohmann::json::array({g.label(e.first), g.label(e.second)});
}

inline nlohmann::json vertices_json(const Digraph& g, const std::vector<VertexId>& vs) {
  auto arr = nlohmann::json::array();
  for (VertexId v : vs) arr.push_back(g.label(v));
  return arr;
}

template <class Field>
BasisDocument::Generator generator_record(const Field& f, const Digraph& g,
                                          const BasisElement<Field>& elem) {
  BasisDocument::Generator rec;
  for (const auto& [path, coeff] : elem.chain.terms()) {
    BasisDocument::Term term;
    for (std::size_t i = 0; i < 4; ++i) term.path[i] = g.label(path[i]);
    term.coeff = coeff_sign(f, coeff);
    rec.terms.push_back(std::move(term));
  }
  switch (elem.kind) {
    case GeneratorKind::B0: {
      rec.kind = "B0";
      const auto& p = std::get<B0Provenance>(elem.provenance);
      rec.provenance = {{"off_forest_edge", edge_json(g, p.off_forest_edge)},
                        {"cycle", vertices_json(g, p.cycle)}};
      break;
    }
    case GeneratorKind::B1: {
      rec.kind = "B1";
      const auto& p = std::get<B1Provenance>(elem.provenance);
      rec.provenance = {{"edge", edge_json(g, p.edge)}};
      break;
    }
    case GeneratorKind::B2: {
      rec.kind = "B2";
      const auto& p = std::get<B2Provenance>(elem.provenance);
      auto side = [](LinkSide s) {
        return s == LinkSide::FromComponent ? "from_component" : "to_component";
      };
      rec.provenance = {{"component", p.component},
                        {"base_edge", edge_json(g, p.base.edge())},
                        {"base_side", side(p.base.side)},
                        {"partner_edge", edge_json(g, p.partner.edge())},
                        {"partner_side", side(p.partner.side)},
                        {"walk", vertices_json(g, p.walk)}};
      break;
    }
  }
  return rec;
}

}  // namespace detail

/// Builds the document for a computed basis.
template <class Field>
BasisDocument make_basis_document(const Field& f, const Digraph& g,
                                  const Omega3Basis<Field>& basis) {
  BasisDocument doc;
  doc.vertices = g.vertex_count();
  doc.arrows = g.arrow_count();
  doc.digest = input_digest(g);
  doc.field = f.name();
  doc.tool_version = kVersion;
  doc.total_dim = basis.total_dim;
  for (const auto& pb : basis.pairs) {
    BasisDocument::Pair rec;
    rec.a = g.label(pb.a);
    rec.b = g.label(pb.b);
    rec.dim = pb.dim;
    for (const auto& elem : pb.elements)
      rec.generators.push_back(detail::generator_record(f, g, elem));
    doc.pairs.push_back(std::move(rec));
  }
  std::sort(doc.pairs.begin(), doc.pairs.end(), [](const auto& x, const auto& y) {
    return std::make_pair(x.a, x.b) < std::make_pair(y.a, y.b);
  });
  return doc;
}

/// Canonical JSON serialization; write then read is the identity.
inline std::string write_basis(const BasisDocument& doc) {
  nlohmann::json j;
  j["schema"] = kBasisSchema;
  j["graph"] = {{"vertices", doc.vertices}, {"arrows", doc.arrows}, {"digest", doc.digest}};
  j["field"] = doc.field;
  j["tool_version"] = doc.tool_version;
  j["total_dim"] = doc.total_dim;
  auto pairs = nlohmann::json::array();
  for (const auto& pr : doc.pairs) {
    nlohmann::json jp;
    jp["a"] = pr.a;
    jp["b"] = pr.b;
    jp["dim"] = pr.dim;
    auto gens = nlohmann::json::array();
    for (const auto& gen : pr.generators) {
      nlohmann::json jg;
      jg["kind"] = gen.kind;
      auto terms = nlohmann::json::array();
      for (const auto& t : gen.terms)
        terms.push_back({{"path", t.path}, {"coeff", t.coeff}});
      jg["terms"] = std::move(terms);
      jg["provenance"] = gen.provenance;
      gens.push_back(std::move(jg));
    }
    jp["generators"] = std::move(gens);
    pairs.push_back(std::move(jp));
  }
  j["pairs"] = std::move(pairs);
  return j.dump(2) + "\n";
}

inline BasisDocument read_basis(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  auto require = [&](const nlohmann::json& obj, const char* key) -> const nlohmann::json& {
    if (!obj.is_object() || !obj.contains(key))
      throw SchemaError(std::string("missing key '") + key + "'");
    return obj.at(key);
  };
  try {
    if (require(j, "schema").get<std::string>() != kBasisSchema)
      throw SchemaError("unsupported schema");
    BasisDocument doc;
    const auto& graph = require(j, "graph");
    doc.vertices = require(graph, "vertices").get<std::size_t>();
    doc.arrows = require(graph, "arrows").get<std::size_t>();
    doc.digest = require(graph, "digest").get<std::string>();
    doc.field = require(j, "field").get<std::string>();
    doc.tool_version = require(j, "tool_version").get<std::string>();
    doc.total_dim = require(j, "total_dim").get<std::size_t>();
    for (const auto& jp : require(j, "pairs")) {
      BasisDocument::Pair pr;
      pr.a = require(jp, "a").get<std::string>();
      pr.b = require(jp, "b").get<std::string>();
      pr.dim = require(jp, "dim").get<std::size_t>();
      for (const auto& jg : require(jp, "generators")) {
        BasisDocument::Generator gen;
        gen.kind = require(jg, "kind").get<std::string>();
        if (gen.kind != "B0" && gen.kind != "B1" && gen.kind != "B2")
          throw SchemaError("unknown generator kind '" + gen.kind + "'");
        for (const auto& jt : require(jg, "terms")) {
          BasisDocument::Term term;
          const auto& path = require(jt, "path");
          if (!path.is_array() || path.size() != 4)
            throw SchemaError("term path must have four labels");
          for (std::size_t i = 0; i < 4; ++i) term.path[i] = path.at(i).get<std::string>();
          term.coeff = require(jt, "coeff").get<int>();
          if (term.coeff != 1 && term.coeff != -1)
            throw SchemaError("term coefficient must be +1 or -1");
          gen.terms.push_back(std::move(term));
        }
        gen.provenance = require(jg, "provenance");
        pr.generators.push_back(std::move(gen));
      }
      doc.pairs.push_back(std::move(pr));
    }
    std::size_t sum = 0;
    for (const auto& pr : doc.pairs) sum += pr.dim;
    if (sum != doc.total_dim) throw SchemaError("total_dim does not match pair dims");
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("malformed document: ") + e.what());
  }
}

}  // namespace pathchain
