#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "pathchain/field.hpp"
#include "pathchain/generators.hpp"
#include "pathchain/io.hpp"
#include "pathchain/verify.hpp"

using namespace pathchain;

namespace {
const PrimeField gf;
}

TEST_CASE("edge list grammar") {
  auto cyc = parse_edge_list("a b\nb a\n");
  REQUIRE(cyc.vertex_count() == 2);
  REQUIRE(cyc.arrow_count() == 2);

  auto g = parse_edge_list("# comment\na b\n\nc\n");
  REQUIRE(g.vertex_count() == 3);
  REQUIRE(g.arrow_count() == 1);
  REQUIRE(g.out(g.id_of("c")).empty());
  REQUIRE(g.in(g.id_of("c")).empty());

  // Inline comments and repeated whitespace.
  auto h = parse_edge_list("a\tb # arrow\n   \n#only\nx\n");
  REQUIRE(h.vertex_count() == 3);
  REQUIRE(h.arrow_count() == 1);

  REQUIRE_THROWS_AS(parse_edge_list("a a\n"), SelfLoopError);
  try {
    parse_edge_list("a b\na a\n");
  } catch (const SelfLoopError& e) {
    REQUIRE(e.line() == 2);
  }
  REQUIRE_THROWS_AS(parse_edge_list("a b c\n"), ParseError);
  try {
    parse_edge_list("ok1 ok2\na b c\n");
  } catch (const ParseError& e) {
    REQUIRE(e.line() == 2);
  }
}

TEST_CASE("labels are arbitrary non-whitespace utf-8") {
  auto g = parse_edge_list("α→β x\nx β→γ\nこんにちは\n");
  REQUIRE(g.vertex_count() == 4);
  REQUIRE(g.has_arrow(g.id_of("α→β"), g.id_of("x")));
  REQUIRE(g.has_arrow(g.id_of("x"), g.id_of("β→γ")));
  REQUIRE(g.out(g.id_of("こんにちは")).empty());
  REQUIRE(parse_edge_list(emit_edge_list(g)).arrow_count() == 2);
  REQUIRE(export_dot(g).find("\"こんにちは\";") != std::string::npos);
  const PrimeField f;
  auto doc = make_basis_document(f, g, omega3_basis(f, g));
  REQUIRE(write_basis(read_basis(write_basis(doc))) == write_basis(doc));
}

TEST_CASE("edge list emission round-trips the arrow set") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = random_digraph({8, 0.3, 640 + seed});
    auto back = parse_edge_list(emit_edge_list(g));
    REQUIRE(back.vertex_count() == g.vertex_count());
    std::set<std::pair<std::string, std::string>> orig, round;
    for (auto [u, v] : g.arrows()) orig.emplace(g.label(u), g.label(v));
    for (auto [u, v] : back.arrows()) round.emplace(back.label(u), back.label(v));
    REQUIRE(orig == round);
  }
  auto t3 = trapezohedron(3);
  REQUIRE(parse_edge_list(emit_edge_list(t3)).arrow_count() == 12);
}

TEST_CASE("dot export") {
  auto cyc = fixtures::two_cycle();
  auto dot = export_dot(cyc);
  REQUIRE(dot == "digraph {\n  \"a\" -> \"b\";\n  \"b\" -> \"a\";\n}\n");

  REQUIRE(export_dot(Digraph()) == "digraph {\n}\n");

  auto t2dot = export_dot(trapezohedron(2));
  std::size_t arrows = 0;
  for (std::size_t pos = 0; (pos = t2dot.find("->", pos)) != std::string::npos; ++pos) ++arrows;
  REQUIRE(arrows == 8);
  for (const char* l : {"\"a\"", "\"b\"", "\"i0\"", "\"i1\"", "\"j0\"", "\"j1\""})
    REQUIRE(t2dot.find(l) != std::string::npos);

  auto iso = Digraph::from_edges({}, {"only  one"});
  REQUIRE(export_dot(iso).find("\"only  one\";") != std::string::npos);
}

TEST_CASE("input digest is label-canonical") {
  auto g1 = parse_edge_list("a b\nb c\n");
  auto g2 = parse_edge_list("b c\na b\n");  // different id assignment
  REQUIRE(input_digest(g1) == input_digest(g2));
  auto g3 = parse_edge_list("a b\nb c\nc a\n");
  REQUIRE(input_digest(g1) != input_digest(g3));
  REQUIRE(input_digest(g1).rfind("sha256:", 0) == 0);
}

TEST_CASE("basis documents") {
  auto t2 = trapezohedron(2);
  auto doc = make_basis_document(gf, t2, omega3_basis(gf, t2));
  REQUIRE(doc.total_dim == 1);
  REQUIRE(doc.pairs.size() == 1);
  REQUIRE(doc.pairs[0].a == "a");
  REQUIRE(doc.pairs[0].b == "b");
  REQUIRE(doc.pairs[0].generators.size() == 1);
  REQUIRE(doc.pairs[0].generators[0].kind == "B0");
  REQUIRE(doc.pairs[0].generators[0].terms.size() == 4);
  for (const auto& term : doc.pairs[0].generators[0].terms) {
    REQUIRE((term.coeff == 1 || term.coeff == -1));
    REQUIRE(term.path[0] == "a");
    REQUIRE(term.path[3] == "b");
  }

  auto empty = Digraph::from_edges({}, {"x"});
  auto edoc = make_basis_document(gf, empty, omega3_basis(gf, empty));
  REQUIRE(edoc.total_dim == 0);
  REQUIRE(edoc.pairs.empty());

  // Write/read round-trip is exact.
  auto text = write_basis(doc);
  auto back = read_basis(text);
  REQUIRE(write_basis(back) == text);
  REQUIRE(back.total_dim == doc.total_dim);
  REQUIRE(back.digest == doc.digest);
  REQUIRE(back.pairs.size() == doc.pairs.size());

  REQUIRE_THROWS_AS(read_basis("{"), SchemaError);
  REQUIRE_THROWS_AS(read_basis("{}"), SchemaError);
  REQUIRE_THROWS_AS(read_basis(R"({"schema":"pathchain-basis/1"})"), SchemaError);
}

TEST_CASE("document verification locates corruption") {
  auto g = fixtures::linked_pentagon();
  auto doc = make_basis_document(gf, g, omega3_basis(gf, g));
  REQUIRE(verify_document(gf, g, doc).ok);

  auto corrupted = doc;
  bool flipped = false;
  for (auto& pr : corrupted.pairs) {
    if (pr.a == "a" && pr.b == "b") {
      pr.generators[0].terms[0].coeff *= -1;
      flipped = true;
    }
  }
  REQUIRE(flipped);
  auto report = verify_document(gf, g, corrupted);
  REQUIRE_FALSE(report.ok);
  bool located = false;
  for (const auto& f : report.failures)
    if (f.find("(a, b)") != std::string::npos) located = true;
  REQUIRE(located);
}

TEST_CASE("graph verification cross-checks the oracle") {
  auto report = verify_graph(gf, trapezohedron(3));
  REQUIRE(report.ok);
  REQUIRE(report.structural_dim == 1);
  REQUIRE(report.oracle_dim == 1);

  auto g = random_digraph({9, 0.35, 31});
  auto r = verify_graph(gf, g);
  REQUIRE(r.ok);
  REQUIRE(r.structural_dim == r.oracle_dim);
}
