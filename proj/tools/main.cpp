// pathchain: dimension and basis computations for the space of
// boundary-invariant 3-paths of a finite digraph, with an exact linear-algebra
// verifier, fixture generators, and a scaling benchmark.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "pathchain/field.hpp"
#include "pathchain/generators.hpp"
#include "pathchain/io.hpp"
#include "pathchain/omega3.hpp"
#include "pathchain/oracle.hpp"
#include "pathchain/verify.hpp"
#include "pathchain/version.hpp"

namespace {

using namespace pathchain;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitBudget = 3;

struct FieldChoice {
  bool rational = false;
  std::uint64_t modulus = PrimeField::kDefaultModulus;
};

FieldChoice parse_field(const std::string& spec) {
  if (spec == "rational") return {true, 0};
  if (spec.rfind("gf:", 0) == 0) {
    FieldChoice c;
    c.modulus = std::stoull(spec.substr(3));
    return c;
  }
  throw Error("unknown field '" + spec + "' (expected gf:<q> or rational)");
}

/// Runs fn with the selected field backend.
template <class Fn>
auto with_field(const FieldChoice& choice, Fn&& fn) {
  if (choice.rational) return fn(RationalField{});
  return fn(PrimeField{choice.modulus});
}

Digraph load_graph(const std::string& path) {
  if (path == "-") return parse_edge_list(std::cin);
  std::ifstream in(path);
  if (!in) throw Error("cannot open input file '" + path + "'");
  return parse_edge_list(in);
}

void write_output(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file '" + path + "'");
  out << data;
}

std::optional<std::pair<std::string, std::string>> parse_pair_filter(const std::string& s) {
  if (s.empty()) return std::nullopt;
  auto comma = s.find(',');
  if (comma == std::string::npos) throw Error("--pairs expects 'a,b'");
  return std::make_pair(s.substr(0, comma), s.substr(comma + 1));
}

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

int cmd_dim(const std::string& input, const std::string& pairs, unsigned jobs) {
  Digraph g = load_graph(input);
  std::cout << "dim Omega0 = " << g.vertex_count() << "\n";
  std::cout << "dim Omega1 = " << g.arrow_count() << "\n";
  if (auto filter = parse_pair_filter(pairs)) {
    const VertexId a = g.id_of(filter->first);
    const VertexId b = g.id_of(filter->second);
    std::cout << "dim Omega3(" << filter->first << ", " << filter->second
              << ") = " << pair_dimension(analyze_pair(g, a, b)) << "\n";
    return kExitOk;
  }
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> dims(n * n, 0);
  detail::for_each_ordered_pair(n, jobs, [&](std::size_t idx) {
    dims[idx] = pair_dimension(analyze_pair(g, static_cast<VertexId>(idx / n),
                                            static_cast<VertexId>(idx % n)));
  });
  std::size_t total = 0;
  for (std::size_t d : dims) total += d;
  std::cout << "dim Omega3 = " << total << "\n";
  bool header = false;
  for (std::size_t idx = 0; idx < dims.size(); ++idx) {
    if (dims[idx] == 0) continue;
    if (!header) {
      std::cout << "pair dims (nonzero):\n";
      header = true;
    }
    std::cout << "  " << g.label(static_cast<VertexId>(idx / n)) << " "
              << g.label(static_cast<VertexId>(idx % n)) << " " << dims[idx] << "\n";
  }
  return kExitOk;
}

template <class Field>
Omega3Basis<Field> filtered_basis(const Field& f, const Digraph& g,
                                  const std::optional<std::pair<std::string, std::string>>& filter,
                                  unsigned jobs) {
  if (!filter) return omega3_basis(f, g, Omega3Options{.jobs = jobs});
  Omega3Basis<Field> basis;
  PairAnalysis pa = analyze_pair(g, g.id_of(filter->first), g.id_of(filter->second));
  if (pair_dimension(pa) > 0) {
    basis.pairs.push_back(pair_basis(f, g, pa));
    basis.total_dim = basis.pairs[0].dim;
  }
  return basis;
}

int cmd_basis(const std::string& input, const std::string& output, const FieldChoice& field,
              const std::string& pairs, unsigned jobs) {
  Digraph g = load_graph(input);
  auto filter = parse_pair_filter(pairs);
  const std::string text = with_field(field, [&](const auto& f) {
    return write_basis(make_basis_document(f, g, filtered_basis(f, g, filter, jobs)));
  });
  write_output(output, text);
  return kExitOk;
}

int cmd_verify(const std::string& input, const std::string& basis_path, const FieldChoice& field,
               std::size_t budget, unsigned jobs) {
  Digraph g = load_graph(input);
  VerifyReport report = with_field(field, [&](const auto& f) {
    if (basis_path.empty()) return verify_graph(f, g, OracleOptions{.budget = budget});
    std::ifstream in(basis_path);
    if (!in) throw Error("cannot open basis file '" + basis_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return verify_document(f, g, read_basis(buf.str()), Omega3Options{.jobs = jobs});
  });
  if (report.ok) {
    std::cout << "PASS (" << report.checks << " checks, dim Omega3 = " << report.structural_dim
              << ")\n";
    return kExitOk;
  }
  std::cout << "FAIL (" << report.failures.size() << " mismatches)\n";
  for (const auto& line : report.failures) std::cout << "  " << line << "\n";
  return kExitVerifyFailed;
}

int cmd_gen(const std::string& kind, std::size_t m, std::size_t n, double p, std::uint64_t seed) {
  if (kind == "trapezohedron") {
    std::cout << emit_edge_list(trapezohedron(m));
    return kExitOk;
  }
  std::cout << emit_edge_list(random_digraph({n, p, seed}));
  return kExitOk;
}

/// Streaming basis construction: builds every generator pair by pair but keeps
/// only the counts, so large benchmark graphs stay in memory bounds.
std::size_t timed_structural_basis(const Digraph& g) {
  const PrimeField f;
  const auto n = static_cast<VertexId>(g.vertex_count());
  std::size_t dim = 0;
  for (VertexId a = 0; a < n; ++a) {
    for (VertexId b = 0; b < n; ++b) {
      PairAnalysis pa = analyze_pair(g, a, b);
      if (pair_dimension(pa) == 0) continue;
      dim += pair_basis(f, g, pa).dim;
    }
  }
  return dim;
}

int cmd_bench(const std::string& sizes_csv, double density, std::uint64_t seed,
              std::size_t budget) {
  std::vector<std::size_t> sizes;
  std::stringstream ss(sizes_csv);
  for (std::string tok; std::getline(ss, tok, ',');)
    if (!tok.empty()) sizes.push_back(std::stoull(tok));
  const PrimeField f;
  std::cout << "n,p,structural_ms,oracle_ms,dim\n";
  for (std::size_t n : sizes) {
    auto g = random_digraph({n, density, seed});
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t dim = timed_structural_basis(g);
    const double structural_ms = ms_since(t0);
    std::string oracle_ms = "skipped";
    try {
      const auto t1 = std::chrono::steady_clock::now();
      const std::size_t oracle = omega_dim(f, g, 3, OracleOptions{.budget = budget});
      oracle_ms = std::to_string(ms_since(t1));
      if (oracle != dim) {
        std::cerr << "oracle disagreement at n=" << n << ": " << oracle << " vs " << dim << "\n";
        return kExitVerifyFailed;
      }
    } catch (const BudgetExceededError&) {
    }
    std::cout << n << "," << density << "," << structural_ms << "," << oracle_ms << "," << dim
              << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"path-chain spaces of finite digraphs: dim/basis of Omega_3 with exact verification"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::string input = "-";
  std::string output = "-";
  std::string field_spec = "gf:32749";
  std::string pairs;
  std::string basis_path;
  unsigned jobs = 1;
  std::size_t budget = OracleOptions{}.budget;

  auto* dim = app.add_subcommand("dim", "print dim Omega_3 and the nonzero per-pair dims");
  dim->add_option("-i,--input", input, "edge-list file, or - for stdin");
  dim->add_option("--pairs", pairs, "restrict to one ordered pair: a,b");
  dim->add_option("-j,--jobs", jobs, "worker threads over ordered pairs");

  auto* basis = app.add_subcommand("basis", "compute a basis and write the JSON document");
  basis->add_option("-i,--input", input, "edge-list file, or - for stdin");
  basis->add_option("-o,--output", output, "output file, or - for stdout");
  basis->add_option("--field", field_spec, "gf:<q> or rational (default gf:32749)");
  basis->add_option("--pairs", pairs, "restrict to one ordered pair: a,b");
  basis->add_option("-j,--jobs", jobs, "worker threads over ordered pairs");

  auto* verify = app.add_subcommand("verify", "cross-check the structural result with the oracle");
  verify->add_option("-i,--input", input, "edge-list file, or - for stdin");
  verify->add_option("--basis", basis_path, "verify a stored basis document instead");
  verify->add_option("--field", field_spec, "gf:<q> or rational (default gf:32749)");
  verify->add_option("--budget", budget, "oracle path-enumeration budget");
  verify->add_option("-j,--jobs", jobs, "worker threads over ordered pairs");

  auto* gen = app.add_subcommand("gen", "emit fixture graphs as edge lists");
  std::string kind;
  std::size_t order = 2, nverts = 0;
  double density = 0.0;
  std::uint64_t seed = 0;
  gen->add_option("kind", kind, "trapezohedron | random")
      ->required()
      ->check(CLI::IsMember({"trapezohedron", "random"}));
  gen->add_option("-m,--order", order, "trapezohedron order (m >= 2)");
  gen->add_option("-n", nverts, "random: vertex count");
  gen->add_option("-p", density, "random: arrow probability");
  gen->add_option("--seed", seed, "random: PRNG seed");

  auto* bench = app.add_subcommand("bench", "CSV timing of structural vs oracle computation");
  std::string sizes = "20,40,80";
  double bench_density = 0.1;
  std::uint64_t bench_seed = 1;
  bench->add_option("--sizes", sizes, "comma-separated vertex counts");
  bench->add_option("-p,--density", bench_density, "arrow probability");
  bench->add_option("--seed", bench_seed, "PRNG seed");
  bench->add_option("--budget", budget, "oracle path-enumeration budget");

  CLI11_PARSE(app, argc, argv);

  try {
    if (dim->parsed()) return cmd_dim(input, pairs, jobs);
    if (basis->parsed()) return cmd_basis(input, output, parse_field(field_spec), pairs, jobs);
    if (verify->parsed())
      return cmd_verify(input, basis_path, parse_field(field_spec), budget, jobs);
    if (gen->parsed()) return cmd_gen(kind, order, nverts, density, seed);
    if (bench->parsed()) return cmd_bench(sizes, bench_density, bench_seed, budget);
  } catch (const BudgetExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitOk;
}
