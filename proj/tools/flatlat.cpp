// flatlat: command-line front end for the finite semilattice toolkit.
//
// Exit codes: 0 success or true verdict, 1 false verdict, 2 input error,
// 3 size guard exceeded.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "flatlat/catalog.hpp"
#include "flatlat/distributive.hpp"
#include "flatlat/flat.hpp"
#include "flatlat/ideals.hpp"
#include "flatlat/morphism.hpp"
#include "flatlat/slf.hpp"
#include "flatlat/tensor.hpp"

namespace {

using namespace flatlat;

constexpr int kTrue = 0;
constexpr int kFalse = 1;
constexpr int kInputError = 2;
constexpr int kSizeGuard = 3;

// FILE may be a path, "-" for standard input, or "builtin:NAME".
FiniteJoinSemilattice load(const std::string& source, const SizeGuard& guard) {
  constexpr std::string_view prefix = "builtin:";
  if (source.starts_with(prefix)) {
    const auto s = builtin(std::string_view(source).substr(prefix.size()), guard);
    check_guard(s.size(), guard.max_size, "'" + source + "' size");
    return s;
  }
  std::string text;
  if (source == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(source, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + source + "'");
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  return parse_slf(text, guard);
}

std::string list(const FiniteJoinSemilattice& s, const std::vector<Index>& xs) {
  std::string out;
  for (Index x : xs) out += (out.empty() ? "" : " ") + s.name(x);
  return out;
}

std::string quintuple(const FiniteJoinSemilattice& s, const Quintuple& q) {
  std::string out = "(";
  for (std::size_t k = 0; k < q.size(); ++k) out += (k ? ", " : "") + s.name(q[k]);
  return out + ")";
}

std::string triple(const FiniteJoinSemilattice& s, const Triple& t) {
  return "<" + s.name(t[0]) + "," + s.name(t[1]) + "," + s.name(t[2]) + ">";
}

int cmd_check(const FiniteJoinSemilattice& s) {
  std::cout << "elements: " << s.size() << "\n";
  std::cout << "covers: " << s.covers().size() << "\n";
  std::cout << "bottom: " << s.name(s.bottom()) << "\n";
  std::cout << "top: " << s.name(s.top()) << "\n";
  std::cout << "join-irreducibles: " << list(s, join_irreducibles(s)) << "\n";
  return kTrue;
}

int cmd_distributive(const FiniteJoinSemilattice& s) {
  const DistributivityVerdict v = is_distributive(s);
  std::cout << "distributive: " << (v.distributive ? "yes" : "no") << "\n";
  if (v.distributive) return kTrue;
  const auto& f = *v.failing_triple;
  std::cout << "failing-triple: " << s.name(f.a) << " <= " << s.name(f.b0) << " v " << s.name(f.b1) << "\n";
  const IdealLattice ideals(s);
  const auto& copy = *v.forbidden_copy;
  std::cout << "forbidden-copy: " << to_string(copy.pattern) << " " << quintuple(ideals.lattice(), copy.ideals) << "\n";
  return kFalse;
}

int cmd_flat(const FiniteJoinSemilattice& s, bool witness, const SizeGuard& guard) {
  const FlatnessReport r = flatness(s, guard);
  std::cout << "flat: " << (r.verdict ? "yes" : "no") << "\n";
  std::cout << "distributive: " << (r.distributive ? "yes" : "no") << "\n";
  std::cout << "i-injective: " << (r.witness_i_injective ? "yes" : "no") << "\n";
  std::cout << "i'-injective: " << (r.witness_i_prime_injective ? "yes" : "no") << "\n";
  if (witness && r.counterexample) {
    const Counterexample& c = *r.counterexample;
    std::cout << "pattern: " << to_string(c.pattern) << " " << quintuple(s, c.copy) << "\n";
    std::cout << "map: " << c.map_name << " (x) id\n";
    std::cout << "u: " << c.tensor.describe(c.u) << "   " << triple(s, c.u_triple) << "\n";
    std::cout << "v: " << c.tensor.describe(c.v) << "   " << triple(s, c.v_triple) << "\n";
    std::cout << "image: " << c.image_text << "\n";
  }
  return r.verdict ? kTrue : kFalse;
}

int cmd_tensor(const FiniteJoinSemilattice& a, const FiniteJoinSemilattice& b, bool dot, bool table,
               const SizeGuard& guard) {
  const TensorSemilattice t = tensor_product(a, b, guard);
  std::cout << "size: " << t.size() << "\n";
  if (dot) std::cout << emit_dot(t.lattice(), "tensor");
  if (table) {
    const auto& l = t.lattice();
    for (Index e = 0; e < l.size(); ++e) std::cout << "e" << e << " = " << l.name(e) << "\n";
    for (Index x = 0; x < l.size(); ++x) {
      for (Index y = 0; y < l.size(); ++y) std::cout << (y ? " " : "") << l.join(x, y);
      std::cout << "\n";
    }
  }
  return kTrue;
}

int cmd_ideals(const FiniteJoinSemilattice& s) {
  const IdealLattice ideals(s);
  std::cout << "ideals: " << ideals.size() << "\n";
  for (Index k = 0; k < ideals.size(); ++k) {
    std::vector<Index> members;
    const ElementSet& set = ideals.ideal(k);
    for (auto x = set.find_first(); x != ElementSet::npos; x = set.find_next(x)) members.push_back(static_cast<Index>(x));
    std::cout << ideals.lattice().name(k) << " = {" << list(s, members) << "}\n";
  }
  std::cout << "principal:";
  for (Index x = 0; x < s.size(); ++x) std::cout << " " << s.name(x) << "->" << ideals.lattice().name(ideals.principal(x));
  std::cout << "\n";
  return kTrue;
}

int cmd_iso(const FiniteJoinSemilattice& a, const FiniteJoinSemilattice& b) {
  const auto f = find_isomorphism(a, b);
  std::cout << "isomorphic: " << (f ? "yes" : "no") << "\n";
  if (!f) return kFalse;
  std::cout << "map:";
  for (Index x = 0; x < a.size(); ++x) std::cout << " " << a.name(x) << "->" << b.name((*f)(x));
  std::cout << "\n";
  return kTrue;
}

int cmd_verify(unsigned max_n, unsigned jobs, const std::string& json_path, bool timings, const SizeGuard& guard) {
  const VerificationReport report = verify_theorem(max_n, jobs, guard);
  std::cout << to_text(report, timings);
  if (!json_path.empty()) {
    std::ofstream out(json_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + json_path + "'");
    out << to_json(report, timings);
  }
  return report.equivalence_failures.empty() ? kTrue : kFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite {v,0}-semilattices: distributivity, tensor products, flatness"};
  app.require_subcommand(1);

  std::string file_a;
  std::string file_b;
  bool witness = false;
  bool dot = false;
  bool table = false;
  unsigned max_n = 5;
  unsigned jobs = 1;
  std::string json_path;
  bool no_timings = false;

  auto* check = app.add_subcommand("check", "validate a semilattice file and summarize it");
  check->add_option("FILE", file_a)->required();
  auto* distributive = app.add_subcommand("distributive", "distributivity verdict and witness");
  distributive->add_option("FILE", file_a)->required();
  auto* flat = app.add_subcommand("flat", "flatness verdict");
  flat->add_option("FILE", file_a)->required();
  flat->add_flag("--witness", witness, "print the collapsing pair");
  auto* tensor = app.add_subcommand("tensor", "tensor product A (x) B");
  tensor->add_option("FILE_A", file_a)->required();
  tensor->add_option("FILE_B", file_b)->required();
  auto* dot_flag = tensor->add_flag("--dot", dot, "print the Hasse diagram");
  tensor->add_flag("--table", table, "print the join table")->excludes(dot_flag);
  auto* ideals = app.add_subcommand("ideals", "ideal lattice and principal isomorphism");
  ideals->add_option("FILE", file_a)->required();
  auto* dot_cmd = app.add_subcommand("dot", "Hasse diagram in DOT");
  dot_cmd->add_option("FILE", file_a)->required();
  auto* iso = app.add_subcommand("iso", "isomorphism test");
  iso->add_option("FILE_A", file_a)->required();
  iso->add_option("FILE_B", file_b)->required();
  auto* verify = app.add_subcommand("verify", "exhaustive check over the lattice catalog");
  verify->add_option("--max-size", max_n, "largest catalog size")->required()->check(CLI::Range(1, 8));
  verify->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 256));
  verify->add_option("--json", json_path, "also write a JSON report");
  verify->add_flag("--no-timings", no_timings, "omit per-structure timings");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kTrue : kInputError;
  }

  const SizeGuard guard = SizeGuard::from_environment();
  try {
    if (*check) return cmd_check(load(file_a, guard));
    if (*distributive) return cmd_distributive(load(file_a, guard));
    if (*flat) return cmd_flat(load(file_a, guard), witness, guard);
    if (*tensor) return cmd_tensor(load(file_a, guard), load(file_b, guard), dot, table, guard);
    if (*ideals) return cmd_ideals(load(file_a, guard));
    if (*dot_cmd) {
      std::cout << emit_dot(load(file_a, guard));
      return kTrue;
    }
    if (*iso) return cmd_iso(load(file_a, guard), load(file_b, guard));
    if (*verify) return cmd_verify(max_n, jobs, json_path, !no_timings, guard);
  } catch (const Error& e) {
    std::cerr << "flatlat: " << to_string(e.code()) << ": " << e.what() << "\n";
    return e.code() == ErrorCode::SizeGuardExceeded ? kSizeGuard : kInputError;
  } catch (const std::exception& e) {
    std::cerr << "flatlat: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
