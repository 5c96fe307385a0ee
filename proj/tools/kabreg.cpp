#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "kabreg/kabreg.hpp"

namespace {

using namespace kabreg;

struct Options {
  RunConfig cfg;
  std::string format = "text";
  std::string out;
  std::string input;
  std::size_t a = 0, b = 0;
};

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw InputError("cannot write " + o.out);
  f << text;
}

int cmd_construct(Options& o) {
  o.cfg.validate();
  if (o.a == 0 || o.b == 0) throw InputError("both part sizes must be positive");
  const auto [a, b] = std::minmax(o.a, o.b);
  const auto m = static_cast<std::size_t>(o.cfg.n - 3);
  std::optional<Arrangement> arr;
  if (theorem_covers(a, b, o.cfg.n)) {
    arr = cone(build_bipartite_on_quadric(o.a, o.b, o.cfg.field()), m);
  } else if (!o.cfg.exploratory) {
    std::cerr << "K_{" << a << "," << b << "} is an omitted case (a = 1, b >= 3 or a = 2, b >= 4 outside P^3 "
              << "coverage); pass --exploratory for a = 1 stars\n";
    return kExitUnsupported;
  } else if (a == 1) {
    arr = cone(build_generic_star(b, o.cfg.field(), o.cfg.seed), m);
  } else {
    std::cerr << "no exploratory construction for K_{" << a << "," << b << "}: only a = 1 stars are available\n";
    return kExitUnsupported;
  }
  emit(o, arrangement_to_json(*arr).dump(2) + "\n");
  return kExitOk;
}

int cmd_report(Options& o) {
  const Arrangement arr = arrangement_from_string(read_input(o.input));
  const ReportRow row = report(arr);
  emit(o, format_reports({row}, o.cfg.format));
  return row.agree ? kExitOk : kExitDisagreement;
}

int cmd_betti(Options& o) {
  const Arrangement arr = arrangement_from_string(read_input(o.input));
  emit(o, format_betti(minimal_free_resolution(defining_ideal(arr)).betti, o.cfg.format));
  return kExitOk;
}

int cmd_verify(Options& o) {
  const Verification v = verify_theorems(o.cfg);
  emit(o, format_verification(v, o.cfg.format));
  if (o.cfg.format != OutputFormat::Text)
    for (const auto& m : v.messages) std::cerr << m << '\n';
  return v.exit_code;
}

int cmd_caviglia(Options& o) {
  o.cfg.validate();
  const auto rows = caviglia(o.a, o.b, o.cfg);
  emit(o, format_caviglia(rows, o.cfg.format));
  const bool ok = std::all_of(rows.begin(), rows.end(), [](const CavigliaRow& r) { return r.consistent(); });
  return ok ? kExitOk : kExitDisagreement;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  try {
    o.cfg.apply_environment();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  CLI::App app{"Regularity and Cohen-Macaulayness of complete bipartite subspace arrangements"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--p", o.cfg.p, "prime modulus of the coefficient field");
  app.add_option("--seed", o.cfg.seed, "seed for exploratory constructions");
  app.add_option("--n", o.cfg.n, "ambient projective dimension");
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_flag("--exploratory", o.cfg.exploratory, "allow omitted cases via generic stars");
  app.add_option("--jobs", o.cfg.jobs, "worker threads for grid sweeps");
  app.add_option("--out", o.out, "write output to this file");

  auto* construct = app.add_subcommand("construct", "arrangement JSON for K_{a,b}");
  construct->add_option("a", o.a)->required();
  construct->add_option("b", o.b)->required();
  construct->add_option("n", o.cfg.n, "ambient dimension (same as --n)");

  auto* rep = app.add_subcommand("report", "regularity and ACM report for an arrangement document");
  rep->add_option("file", o.input, "arrangement JSON (stdin when omitted)");

  auto* betti = app.add_subcommand("betti", "graded Betti table of S/I");
  betti->add_option("file", o.input, "arrangement JSON (stdin when omitted)");

  auto* verify = app.add_subcommand("verify-theorems", "sweep the grid and compare against both oracles");
  verify->add_option("--amax", o.cfg.amax);
  verify->add_option("--bmax", o.cfg.bmax);
  verify->add_option("--max-lines", o.cfg.max_lines, "bound on a + b");
  verify->add_option("--max-seconds", o.cfg.max_seconds, "stop starting new rows after this many seconds");
  verify->add_flag("--inject-fault", o.cfg.inject_fault, "build a colliding configuration and expect rejection");

  auto* cav = app.add_subcommand("caviglia", "split enumeration for on-quadric K_{a1,a2}");
  cav->add_option("a1", o.a)->required();
  cav->add_option("a2", o.b)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    o.cfg.format = parse_format(o.format);
    if (*construct) return cmd_construct(o);
    if (*rep) return cmd_report(o);
    if (*betti) return cmd_betti(o);
    if (*verify) return cmd_verify(o);
    if (*cav) return cmd_caviglia(o);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const InvalidArrangement& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}
