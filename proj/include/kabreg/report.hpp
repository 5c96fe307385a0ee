#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "arrangement.hpp"
#include "cohomology.hpp"
#include "io.hpp"
#include "resolution.hpp"

namespace kabreg {

enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 1,
  kExitUnsupported = 2,
  kExitDisagreement = 3,
  kExitResourceCap = 4,
};

enum class OutputFormat { Json, Csv, Text };

inline OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "text") return OutputFormat::Text;
  throw InputError("unknown format '" + s + "' (expected json, csv or text)");
}

struct RunConfig {
  std::uint32_t p = kDefaultModulus;
  std::uint64_t seed = 1;
  int n = 3;
  OutputFormat format = OutputFormat::Text;
  int amax = 9;
  int bmax = 9;
  int max_lines = 10;  // a + b bound for grid sweeps
  unsigned jobs = 1;
  bool exploratory = false;
  bool inject_fault = false;
  double max_seconds = 0;  // 0: no cap

  void validate() const {
    if (!is_odd_prime(p)) throw InputError("p must be an odd prime below 2^31");
    if (n < 3) throw InputError("n must be at least 3");
    if (amax < 1 || bmax < 1) throw InputError("grid bounds must be positive");
    if (static_cast<long long>(p) <= static_cast<long long>(amax) + bmax)
      throw InputError("p must exceed amax + bmax");
    if (jobs == 0) throw InputError("jobs must be positive");
    if (max_seconds < 0) throw InputError("max-seconds must be non-negative");
  }

  PrimeField field() const { return PrimeField(p); }

  /// KABREG_P and KABREG_JOBS override the defaults (flags given explicitly win afterwards).
  void apply_environment() {
    if (const char* v = std::getenv("KABREG_P"); v && *v) {
      try {
        p = static_cast<std::uint32_t>(std::stoul(v));
      } catch (const std::exception&) {
        throw InputError("KABREG_P is not a number");
      }
    }
    if (const char* v = std::getenv("KABREG_JOBS"); v && *v) {
      try {
        jobs = static_cast<unsigned>(std::stoul(v));
      } catch (const std::exception&) {
        throw InputError("KABREG_JOBS is not a number");
      }
    }
  }
};

struct ReportRow {
  std::optional<std::size_t> a, b;  // part sizes, a <= b, when the incidence graph is complete bipartite
  int n = 3;
  std::size_t members = 0;
  int reg_betti = 0;
  int pd = 0;
  bool acm_betti = false;
  std::optional<int> reg_cohomology;
  std::optional<bool> acm_cohomology;
  std::optional<int> expected_reg;
  std::optional<bool> expected_acm;
  int max_generator_degree = 0;
  bool on_quadric = false;
  bool exploratory = false;
  bool agree = true;
  BettiTable betti{1, {}};
};

/// Build, resolve and cross-check one arrangement.
inline ReportRow report(const Arrangement& arr) {
  ReportRow row;
  row.n = arr.ambient_dimension();
  row.members = arr.size();
  const Resolution res = minimal_free_resolution(defining_ideal(arr));
  row.betti = res.betti;
  row.reg_betti = regularity(res.betti);
  row.pd = projective_dimension(res.betti);
  row.acm_betti = is_acm(res.betti, 2);
  const auto gens = min_generator_degrees(res.betti);
  row.max_generator_degree = gens.empty() ? 0 : gens.back();

  const auto type = is_complete_bipartite(incidence_graph(arr));
  if (!type) return row;
  row.a = type->first;
  row.b = type->second;
  const int a = static_cast<int>(type->first), b = static_cast<int>(type->second);
  try {
    row.on_quadric = lies_on_smooth_quadric(arr);
  } catch (const InvalidArrangement&) {
    row.on_quadric = false;
  }
  if (row.on_quadric) {
    row.reg_cohomology = cohomology::reg_from_cohomology(a, b);
    row.acm_cohomology = cohomology::acm_from_cohomology(a, b);
  }
  if (row.on_quadric || theorem_covers(type->first, type->second, row.n)) {
    row.expected_reg = std::max(a + 1, b);
    row.expected_acm = b - a <= 1;
  }
  auto matches = [](const auto& opt, const auto& v) { return !opt || *opt == v; };
  row.agree = matches(row.reg_cohomology, row.reg_betti) && matches(row.acm_cohomology, row.acm_betti) &&
              matches(row.expected_reg, row.reg_betti) && matches(row.expected_acm, row.acm_betti);
  return row;
}

/// Upper and lower bounds checked on each verification row.
struct BoundChecks {
  bool derksen_sidman = true;  // reg <= number of members
  bool giaimo = true;          // reg <= a + b - 1
  bool generator_degree = true;  // some minimal generator of degree >= max(a, b)
  bool all() const { return derksen_sidman && giaimo && generator_degree; }
};

inline BoundChecks check_bounds(const ReportRow& row) {
  BoundChecks c;
  c.derksen_sidman = row.reg_betti <= static_cast<int>(row.members);
  if (row.a && row.b) {
    const int a = static_cast<int>(*row.a), b = static_cast<int>(*row.b);
    c.giaimo = row.reg_betti <= a + b - 1;
    c.generator_degree = row.max_generator_degree >= std::max(a, b);
  }
  return c;
}

struct GridCase {
  std::size_t a = 0, b = 0;
  int n = 3;
  bool exploratory = false;
};

struct VerifiedRow {
  GridCase grid;
  std::optional<ReportRow> row;  // empty when skipped (time cap) or unsupported
  BoundChecks bounds;
  std::string note;
};

struct Verification {
  std::vector<VerifiedRow> rows;
  std::vector<std::string> messages;
  int exit_code = kExitOk;
};

/// Supported grid (a <= b, a + b <= max_lines) plus cone spot-checks, and exploratory
/// omitted cases on request.
inline std::vector<GridCase> verification_grid(const RunConfig& cfg) {
  std::vector<GridCase> out;
  for (int a = 1; a <= cfg.amax; ++a)
    for (int b = a; b <= cfg.bmax; ++b) {
      if (a + b > cfg.max_lines) continue;
      const auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
      if (theorem_covers(ua, ub, cfg.n))
        out.push_back({ua, ub, cfg.n, false});
      else if (cfg.exploratory)
        out.push_back({ua, ub, cfg.n, true});
    }
  if (cfg.n == 3)
    for (int n : {4, 5})
      for (auto [a, b] : {std::pair<std::size_t, std::size_t>{2, 2}, {3, 3}, {3, 4}})
        if (static_cast<int>(a) <= cfg.amax && static_cast<int>(b) <= cfg.bmax &&
            static_cast<int>(a + b) <= cfg.max_lines)
          out.push_back({a, b, n, false});
  return out;
}

/// Arrangement for a grid case: on-quadric build, or the generic star for exploratory a = 1.
inline Arrangement build_case(const GridCase& g, const RunConfig& cfg) {
  const PrimeField field = cfg.field();
  const auto m = static_cast<std::size_t>(g.n - 3);
  if (!g.exploratory) return cone(build_bipartite_on_quadric(g.a, g.b, field), m);
  if (g.a == 1 && g.b >= 3) return cone(build_generic_star(g.b, field, cfg.seed), m);
  throw std::domain_error("no exploratory construction for K_{" + std::to_string(g.a) + "," + std::to_string(g.b) +
                          "}: only a = 1 stars are available");
}

inline Verification verify_theorems(const RunConfig& cfg) {
  cfg.validate();
  Verification out;
  if (cfg.inject_fault) {
    const PrimeField field = cfg.field();
    const auto first = default_ruling_parameters(2);
    std::vector<RulingParameter> second = default_ruling_parameters(2);
    second[1] = second[0];
    try {
      (void)build_bipartite_on_quadric(2, 2, field, first, second);
      out.messages.push_back("fault injection: colliding ruling parameters were accepted");
      out.exit_code = kExitDisagreement;
    } catch (const InvalidArrangement& e) {
      out.messages.push_back(std::string("fault injection: construction rejected (") + e.what() + ")");
      out.exit_code = kExitInputError;
    }
    return out;
  }

  const auto grid = verification_grid(cfg);
  out.rows.resize(grid.size());
  const auto start = std::chrono::steady_clock::now();
  std::atomic<std::size_t> next{0};
  std::atomic<bool> capped{false};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < grid.size();) {
      VerifiedRow& vr = out.rows[k];
      vr.grid = grid[k];
      if (cfg.max_seconds > 0) {
        const std::chrono::duration<double> used = std::chrono::steady_clock::now() - start;
        if (used.count() > cfg.max_seconds) {
          capped = true;
          vr.note = "skipped: time cap reached";
          continue;
        }
      }
      try {
        vr.row = report(build_case(grid[k], cfg));
        vr.row->exploratory = grid[k].exploratory;
        vr.bounds = check_bounds(*vr.row);
      } catch (const std::domain_error& e) {
        vr.note = e.what();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(grid.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  bool disagree = false;
  for (const auto& vr : out.rows) {
    if (vr.grid.exploratory || !vr.row) continue;
    const auto label = "K_{" + std::to_string(vr.grid.a) + "," + std::to_string(vr.grid.b) + "} in P^" +
                       std::to_string(vr.grid.n);
    if (!vr.row->agree) {
      disagree = true;
      out.messages.push_back(label + ": computed values disagree with the oracles");
    }
    if (!vr.bounds.derksen_sidman) {
      disagree = true;
      out.messages.push_back(label + ": regularity exceeds the number of members");
    }
    if (!vr.bounds.generator_degree) {
      disagree = true;
      out.messages.push_back(label + ": no minimal generator of degree max(a, b)");
    }
    if (!vr.bounds.giaimo) {
      // Only a degenerate (planar) union can exceed a + b - 1; anything else is a real failure.
      if (vr.row->betti.at(1, 1) > 0) {
        out.messages.push_back(label + ": reg exceeds a + b - 1 but the arrangement spans only a hyperplane");
      } else {
        disagree = true;
        out.messages.push_back(label + ": reg exceeds a + b - 1");
      }
    }
  }
  if (disagree)
    out.exit_code = kExitDisagreement;
  else if (capped) {
    out.exit_code = kExitResourceCap;
    out.messages.push_back("time cap reached: report is partial");
  }
  return out;
}

/// Which of the four equality cases a split falls into (0 when none).
inline int caviglia_case(std::size_t b1, std::size_t b2, std::size_t c1, std::size_t c2) {
  if (b1 > b2 && c1 > c2) return 1;
  if (b1 < b2 && c1 < c2) return 2;
  if (b1 == b2 + 1 && c2 == c1 + 1) return 3;
  if (b2 == b1 + 1 && c1 == c2 + 1) return 4;
  return 0;
}

struct CavigliaRow {
  std::size_t b1 = 0, b2 = 0, c1 = 0, c2 = 0;
  int reg_a = 0, reg_b = 0, reg_c = 0;
  bool equality = false;
  int predicted_case = 0;
  bool bound_holds = true;
  bool consistent() const { return bound_holds && equality == (predicted_case != 0); }
};

inline int arrangement_regularity(const Arrangement& a) {
  return regularity(minimal_free_resolution(defining_ideal(a)).betti);
}

inline std::vector<CavigliaRow> caviglia(std::size_t a1, std::size_t a2, const RunConfig& cfg) {
  if (a1 < 2 || a2 < 2) throw InputError("both rulings need at least two lines to split");
  const Arrangement whole = build_bipartite_on_quadric(a1, a2, cfg.field());
  const int reg_a = arrangement_regularity(whole);
  std::vector<CavigliaRow> rows;
  for (std::size_t b1 = 1; b1 < a1; ++b1)
    for (std::size_t b2 = 1; b2 < a2; ++b2) {
      const auto [pb, pc] = split_bipartite(whole, b1, b2, a1 - b1, a2 - b2);
      CavigliaRow r{b1, b2, a1 - b1, a2 - b2, reg_a, arrangement_regularity(pb), arrangement_regularity(pc)};
      r.equality = r.reg_a == r.reg_b + r.reg_c;
      r.bound_holds = r.reg_a <= r.reg_b + r.reg_c;
      r.predicted_case = caviglia_case(r.b1, r.b2, r.c1, r.c2);
      rows.push_back(r);
    }
  return rows;
}

// ---- formatting ----

namespace detail {

template <class T>
std::string cell(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_same_v<T, bool>)
    return *v ? "true" : "false";
  else
    return std::to_string(*v);
}

inline std::string cell(bool v) { return v ? "true" : "false"; }

template <class T>
Json json_value(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

inline std::string render_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c) os << "  ";
      os << std::string(width[c] - r[c].size(), ' ') << r[c];
    }
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return os.str();
}

inline std::string render_csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t c = 0; c < r.size(); ++c) os << (c ? "," : "") << r[c];
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return os.str();
}

}  // namespace detail

inline const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> cols{"a",   "b",  "n",         "reg_betti",    "reg_cohomology",
                                             "pd",  "acm_betti",     "acm_cohomology", "expected_reg",
                                             "expected_acm", "agree"};
  return cols;
}

inline std::vector<std::string> report_cells(const ReportRow& r) {
  return {detail::cell(r.a),          detail::cell(r.b),
          std::to_string(r.n),        std::to_string(r.reg_betti),
          detail::cell(r.reg_cohomology), std::to_string(r.pd),
          detail::cell(r.acm_betti),  detail::cell(r.acm_cohomology),
          detail::cell(r.expected_reg), detail::cell(r.expected_acm),
          detail::cell(r.agree)};
}

inline Json report_json(const ReportRow& r) {
  return Json{{"a", detail::json_value(r.a)},
              {"b", detail::json_value(r.b)},
              {"n", r.n},
              {"reg_betti", r.reg_betti},
              {"reg_cohomology", detail::json_value(r.reg_cohomology)},
              {"pd", r.pd},
              {"acm_betti", r.acm_betti},
              {"acm_cohomology", detail::json_value(r.acm_cohomology)},
              {"expected_reg", detail::json_value(r.expected_reg)},
              {"expected_acm", detail::json_value(r.expected_acm)},
              {"agree", r.agree}};
}

inline std::string format_reports(const std::vector<ReportRow>& rows, OutputFormat f) {
  if (f == OutputFormat::Json) {
    Json arr = Json::array();
    for (const auto& r : rows) arr.push_back(report_json(r));
    return (rows.size() == 1 ? arr[0] : arr).dump(2) + "\n";
  }
  std::vector<std::vector<std::string>> cells;
  for (const auto& r : rows) cells.push_back(report_cells(r));
  return f == OutputFormat::Csv ? detail::render_csv(report_columns(), cells)
                                : detail::render_table(report_columns(), cells);
}

inline std::string format_verification(const Verification& v, OutputFormat f) {
  std::vector<std::string> header = report_columns();
  header.insert(header.end(), {"giaimo", "generator_degree", "exploratory", "note"});
  std::vector<std::vector<std::string>> cells;
  Json arr = Json::array();
  for (const auto& vr : v.rows) {
    std::vector<std::string> c;
    if (vr.row) {
      c = report_cells(*vr.row);
    } else {
      c.assign(report_columns().size(), "");
      c[0] = std::to_string(vr.grid.a);
      c[1] = std::to_string(vr.grid.b);
      c[2] = std::to_string(vr.grid.n);
    }
    const bool have = vr.row.has_value();
    c.push_back(have ? detail::cell(vr.bounds.giaimo) : "");
    c.push_back(have ? detail::cell(vr.bounds.generator_degree) : "");
    c.push_back(detail::cell(vr.grid.exploratory));
    c.push_back(vr.note);
    Json j = have ? report_json(*vr.row) : Json{{"a", vr.grid.a}, {"b", vr.grid.b}, {"n", vr.grid.n}};
    if (have) {
      j["giaimo"] = vr.bounds.giaimo;
      j["generator_degree"] = vr.bounds.generator_degree;
    }
    j["exploratory"] = vr.grid.exploratory;
    if (!vr.note.empty()) j["note"] = vr.note;
    arr.push_back(std::move(j));
    cells.push_back(std::move(c));
  }
  if (f == OutputFormat::Json) {
    Json doc{{"rows", std::move(arr)}, {"messages", v.messages}, {"exit_code", v.exit_code}};
    return doc.dump(2) + "\n";
  }
  std::string body = f == OutputFormat::Csv ? detail::render_csv(header, cells) : detail::render_table(header, cells);
  if (f == OutputFormat::Text)
    for (const auto& m : v.messages) body += m + "\n";
  return body;
}

inline std::string format_caviglia(const std::vector<CavigliaRow>& rows, OutputFormat f) {
  const std::vector<std::string> header{"b1", "b2", "c1", "c2", "reg_A", "reg_B", "reg_C", "equality", "case",
                                        "consistent"};
  if (f == OutputFormat::Json) {
    Json arr = Json::array();
    for (const auto& r : rows)
      arr.push_back(Json{{"b1", r.b1}, {"b2", r.b2}, {"c1", r.c1}, {"c2", r.c2}, {"reg_A", r.reg_a},
                         {"reg_B", r.reg_b}, {"reg_C", r.reg_c}, {"equality", r.equality},
                         {"case", r.predicted_case}, {"consistent", r.consistent()}});
    return arr.dump(2) + "\n";
  }
  std::vector<std::vector<std::string>> cells;
  for (const auto& r : rows)
    cells.push_back({std::to_string(r.b1), std::to_string(r.b2), std::to_string(r.c1), std::to_string(r.c2),
                     std::to_string(r.reg_a), std::to_string(r.reg_b), std::to_string(r.reg_c),
                     detail::cell(r.equality), std::to_string(r.predicted_case), detail::cell(r.consistent())});
  return f == OutputFormat::Csv ? detail::render_csv(header, cells) : detail::render_table(header, cells);
}

inline std::string format_betti(const BettiTable& t, OutputFormat f) {
  switch (f) {
    case OutputFormat::Json: return betti_json(t).dump(2) + "\n";
    case OutputFormat::Csv: return betti_csv(t);
    case OutputFormat::Text: break;
  }
  return betti_text(t);
}

}  // namespace kabreg
