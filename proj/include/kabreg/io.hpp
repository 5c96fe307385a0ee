#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "arrangement.hpp"
#include "resolution.hpp"

namespace kabreg {

/// Malformed input document.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

/// {"p", "n", "members": [{"forms": [[...], [...]]}], "bipartition": [[...], [...]]}
inline Json arrangement_to_json(const Arrangement& a) {
  Json doc;
  doc["p"] = a.field().modulus();
  doc["n"] = a.ambient_dimension();
  Json members = Json::array();
  for (const auto& m : a.members()) {
    Json forms = Json::array();
    for (std::size_t r = 0; r < m.forms().rows(); ++r) {
      Json row = Json::array();
      for (std::size_t c = 0; c < m.forms().cols(); ++c) row.push_back(m.forms().at(r, c).residue());
      forms.push_back(std::move(row));
    }
    members.push_back(Json{{"forms", std::move(forms)}});
  }
  doc["members"] = std::move(members);
  if (a.bipartition()) doc["bipartition"] = Json::array({(*a.bipartition())[0], (*a.bipartition())[1]});
  return doc;
}

inline Arrangement arrangement_from_json(const Json& doc) {
  try {
    const auto p = doc.at("p").get<std::int64_t>();
    const auto n = doc.at("n").get<int>();
    if (p <= 2 || p >= (std::int64_t{1} << 31)) throw InputError("modulus out of range");
    const PrimeField field(static_cast<std::uint32_t>(p));
    std::vector<LinearSubspace> members;
    for (const auto& m : doc.at("members")) {
      std::vector<std::vector<std::int64_t>> rows;
      for (const auto& row : m.at("forms")) {
        rows.push_back(row.get<std::vector<std::int64_t>>());
        if (rows.back().size() != static_cast<std::size_t>(n) + 1) throw InputError("form length must be n + 1");
      }
      members.emplace_back(DenseMatrix::from_rows(field, rows));
    }
    std::optional<Bipartition> parts;
    if (doc.contains("bipartition")) {
      const auto& b = doc.at("bipartition");
      if (!b.is_array() || b.size() != 2) throw InputError("bipartition must hold two index lists");
      parts = Bipartition{b[0].get<std::vector<std::size_t>>(), b[1].get<std::vector<std::size_t>>()};
    }
    return Arrangement(field, n, std::move(members), std::move(parts));
  } catch (const InputError&) {
    throw;
  } catch (const InvalidArrangement&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(std::string("malformed arrangement document: ") + e.what());
  }
}

inline Arrangement arrangement_from_string(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("arrangement document is not JSON: ") + e.what());
  }
  return arrangement_from_json(doc);
}

/// Header "i" then one column per offset j - i; one row per homological index; zeros empty.
inline std::string betti_csv(const BettiTable& t) {
  int max_i = 0, max_off = 0;
  for (const auto& [key, v] : t.entries()) {
    max_i = std::max(max_i, key.first);
    max_off = std::max(max_off, key.second - key.first);
  }
  std::ostringstream os;
  os << 'i';
  for (int off = 0; off <= max_off; ++off) os << ',' << off;
  os << '\n';
  for (int i = 0; i <= max_i; ++i) {
    os << i;
    for (int off = 0; off <= max_off; ++off) {
      os << ',';
      if (const auto v = t.at(i, i + off); v != 0) os << v;
    }
    os << '\n';
  }
  return os.str();
}

/// Conventional layout: columns are homological indices, rows are offsets j - i.
inline std::string betti_text(const BettiTable& t) {
  int max_i = 0, max_off = 0;
  for (const auto& [key, v] : t.entries()) {
    max_i = std::max(max_i, key.first);
    max_off = std::max(max_off, key.second - key.first);
  }
  std::size_t width = 1;
  for (int i = 0; i <= max_i; ++i) width = std::max(width, std::to_string(t.total(i)).size());
  auto cell = [&](const std::string& s) { return " " + std::string(width - s.size(), ' ') + s; };
  auto label = [](const std::string& s) { return std::string(6 - std::min<std::size_t>(6, s.size()), ' ') + s; };
  std::ostringstream os;
  os << label("");
  for (int i = 0; i <= max_i; ++i) os << cell(std::to_string(i));
  os << '\n' << label("total:");
  for (int i = 0; i <= max_i; ++i) os << cell(std::to_string(t.total(i)));
  os << '\n';
  for (int off = 0; off <= max_off; ++off) {
    os << label(std::to_string(off) + ":");
    for (int i = 0; i <= max_i; ++i) {
      const auto v = t.at(i, i + off);
      os << cell(v == 0 ? "." : std::to_string(v));
    }
    os << '\n';
  }
  return os.str();
}

inline Json betti_json(const BettiTable& t) {
  Json entries = Json::array();
  for (const auto& [key, v] : t.entries()) entries.push_back(Json{{"i", key.first}, {"j", key.second}, {"beta", v}});
  return Json{{"nvars", t.nvars()}, {"entries", std::move(entries)}};
}

inline BettiTable betti_from_csv(const std::string& csv, std::size_t nvars) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line.rfind("i", 0) != 0) throw InputError("missing Betti CSV header");
  BettiTable::Entries e;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::getline(row, cell, ',');
    const int i = std::stoi(cell);
    for (int off = 0; std::getline(row, cell, ','); ++off)
      if (!cell.empty()) e[{i, i + off}] = std::stoul(cell);
  }
  return BettiTable(nvars, std::move(e));
}

}  // namespace kabreg
