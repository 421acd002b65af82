#pragma once

// Text records for stationary diagrams and restricted-product descriptors.
//
//   stationary-diagram v1
//   seed 3 1
//   row 3 1
//   row 1 0
//   period 1
//   field 5      (optional: square-free D of the Perron eigenvalue)
//   end
//
// A restricted-product document carries one "factor" record per prime
// followed by the infinite-place diagram.

#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gcoh/groupalg.hpp"

namespace gcoh {

namespace detail {

inline std::string join(const IntVector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i == 0 ? "" : " ") + v[i].str();
  return out;
}

inline std::vector<std::string> split_words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(w);
  return words;
}

inline IntVector parse_integers(const std::vector<std::string>& words, std::size_t from) {
  IntVector out;
  for (std::size_t i = from; i < words.size(); ++i) {
    try {
      out.emplace_back(words[i]);
    } catch (const std::runtime_error&) {
      throw DomainError("not an integer: '" + words[i] + "'");
    }
  }
  return out;
}

inline std::int64_t parse_int64(const std::string& word) {
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(word, &used);
  } catch (const std::exception&) {
    throw DomainError("not an integer: '" + word + "'");
  }
  if (used != word.size()) throw DomainError("not an integer: '" + word + "'");
  return value;
}

inline std::uint64_t parse_count(const std::string& word) {
  std::int64_t v = parse_int64(word);
  if (v < 0) throw DomainError("expected a nonnegative count, got " + word);
  return static_cast<std::uint64_t>(v);
}

inline std::string next_line(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) return line;
  }
  throw DomainError("unexpected end of record");
}

}  // namespace detail

inline std::string serialize(const StationaryDiagram& s) {
  std::string out = "stationary-diagram v1\n";
  out += "seed " + detail::join(s.seed.sizes()) + "\n";
  for (std::size_t i = 0; i < s.B.rows(); ++i) out += "row " + detail::join(s.B.row(i)) + "\n";
  out += "period " + std::to_string(s.period_length) + "\n";
  if (s.field) out += "field " + std::to_string(*s.field) + "\n";
  out += "end\n";
  return out;
}

inline StationaryDiagram parse_stationary_diagram(std::istream& in) {
  if (detail::next_line(in) != "stationary-diagram v1") throw DomainError("expected 'stationary-diagram v1'");
  auto seed_words = detail::split_words(detail::next_line(in));
  if (seed_words.empty() || seed_words[0] != "seed") throw DomainError("expected a seed line");
  IntVector seed = detail::parse_integers(seed_words, 1);
  std::vector<IntVector> rows;
  std::size_t period = 0;
  std::optional<std::int64_t> field;
  while (true) {
    auto words = detail::split_words(detail::next_line(in));
    if (words[0] == "row") {
      rows.push_back(detail::parse_integers(words, 1));
    } else if (words[0] == "period" && words.size() == 2) {
      period = detail::parse_count(words[1]);
    } else if (words[0] == "field" && words.size() == 2) {
      field = detail::parse_int64(words[1]);
      if (*field == 1 || !is_squarefree(*field)) throw DomainError("field must be a square-free integer other than 1");
    } else if (words[0] == "end" && words.size() == 1) {
      break;
    } else {
      throw DomainError("unexpected line in stationary diagram record");
    }
  }
  if (rows.empty()) throw DomainError("stationary diagram record has no rows");
  return {IntMatrix::from_rows(rows), MatrixAlgebraList(seed), period, field};
}

inline StationaryDiagram parse_stationary_diagram(const std::string& text) {
  std::istringstream in(text);
  return parse_stationary_diagram(in);
}

inline std::string serialize(const RestrictedProductSpec& spec) {
  std::string out = "restricted-product v1\n";
  out += "bound " + std::to_string(spec.prime_bound) + "\n";
  out += "depth " + std::to_string(spec.factor_depth) + "\n";
  out += "ramified";
  for (auto q : spec.ramified) out += " " + std::to_string(q);
  out += "\n";
  for (const auto& [p, diagram] : spec.factors) {
    out += "factor " + std::to_string(p) + " levels";
    for (const auto& level : diagram.levels()) out += " " + std::to_string(level.block_count());
    out += "\n";
  }
  out += "infinite\n" + serialize(spec.infinite_factor);
  out += "end\n";
  return out;
}

/// Rebuilds the descriptor from its document and checks that every factor record
/// matches the tower the assembly would produce.
inline RestrictedProductSpec parse_restricted_product(const std::string& text) {
  std::istringstream in(text);
  if (detail::next_line(in) != "restricted-product v1") throw DomainError("expected 'restricted-product v1'");
  auto bound_words = detail::split_words(detail::next_line(in));
  auto depth_words = detail::split_words(detail::next_line(in));
  auto ram_words = detail::split_words(detail::next_line(in));
  if (bound_words.size() != 2 || bound_words[0] != "bound" || depth_words.size() != 2 || depth_words[0] != "depth" ||
      ram_words.empty() || ram_words[0] != "ramified") {
    throw DomainError("malformed restricted-product header");
  }
  std::set<std::uint64_t> ramified;
  for (const auto& q : detail::parse_integers(ram_words, 1)) {
    if (q < 0) throw DomainError("ramified primes must be positive");
    ramified.insert(q.convert_to<std::uint64_t>());
  }
  std::map<std::uint64_t, std::vector<std::size_t>> recorded;
  while (true) {
    auto words = detail::split_words(detail::next_line(in));
    if (words[0] == "infinite") break;
    if (words.size() < 3 || words[0] != "factor" || words[2] != "levels") throw DomainError("malformed factor record");
    std::vector<std::size_t> counts;
    for (const auto& c : detail::parse_integers(words, 3)) counts.push_back(c.convert_to<std::size_t>());
    recorded.emplace(detail::parse_count(words[1]), std::move(counts));
  }
  StationaryDiagram infinite = parse_stationary_diagram(in);
  if (detail::next_line(in) != "end") throw DomainError("restricted-product document must close with 'end'");
  RestrictedProductSpec spec = assemble_restricted_product(ramified, detail::parse_count(bound_words[1]), infinite,
                                                           detail::parse_count(depth_words[1]));
  if (recorded.size() != spec.factors.size()) throw DomainError("factor records do not match the unramified primes");
  for (const auto& [p, diagram] : spec.factors) {
    auto it = recorded.find(p);
    if (it == recorded.end()) throw DomainError("missing factor record for p=" + std::to_string(p));
    std::vector<std::size_t> counts;
    for (const auto& level : diagram.levels()) counts.push_back(level.block_count());
    if (counts != it->second) throw DomainError("factor record for p=" + std::to_string(p) + " has wrong levels");
  }
  return spec;
}

}  // namespace gcoh
