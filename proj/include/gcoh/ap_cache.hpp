#pragma once

// Persistent cache of Frobenius traces keyed by (a4, a6, p).
//
// File format: a header line "a4\ta6\tp\tap" followed by one decimal record
// per line. Records are only ever appended; the first occurrence of a key
// wins. flush() rewrites the whole file through a temporary and a rename.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "gcoh/elliptic.hpp"

namespace gcoh {

class ApCache {
 public:
  using Key = std::tuple<std::int64_t, std::int64_t, std::uint64_t>;

  static constexpr const char* kHeader = "a4\ta6\tp\tap";

  ApCache() = default;
  explicit ApCache(std::filesystem::path path) : path_(std::move(path)) { load(); }

  const std::filesystem::path& path() const { return path_; }
  std::size_t size() const { return values_.size(); }
  bool dirty() const { return dirty_; }

  std::optional<std::int64_t> find(const Key& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }

  /// First write of a key wins; later inserts of the same key are ignored.
  void insert(const Key& key, std::int64_t ap) {
    if (values_.emplace(key, ap).second) {
      lines_.push_back(format(key, ap));
      dirty_ = true;
    }
  }

  /// Cached a_p, computing (and recording) it on a miss.
  FrobeniusData trace(const CurveQ& c, std::uint64_t p) {
    if (!c.is_good_prime(p)) return {p, false, 0};
    Key key{c.a4(), c.a6(), p};
    if (auto hit = find(key)) return {p, true, *hit};
    FrobeniusData fr = trace_of_frobenius(c, p);
    insert(key, fr.a_p);
    return fr;
  }

  void flush() {
    if (path_.empty() || !dirty_) return;
    std::filesystem::path tmp = path_;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw std::runtime_error("cannot write cache " + tmp.string());
      out << kHeader << '\n';
      for (const auto& line : lines_) out << line << '\n';
      if (!out) throw std::runtime_error("short write to cache " + tmp.string());
    }
    std::filesystem::rename(tmp, path_);
    dirty_ = false;
  }

  /// Serialized form, byte-identical to what flush() writes.
  std::string contents() const {
    std::string out = std::string(kHeader) + "\n";
    for (const auto& line : lines_) out += line + "\n";
    return out;
  }

 private:
  static std::string format(const Key& key, std::int64_t ap) {
    return std::to_string(std::get<0>(key)) + "\t" + std::to_string(std::get<1>(key)) + "\t" +
           std::to_string(std::get<2>(key)) + "\t" + std::to_string(ap);
  }

  void load() {
    std::ifstream in(path_, std::ios::binary);
    if (!in) return;  // absent file = empty cache
    std::string line;
    if (!std::getline(in, line)) return;
    if (line != kHeader) throw DomainError("cache " + path_.string() + " has an unexpected header");
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::istringstream fields(line);
      std::int64_t a4 = 0, a6 = 0, ap = 0;
      std::uint64_t p = 0;
      std::string extra;
      if (!(fields >> a4 >> a6 >> p >> ap) || (fields >> extra)) {
        throw DomainError("malformed cache record: '" + line + "'");
      }
      Key key{a4, a6, p};
      values_.emplace(key, ap);
      lines_.push_back(line);
    }
  }

  std::filesystem::path path_;
  std::map<Key, std::int64_t> values_;
  std::vector<std::string> lines_;
  bool dirty_ = false;
};

}  // namespace gcoh
