#pragma once

// On-disk cache of raw coefficient tables: one CSV per (form, limit), named
// <form-id>_<limit>.csv with header `n,a_f_n`.

#include <gmpxx.h>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "modapprox/coefficients.hpp"
#include "modapprox/error.hpp"

namespace modapprox::cache {

inline constexpr const char* kEnvVar = "MODAPPROX_CACHE_DIR";

/// The flag wins over the environment; empty means caching is off.
inline std::filesystem::path resolve_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kEnvVar); env && *env) return env;
  return {};
}

inline std::filesystem::path file_for(const std::filesystem::path& dir, const NewformSpec& spec,
                                      std::uint64_t limit) {
  return dir / (spec.id() + "_" + std::to_string(limit) + ".csv");
}

/// Reads a cached table; returns nothing when the file is missing or malformed.
inline std::optional<std::vector<mpz_class>> read_raw(const std::filesystem::path& file, std::uint64_t limit) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  std::string line;
  if (!std::getline(in, line) || line != "n,a_f_n") return std::nullopt;
  std::vector<mpz_class> raw(limit + 1, 0);
  std::uint64_t expect = 1;
  while (expect <= limit && std::getline(in, line)) {
    const auto comma = line.find(',');
    if (comma == std::string::npos) return std::nullopt;
    try {
      if (std::stoull(line.substr(0, comma)) != expect) return std::nullopt;
      if (raw[expect].set_str(line.substr(comma + 1), 10) != 0) return std::nullopt;
    } catch (const std::exception&) {
      return std::nullopt;
    }
    ++expect;
  }
  if (expect != limit + 1) return std::nullopt;
  return raw;
}

/// Smallest cached table for this form covering `limit`, truncated to it.
inline std::optional<CoefficientTable> load(const std::filesystem::path& dir, const NewformSpec& spec,
                                            std::uint64_t limit) {
  std::error_code ec;
  if (dir.empty() || !std::filesystem::is_directory(dir, ec)) return std::nullopt;
  const std::regex pattern("^(.*)_([0-9]+)\\.csv$");
  std::optional<std::uint64_t> best;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    std::smatch m;
    const std::string name = entry.path().filename().string();
    if (!std::regex_match(name, m, pattern) || m[1].str() != spec.id()) continue;
    const std::uint64_t cached = std::stoull(m[2].str());
    if (cached >= limit && (!best || cached < *best)) best = cached;
  }
  if (!best) return std::nullopt;
  auto raw = read_raw(file_for(dir, spec, *best), limit);
  if (!raw) return std::nullopt;
  return table_from_raw(spec, std::move(*raw));
}

inline void store(const std::filesystem::path& dir, const CoefficientTable& table) {
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  const auto target = file_for(dir, table.spec(), table.limit());
  const auto tmp = std::filesystem::path(target.string() + ".tmp");
  {
    std::ofstream out(tmp);
    if (!out) throw ComputationError("cache: cannot write " + tmp.string());
    out << "n,a_f_n\n";
    for (std::uint64_t n = 1; n <= table.limit(); ++n) out << n << ',' << table.raw(n).get_str() << '\n';
    if (!out) throw ComputationError("cache: write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

/// Cache hit, or build and store.
inline CoefficientTable build_or_load(const NewformSpec& spec, std::uint64_t limit, const std::filesystem::path& dir,
                                      const TableOptions& options = {}) {
  if (auto hit = load(dir, spec, limit)) return std::move(*hit);
  CoefficientTable table = build_table(spec, limit, options);
  store(dir, table);
  return table;
}

}  // namespace modapprox::cache
