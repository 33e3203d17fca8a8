#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "epsfact/arith.hpp"

namespace epsfact {

struct LogTable {
  i64 generator = 1;
  std::vector<std::int32_t> log;  // log[0] = -1
};

struct CacheKey {
  i64 p;
  int d;
  int N;
  std::vector<i64> h;
};

std::filesystem::path cache_file(const std::filesystem::path& dir, const CacheKey& key);
// nullopt when missing, unreadable, mismatched or failing validation.
std::optional<LogTable> load_log_table(const std::filesystem::path& dir, const CacheKey& key);
bool store_log_table(const std::filesystem::path& dir, const CacheKey& key, const LogTable& t);

}  // namespace epsfact
