#include "epsfact/dlog_cache.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <string>

namespace epsfact {

namespace {

constexpr std::array<char, 8> kMagic{'E', 'P', 'S', 'D', 'L', 'O', 'G', '\0'};
constexpr std::uint32_t kVersion = 2;

std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t h = 1469598103934665603ULL) {
  auto* b = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= b[i];
    h *= 1099511628211ULL;
  }
  return h;
}

template <class T>
void put(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
bool get(std::istream& is, T& v) {
  return static_cast<bool>(is.read(reinterpret_cast<char*>(&v), sizeof(T)));
}

}  // namespace

std::filesystem::path cache_file(const std::filesystem::path& dir, const CacheKey& key) {
  std::string name = "dlog_p" + std::to_string(key.p) + "_d" + std::to_string(key.d) + "_N" +
                     std::to_string(key.N) + "_h";
  for (i64 c : key.h) name += "-" + std::to_string(c);
  return dir / (name + ".bin");
}

std::optional<LogTable> load_log_table(const std::filesystem::path& dir, const CacheKey& key) {
  std::ifstream in(cache_file(dir, key), std::ios::binary);
  if (!in) return std::nullopt;
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) return std::nullopt;
  std::uint32_t version = 0;
  i64 p = 0, gen = 0, q = 0;
  std::int32_t d = 0, N = 0, hlen = 0;
  if (!get(in, version) || version != kVersion) return std::nullopt;
  if (!get(in, p) || !get(in, d) || !get(in, N) || !get(in, hlen)) return std::nullopt;
  if (p != key.p || d != key.d || N != key.N || hlen != static_cast<std::int32_t>(key.h.size())) return std::nullopt;
  for (i64 c : key.h) {
    i64 x = 0;
    if (!get(in, x) || x != c) return std::nullopt;
  }
  if (!get(in, gen) || !get(in, q)) return std::nullopt;
  if (q < 2 || q > (i64{1} << 30)) return std::nullopt;
  LogTable t;
  t.generator = gen;
  t.log.resize(q);
  in.read(reinterpret_cast<char*>(t.log.data()), static_cast<std::streamsize>(q * sizeof(std::int32_t)));
  std::uint64_t sum = 0;
  if (!in || !get(in, sum)) return std::nullopt;
  if (sum != fnv1a(t.log.data(), t.log.size() * sizeof(std::int32_t), static_cast<std::uint64_t>(gen))) return std::nullopt;
  // structural validation: log must be a bijection F_q^x -> Z/(q-1)
  if (t.log[0] != -1 || t.log[1] != 0) return std::nullopt;
  if (q > 2 && (gen <= 0 || gen >= q || t.log[gen] != 1)) return std::nullopt;
  std::vector<char> seen(q - 1, 0);
  for (i64 a = 1; a < q; ++a) {
    std::int32_t k = t.log[a];
    if (k < 0 || k >= q - 1 || seen[k]) return std::nullopt;
    seen[k] = 1;
  }
  return t;
}

bool store_log_table(const std::filesystem::path& dir, const CacheKey& key, const LogTable& t) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  auto path = cache_file(dir, key);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out.write(kMagic.data(), kMagic.size());
    put(out, kVersion);
    put(out, key.p);
    put(out, static_cast<std::int32_t>(key.d));
    put(out, static_cast<std::int32_t>(key.N));
    put(out, static_cast<std::int32_t>(key.h.size()));
    for (i64 c : key.h) put(out, c);
    put(out, t.generator);
    put(out, static_cast<i64>(t.log.size()));
    out.write(reinterpret_cast<const char*>(t.log.data()), static_cast<std::streamsize>(t.log.size() * sizeof(std::int32_t)));
    put(out, fnv1a(t.log.data(), t.log.size() * sizeof(std::int32_t), static_cast<std::uint64_t>(t.generator)));
    if (!out) return false;
  }
  std::filesystem::rename(tmp, path, ec);
  return !ec;
}

}  // namespace epsfact
