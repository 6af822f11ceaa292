#pragma once

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "lehmer/coxeter.hpp"
#include "lehmer/errors.hpp"

/*
  Binary group-table cache, little-endian throughout:

    offset  size  field
    0       8     magic "LEHMERGT"
    8       4     format version (u32), currently 1
    12      8     Coxeter-matrix hash (u64, FNV-1a over rank then entries)
    20      4     rank k (u32)
    24      4     size n (u32)
    28      2n    lengths (u16 each)
    ...     4nk   right multiplication table (u32), element-major
    ...     4nk   left multiplication table (u32), element-major
    ...           cover lists: per element a u32 count followed by that many
                  u32 deltas (first entry is the id, later entries are gaps
                  to the previous id)

  Loaders reject wrong magic, version or hash, and verify the stored cover
  lists against ones recomputed from the tables; any mismatch reads as
  "absent" and callers rebuild.
*/

namespace lehmer {

constexpr char kCacheMagic[8] = {'L', 'E', 'H', 'M', 'E', 'R', 'G', 'T'};
constexpr uint32_t kCacheVersion = 1;

namespace detail {

template <class T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
bool get(std::istream& in, T& v) {
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  return bool(in);
}

}  // namespace detail

inline void save_group_table(const GroupTable& t, const std::filesystem::path& path) {
  if (!path.parent_path().empty()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(errc::io_error, "cannot write cache file " + path.string());
  out.write(kCacheMagic, sizeof(kCacheMagic));
  detail::put<uint32_t>(out, kCacheVersion);
  detail::put<uint64_t>(out, t.system.matrix_hash());
  detail::put<uint32_t>(out, uint32_t(t.k));
  detail::put<uint32_t>(out, uint32_t(t.n));
  for (int w = 0; w < t.n; ++w) detail::put<uint16_t>(out, t.length[w]);
  for (int w = 0; w < t.n; ++w)
    for (int s = 0; s < t.k; ++s) detail::put<uint32_t>(out, uint32_t(t.right_mul(w, s)));
  for (int w = 0; w < t.n; ++w)
    for (int s = 0; s < t.k; ++s) detail::put<uint32_t>(out, uint32_t(t.left_mul(w, s)));
  for (int w = 0; w < t.n; ++w) {
    detail::put<uint32_t>(out, uint32_t(t.lower_covers[w].size()));
    int prev = 0;
    for (size_t i = 0; i < t.lower_covers[w].size(); ++i) {
      int id = t.lower_covers[w][i];
      detail::put<uint32_t>(out, uint32_t(i == 0 ? id : id - prev));
      prev = id;
    }
  }
  if (!out) throw Error(errc::io_error, "short write to cache file " + path.string());
}

// Loads and fully re-derives the table; nullopt on any mismatch so that the
// caller can rebuild silently.
inline std::optional<GroupTable> load_group_table(const CoxeterSystem& system,
                                                  const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kCacheMagic, sizeof(magic)) != 0) return std::nullopt;
  uint32_t version = 0;
  uint64_t hash = 0;
  uint32_t k = 0, n = 0;
  if (!detail::get(in, version) || version != kCacheVersion) return std::nullopt;
  if (!detail::get(in, hash) || hash != system.matrix_hash()) return std::nullopt;
  if (!detail::get(in, k) || int(k) != system.rank) return std::nullopt;
  if (!detail::get(in, n) || n == 0 || n > (1u << 26)) return std::nullopt;

  GroupTable t;
  t.system = system;
  t.k = int(k);
  t.n = int(n);
  t.length.resize(n);
  for (uint32_t w = 0; w < n; ++w) {
    uint16_t l;
    if (!detail::get(in, l)) return std::nullopt;
    t.length[w] = l;
  }
  auto read_table = [&](std::vector<int>& tab) {
    tab.resize(size_t(n) * k);
    for (size_t i = 0; i < tab.size(); ++i) {
      uint32_t v;
      if (!detail::get(in, v) || v >= n) return false;
      tab[i] = int(v);
    }
    return true;
  };
  if (!read_table(t.right_mul_) || !read_table(t.left_mul_)) return std::nullopt;

  std::vector<std::vector<int>> covers(n);
  for (uint32_t w = 0; w < n; ++w) {
    uint32_t count;
    if (!detail::get(in, count) || count > n) return std::nullopt;
    int prev = 0;
    for (uint32_t i = 0; i < count; ++i) {
      uint32_t delta;
      if (!detail::get(in, delta)) return std::nullopt;
      int id = (i == 0) ? int(delta) : prev + int(delta);
      if (id < 0 || id >= int(n)) return std::nullopt;
      covers[w].push_back(id);
      prev = id;
    }
  }

  try {
    detail::finish_table(t);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (t.lower_covers != covers) return std::nullopt;
  return t;
}

inline std::filesystem::path cache_file_for(const CoxeterSystem& system,
                                            const std::filesystem::path& dir) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)system.matrix_hash());
  return dir / ("coxeter-" + system.name + "-" + buf + ".bin");
}

struct CachedBuild {
  GroupTable table;
  bool from_cache = false;
};

// Load when valid, otherwise build and (re)write the file.
inline CachedBuild load_or_build(const CoxeterSystem& system, const std::filesystem::path& dir,
                                 size_t bound = 200000) {
  auto path = cache_file_for(system, dir);
  if (auto t = load_group_table(system, path)) return {std::move(*t), true};
  CachedBuild out{build_group(system, bound), false};
  save_group_table(out.table, path);
  return out;
}

}  // namespace lehmer
