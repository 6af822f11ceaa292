#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "lehmer/cache.hpp"

using namespace lehmer;
namespace fs = std::filesystem;

namespace {
struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("lehmer-cache-test-" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};
}  // namespace

TEST_CASE("cache round-trip reproduces the table") {
  TempDir dir;
  auto system = CoxeterSystem::B(3);
  auto built = build_group(system);
  auto file = cache_file_for(system, dir.path);
  save_group_table(built, file);

  auto loaded = load_group_table(system, file);
  REQUIRE(loaded.has_value());
  CHECK(loaded->n == built.n);
  CHECK(loaded->length == built.length);
  CHECK(loaded->right_mul_ == built.right_mul_);
  CHECK(loaded->left_mul_ == built.left_mul_);
  CHECK(loaded->inverse == built.inverse);
  CHECK(loaded->word == built.word);
  CHECK(loaded->lower_covers == built.lower_covers);
  for (int w = 0; w < built.n; ++w) CHECK(loaded->below[w] == built.below[w]);
}

TEST_CASE("cache files are byte-identical across rebuilds") {
  TempDir dir;
  auto system = CoxeterSystem::F4();
  auto t1 = build_group(system);
  auto t2 = build_group(system);
  save_group_table(t1, dir.path / "a.bin");
  save_group_table(t2, dir.path / "b.bin");
  std::ifstream a(dir.path / "a.bin", std::ios::binary);
  std::ifstream b(dir.path / "b.bin", std::ios::binary);
  std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
  std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
  CHECK(sa == sb);
  CHECK(!sa.empty());
}

TEST_CASE("mismatched system hash or version is rejected") {
  TempDir dir;
  auto b3 = CoxeterSystem::B(3);
  auto file = cache_file_for(b3, dir.path);
  save_group_table(build_group(b3), file);

  // same rank, different matrix
  CHECK(!load_group_table(CoxeterSystem::A(3), file).has_value());

  // corrupt the version field
  {
    std::fstream f(file, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(8);
    uint32_t bad = 999;
    f.write(reinterpret_cast<const char*>(&bad), sizeof(bad));
  }
  CHECK(!load_group_table(b3, file).has_value());
}

TEST_CASE("corrupted payload is rejected") {
  TempDir dir;
  auto b2 = CoxeterSystem::B(2);
  auto file = cache_file_for(b2, dir.path);
  save_group_table(build_group(b2), file);
  // flip one byte in a multiplication table entry
  {
    std::fstream f(file, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(28 + 2 * 8 + 3);  // inside the right-multiplication table
    char byte = 0x7f;
    f.write(&byte, 1);
  }
  CHECK(!load_group_table(b2, file).has_value());

  // truncated file
  fs::resize_file(file, 40);
  CHECK(!load_group_table(b2, file).has_value());
}

TEST_CASE("load_or_build rebuilds silently and then reuses") {
  TempDir dir;
  auto system = CoxeterSystem::A(2);
  auto first = load_or_build(system, dir.path);
  CHECK(!first.from_cache);
  auto second = load_or_build(system, dir.path);
  CHECK(second.from_cache);
  CHECK(second.table.length == first.table.length);
}
