#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

namespace iris::test {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(IRIS_FIXTURE_DIR) / name;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "iris") {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            (tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

}  // namespace iris::test

#ifndef IRIS_TEST_PUBLIC_API_ONLY
#include <gtest/gtest.h>

#include "types.hpp"

// Runs `stmt`, expects an iris::Error of `kind` whose message contains `needle`.
#define EXPECT_IRIS_ERROR(stmt, kind_, needle_)                                         \
  do {                                                                                \
    try {                                                                             \
      stmt;                                                                           \
      ADD_FAILURE() << "expected iris::Error from " #stmt;                           \
    } catch (const ::iris::Error& e_) {                                               \
      EXPECT_EQ(e_.kind(), kind_) << e_.what();                                        \
      EXPECT_NE(std::string(e_.what()).find(needle_), std::string::npos) << e_.what(); \
    }                                                                                 \
  } while (0)

#endif
