#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <algorithm>
#include <sstream>
#include <string>

#include <json.hpp>

#define IRIS_TEST_PUBLIC_API_ONLY
#include "support.hpp"

namespace {

namespace fs = std::filesystem;
using iris::test::read_file;
using iris::test::TempDir;

struct CliRun {
  int code;
  std::string output;
};

CliRun iris_cli(const std::string& args, const TempDir& dir) {
  const fs::path log = dir / "cli.log";
  const std::string cmd = std::string("\"") + IRIS_CLI_PATH + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, read_file(log)};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const CliRun r = iris_cli("synth --out " + (dir / "data").string() +
                               " --n-per-cell 1 --seed 4 --width 96 --height 80",
                           dir);
    ASSERT_EQ(r.code, 0) << r.output;
    manifest = (dir / "data" / "manifest.jsonl").string();
  }
  std::string out(const char* name) const { return (dir / name).string(); }

  TempDir dir;
  std::string manifest;
};

TEST_F(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(iris_cli("", dir).code, 1);
  EXPECT_EQ(iris_cli("classify --out x", dir).code, 1);
  EXPECT_EQ(iris_cli("frobnicate", dir).code, 1);
  const CliRun bad = iris_cli("classify --manifest " + manifest + " --colormap jet --out " + out("c"), dir);
  EXPECT_EQ(bad.code, 1) << bad.output;
  const CliRun crop = iris_cli("classify --manifest " + manifest + " --crop-fraction 0 --out " + out("c"), dir);
  EXPECT_EQ(crop.code, 1) << crop.output;
  EXPECT_EQ(iris_cli("--help", dir).code, 0);
}

TEST_F(Cli, PreprocessIsReproducible) {
  const std::string args = "preprocess --manifest " + manifest + " --colormap viridis --out ";
  ASSERT_EQ(iris_cli(args + out("p1"), dir).code, 0);
  ASSERT_EQ(iris_cli(args + out("p2") + " --jobs 3", dir).code, 0);
  std::size_t pngs = 0;
  for (const auto& e : fs::directory_iterator(dir / "p1" / "images")) {
    ++pngs;
    EXPECT_EQ(read_file(e.path()), read_file(dir / "p2" / "images" / e.path().filename()));
  }
  EXPECT_EQ(pngs, 4u);
  EXPECT_EQ(read_file(dir / "p1" / "index.jsonl"), read_file(dir / "p2" / "index.jsonl"));
  const auto cfg = nlohmann::json::parse(read_file(dir / "p1" / "run_config.json"));
  EXPECT_EQ(cfg.at("subcommand"), "preprocess");
  EXPECT_EQ(cfg.at("preprocess").at("colormap"), "viridis");
}

TEST_F(Cli, MissingImageNamesSampleAndExitsTwo) {
  fs::remove(dir / "data" / "images" / "hot_absent_000.pgm");
  const CliRun r = iris_cli("classify --manifest " + manifest + " --size 32 --out " + out("c"), dir);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.output.find("hot_absent_000"), std::string::npos) << r.output;
  const CliRun skip = iris_cli("classify --manifest " + manifest + " --size 32 --skip-errors --out " + out("c"), dir);
  EXPECT_EQ(skip.code, 0) << skip.output;
  EXPECT_NE(read_file(dir / "c" / "failures.jsonl").find("hot_absent_000"), std::string::npos);
}

TEST_F(Cli, ClassifySingleWritesSelection) {
  const CliRun r = iris_cli("classify --manifest " + manifest + " --size 32 --strategy single --dim 32 --out " +
                             out("c"),
                         dir);
  ASSERT_EQ(r.code, 0) << r.output;
  const auto sel = nlohmann::json::parse(read_file(dir / "c" / "selection.json"));
  EXPECT_EQ(sel.at("present").at("mean_similarity").size(), 8u);
  const std::string preds = read_file(dir / "c" / "predictions.jsonl");
  EXPECT_EQ(std::count(preds.begin(), preds.end(), '\n'), 4);
  const auto cfg = nlohmann::json::parse(read_file(dir / "c" / "run_config.json"));
  EXPECT_EQ(cfg.at("provider").at("dim"), 32);
}

TEST_F(Cli, BuildCacheThenClassifyFromCache) {
  const std::string common = "--manifest " + manifest + " --size 32 --dim 16 --seed 3";
  CliRun r = iris_cli("build-cache " + common + " --out " + out("k1"), dir);
  ASSERT_EQ(r.code, 0) << r.output;
  ASSERT_EQ(iris_cli("build-cache " + common + " --out " + out("k2"), dir).code, 0);
  const std::string cache = read_file(dir / "k1" / "embeddings.cache");
  EXPECT_EQ(cache, read_file(dir / "k2" / "embeddings.cache"));
  // header: magic, version, dim, id length, id, u64 count
  const std::uint32_t id_len = *reinterpret_cast<const std::uint32_t*>(cache.data() + 12);
  const std::uint64_t count = *reinterpret_cast<const std::uint64_t*>(cache.data() + 16 + id_len);
  EXPECT_EQ(count, 4u + 16u);

  // rerun merges without growth
  ASSERT_EQ(iris_cli("build-cache " + common + " --out " + out("k1"), dir).code, 0);
  EXPECT_EQ(read_file(dir / "k1" / "embeddings.cache"), cache);
  // wider provider into the same cache
  r = iris_cli("build-cache --manifest " + manifest + " --size 32 --dim 24 --out " + out("k1"), dir);
  EXPECT_EQ(r.code, 1) << r.output;
  EXPECT_NE(r.output.find("dim mismatch"), std::string::npos) << r.output;

  const std::string kpath = (dir / "k1" / "embeddings.cache").string();
  const CliRun a = iris_cli("classify " + common + " --out " + out("s"), dir);
  const CliRun b = iris_cli("classify --manifest " + manifest + " --size 32 --provider cache --cache " + kpath +
                             " --out " + out("x"),
                         dir);
  ASSERT_EQ(a.code, 0) << a.output;
  ASSERT_EQ(b.code, 0) << b.output;
  // stub values are float-exact, so the cache reproduces them
  std::istringstream pa(read_file(dir / "s" / "predictions.jsonl"));
  std::istringstream pb(read_file(dir / "x" / "predictions.jsonl"));
  std::string la, lb;
  int lines = 0;
  while (std::getline(pa, la) && std::getline(pb, lb)) {
    const auto ja = nlohmann::json::parse(la), jb = nlohmann::json::parse(lb);
    EXPECT_EQ(ja.at("sample_id"), jb.at("sample_id"));
    EXPECT_EQ(ja.at("label"), jb.at("label"));
    EXPECT_NEAR(ja.at("score_present").get<double>(), jb.at("score_present").get<double>(), 1e-6);
    ++lines;
  }
  EXPECT_EQ(lines, 4);

  // a cache without the viridis images: miss names a key
  const CliRun miss = iris_cli("classify --manifest " + manifest + " --size 32 --colormap viridis --provider cache --cache " +
                                kpath + " --out " + out("m"),
                            dir);
  EXPECT_EQ(miss.code, 2);
  EXPECT_NE(miss.output.find("cache has no image entry for key"), std::string::npos) << miss.output;
}

TEST_F(Cli, EvaluateIsByteIdenticalAndCellSelectable) {
  const std::string args = "evaluate --manifest " + manifest + " --size 32 --dim 32 --out ";
  const CliRun r1 = iris_cli(args + out("e1"), dir);
  ASSERT_EQ(r1.code, 0) << r1.output;
  ASSERT_EQ(iris_cli(args + out("e2") + " --jobs 4", dir).code, 0);
  for (const char* f : {"report.json", "report.txt", "confusion.txt"}) {
    EXPECT_EQ(read_file(dir / "e1" / f), read_file(dir / "e2" / f)) << f;
  }
  const auto rep = nlohmann::json::parse(read_file(dir / "e1" / "report.json"));
  EXPECT_EQ(rep.at("rows").size(), 12u);
  EXPECT_NE(r1.output.find("Room Temperature"), std::string::npos);

  const CliRun one = iris_cli(args + out("e3") + " --colormap grayscale --strategy single", dir);
  ASSERT_EQ(one.code, 0) << one.output;
  EXPECT_EQ(nlohmann::json::parse(read_file(dir / "e3" / "report.json")).at("rows").size(), 2u);
  EXPECT_TRUE(fs::exists(dir / "e3" / "run_config.json"));
}

}  // namespace
