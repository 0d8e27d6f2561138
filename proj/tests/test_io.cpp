#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pmlab/io.hpp"

using namespace pmlab;
namespace fs = std::filesystem;

TEST_SUITE_BEGIN("io");

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("pmlab_io_test_" + tag);
  fs::remove_all(p);
  fs::remove_all(p.string() + ".pending");
  return p;
}

}  // namespace

TEST_CASE("config parsing handles comments, blanks, and whitespace") {
  const Config cfg = Config::from_string(
      "# header comment\n"
      "\n"
      "  gamma = 1.4   # trailing note\n"
      "scenario=generic\n"
      "snapshots = 1, 2.5, 10\n"
      "deterministic = yes\n"
      "steps = 250\n");
  CHECK(cfg.has("gamma"));
  CHECK(!cfg.has("missing"));
  CHECK(cfg.get_num("gamma", 0.0) == doctest::Approx(1.4));
  CHECK(cfg.get_str("scenario", "") == "generic");
  CHECK(cfg.get_flag("deterministic", false));
  CHECK(cfg.get_int("steps", 0) == 250);
  const std::vector<double> snaps = cfg.get_list("snapshots", {});
  REQUIRE(snaps.size() == 3);
  CHECK(snaps[1] == doctest::Approx(2.5));
  CHECK(cfg.get_num("absent", 7.5) == 7.5);
}

TEST_CASE("malformed config lines are rejected") {
  CHECK_THROWS_AS((void)Config::from_string("a=1\na=2\n"), std::invalid_argument);
  CHECK_THROWS_AS((void)Config::from_string("just a bare line\n"), std::invalid_argument);
  CHECK_THROWS_AS((void)Config::from_string("=5\n"), std::invalid_argument);
  const Config cfg = Config::from_string("n=2.5\n");
  CHECK_THROWS_AS((void)cfg.get_int("n", 0), std::invalid_argument);
  CHECK(cfg.get_num("n2", 0.25) == 0.25);  // missing keys fall back
}

TEST_CASE("unknown keys are named in the rejection") {
  const Config cfg = Config::from_string("gamma=1\nzzz=3\n");
  try {
    cfg.require_known({"gamma", "nu"});
    FAIL("expected a throw");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("zzz") != std::string::npos);
  }
  CHECK_NOTHROW(cfg.require_known({"gamma", "zzz"}));
}

TEST_CASE("canonical form is insertion-order independent") {
  const Config a = Config::from_string("b=2\na=1\n");
  const Config b = Config::from_string("a=1\nb=2\n");
  CHECK(a.canonical() == "a=1\nb=2\n");
  CHECK(a.canonical() == b.canonical());
  CHECK(a.hash() == b.hash());
}

TEST_CASE("config hash is the 64-bit offset basis on empty input") {
  const Config empty;
  CHECK(empty.hash() == "cbf29ce484222325");
  CHECK(empty.hash().size() == 16);
  const Config one = Config::from_string("k=v\n");
  CHECK(one.hash() != empty.hash());
}

TEST_CASE("double formatting round-trips to the same bytes") {
  CHECK(format_full(1.0) == "1");
  CHECK(format_full(0.1) == "0.10000000000000001");
  CHECK(format_full(-2.5e-300) == "-2.5e-300");
  const double v = 0.1 + 0.2;
  CHECK(std::stod(format_full(v)) == v);
}

TEST_CASE("csv writer emits a stable header and fixed-width rows") {
  const fs::path dir = fresh_dir("csv");
  fs::create_directories(dir);
  const std::string path = (dir / "t.csv").string();
  {
    CsvWriter w(path, {"x", "y"});
    w.row({1.0, 0.5});
    w.row({2.0, 0.25});
    w.close();
  }
  CHECK(slurp(path) == "x,y\n1,0.5\n2,0.25\n");
  {
    CsvWriter w(path, {"x", "y"});
    CHECK_THROWS_AS(w.row({1.0}), std::invalid_argument);
  }
  fs::remove_all(dir);
}

TEST_CASE("output staging commits atomically and cleans up when abandoned") {
  const fs::path dir = fresh_dir("stage");

  SUBCASE("commit renames the staging directory") {
    {
      OutputDir out(dir.string());
      CHECK(fs::exists(dir.string() + ".pending"));
      CHECK(!fs::exists(dir));
      std::ofstream(out.path("a.txt")) << "hello\n";
      out.commit();
      CHECK(fs::exists(dir / "a.txt"));
      CHECK(!fs::exists(dir.string() + ".pending"));
    }
    CHECK(fs::exists(dir / "a.txt"));
    CHECK_THROWS_AS(
        [&] {
          OutputDir clash(dir.string());
          clash.commit();
        }(),
        std::runtime_error);
  }
  SUBCASE("abandoned staging is removed by the destructor") {
    {
      OutputDir out(dir.string());
      std::ofstream(out.path("junk.txt")) << "x\n";
    }
    CHECK(!fs::exists(dir));
    CHECK(!fs::exists(dir.string() + ".pending"));
  }
  fs::remove_all(dir);
  fs::remove_all(dir.string() + ".pending");
}

TEST_CASE("metadata sidecar records the tool, config, and hash") {
  const fs::path dir = fresh_dir("meta");
  fs::create_directories(dir);
  const Config cfg = Config::from_string("gamma=1.4\nnu=0.7\n");
  const std::string path = (dir / "metadata.json").string();
  write_metadata(path, cfg, "unit-test", "demo note");
  const nlohmann::json j = nlohmann::json::parse(slurp(path));
  CHECK(j.at("tool").get<std::string>() == "unit-test");
  CHECK(j.at("note").get<std::string>() == "demo note");
  CHECK(j.at("config_hash").get<std::string>() == cfg.hash());
  CHECK(j.at("config").at("gamma").get<std::string>() == "1.4");
  fs::remove_all(dir);
}

TEST_SUITE_END();
