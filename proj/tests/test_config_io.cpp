#include "nldw/checkpoint.hpp"
#include "nldw/config.hpp"
#include "nldw/fields.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

using namespace nldw;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const char* name) {
        path = (std::filesystem::temp_directory_path() / name).string();
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("checkpoint round trip is bit exact") {
    Grid3D g(16, 0.5);
    ScalarField3D u(g);
    std::mt19937_64 rng(11);
    for (double& v : u.values) v = std::uniform_real_distribution<>(0, 2)(rng);
    u.nonneg = true;

    TempFile f("nldw_test_roundtrip.nldw");
    save_checkpoint(u, f.path);
    const ScalarField3D back = load_checkpoint(f.path);
    CHECK(back.grid == g);
    CHECK(back.nonneg);
    for (std::size_t i = 0; i < u.size(); ++i) CHECK(back.values[i] == u.values[i]);
}

TEST_CASE("checkpoint rejects malformed files") {
    TempFile f("nldw_test_bad.nldw");

    SUBCASE("bad magic") {
        std::ofstream os(f.path, std::ios::binary);
        os << "XXXX then garbage";
        os.close();
        CHECK_THROWS(load_checkpoint(f.path));
    }
    SUBCASE("unknown version") {
        Grid3D g(8, 1.0);
        save_checkpoint(ScalarField3D(g, 1.0), f.path);
        std::fstream fs(f.path, std::ios::in | std::ios::out | std::ios::binary);
        fs.seekp(4);
        const unsigned bad = 99;
        fs.write(reinterpret_cast<const char*>(&bad), sizeof bad);
        fs.close();
        CHECK_THROWS_WITH_AS(load_checkpoint(f.path),
                             doctest::Contains("unknown format version"), std::runtime_error);
    }
    SUBCASE("truncated payload") {
        Grid3D g(8, 1.0);
        save_checkpoint(ScalarField3D(g, 1.0), f.path);
        std::filesystem::resize_file(f.path, 100);
        CHECK_THROWS(load_checkpoint(f.path));
    }
    SUBCASE("missing file") { CHECK_THROWS(load_checkpoint("/nonexistent/path.nldw")); }
}

TEST_CASE("config round trip and rejection") {
    RunConfig cfg;
    cfg.Z = 1.25;
    cfg.M = 0.75;
    cfg.n = 48;
    cfg.h = 0.25;
    cfg.m_list = {0.0, 0.5, 1.0};
    cfg.init = "ball";
    cfg.seed = 42;
    cfg.out_dir = "runs/a";

    const std::string text = cfg.to_text();
    const RunConfig back = RunConfig::parse(text);
    CHECK(back.to_text() == text);  // lossless round trip
    CHECK(back.Z == cfg.Z);
    CHECK(back.m_list == cfg.m_list);
    CHECK(back.init == "ball");

    CHECK_THROWS_WITH_AS(RunConfig::parse("bogus_key=1\n"), doctest::Contains("unknown key"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(RunConfig::parse("Z=1\nZ=2\n"), doctest::Contains("duplicate"),
                         std::invalid_argument);
    CHECK_THROWS(RunConfig::parse("Z=abc\n"));
    CHECK_THROWS(RunConfig::parse("m_list=2,1\n"));
    CHECK_THROWS(RunConfig::parse("init=fancy\n"));
    CHECK_THROWS(RunConfig::parse("n=7\n"));

    // comments and blank lines are fine
    const RunConfig c2 = RunConfig::parse("# comment\n\nZ=2.0\n");
    CHECK(c2.Z == 2.0);
}
