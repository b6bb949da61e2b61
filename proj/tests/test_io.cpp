#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dtbc/config.hpp"
#include "dtbc/io.hpp"

using namespace dtbc;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("pgm clamping at both ends") {
    const std::string dir = std::filesystem::temp_directory_path() / "dtbc_io_test";
    io::ensure_directory(dir);
    Field2D f(3, 3);
    io::write_logfield(dir + "/zero.pgm", f, -10.0, 0.0);
    const auto zero = slurp(dir + "/zero.pgm");
    CHECK(zero.substr(0, 3) == "P5\n");
    // All payload bytes at the floor level.
    const auto payload = zero.substr(zero.find("65535\n") + 6);
    CHECK(payload.size() == 5u * 5u * 2u);
    for (char c : payload) CHECK(static_cast<unsigned char>(c) == 0);

    f(1, 1) = 1.0; // log10 = 0 -> ceiling
    io::write_logfield(dir + "/one.pgm", f, -10.0, 0.0);
    const auto one = slurp(dir + "/one.pgm");
    const auto body = one.substr(one.find("65535\n") + 6);
    int maxed = 0;
    for (size_t i = 0; i + 1 < body.size(); i += 2) {
        const unsigned v = (static_cast<unsigned char>(body[i]) << 8) |
                           static_cast<unsigned char>(body[i + 1]);
        if (v == 65535u) ++maxed;
    }
    CHECK(maxed == 1);
}

TEST_CASE("csv output is deterministic") {
    const std::string dir = std::filesystem::temp_directory_path() / "dtbc_io_test";
    io::ensure_directory(dir);
    const std::vector<std::vector<double>> rows = {{1.0, 0.1234567890123456789, -3e-15},
                                                   {2.0, 5e300, 0.0}};
    io::write_csv(dir + "/a.csv", "n,x,y", rows);
    io::write_csv(dir + "/b.csv", "n,x,y", rows);
    CHECK(slurp(dir + "/a.csv") == slurp(dir + "/b.csv"));
    CHECK(slurp(dir + "/a.csv").starts_with("n,x,y\n"));
}

TEST_CASE("flat config parsing") {
    const std::string dir = std::filesystem::temp_directory_path() / "dtbc_io_test";
    io::ensure_directory(dir);
    const std::string path = dir + "/run.cfg";
    std::ofstream(path) << "mode = 2d\n"
                           "J = 40\nK = 30\n"
                           "cx = 1.0\ncy = 0.3\n"
                           "cfl = 0.5\nT = 2.5\n"
                           "left = dtbc1\nright=dtbc2\n"
                           "snapshots = 1.0, 2.0\n"
                           "# comment line\n"
                           "allow_unstable = 0\n";
    const auto sim = SimulationConfig::from_file(path);
    CHECK(sim.J == 40);
    CHECK(sim.K == 30);
    CHECK(sim.cy == 0.3);
    CHECK(sim.T == 2.5);
    CHECK(sim.left == "dtbc1");
    CHECK(sim.right == "dtbc2");
    CHECK(sim.snapshots == std::vector<double>{1.0, 2.0});

    const auto cfg = sim.to_2d();
    CHECK(cfg.grid.J == 40);
    CHECK(cfg.sides.right == SideCondition::Dtbc2);

    std::ofstream(path) << "unknown_key = 3\n";
    CHECK_THROWS(SimulationConfig::from_file(path));
}
