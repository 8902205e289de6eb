#include "nldw/checkpoint.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace nldw {

static_assert(std::endian::native == std::endian::little,
              "checkpoint IO assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'N', 'L', 'D', 'W'};

void write_u32(std::ostream& os, std::uint32_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t read_u32(std::istream& is) {
    std::uint32_t v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!is) throw std::runtime_error("checkpoint: truncated file");
    return v;
}

}  // namespace

void save_checkpoint(const ScalarField3D& u, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("checkpoint: cannot open " + path + " for writing");
    os.write(kMagic, 4);
    write_u32(os, kCheckpointVersion);
    write_u32(os, static_cast<std::uint32_t>(u.grid.n));
    os.write(reinterpret_cast<const char*>(&u.grid.h), sizeof(double));
    os.write(reinterpret_cast<const char*>(u.values.data()),
             static_cast<std::streamsize>(u.values.size() * sizeof(double)));
    if (!os) throw std::runtime_error("checkpoint: write failed for " + path);
}

ScalarField3D load_checkpoint(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("checkpoint: cannot open " + path);
    char magic[4] = {};
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("checkpoint: bad magic in " + path);
    const std::uint32_t version = read_u32(is);
    if (version != kCheckpointVersion)
        throw std::runtime_error("checkpoint: unknown format version in " + path);
    const std::uint32_t n = read_u32(is);
    double h = 0.0;
    is.read(reinterpret_cast<char*>(&h), sizeof h);
    if (!is) throw std::runtime_error("checkpoint: truncated file " + path);
    Grid3D grid(static_cast<int>(n), h);
    ScalarField3D u(grid);
    is.read(reinterpret_cast<char*>(u.values.data()),
            static_cast<std::streamsize>(u.values.size() * sizeof(double)));
    if (!is || is.gcount() != static_cast<std::streamsize>(u.values.size() * sizeof(double)))
        throw std::runtime_error("checkpoint: truncated file " + path);
    bool nonneg = true;
    for (double v : u.values) {
        if (!std::isfinite(v)) throw std::runtime_error("checkpoint: non-finite value in " + path);
        nonneg = nonneg && v >= 0.0;
    }
    u.nonneg = nonneg;
    return u;
}

}  // namespace nldw
