#include "repsc/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace repsc {

namespace {

void put_le_double(std::ostream& os, double v) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
    os.write(buf, 8);
}

double get_le_double(std::istream& is) {
    char buf[8];
    is.read(buf, 8);
    if (!is) throw std::runtime_error("snapshot: truncated payload");
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i)
        bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[i])) << (8 * i);
    return std::bit_cast<double>(bits);
}

} // namespace

void write_snapshot(const std::filesystem::path& path, const WaveFunction& psi) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("snapshot: cannot open " + path.string());
    std::ostringstream header;
    header.precision(17);
    header << "REPSC1 " << psi.grid.dim << ' ' << psi.grid.points << ' '
           << psi.grid.half_width << ' ' << psi.grid.scale << '\n';
    os << header.str();
    for (const cplx& v : psi.values) {
        put_le_double(os, v.real());
        put_le_double(os, v.imag());
    }
    if (!os) throw std::runtime_error("snapshot: write failed for " + path.string());
}

WaveFunction read_snapshot(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("snapshot: cannot open " + path.string());
    std::string line;
    std::getline(is, line);
    std::istringstream hs(line);
    std::string magic;
    WaveFunction psi;
    hs >> magic >> psi.grid.dim >> psi.grid.points >> psi.grid.half_width >> psi.grid.scale;
    if (!hs || magic != "REPSC1")
        throw std::runtime_error("snapshot: bad header in " + path.string());
    psi.values.resize(psi.grid.size());
    for (cplx& v : psi.values) {
        double re = get_le_double(is);
        double im = get_le_double(is);
        v = cplx{re, im};
    }
    return psi;
}

void write_field_snapshot(const std::filesystem::path& path, const RealField& f) {
    WaveFunction psi{f.grid, std::vector<cplx>(f.values.size())};
    for (std::size_t i = 0; i < f.values.size(); ++i) psi.values[i] = cplx{f.values[i], 0.0};
    write_snapshot(path, psi);
}

} // namespace repsc
