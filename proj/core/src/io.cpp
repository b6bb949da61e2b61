#include "dtbc/io.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace dtbc::io {

namespace {

uint16_t to_level(double u, double lo, double hi) {
    double v = std::log10(std::abs(u));
    if (!std::isfinite(v)) v = lo;
    v = std::min(std::max(v, lo), hi);
    return static_cast<uint16_t>(std::lround((v - lo) / (hi - lo) * 65535.0));
}

void write_pgm(const std::string& path, int width, int height,
               const std::vector<uint16_t>& pixels) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("io: cannot write " + path);
    out << "P5\n" << width << " " << height << "\n65535\n";
    for (uint16_t p : pixels) {
        const unsigned char hi = static_cast<unsigned char>(p >> 8);
        const unsigned char lo = static_cast<unsigned char>(p & 0xff);
        out.put(static_cast<char>(hi));
        out.put(static_cast<char>(lo));
    }
}

} // namespace

void write_logfield(const std::string& path, const Field2D& f, double lo, double hi) {
    const int W = f.J() + 2, H = f.K() + 2;
    std::vector<uint16_t> px(static_cast<size_t>(W) * H);
    for (int row = 0; row < H; ++row) {
        const int k = f.K() + 1 - row;
        for (int j = 0; j < W; ++j)
            px[static_cast<size_t>(row) * W + j] = to_level(f(j, k), lo, hi);
    }
    write_pgm(path, W, H, px);
}

void write_logfield_rows(const std::string& path, const std::vector<std::vector<double>>& rows,
                         double lo, double hi) {
    if (rows.empty()) throw std::invalid_argument("write_logfield_rows: empty dump");
    const int W = static_cast<int>(rows.front().size());
    const int H = static_cast<int>(rows.size());
    std::vector<uint16_t> px(static_cast<size_t>(W) * H);
    for (int r = 0; r < H; ++r)
        for (int j = 0; j < W; ++j)
            px[static_cast<size_t>(r) * W + j] = to_level(rows[r][j], lo, hi);
    write_pgm(path, W, H, px);
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("io: cannot write " + path);
    out << header << "\n";
    out.precision(17);
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out << ",";
            out << row[i];
        }
        out << "\n";
    }
}

void ensure_directory(const std::string& path) {
    std::filesystem::create_directories(path);
}

} // namespace dtbc::io
