#pragma once

#include <array>
#include <string>
#include <vector>

#include "dtbc/grid.hpp"

namespace dtbc::io {

template <size_t N>
std::vector<std::vector<double>> to_rows(const std::vector<std::array<double, N>>& a) {
    std::vector<std::vector<double>> out;
    out.reserve(a.size());
    for (const auto& r : a) out.emplace_back(r.begin(), r.end());
    return out;
}

/// 16-bit PGM of clamp(log10|u|, lo, hi) mapped linearly onto [0, 65535].
/// The field is written with k = K+1 as the top image row.
void write_logfield(const std::string& path, const Field2D& f, double lo, double hi);

/// Space-time variant: each entry of `rows` is one field at a dump step,
/// earliest first; row 0 of the image is the earliest step.
void write_logfield_rows(const std::string& path, const std::vector<std::vector<double>>& rows,
                         double lo, double hi);

/// Minimal CSV writer; values are printed with 17 significant digits so runs
/// are bit-reproducible through the files.
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows);

void ensure_directory(const std::string& path);

} // namespace dtbc::io
