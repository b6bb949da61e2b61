#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dtbc/solver1d.hpp"
#include "dtbc/solver2d.hpp"

namespace dtbc::presets {

struct PresetInfo {
    std::string id;          // E1..E9
    std::string alias;       // e.g. 1d-dtbc
    std::string description;
    std::string acceptance;  // acceptance-suite entry the expected band mirrors
};

std::vector<PresetInfo> list_presets();

struct PresetResult {
    bool pass = false;
    std::string summary; // measured vs expected, one line per gate
};

/// Runs one preset, writes its artifacts under out_dir/<id>/ and checks the
/// measured metrics against the expected band. Returns pass/fail plus text.
PresetResult run_preset(const std::string& id_or_alias, const std::string& out_dir,
                        uint64_t seed = 42, int precision = 80);

/// Output writers shared by the CLI run commands and the presets.
void write_report_1d(const RunReport1D& report, const Solver1DConfig& cfg,
                     const std::string& dir);
void write_report_2d(const RunReport2D& report, const Solver2DConfig& cfg,
                     const std::string& dir);

/// Location of the max-|u| entry of a field (ties broken by scan order).
struct FieldArgmax {
    int j = 0, k = 0;
    double value = 0.0;
};
FieldArgmax field_argmax(const Field2D& f);

/// l2 series gate used by the stable-coupling presets: the series never
/// exceeds `factor` times its maximum over the first quarter of the run.
bool l2_bounded_after_first_quarter(const std::vector<std::array<double, 3>>& l2_series,
                                    double factor = 2.0);

} // namespace dtbc::presets
