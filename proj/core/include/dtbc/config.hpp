#pragma once

#include <map>
#include <string>

#include "dtbc/solver1d.hpp"
#include "dtbc/solver2d.hpp"

namespace dtbc {

/// Flat key=value run description; mirrors the CLI flags. Unknown keys are
/// rejected so typos fail loudly. Keys:
///   mode        1d | 2d
///   xl xr yb yt domain bounds (yb/yt ignored in 1d mode)
///   J K         interior point counts
///   cx cy       velocity components
///   cfl         cfl cap in (0,1)
///   T           final time
///   boundary    1d closure: dtbc | soe | neumann
///   left right bottom top   2d closures: dtbc0 | dtbc1 | dtbc2 | neumann
///   init        gaussian1d | gaussian2d | gaussian1d-profile
///   soe         0|1, replace the zero-order sums by channel convolutions (2d)
///   soe_M soe_N precision   compression degrees and decimal digits
///   snapshots   comma-separated times
///   exit_time reflection_window margin metrics_stride field_stride
///   allow_unstable 0|1
struct SimulationConfig {
    std::string mode = "2d";
    double xl = -3.0, xr = 3.0, yb = -2.0, yt = 2.0;
    int J = 300, K = 200;
    double cx = 1.0, cy = 0.1;
    double cfl = 0.5;
    double T = 8.0;
    std::string boundary_1d = "dtbc";
    std::string left = "dtbc0", right = "dtbc0", bottom = "dtbc0", top = "dtbc0";
    std::string init = "gaussian2d";
    bool soe = false;
    int soe_M = 50, soe_N = 20, precision = 80;
    std::vector<double> snapshots;
    double exit_time = 5.0;
    double reflection_window = 5.0;
    int margin = 10;
    int metrics_stride = 1;
    int field_stride = 0;
    bool allow_unstable = false;

    static SimulationConfig from_file(const std::string& path);
    static SimulationConfig from_map(const std::map<std::string, std::string>& kv);

    Solver1DConfig to_1d() const;
    Solver2DConfig to_2d() const;
};

std::vector<double> parse_time_list(const std::string& csv);

} // namespace dtbc
