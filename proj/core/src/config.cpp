#include "dtbc/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dtbc {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& v) {
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    throw std::invalid_argument("config: expected a boolean, got '" + v + "'");
}

} // namespace

std::vector<double> parse_time_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

SimulationConfig SimulationConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: expected key=value, got '" + line + "'");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return from_map(kv);
}

SimulationConfig SimulationConfig::from_map(const std::map<std::string, std::string>& kv) {
    SimulationConfig c;
    for (const auto& [key, value] : kv) {
        if (key == "mode") c.mode = value;
        else if (key == "xl") c.xl = std::stod(value);
        else if (key == "xr") c.xr = std::stod(value);
        else if (key == "yb") c.yb = std::stod(value);
        else if (key == "yt") c.yt = std::stod(value);
        else if (key == "J") c.J = std::stoi(value);
        else if (key == "K") c.K = std::stoi(value);
        else if (key == "cx") c.cx = std::stod(value);
        else if (key == "cy") c.cy = std::stod(value);
        else if (key == "cfl") c.cfl = std::stod(value);
        else if (key == "T") c.T = std::stod(value);
        else if (key == "boundary") c.boundary_1d = value;
        else if (key == "left") c.left = value;
        else if (key == "right") c.right = value;
        else if (key == "bottom") c.bottom = value;
        else if (key == "top") c.top = value;
        else if (key == "init") c.init = value;
        else if (key == "soe") c.soe = parse_bool(value);
        else if (key == "soe_M") c.soe_M = std::stoi(value);
        else if (key == "soe_N") c.soe_N = std::stoi(value);
        else if (key == "precision") c.precision = std::stoi(value);
        else if (key == "snapshots") c.snapshots = parse_time_list(value);
        else if (key == "exit_time") c.exit_time = std::stod(value);
        else if (key == "reflection_window") c.reflection_window = std::stod(value);
        else if (key == "margin") c.margin = std::stoi(value);
        else if (key == "metrics_stride") c.metrics_stride = std::stoi(value);
        else if (key == "field_stride") c.field_stride = std::stoi(value);
        else if (key == "allow_unstable") c.allow_unstable = parse_bool(value);
        else throw std::invalid_argument("config: unknown key '" + key + "'");
    }
    return c;
}

Solver1DConfig SimulationConfig::to_1d() const {
    Solver1DConfig c;
    c.grid = Grid1D::make(xl, xr, J);
    c.cx = cx;
    c.cfl_cap = cfl;
    c.final_time = T;
    if (boundary_1d == "dtbc") c.boundary = Boundary1D::ExactDtbc;
    else if (boundary_1d == "soe") c.boundary = Boundary1D::SoeDtbc;
    else if (boundary_1d == "neumann") c.boundary = Boundary1D::Neumann;
    else throw std::invalid_argument("config: unknown 1d boundary '" + boundary_1d + "'");
    c.soe = SoeParams{soe_M, soe_N, precision};
    c.exit_time = exit_time;
    c.snapshot_times = snapshots;
    c.metrics_stride = metrics_stride;
    c.field_dump_stride = field_stride;
    return c;
}

Solver2DConfig SimulationConfig::to_2d() const {
    Solver2DConfig c;
    c.grid = Grid2D::make(xl, xr, yb, yt, J, K);
    c.velocity = Velocity{cx, cy};
    c.cfl_cap = cfl;
    c.final_time = T;
    c.sides.left = side_condition_from_name(left);
    c.sides.right = side_condition_from_name(right);
    c.sides.bottom = side_condition_from_name(bottom);
    c.sides.top = side_condition_from_name(top);
    if (init == "gaussian2d") c.init = InitialKind::Gaussian2D;
    else if (init == "gaussian1d") c.init = InitialKind::Gaussian1D;
    else if (init == "gaussian1d-profile") c.init = InitialKind::Gaussian1DProfile;
    else throw std::invalid_argument("config: unknown init '" + init + "'");
    c.soe_enabled = soe;
    c.soe = SoeParams{soe_M, soe_N, precision};
    c.allow_unstable = allow_unstable;
    c.snapshot_times = snapshots;
    c.reflection_window_start = reflection_window;
    c.reflection_margin_cells = margin;
    c.metrics_stride = metrics_stride;
    return c;
}

} // namespace dtbc
