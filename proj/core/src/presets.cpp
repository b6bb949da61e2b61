#include "dtbc/presets.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "dtbc/io.hpp"

namespace dtbc::presets {

namespace {

constexpr double k1dLo = -16.0, k1dHi = 0.0;
constexpr double k2dLo = -10.0, k2dHi = 0.0;

Solver1DConfig standard_1d(Boundary1D boundary) {
    Solver1DConfig c;
    c.grid = Grid1D::make(-3.0, 3.0, 999);
    c.cx = 1.0;
    c.cfl_cap = 5.0 / 6.0;
    c.final_time = 10.0;
    c.boundary = boundary;
    c.exit_time = 5.0;
    c.field_dump_stride = 4;
    return c;
}

Solver2DConfig standard_2d(Velocity c, SideSchemes sides) {
    Solver2DConfig cfg;
    cfg.grid = Grid2D::make(-3.0, 3.0, -2.0, 2.0, 300, 200);
    cfg.velocity = c;
    cfg.cfl_cap = 0.5;
    cfg.final_time = 8.0;
    cfg.sides = sides;
    cfg.snapshot_times = {0.0, 1.6, 3.2, 4.8, 6.4, 8.0};
    return cfg;
}

struct Gate {
    std::string name;
    double measured;
    double lo, hi; // inclusive band
    bool pass() const { return measured >= lo && measured <= hi; }
};

PresetResult evaluate(const std::vector<Gate>& gates) {
    PresetResult res;
    res.pass = true;
    std::ostringstream os;
    for (const auto& g : gates) {
        const bool p = g.pass();
        res.pass = res.pass && p;
        os << (p ? "[pass] " : "[FAIL] ") << g.name << ": measured " << g.measured
           << ", expected in [" << g.lo << ", " << g.hi << "]\n";
    }
    res.summary = os.str();
    return res;
}

} // namespace

std::vector<PresetInfo> list_presets() {
    return {
        {"E1", "1d-dtbc", "1d transparent run, exact closure", "A6"},
        {"E2", "1d-neumann", "1d run with Neumann closure, visible reflections", "A7"},
        {"E3", "1d-soe", "1d run with (M,N)=(50,49) compressed closure", "A8"},
        {"E4", "2d-c10-order0", "2d run, c=(1,0), order 0, behaves as stacked 1d", "A6"},
        {"E5", "2d-c1-0.1-orders", "2d reflection ladder at c=(1,0.1), orders 0/1/2x1y", "A9"},
        {"E6", "2d-c1-0.3-orders", "2d runs at c=(1,0.3), stable couplings", "A10"},
        {"E7", "2d-c1-2over3-orders", "2d runs at c=(1,2/3), mixed-order caveat", "A10"},
        {"E8", "2d-unstable-order2-all", "order-2 on all four sides, corner blow-up", "A11"},
        {"E9", "timing-dtbc-vs-soe", "closure-phase timing, exact vs compressed", "A13"},
    };
}

void write_report_1d(const RunReport1D& report, const Solver1DConfig& cfg,
                     const std::string& dir) {
    io::ensure_directory(dir);
    io::write_csv(dir + "/metrics.csv", "n,t,l2,max_abs",
                  io::to_rows(report.metrics));
    if (!report.field_dump.empty()) {
        std::vector<std::vector<double>> rows;
        std::vector<std::vector<double>> field_rows;
        rows.reserve(report.field_dump.size());
        for (const auto& [n, field] : report.field_dump) {
            rows.push_back(field);
            for (size_t j = 0; j < field.size(); ++j)
                field_rows.push_back({static_cast<double>(n), static_cast<double>(j), field[j]});
        }
        io::write_logfield_rows(dir + "/logfield.pgm", rows, k1dLo, k1dHi);
        io::write_csv(dir + "/field.csv", "n,j,u", field_rows);
    }
    nlohmann::json j;
    j["steps"] = report.steps;
    j["dt"] = report.cfl.dt;
    j["mu_x"] = report.cfl.mu_x;
    j["post_exit_residual"] = report.post_exit_residual;
    j["closure_seconds"] = report.closure_seconds;
    j["total_seconds"] = report.total_seconds;
    std::ofstream(dir + "/summary.json") << j.dump(2) << "\n";
    (void)cfg;
}

void write_report_2d(const RunReport2D& report, const Solver2DConfig& cfg,
                     const std::string& dir) {
    io::ensure_directory(dir);
    io::write_csv(dir + "/l2norm.csv", "n,t,l2", io::to_rows(report.l2_series));
    io::write_csv(dir + "/reflections.csv", "n,t,interior_max_abs",
                  io::to_rows(report.reflection_series));
    for (const auto& [t, field] : report.snapshots) {
        std::ostringstream name;
        name << dir << "/logfield_t" << t << ".pgm";
        io::write_logfield(name.str(), field, k2dLo, k2dHi);
    }
    nlohmann::json j;
    j["steps"] = report.steps;
    j["dt"] = report.cfl.dt;
    j["mu_x"] = report.cfl.mu_x;
    j["mu_y"] = report.cfl.mu_y;
    j["stable"] = !report.unstable;
    j["growth_rate"] = report.growth_rate;
    j["reflection_magnitude"] = report.reflection_magnitude;
    j["initial_l2"] = report.initial_l2;
    j["max_l2"] = report.max_l2;
    j["closure_seconds"] = report.closure_seconds;
    j["total_seconds"] = report.total_seconds;
    std::ofstream(dir + "/summary.json") << j.dump(2) << "\n";
    (void)cfg;
}

FieldArgmax field_argmax(const Field2D& f) {
    FieldArgmax best;
    for (int j = 0; j <= f.J() + 1; ++j)
        for (int k = 0; k <= f.K() + 1; ++k) {
            if (f.is_corner(j, k)) continue;
            const double v = std::abs(f(j, k));
            if (v > best.value) {
                best.value = v;
                best.j = j;
                best.k = k;
            }
        }
    return best;
}

bool l2_bounded_after_first_quarter(const std::vector<std::array<double, 3>>& l2_series,
                                    double factor) {
    if (l2_series.empty()) return false;
    const double n_max = l2_series.back()[0];
    double quarter_max = 0.0;
    for (const auto& row : l2_series)
        if (row[0] <= n_max / 4.0) quarter_max = std::max(quarter_max, row[2]);
    for (const auto& row : l2_series)
        if (row[2] > factor * quarter_max) return false;
    return true;
}

PresetResult run_preset(const std::string& id_or_alias, const std::string& out_dir, uint64_t seed,
                        int precision) {
    (void)seed;
    std::string id;
    for (const auto& info : list_presets())
        if (info.id == id_or_alias || info.alias == id_or_alias) id = info.id;
    if (id.empty()) throw std::invalid_argument("unknown preset: " + id_or_alias);
    const std::string dir = out_dir + "/" + id;
    io::ensure_directory(dir);

    if (id == "E1") {
        auto cfg = standard_1d(Boundary1D::ExactDtbc);
        auto rep = run_1d(cfg);
        write_report_1d(rep, cfg, dir);
        return evaluate({{"post_exit_residual", rep.post_exit_residual, 0.0, 1e-13}});
    }
    if (id == "E2") {
        auto cfg = standard_1d(Boundary1D::Neumann);
        auto rep = run_1d(cfg);
        write_report_1d(rep, cfg, dir);
        return evaluate({{"post_exit_residual", rep.post_exit_residual, 1e-4, 1e300}});
    }
    if (id == "E3") {
        auto exact_cfg = standard_1d(Boundary1D::ExactDtbc);
        auto exact = run_1d(exact_cfg);
        auto cfg = standard_1d(Boundary1D::SoeDtbc);
        cfg.soe = SoeParams{50, 49, precision};
        auto rep = run_1d(cfg);
        write_report_1d(rep, cfg, dir);
        return evaluate(
            {{"residual_vs_exact", rep.post_exit_residual, 0.0, 10.0 * exact.post_exit_residual}});
    }
    if (id == "E4") {
        auto cfg = standard_2d(Velocity{1.0, 0.0}, SideSchemes::all(SideCondition::Dtbc0));
        auto rep = run_2d(cfg);
        write_report_2d(rep, cfg, dir);
        return evaluate({{"reflection_magnitude", rep.reflection_magnitude, 0.0, 1e-13}});
    }
    if (id == "E5") {
        std::vector<Gate> gates;
        const std::vector<std::pair<std::string, SideSchemes>> cases = {
            {"order0", SideSchemes::all(SideCondition::Dtbc0)},
            {"order1", SideSchemes::all(SideCondition::Dtbc1)},
            {"order2x1y", SideSchemes::orders(SideCondition::Dtbc2, SideCondition::Dtbc1)},
        };
        const std::vector<std::pair<double, double>> bands = {
            {1e-4, 1e-2}, {1e-6, 1e-4}, {1e-9, 1e-7}};
        for (size_t i = 0; i < cases.size(); ++i) {
            auto cfg = standard_2d(Velocity{1.0, 0.1}, cases[i].second);
            auto rep = run_2d(cfg);
            write_report_2d(rep, cfg, dir + "/" + cases[i].first);
            gates.push_back({"reflection_" + cases[i].first, rep.reflection_magnitude,
                             bands[i].first, bands[i].second});
        }
        return evaluate(gates);
    }
    if (id == "E6" || id == "E7") {
        const Velocity c = (id == "E6") ? Velocity{1.0, 0.3} : Velocity{1.0, 2.0 / 3.0};
        std::vector<Gate> gates;
        const std::vector<std::pair<std::string, SideSchemes>> cases = {
            {"order0", SideSchemes::all(SideCondition::Dtbc0)},
            {"order1", SideSchemes::all(SideCondition::Dtbc1)},
            {"order2x1y", SideSchemes::orders(SideCondition::Dtbc2, SideCondition::Dtbc1)},
        };
        double refl_order1 = 0.0, refl_mixed = 0.0;
        for (const auto& [name, sides] : cases) {
            auto cfg = standard_2d(c, sides);
            auto rep = run_2d(cfg);
            write_report_2d(rep, cfg, dir + "/" + name);
            gates.push_back({"l2_bounded_" + name,
                             l2_bounded_after_first_quarter(rep.l2_series) ? 1.0 : 0.0, 1.0, 1.0});
            if (name == "order1") refl_order1 = rep.reflection_magnitude;
            if (name == "order2x1y") refl_mixed = rep.reflection_magnitude;
        }
        if (id == "E7") {
            // Mixing orders across a corner should not beat uniform order 1.
            gates.push_back({"order1_vs_mixed_ratio", refl_order1 / refl_mixed, 0.0, 2.0});
        }
        return evaluate(gates);
    }
    if (id == "E8") {
        auto cfg = standard_2d(Velocity{1.0, 0.3}, SideSchemes::all(SideCondition::Dtbc2));
        cfg.allow_unstable = true;
        cfg.snapshot_times = {4.0};
        auto rep = run_2d(cfg);
        write_report_2d(rep, cfg, dir);
        std::vector<Gate> gates;
        gates.push_back({"unstable", rep.unstable ? 1.0 : 0.0, 1.0, 1.0});
        gates.push_back({"growth_rate", rep.growth_rate, 1e-12, 1e300});
        if (rep.snapshots.empty()) {
            gates.push_back({"t4_snapshot_present", 0.0, 1.0, 1.0});
        } else {
            const auto arg = field_argmax(rep.snapshots.front().second);
            const int J = cfg.grid.J, K = cfg.grid.K;
            const int dist = std::min(J + 1 - arg.j, K + 1 - arg.k);
            gates.push_back({"t4_peak_near_top_or_right_cells", static_cast<double>(dist), 0.0, 10.0});
        }
        return evaluate(gates);
    }
    if (id == "E9") {
        auto exact_cfg = standard_2d(Velocity{1.0, 0.1}, SideSchemes::all(SideCondition::Dtbc1));
        exact_cfg.snapshot_times.clear();
        auto exact = run_2d(exact_cfg);
        auto soe_cfg = exact_cfg;
        soe_cfg.soe_enabled = true;
        soe_cfg.soe = SoeParams{50, 20, precision};
        auto fast = run_2d(soe_cfg);
        write_report_2d(exact, exact_cfg, dir + "/exact");
        write_report_2d(fast, soe_cfg, dir + "/soe");
        std::vector<Gate> gates;
        gates.push_back({"soe_vs_exact_closure_ratio", fast.closure_seconds / exact.closure_seconds,
                         0.0, 0.999});
        // The compressed run must stay accurate, not just fast.
        gates.push_back({"soe_reflection_magnitude", fast.reflection_magnitude, 0.0,
                         10.0 * std::max(exact.reflection_magnitude, 1e-8)});
        return evaluate(gates);
    }
    throw std::logic_error("run_preset: unhandled preset " + id);
}

} // namespace dtbc::presets
