#pragma once
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pntlab/asymptotics.hpp"
#include "pntlab/tauberian.hpp"
#include "pntlab/zeta.hpp"

namespace pntlab {

// shortest round-trip decimal form; stable across runs
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void write_table_csv(std::ostream& os, const std::vector<TableRow>& rows) {
    os << "x,pi,li_rounded,x_over_logx_rounded\n";
    for (const auto& r : rows)
        os << r.x << ',' << r.pi << ',' << r.li_rounded << ',' << r.x_over_logx_rounded << '\n';
}

inline nlohmann::json table_json(const std::vector<TableRow>& rows) {
    nlohmann::json out;
    out["schema"] = 1;
    out["rows"] = nlohmann::json::array();
    for (const auto& r : rows)
        out["rows"].push_back({{"x", r.x},
                               {"pi", r.pi},
                               {"li_rounded", r.li_rounded},
                               {"x_over_logx_rounded", r.x_over_logx_rounded},
                               {"pi_method", to_string(r.pi_method)}});
    return out;
}

inline void write_ratio_csv(std::ostream& os, const RatioSeries& series) {
    os << "x," << series.name << '\n';
    for (std::size_t i = 0; i < series.grid.size(); ++i)
        os << format_double(series.grid[i]) << ',' << format_double(series.ratios[i]) << '\n';
}

inline nlohmann::json eval_json(Complex s, const EvalResult& result) {
    return {{"schema", 1},
            {"s_re", s.real()},
            {"s_im", s.imag()},
            {"value_re", result.value.real()},
            {"value_im", result.value.imag()},
            {"err", result.err},
            {"method", to_string(result.method)}};
}

inline void write_convergence_csv(std::ostream& os, const std::vector<ConvergencePoint>& pts) {
    os << "T,abs_error\n";
    for (const auto& p : pts)
        os << format_double(p.T) << ',' << format_double(p.abs_error) << '\n';
}

inline void write_tail_csv(std::ostream& os, const PntTailSeries& series) {
    os << "x,I\n";
    for (std::size_t i = 0; i < series.x.size(); ++i)
        os << format_double(series.x[i]) << ',' << format_double(series.integral[i]) << '\n';
}

} // namespace pntlab
