// pntlab: prime-counting, zeta-evaluation, and Tauberian-machinery CLI.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 resource-budget overrun, 4 domain/numeric error.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pntlab/asymptotics.hpp"
#include "pntlab/primes.hpp"
#include "pntlab/report.hpp"
#include "pntlab/tauberian.hpp"
#include "pntlab/verify.hpp"
#include "pntlab/zeros.hpp"
#include "pntlab/zeta.hpp"

namespace {

using pntlab::Complex;

// "2", "-1.5", "2+5i", "0.5-14.1347i"
Complex parse_complex(const std::string& text) {
    const std::string s = text;
    if (s.empty()) throw CLI::ValidationError("--s", "empty complex literal");
    std::size_t split = std::string::npos;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') split = i;
    }
    try {
        if (s.back() == 'i') {
            if (split == std::string::npos)  // pure imaginary
                return {0.0, std::stod(s.substr(0, s.size() - 1))};
            const double re = std::stod(s.substr(0, split));
            std::string imag = s.substr(split, s.size() - split - 1);
            if (imag == "+" || imag == "-") imag += "1";
            return {re, std::stod(imag)};
        }
        return {std::stod(s), 0.0};
    } catch (const std::exception&) {
        throw CLI::ValidationError("--s", "cannot parse complex literal '" + text + "'");
    }
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw pntlab::error("cannot open output file " + path);
    return file;
}

std::vector<std::uint64_t> decade_rows(std::uint64_t max_x) {
    std::vector<std::uint64_t> rows;
    for (std::uint64_t x = 1000; x <= max_x && x <= 1'000'000'000'000ull; x *= 10)
        rows.push_back(x);
    return rows;
}

std::filesystem::path checkpoint_file(const std::string& dir_flag) {
    std::string dir = dir_flag;
    if (dir.empty()) {
        if (const char* env = std::getenv("PNTLAB_CHECKPOINTS")) dir = env;
    }
    if (dir.empty()) return {};
    return std::filesystem::path(dir) / "pi_checkpoints.tsv";
}

int run_pi_table(double max_x, const std::string& out_path, const std::string& format,
                 const std::string& checkpoint_dir) {
    const auto rows_x = decade_rows(static_cast<std::uint64_t>(max_x));
    std::map<std::uint64_t, pntlab::PiCheckpoint> known;
    const auto cp_path = checkpoint_file(checkpoint_dir);
    if (!cp_path.empty() && std::filesystem::exists(cp_path)) {
        std::ifstream in(cp_path);
        for (const auto& c : pntlab::read_pi_checkpoints(in)) known[c.x] = c;
    }
    std::vector<pntlab::TableRow> rows;
    for (std::uint64_t x : rows_x) {
        pntlab::TableRow row;
        const auto it = known.find(x);
        if (it != known.end()) {
            row.x = x;
            row.pi = it->second.pi;
            row.pi_method = it->second.method;
            const double xd = static_cast<double>(x);
            row.li_rounded = pntlab::round_half_away(pntlab::li(xd, 1e-3).li);
            row.x_over_logx_rounded = pntlab::round_half_away(xd / std::log(xd));
        } else {
            row = pntlab::table_row(x);
            known[x] = {x, row.pi, row.pi_method};
        }
        rows.push_back(row);
    }
    if (!cp_path.empty()) {
        std::filesystem::create_directories(cp_path.parent_path());
        std::ofstream out(cp_path);
        std::vector<pntlab::PiCheckpoint> cps;
        for (const auto& [x, c] : known) cps.push_back(c);
        pntlab::write_pi_checkpoints(out, cps);
    }
    std::ofstream file;
    auto& os = open_output(file, out_path);
    if (format == "json")
        os << pntlab::table_json(rows).dump(2) << '\n';
    else
        pntlab::write_table_csv(os, rows);
    return 0;
}

int run_zeros(int count, const std::string& out_path) {
    const auto zeros = pntlab::first_n_zeros(count);
    std::ofstream file;
    auto& os = open_output(file, out_path);
    pntlab::write_zero_csv(os, zeros);
    return 0;
}

int run_zeta_eval(const std::string& s_text, double tol, const std::string& method,
                  const std::string& out_path) {
    const Complex s = parse_complex(s_text);
    pntlab::EvalResult result;
    if (method == "direct" || (method == "auto" && s.real() > 1.05))
        result = pntlab::zeta_direct(s, tol);
    else if (method == "eta")
        result = pntlab::zeta_eta_oracle(s, tol);
    else
        result = pntlab::zeta_floor_integral(s, tol);
    std::ofstream file;
    auto& os = open_output(file, out_path);
    os << pntlab::eval_json(s, result).dump(2) << '\n';
    return 0;
}

int run_euler_product(const std::string& s_text, double max_n, const std::string& out_path) {
    const Complex s = parse_complex(s_text);
    const auto n = static_cast<std::uint64_t>(max_n);
    const auto result = pntlab::euler_product_partial(s, n);
    auto payload = pntlab::eval_json(s, result);
    payload["n_limit"] = n;
    payload["reciprocal_defect"] = pntlab::reciprocal_product_check(s, n);
    std::ofstream file;
    auto& os = open_output(file, out_path);
    os << payload.dump(2) << '\n';
    return 0;
}

int run_theta_ratio(double max_x, int points, const std::string& out_path) {
    const auto series = pntlab::theta_ratio_series(pntlab::log_grid(2.0, max_x, points));
    std::ofstream file;
    auto& os = open_output(file, out_path);
    pntlab::write_ratio_csv(os, series);
    return 0;
}

int run_tauber_demo(double max_x, const std::string& out_path) {
    std::ofstream file;
    auto& os = open_output(file, out_path);
    // catalog signal with a known transform, then the theta signal itself
    const auto cat = pntlab::exp_decay_signal(1.0);
    std::vector<double> t_grid;
    for (double T = 1.0; T <= 12.0; T += 1.0) t_grid.push_back(T);
    os << "# f(t) = exp(-t): |g_T(0) - g(0)|\n";
    pntlab::write_convergence_csv(os, pntlab::newman_convergence_demo(cat, t_grid));
    std::vector<double> theta_grid;
    for (double x = 100.0; x <= max_x * 1.0000001; x *= 10.0)
        theta_grid.push_back(std::log(x));
    os << "# f(t) = theta(e^t) e^{-t} - 1: |g_T(0) - g(0)|\n";
    pntlab::write_convergence_csv(
        os, pntlab::theta_convergence_demo(theta_grid, static_cast<std::uint64_t>(max_x)));
    return 0;
}

int run_pnt_tail(double max_x, const std::string& out_path) {
    std::vector<double> xs;
    for (double x = 100.0; x <= max_x * 1.0000001; x *= 10.0) xs.push_back(x);
    const auto series = pntlab::pnt_integral_tail_series(xs, static_cast<std::uint64_t>(max_x));
    std::ofstream file;
    auto& os = open_output(file, out_path);
    pntlab::write_tail_csv(os, series);
    return 0;
}

int run_verify_all(double max_x) {
    pntlab::VerifyOptions opt;
    opt.table_max = static_cast<std::uint64_t>(max_x);
    const auto results = pntlab::run_verification(opt, &std::cout);
    return pntlab::all_passed(results) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pntlab: prime counting, zeta evaluation, and the Tauberian machinery "
                 "behind the prime number theorem, verified at desk scale"};
    app.require_subcommand(1);

    double max_x = 1e9;
    int count = 20;
    int points = 200;
    double tol = 1e-10;
    std::string s_text = "2";
    std::string out_path, checkpoint_dir;
    std::string format = "csv";
    std::string method = "auto";

    auto* pi_table = app.add_subcommand("pi-table", "Reproduce the pi/Li/x-over-log-x table");
    pi_table->add_option("--max", max_x, "largest decade row (default 1e9)");
    pi_table->add_option("--out", out_path, "output file (default stdout)");
    pi_table->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    pi_table->add_option("--checkpoint-dir", checkpoint_dir,
                         "directory for resumable pi checkpoints (env PNTLAB_CHECKPOINTS)");

    auto* zeros = app.add_subcommand("zeros", "List critical-line zeros as CSV");
    zeros->add_option("--count", count, "how many zeros (1..20)")->check(CLI::Range(1, 20));
    zeros->add_option("--out", out_path, "output file (default stdout)");

    auto* zeta_eval = app.add_subcommand("zeta-eval", "Evaluate zeta(s) with an error bound");
    zeta_eval->add_option("--s", s_text, "complex point, e.g. 2 or 0.5+14.1347i");
    zeta_eval->add_option("--tol", tol, "absolute tolerance (default 1e-10)");
    zeta_eval->add_option("--method", method, "auto, direct, floor, or eta")
        ->check(CLI::IsMember({"auto", "direct", "floor", "eta"}));
    zeta_eval->add_option("--out", out_path, "output file (default stdout)");

    auto* euler = app.add_subcommand("euler-product", "Partial Euler product with tail bound");
    euler->add_option("--s", s_text, "complex point with Re s > 1");
    euler->add_option("--max", max_x, "largest prime factor bound")->required();
    euler->add_option("--out", out_path, "output file (default stdout)");

    auto* theta = app.add_subcommand("theta-ratio", "theta(x)/x over a log grid (plot CSV)");
    theta->add_option("--max", max_x, "grid endpoint (default 1e9; try 1e8)");
    theta->add_option("--count", points, "grid points (default 200)");
    theta->add_option("--out", out_path, "output file (default stdout)");

    auto* tauber = app.add_subcommand("tauber-demo", "Convergence of g_T(0) toward g(0)");
    tauber->add_option("--max", max_x, "theta-signal cutoff (default 1e9; try 1e6)");
    tauber->add_option("--out", out_path, "output file (default stdout)");

    auto* tail = app.add_subcommand("pnt-tail", "I(x) = integral of (theta(t)-t)/t^2 beyond x");
    tail->add_option("--max", max_x, "prime cutoff (default 1e9; try 1e8)");
    tail->add_option("--out", out_path, "output file (default stdout)");

    auto* verify = app.add_subcommand("verify-all", "Run the full verification suite");
    verify->add_option("--max", max_x, "largest table row (default 1e9; full run: 1e12)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (pi_table->parsed()) return run_pi_table(max_x, out_path, format, checkpoint_dir);
        if (zeros->parsed()) return run_zeros(count, out_path);
        if (zeta_eval->parsed()) return run_zeta_eval(s_text, tol, method, out_path);
        if (euler->parsed()) return run_euler_product(s_text, max_x, out_path);
        if (theta->parsed()) return run_theta_ratio(max_x, points, out_path);
        if (tauber->parsed()) return run_tauber_demo(max_x, out_path);
        if (tail->parsed()) return run_pnt_tail(max_x, out_path);
        if (verify->parsed()) return run_verify_all(max_x);
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const pntlab::resource_error& e) {
        std::cerr << "resource error: " << e.what() << '\n';
        return 3;
    } catch (const pntlab::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
    return 2;
}
