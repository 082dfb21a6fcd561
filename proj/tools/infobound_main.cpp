#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "infobound/sweep.hpp"

namespace {

int parse_overrides(const std::vector<std::string>& kvs,
                    std::map<std::string, double>& out) {
    for (const std::string& kv : kvs) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) {
            std::cerr << "error: override must have the form key=value: " << kv << "\n";
            return 1;
        }
        const std::string key = kv.substr(0, eq);
        try {
            std::size_t pos = 0;
            const double v = std::stod(kv.substr(eq + 1), &pos);
            if (pos != kv.size() - eq - 1) throw std::invalid_argument(kv);
            out[key] = v;
        } catch (const std::exception&) {
            std::cerr << "error: override value for '" << key << "' is not numeric\n";
            return 1;
        }
    }
    return 0;
}

int cmd_fig(int fig, const std::string& out_path, const std::vector<std::string>& kvs,
            double alpha, bool alpha_set) {
    std::map<std::string, double> overrides;
    if (parse_overrides(kvs, overrides) != 0) return 1;
    if (alpha_set) overrides["alpha"] = alpha;

    const infobound::FigureResult r = infobound::make_figure(fig, overrides);
    if (r.exit_code != 0) {
        std::cerr << "error: " << r.error << "\n";
        return r.exit_code;
    }
    const std::string path = out_path.empty() ? "fig" + std::to_string(fig) + ".csv" : out_path;
    if (infobound::write_csv_file(r.table, path) != 0) {
        std::cerr << "error: cannot write " << path << "\n";
        return 1;
    }
    std::cout << "wrote " << path << " (" << r.table.rows.size() << " rows)\n";
    return 0;
}

int cmd_verify(const std::string& suite, const std::string& report_path, std::uint64_t seed) {
    std::vector<infobound::VerifyCheck> checks;
    try {
        checks = infobound::run_verify_suite(suite, seed);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    bool all_pass = true;
    for (const infobound::VerifyCheck& c : checks) {
        all_pass = all_pass && c.pass;
        std::printf("%-50s %s  (lhs=%.10g rhs=%.10g tol=%.3g)\n", c.name.c_str(),
                    c.pass ? "PASS" : "FAIL", c.lhs, c.rhs, c.tolerance);
    }
    if (!report_path.empty()) {
        std::ofstream os(report_path, std::ios::binary);
        if (!os) {
            std::cerr << "error: cannot write " << report_path << "\n";
            return 1;
        }
        os << infobound::verify_report_json(checks);
    }
    std::printf("%zu checks, %s\n", checks.size(), all_pass ? "all passed" : "FAILURES present");
    return all_pass ? 0 : 1;
}

int cmd_sweep(const std::string& config_path, const std::string& out_path) {
    try {
        const infobound::SweepConfig cfg = infobound::parse_sweep_config_file(config_path);
        const infobound::CsvTable t = infobound::run_sweep(cfg);
        if (infobound::write_csv_file(t, out_path) != 0) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return 1;
        }
        std::cout << "wrote " << out_path << " (" << t.rows.size() << " rows)\n";
        return 0;
    } catch (const infobound::SweepConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"infobound: information bounds for parametric channels"};
    app.require_subcommand(1);

    int fig_n = 1;
    std::string fig_out;
    std::vector<std::string> fig_overrides;
    double fig_alpha = 0.0;
    CLI::App* fig = app.add_subcommand("fig", "emit a figure dataset as CSV");
    fig->add_option("n", fig_n, "figure number")->required()->check(CLI::Range(1, 4));
    fig->add_option("--out", fig_out, "output CSV path (default fig<n>.csv)");
    fig->add_option("--override", fig_overrides, "numeric override key=value");
    CLI::Option* alpha_opt = fig->add_option("--alpha", fig_alpha, "restrict fig 3 to one alpha");

    std::string verify_suite;
    std::string verify_report;
    std::uint64_t verify_seed = 42;
    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", verify_suite, "all|bounds|nuisance|oracles")->required();
    verify->add_option("--report", verify_report, "machine-readable JSON report path");
    verify->add_option("--seed", verify_seed, "Monte Carlo seed (default 42)");

    std::string sweep_config;
    std::string sweep_out;
    CLI::App* sweep = app.add_subcommand("sweep", "run a parameter sweep from a config file");
    sweep->add_option("--config", sweep_config, "sweep config path")->required();
    sweep->add_option("--out", sweep_out, "output CSV path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (fig->parsed())
            return cmd_fig(fig_n, fig_out, fig_overrides, fig_alpha, alpha_opt->count() > 0);
        if (verify->parsed()) return cmd_verify(verify_suite, verify_report, verify_seed);
        if (sweep->parsed()) return cmd_sweep(sweep_config, sweep_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
