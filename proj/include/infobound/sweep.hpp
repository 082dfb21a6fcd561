#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "infobound/core.hpp"

namespace infobound {

/// Numeric CSV payload: '#'-prefixed metadata comments, a mandatory header
/// row, and rows of doubles written with 17 significant digits, '.' decimal
/// separator and LF line endings.
struct CsvTable {
    std::vector<std::string> comments;
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

void write_csv(const CsvTable& t, std::ostream& os);

/// Writes to path; returns 0 on success, 1 on I/O failure.
int write_csv_file(const CsvTable& t, const std::string& path);

struct FigureResult {
    CsvTable table;
    int exit_code = 0;   // 0 ok; 1 usage error; 2 row self-validation failure
    std::string error;
};

/// Builds the figure-n table. Override keys (all numeric): points, lo, hi;
/// fig 1/2: xbar, b (fig 1) or a_xbar (fig 2) to restrict to one series;
/// fig 3: alpha, s_u, s_xu_fixed, b_over_a_fixed; fig 4: eta, snr_u.
/// Every row re-validates its inequality flags before being admitted.
FigureResult make_figure(int fig, const std::map<std::string, double>& overrides);

struct VerifyCheck {
    std::string name;
    double lhs;
    double rhs;
    double tolerance;
    bool pass;
};

/// suite: all | bounds | nuisance | oracles. Throws std::invalid_argument for
/// an unknown suite name.
std::vector<VerifyCheck> run_verify_suite(const std::string& suite, std::uint64_t seed);

std::string verify_report_json(const std::vector<VerifyCheck>& checks);

/// Thrown by the sweep-config parser; the message names the offending key.
class SweepConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SweepConfig {
    std::string model;      // gaussian | poisson | nuisance_gaussian
    std::string sweep_key;  // parameter being swept
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
    std::string scale = "linear";  // linear | log
    std::map<std::string, double> fixed;
    std::vector<std::string> quantities;
};

SweepConfig parse_sweep_config(std::istream& in);
SweepConfig parse_sweep_config_file(const std::string& path);

CsvTable run_sweep(const SweepConfig& cfg);

}  // namespace infobound
