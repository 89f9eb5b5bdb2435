#pragma once

#include <iostream>
#include <string>

#include "gwkit/gw_io.hpp"

namespace gwkit {

/// One batch run: ingest, model, write. Exactly one of {bw, search} drives
/// each subcommand: `bw` searches, `gwss` needs an explicit bandwidth, `gwr`
/// accepts either.
struct RunConfig {
    std::string subcommand;  // bw | gwr | gwss
    std::string data_path;
    std::string format = "csv";
    std::string x_col = "X";
    std::string y_col = "Y";
    std::string formula;
    std::string variable;  // gwss only
    std::string kernel = "bisquare";
    bool adaptive = false;
    bool fixed = false;
    double bw = 0.0;
    bool has_bw = false;
    std::string search;  // linear | golden | ""
    std::string range;   // "lo:hi"
    std::string criterion = "aic";
    std::string stats = "mean,std,skew,median";
    std::string out_path;
    double golden_tol = 0.0;  // 0 = derived from the range
    std::size_t threads = 1;
};

/// Executes the run, printing a short report to `out` and writing any output
/// files atomically. Throws gw_error subclasses on failure; returns 0 on
/// success.
int run(const RunConfig& config, std::ostream& out = std::cout);

}  // namespace gwkit
