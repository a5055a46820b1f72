#pragma once

#include <stdexcept>
#include <string>

namespace clusterprep {

// text could not be parsed; line is 1-based
struct parse_error : std::runtime_error {
    int line;
    parse_error(const std::string& what, int line_no)
        : std::runtime_error(what + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
};

// subspace reduction failed (e.g. target not contained); carries the residual norm
struct reduction_error : std::runtime_error {
    double residual;
    reduction_error(const std::string& what, double res)
        : std::runtime_error(what + " (residual " + std::to_string(res) + ")"), residual(res) {}
};

// an optimization did not reach its goal; carries the best fidelity achieved
struct optimization_failure : std::runtime_error {
    double achieved;
    optimization_failure(const std::string& what, double fid)
        : std::runtime_error(what + " (achieved fidelity " + std::to_string(fid) + ")"), achieved(fid) {}
};

} // namespace clusterprep
