#pragma once

#include "nldw/grid.hpp"

#include <string>
#include <vector>

namespace nldw {

// Flat key=value run configuration. Parsing is typed, unknown or duplicate
// keys are rejected, and to_text() round-trips losslessly.
struct RunConfig {
    double Z = 1.0;
    double M = 0.5;
    int n = 32;
    double h = 0.375;
    double tol_grad = 1e-5;
    double tol_mass = 1e-8;
    int max_iters = 5000;
    double tau0 = 0.1;
    double escape_radius_fraction = 0.8;
    std::string init = "gaussian";  // gaussian | ball
    std::vector<double> m_list;     // sweep masses, increasing
    unsigned seed = 0;              // fixture generation seed
    std::string out_dir;

    static RunConfig parse(const std::string& text);
    static RunConfig load(const std::string& path);
    std::string to_text() const;
    std::string to_json() const;

    ModelParams params() const;
    void validate() const;
};

}  // namespace nldw
