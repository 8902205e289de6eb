#pragma once

#include "nldw/energy.hpp"
#include "nldw/grid.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nldw {

// One accepted iterate of the projected gradient flow.
struct FlowState {
    ScalarField3D u;      // nonneg, mass M
    ScalarField3D grad;   // first_variation at u
    int iter = 0;
    double tau = 0.1;     // accepted step (incoming value is the proposal)
    EnergyBreakdown energy;
    double kkt_residual = 0.0;  // mass-weighted RMS of (grad - mu_hat) on the support
    double mu_hat = 0.0;        // mass-weighted mean of grad on {u > u_floor}
    double outer_fraction = 0.0;
};

FlowState make_flow_state(const ScalarField3D& init, const ModelParams& params,
                          const CoulombSolver& solver);

struct StepOutcome {
    FlowState state;
    bool stagnated = false;  // backtracking hit tau_min without an energy decrease
};

// u+ = project_mass_nonneg(u - tau * grad, M), tau halved until the energy is
// nonincreasing. The accepted state carries recomputed diagnostics.
StepOutcome step(const FlowState& state, const ModelParams& params, const CoulombSolver& solver);

enum class MinimizeStatus { converged, mass_escape, max_iters };
std::string to_string(MinimizeStatus s);

struct MinimizeReport {
    ScalarField3D final_field;
    EnergyBreakdown energy;
    std::vector<double> energy_history;   // accepted-step totals
    std::vector<double> outer_history;
    MinimizeStatus status = MinimizeStatus::max_iters;
    double kkt_residual = 0.0;
    double mu_hat = 0.0;
    double outer_fraction = 0.0;
    int iters = 0;
    std::string note;

    std::string to_json() const;
};

enum class InitPreset { gaussian, ball };

ScalarField3D make_init(InitPreset preset, const ModelParams& params);

// Projected gradient descent with Barzilai-Borwein step proposals and a
// monotone backtracking line search. Terminates on the KKT tolerance, on a
// sustained boundary mass fraction (the nonexistence signature), or on the
// iteration cap.
MinimizeReport minimize(const ModelParams& params, const CoulombSolver& solver,
                        const ScalarField3D& init);
MinimizeReport minimize(const ModelParams& params, const CoulombSolver& solver,
                        InitPreset preset = InitPreset::gaussian);

struct SweepPoint {
    double M = 0.0;
    EnergyBreakdown energy;
    MinimizeStatus status = MinimizeStatus::converged;
    int iters = 0;
    double outer_fraction = 0.0;
    bool failed = false;
    std::string error;
};

// Ground-state curve estimates over an increasing mass list. Each point takes
// the best energy over the fixed multi-start set {matched Gaussian, uniform
// ball, previous-M warm start}. M = 0 entries are exactly zero by definition.
// Gaussian/ball starts may run concurrently (jobs > 1); the warm-start pass is
// sequential in M, so results do not depend on the job count.
std::vector<SweepPoint> sweep(const ModelParams& params, const CoulombSolver& solver,
                              std::span<const double> M_list, int jobs = 1);

std::string sweep_csv(const std::vector<SweepPoint>& points);

struct SubadditivityReport {
    double best_energy = 0.0;       // I_Z(m) estimate
    double trial_energy = 0.0;      // E_Z(u1 + far bump of mass m - m')
    double margin = 0.0;            // trial - best  (>= 0 expected)
    double cross_term = 0.0;        // 2 D(u1, u2)
    double cross_monopole = 0.0;    // m' (m - m') / d
    bool passed = false;
};

// Checks I_Z(m) <= E_Z(u1) + E_{Z=0}(u2) + far-field correction with u1 a
// computed minimizer of mass m' and u2 a far bump of mass m - m'.
SubadditivityReport subadditivity_check(const ModelParams& params, const CoulombSolver& solver,
                                        double m, double m_prime);

}  // namespace nldw
