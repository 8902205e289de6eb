#include "nldw/minimize.hpp"

#include "nldw/fields.hpp"
#include "nldw/summation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace nldw {

namespace {

constexpr int kEscapeWindow = 50;      // sustained iterations above the escape fraction
constexpr double kEscapeFraction = 0.5;

void fill_diagnostics(FlowState& st, const ModelParams& params) {
    const double floor = params.u_floor();
    const auto& u = st.u.values;
    const auto& g = st.grad.values;
    double wsum = 0.0, wg = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] > floor) {
            wsum += u[i];
            wg += u[i] * g[i];
        }
    st.mu_hat = wsum > 0.0 ? wg / wsum : 0.0;
    double dev = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] > floor) {
            const double d = g[i] - st.mu_hat;
            dev += u[i] * d * d;
        }
    st.kkt_residual = wsum > 0.0 ? std::sqrt(dev / wsum) : 0.0;
    st.outer_fraction = outer_mass_fraction(
        st.u, params.escape_radius_fraction * 0.5 * params.grid.extent());
}

void check_finite(const EnergyBreakdown& e) {
    if (!std::isfinite(e.total)) {
        std::ostringstream os;
        os << "minimize: non-finite energy (gradient=" << e.gradient
           << " double_well=" << e.double_well << " attraction=" << e.attraction
           << " coulomb=" << e.coulomb << ")";
        throw std::runtime_error(os.str());
    }
}

}  // namespace

FlowState make_flow_state(const ScalarField3D& init, const ModelParams& params,
                          const CoulombSolver& solver) {
    params.validate();
    if (!(init.grid == params.grid)) throw std::invalid_argument("make_flow_state: grid mismatch");
    FlowState st;
    st.u = project_mass_nonneg(init, params.M, params.tol_mass);
    const ScalarField3D phi = solver.potential(st.u);
    st.energy = total_energy_with_potential(st.u, params.Z, solver, phi);
    st.grad = first_variation_with_potential(st.u, params.Z, solver, phi);
    st.iter = 0;
    st.tau = params.tau0;
    check_finite(st.energy);
    fill_diagnostics(st, params);
    return st;
}

StepOutcome step(const FlowState& state, const ModelParams& params, const CoulombSolver& solver) {
    const double tau_min = 1e-10 * params.tau0;
    double tau = state.tau;
    ScalarField3D trial(state.u.grid);
    while (tau >= tau_min) {
        for (std::size_t i = 0; i < trial.size(); ++i)
            trial.values[i] = state.u.values[i] - tau * state.grad.values[i];
        ScalarField3D next = project_mass_nonneg(trial, params.M, params.tol_mass);
        const ScalarField3D phi = solver.potential(next);
        const EnergyBreakdown e = total_energy_with_potential(next, params.Z, solver, phi);
        check_finite(e);
        // equal energy is accepted only at an exact fixed point of the
        // projected step; lateral moves keep backtracking
        const bool accepted =
            e.total < state.energy.total ||
            (e.total == state.energy.total && next.values == state.u.values);
        if (accepted) {
            FlowState out;
            out.u = std::move(next);
            out.energy = e;
            out.grad = first_variation_with_potential(out.u, params.Z, solver, phi);
            out.iter = state.iter + 1;
            out.tau = tau;
            fill_diagnostics(out, params);
            return {std::move(out), false};
        }
        tau *= 0.5;
    }
    return {state, true};
}

std::string to_string(MinimizeStatus s) {
    switch (s) {
        case MinimizeStatus::converged: return "converged";
        case MinimizeStatus::mass_escape: return "mass_escape";
        case MinimizeStatus::max_iters: return "max_iters";
    }
    return "unknown";
}

std::string MinimizeReport::to_json() const {
    std::ostringstream os;
    os.precision(17);
    os << "{\"status\":\"" << to_string(status) << "\",\"energy\":" << energy.to_json()
       << ",\"kkt_residual\":" << kkt_residual << ",\"mu_hat\":" << mu_hat
       << ",\"outer_fraction\":" << outer_fraction << ",\"iters\":" << iters
       << ",\"energy_history\":[";
    for (std::size_t i = 0; i < energy_history.size(); ++i)
        os << (i ? "," : "") << energy_history[i];
    os << "],\"outer_history\":[";
    for (std::size_t i = 0; i < outer_history.size(); ++i)
        os << (i ? "," : "") << outer_history[i];
    os << "]";
    if (!note.empty()) os << ",\"note\":\"" << note << "\"";
    os << "}";
    return os.str();
}

ScalarField3D make_init(InitPreset preset, const ModelParams& params) {
    const Grid3D& g = params.grid;
    if (preset == InitPreset::gaussian) {
        ScalarField3D u = gaussian_field(g, 1.0);
        const double m = mass(u);
        for (double& v : u.values) v *= params.M / m;
        return u;
    }
    // uniform-ish ball at density 0.8, radius set by the mass
    const double R = std::cbrt(params.M / (0.8 * 4.0 / 3.0 * std::numbers::pi));
    ScalarField3D u = smooth_ball_field(g, std::max(R, 3.0 * g.h), 0.8, 2.0 * g.h);
    const double m = mass(u);
    for (double& v : u.values) v *= params.M / m;
    return u;
}

MinimizeReport minimize(const ModelParams& params, const CoulombSolver& solver,
                        const ScalarField3D& init) {
    FlowState st = make_flow_state(init, params, solver);

    MinimizeReport rep;
    rep.energy_history.push_back(st.energy.total);
    rep.outer_history.push_back(st.outer_fraction);

    std::vector<double> u_prev, g_prev;
    int escape_run = st.outer_fraction > kEscapeFraction ? 1 : 0;
    MinimizeStatus status = MinimizeStatus::max_iters;

    while (true) {
        if (st.kkt_residual <= params.tol_grad && st.outer_fraction <= kEscapeFraction) {
            status = MinimizeStatus::converged;
            break;
        }
        if (escape_run >= kEscapeWindow) {
            status = MinimizeStatus::mass_escape;
            break;
        }
        if (st.iter >= params.max_iters) {
            status = MinimizeStatus::max_iters;
            break;
        }

        // Barzilai-Borwein proposal from the previous accepted pair
        if (!u_prev.empty()) {
            double ss = 0.0, sy = 0.0;
            for (std::size_t i = 0; i < u_prev.size(); ++i) {
                const double s = st.u.values[i] - u_prev[i];
                const double y = st.grad.values[i] - g_prev[i];
                ss += s * s;
                sy += s * y;
            }
            if (sy > 0.0)
                st.tau = std::clamp(ss / sy, 1e-6, 50.0);
            else
                st.tau = std::min(st.tau * 2.0, 50.0);
        }
        u_prev = st.u.values;
        g_prev = st.grad.values;

        StepOutcome out = step(st, params, solver);
        const bool stationary = out.stagnated || out.state.u.values == st.u.values;
        if (stationary) {
            // nothing can change from here: a boundary-bound stationary state
            // sustains the escape window trivially
            if (st.outer_fraction > kEscapeFraction) {
                status = MinimizeStatus::mass_escape;
                rep.note = "stationary boundary-bound state";
            } else {
                status = MinimizeStatus::max_iters;
                rep.note = out.stagnated ? "line search stagnated"
                                         : "stationary to working precision";
            }
            if (!out.stagnated) st = std::move(out.state);
            break;
        }
        st = std::move(out.state);
        rep.energy_history.push_back(st.energy.total);
        rep.outer_history.push_back(st.outer_fraction);
        escape_run = st.outer_fraction > kEscapeFraction ? escape_run + 1 : 0;
    }

    rep.final_field = st.u;
    rep.energy = st.energy;
    rep.status = status;
    rep.kkt_residual = st.kkt_residual;
    rep.mu_hat = st.mu_hat;
    rep.outer_fraction = st.outer_fraction;
    rep.iters = st.iter;
    return rep;
}

MinimizeReport minimize(const ModelParams& params, const CoulombSolver& solver, InitPreset preset) {
    return minimize(params, solver, make_init(preset, params));
}

namespace {

struct PointRun {
    SweepPoint summary;
    ScalarField3D field;  // final field, empty on failure
};

PointRun run_point(const ModelParams& base, const CoulombSolver& solver, double M,
                   const ScalarField3D* init, InitPreset preset) {
    PointRun run;
    run.summary.M = M;
    try {
        ModelParams p = base;
        p.M = M;
        MinimizeReport rep = init ? minimize(p, solver, *init) : minimize(p, solver, preset);
        run.summary.energy = rep.energy;
        run.summary.status = rep.status;
        run.summary.iters = rep.iters;
        run.summary.outer_fraction = rep.outer_fraction;
        run.field = std::move(rep.final_field);
    } catch (const std::exception& e) {
        run.summary.failed = true;
        run.summary.error = e.what();
    }
    return run;
}

void take_better(PointRun& best, PointRun&& candidate) {
    if (candidate.summary.failed) return;
    if (best.summary.failed || candidate.summary.energy.total < best.summary.energy.total)
        best = std::move(candidate);
}

}  // namespace

std::vector<SweepPoint> sweep(const ModelParams& params, const CoulombSolver& solver,
                              std::span<const double> M_list, int jobs) {
    for (std::size_t i = 0; i + 1 < M_list.size(); ++i)
        if (!(M_list[i] < M_list[i + 1]))
            throw std::invalid_argument("sweep: M list must be increasing");
    for (double M : M_list)
        if (M < 0.0) throw std::invalid_argument("sweep: masses must be >= 0");

    const std::size_t npts = M_list.size();
    // phase 1: gaussian + ball starts, independent across masses
    std::vector<PointRun> phase1(npts);
    {
        std::vector<std::size_t> tasks;
        for (std::size_t i = 0; i < npts; ++i)
            if (M_list[i] > 0.0) tasks.push_back(i);
        const int nworkers = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
        std::atomic<std::size_t> cursor{0};
        auto worker = [&]() {
            while (true) {
                const std::size_t t = cursor.fetch_add(1);
                if (t >= tasks.size()) break;
                const std::size_t i = tasks[t];
                phase1[i] = run_point(params, solver, M_list[i], nullptr, InitPreset::gaussian);
                take_better(phase1[i], run_point(params, solver, M_list[i], nullptr, InitPreset::ball));
            }
        };
        if (nworkers <= 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (int w = 0; w < nworkers; ++w) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }
    }

    // phase 2: sequential warm starts from the previous mass's best field
    std::vector<SweepPoint> out(npts);
    ScalarField3D warm_field;  // empty until the first successful point
    for (std::size_t i = 0; i < npts; ++i) {
        if (M_list[i] == 0.0) {
            out[i].M = 0.0;  // I_Z(0) = 0 by definition, no solve
            out[i].status = MinimizeStatus::converged;
            continue;
        }
        PointRun best = std::move(phase1[i]);
        if (!warm_field.values.empty())
            take_better(best, run_point(params, solver, M_list[i], &warm_field, InitPreset::gaussian));
        out[i] = best.summary;
        if (!best.summary.failed) warm_field = std::move(best.field);
    }
    return out;
}

std::string sweep_csv(const std::vector<SweepPoint>& points) {
    std::ostringstream os;
    os.precision(12);
    os << "M,energy,gradient,double_well,attraction,coulomb,status,iters,outer_fraction\n";
    for (const auto& pt : points) {
        if (pt.failed) {
            os << pt.M << ",,,,,,failed," << 0 << ",\n";
            continue;
        }
        os << pt.M << ',' << pt.energy.total << ',' << pt.energy.gradient << ','
           << pt.energy.double_well << ',' << pt.energy.attraction << ',' << pt.energy.coulomb
           << ',' << to_string(pt.status) << ',' << pt.iters << ',' << pt.outer_fraction << '\n';
    }
    return os.str();
}

SubadditivityReport subadditivity_check(const ModelParams& params, const CoulombSolver& solver,
                                        double m, double m_prime) {
    if (!(m_prime > 0.0) || !(m_prime <= m))
        throw std::invalid_argument("subadditivity_check: need 0 < m' <= m");
    const Grid3D& g = params.grid;

    const auto best_of_two = [&](double M) {
        ModelParams p = params;
        p.M = M;
        MinimizeReport a = minimize(p, solver, InitPreset::gaussian);
        MinimizeReport b = minimize(p, solver, InitPreset::ball);
        return a.energy.total <= b.energy.total ? a : b;
    };

    SubadditivityReport rep;
    const MinimizeReport full = best_of_two(m);
    rep.best_energy = full.energy.total;
    const MinimizeReport part = best_of_two(m_prime);

    ScalarField3D far_bump(g);
    double d = 0.0;
    if (m - m_prime > 0.0) {
        const double L = g.extent();
        d = g.h * std::floor(0.35 * L / g.h);  // lattice-aligned offset
        far_bump = gaussian_field(g, 4.0, {d, 0.0, 0.0});
        const double mb = mass(far_bump);
        for (double& v : far_bump.values) v *= (m - m_prime) / mb;
    }
    TwoClusterResult cluster = two_cluster(part.final_field, far_bump, {0.0, 0.0, 0.0});
    if (!cluster.within_tol)
        throw std::invalid_argument("subadditivity_check: box too small for separation");

    rep.trial_energy = total_energy(cluster.field, params.Z, solver).total;
    rep.margin = rep.trial_energy - rep.best_energy;
    rep.cross_term = 2.0 * solver.repulsion(part.final_field, far_bump);
    rep.cross_monopole = d > 0.0 ? m_prime * (m - m_prime) / d : 0.0;
    rep.passed = rep.margin >= -1e-8 * (1.0 + std::abs(rep.trial_energy));
    return rep;
}

}  // namespace nldw
