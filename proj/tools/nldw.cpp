// Batch driver for the nonlocal diffuse-interface ground-state solver:
// energy evaluation, constrained minimization, mass sweeps and the
// inequality-certification suite.

#include "nldw/checkpoint.hpp"
#include "nldw/config.hpp"
#include "nldw/coulomb.hpp"
#include "nldw/energy.hpp"
#include "nldw/fields.hpp"
#include "nldw/minimize.hpp"
#include "nldw/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitBadInput = 2;
constexpr int kExitMassEscape = 3;
constexpr int kExitMaxIters = 4;

int thread_cap() {
    if (const char* env = std::getenv("NLDW_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 1 << 16;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << content;
}

void echo_config(const nldw::RunConfig& cfg, const std::filesystem::path& out) {
    std::filesystem::create_directories(out);
    write_file(out / "config.txt", cfg.to_text());
    write_file(out / "config.json", cfg.to_json() + "\n");
}

std::string status_color(nldw::MinimizeStatus s, bool failed) {
    if (failed) return "#999999";
    switch (s) {
        case nldw::MinimizeStatus::converged: return "#2c7a2c";
        case nldw::MinimizeStatus::mass_escape: return "#c23030";
        case nldw::MinimizeStatus::max_iters: return "#d08a00";
    }
    return "#000000";
}

std::string sweep_svg(const std::vector<nldw::SweepPoint>& pts) {
    const double W = 640, H = 420, ml = 70, mr = 20, mt = 20, mb = 50;
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (const auto& p : pts) {
        if (p.failed) continue;
        const double e = p.M == 0.0 ? 0.0 : p.energy.total;
        x0 = std::min(x0, p.M);
        x1 = std::max(x1, p.M);
        y0 = std::min(y0, e);
        y1 = std::max(y1, e);
    }
    if (x0 > x1) { x0 = 0; x1 = 1; y0 = -1; y1 = 0; }
    if (y1 - y0 < 1e-12) { y0 -= 1; y1 += 1; }
    if (x1 - x0 < 1e-12) { x1 = x0 + 1; }
    const auto X = [&](double m) { return ml + (m - x0) / (x1 - x0) * (W - ml - mr); };
    const auto Y = [&](double e) { return H - mb - (e - y0) / (y1 - y0) * (H - mt - mb); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
       << H - mb << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << (W / 2) << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\" "
       << "font-size=\"13\">M</text>\n";
    os << "<text x=\"14\" y=\"" << (H / 2) << "\" text-anchor=\"middle\" font-size=\"13\" "
       << "transform=\"rotate(-90 14 " << (H / 2) << ")\">energy</text>\n";
    os.precision(6);
    os << "<text x=\"" << ml << "\" y=\"" << H - mb + 16 << "\" font-size=\"11\">" << x0
       << "</text>\n";
    os << "<text x=\"" << W - mr << "\" y=\"" << H - mb + 16
       << "\" text-anchor=\"end\" font-size=\"11\">" << x1 << "</text>\n";
    os << "<text x=\"" << ml - 4 << "\" y=\"" << Y(y0) << "\" text-anchor=\"end\" font-size=\"11\">"
       << y0 << "</text>\n";
    os << "<text x=\"" << ml - 4 << "\" y=\"" << Y(y1) + 10
       << "\" text-anchor=\"end\" font-size=\"11\">" << y1 << "</text>\n";
    os << "<polyline fill=\"none\" stroke=\"#3050c0\" stroke-width=\"1.5\" points=\"";
    for (const auto& p : pts) {
        if (p.failed) continue;
        os << X(p.M) << ',' << Y(p.M == 0.0 ? 0.0 : p.energy.total) << ' ';
    }
    os << "\"/>\n";
    for (const auto& p : pts) {
        if (p.failed) continue;
        os << "<circle cx=\"" << X(p.M) << "\" cy=\"" << Y(p.M == 0.0 ? 0.0 : p.energy.total)
           << "\" r=\"4\" fill=\"" << status_color(p.status, p.failed) << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nonlocal diffuse-interface energy: solver and certification harness"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".", checkpoint_path, field_path;
    int jobs = 1;
    app.add_option("--config", config_path, "run configuration (key=value lines)")->required();
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--jobs", jobs, "sweep parallelism")->check(CLI::PositiveNumber);

    CLI::App* cmd_energy = app.add_subcommand("energy", "evaluate the energy of a field checkpoint");
    cmd_energy->add_option("field", field_path, "field checkpoint")->required();
    CLI::App* cmd_minimize = app.add_subcommand("minimize", "run the projected gradient flow");
    CLI::App* cmd_sweep = app.add_subcommand("sweep", "trace the ground-state curve over m_list");
    CLI::App* cmd_verify = app.add_subcommand("verify", "run the inequality certification suite");
    cmd_verify->add_option("--checkpoint", checkpoint_path, "converged minimizer checkpoint");

    CLI11_PARSE(app, argc, argv);

    nldw::RunConfig cfg;
    try {
        cfg = nldw::RunConfig::load(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    if (!cfg.out_dir.empty() && out_dir == ".") out_dir = cfg.out_dir;
    jobs = std::min(jobs, thread_cap());

    try {
        if (*cmd_energy) {
            nldw::ScalarField3D u;
            try {
                u = nldw::load_checkpoint(field_path);
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                return kExitBadInput;
            }
            const nldw::CoulombSolver solver(u.grid);
            std::cout << nldw::total_energy(u, cfg.Z, solver).to_json() << "\n";
            return 0;
        }

        if (*cmd_minimize) {
            const nldw::ModelParams params = cfg.params();
            const nldw::CoulombSolver solver(params.grid);
            const auto preset = cfg.init == "ball" ? nldw::InitPreset::ball : nldw::InitPreset::gaussian;
            const nldw::MinimizeReport rep = nldw::minimize(params, solver, preset);
            const std::filesystem::path out(out_dir);
            echo_config(cfg, out);
            write_file(out / "report.json", rep.to_json() + "\n");
            nldw::save_checkpoint(rep.final_field, (out / "final.nldw").string());
            std::cout << rep.to_json() << "\n";
            switch (rep.status) {
                case nldw::MinimizeStatus::converged: return 0;
                case nldw::MinimizeStatus::mass_escape: return kExitMassEscape;
                case nldw::MinimizeStatus::max_iters: return kExitMaxIters;
            }
            return 0;
        }

        if (*cmd_sweep) {
            if (cfg.m_list.empty()) {
                std::cerr << "error: sweep requires a nonempty m_list\n";
                return kExitBadInput;
            }
            const nldw::ModelParams params = cfg.params();
            const nldw::CoulombSolver solver(params.grid);
            const auto points = nldw::sweep(params, solver, cfg.m_list, jobs);
            const std::filesystem::path out(out_dir);
            echo_config(cfg, out);
            write_file(out / "sweep.csv", nldw::sweep_csv(points));
            write_file(out / "sweep.svg", sweep_svg(points));
            std::cout << nldw::sweep_csv(points);
            const bool all_failed = std::all_of(points.begin(), points.end(),
                                                [](const auto& p) { return p.failed; });
            return all_failed ? 1 : 0;
        }

        if (*cmd_verify) {
            const nldw::ModelParams params = cfg.params();
            const nldw::CoulombSolver solver(params.grid);
            nldw::ScalarField3D minimizer;
            bool have_min = false;
            if (!checkpoint_path.empty()) {
                try {
                    minimizer = nldw::load_checkpoint(checkpoint_path);
                } catch (const std::exception& e) {
                    std::cerr << "error: " << e.what() << "\n";
                    return kExitBadInput;
                }
                if (!(minimizer.grid == params.grid)) {
                    std::cerr << "error: checkpoint grid does not match config grid\n";
                    return kExitBadInput;
                }
                have_min = true;
            }
            const auto result = nldw::verify_suite(params, solver, have_min ? &minimizer : nullptr);
            const std::filesystem::path out(out_dir);
            echo_config(cfg, out);
            write_file(out / "verify.json", nldw::reports_to_json(result.reports) + "\n");
            std::cout << nldw::reports_to_table(result.reports);
            return result.any_hard_failure ? 1 : 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return 0;
}
