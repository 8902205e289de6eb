#pragma once

#include "nldw/coulomb.hpp"
#include "nldw/grid.hpp"
#include "nldw/minimize.hpp"
#include "nldw/partition.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nldw {

// One certified inequality: passed iff margin >= -1e-8 (1 + |rhs|).
// `hard` marks checks whose constants are fully pinned down (pass/fail);
// the rest follow the C*-cap regression discipline.
struct InequalityReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    bool passed = false;
    bool hard = false;
    bool skipped = false;
    std::string digest;  // FNV-1a hash of the inputs

    std::string to_json() const;
};

InequalityReport make_report(std::string name, double lhs, double rhs, bool hard,
                             std::string digest);

std::string field_digest(const ScalarField3D& u, double Z);

// E_Z(|u|) <= E_Z(u) whenever the L1 norm of u is at most Z.
InequalityReport check_abs_comparison(const ScalarField3D& u, double Z,
                                      const CoulombSolver& solver);

// Coercivity estimates; the unspecified universal constant is handled by the
// C* discipline: C*(u) = (coercive side - E_Z(u)) / denominator <= cap.
// With a vanishing denominator the raw inequality is reported instead.
std::vector<InequalityReport> check_coercivity(const ScalarField3D& u, double Z, double cap1,
                                               double cap2, const CoulombSolver& solver);

// int u_+^3 <= (1/4) int u^2 + C (int |grad u|^2)^3 + (1/4) int u^4.
InequalityReport check_l3_interpolation(const ScalarField3D& u, double cap);

// Explicit-constant bounds for minimizers with nonpositive energy:
//   ||u||_L2^2 <= 2(Z+2) M + 8 pi Z^2,   D(u) <= 2(Z+1) M + 8 pi Z^2.
std::vector<InequalityReport> check_mass_bounds(const ScalarField3D& u_min, double Z, double M,
                                                const CoulombSolver& solver);

// Z-only bounds (free constant): ||u||_L2^2 <= C (Z^2 + Z^6), D(u) <= C Z^2.
std::vector<InequalityReport> check_improved_mass_bounds(const ScalarField3D& u_min, double Z,
                                                         double cap_l2, double cap_D,
                                                         const CoulombSolver& solver);

// Localization estimate for the two-piece partition:
//   sum_i E_Z(f_i^2 u) - E_Z(u) <= [sum_i D(f_i^2 u) - D(u)]
//     + [sum_i ||grad f_i||_inf^2] int_A u^2 + min{4 int_A u^2, 8 int_A u}.
InequalityReport check_ims_split(const ScalarField3D& u, double Z, const PartitionSpec& spec,
                                 const CoulombSolver& solver);

struct Eq22Detail {
    double chi_lr_mass = 0.0;       // int chi^+_{(1+lambda)r} u
    double repulsion_outer = 0.0;   // D(chi^+_{(1+lambda)r} u)
    double chi_r_l2sq = 0.0;        // int chi^+_r u^2
    double chi_r_mass = 0.0;        // int chi^+_r u
    double sup_phi = 0.0;           // sup_{|z| >= r} |z| Phi_r(z) (incl. radial tail)
    double constant = 0.0;          // C from the constructed partition
};

// Screened-splitting certificate; for a true minimizer the inequality must
// hold, so a violation is flagged as a nonexistence signature.
InequalityReport eq22_certificate(const ScalarField3D& u, double Z, const PartitionSpec& spec,
                                  const CoulombSolver& solver, Eq22Detail* detail = nullptr);

struct ThresholdResult {
    double M2 = 0.0;        // smallest scanned M with (1/8) M^2 > min_s RHS(M, s)
    double s_opt = 0.0;     // optimizing s at M2
    double C_partition = 0.0;
};

// Mass threshold above which the localization argument certifies
// nonexistence for the instantiated constants (lambda = 1/2, optimized s).
ThresholdResult nonexistence_threshold(double Z, double C_partition);

// RHS of the threshold inequality at given (Z, M, s), lambda = 1/2.
double threshold_rhs(double Z, double C_partition, double M, double s);

// Multiplier-shifted Euler-Lagrange condition on a computed minimizer; when
// the raw (unshifted) inequality holds with a nonnegative multiplier, the
// contrapositive mass conclusion M >= Z is asserted as a second report.
std::vector<InequalityReport> check_el_inequality(const ScalarField3D& u_min, double Z,
                                                  const CoulombSolver& solver,
                                                  const ModelParams& params);

// Ground-state-curve properties: nonincreasing within 1e-3, negative for
// M > 0, bounded below by -cap1 Z^2.
std::vector<InequalityReport> check_I_curve(const std::vector<SweepPoint>& curve, double Z,
                                            double cap1);

// Deterministic nonnegative trial fields used by the cap oracle and the
// regression suite.
std::vector<ScalarField3D> builtin_trial_family(const Grid3D& g);

// Signed fixtures for the |u| comparison (L1 norm <= Z for the given Z).
std::vector<ScalarField3D> signed_trial_family(const Grid3D& g, double Z);

struct VerifySuiteResult {
    std::vector<InequalityReport> reports;
    bool any_hard_failure = false;
};

// The full certification battery on the built-in families plus, when given,
// a computed minimizer (checkpoint field assumed converged with mass M).
VerifySuiteResult verify_suite(const ModelParams& params, const CoulombSolver& solver,
                               const ScalarField3D* minimizer);

std::string reports_to_json(const std::vector<InequalityReport>& reports);
std::string reports_to_table(const std::vector<InequalityReport>& reports);

}  // namespace nldw
