#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ahosm/adaptive.hpp"
#include "ahosm/chain.hpp"
#include "ahosm/simulate.hpp"

namespace ahosm {

/// h_m = min(0, min_{x >= 0} (gamma_m g(x) - 1) x), grid-minimized then refined
/// by bisection on the numerical derivative. Returns -infinity (sentinel) when
/// the product is unbounded below (bounded g with gamma_m sup g < 1). With
/// x_max = 0 the search interval is derived from the gain family; an explicit
/// x_max that cannot contain the minimum throws ConfigError.
double compute_h_m(double gamma_m, const GainSpec& g, double x_max = 0.0, int grid = 10000);

/// Phi_bar = (phi_bar - h_m) / (k gamma_m). Rejects the -infinity sentinel.
double compute_phi_bar_cap(double k, double gamma_m, double phi_bar, double h_m);

struct V1BarResult {
    double v1_bar;        // epsilon (1 - 1/Phi_bar)
    double limsup_bound;  // max(0, v1_bar)
};
V1BarResult compute_v1_bar(double epsilon, double phi_bar_cap);

/// Homogeneity degree m of V1, measured as log(V1(d_lambda z)/V1(z))/log(lambda)
/// at reference points; throws AnalysisError if the measurements disagree.
double measure_v1_degree(const ChainConfig& chain);

/// n states with V1(z) = level to 1e-9 relative, built by projecting random
/// directions along the dilation. Deterministic given (n, seed).
std::vector<StateVector> sample_level_set(double level, const ChainConfig& chain, int n,
                                          std::uint64_t seed);

/// Sampling maximum of |u0| over {V1 = xi} (a lower-bound estimate; by
/// homogeneity the sublevel-set max is attained on the boundary).
double compute_u0_levelset_max(double xi, const ChainConfig& chain, int n, std::uint64_t seed);

/// Asymptotic control bound: 1 when phi_bar_cap <= 1, else
/// U0 g(U0) + k phi_bar_cap with U0 the sampled max at level v1_bar.
double compute_u_asymptotic_bound(double u0_at_v1_bar, const GainSpec& g, double k,
                                  double phi_bar_cap);

/// Sampled decrease certificate for the nominal closed loop z' = J_r z + u0 e_r:
/// min over {V1 = 1} of -<grad V1, f>. The certificate holds when no sampled
/// directional derivative is nonnegative.
struct DecreaseCertificate {
    double min_neg_vdot = 0.0;
    StateVector worst_state;
    int nonneg_count = 0;
    int sample_count = 0;
    bool ok() const { return nonneg_count == 0 && min_neg_vdot > 0.0; }
};
DecreaseCertificate decrease_certificate(const ChainConfig& chain, int n, std::uint64_t seed);

struct CAlphaEstimate {
    double c;      // sampled min of -V1dot on {V1 = 1}
    double alpha;  // (m + kappa)/m, exact degree arithmetic
    double m;      // measured V1 degree
};
/// Throws AnalysisError when any sampled directional derivative is >= 0
/// (the decrease certificate fails at these gains).
CAlphaEstimate estimate_c_alpha(const ChainConfig& chain, int n, std::uint64_t seed);

struct C1Estimate {
    double c1;  // sampled max of k gamma_m |dV1/dz_r| Phi_bar / V1^q on {V1 = 1}
    double q;   // (m - p_r)/m
};
/// Throws AnalysisError when q falls outside [0, 1).
C1Estimate estimate_c1(const ChainConfig& chain, double k, double gamma_m,
                       double phi_bar_cap, int n, std::uint64_t seed);

/// Everything the containment and convergence-time statements need. Optional
/// fields are absent when the decrease certificate fails (no valid c exists).
struct BoundsReport {
    std::string stabilizer;  // "hong" | "first_order_sign"
    int order = 0;
    double epsilon = 0.0;
    double k = 0.0;
    double phi_bar = 0.0;
    double gamma_min = 0.0;
    double gamma_max = 0.0;
    double h_m = 0.0;
    double phi_bar_cap = 0.0;
    double v1_bar = 0.0;
    double limsup_v1 = 0.0;
    double v1_degree = 0.0;
    std::optional<double> p_r_plus_2;  // absent for the first-order sign controller
    double u0_level_max = 0.0;         // U0 at level v1_bar (0 when v1_bar <= 0)
    double u_bound = 0.0;
    bool certificate_ok = false;
    double certificate_min = 0.0;  // sampled min of -V1dot on {V1 = 1}
    std::optional<double> c_est, alpha_val, C1_est, q_exponent;
    double v1_z0 = 0.0;
    std::optional<double> T_bound;  // convergence-time bound for v1_z0
    int sample_count = 0;
    std::uint64_t seed = 0;
};

/// Right side of the convergence-time bound:
/// Phi_bar + (v1_z0^{1-q} + (1-q) C1 Phi_bar)^{(1-alpha)/(1-q)} / (c (1-alpha)).
/// Throws AnalysisError when the report lacks certified constants.
double bound_T_z0(double v1_z0, const BoundsReport& report);
double bound_T_z0(const StateVector& z0, const BoundsReport& report, const ChainConfig& chain);

/// Along recorded samples with t > t_min and V1 >= level, the finite-difference
/// slope of V1 must be negative; counts violations.
struct SlopeMonitor {
    long checked = 0;
    long violations = 0;
    double worst_slope = 0.0;
};
SlopeMonitor monitor_decrease_above(const Trajectory& traj, double level, double t_min);

/// Discretization band estimate: 10 dt max recorded |dV1/dt|.
double discretization_band(const Trajectory& traj);

/// Result of one verification property.
struct PropertyResult {
    std::string name;
    bool pass = false;
    double worst = 0.0;      // worst residual observed
    double tolerance = 0.0;  // acceptance tolerance applied
    std::string detail;
};
struct VerificationReport {
    std::vector<PropertyResult> properties;
    bool all_pass() const;
};

/// Full property battery for a Hong chain: dilation group law, u0/V1
/// homogeneity, positive definiteness, the sign condition, closed-form vs
/// quadrature V1, analytic vs finite-difference dV1/dz_r, and nominal
/// finite-time decrease. Failures are report entries, not exceptions.
VerificationReport verify_chain(const ChainConfig& chain, int n, std::uint64_t seed);

/// Analytic first-order battery (u0 = -sgn(z1), V1 = |z1|).
VerificationReport verify_first_order(int n, std::uint64_t seed);

}  // namespace ahosm
