#pragma once

#include <vector>

namespace ahosm {

/// State of an order-r integrator chain, z = (z_1, ..., z_r).
using StateVector = std::vector<double>;

/// Homogeneity data and gains for Hong's stabilizer on an order-r chain.
///
/// weights[i-1] = p_i = p + (i-1)*kappa for i = 1..r+2 (strictly decreasing,
/// with p_{r+2} in [0,1)); alphas[i-1] = p_{i+1}/p_i; betas follow the
/// convention beta_0 = p_2/p_1, (beta_i + 1) p_{i+1} = (beta_0 + 1) p_1,
/// which makes every term of the Lyapunov function homogeneous of degree
/// 2p + kappa.
struct ChainConfig {
    int r = 0;
    double p = 0.0;
    double kappa = 0.0;
    std::vector<double> weights;  // p_1 .. p_{r+2}
    std::vector<double> gains;    // l_1 .. l_r
    std::vector<double> betas;    // beta_0 .. beta_{r-1}
    std::vector<double> alphas;   // alpha_1 .. alpha_r
};

/// Builds and validates a ChainConfig. Throws ConfigError naming the violated
/// inequality. betas_override replaces the derived beta convention (must be
/// positive; used for diagnostics and mutation testing).
ChainConfig make_chain_config(int r, double p, double kappa, std::vector<double> gains,
                              std::vector<double> betas_override = {});

/// |x|^a * sgn(x); 0 at x = 0 for a > 0, the sgn(0) = 0 selection for a = 0.
double signed_power(double x, double a);

/// Componentwise dilation: z_i -> lambda^{p_i} z_i.
StateVector apply_dilation(const StateVector& z, double lambda, const ChainConfig& cfg);

/// The stabilizer recursion v_0 = 0,
/// v_{i+1} = -l_{i+1} * spow(spow(z_{i+1}, beta_i) - spow(v_i, beta_i), alpha_{i+1}/beta_i).
/// Returns (v_0, ..., v_r).
std::vector<double> hong_v_sequence(const StateVector& z, const ChainConfig& cfg);

/// The homogeneous stabilizer u_0(z) = v_r; degree p + r*kappa under the dilation.
double hong_u0(const StateVector& z, const ChainConfig& cfg);

/// One Lyapunov term: integral of (spow(s,beta) - spow(v,beta)) ds from v to z,
/// in closed form. Nonnegative for every (z, v).
double lyapunov_term(double z, double v, double beta);

/// V_1(z): sum of lyapunov_term(z_j, v_{j-1}, beta_{j-1}); positive definite.
double lyapunov_v1(const StateVector& z, const ChainConfig& cfg);

/// Analytic partial dV_1/dz_r = spow(z_r, beta_{r-1}) - spow(v_{r-1}, beta_{r-1}).
double lyapunov_v1_partial_r(const StateVector& z, const ChainConfig& cfg);

/// Central-difference gradient of V_1 with step h.
std::vector<double> lyapunov_v1_gradient_fd(const StateVector& z, const ChainConfig& cfg,
                                            double h);

}  // namespace ahosm
