#include "ahosm/chain.hpp"

#include <cmath>
#include <sstream>

#include "ahosm/errors.hpp"

namespace ahosm {

ChainConfig make_chain_config(int r, double p, double kappa, std::vector<double> gains,
                              std::vector<double> betas_override) {
    std::ostringstream err;
    if (r < 1) {
        err << "chain order r = " << r << " violates r >= 1";
        throw ConfigError(err.str());
    }
    if (!(p > 0.0)) {
        err << "base weight p = " << p << " violates p > 0";
        throw ConfigError(err.str());
    }
    if (!(kappa < 0.0)) {
        err << "homogeneity degree kappa = " << kappa << " violates kappa < 0";
        throw ConfigError(err.str());
    }
    const double tail = p + (r + 1) * kappa;  // p_{r+2}
    if (!(tail >= 0.0 && tail < 1.0)) {
        err << "p + (r+1)*kappa = " << tail << " violates p + (r+1)*kappa in [0,1)";
        throw ConfigError(err.str());
    }
    if (static_cast<int>(gains.size()) != r) {
        err << "expected " << r << " gains, got " << gains.size();
        throw ConfigError(err.str());
    }
    for (int i = 0; i < r; ++i) {
        if (!(gains[i] > 0.0)) {
            err << "gain l_" << (i + 1) << " = " << gains[i] << " violates l_i > 0";
            throw ConfigError(err.str());
        }
    }

    ChainConfig cfg;
    cfg.r = r;
    cfg.p = p;
    cfg.kappa = kappa;
    cfg.gains = std::move(gains);
    cfg.weights.reserve(r + 2);
    for (int i = 1; i <= r + 2; ++i) cfg.weights.push_back(p + (i - 1) * kappa);
    cfg.alphas.reserve(r);
    for (int i = 1; i <= r; ++i) cfg.alphas.push_back(cfg.weights[i] / cfg.weights[i - 1]);

    if (betas_override.empty()) {
        cfg.betas.resize(r);
        cfg.betas[0] = cfg.weights[1] / cfg.weights[0];
        const double degree = (cfg.betas[0] + 1.0) * cfg.weights[0];  // = 2p + kappa
        for (int i = 1; i < r; ++i) cfg.betas[i] = degree / cfg.weights[i] - 1.0;
    } else {
        if (static_cast<int>(betas_override.size()) != r) {
            err << "expected " << r << " betas, got " << betas_override.size();
            throw ConfigError(err.str());
        }
        cfg.betas = std::move(betas_override);
    }
    for (int i = 0; i < r; ++i) {
        if (!(cfg.betas[i] > 0.0) || !(cfg.alphas[i] / cfg.betas[i] > 0.0)) {
            err << "beta_" << i << " = " << cfg.betas[i]
                << " makes the exponent alpha_" << (i + 1) << "/beta_" << i << " non-positive";
            throw ConfigError(err.str());
        }
    }
    return cfg;
}

double signed_power(double x, double a) {
    if (x == 0.0) return 0.0;
    if (a == 0.0) return x > 0.0 ? 1.0 : -1.0;
    const double mag = std::pow(std::fabs(x), a);
    return x > 0.0 ? mag : -mag;
}

StateVector apply_dilation(const StateVector& z, double lambda, const ChainConfig& cfg) {
    if (!(lambda > 0.0)) throw ConfigError("dilation parameter must be positive");
    StateVector out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i)
        out[i] = std::pow(lambda, cfg.weights[i]) * z[i];
    return out;
}

std::vector<double> hong_v_sequence(const StateVector& z, const ChainConfig& cfg) {
    std::vector<double> v(cfg.r + 1, 0.0);
    for (int i = 0; i < cfg.r; ++i) {
        const double b = cfg.betas[i];
        const double w = signed_power(z[i], b) - signed_power(v[i], b);
        v[i + 1] = -cfg.gains[i] * signed_power(w, cfg.alphas[i] / b);
    }
    return v;
}

double hong_u0(const StateVector& z, const ChainConfig& cfg) {
    return hong_v_sequence(z, cfg)[cfg.r];
}

double lyapunov_term(double z, double v, double beta) {
    // int_v^z spow(s,beta) ds = (|z|^{beta+1} - |v|^{beta+1}) / (beta+1)
    const double primitive =
        (std::pow(std::fabs(z), beta + 1.0) - std::pow(std::fabs(v), beta + 1.0)) / (beta + 1.0);
    // nonnegative for every (z, v); rounding can drive the difference a few
    // ulps negative near z = v
    return std::max(0.0, primitive - signed_power(v, beta) * (z - v));
}

double lyapunov_v1(const StateVector& z, const ChainConfig& cfg) {
    const auto v = hong_v_sequence(z, cfg);
    double total = 0.0;
    for (int j = 1; j <= cfg.r; ++j)
        total += lyapunov_term(z[j - 1], v[j - 1], cfg.betas[j - 1]);
    return total;
}

double lyapunov_v1_partial_r(const StateVector& z, const ChainConfig& cfg) {
    const auto v = hong_v_sequence(z, cfg);
    const double b = cfg.betas[cfg.r - 1];
    return signed_power(z[cfg.r - 1], b) - signed_power(v[cfg.r - 1], b);
}

std::vector<double> lyapunov_v1_gradient_fd(const StateVector& z, const ChainConfig& cfg,
                                            double h) {
    if (!(h > 0.0)) throw ConfigError("finite-difference step must be positive");
    std::vector<double> grad(z.size());
    StateVector probe = z;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double zi = z[i];
        probe[i] = zi + h;
        const double hi = lyapunov_v1(probe, cfg);
        probe[i] = zi - h;
        const double lo = lyapunov_v1(probe, cfg);
        probe[i] = zi;
        grad[i] = (hi - lo) / (2.0 * h);
    }
    return grad;
}

}  // namespace ahosm
