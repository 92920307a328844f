#include "blochband/beam.hpp"

#include <algorithm>
#include <cmath>

namespace blochband {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

double beta_d_of_freq(const BeamSpec& spec, double f_hz) {
    const double omega = 2.0 * kPi * f_hz;
    return std::pow(omega * omega * spec.rho_a / spec.ei, 0.25) * spec.d;
}

double freq_of_beta_d(const BeamSpec& spec, double bd) {
    const double beta = bd / spec.d;
    const double omega = beta * beta * std::sqrt(spec.ei / spec.rho_a);
    return omega / (2.0 * kPi);
}

// cos(kd) as a function of beta*d for the point-supported beam:
//   T11 = (sinh bd cos bd - sin bd cosh bd) / (sinh bd - sin bd).
// For large arguments the hyperbolics are factored out through tanh/sech so
// the evaluation never overflows.
double half_trace_of_beta_d(double bd) {
    const double s = std::sin(bd);
    const double c = std::cos(bd);
    if (bd <= 20.0) {
        const double sh = std::sinh(bd);
        const double ch = std::cosh(bd);
        return (sh * c - s * ch) / (sh - s);
    }
    const double t = std::tanh(bd);
    const double r = 1.0 / std::cosh(bd);
    return (t * c - s) / (t - s * r);
}

} // namespace

double BeamSpec::pinned_fundamental_hz() const {
    const double beta = kPi / d;
    return beta * beta * std::sqrt(ei / rho_a) / (2.0 * kPi);
}

double beam_half_trace(const BeamSpec& spec, double f_hz) {
    spec.validate();
    if (!(f_hz > 0.0)) throw ConfigError("beam_dispersion: f must be positive");
    const double bd = beta_d_of_freq(spec, f_hz);
    if (bd > 600.0)
        throw SolverError("beam_dispersion: frequency too high for the scaled transfer matrix");
    return half_trace_of_beta_d(bd);
}

std::vector<double> beam_dispersion(const BeamSpec& spec, double f_hz) {
    const double ht = beam_half_trace(spec, f_hz);
    std::vector<double> kd;
    if (std::abs(ht) <= 1.0 + 1e-12)
        kd.push_back(std::acos(std::clamp(ht, -1.0, 1.0)));
    return kd;
}

std::vector<BeamBandEdge> beam_band_edges(const BeamSpec& spec, int n_bands) {
    spec.validate();
    if (n_bands < 1) throw ConfigError("beam_band_edges: n_bands must be >= 1");

    // Passband indicator in beta*d; sign changes of |T11| - 1 bracket edges.
    auto indicator = [](double bd) { return std::abs(half_trace_of_beta_d(bd)) - 1.0; };

    std::vector<BeamBandEdge> bands;
    const double bd_max = (static_cast<double>(n_bands) + 1.5) * kPi;
    const double step = 1e-3;
    double prev_bd = 0.05;
    double prev_g = indicator(prev_bd);
    bool in_band = prev_g <= 0.0;
    double open_bd = in_band ? prev_bd : 0.0;

    for (double bd = prev_bd + step; bd <= bd_max && static_cast<int>(bands.size()) < n_bands;
         bd += step) {
        const double g = indicator(bd);
        if ((g <= 0.0) != in_band) {
            // Bisect the crossing.
            double lo = prev_bd, hi = bd;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                if ((indicator(mid) <= 0.0) == in_band)
                    lo = mid;
                else
                    hi = mid;
            }
            const double edge = 0.5 * (lo + hi);
            if (!in_band) {
                open_bd = edge;
            } else {
                bands.push_back({freq_of_beta_d(spec, open_bd), freq_of_beta_d(spec, edge)});
            }
            in_band = !in_band;
        }
        prev_bd = bd;
        prev_g = g;
    }
    if (static_cast<int>(bands.size()) < n_bands)
        throw SolverError("beam_band_edges: failed to locate the requested number of bands; "
                          "last bracket at beta*d = " + std::to_string(prev_bd));
    return bands;
}

} // namespace blochband
