#include "blochband/dispersion.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace blochband {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

int resolve_threads(int requested, int n_tasks) {
    int n = requested;
    if (n <= 0) {
        if (const char* env = std::getenv("BLOCHBAND_THREADS")) n = std::atoi(env);
        if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
        if (n <= 0) n = 1;
    }
    return std::max(1, std::min(n, n_tasks));
}

} // namespace

DispersionDiagram sweep(const CellSpec& spec, const SweepParams& params) {
    if (params.n_k < 2) throw ConfigError("sweep: n_k must be >= 2");
    if (params.n_bands < 1) throw ConfigError("sweep: n_bands must be >= 1");
    spec.validate();

    const TaggedMesh mesh = build_cell(spec, params.resolution);
    const AssembledSystem sys = assemble(mesh, spec.materials);

    DispersionDiagram diagram;
    diagram.d = spec.period;
    diagram.v = spec.shear_speed();
    diagram.kd.resize(params.n_k);
    for (int i = 0; i < params.n_k; ++i)
        diagram.kd[i] = kPi * i / (params.n_k - 1);

    std::vector<std::vector<double>> per_k(params.n_k);
    std::vector<std::string> failures(params.n_k);
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= params.n_k) return;
            try {
                const double k = diagram.kd[i] / spec.period;
                const BlochSystem bloch = apply_constraints(sys, mesh, k);
                const ModeSet modes = solve_modes(bloch, params.n_bands);
                per_k[i] = modes.frequencies_hz;
            } catch (const std::exception& e) {
                failures[i] = e.what();
            }
        }
    };

    const int n_threads = resolve_threads(params.threads, params.n_k);
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (int i = 0; i < params.n_k; ++i)
        if (!failures[i].empty())
            throw SolverError("sweep: solve failed at k d = " + std::to_string(diagram.kd[i]) +
                              ": " + failures[i]);

    diagram.bands_hz.assign(params.n_bands, std::vector<double>(params.n_k));
    for (int i = 0; i < params.n_k; ++i)
        for (int b = 0; b < params.n_bands; ++b) diagram.bands_hz[b][i] = per_k[i][b];
    return diagram;
}

std::vector<BandGap> find_gaps(const DispersionDiagram& diagram, double f_max, double floor) {
    if (diagram.n_k() == 0 || diagram.n_bands() == 0)
        throw ConfigError("find_gaps: empty diagram");
    if (!(f_max > 0.0)) throw ConfigError("find_gaps: f_max must be positive");

    // Band closures in normalized frequency.
    std::vector<std::pair<double, double>> closures;
    for (int b = 0; b < diagram.n_bands(); ++b) {
        double lo = diagram.normalized(b, 0), hi = lo;
        for (int i = 1; i < diagram.n_k(); ++i) {
            lo = std::min(lo, diagram.normalized(b, i));
            hi = std::max(hi, diagram.normalized(b, i));
        }
        closures.emplace_back(lo, hi);
    }
    std::sort(closures.begin(), closures.end());

    std::vector<BandGap> gaps;
    double covered = 0.0;
    for (const auto& [lo, hi] : closures) {
        if (lo > covered && lo - covered > floor && covered < f_max)
            gaps.push_back({covered, std::min(lo, f_max)});
        covered = std::max(covered, hi);
        if (covered >= f_max) break;
    }
    if (covered < f_max && f_max - covered > floor) gaps.push_back({covered, f_max});
    return gaps;
}

std::vector<FlatBand> find_flat_bands(const DispersionDiagram& diagram, double threshold) {
    if (diagram.n_k() < 3)
        throw ConfigError("find_flat_bands: need at least 3 k-samples");
    std::vector<FlatBand> flats;
    for (int b = 0; b < diagram.n_bands(); ++b) {
        double max_slope = 0.0;
        double mean = 0.0;
        for (int i = 0; i < diagram.n_k(); ++i) {
            mean += diagram.normalized(b, i);
            if (i + 1 < diagram.n_k()) {
                const double dkd = diagram.kd[i + 1] - diagram.kd[i];
                const double df =
                    diagram.normalized(b, i + 1) - diagram.normalized(b, i);
                max_slope = std::max(max_slope, std::abs(df / dkd));
            }
        }
        mean /= diagram.n_k();
        if (max_slope < threshold) flats.push_back({b, max_slope, mean});
    }
    return flats;
}

FiniteStackResult finite_stack_modes(const CellSpec& spec, int n_cells, int n_modes,
                                     const Resolution& res, std::optional<double> sigma_hz) {
    if (n_cells < 1) throw ConfigError("finite_stack_modes: n_cells must be >= 1");
    spec.validate();

    const TaggedMesh cell = build_cell(spec, res);
    const TaggedMesh stack = replicate_stack(cell, n_cells);
    const AssembledSystem sys = assemble(stack, spec.materials);
    const BlochSystem constrained = apply_constraints(sys, stack, 0.0);

    FiniteStackResult out;
    out.n_cells = n_cells;
    out.v = spec.shear_speed();
    out.d = spec.period;
    out.modes = solve_modes(constrained, n_modes, sigma_hz);
    if (has_resonator_regions(stack))
        out.localization = localization_ratios(stack, out.modes);
    return out;
}

} // namespace blochband
