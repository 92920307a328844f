#include "blochband/report.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace blochband {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        os << content;
        if (!os.good()) throw std::runtime_error("short write to " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string config_hash(const nlohmann::json& config) {
    const std::string dump = config.dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
    return buf;
}

std::string bands_csv(const DispersionDiagram& diagram) {
    std::ostringstream os;
    os << "kd,band,f_hz,F_norm\n";
    for (int i = 0; i < diagram.n_k(); ++i)
        for (int b = 0; b < diagram.n_bands(); ++b)
            os << format_double(diagram.kd[i]) << "," << b << ","
               << format_double(diagram.bands_hz[b][i]) << ","
               << format_double(diagram.normalized(b, i)) << "\n";
    return os.str();
}

DispersionDiagram bands_from_csv(const std::string& content) {
    std::istringstream is(content);
    std::string line;
    if (!std::getline(is, line) || line.rfind("kd,band,f_hz", 0) != 0)
        throw ConfigError("bands csv: missing 'kd,band,f_hz,F_norm' header");

    struct Row {
        double kd, f, norm;
        int band;
    };
    std::vector<Row> rows;
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        Row r;
        char* end = nullptr;
        const char* p = line.c_str();
        r.kd = std::strtod(p, &end);
        if (end == p || *end != ',')
            throw ConfigError("bands csv: malformed line " + std::to_string(lineno));
        p = end + 1;
        r.band = static_cast<int>(std::strtol(p, &end, 10));
        if (end == p || *end != ',')
            throw ConfigError("bands csv: malformed line " + std::to_string(lineno));
        p = end + 1;
        r.f = std::strtod(p, &end);
        if (end == p || *end != ',')
            throw ConfigError("bands csv: malformed line " + std::to_string(lineno));
        p = end + 1;
        r.norm = std::strtod(p, &end);
        if (end == p)
            throw ConfigError("bands csv: malformed line " + std::to_string(lineno));
        rows.push_back(r);
    }
    if (rows.empty()) throw ConfigError("bands csv: no data rows");

    DispersionDiagram d;
    for (const auto& r : rows)
        if (d.kd.empty() || r.kd > d.kd.back()) d.kd.push_back(r.kd);
    int n_bands = 0;
    for (const auto& r : rows) n_bands = std::max(n_bands, r.band + 1);
    d.bands_hz.assign(n_bands, std::vector<double>(d.kd.size(), 0.0));

    // Recover d and v from any row with nonzero frequency: F = f d / v.
    d.d = 1.0;
    d.v = 1.0;
    for (const auto& r : rows)
        if (r.f > 0.0 && r.norm > 0.0) {
            d.v = r.f / r.norm; // stores v/d; with d = 1 the normalization is preserved
            break;
        }
    auto k_index = [&](double kd) {
        const auto it = std::lower_bound(d.kd.begin(), d.kd.end(), kd - 1e-12);
        return static_cast<int>(it - d.kd.begin());
    };
    for (const auto& r : rows) {
        if (r.band >= n_bands || k_index(r.kd) >= static_cast<int>(d.kd.size()))
            throw ConfigError("bands csv: inconsistent table");
        d.bands_hz[r.band][k_index(r.kd)] = r.f;
    }
    return d;
}

nlohmann::json gaps_to_json(const std::vector<BandGap>& gaps, double f_max) {
    nlohmann::json j;
    j["f_max"] = f_max;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& g : gaps)
        arr.push_back({{"lo", g.lo}, {"hi", g.hi}, {"width", g.width()},
                       {"center", g.center()}});
    j["gaps"] = arr;
    return j;
}

nlohmann::json flat_bands_to_json(const std::vector<FlatBand>& flats, double threshold) {
    nlohmann::json j;
    j["threshold"] = threshold;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& f : flats)
        arr.push_back({{"band", f.band}, {"max_slope", f.max_slope},
                       {"mean_F", f.mean_norm}});
    j["flat_bands"] = arr;
    return j;
}

std::string bands_svg(const DispersionDiagram& diagram, const std::vector<BandGap>& gaps) {
    const double width = 640, height = 480, ml = 70, mr = 20, mt = 20, mb = 50;
    double f_hi = 0.0;
    for (int b = 0; b < diagram.n_bands(); ++b)
        for (int i = 0; i < diagram.n_k(); ++i)
            f_hi = std::max(f_hi, diagram.normalized(b, i));
    f_hi *= 1.05;
    if (f_hi <= 0.0) f_hi = 1.0;
    const double kd_hi = diagram.kd.empty() ? 1.0 : diagram.kd.back();

    auto px = [&](double kd) { return ml + (width - ml - mr) * kd / kd_hi; };
    auto py = [&](double f) { return height - mb - (height - mt - mb) * f / f_hi; };

    std::ostringstream os;
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
       << "' viewBox='0 0 " << width << " " << height << "'>\n";
    os << "<rect width='100%' height='100%' fill='white'/>\n";
    for (const auto& g : gaps) {
        if (g.lo >= f_hi) continue;
        os << "<rect x='" << px(0) << "' y='" << py(std::min(g.hi, f_hi)) << "' width='"
           << px(kd_hi) - px(0) << "' height='" << py(g.lo) - py(std::min(g.hi, f_hi))
           << "' fill='#fde0d0'/>\n";
    }
    for (int b = 0; b < diagram.n_bands(); ++b) {
        os << "<polyline fill='none' stroke='#1f4e8c' stroke-width='1.4' points='";
        for (int i = 0; i < diagram.n_k(); ++i)
            os << px(diagram.kd[i]) << "," << py(diagram.normalized(b, i)) << " ";
        os << "'/>\n";
    }
    os << "<line x1='" << ml << "' y1='" << py(0) << "' x2='" << width - mr << "' y2='" << py(0)
       << "' stroke='black'/>\n";
    os << "<line x1='" << ml << "' y1='" << py(0) << "' x2='" << ml << "' y2='" << mt
       << "' stroke='black'/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double kd = kd_hi * t / 4;
        os << "<text x='" << px(kd) << "' y='" << height - mb + 18
           << "' font-size='12' text-anchor='middle'>" << kd << "</text>\n";
        const double f = f_hi * t / 4;
        os << "<text x='" << ml - 8 << "' y='" << py(f) + 4
           << "' font-size='12' text-anchor='end'>" << f << "</text>\n";
    }
    os << "<text x='" << (ml + width - mr) / 2 << "' y='" << height - 12
       << "' font-size='13' text-anchor='middle'>k d</text>\n";
    os << "<text x='14' y='" << (mt + height - mb) / 2
       << "' font-size='13' text-anchor='middle' transform='rotate(-90 14 "
       << (mt + height - mb) / 2 << ")'>F = f d / v</text>\n";
    os << "</svg>\n";
    return os.str();
}

nlohmann::json make_manifest(const std::string& command, const nlohmann::json& config,
                             const std::vector<std::string>& outputs) {
    nlohmann::json j;
    j["command"] = command;
    j["config_hash"] = config_hash(config);
    j["schema_version"] = kSchemaVersion;
    j["software_version"] = kSoftwareVersion;
    j["outputs"] = outputs;
    return j;
}

} // namespace blochband
