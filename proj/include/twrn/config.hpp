#pragma once

// Flat key=value scenario files and the CSV emitter. dB-valued keys carry
// an explicit _db suffix and are converted at parse time; everything past
// this boundary is linear.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "twrn/analysis.hpp"
#include "twrn/system.hpp"

namespace twrn {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ScenarioConfig {
    // channel geometry (converted to GammaChannel at build time)
    double d_ar = 5, d_br = 5, d_ab = 10;
    double alpha1 = 2.7, alpha2 = 3.0;
    double m_a = 2, m_b = 2, m_d = 1;
    // system
    double k1 = 0.1, k2 = 0.1;
    double eta = 0.6, beta = 0.8;
    double rho = 1e5;
    double sigma2 = 1.0;
    double T = 1.0, R_th = 1.0;
    int quadrature_N = 32;
    // run controls
    Engine engine = Engine::Analytic;
    std::uint64_t mc_n = 1000000;
    std::uint64_t seed = 1;
    std::optional<SweepAxis> sweep_axis;
    std::vector<double> sweep_grid;
    std::string out_path;

    SystemParams to_system_params() const {
        SystemParams p;
        p.k1 = k1;
        p.k2 = k2;
        p.eta = eta;
        p.beta = beta;
        p.rho = rho;
        p.sigma2 = sigma2;
        p.T = T;
        p.R_th = R_th;
        p.quadrature_N = quadrature_N;
        p.ch_a = channel_from_geometry(d_ar, alpha1, m_a);
        p.ch_b = channel_from_geometry(d_br, alpha1, m_b);
        p.ch_d = channel_from_geometry(d_ab, alpha2, m_d);
        p.validate();
        return p;
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// line 0 means "not from a file" (CLI flags); no location prefix then
inline std::string loc(int line) {
    return line > 0 ? "line " + std::to_string(line) + ": " : "";
}

inline double parse_real(const std::string& v, int line) {
    std::size_t pos = 0;
    double d;
    try {
        d = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError(loc(line) + "not a number: '" + v + "'");
    }
    if (pos != v.size())
        throw ConfigError(loc(line) + "trailing junk in number: '" + v + "'");
    return d;
}

inline std::uint64_t parse_u64(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        const std::uint64_t r = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return r;
    } catch (const std::exception&) {
        throw ConfigError(loc(line) + "not an integer: '" + v + "'");
    }
}

inline SweepAxis parse_axis(const std::string& v, int line) {
    if (v == "rho") return SweepAxis::Rho;
    if (v == "beta") return SweepAxis::Beta;
    if (v == "k_ave") return SweepAxis::KAve;
    if (v == "gamma_th") return SweepAxis::GammaTh;
    if (v == "d_ar") return SweepAxis::DAr;
    if (v == "R_th") return SweepAxis::RTh;
    throw ConfigError(loc(line) + "unknown sweep axis '" + v + "'");
}

inline Engine parse_engine(const std::string& v, int line) {
    if (v == "analytic") return Engine::Analytic;
    if (v == "mc") return Engine::Mc;
    if (v == "both") return Engine::Both;
    throw ConfigError(loc(line) + "unknown engine '" + v + "'");
}

inline std::vector<double> parse_grid(const std::string& v, int line) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty())
            throw ConfigError(loc(line) + "empty grid entry");
        out.push_back(parse_real(item, line));
    }
    if (out.empty()) throw ConfigError(loc(line) + "empty grid");
    return out;
}

}  // namespace detail

inline ScenarioConfig parse_scenario(std::istream& in) {
    ScenarioConfig c;
    std::string raw;
    int line = 0;
    std::set<std::string> seen;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        const auto hash = s.find('#');
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = detail::trim(s);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line) + ": expected key = value");
        const std::string key = detail::trim(s.substr(0, eq));
        const std::string val = detail::trim(s.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("line " + std::to_string(line) + ": empty key or value");
        if (!seen.insert(key).second)
            throw ConfigError("line " + std::to_string(line) + ": duplicate key '" + key + "'");

        if (key == "k1") c.k1 = detail::parse_real(val, line);
        else if (key == "k2") c.k2 = detail::parse_real(val, line);
        else if (key == "k_ave") c.k1 = c.k2 = detail::parse_real(val, line);
        else if (key == "eta") c.eta = detail::parse_real(val, line);
        else if (key == "beta") c.beta = detail::parse_real(val, line);
        else if (key == "rho") c.rho = detail::parse_real(val, line);
        else if (key == "rho_db") c.rho = std::pow(10.0, detail::parse_real(val, line) / 10.0);
        else if (key == "sigma2") c.sigma2 = detail::parse_real(val, line);
        else if (key == "T") c.T = detail::parse_real(val, line);
        else if (key == "R_th") c.R_th = detail::parse_real(val, line);
        else if (key == "m_a") c.m_a = detail::parse_real(val, line);
        else if (key == "m_b") c.m_b = detail::parse_real(val, line);
        else if (key == "m_d") c.m_d = detail::parse_real(val, line);
        else if (key == "d_ar") c.d_ar = detail::parse_real(val, line);
        else if (key == "d_br") c.d_br = detail::parse_real(val, line);
        else if (key == "d_ab") c.d_ab = detail::parse_real(val, line);
        else if (key == "alpha1") c.alpha1 = detail::parse_real(val, line);
        else if (key == "alpha2") c.alpha2 = detail::parse_real(val, line);
        else if (key == "quadrature_N")
            c.quadrature_N = static_cast<int>(detail::parse_u64(val, line));
        else if (key == "engine") c.engine = detail::parse_engine(val, line);
        else if (key == "mc_n") c.mc_n = detail::parse_u64(val, line);
        else if (key == "seed") c.seed = detail::parse_u64(val, line);
        else if (key == "sweep_axis") c.sweep_axis = detail::parse_axis(val, line);
        else if (key == "sweep_grid") c.sweep_grid = detail::parse_grid(val, line);
        else if (key == "out") c.out_path = val;
        else
            throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
    return c;
}

inline ScenarioConfig parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    return parse_scenario(in);
}

// 17 significant digits: round-trips every double exactly.
inline std::string csv_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void write(std::ostream& os) const {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (i) os << ',';
            os << header[i];
        }
        os << '\n';
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) os << ',';
                os << row[i];
            }
            os << '\n';
        }
    }

    void write_file(const std::string& path) const {
        std::ofstream os(path, std::ios::binary);  // binary keeps LF endings everywhere
        if (!os) throw std::runtime_error("cannot open output file: " + path);
        write(os);
    }
};

}  // namespace twrn
