#include "bosegas/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace bosegas {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("invalid numeric value for key '" + key + "': " + v);
    }
}

long to_long(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("invalid integer value for key '" + key + "': " + v);
    }
}

} // namespace

std::map<std::string, std::string> parse_kv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
        if (kv.count(key)) throw ConfigError(path + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
        kv[key] = val;
    }
    return kv;
}

RadialPotential load_potential(const std::string& path) {
    const auto kv = parse_kv_file(path);
    for (const auto& [k, v] : kv) {
        if (k != "kind" && k != "V0" && k != "R0" && k != "samples" && k != "file")
            throw ConfigError("unknown key '" + k + "' in potential file " + path);
    }
    const auto kind_it = kv.find("kind");
    if (kind_it == kv.end()) throw ConfigError("potential file missing key 'kind': " + path);
    const std::string& kind = kind_it->second;
    if (kind == "square" || kind == "ramp") {
        if (!kv.count("V0") || !kv.count("R0"))
            throw ConfigError("potential kind '" + kind + "' needs V0 and R0: " + path);
        const double v0 = to_double("V0", kv.at("V0"));
        const double r0 = to_double("R0", kv.at("R0"));
        if (v0 == 0.0) return RadialPotential::zero();
        return kind == "square" ? RadialPotential::square_barrier(v0, r0)
                                : RadialPotential::ramp(v0, r0);
    }
    if (kind == "table") {
        if (!kv.count("file")) throw ConfigError("potential kind 'table' needs key 'file': " + path);
        std::string csv_path = kv.at("file");
        if (!csv_path.empty() && csv_path.front() != '/') {
            const auto slash = path.find_last_of('/');
            if (slash != std::string::npos) csv_path = path.substr(0, slash + 1) + csv_path;
        }
        std::ifstream in(csv_path);
        if (!in) throw ConfigError("cannot open potential table: " + csv_path);
        std::vector<std::pair<double, double>> samples;
        std::string line;
        while (std::getline(in, line)) {
            line = trim(line);
            if (line.empty() || line.front() == '#' || std::isalpha(line.front())) continue;
            std::stringstream ss(line);
            std::string a, b;
            if (!std::getline(ss, a, ',') || !std::getline(ss, b))
                throw ConfigError("bad table row in " + csv_path + ": " + line);
            samples.emplace_back(to_double("r", trim(a)), to_double("value", trim(b)));
        }
        if (samples.size() < 2) throw ConfigError("potential table needs at least two rows: " + csv_path);
        return RadialPotential::from_table(samples);
    }
    throw ConfigError("unknown potential kind '" + kind + "' (square|ramp|table): " + path);
}

namespace {

std::pair<long, long> parse_band(const std::string& key, const std::string& v) {
    const auto dots = v.find("..");
    if (dots == std::string::npos) throw ConfigError("band for " + key + " must be lo..hi: " + v);
    return {to_long(key, v.substr(0, dots)), to_long(key, v.substr(dots + 2))};
}

} // namespace

ShellOverrides parse_shell_spec(const std::string& spec) {
    ShellOverrides ov;
    if (spec == "default" || spec.empty()) return ov;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ';')) {
        item = trim(item);
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ConfigError("shell spec item needs '=': " + item);
        const std::string key = trim(item.substr(0, eq));
        const std::string val = trim(item.substr(eq + 1));
        if (key == "PI")
            ov.pi_band = parse_band(key, val);
        else if (key == "PL")
            ov.pl_band = parse_band(key, val);
        else if (key == "PH")
            ov.ph_band = parse_band(key, val);
        else if (key == "mc")
            ov.m_c = to_long(key, val);
        else if (key == "eta")
            ov.eta = to_double(key, val);
        else
            throw ConfigError("unknown shell spec key '" + key + "'");
    }
    return ov;
}

std::vector<std::pair<Mode, int>> parse_occupation_spec(const std::string& spec) {
    std::vector<std::pair<Mode, int>> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ';')) {
        item = trim(item);
        if (item.empty()) continue;
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw ConfigError("occupation item needs ':': " + item);
        std::stringstream coords(item.substr(0, colon));
        std::string cx, cy, cz;
        if (!std::getline(coords, cx, ',') || !std::getline(coords, cy, ',') ||
            !std::getline(coords, cz))
            throw ConfigError("occupation item needs n1,n2,n3: " + item);
        Mode m{static_cast<int>(to_long("n1", trim(cx))), static_cast<int>(to_long("n2", trim(cy))),
               static_cast<int>(to_long("n3", trim(cz)))};
        const long count = to_long("count", trim(item.substr(colon + 1)));
        if (count < 0) throw ConfigError("negative occupation count: " + item);
        out.emplace_back(m, static_cast<int>(count));
    }
    if (out.empty()) throw ConfigError("empty occupation spec");
    return out;
}

std::vector<double> parse_grid_spec(const std::string& spec) {
    std::stringstream ss(spec);
    std::string a, b, c;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c))
        throw ConfigError("grid spec must be start:stop:count, got " + spec);
    const double start = to_double("start", trim(a));
    const double stop = to_double("stop", trim(b));
    const long count = to_long("count", trim(c));
    if (start <= 0.0 || stop <= 0.0 || count < 1) throw ConfigError("grid spec needs positive entries");
    std::vector<double> grid;
    if (count == 1) return {start};
    for (long i = 0; i < count; ++i)
        grid.push_back(start * std::pow(stop / start, static_cast<double>(i) / (count - 1)));
    return grid;
}

void Tolerances::apply(const std::map<std::string, std::string>& kv) {
    for (const auto& [k, v] : kv) {
        if (k == "tol.scattering_rel")
            scattering_rel = to_double(k, v);
        else if (k == "tol.cancellation_rel")
            cancellation_rel = to_double(k, v);
        else if (k == "tol.thermo_cross_rel")
            thermo_cross_rel = to_double(k, v);
        else if (k == "tol.family_norm")
            family_norm = to_double(k, v);
        else if (k == "tol.ratio_identity")
            ratio_identity = to_double(k, v);
        else if (k == "tol.oracle_match")
            oracle_match = to_double(k, v);
        else if (k == "tol.variational_slack")
            variational_slack = to_double(k, v);
        else if (k == "tol.bridge_defect")
            bridge_defect = to_double(k, v);
        else if (k == "tol.rescale_defect")
            rescale_defect = to_double(k, v);
        else
            throw ConfigError("unknown key '" + k + "' in tolerance block");
    }
}

} // namespace bosegas
