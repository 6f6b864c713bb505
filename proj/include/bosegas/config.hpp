#ifndef BOSEGAS_CONFIG_HPP
#define BOSEGAS_CONFIG_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bosegas/radial_potential.hpp"
#include "bosegas/shells.hpp"

namespace bosegas {

/// Raised for malformed configuration input; the CLI maps it to exit status 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// key = value lines, '#' comments; unknown keys are rejected by the loaders.
std::map<std::string, std::string> parse_kv_file(const std::string& path);

/// Potential specification: keys kind (square|ramp|table), V0, R0, samples,
/// file (CSV of r,value rows for kind = table).
RadialPotential load_potential(const std::string& path);

/// Shell spec string, e.g. "PL=1..1;PH=4..9;mc=3" with inclusive |n|^2 bands
/// (PI band optional), or "default" for the rho-power rules.
ShellOverrides parse_shell_spec(const std::string& spec);

/// Occupation spec "n1,n2,n3:count;..." in integer mode coordinates.
std::vector<std::pair<Mode, int>> parse_occupation_spec(const std::string& spec);

/// Log-spaced grid "start:stop:count".
std::vector<double> parse_grid_spec(const std::string& spec);

/// Central tolerance block with the module defaults.
struct Tolerances {
    double scattering_rel = 1e-8;
    double cancellation_rel = 1e-6;
    double thermo_cross_rel = 1e-9;
    double family_norm = 1e-12;
    double ratio_identity = 1e-12;
    double oracle_match = 1e-10;
    double variational_slack = 1e-10;
    double bridge_defect = 1e-10;
    double rescale_defect = 1e-14;

    void apply(const std::map<std::string, std::string>& kv);
};

} // namespace bosegas

#endif
