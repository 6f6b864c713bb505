#ifndef BOSEGAS_VERIFY_HPP
#define BOSEGAS_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bosegas/config.hpp"

namespace bosegas {

struct CheckResult {
    std::string name;
    bool pass = false;
    double residual = 0.0; // worst observed defect, check-specific scale
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    const CheckResult* first_failure() const {
        for (const auto& c : checks)
            if (!c.pass) return &c;
        return nullptr;
    }
};

/// The twelve acceptance criteria at their stated tolerances, one result per
/// criterion.  `quick` restricts to the sub-second formula and scattering
/// checks.
VerifyReport run_acceptance(bool quick, std::uint64_t seed, const Tolerances& tol);

} // namespace bosegas

#endif
