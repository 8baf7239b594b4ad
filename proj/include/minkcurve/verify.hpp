#pragma once

#include <string>
#include <vector>

namespace mink {

/// One self-check of the toolkit's mathematical claims.
struct CheckResult {
    std::string name;
    bool passed = false;
    /// Worst measured error as a fraction of its allowance (< 1 passes).
    double worst = 0.0;
    std::string detail;
};

/// Runs the built-in verification suite: reference-curve reproduction, family
/// ODE residuals, determinant/residual equivalence, slant-indicator
/// equivalence, integrator fidelity, jet-engine cross-checks against finite
/// differences, and the determinant ladder. Each check carries its tolerance
/// in code; all run at desk scale.
std::vector<CheckResult> run_verification();

} // namespace mink
