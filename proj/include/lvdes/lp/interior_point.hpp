#pragma once

#include <vector>

#include "lvdes/lp/model.hpp"

namespace lvdes::lp {

enum class LpStatus { Optimal, Infeasible, IterationLimit, Error };

struct LpResult {
    LpStatus status = LpStatus::Error;
    double obj = 0.0; // includes the model constant
    std::vector<double> x;
    double max_violation = 0.0;
    int iterations = 0;
};

struct IpmOptions {
    double tol = 1e-9;
    int max_iterations = 120;
    /// Scaled primal violation above which a stalled solve is classified by a
    /// phase-1 feasibility run.
    double infeasibility_tol = 1e-7;
};

/// Mehrotra predictor-corrector interior-point solve. Bound overrides, when
/// given, replace the model's variable bounds (used by branch-and-bound).
LpResult solve_lp(const Model& model, const IpmOptions& opts = {},
                  const std::vector<double>* lb_override = nullptr,
                  const std::vector<double>* ub_override = nullptr);

} // namespace lvdes::lp
