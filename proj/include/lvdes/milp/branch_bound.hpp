#pragma once

#include <optional>

#include "lvdes/lp/interior_point.hpp"
#include "lvdes/milp/backend.hpp"

namespace lvdes::milp {

/// Branch-and-bound over the interior-point LP relaxation. Branches on
/// fractional binaries by priority; pairs registered through
/// add_indicator_hint are branched only when both sides of the pair are
/// active, and are otherwise fixed by rounding.
class BranchBoundBackend : public MilpBackend {
public:
    int add_continuous(std::string name, double lb, double ub) override;
    int add_binary(std::string name) override;
    void add_row(std::string name, double lo, std::vector<lp::Term> terms,
                 double hi) override;
    void set_objective(std::vector<lp::Term> terms, double constant) override;
    void add_indicator_hint(int binary, int var_zero_when_one,
                            int var_zero_when_zero) override;
    void set_branch_priority(int var, int priority) override;
    void set_warm_start(const std::vector<double>& x) override;

    MilpSolveResult solve(double rel_gap, double time_limit_s) override;

    const lp::Model& model() const { return model_; }
    lp::Model& model() { return model_; }

    /// Feasibility tolerance used when accepting integral solutions.
    double feas_tol = 1e-6;
    double int_tol = 1e-6;
    int max_nodes = 500000;

private:
    struct IndicatorHint {
        int binary;
        int zero_when_one;
        int zero_when_zero;
    };

    lp::Model model_;
    std::vector<IndicatorHint> hints_;
    std::vector<int> priority_;
    std::optional<std::vector<double>> warm_start_;
};

} // namespace lvdes::milp
