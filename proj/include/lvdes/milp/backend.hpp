#pragma once

#include <string>
#include <vector>

#include "lvdes/lp/model.hpp"

namespace lvdes::milp {

enum class MilpStatus { Optimal, Infeasible, TimeLimit, Error };

struct MilpSolveResult {
    MilpStatus status = MilpStatus::Error;
    double obj = 0.0;
    std::vector<double> x;
    double bound = -lp::kInf; // proven lower bound on the optimum
    int nodes = 0;
};

/// Mixed-integer linear backend contract. Model building code talks to this
/// interface only; concrete solvers are adapters behind it.
class MilpBackend {
public:
    virtual ~MilpBackend() = default;

    virtual int add_continuous(std::string name, double lb, double ub) = 0;
    virtual int add_binary(std::string name) = 0;
    virtual void add_row(std::string name, double lo, std::vector<lp::Term> terms,
                         double hi) = 0;
    virtual void set_objective(std::vector<lp::Term> terms, double constant) = 0;

    /// Optional structural hint: `binary` arbitrates an either/or pair; when
    /// it is 1 `var_zero_when_one` must vanish, when 0 `var_zero_when_zero`
    /// must. Backends may exploit or ignore it.
    virtual void add_indicator_hint(int /*binary*/, int /*var_zero_when_one*/,
                                    int /*var_zero_when_zero*/) {}

    /// Branching priority hint; higher first. Backends may ignore it.
    virtual void set_branch_priority(int /*var*/, int /*priority*/) {}

    virtual void set_warm_start(const std::vector<double>& x) = 0;

    virtual MilpSolveResult solve(double rel_gap, double time_limit_s) = 0;
};

} // namespace lvdes::milp
