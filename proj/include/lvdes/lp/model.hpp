#pragma once

#include <limits>
#include <string>
#include <vector>

namespace lvdes::lp {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Term {
    int var;
    double coef;
};

/// Sparse linear program: min c'x + c0 over row_lb <= Ax <= row_ub,
/// lb <= x <= ub. Binary marks are carried for the MILP layer.
struct Model {
    std::vector<double> obj;
    double obj_constant = 0.0;
    std::vector<double> lb, ub;
    std::vector<bool> binary;
    std::vector<std::string> var_names;

    std::vector<std::vector<Term>> rows;
    std::vector<double> row_lb, row_ub;
    std::vector<std::string> row_names;

    int add_var(std::string name, double lo, double hi, double cost = 0.0,
                bool is_binary = false) {
        var_names.push_back(std::move(name));
        lb.push_back(lo);
        ub.push_back(hi);
        obj.push_back(cost);
        binary.push_back(is_binary);
        return static_cast<int>(obj.size()) - 1;
    }

    int add_row(std::string name, double lo, std::vector<Term> terms, double hi) {
        row_names.push_back(std::move(name));
        rows.push_back(std::move(terms));
        row_lb.push_back(lo);
        row_ub.push_back(hi);
        return static_cast<int>(rows.size()) - 1;
    }

    int num_vars() const { return static_cast<int>(obj.size()); }
    int num_rows() const { return static_cast<int>(rows.size()); }

    /// Max violation of rows and bounds at x.
    double violation(const std::vector<double>& x) const;
    /// c'x + c0.
    double objective(const std::vector<double>& x) const;
};

} // namespace lvdes::lp
