#include "lvdes/milp/branch_bound.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>

namespace lvdes::milp {

namespace {

double now_s() {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
}

struct Fix {
    int var;
    double lo, hi;
};

struct Node {
    double bound;
    int depth = 0;
    long long id = 0;
    std::vector<Fix> fixes;
};

struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
        if (a.bound != b.bound) return a.bound > b.bound; // min-heap on bound
        return a.id > b.id;
    }
};

} // namespace

int BranchBoundBackend::add_continuous(std::string name, double lb, double ub) {
    return model_.add_var(std::move(name), lb, ub, 0.0, false);
}

int BranchBoundBackend::add_binary(std::string name) {
    const int v = model_.add_var(std::move(name), 0.0, 1.0, 0.0, true);
    if (static_cast<int>(priority_.size()) < v + 1) priority_.resize(v + 1, 0);
    return v;
}

void BranchBoundBackend::add_row(std::string name, double lo, std::vector<lp::Term> terms,
                                 double hi) {
    model_.add_row(std::move(name), lo, std::move(terms), hi);
}

void BranchBoundBackend::set_objective(std::vector<lp::Term> terms, double constant) {
    std::fill(model_.obj.begin(), model_.obj.end(), 0.0);
    for (const lp::Term& t : terms) model_.obj[t.var] += t.coef;
    model_.obj_constant = constant;
}

void BranchBoundBackend::add_indicator_hint(int binary, int var_zero_when_one,
                                            int var_zero_when_zero) {
    hints_.push_back({binary, var_zero_when_one, var_zero_when_zero});
}

void BranchBoundBackend::set_branch_priority(int var, int priority) {
    if (static_cast<int>(priority_.size()) < var + 1) priority_.resize(var + 1, 0);
    priority_[var] = priority;
}

void BranchBoundBackend::set_warm_start(const std::vector<double>& x) { warm_start_ = x; }

MilpSolveResult BranchBoundBackend::solve(double rel_gap, double time_limit_s) {
    const double t_start = now_s();
    const int n = model_.num_vars();
    MilpSolveResult out;

    priority_.resize(n, 0);
    std::vector<bool> is_hint_binary(n, false);
    for (const auto& h : hints_) is_hint_binary[h.binary] = true;

    // rows touching only binaries, for bound propagation
    std::vector<int> binary_rows;
    for (int i = 0; i < model_.num_rows(); ++i) {
        bool all_bin = !model_.rows[i].empty();
        for (const lp::Term& t : model_.rows[i])
            if (!model_.binary[t.var]) all_bin = false;
        if (all_bin) binary_rows.push_back(i);
    }

    auto gap_slack = [&](double incumbent_obj) {
        return std::max(1e-7, rel_gap * (1.0 + std::abs(incumbent_obj)));
    };

    double incumbent_obj = lp::kInf;
    std::vector<double> incumbent_x;

    // the caller may seed an incumbent
    if (warm_start_ && static_cast<int>(warm_start_->size()) == n) {
        bool integral = true;
        for (int j = 0; j < n && integral; ++j)
            if (model_.binary[j] &&
                std::abs((*warm_start_)[j] - std::round((*warm_start_)[j])) > int_tol)
                integral = false;
        if (integral && model_.violation(*warm_start_) <= feas_tol) {
            incumbent_x = *warm_start_;
            incumbent_obj = model_.objective(incumbent_x);
        }
    }

    // Applies node fixes on top of the root bounds, then propagates the pure
    // binary rows to a fixpoint. Returns false when the node is infeasible.
    std::vector<double> lbv, ubv;
    auto build_bounds = [&](const Node& node) -> bool {
        lbv = model_.lb;
        ubv = model_.ub;
        for (const Fix& f : node.fixes) {
            lbv[f.var] = std::max(lbv[f.var], f.lo);
            ubv[f.var] = std::min(ubv[f.var], f.hi);
            if (lbv[f.var] > ubv[f.var]) return false;
        }
        bool changed = true;
        while (changed) {
            changed = false;
            for (int ri : binary_rows) {
                double minact = 0.0, maxact = 0.0;
                for (const lp::Term& t : model_.rows[ri]) {
                    minact += t.coef * (t.coef > 0 ? lbv[t.var] : ubv[t.var]);
                    maxact += t.coef * (t.coef > 0 ? ubv[t.var] : lbv[t.var]);
                }
                const double lo = model_.row_lb[ri], hi = model_.row_ub[ri];
                if (minact > hi + 1e-9 || maxact < lo - 1e-9) return false;
                for (const lp::Term& t : model_.rows[ri]) {
                    if (lbv[t.var] == ubv[t.var]) continue;
                    const double span = std::abs(t.coef);
                    // fixing this z to its other bound must keep the row satisfiable
                    if (t.coef > 0) {
                        if (minact + span > hi + 1e-9) { ubv[t.var] = 0.0; changed = true; }
                        else if (maxact - span < lo - 1e-9) { lbv[t.var] = 1.0; changed = true; }
                    } else {
                        if (maxact + span < lo - 1e-9) { ubv[t.var] = 0.0; changed = true; }
                        else if (minact - span > hi + 1e-9) { lbv[t.var] = 1.0; changed = true; }
                    }
                    if (lbv[t.var] > ubv[t.var]) return false;
                }
            }
        }
        return true;
    };

    // Fixes every binary (design binaries at their rounded LP value, hint
    // binaries according to their pair) and re-solves; an optimal result is an
    // exactly feasible integral incumbent.
    auto try_candidate = [&](const std::vector<double>& xrel) -> std::optional<lp::LpResult> {
        std::vector<double> clb = lbv, cub = ubv;
        for (int j = 0; j < n; ++j) {
            if (!model_.binary[j]) continue;
            double v = std::round(xrel[j]);
            if (is_hint_binary[j]) v = -1.0; // set from the pair below
            if (v >= 0) clb[j] = cub[j] = v;
        }
        for (const auto& h : hints_) {
            if (lbv[h.binary] == ubv[h.binary]) {
                clb[h.binary] = cub[h.binary] = lbv[h.binary];
                continue;
            }
            // choose the side whose forced-zero variable is already inactive
            const double a = xrel[h.zero_when_one];  // must vanish when binary = 1
            const double b = xrel[h.zero_when_zero]; // must vanish when binary = 0
            const double v = (a <= b) ? 1.0 : 0.0;
            clb[h.binary] = cub[h.binary] = v;
        }
        lp::LpResult r = lp::solve_lp(model_, {}, &clb, &cub);
        if (r.status != lp::LpStatus::Optimal) return std::nullopt;
        return r;
    };

    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    long long next_id = 0;
    open.push(Node{-lp::kInf, 0, next_id++, {}});
    double best_open_bound = -lp::kInf;
    int processed = 0;
    bool hit_limit = false;

    while (!open.empty()) {
        if (now_s() - t_start > time_limit_s || processed >= max_nodes) {
            hit_limit = true;
            best_open_bound = open.top().bound;
            break;
        }
        Node node = open.top();
        open.pop();
        ++processed;
        if (node.bound >= incumbent_obj - gap_slack(incumbent_obj)) continue;
        if (!build_bounds(node)) continue;

        lp::LpResult rel = lp::solve_lp(model_, {}, &lbv, &ubv);
        if (rel.status == lp::LpStatus::Infeasible) continue;
        if (rel.status == lp::LpStatus::Error) continue; // treated as pruned; rare
        const double node_bound = std::max(node.bound, rel.obj);
        if (node_bound >= incumbent_obj - gap_slack(incumbent_obj)) continue;

        // pick a branching variable: fractional plain binaries by priority
        // first, then conflicted indicator pairs
        int branch_var = -1;
        {
            int best_prio = std::numeric_limits<int>::min();
            double best_frac = 0.0;
            for (int j = 0; j < n; ++j) {
                if (!model_.binary[j] || is_hint_binary[j]) continue;
                const double frac = std::min(rel.x[j] - lbv[j], ubv[j] - rel.x[j]);
                if (frac <= int_tol || lbv[j] == ubv[j]) continue;
                if (priority_[j] > best_prio ||
                    (priority_[j] == best_prio && frac > best_frac)) {
                    best_prio = priority_[j];
                    best_frac = frac;
                    branch_var = j;
                }
            }
        }
        if (branch_var < 0) {
            double worst = 1e-4; // both sides of a pair genuinely active
            for (const auto& h : hints_) {
                if (lbv[h.binary] == ubv[h.binary]) continue; // decided at this node
                const double mn = std::min(rel.x[h.zero_when_one], rel.x[h.zero_when_zero]);
                if (mn > worst) {
                    worst = mn;
                    branch_var = h.binary;
                }
            }
        }
        if (branch_var < 0) {
            // integral up to pair rounding: certify with a fixed-binary solve
            if (auto cand = try_candidate(rel.x)) {
                if (cand->obj < incumbent_obj) {
                    incumbent_obj = cand->obj;
                    incumbent_x = cand->x;
                }
                if (cand->obj <= node_bound + gap_slack(cand->obj)) continue; // closed
            }
            // certification failed or left a gap: branch on any undecided
            // binary to make progress, preferring the most active pair
            double mx = -1.0;
            for (const auto& h : hints_) {
                if (lbv[h.binary] == ubv[h.binary]) continue;
                const double mn = std::min(rel.x[h.zero_when_one], rel.x[h.zero_when_zero]);
                if (mn > mx) {
                    mx = mn;
                    branch_var = h.binary;
                }
            }
            if (branch_var < 0) {
                for (int j = 0; j < n && branch_var < 0; ++j)
                    if (model_.binary[j] && lbv[j] != ubv[j]) branch_var = j;
            }
            if (branch_var < 0) {
                // every binary is decided; the relaxation itself is integral
                if (rel.obj < incumbent_obj && rel.max_violation <= feas_tol) {
                    incumbent_obj = rel.obj;
                    incumbent_x = rel.x;
                    for (int j = 0; j < n; ++j)
                        if (model_.binary[j]) incumbent_x[j] = std::round(incumbent_x[j]);
                }
                continue;
            }
        }

        for (double side : {0.0, 1.0}) {
            Node child;
            child.bound = node_bound;
            child.depth = node.depth + 1;
            child.id = next_id++;
            child.fixes = node.fixes;
            child.fixes.push_back({branch_var, side, side});
            open.push(child);
        }
    }

    out.nodes = processed;
    if (hit_limit) {
        out.status = MilpStatus::TimeLimit;
        out.bound = std::min(best_open_bound, incumbent_obj);
        if (!incumbent_x.empty()) {
            out.obj = incumbent_obj;
            out.x = incumbent_x;
        }
        return out;
    }
    if (incumbent_x.empty()) {
        out.status = MilpStatus::Infeasible;
        return out;
    }
    out.status = MilpStatus::Optimal;
    out.obj = incumbent_obj;
    out.x = incumbent_x;
    out.bound = incumbent_obj;
    return out;
}

} // namespace lvdes::milp
