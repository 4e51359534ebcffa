#include "lvdes/lp/interior_point.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <limits>

namespace lvdes::lp {

double Model::violation(const std::vector<double>& x) const {
    double worst = 0.0;
    for (int j = 0; j < num_vars(); ++j) {
        if (std::isfinite(lb[j])) worst = std::max(worst, lb[j] - x[j]);
        if (std::isfinite(ub[j])) worst = std::max(worst, x[j] - ub[j]);
    }
    for (int i = 0; i < num_rows(); ++i) {
        double a = 0.0;
        for (const Term& t : rows[i]) a += t.coef * x[t.var];
        if (std::isfinite(row_lb[i])) worst = std::max(worst, row_lb[i] - a);
        if (std::isfinite(row_ub[i])) worst = std::max(worst, a - row_ub[i]);
    }
    return worst;
}

double Model::objective(const std::vector<double>& x) const {
    double v = obj_constant;
    for (int j = 0; j < num_vars(); ++j) v += obj[j] * x[j];
    return v;
}

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

struct Standardized {
    int n = 0; // kept variables + slacks
    SpMat A;   // m x n, scaled
    Vec b, c, l, u;
    // mapping back: value of original var j = fixed[j] if is_fixed[j], else
    // col_scale[v_of[j]] * v[v_of[j]]
    std::vector<int> v_of;
    std::vector<bool> is_fixed;
    std::vector<double> fixed;
    Vec col_scale;
    bool infeasible_by_bounds = false;
};

Standardized standardize(const Model& model, const std::vector<double>* lbo,
                         const std::vector<double>* ubo) {
    const int nx = model.num_vars();
    Standardized s;
    s.v_of.assign(nx, -1);
    s.is_fixed.assign(nx, false);
    s.fixed.assign(nx, 0.0);

    std::vector<double> lo(nx), hi(nx);
    for (int j = 0; j < nx; ++j) {
        lo[j] = lbo ? (*lbo)[j] : model.lb[j];
        hi[j] = ubo ? (*ubo)[j] : model.ub[j];
        if (lo[j] > hi[j] + 1e-12) {
            s.infeasible_by_bounds = true;
            return s;
        }
    }

    std::vector<double> vl, vu;
    for (int j = 0; j < nx; ++j) {
        if (hi[j] - lo[j] < 1e-12) {
            s.is_fixed[j] = true;
            s.fixed[j] = 0.5 * (lo[j] + hi[j]);
        } else {
            s.v_of[j] = static_cast<int>(vl.size());
            vl.push_back(lo[j]);
            vu.push_back(hi[j]);
        }
    }

    struct RowTmp {
        std::vector<Term> terms; // over v indices
        double lo, hi;
    };
    std::vector<RowTmp> rows;
    rows.reserve(model.num_rows());
    for (int i = 0; i < model.num_rows(); ++i) {
        RowTmp r;
        double shift = 0.0;
        for (const Term& t : model.rows[i]) {
            if (s.is_fixed[t.var])
                shift += t.coef * s.fixed[t.var];
            else
                r.terms.push_back({s.v_of[t.var], t.coef});
        }
        r.lo = std::isfinite(model.row_lb[i]) ? model.row_lb[i] - shift : -kInf;
        r.hi = std::isfinite(model.row_ub[i]) ? model.row_ub[i] - shift : kInf;
        if (r.terms.empty()) {
            const double scale = 1.0 + std::abs(shift);
            if (r.lo > 1e-9 * scale || r.hi < -1e-9 * scale) {
                s.infeasible_by_bounds = true;
                return s;
            }
            continue;
        }
        rows.push_back(std::move(r));
    }

    const int m = static_cast<int>(rows.size());
    // slacks for non-equality rows
    std::vector<double> bvec(m, 0.0);
    std::vector<int> slack_of(m, -1);
    for (int i = 0; i < m; ++i) {
        if (std::isfinite(rows[i].lo) && std::isfinite(rows[i].hi) &&
            rows[i].hi - rows[i].lo < 1e-12) {
            bvec[i] = 0.5 * (rows[i].lo + rows[i].hi);
        } else {
            slack_of[i] = static_cast<int>(vl.size());
            vl.push_back(rows[i].lo);
            vu.push_back(rows[i].hi);
        }
    }

    s.n = static_cast<int>(vl.size());
    s.l = Eigen::Map<Vec>(vl.data(), s.n);
    s.u = Eigen::Map<Vec>(vu.data(), s.n);
    s.b = Eigen::Map<Vec>(bvec.data(), m);
    s.c = Vec::Zero(s.n);
    for (int j = 0; j < nx; ++j)
        if (!s.is_fixed[j]) s.c[s.v_of[j]] = model.obj[j];

    std::vector<Eigen::Triplet<double>> trips;
    for (int i = 0; i < m; ++i) {
        for (const Term& t : rows[i]) trips.emplace_back(i, t.var, t.coef);
        if (slack_of[i] >= 0) trips.emplace_back(i, slack_of[i], -1.0);
    }
    s.A.resize(m, s.n);
    s.A.setFromTriplets(trips.begin(), trips.end());

    // one-pass row/column equilibration
    Vec row_scale = Vec::Ones(m);
    for (int i = 0; i < m; ++i) {
        double mx = 0.0;
        for (const Term& t : rows[i]) mx = std::max(mx, std::abs(t.coef));
        if (mx > 0.0) row_scale[i] = 1.0 / mx;
    }
    s.col_scale = Vec::Ones(s.n);
    {
        Vec colmax = Vec::Zero(s.n);
        for (int k = 0; k < s.A.outerSize(); ++k)
            for (SpMat::InnerIterator it(s.A, k); it; ++it)
                colmax[it.col()] = std::max(colmax[it.col()],
                                            std::abs(it.value()) * row_scale[it.row()]);
        for (int j = 0; j < s.n; ++j)
            if (colmax[j] > 0.0) s.col_scale[j] = 1.0 / colmax[j];
    }
    // apply scaling: A <- R A S, b <- R b, c <- S c, bounds <- bounds / S
    for (int k = 0; k < s.A.outerSize(); ++k)
        for (SpMat::InnerIterator it(s.A, k); it; ++it)
            it.valueRef() *= row_scale[it.row()] * s.col_scale[it.col()];
    s.b = row_scale.cwiseProduct(s.b);
    for (int j = 0; j < s.n; ++j) {
        s.c[j] *= s.col_scale[j];
        if (std::isfinite(s.l[j])) s.l[j] /= s.col_scale[j];
        if (std::isfinite(s.u[j])) s.u[j] /= s.col_scale[j];
    }
    return s;
}

struct CoreResult {
    LpStatus status = LpStatus::Error;
    Vec v;
    double obj = 0.0; // scaled objective, no constant
    int iterations = 0;
    double primal_res = kInf;
};

/// Mehrotra predictor-corrector on: min c'v, Av = b, l <= v <= u.
CoreResult ipm_core(const SpMat& A, const Vec& b, const Vec& c, const Vec& l,
                    const Vec& u, const IpmOptions& opts, const Vec* v_init) {
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());
    CoreResult res;

    std::vector<bool> has_l(n), has_u(n);
    for (int j = 0; j < n; ++j) {
        has_l[j] = std::isfinite(l[j]);
        has_u[j] = std::isfinite(u[j]);
    }
    int n_terms = 0;
    for (int j = 0; j < n; ++j) n_terms += (has_l[j] ? 1 : 0) + (has_u[j] ? 1 : 0);

    Vec v(n);
    for (int j = 0; j < n; ++j) {
        if (has_l[j] && has_u[j]) v[j] = 0.5 * (l[j] + u[j]);
        else if (has_l[j]) v[j] = l[j] + 1.0 + 0.1 * std::abs(l[j]);
        else if (has_u[j]) v[j] = u[j] - 1.0 - 0.1 * std::abs(u[j]);
        else v[j] = 0.0;
    }
    if (v_init) {
        for (int j = 0; j < n; ++j) {
            double x = (*v_init)[j];
            if (has_l[j] && has_u[j]) {
                const double pad = 1e-4 * (u[j] - l[j]);
                x = std::clamp(x, l[j] + pad, u[j] - pad);
            } else if (has_l[j]) {
                x = std::max(x, l[j] + 1e-4 * (1.0 + std::abs(l[j])));
            } else if (has_u[j]) {
                x = std::min(x, u[j] - 1e-4 * (1.0 + std::abs(u[j])));
            }
            v[j] = x;
        }
    }
    Vec y = Vec::Zero(m);
    Vec zl = Vec::Ones(n), zu = Vec::Ones(n);
    for (int j = 0; j < n; ++j) {
        if (!has_l[j]) zl[j] = 0.0;
        if (!has_u[j]) zu[j] = 0.0;
    }

    const double bnorm = 1.0 + b.cwiseAbs().maxCoeff();
    const double cnorm = 1.0 + (n > 0 ? c.cwiseAbs().maxCoeff() : 0.0);

    Eigen::SimplicialLDLT<SpMat> chol;
    bool analyzed = false;
    double delta = 1e-10;

    Vec g(n), w(n), D(n);
    Vec dv(n), dy(m), dzl(n), dzu(n);
    Vec dv_aff(n), dzl_aff(n), dzu_aff(n);

    double best_progress = kInf;
    int stall = 0;

    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        res.iterations = iter + 1;
        for (int j = 0; j < n; ++j) {
            g[j] = has_l[j] ? v[j] - l[j] : 1.0;
            w[j] = has_u[j] ? u[j] - v[j] : 1.0;
        }
        Vec rp = b - A * v;
        Vec rd = c - A.transpose() * y - zl + zu;
        double mu = 0.0;
        for (int j = 0; j < n; ++j) {
            if (has_l[j]) mu += g[j] * zl[j];
            if (has_u[j]) mu += w[j] * zu[j];
        }
        if (n_terms > 0) mu /= n_terms;

        const double pobj = c.dot(v);
        const double pr = rp.cwiseAbs().maxCoeff() / bnorm;
        const double dr = rd.cwiseAbs().maxCoeff() / cnorm;
        const double cq = mu / (1.0 + std::abs(pobj));
        res.primal_res = pr;

        if (pr < opts.tol && dr < opts.tol && cq < opts.tol) {
            res.status = LpStatus::Optimal;
            res.v = v;
            res.obj = pobj;
            return res;
        }
        const double progress = std::max({pr, dr, cq});
        if (progress < best_progress * 0.95) {
            best_progress = std::min(best_progress, progress);
            stall = 0;
        } else if (++stall > 12) {
            break; // classify below
        }
        if (v.cwiseAbs().maxCoeff() > 1e13) break;

        for (int j = 0; j < n; ++j) {
            double q = 0.0;
            if (has_l[j]) q += zl[j] / g[j];
            if (has_u[j]) q += zu[j] / w[j];
            D[j] = (q > 1e-12) ? 1.0 / q : 1e12;
        }

        SpMat M = A * D.asDiagonal() * SpMat(A.transpose());
        for (int i = 0; i < m; ++i) M.coeffRef(i, i) += delta;
        if (!analyzed) {
            chol.analyzePattern(M);
            analyzed = true;
        }
        chol.factorize(M);
        int bumps = 0;
        while (chol.info() != Eigen::Success && bumps < 6) {
            delta *= 100.0;
            for (int i = 0; i < m; ++i) M.coeffRef(i, i) += delta;
            chol.factorize(M);
            ++bumps;
        }
        if (chol.info() != Eigen::Success) {
            res.status = LpStatus::Error;
            res.v = v;
            return res;
        }
        auto solve_newton = [&](const Vec& rcl, const Vec& rcu, Vec& odv, Vec& ody,
                                Vec& odzl, Vec& odzu) {
            Vec rhat(n);
            for (int j = 0; j < n; ++j) {
                double t = rd[j];
                if (has_l[j]) t -= rcl[j] / g[j];
                if (has_u[j]) t += rcu[j] / w[j];
                rhat[j] = t;
            }
            Vec rhs = rp + A * (D.asDiagonal() * rhat);
            ody = chol.solve(rhs);
            ody += chol.solve(rhs - M * ody); // one refinement pass
            odv = D.asDiagonal() * (A.transpose() * ody - rhat);
            for (int j = 0; j < n; ++j) {
                odzl[j] = has_l[j] ? (rcl[j] - zl[j] * odv[j]) / g[j] : 0.0;
                odzu[j] = has_u[j] ? (rcu[j] + zu[j] * odv[j]) / w[j] : 0.0;
            }
        };
        auto max_steps = [&](const Vec& odv, const Vec& odzl, const Vec& odzu,
                             double& ap, double& ad) {
            ap = 1.0;
            ad = 1.0;
            for (int j = 0; j < n; ++j) {
                if (has_l[j] && odv[j] < 0) ap = std::min(ap, -g[j] / odv[j]);
                if (has_u[j] && odv[j] > 0) ap = std::min(ap, w[j] / odv[j]);
                if (has_l[j] && odzl[j] < 0) ad = std::min(ad, -zl[j] / odzl[j]);
                if (has_u[j] && odzu[j] < 0) ad = std::min(ad, -zu[j] / odzu[j]);
            }
        };

        // predictor
        Vec rcl(n), rcu(n);
        for (int j = 0; j < n; ++j) {
            rcl[j] = has_l[j] ? -g[j] * zl[j] : 0.0;
            rcu[j] = has_u[j] ? -w[j] * zu[j] : 0.0;
        }
        solve_newton(rcl, rcu, dv_aff, dy, dzl_aff, dzu_aff);
        double ap, ad;
        max_steps(dv_aff, dzl_aff, dzu_aff, ap, ad);
        double mu_aff = 0.0;
        for (int j = 0; j < n; ++j) {
            if (has_l[j]) mu_aff += (g[j] + ap * dv_aff[j]) * (zl[j] + ad * dzl_aff[j]);
            if (has_u[j]) mu_aff += (w[j] - ap * dv_aff[j]) * (zu[j] + ad * dzu_aff[j]);
        }
        if (n_terms > 0) mu_aff /= n_terms;
        const double sigma =
            std::clamp(std::pow(std::max(mu_aff, 0.0) / std::max(mu, 1e-300), 3.0), 1e-8, 1.0);

        // corrector
        for (int j = 0; j < n; ++j) {
            rcl[j] = has_l[j] ? sigma * mu - g[j] * zl[j] - dv_aff[j] * dzl_aff[j] : 0.0;
            rcu[j] = has_u[j] ? sigma * mu - w[j] * zu[j] + dv_aff[j] * dzu_aff[j] : 0.0;
        }
        solve_newton(rcl, rcu, dv, dy, dzl, dzu);
        max_steps(dv, dzl, dzu, ap, ad);
        ap = std::min(1.0, 0.9995 * ap);
        ad = std::min(1.0, 0.9995 * ad);

        v += ap * dv;
        y += ad * dy;
        for (int j = 0; j < n; ++j) {
            if (has_l[j]) zl[j] = std::max(zl[j] + ad * dzl[j], 1e-300);
            if (has_u[j]) zu[j] = std::max(zu[j] + ad * dzu[j], 1e-300);
        }
    }

    res.status = LpStatus::IterationLimit;
    res.v = v;
    res.obj = c.dot(v);
    return res;
}

/// min sum of row-residual magnitudes; decides feasibility.
double phase1_min_infeasibility(const Standardized& s, const IpmOptions& opts, Vec* v_out) {
    const int m = static_cast<int>(s.A.rows());
    const int n = s.n;
    SpMat A2(m, 2 * m + n);
    std::vector<Eigen::Triplet<double>> trips;
    for (int k = 0; k < s.A.outerSize(); ++k)
        for (SpMat::InnerIterator it(s.A, k); it; ++it)
            trips.emplace_back(it.row(), it.col(), it.value());
    for (int i = 0; i < m; ++i) {
        trips.emplace_back(i, n + i, 1.0);
        trips.emplace_back(i, n + m + i, -1.0);
    }
    A2.setFromTriplets(trips.begin(), trips.end());
    Vec c2 = Vec::Zero(2 * m + n);
    Vec l2(2 * m + n), u2(2 * m + n);
    for (int j = 0; j < n; ++j) {
        c2[j] = 0.0;
        l2[j] = s.l[j];
        u2[j] = s.u[j];
    }
    for (int i = 0; i < 2 * m; ++i) {
        c2[n + i] = 1.0;
        l2[n + i] = 0.0;
        u2[n + i] = kInf;
    }
    IpmOptions p1 = opts;
    p1.tol = 1e-10;
    const CoreResult r = ipm_core(A2, s.b, c2, l2, u2, p1, nullptr);
    if (v_out && r.v.size() >= n) *v_out = r.v.head(n);
    if (r.status == LpStatus::Optimal || r.status == LpStatus::IterationLimit)
        return std::max(0.0, r.obj);
    return kInf;
}

} // namespace

LpResult solve_lp(const Model& model, const IpmOptions& opts,
                  const std::vector<double>* lb_override,
                  const std::vector<double>* ub_override) {
    LpResult out;
    const Standardized s = standardize(model, lb_override, ub_override);
    if (s.infeasible_by_bounds) {
        out.status = LpStatus::Infeasible;
        return out;
    }

    auto reconstruct = [&](const Vec& v) {
        std::vector<double> x(model.num_vars());
        for (int j = 0; j < model.num_vars(); ++j)
            x[j] = s.is_fixed[j] ? s.fixed[j] : s.col_scale[s.v_of[j]] * v[s.v_of[j]];
        return x;
    };

    if (s.A.rows() == 0) {
        // no rows: minimize each variable independently over its bounds
        Vec v(s.n);
        for (int j = 0; j < s.n; ++j) {
            if (s.c[j] > 0.0)
                v[j] = std::isfinite(s.l[j]) ? s.l[j] : 0.0;
            else if (s.c[j] < 0.0)
                v[j] = std::isfinite(s.u[j]) ? s.u[j] : 0.0;
            else
                v[j] = std::clamp(0.0, std::isfinite(s.l[j]) ? s.l[j] : 0.0,
                                  std::isfinite(s.u[j]) ? s.u[j] : 0.0);
        }
        out.x = reconstruct(v);
        out.obj = model.objective(out.x);
        out.max_violation = model.violation(out.x);
        out.status = LpStatus::Optimal;
        return out;
    }

    CoreResult r = ipm_core(s.A, s.b, s.c, s.l, s.u, opts, nullptr);
    if (r.status != LpStatus::Optimal) {
        // classify: feasible but stalled, or genuinely infeasible
        Vec v1;
        const double infeas = phase1_min_infeasibility(s, opts, &v1);
        const double bscale = 1.0 + s.b.cwiseAbs().maxCoeff();
        if (infeas > opts.infeasibility_tol * bscale) {
            out.status = LpStatus::Infeasible;
            out.iterations = r.iterations;
            return out;
        }
        // retry once from the phase-1 point
        IpmOptions retry = opts;
        retry.max_iterations = opts.max_iterations * 2;
        r = ipm_core(s.A, s.b, s.c, s.l, s.u, retry, &v1);
    }

    out.iterations = r.iterations;
    if (r.status == LpStatus::Optimal || r.status == LpStatus::IterationLimit) {
        out.x = reconstruct(r.v);
        out.obj = model.objective(out.x);
        out.max_violation = model.violation(out.x);
        out.status = r.status;
    } else {
        out.status = LpStatus::Error;
    }
    return out;
}

} // namespace lvdes::lp
