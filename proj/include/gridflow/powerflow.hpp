#pragma once

#include <Eigen/SparseLU>
#include <string>
#include <vector>

#include "gridflow/admittance.hpp"
#include "gridflow/network.hpp"
#include "gridflow/types.hpp"

namespace gridflow {

enum class PfMethod { Newton, GaussSeidel, FastDecoupled, DC };

struct PowerFlowOptions {
    PfMethod method = PfMethod::Newton;
    double tol = 1e-8;          // infinity norm of the p.u. mismatch
    int max_iter = -1;          // -1 = method default (30 NR, 1000 GS, 60 FDLF halves)
    bool flat_start = true;
    bool enforce_q_limits = false;

    int resolved_max_iter() const {
        if (max_iter > 0) return max_iter;
        switch (method) {
            case PfMethod::GaussSeidel: return 1000;
            case PfMethod::FastDecoupled: return 60;
            default: return 30;
        }
    }
};

struct PowerFlowSolution {
    RealVector vm;                 // p.u.
    RealVector va;                 // radians
    RealVector pg;                 // per generator, p.u. (slack recovered)
    RealVector qg;                 // per generator, p.u. (PV/slack recovered)
    ComplexVector sf, st;          // branch complex flows, p.u.
    RealVector losses;             // per-branch real losses, p.u.
    int iterations = 0;
    bool converged = false;
    std::vector<double> mismatch_history;
};

// Residual of the nodal balance equations, g = S_bus(V) + S_d - C_g S_g:
//   gp over PV and PQ buses (internal order), gq over PQ buses.
struct Mismatch {
    RealVector gp;
    RealVector gq;

    double inf_norm() const {
        double n = 0.0;
        for (Eigen::Index i = 0; i < gp.size(); ++i) n = std::max(n, std::abs(gp[i]));
        for (Eigen::Index i = 0; i < gq.size(); ++i) n = std::max(n, std::abs(gq[i]));
        return n;
    }
};

struct BranchFlows {
    ComplexVector sf, st;
    RealVector losses;
};

inline BranchFlows branch_flows(const Case& c, const RealVector& vm, const RealVector& va) {
    SystemMatrices m = build_system_matrices(c);
    IndexMap idx(c);
    ComplexVector v = polar_voltages(vm, va);
    ComplexVector if_ = (m.yf * v).conjugate();
    ComplexVector it_ = (m.yt * v).conjugate();
    BranchFlows fl;
    fl.sf.resize(c.n_branch());
    fl.st.resize(c.n_branch());
    fl.losses.resize(c.n_branch());
    for (std::size_t l = 0; l < c.n_branch(); ++l) {
        fl.sf[l] = v[idx(c.branches[l].from_bus)] * if_[l];
        fl.st[l] = v[idx(c.branches[l].to_bus)] * it_[l];
        fl.losses[l] = fl.sf[l].real() + fl.st[l].real();
    }
    return fl;
}

namespace pf_detail {

struct Context {
    IndexMap idx;
    SparseComplexMatrix ybus;
    std::vector<BusType> type;       // effective type per internal bus
    ComplexVector sched;             // C_g S_g - S_d per bus
    std::vector<int> pv, pq, non_slack, slack;

    explicit Context(const Case& c) : idx(c) {
        ybus = build_system_matrices(c).ybus;
        int nb = static_cast<int>(c.n_bus());
        type.resize(nb);
        sched = ComplexVector::Zero(nb);
        std::vector<bool> has_gen(nb, false);
        for (const Generator& g : c.generators) {
            if (!g.status) continue;
            int i = idx(g.bus);
            has_gen[i] = true;
            sched[i] += Complex(g.pg, g.qg);
        }
        for (int i = 0; i < nb; ++i) {
            sched[i] -= Complex(c.buses[i].pd, c.buses[i].qd);
            type[i] = c.buses[i].bus_type;
            // PV/slack buses without an in-service generator degrade to PQ
            if (type[i] != BusType::PQ && !has_gen[i]) type[i] = BusType::PQ;
        }
        rebuild_sets();
    }

    void rebuild_sets() {
        pv.clear(); pq.clear(); non_slack.clear(); slack.clear();
        for (std::size_t i = 0; i < type.size(); ++i) {
            switch (type[i]) {
                case BusType::Slack: slack.push_back(static_cast<int>(i)); break;
                case BusType::PV: pv.push_back(static_cast<int>(i)); non_slack.push_back(static_cast<int>(i)); break;
                case BusType::PQ: pq.push_back(static_cast<int>(i)); non_slack.push_back(static_cast<int>(i)); break;
            }
        }
    }

    ComplexVector complex_mismatch(const ComplexVector& v) const {
        return v.cwiseProduct((ybus * v).conjugate()) - sched;
    }

    Mismatch mismatch(const ComplexVector& v) const {
        ComplexVector g = complex_mismatch(v);
        Mismatch m;
        m.gp.resize(non_slack.size());
        m.gq.resize(pq.size());
        for (std::size_t k = 0; k < non_slack.size(); ++k) m.gp[k] = g[non_slack[k]].real();
        for (std::size_t k = 0; k < pq.size(); ++k) m.gq[k] = g[pq[k]].imag();
        return m;
    }
};

// Analytic partial derivatives of S_bus with respect to angles and magnitudes:
//   dS/dVa = j [V] conj([I_bus] - Y [V]);  dS/dVm = [V] conj(Y [Vnorm]) + conj([I_bus]) [Vnorm]
inline void injection_derivatives(const SparseComplexMatrix& ybus, const ComplexVector& v,
                                  SparseComplexMatrix& ds_dva, SparseComplexMatrix& ds_dvm) {
    Eigen::Index n = v.size();
    ComplexVector ibus = ybus * v;
    ComplexVector vnorm(n);
    for (Eigen::Index i = 0; i < n; ++i)
        vnorm[i] = std::abs(v[i]) > 0.0 ? v[i] / std::abs(v[i]) : Complex(1.0, 0.0);

    auto sparse_diag = [n](const ComplexVector& d) {
        SparseComplexMatrix m(n, n);
        std::vector<ComplexTriplet> t;
        t.reserve(n);
        for (Eigen::Index i = 0; i < n; ++i) t.emplace_back(i, i, d[i]);
        m.setFromTriplets(t.begin(), t.end());
        return m;
    };
    auto conjugate = [](SparseComplexMatrix m) {
        for (int col = 0; col < m.outerSize(); ++col)
            for (SparseComplexMatrix::InnerIterator it(m, col); it; ++it)
                it.valueRef() = std::conj(it.value());
        return m;
    };

    SparseComplexMatrix diag_v = sparse_diag(v);
    SparseComplexMatrix diag_jv = sparse_diag(Complex(0.0, 1.0) * v);
    SparseComplexMatrix diag_i = sparse_diag(ibus);
    SparseComplexMatrix diag_iconj = sparse_diag(ibus.conjugate());
    SparseComplexMatrix diag_vn = sparse_diag(vnorm);

    SparseComplexMatrix y_diag_v = ybus * diag_v;
    SparseComplexMatrix y_diag_vn = ybus * diag_vn;
    ds_dva = diag_jv * conjugate(SparseComplexMatrix(diag_i - y_diag_v));
    ds_dvm = diag_v * conjugate(y_diag_vn) + diag_iconj * diag_vn;
}

inline SparseRealMatrix reduce_jacobian(const SparseComplexMatrix& ds_dva,
                                        const SparseComplexMatrix& ds_dvm,
                                        const std::vector<int>& non_slack,
                                        const std::vector<int>& pq) {
    int n = static_cast<int>(ds_dva.rows());
    std::vector<int> row_p(n, -1), row_q(n, -1), col_a(n, -1), col_v(n, -1);
    int npvpq = static_cast<int>(non_slack.size());
    for (int k = 0; k < npvpq; ++k) { row_p[non_slack[k]] = k; col_a[non_slack[k]] = k; }
    for (std::size_t k = 0; k < pq.size(); ++k) {
        row_q[pq[k]] = npvpq + static_cast<int>(k);
        col_v[pq[k]] = npvpq + static_cast<int>(k);
    }
    int dim = npvpq + static_cast<int>(pq.size());
    std::vector<RealTriplet> t;
    for (int col = 0; col < n; ++col) {
        for (SparseComplexMatrix::InnerIterator it(ds_dva, col); it; ++it) {
            int r = static_cast<int>(it.row());
            if (col_a[col] < 0) continue;
            if (row_p[r] >= 0) t.emplace_back(row_p[r], col_a[col], it.value().real());
            if (row_q[r] >= 0) t.emplace_back(row_q[r], col_a[col], it.value().imag());
        }
        for (SparseComplexMatrix::InnerIterator it(ds_dvm, col); it; ++it) {
            int r = static_cast<int>(it.row());
            if (col_v[col] < 0) continue;
            if (row_p[r] >= 0) t.emplace_back(row_p[r], col_v[col], it.value().real());
            if (row_q[r] >= 0) t.emplace_back(row_q[r], col_v[col], it.value().imag());
        }
    }
    SparseRealMatrix j(dim, dim);
    j.setFromTriplets(t.begin(), t.end());
    return j;
}

inline ComplexVector start_voltages(const Case& c, const Context& ctx, bool flat) {
    int nb = static_cast<int>(c.n_bus());
    RealVector vm(nb), va(nb);
    double slack_angle = 0.0;
    for (int i = 0; i < nb; ++i)
        if (ctx.type[i] == BusType::Slack) slack_angle = c.buses[i].va;
    for (int i = 0; i < nb; ++i) {
        vm[i] = flat ? 1.0 : c.buses[i].vm;
        va[i] = flat ? slack_angle : c.buses[i].va;
        if (ctx.type[i] == BusType::Slack) va[i] = c.buses[i].va;
    }
    // PV/slack magnitudes pin to the first in-service generator setpoint
    for (const Generator& g : c.generators) {
        if (!g.status) continue;
        int i = ctx.idx(g.bus);
        if (ctx.type[i] != BusType::PQ) vm[i] = g.vg;
    }
    return polar_voltages(vm, va);
}

// Distribute recovered bus injections back onto generators: slack bus real
// imbalance goes to the first in-service slack generator; reactive output at
// PV/slack buses splits equally among in-service units.
inline void recover_generation(const Case& c, const Context& ctx, const ComplexVector& v,
                               PowerFlowSolution& sol) {
    ComplexVector sbus = v.cwiseProduct((ctx.ybus * v).conjugate());
    int ng = static_cast<int>(c.n_gen());
    sol.pg.resize(ng);
    sol.qg.resize(ng);
    std::vector<int> units_at(c.n_bus(), 0);
    for (const Generator& g : c.generators)
        if (g.status) ++units_at[ctx.idx(g.bus)];

    std::vector<bool> slack_assigned(c.n_bus(), false);
    for (int gi = 0; gi < ng; ++gi) {
        const Generator& g = c.generators[gi];
        sol.pg[gi] = g.status ? g.pg : 0.0;
        sol.qg[gi] = g.status ? g.qg : 0.0;
        if (!g.status) continue;
        int i = ctx.idx(g.bus);
        if (ctx.type[i] == BusType::Slack && !slack_assigned[i]) {
            // total required - other units' setpoints
            double others = 0.0;
            for (const Generator& h : c.generators)
                if (h.status && &h != &g && ctx.idx(h.bus) == i) others += h.pg;
            sol.pg[gi] = sbus[i].real() + c.buses[i].pd - others;
            slack_assigned[i] = true;
        }
        if (ctx.type[i] != BusType::PQ)
            sol.qg[gi] = (sbus[i].imag() + c.buses[i].qd) / units_at[i];
    }
}

inline void finalize_solution(const Case& c, const Context& ctx, const ComplexVector& v,
                              PowerFlowSolution& sol) {
    int nb = static_cast<int>(c.n_bus());
    sol.vm.resize(nb);
    sol.va.resize(nb);
    for (int i = 0; i < nb; ++i) {
        sol.vm[i] = std::abs(v[i]);
        sol.va[i] = std::arg(v[i]);
    }
    BranchFlows fl = branch_flows(c, sol.vm, sol.va);
    sol.sf = fl.sf;
    sol.st = fl.st;
    sol.losses = fl.losses;
    recover_generation(c, ctx, v, sol);
}

inline PowerFlowSolution solve_newton(const Case& c, Context& ctx, const PowerFlowOptions& opt) {
    PowerFlowSolution sol;
    ComplexVector v = start_voltages(c, ctx, opt.flat_start);
    int npvpq = static_cast<int>(ctx.non_slack.size());
    int npq = static_cast<int>(ctx.pq.size());

    Mismatch mis = ctx.mismatch(v);
    sol.mismatch_history.push_back(mis.inf_norm());
    int iter = 0;
    while (mis.inf_norm() > opt.tol && iter < opt.resolved_max_iter()) {
        SparseComplexMatrix ds_dva, ds_dvm;
        injection_derivatives(ctx.ybus, v, ds_dva, ds_dvm);
        SparseRealMatrix j = reduce_jacobian(ds_dva, ds_dvm, ctx.non_slack, ctx.pq);
        RealVector g(npvpq + npq);
        g << mis.gp, mis.gq;

        Eigen::SparseLU<SparseRealMatrix> lu;
        lu.compute(j);
        if (lu.info() != Eigen::Success)
            throw std::runtime_error("singular Jacobian in Newton power flow");
        RealVector dx = lu.solve(g);

        for (int k = 0; k < npvpq; ++k) {
            int i = ctx.non_slack[k];
            double vm = std::abs(v[i]), va = std::arg(v[i]);
            v[i] = std::polar(vm, va - dx[k]);
        }
        for (int k = 0; k < npq; ++k) {
            int i = ctx.pq[k];
            double vm = std::abs(v[i]), va = std::arg(v[i]);
            v[i] = std::polar(vm - dx[npvpq + k], va);
        }
        ++iter;
        mis = ctx.mismatch(v);
        sol.mismatch_history.push_back(mis.inf_norm());
    }
    sol.iterations = iter;
    sol.converged = mis.inf_norm() <= opt.tol;
    finalize_solution(c, ctx, v, sol);
    return sol;
}

inline PowerFlowSolution solve_gauss_seidel(const Case& c, Context& ctx,
                                            const PowerFlowOptions& opt) {
    PowerFlowSolution sol;
    ComplexVector v = start_voltages(c, ctx, opt.flat_start);
    Eigen::SparseMatrix<Complex, Eigen::RowMajor> y_rows = ctx.ybus;
    int nb = static_cast<int>(c.n_bus());
    RealVector vset(nb);
    for (int i = 0; i < nb; ++i) vset[i] = std::abs(v[i]);

    Mismatch mis = ctx.mismatch(v);
    sol.mismatch_history.push_back(mis.inf_norm());
    int iter = 0;
    while (mis.inf_norm() > opt.tol && iter < opt.resolved_max_iter()) {
        for (int i = 0; i < nb; ++i) {
            if (ctx.type[i] == BusType::Slack) continue;
            Complex row_sum = 0.0, y_ii = 0.0;
            for (Eigen::SparseMatrix<Complex, Eigen::RowMajor>::InnerIterator it(y_rows, i); it;
                 ++it) {
                if (it.col() == i) y_ii = it.value();
                else row_sum += it.value() * v[it.col()];
            }
            if (y_ii == Complex(0.0, 0.0)) continue;   // isolated bus, nothing to update
            Complex s = ctx.sched[i];
            if (ctx.type[i] == BusType::PV) {
                Complex full = row_sum + y_ii * v[i];
                double q = (v[i] * std::conj(full)).imag();
                s = Complex(s.real(), q);
            }
            Complex v_new = (std::conj(s / v[i]) - row_sum) / y_ii;
            if (ctx.type[i] == BusType::PV) v_new = std::polar(vset[i], std::arg(v_new));
            v[i] = v_new;
        }
        ++iter;
        mis = ctx.mismatch(v);
        sol.mismatch_history.push_back(mis.inf_norm());
    }
    sol.iterations = iter;
    sol.converged = mis.inf_norm() <= opt.tol;
    finalize_solution(c, ctx, v, sol);
    return sol;
}

// XB scheme: B' from the network with r = 0, charging and bus shunts dropped;
// B'' from the network with phase shifts removed.
inline PowerFlowSolution solve_fast_decoupled(const Case& c, Context& ctx,
                                              const PowerFlowOptions& opt) {
    Case cp = c;
    for (Branch& br : cp.branches) { br.r = 0.0; br.b = 0.0; }
    for (Bus& b : cp.buses) { b.gs = 0.0; b.bs = 0.0; }
    SparseComplexMatrix ybus_p = build_system_matrices(cp).ybus;

    Case cpp = c;
    for (Branch& br : cpp.branches) br.shift = 0.0;
    SparseComplexMatrix ybus_pp = build_system_matrices(cpp).ybus;

    auto reduce = [](const SparseComplexMatrix& y, const std::vector<int>& sel) {
        int n = static_cast<int>(y.rows());
        std::vector<int> pos(n, -1);
        for (std::size_t k = 0; k < sel.size(); ++k) pos[sel[k]] = static_cast<int>(k);
        std::vector<RealTriplet> t;
        for (int col = 0; col < n; ++col)
            for (SparseComplexMatrix::InnerIterator it(y, col); it; ++it)
                if (pos[it.row()] >= 0 && pos[col] >= 0)
                    t.emplace_back(pos[it.row()], pos[col], -it.value().imag());
        SparseRealMatrix b(static_cast<int>(sel.size()), static_cast<int>(sel.size()));
        b.setFromTriplets(t.begin(), t.end());
        return b;
    };

    SparseRealMatrix bp = reduce(ybus_p, ctx.non_slack);
    SparseRealMatrix bpp = reduce(ybus_pp, ctx.pq);
    Eigen::SparseLU<SparseRealMatrix> lu_p, lu_pp;
    if (!ctx.non_slack.empty()) {
        lu_p.compute(bp);
        if (lu_p.info() != Eigen::Success)
            throw std::runtime_error("singular B' matrix in fast-decoupled power flow");
    }
    if (!ctx.pq.empty()) {
        lu_pp.compute(bpp);
        if (lu_pp.info() != Eigen::Success)
            throw std::runtime_error("singular B'' matrix in fast-decoupled power flow");
    }

    PowerFlowSolution sol;
    ComplexVector v = start_voltages(c, ctx, opt.flat_start);
    Mismatch mis = ctx.mismatch(v);
    sol.mismatch_history.push_back(mis.inf_norm());
    int half = 0;
    while (mis.inf_norm() > opt.tol && half < opt.resolved_max_iter()) {
        if (half % 2 == 0 && !ctx.non_slack.empty()) {
            RealVector p(ctx.non_slack.size());
            for (std::size_t k = 0; k < ctx.non_slack.size(); ++k)
                p[k] = mis.gp[k] / std::abs(v[ctx.non_slack[k]]);
            RealVector dva = lu_p.solve(p);
            for (std::size_t k = 0; k < ctx.non_slack.size(); ++k) {
                int i = ctx.non_slack[k];
                v[i] = std::polar(std::abs(v[i]), std::arg(v[i]) - dva[k]);
            }
        } else if (half % 2 == 1 && !ctx.pq.empty()) {
            RealVector q(ctx.pq.size());
            for (std::size_t k = 0; k < ctx.pq.size(); ++k)
                q[k] = mis.gq[k] / std::abs(v[ctx.pq[k]]);
            RealVector dvm = lu_pp.solve(q);
            for (std::size_t k = 0; k < ctx.pq.size(); ++k) {
                int i = ctx.pq[k];
                v[i] = std::polar(std::abs(v[i]) - dvm[k], std::arg(v[i]));
            }
        }
        ++half;
        mis = ctx.mismatch(v);
        sol.mismatch_history.push_back(mis.inf_norm());
    }
    sol.iterations = half;
    sol.converged = mis.inf_norm() <= opt.tol;
    finalize_solution(c, ctx, v, sol);
    return sol;
}

} // namespace pf_detail

inline Mismatch compute_mismatch(const Case& c, const RealVector& vm, const RealVector& va) {
    pf_detail::Context ctx(c);
    return ctx.mismatch(polar_voltages(vm, va));
}

// Jacobian of [gp; gq] with respect to [theta at non-slack; vm at PQ].
inline SparseRealMatrix compute_jacobian(const Case& c, const RealVector& vm,
                                         const RealVector& va) {
    pf_detail::Context ctx(c);
    ComplexVector v = polar_voltages(vm, va);
    SparseComplexMatrix ds_dva, ds_dvm;
    pf_detail::injection_derivatives(ctx.ybus, v, ds_dva, ds_dvm);
    return pf_detail::reduce_jacobian(ds_dva, ds_dvm, ctx.non_slack, ctx.pq);
}

// Linearized lossless power flow: B theta = P_sched - P_shift, slack angles
// fixed, all magnitudes 1.
inline PowerFlowSolution solve_dc(const Case& c) {
    IndexMap idx(c);
    int nb = static_cast<int>(c.n_bus());
    int nl = static_cast<int>(c.n_branch());

    std::vector<RealTriplet> tb;
    RealVector p_shift = RealVector::Zero(nb);
    std::vector<double> bl(nl, 0.0);
    for (int l = 0; l < nl; ++l) {
        const Branch& br = c.branches[l];
        if (!br.status) continue;
        if (br.x == 0.0)
            throw std::invalid_argument("zero reactance branch in DC power flow");
        double tau = br.tap == 0.0 ? 1.0 : br.tap;
        double b = 1.0 / (br.x * tau);
        bl[l] = b;
        int f = idx(br.from_bus), t = idx(br.to_bus);
        tb.emplace_back(f, f, b);
        tb.emplace_back(f, t, -b);
        tb.emplace_back(t, f, -b);
        tb.emplace_back(t, t, b);
        p_shift[f] -= b * br.shift;
        p_shift[t] += b * br.shift;
    }
    SparseRealMatrix bbus = assemble(nb, nb, tb);

    RealVector p_sched = RealVector::Zero(nb);
    for (const Generator& g : c.generators)
        if (g.status) p_sched[idx(g.bus)] += g.pg;
    for (int i = 0; i < nb; ++i) p_sched[i] -= c.buses[i].pd + c.buses[i].gs;

    std::vector<int> ns;
    std::vector<int> pos(nb, -1);
    RealVector va = RealVector::Zero(nb);
    for (int i = 0; i < nb; ++i) {
        if (c.buses[i].bus_type == BusType::Slack) va[i] = c.buses[i].va;
        else { pos[i] = static_cast<int>(ns.size()); ns.push_back(i); }
    }

    std::vector<RealTriplet> tr;
    RealVector rhs(ns.size());
    for (std::size_t k = 0; k < ns.size(); ++k) rhs[k] = p_sched[ns[k]] - p_shift[ns[k]];
    for (int col = 0; col < nb; ++col)
        for (SparseRealMatrix::InnerIterator it(bbus, col); it; ++it) {
            int r = static_cast<int>(it.row());
            if (pos[r] < 0) continue;
            if (pos[col] >= 0) tr.emplace_back(pos[r], pos[col], it.value());
            else rhs[pos[r]] -= it.value() * va[col];
        }
    SparseRealMatrix b_red(static_cast<int>(ns.size()), static_cast<int>(ns.size()));
    b_red.setFromTriplets(tr.begin(), tr.end());

    if (!ns.empty()) {
        Eigen::SparseLU<SparseRealMatrix> lu;
        lu.compute(b_red);
        if (lu.info() != Eigen::Success)
            throw std::runtime_error("singular B matrix in DC power flow (island without slack?)");
        RealVector theta = lu.solve(rhs);
        for (std::size_t k = 0; k < ns.size(); ++k) va[ns[k]] = theta[k];
    }

    PowerFlowSolution sol;
    sol.converged = true;
    sol.iterations = 1;
    sol.vm = RealVector::Ones(nb);
    sol.va = va;
    sol.sf.resize(nl);
    sol.st.resize(nl);
    sol.losses = RealVector::Zero(nl);
    for (int l = 0; l < nl; ++l) {
        const Branch& br = c.branches[l];
        double pf = 0.0;
        if (br.status)
            pf = bl[l] * (va[idx(br.from_bus)] - va[idx(br.to_bus)] - br.shift);
        sol.sf[l] = Complex(pf, 0.0);
        sol.st[l] = Complex(-pf, 0.0);
    }

    // slack generation balances its bus exactly
    RealVector p_bus = bbus * va + p_shift;
    int ng = static_cast<int>(c.n_gen());
    sol.pg.resize(ng);
    sol.qg = RealVector::Zero(ng);
    std::vector<bool> slack_assigned(nb, false);
    for (int gi = 0; gi < ng; ++gi) {
        const Generator& g = c.generators[gi];
        sol.pg[gi] = g.status ? g.pg : 0.0;
        if (!g.status) continue;
        int i = idx(g.bus);
        if (c.buses[i].bus_type == BusType::Slack && !slack_assigned[i]) {
            double others = 0.0;
            for (const Generator& h : c.generators)
                if (h.status && &h != &g && idx(h.bus) == i) others += h.pg;
            sol.pg[gi] = p_bus[i] + c.buses[i].pd + c.buses[i].gs - others;
            slack_assigned[i] = true;
        }
    }
    return sol;
}

inline PowerFlowSolution solve(const Case& c, const PowerFlowOptions& opt = {}) {
    if (opt.method == PfMethod::DC) return solve_dc(c);

    pf_detail::Context ctx(c);
    auto run = [&](pf_detail::Context& context) {
        switch (opt.method) {
            case PfMethod::GaussSeidel: return pf_detail::solve_gauss_seidel(c, context, opt);
            case PfMethod::FastDecoupled: return pf_detail::solve_fast_decoupled(c, context, opt);
            default: return pf_detail::solve_newton(c, context, opt);
        }
    };

    PowerFlowSolution sol = run(ctx);
    if (!opt.enforce_q_limits) return sol;

    // buses whose reactive output has been pinned to a violated limit
    std::vector<double> pinned(c.n_bus(), std::numeric_limits<double>::quiet_NaN());
    auto apply_pinned = [&](PowerFlowSolution& s) {
        for (std::size_t i = 0; i < c.n_bus(); ++i) {
            if (std::isnan(pinned[i])) continue;
            int units = 0;
            for (const Generator& g : c.generators)
                if (g.status && ctx.idx(g.bus) == static_cast<int>(i)) ++units;
            for (std::size_t gi = 0; gi < c.n_gen(); ++gi)
                if (c.generators[gi].status && ctx.idx(c.generators[gi].bus) == static_cast<int>(i))
                    s.qg[gi] = pinned[i] / units;
        }
    };

    // PV -> PQ switching, one bus per outer pass, lowest internal index first.
    for (std::size_t pass = 0; pass < c.n_bus() && sol.converged; ++pass) {
        int worst = -1;
        double pinned_q = 0.0;
        for (int i : ctx.pv) {
            double qmin = 0.0, qmax = 0.0, q = 0.0;
            for (std::size_t gi = 0; gi < c.n_gen(); ++gi) {
                const Generator& g = c.generators[gi];
                if (!g.status || ctx.idx(g.bus) != i) continue;
                qmin += g.qmin;
                qmax += g.qmax;
                q += sol.qg[gi];
            }
            if (q < qmin - 1e-9) { worst = i; pinned_q = qmin; break; }
            if (q > qmax + 1e-9) { worst = i; pinned_q = qmax; break; }
        }
        if (worst < 0) break;
        ctx.type[worst] = BusType::PQ;
        ctx.sched[worst] = Complex(ctx.sched[worst].real(),
                                   pinned_q - c.buses[worst].qd);
        pinned[worst] = pinned_q;
        ctx.rebuild_sets();
        sol = run(ctx);
        apply_pinned(sol);
    }
    return sol;
}

} // namespace gridflow
