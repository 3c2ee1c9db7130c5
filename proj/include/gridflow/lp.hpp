#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "gridflow/types.hpp"

namespace gridflow {

enum class RowSense { Equal, LessEqual, GreaterEqual };
enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

// Bounded-variable linear program:  min c'x  s.t. rows, lb <= x <= ub.
class LinearProgram {
public:
    struct Row {
        std::vector<std::pair<int, double>> coeffs;
        RowSense sense;
        double rhs;
        std::string name;
    };

    int add_variable(double lb, double ub, double cost, std::string name = "") {
        lb_.push_back(lb);
        ub_.push_back(ub);
        cost_.push_back(cost);
        var_names_.push_back(name.empty() ? "x" + std::to_string(lb_.size() - 1) : std::move(name));
        return static_cast<int>(lb_.size()) - 1;
    }

    int add_row(std::vector<std::pair<int, double>> coeffs, RowSense sense, double rhs,
                std::string name = "") {
        for (const auto& [j, v] : coeffs) {
            (void)v;
            if (j < 0 || j >= n_vars())
                throw std::invalid_argument("LP row references unknown variable " +
                                            std::to_string(j));
        }
        rows_.push_back({std::move(coeffs), sense, rhs,
                         name.empty() ? "r" + std::to_string(rows_.size()) : std::move(name)});
        return static_cast<int>(rows_.size()) - 1;
    }

    int n_vars() const { return static_cast<int>(lb_.size()); }
    int n_rows() const { return static_cast<int>(rows_.size()); }
    const std::vector<Row>& rows() const { return rows_; }
    const std::vector<double>& lower() const { return lb_; }
    const std::vector<double>& upper() const { return ub_; }
    const std::vector<double>& costs() const { return cost_; }
    const std::string& var_name(int j) const { return var_names_.at(j); }
    const std::string& row_name(int i) const { return rows_.at(i).name; }

    double& cost(int j) { return cost_.at(j); }
    double& lower(int j) { return lb_.at(j); }
    double& upper(int j) { return ub_.at(j); }

private:
    std::vector<double> lb_, ub_, cost_;
    std::vector<std::string> var_names_;
    std::vector<Row> rows_;
};

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    std::vector<double> x;          // structural variable values
    double objective = 0.0;
    std::vector<double> duals;      // one per row, equality and inequality alike
    int iterations = 0;

    bool optimal() const { return status == LpStatus::Optimal; }
};

namespace lp_detail {

constexpr double kFeasTol = 1e-9;
constexpr double kOptTol = 1e-9;
constexpr double kPivotTol = 1e-10;
constexpr long kMaxIterations = 1000000;
constexpr int kStallLimit = 200;     // engage Bland's rule after this many stalled pivots
constexpr int kRefactorEvery = 100;

// Free = nonbasic free variable sitting at 0.
enum class VarState : unsigned char { Basic, AtLower, AtUpper, Free };

// Dense bounded-variable revised simplex over the expanded system
// A x + I s + D a = rhs. B^{-1} is kept explicitly (product-form updates,
// periodic full refactorization).
class Simplex {
public:
    Simplex(Eigen::MatrixXd a, Eigen::VectorXd rhs, std::vector<double> lb,
            std::vector<double> ub)
        : a_(std::move(a)), rhs_(std::move(rhs)), lb_(std::move(lb)), ub_(std::move(ub)),
          m_(static_cast<int>(a_.rows())), n_(static_cast<int>(a_.cols())) {}

    void set_basis(std::vector<int> basis, std::vector<VarState> state) {
        basis_ = std::move(basis);
        state_ = std::move(state);
        refactorize();
        compute_basic_values();
    }

    LpStatus optimize(const Eigen::VectorXd& cost, long& iterations) {
        cost_ = cost;
        int stalled = 0;
        double last_obj = objective();
        while (iterations < kMaxIterations) {
            bool bland = stalled >= kStallLimit;
            Eigen::VectorXd y = dual_prices();

            int enter = -1;
            double enter_sigma = 1.0;
            double best = 0.0;
            for (int j = 0; j < n_; ++j) {
                if (state_[j] == VarState::Basic || lb_[j] == ub_[j]) continue;
                double d = cost_[j] - y.dot(a_.col(j));
                double viol = 0.0, sigma = 1.0;
                switch (state_[j]) {
                    case VarState::AtLower:
                        if (d < -kOptTol) { viol = -d; sigma = 1.0; }
                        break;
                    case VarState::AtUpper:
                        if (d > kOptTol) { viol = d; sigma = -1.0; }
                        break;
                    case VarState::Free:
                        if (std::abs(d) > kOptTol) { viol = std::abs(d); sigma = d < 0.0 ? 1.0 : -1.0; }
                        break;
                    default: break;
                }
                if (viol > 0.0) {
                    if (bland) { enter = j; enter_sigma = sigma; break; }
                    if (viol > best) { best = viol; enter = j; enter_sigma = sigma; }
                }
            }
            if (enter < 0) return LpStatus::Optimal;

            double sigma = enter_sigma;
            Eigen::VectorXd w = binv_ * a_.col(enter);

            // ratio test: bound flip of the entering column vs first blocking basic
            double flip_t = (state_[enter] == VarState::Free || lb_[enter] == -kInf ||
                             ub_[enter] == kInf)
                                ? kInf
                                : ub_[enter] - lb_[enter];
            int leave = -1;
            double leave_t = flip_t;
            int leave_bound = 0;        // -1 leaves at lower, +1 at upper
            for (int i = 0; i < m_; ++i) {
                double delta = -sigma * w[i];     // basic value change per unit step
                int jb = basis_[i];
                double t, bound;
                if (delta < -kPivotTol) {
                    if (lb_[jb] == -kInf) continue;
                    t = (xb_[i] - lb_[jb]) / (-delta);
                    bound = -1;
                } else if (delta > kPivotTol) {
                    if (ub_[jb] == kInf) continue;
                    t = (ub_[jb] - xb_[i]) / delta;
                    bound = +1;
                } else {
                    continue;
                }
                bool better = t < leave_t - kFeasTol;
                bool tie = !better && t < leave_t + kFeasTol;
                if (better || (bland && tie && (leave < 0 || jb < basis_[leave]))) {
                    leave_t = std::max(t, 0.0);
                    leave = i;
                    leave_bound = static_cast<int>(bound);
                }
            }
            if (leave_t == kInf) return LpStatus::Unbounded;

            ++iterations;
            if (leave < 0) {
                // entering variable flips to its opposite bound
                xb_ -= sigma * leave_t * w;
                state_[enter] =
                    state_[enter] == VarState::AtLower ? VarState::AtUpper : VarState::AtLower;
            } else {
                int out = basis_[leave];
                double enter_value = nonbasic_value(enter) + sigma * leave_t;
                xb_ -= sigma * leave_t * w;
                xb_[leave] = enter_value;
                basis_[leave] = enter;
                state_[enter] = VarState::Basic;
                state_[out] = leave_bound < 0 ? VarState::AtLower : VarState::AtUpper;
                update_inverse(w, leave);
                if (++pivots_since_refactor_ >= kRefactorEvery) {
                    refactorize();
                    compute_basic_values();
                }
            }

            double obj = objective();
            if (obj < last_obj - 1e-12 * (1.0 + std::abs(last_obj))) {
                stalled = 0;
                last_obj = obj;
            } else {
                ++stalled;
            }
        }
        return LpStatus::IterationLimit;
    }

    double objective() const {
        double v = 0.0;
        for (int j = 0; j < n_; ++j)
            if (state_[j] != VarState::Basic) v += cost_[j] * nonbasic_value(j);
        for (int i = 0; i < m_; ++i) v += cost_[basis_[i]] * xb_[i];
        return v;
    }

    double value(int j) const {
        if (state_[j] != VarState::Basic) return nonbasic_value(j);
        for (int i = 0; i < m_; ++i)
            if (basis_[i] == j) return xb_[i];
        return 0.0;
    }

    std::vector<double> values() const {
        std::vector<double> x(n_);
        for (int j = 0; j < n_; ++j)
            if (state_[j] != VarState::Basic) x[j] = nonbasic_value(j);
        for (int i = 0; i < m_; ++i) x[basis_[i]] = xb_[i];
        return x;
    }

    Eigen::VectorXd dual_prices() const {
        Eigen::VectorXd cb(m_);
        for (int i = 0; i < m_; ++i) cb[i] = cost_[basis_[i]];
        return binv_.transpose() * cb;
    }

    double& lower(int j) { return lb_[j]; }
    double& upper(int j) { return ub_[j]; }
    std::vector<VarState>& state() { return state_; }

    void refresh() {
        refactorize();
        compute_basic_values();
    }

    double max_bound_violation() const {
        double v = 0.0;
        for (int i = 0; i < m_; ++i) {
            int j = basis_[i];
            if (lb_[j] != -kInf) v = std::max(v, lb_[j] - xb_[i]);
            if (ub_[j] != kInf) v = std::max(v, xb_[i] - ub_[j]);
        }
        return v;
    }

private:
    double nonbasic_value(int j) const {
        switch (state_[j]) {
            case VarState::AtLower: return lb_[j];
            case VarState::AtUpper: return ub_[j];
            default: return 0.0;
        }
    }

    void refactorize() {
        Eigen::MatrixXd b(m_, m_);
        for (int i = 0; i < m_; ++i) b.col(i) = a_.col(basis_[i]);
        binv_ = Eigen::PartialPivLU<Eigen::MatrixXd>(b).inverse();
        pivots_since_refactor_ = 0;
    }

    void compute_basic_values() {
        Eigen::VectorXd r = rhs_;
        for (int j = 0; j < n_; ++j) {
            if (state_[j] == VarState::Basic) continue;
            double v = nonbasic_value(j);
            if (v != 0.0) r -= a_.col(j) * v;
        }
        xb_ = binv_ * r;
    }

    // B' differs from B in column `leave`; with w = B^{-1} a_enter the new
    // inverse is E B^{-1}, E the elementary eta matrix built from w.
    void update_inverse(const Eigen::VectorXd& w, int leave) {
        Eigen::RowVectorXd pivot_row = binv_.row(leave) / w[leave];
        for (int i = 0; i < m_; ++i) {
            if (i == leave || w[i] == 0.0) continue;
            binv_.row(i) -= w[i] * pivot_row;
        }
        binv_.row(leave) = pivot_row;
    }

    Eigen::MatrixXd a_;
    Eigen::VectorXd rhs_;
    std::vector<double> lb_, ub_;
    int m_, n_;
    Eigen::VectorXd cost_;
    std::vector<int> basis_;
    std::vector<VarState> state_;
    Eigen::MatrixXd binv_;
    Eigen::VectorXd xb_;
    int pivots_since_refactor_ = 0;
};

} // namespace lp_detail

// Two-phase bounded-variable revised simplex with Bland's anti-cycling rule.
inline LpSolution solve_lp(const LinearProgram& lp) {
    using namespace lp_detail;
    int n = lp.n_vars();
    int m = lp.n_rows();

    for (int j = 0; j < n; ++j)
        if (lp.lower()[j] > lp.upper()[j]) return {};   // empty box

    // Expanded columns: structurals, one logical per row, one artificial per row.
    int n_total = n + 2 * m;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, n_total);
    Eigen::VectorXd rhs(m);
    std::vector<double> lb(n_total, 0.0), ub(n_total, 0.0);
    for (int j = 0; j < n; ++j) {
        lb[j] = lp.lower()[j];
        ub[j] = lp.upper()[j];
    }
    for (int i = 0; i < m; ++i) {
        const auto& row = lp.rows()[i];
        for (const auto& [j, v] : row.coeffs) a(i, j) += v;
        rhs[i] = row.rhs;
        int s = n + i;
        a(i, s) = 1.0;
        switch (row.sense) {
            case RowSense::Equal: lb[s] = 0.0; ub[s] = 0.0; break;
            case RowSense::LessEqual: lb[s] = 0.0; ub[s] = kInf; break;
            case RowSense::GreaterEqual: lb[s] = -kInf; ub[s] = 0.0; break;
        }
    }

    std::vector<VarState> state(n_total, VarState::AtLower);
    Eigen::VectorXd residual = rhs;
    for (int j = 0; j < n + m; ++j) {
        if (lb[j] == -kInf && ub[j] == kInf) {
            state[j] = VarState::Free;
        } else if (lb[j] != -kInf) {
            state[j] = VarState::AtLower;
            if (lb[j] != 0.0) residual -= a.col(j) * lb[j];
        } else {
            state[j] = VarState::AtUpper;
            if (ub[j] != 0.0) residual -= a.col(j) * ub[j];
        }
    }

    // artificials, sign-matched so the initial basis is feasible
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) {
        int aj = n + m + i;
        a(i, aj) = residual[i] >= 0.0 ? 1.0 : -1.0;
        lb[aj] = 0.0;
        ub[aj] = kInf;
        basis[i] = aj;
        state[aj] = VarState::Basic;
    }

    Simplex sx(std::move(a), rhs, lb, ub);
    sx.set_basis(basis, state);

    LpSolution sol;
    long iterations = 0;

    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(n_total);
    for (int i = 0; i < m; ++i) phase1[n + m + i] = 1.0;
    LpStatus s1 = sx.optimize(phase1, iterations);
    if (s1 == LpStatus::IterationLimit) {
        sol.status = s1;
        sol.iterations = static_cast<int>(iterations);
        return sol;
    }
    double infeas = 0.0;
    for (int i = 0; i < m; ++i) infeas += sx.value(n + m + i);
    if (infeas > 1e-7) {
        sol.status = LpStatus::Infeasible;
        sol.iterations = static_cast<int>(iterations);
        return sol;
    }
    for (int i = 0; i < m; ++i) { sx.lower(n + m + i) = 0.0; sx.upper(n + m + i) = 0.0; }

    Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(n_total);
    for (int j = 0; j < n; ++j) phase2[j] = lp.costs()[j];
    LpStatus s2 = sx.optimize(phase2, iterations);
    sol.iterations = static_cast<int>(iterations);
    if (s2 != LpStatus::Optimal) {
        sol.status = s2;
        return sol;
    }

    sx.refresh();
    if (sx.max_bound_violation() > 1e-6) {
        sol.status = LpStatus::Infeasible;
        return sol;
    }

    sol.status = LpStatus::Optimal;
    std::vector<double> full = sx.values();
    sol.x.assign(full.begin(), full.begin() + n);
    sol.objective = 0.0;
    for (int j = 0; j < n; ++j) sol.objective += lp.costs()[j] * sol.x[j];
    Eigen::VectorXd y = sx.dual_prices();
    sol.duals.assign(y.data(), y.data() + m);
    return sol;
}

// Fixed-point text export for external cross-checking.
inline std::string export_lp_text(const LinearProgram& lp) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(9);
    os << "minimize\n";
    for (int j = 0; j < lp.n_vars(); ++j)
        if (lp.costs()[j] != 0.0) os << "  " << lp.costs()[j] << " " << lp.var_name(j) << "\n";
    os << "subject to\n";
    for (const auto& row : lp.rows()) {
        os << "  " << row.name << ":";
        for (const auto& [j, v] : row.coeffs) os << " " << v << " " << lp.var_name(j);
        os << (row.sense == RowSense::Equal ? " == "
               : row.sense == RowSense::LessEqual ? " <= " : " >= ")
           << row.rhs << "\n";
    }
    os << "bounds\n";
    for (int j = 0; j < lp.n_vars(); ++j) {
        os << "  ";
        if (lp.lower()[j] == -kInf) os << "-inf";
        else os << lp.lower()[j];
        os << " <= " << lp.var_name(j) << " <= ";
        if (lp.upper()[j] == kInf) os << "inf";
        else os << lp.upper()[j];
        os << "\n";
    }
    return os.str();
}

} // namespace gridflow
