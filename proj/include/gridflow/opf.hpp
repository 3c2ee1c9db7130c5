#pragma once

#include <optional>
#include <vector>

#include "gridflow/lp.hpp"
#include "gridflow/network.hpp"
#include "gridflow/powerflow.hpp"
#include "gridflow/types.hpp"

namespace gridflow {

namespace opf_detail {

struct DcNetwork {
    SparseRealMatrix bbus;          // n_b x n_b
    RealVector p_shift;             // shift-injection offsets, p.u.
    std::vector<double> b_series;   // per branch, 1/(x*tau), 0 when out of service
};

inline DcNetwork dc_network(const Case& c, const IndexMap& idx) {
    DcNetwork net;
    int nb = static_cast<int>(c.n_bus());
    net.p_shift = RealVector::Zero(nb);
    net.b_series.assign(c.n_branch(), 0.0);
    std::vector<RealTriplet> t;
    for (std::size_t l = 0; l < c.n_branch(); ++l) {
        const Branch& br = c.branches[l];
        if (!br.status) continue;
        if (br.x == 0.0) throw std::invalid_argument("zero reactance branch in DC model");
        double tau = br.tap == 0.0 ? 1.0 : br.tap;
        double b = 1.0 / (br.x * tau);
        net.b_series[l] = b;
        int f = idx(br.from_bus), to = idx(br.to_bus);
        t.emplace_back(f, f, b);
        t.emplace_back(f, to, -b);
        t.emplace_back(to, f, -b);
        t.emplace_back(to, to, b);
        net.p_shift[f] -= b * br.shift;
        net.p_shift[to] += b * br.shift;
    }
    net.bbus = assemble(nb, nb, t);
    return net;
}

// Linear objective coefficient ($/h per p.u.) and constant offset for a
// generator cost; piecewise costs go through an epigraph variable instead.
inline std::pair<double, double> linear_cost(const GenCost& cost, double base) {
    const auto& cc = cost.coefficients;
    if (cost.kind != CostKind::Polynomial)
        throw std::logic_error("linear_cost called on piecewise cost");
    if (cc.size() == 3 && cc[0] != 0.0)
        throw std::invalid_argument("quadratic generator cost not supported in DC-OPF");
    double c1 = 0.0, c0 = 0.0;
    if (cc.size() == 3) { c1 = cc[1]; c0 = cc[2]; }
    else if (cc.size() == 2) { c1 = cc[0]; c0 = cc[1]; }
    else if (cc.size() == 1) { c0 = cc[0]; }
    return {c1 * base, c0};
}

} // namespace opf_detail

struct DcopfModel {
    LinearProgram lp;
    std::vector<int> theta_var;                 // per bus, -1 for slack
    std::vector<int> gen_var;                   // per generator
    std::vector<int> epigraph_var;              // per generator, -1 if linear
    std::vector<int> balance_row;               // per bus
    std::vector<std::pair<int, int>> flow_row;  // per branch {upper, lower}, -1 if unrated
    double cost_offset = 0.0;
};

// Single-period DC optimal dispatch: variables are non-slack angles, generator
// outputs, and cost epigraphs; rows are nodal balance and rated-line limits.
inline DcopfModel build_dcopf(const Case& c) {
    IndexMap idx(c);
    int nb = static_cast<int>(c.n_bus());
    bool has_slack = false;
    RealVector theta_fixed = RealVector::Zero(nb);
    for (int i = 0; i < nb; ++i)
        if (c.buses[i].bus_type == BusType::Slack) {
            has_slack = true;
            theta_fixed[i] = c.buses[i].va;
        }
    if (!has_slack) throw std::invalid_argument("DC-OPF requires a slack bus");

    opf_detail::DcNetwork net = opf_detail::dc_network(c, idx);
    double base = c.base_mva;

    DcopfModel m;
    m.theta_var.assign(nb, -1);
    for (int i = 0; i < nb; ++i)
        if (c.buses[i].bus_type != BusType::Slack)
            m.theta_var[i] = m.lp.add_variable(-kInf, kInf, 0.0,
                                               "va_" + std::to_string(c.buses[i].id));

    m.gen_var.assign(c.n_gen(), -1);
    m.epigraph_var.assign(c.n_gen(), -1);
    for (std::size_t g = 0; g < c.n_gen(); ++g) {
        const Generator& gen = c.generators[g];
        std::string name = "pg_" + std::to_string(g);
        if (!gen.status) {
            m.gen_var[g] = m.lp.add_variable(0.0, 0.0, 0.0, name);
            continue;
        }
        if (!std::isfinite(gen.pmin) || !std::isfinite(gen.pmax))
            throw std::invalid_argument("in-service generator " + std::to_string(g) +
                                        " needs finite active power limits");
        if (gen.cost.kind == CostKind::Polynomial) {
            auto [c1, c0] = opf_detail::linear_cost(gen.cost, base);
            m.gen_var[g] = m.lp.add_variable(gen.pmin, gen.pmax, c1, name);
            m.cost_offset += c0;
        } else {
            m.gen_var[g] = m.lp.add_variable(gen.pmin, gen.pmax, 0.0, name);
            int y = m.lp.add_variable(-kInf, kInf, 1.0, "cost_" + std::to_string(g));
            m.epigraph_var[g] = y;
            const auto& cc = gen.cost.coefficients;
            for (std::size_t k = 0; k + 3 < cc.size(); k += 2) {
                double x0 = cc[k], y0 = cc[k + 1], x1 = cc[k + 2], y1 = cc[k + 3];
                double slope = (y1 - y0) / (x1 - x0);   // $/MW
                // y >= slope*(p*base - x0) + y0
                m.lp.add_row({{y, 1.0}, {m.gen_var[g], -slope * base}}, RowSense::GreaterEqual,
                             y0 - slope * x0, "cost_seg_" + std::to_string(g));
            }
        }
    }

    // nodal balance: sum(gen) - B*theta = pd + gs + shift offset
    m.balance_row.assign(nb, -1);
    std::vector<std::vector<std::pair<int, double>>> rows(nb);
    std::vector<double> rhs(nb);
    for (int i = 0; i < nb; ++i)
        rhs[i] = c.buses[i].pd + c.buses[i].gs + net.p_shift[i];
    for (int col = 0; col < nb; ++col)
        for (SparseRealMatrix::InnerIterator it(net.bbus, col); it; ++it) {
            int r = static_cast<int>(it.row());
            if (m.theta_var[col] >= 0) rows[r].push_back({m.theta_var[col], -it.value()});
            else rhs[r] += it.value() * theta_fixed[col];
        }
    for (std::size_t g = 0; g < c.n_gen(); ++g)
        if (c.generators[g].status) rows[idx(c.generators[g].bus)].push_back({m.gen_var[g], 1.0});
    for (int i = 0; i < nb; ++i)
        m.balance_row[i] =
            m.lp.add_row(std::move(rows[i]), RowSense::Equal, rhs[i],
                         "bal_" + std::to_string(c.buses[i].id));

    // rated lines: -rate <= b*(theta_f - theta_t - shift) <= rate
    m.flow_row.assign(c.n_branch(), {-1, -1});
    for (std::size_t l = 0; l < c.n_branch(); ++l) {
        const Branch& br = c.branches[l];
        if (!br.status || br.rate_a <= 0.0) continue;
        double b = net.b_series[l];
        int f = idx(br.from_bus), to = idx(br.to_bus);
        std::vector<std::pair<int, double>> coeffs;
        double offset = -b * br.shift;
        if (m.theta_var[f] >= 0) coeffs.push_back({m.theta_var[f], b});
        else offset += b * theta_fixed[f];
        if (m.theta_var[to] >= 0) coeffs.push_back({m.theta_var[to], -b});
        else offset -= b * theta_fixed[to];
        double rate = br.rate_a / base;
        int up = m.lp.add_row(coeffs, RowSense::LessEqual, rate - offset,
                              "flow_hi_" + std::to_string(l));
        int lo = m.lp.add_row(std::move(coeffs), RowSense::GreaterEqual, -rate - offset,
                              "flow_lo_" + std::to_string(l));
        m.flow_row[l] = {up, lo};
    }
    return m;
}

struct DispatchResult {
    LpStatus status = LpStatus::Infeasible;
    std::vector<double> pg_mw;          // per generator
    std::vector<double> flow_mw;        // per branch, from-end
    std::vector<double> va;             // radians per bus
    std::vector<double> nodal_price;    // $/MWh per bus
    double objective = 0.0;             // $/h
};

inline DispatchResult run_dcopf(const Case& c) {
    IndexMap idx(c);
    DcopfModel m = build_dcopf(c);
    LpSolution lps = solve_lp(m.lp);

    DispatchResult r;
    r.status = lps.status;
    if (!lps.optimal()) return r;

    double base = c.base_mva;
    r.objective = lps.objective + m.cost_offset;
    r.pg_mw.resize(c.n_gen());
    for (std::size_t g = 0; g < c.n_gen(); ++g) r.pg_mw[g] = lps.x[m.gen_var[g]] * base;

    int nb = static_cast<int>(c.n_bus());
    r.va.resize(nb);
    for (int i = 0; i < nb; ++i)
        r.va[i] = m.theta_var[i] >= 0 ? lps.x[m.theta_var[i]] : c.buses[i].va;
    r.nodal_price.resize(nb);
    for (int i = 0; i < nb; ++i) r.nodal_price[i] = lps.duals[m.balance_row[i]] / base;

    opf_detail::DcNetwork net = opf_detail::dc_network(c, idx);
    r.flow_mw.resize(c.n_branch());
    for (std::size_t l = 0; l < c.n_branch(); ++l) {
        const Branch& br = c.branches[l];
        if (!br.status) { r.flow_mw[l] = 0.0; continue; }
        double flow = net.b_series[l] *
                      (r.va[idx(br.from_bus)] - r.va[idx(br.to_bus)] - br.shift);
        r.flow_mw[l] = flow * base;
    }
    return r;
}

} // namespace gridflow
