#pragma once

#include <vector>

#include "gridflow/opf.hpp"
#include "gridflow/scenarios.hpp"

namespace gridflow {

struct MultiperiodConfig {
    Profile load_profile;                 // multiplier on every bus load per period
    std::vector<RenewableUnit> renewables;
    ScenarioSet wind;                     // availability paths for every renewable
    int horizon = 1;
    bool terminal_energy_floor = true;    // e_T >= e_initial
};

struct MultiperiodModel {
    LinearProgram lp;
    // indices: [scenario][period][...]
    std::vector<std::vector<std::vector<int>>> theta_var;    // per bus (-1 slack)
    std::vector<std::vector<std::vector<int>>> gen_var;      // per generator
    std::vector<std::vector<std::vector<int>>> wind_var;     // per renewable
    std::vector<std::vector<std::vector<int>>> charge_var;   // per storage
    std::vector<std::vector<std::vector<int>>> discharge_var;
    std::vector<std::vector<std::vector<int>>> energy_var;
    std::vector<std::vector<std::vector<int>>> balance_row;  // per bus
    double cost_offset = 0.0;
};

// Two-stage stochastic DC dispatch over enumerated availability paths:
// period-1 generator and storage decisions are shared across scenarios, the
// rest is per-scenario recourse. Delta t is one hour.
inline MultiperiodModel build_multiperiod(const Case& c, const MultiperiodConfig& cfg) {
    cfg.wind.check();
    int horizon = cfg.horizon;
    if (horizon <= 0) throw std::invalid_argument("horizon must be at least 1");
    if (static_cast<int>(cfg.wind.horizon()) != horizon)
        throw std::invalid_argument("scenario horizon " + std::to_string(cfg.wind.horizon()) +
                                    " does not match requested horizon " +
                                    std::to_string(horizon));
    if (!cfg.load_profile.values.empty() &&
        static_cast<int>(cfg.load_profile.values.size()) != horizon)
        throw std::invalid_argument("load profile length does not match horizon");

    IndexMap idx(c);
    int nb = static_cast<int>(c.n_bus());
    RealVector theta_fixed = RealVector::Zero(nb);
    bool has_slack = false;
    for (int i = 0; i < nb; ++i)
        if (c.buses[i].bus_type == BusType::Slack) { has_slack = true; theta_fixed[i] = c.buses[i].va; }
    if (!has_slack) throw std::invalid_argument("multi-period dispatch requires a slack bus");
    for (const RenewableUnit& u : cfg.renewables)
        if (!idx.contains(u.bus))
            throw std::invalid_argument("renewable at unknown bus " + std::to_string(u.bus));

    opf_detail::DcNetwork net = opf_detail::dc_network(c, idx);
    double base = c.base_mva;
    int ns = static_cast<int>(cfg.wind.scenarios.size());

    MultiperiodModel m;
    auto dims = [&](auto& v, std::size_t inner) {
        v.assign(ns, std::vector<std::vector<int>>(horizon, std::vector<int>(inner, -1)));
    };
    dims(m.theta_var, nb);
    dims(m.gen_var, c.n_gen());
    dims(m.wind_var, cfg.renewables.size());
    dims(m.charge_var, c.storage.size());
    dims(m.discharge_var, c.storage.size());
    dims(m.energy_var, c.storage.size());
    dims(m.balance_row, nb);

    for (int s = 0; s < ns; ++s) {
        const Scenario& sc = cfg.wind.scenarios[s];
        double prob = sc.probability;
        for (int t = 0; t < horizon; ++t) {
            double f = cfg.load_profile.at(t);
            std::string tag = "_s" + std::to_string(s) + "_t" + std::to_string(t);

            for (int i = 0; i < nb; ++i)
                if (c.buses[i].bus_type != BusType::Slack)
                    m.theta_var[s][t][i] = m.lp.add_variable(-kInf, kInf, 0.0, "va" + tag);

            for (std::size_t g = 0; g < c.n_gen(); ++g) {
                const Generator& gen = c.generators[g];
                std::string name = "pg" + std::to_string(g) + tag;
                if (!gen.status) {
                    m.gen_var[s][t][g] = m.lp.add_variable(0.0, 0.0, 0.0, name);
                    continue;
                }
                // dispatchable loads scale with the demand profile
                double lo = gen.is_dispatchable_load() ? gen.pmin * f : gen.pmin;
                double hi = gen.pmax;
                if (gen.cost.kind == CostKind::Polynomial) {
                    auto [c1, c0] = opf_detail::linear_cost(gen.cost, base);
                    m.gen_var[s][t][g] = m.lp.add_variable(lo, hi, prob * c1, name);
                    m.cost_offset += prob * c0;
                } else {
                    m.gen_var[s][t][g] = m.lp.add_variable(lo, hi, 0.0, name);
                    int y = m.lp.add_variable(-kInf, kInf, prob, "cost" + std::to_string(g) + tag);
                    const auto& cc = gen.cost.coefficients;
                    for (std::size_t k = 0; k + 3 < cc.size(); k += 2) {
                        double x0 = cc[k], y0 = cc[k + 1], x1 = cc[k + 2], y1 = cc[k + 3];
                        double slope = (y1 - y0) / (x1 - x0);
                        m.lp.add_row({{y, 1.0}, {m.gen_var[s][t][g], -slope * base}},
                                     RowSense::GreaterEqual, y0 - slope * x0, "cseg" + tag);
                    }
                }
            }

            for (std::size_t w = 0; w < cfg.renewables.size(); ++w)
                m.wind_var[s][t][w] = m.lp.add_variable(
                    0.0, cfg.renewables[w].p_max * sc.rho[t], 0.0,
                    "wind" + std::to_string(w) + tag);

            for (std::size_t st = 0; st < c.storage.size(); ++st) {
                const StorageUnit& su = c.storage[st];
                m.charge_var[s][t][st] =
                    m.lp.add_variable(0.0, su.p_charge_max, 0.0, "chg" + std::to_string(st) + tag);
                m.discharge_var[s][t][st] = m.lp.add_variable(0.0, su.p_discharge_max, 0.0,
                                                              "dis" + std::to_string(st) + tag);
                m.energy_var[s][t][st] =
                    m.lp.add_variable(0.0, su.e_max, 0.0, "e" + std::to_string(st) + tag);
            }

            // nodal balance
            std::vector<std::vector<std::pair<int, double>>> rows(nb);
            std::vector<double> rhs(nb);
            for (int i = 0; i < nb; ++i)
                rhs[i] = c.buses[i].pd * f + c.buses[i].gs + net.p_shift[i];
            for (int col = 0; col < nb; ++col)
                for (SparseRealMatrix::InnerIterator it(net.bbus, col); it; ++it) {
                    int r = static_cast<int>(it.row());
                    if (m.theta_var[s][t][col] >= 0)
                        rows[r].push_back({m.theta_var[s][t][col], -it.value()});
                    else
                        rhs[r] += it.value() * theta_fixed[col];
                }
            for (std::size_t g = 0; g < c.n_gen(); ++g)
                if (c.generators[g].status)
                    rows[idx(c.generators[g].bus)].push_back({m.gen_var[s][t][g], 1.0});
            for (std::size_t w = 0; w < cfg.renewables.size(); ++w)
                rows[idx(cfg.renewables[w].bus)].push_back({m.wind_var[s][t][w], 1.0});
            for (std::size_t st = 0; st < c.storage.size(); ++st) {
                int i = idx(c.storage[st].bus);
                rows[i].push_back({m.discharge_var[s][t][st], 1.0});
                rows[i].push_back({m.charge_var[s][t][st], -1.0});
            }
            for (int i = 0; i < nb; ++i)
                m.balance_row[s][t][i] = m.lp.add_row(std::move(rows[i]), RowSense::Equal, rhs[i],
                                                      "bal" + std::to_string(i) + tag);

            // line limits
            for (std::size_t l = 0; l < c.n_branch(); ++l) {
                const Branch& br = c.branches[l];
                if (!br.status || br.rate_a <= 0.0) continue;
                double b = net.b_series[l];
                int fb = idx(br.from_bus), tb = idx(br.to_bus);
                std::vector<std::pair<int, double>> coeffs;
                double offset = -b * br.shift;
                if (m.theta_var[s][t][fb] >= 0) coeffs.push_back({m.theta_var[s][t][fb], b});
                else offset += b * theta_fixed[fb];
                if (m.theta_var[s][t][tb] >= 0) coeffs.push_back({m.theta_var[s][t][tb], -b});
                else offset -= b * theta_fixed[tb];
                double rate = br.rate_a / base;
                m.lp.add_row(coeffs, RowSense::LessEqual, rate - offset, "fhi" + tag);
                m.lp.add_row(std::move(coeffs), RowSense::GreaterEqual, -rate - offset,
                             "flo" + tag);
            }

            // ramping between consecutive periods
            if (t > 0)
                for (std::size_t g = 0; g < c.n_gen(); ++g) {
                    const Generator& gen = c.generators[g];
                    if (!gen.status || gen.ramp == kInf) continue;
                    m.lp.add_row({{m.gen_var[s][t][g], 1.0}, {m.gen_var[s][t - 1][g], -1.0}},
                                 RowSense::LessEqual, gen.ramp, "rampup" + tag);
                    m.lp.add_row({{m.gen_var[s][t][g], 1.0}, {m.gen_var[s][t - 1][g], -1.0}},
                                 RowSense::GreaterEqual, -gen.ramp, "rampdn" + tag);
                }

            // storage energy recurrence: e_t = e_{t-1} + eta_c*c - d/eta_d
            for (std::size_t st = 0; st < c.storage.size(); ++st) {
                const StorageUnit& su = c.storage[st];
                std::vector<std::pair<int, double>> coeffs = {
                    {m.energy_var[s][t][st], 1.0},
                    {m.charge_var[s][t][st], -su.eta_charge},
                    {m.discharge_var[s][t][st], 1.0 / su.eta_discharge}};
                double rhs_e = 0.0;
                if (t > 0) coeffs.push_back({m.energy_var[s][t - 1][st], -1.0});
                else rhs_e = su.e_initial;
                m.lp.add_row(std::move(coeffs), RowSense::Equal, rhs_e,
                             "soc" + std::to_string(st) + tag);
                if (cfg.terminal_energy_floor && t == horizon - 1)
                    m.lp.add_row({{m.energy_var[s][t][st], 1.0}}, RowSense::GreaterEqual,
                                 su.e_initial, "soc_end" + std::to_string(st) + tag);
            }
        }
    }

    // nonanticipativity: first-period generator and storage decisions coincide
    for (int s = 1; s < ns; ++s) {
        for (std::size_t g = 0; g < c.n_gen(); ++g)
            m.lp.add_row({{m.gen_var[s][0][g], 1.0}, {m.gen_var[0][0][g], -1.0}}, RowSense::Equal,
                         0.0, "na_gen" + std::to_string(g) + "_s" + std::to_string(s));
        for (std::size_t st = 0; st < c.storage.size(); ++st) {
            m.lp.add_row({{m.charge_var[s][0][st], 1.0}, {m.charge_var[0][0][st], -1.0}},
                         RowSense::Equal, 0.0, "na_chg" + std::to_string(st));
            m.lp.add_row({{m.discharge_var[s][0][st], 1.0}, {m.discharge_var[0][0][st], -1.0}},
                         RowSense::Equal, 0.0, "na_dis" + std::to_string(st));
        }
    }
    return m;
}

struct DispatchSchedule {
    LpStatus status = LpStatus::Infeasible;
    int horizon = 0;
    // [scenario][period][...] in MW / MWh
    std::vector<std::vector<std::vector<double>>> gen_mw;
    std::vector<std::vector<std::vector<double>>> wind_mw;
    std::vector<std::vector<std::vector<double>>> charge_mw;
    std::vector<std::vector<std::vector<double>>> discharge_mw;
    std::vector<std::vector<std::vector<double>>> energy_mwh;
    std::vector<std::vector<std::vector<double>>> flow_mw;        // per branch
    std::vector<std::vector<double>> curtailment_mw;              // unserved dispatchable load
    std::vector<double> scenario_probability;
    double expected_cost = 0.0;
};

inline DispatchSchedule solve_multiperiod(const Case& c, const MultiperiodConfig& cfg) {
    MultiperiodModel m = build_multiperiod(c, cfg);
    LpSolution lps = solve_lp(m.lp);

    DispatchSchedule sched;
    sched.status = lps.status;
    if (!lps.optimal()) return sched;

    IndexMap idx(c);
    opf_detail::DcNetwork net = opf_detail::dc_network(c, idx);
    double base = c.base_mva;
    int ns = static_cast<int>(cfg.wind.scenarios.size());
    int horizon = cfg.horizon;
    sched.horizon = horizon;
    sched.expected_cost = lps.objective + m.cost_offset;

    auto grid = [&](std::size_t inner) {
        return std::vector<std::vector<std::vector<double>>>(
            ns, std::vector<std::vector<double>>(horizon, std::vector<double>(inner, 0.0)));
    };
    sched.gen_mw = grid(c.n_gen());
    sched.wind_mw = grid(cfg.renewables.size());
    sched.charge_mw = grid(c.storage.size());
    sched.discharge_mw = grid(c.storage.size());
    sched.energy_mwh = grid(c.storage.size());
    sched.flow_mw = grid(c.n_branch());
    sched.curtailment_mw.assign(ns, std::vector<double>(horizon, 0.0));

    for (int s = 0; s < ns; ++s) {
        sched.scenario_probability.push_back(cfg.wind.scenarios[s].probability);
        for (int t = 0; t < horizon; ++t) {
            double f = cfg.load_profile.at(t);
            for (std::size_t g = 0; g < c.n_gen(); ++g) {
                double p = lps.x[m.gen_var[s][t][g]];
                sched.gen_mw[s][t][g] = p * base;
                const Generator& gen = c.generators[g];
                if (gen.status && gen.is_dispatchable_load())
                    sched.curtailment_mw[s][t] += (p - gen.pmin * f) * base;
            }
            for (std::size_t w = 0; w < cfg.renewables.size(); ++w)
                sched.wind_mw[s][t][w] = lps.x[m.wind_var[s][t][w]] * base;
            for (std::size_t st = 0; st < c.storage.size(); ++st) {
                sched.charge_mw[s][t][st] = lps.x[m.charge_var[s][t][st]] * base;
                sched.discharge_mw[s][t][st] = lps.x[m.discharge_var[s][t][st]] * base;
                sched.energy_mwh[s][t][st] = lps.x[m.energy_var[s][t][st]] * base;
            }
            for (std::size_t l = 0; l < c.n_branch(); ++l) {
                const Branch& br = c.branches[l];
                if (!br.status) continue;
                int fb = idx(br.from_bus), tb = idx(br.to_bus);
                double vaf = m.theta_var[s][t][fb] >= 0 ? lps.x[m.theta_var[s][t][fb]]
                                                        : c.buses[fb].va;
                double vat = m.theta_var[s][t][tb] >= 0 ? lps.x[m.theta_var[s][t][tb]]
                                                        : c.buses[tb].va;
                sched.flow_mw[s][t][l] = net.b_series[l] * (vaf - vat - br.shift) * base;
            }
        }
    }
    return sched;
}

} // namespace gridflow
