#pragma once

#include <cstdio>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gridflow/multiperiod.hpp"
#include "gridflow/scenarios.hpp"

namespace gridflow {

inline constexpr int kJsonSchemaVersion = 1;

namespace report_detail {
inline std::string num(double v, int decimals) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}
} // namespace report_detail

// Matrix Market coordinate complex dump, 1-based indices.
inline std::string to_matrix_market(const SparseComplexMatrix& m) {
    std::ostringstream os;
    os << "%%MatrixMarket matrix coordinate complex general\n";
    os << m.rows() << " " << m.cols() << " " << m.nonZeros() << "\n";
    for (int col = 0; col < m.outerSize(); ++col)
        for (SparseComplexMatrix::InnerIterator it(m, col); it; ++it) {
            char buf[96];
            std::snprintf(buf, sizeof(buf), "%ld %ld %.16g %.16g\n",
                          static_cast<long>(it.row()) + 1, static_cast<long>(it.col()) + 1,
                          it.value().real(), it.value().imag());
            os << buf;
        }
    return os.str();
}

inline std::string scenarios_to_csv(const ScenarioSet& set) {
    std::ostringstream os;
    os << "scenario,period,state,rho,probability\n";
    for (std::size_t s = 0; s < set.scenarios.size(); ++s) {
        const Scenario& sc = set.scenarios[s];
        for (std::size_t t = 0; t < sc.rho.size(); ++t)
            os << s << "," << t + 1 << ","
               << (t < sc.states.size() ? std::to_string(sc.states[t]) : "") << ","
               << report_detail::num(sc.rho[t], 6) << ","
               << report_detail::num(sc.probability, 9) << "\n";
    }
    return os.str();
}

inline nlohmann::json scenarios_to_json(const ScenarioSet& set) {
    nlohmann::json j;
    j["schema_version"] = kJsonSchemaVersion;
    j["scenarios"] = nlohmann::json::array();
    for (const Scenario& sc : set.scenarios) {
        nlohmann::json js;
        js["probability"] = sc.probability;
        js["rho"] = sc.rho;
        if (!sc.states.empty()) js["states"] = sc.states;
        j["scenarios"].push_back(js);
    }
    return j;
}

// One row per scenario-period-device; plot-ready long format.
inline std::string schedule_to_csv(const DispatchSchedule& sched) {
    std::ostringstream os;
    os << "scenario,period,device,value_mw\n";
    auto emit = [&](int s, int t, const std::string& device, double v) {
        os << s << "," << t + 1 << "," << device << "," << report_detail::num(v, 4) << "\n";
    };
    for (std::size_t s = 0; s < sched.gen_mw.size(); ++s)
        for (int t = 0; t < sched.horizon; ++t) {
            for (std::size_t g = 0; g < sched.gen_mw[s][t].size(); ++g)
                emit(static_cast<int>(s), t, "gen" + std::to_string(g), sched.gen_mw[s][t][g]);
            for (std::size_t w = 0; w < sched.wind_mw[s][t].size(); ++w)
                emit(static_cast<int>(s), t, "wind" + std::to_string(w), sched.wind_mw[s][t][w]);
            for (std::size_t st = 0; st < sched.charge_mw[s][t].size(); ++st) {
                emit(static_cast<int>(s), t, "charge" + std::to_string(st),
                     sched.charge_mw[s][t][st]);
                emit(static_cast<int>(s), t, "discharge" + std::to_string(st),
                     sched.discharge_mw[s][t][st]);
                emit(static_cast<int>(s), t, "energy" + std::to_string(st),
                     sched.energy_mwh[s][t][st]);
            }
            emit(static_cast<int>(s), t, "curtailment", sched.curtailment_mw[s][t]);
        }
    return os.str();
}

inline nlohmann::json schedule_to_json(const DispatchSchedule& sched) {
    nlohmann::json j;
    j["schema_version"] = kJsonSchemaVersion;
    j["status"] = sched.status == LpStatus::Optimal ? "optimal"
                  : sched.status == LpStatus::Infeasible ? "infeasible"
                  : sched.status == LpStatus::Unbounded ? "unbounded" : "iteration_limit";
    j["horizon"] = sched.horizon;
    j["expected_cost"] = sched.expected_cost;
    j["scenario_probability"] = sched.scenario_probability;
    j["gen_mw"] = sched.gen_mw;
    j["wind_mw"] = sched.wind_mw;
    j["charge_mw"] = sched.charge_mw;
    j["discharge_mw"] = sched.discharge_mw;
    j["energy_mwh"] = sched.energy_mwh;
    j["flow_mw"] = sched.flow_mw;
    j["curtailment_mw"] = sched.curtailment_mw;
    return j;
}

} // namespace gridflow
