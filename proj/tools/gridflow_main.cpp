// gridflow: steady-state network analysis front end.
//
// Subcommands: validate, pf, dcpf, opf, mp, scenarios.
// Exit codes: 0 success, 1 usage error, 2 parse/validation failure,
// 3 solver non-convergence or infeasibility.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gridflow/gridflow.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitSolver = 3;

struct CliError {
    int code;
    std::string message;
};

std::string num(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

std::string pad(const std::string& s, int width) {
    if (static_cast<int>(s.size()) >= width) return s;
    return std::string(width - s.size(), ' ') + s;
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError{kExitParse, "cannot open '" + path + "'"};
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

gridflow::Case load_case(const std::string& path, const std::string& format) {
    std::string text = read_input(path);
    gridflow::CaseFormat fmt;
    if (format == "matrix") fmt = gridflow::CaseFormat::MatrixText;
    else if (format == "json") fmt = gridflow::CaseFormat::Json;
    else fmt = gridflow::sniff_format(text);
    try {
        return gridflow::parse_case(text, fmt);
    } catch (const gridflow::ParseError& e) {
        throw CliError{kExitParse, path + ": " + e.what()};
    }
}

void require_valid(const gridflow::Case& c, const std::string& path) {
    gridflow::ValidationReport rep = gridflow::validate(c);
    if (!rep.has_fatal()) return;
    std::string msg = path + ": validation failed";
    for (const auto& e : rep.entries)
        if (e.severity == gridflow::Severity::Fatal) msg += "\n  " + e.message;
    throw CliError{kExitParse, msg};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CliError{kExitParse, "cannot write '" + path + "'"};
    out << text;
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw CliError{kExitParse, "malformed number '" + item + "' in list"};
        }
    }
    return out;
}

gridflow::TransitionMatrix load_transitions(const std::string& path,
                                            std::vector<double>& initial) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_input(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw CliError{kExitParse, path + ": invalid JSON: " + e.what()};
    }
    gridflow::TransitionMatrix tm;
    try {
        auto probs = j.at("probabilities").get<std::vector<std::vector<double>>>();
        int n = static_cast<int>(probs.size());
        if (j.contains("states"))
            tm.states = j["states"].get<std::vector<std::string>>();
        else
            for (int i = 0; i < n; ++i) tm.states.push_back("state" + std::to_string(i));
        tm.probabilities.resize(n, n);
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(probs[i].size()) != n)
                throw CliError{kExitParse, path + ": probabilities must be square"};
            for (int k = 0; k < n; ++k) tm.probabilities(i, k) = probs[i][k];
        }
        const auto& vals = j.at("values");
        if (vals.empty()) throw CliError{kExitParse, path + ": empty values"};
        if (vals[0].is_array()) {
            int t = static_cast<int>(vals[0].size());
            tm.state_values.resize(n, t);
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < t; ++k) tm.state_values(i, k) = vals[i][k].get<double>();
        } else {
            tm.state_values.resize(n, 1);
            for (int i = 0; i < n; ++i) tm.state_values(i, 0) = vals[i].get<double>();
        }
        if (j.contains("initial")) {
            initial = j["initial"].get<std::vector<double>>();
        } else if (j.contains("initial_state")) {
            initial.assign(n, 0.0);
            initial.at(j["initial_state"].get<int>()) = 1.0;
        } else {
            initial.assign(n, 1.0 / n);
        }
    } catch (const CliError&) {
        throw;
    } catch (const std::exception& e) {
        throw CliError{kExitParse, path + ": invalid transition file: " + std::string(e.what())};
    }
    try {
        tm.check();
    } catch (const std::exception& e) {
        throw CliError{kExitParse, path + ": " + e.what()};
    }
    return tm;
}

// ---------------------------------------------------------------- validate --

int cmd_validate(const std::string& path, const std::string& format,
                 const std::string& output) {
    gridflow::Case c = load_case(path, format);
    gridflow::ValidationReport rep = gridflow::validate(c);
    if (output == "json") {
        nlohmann::json j;
        j["schema_version"] = gridflow::kJsonSchemaVersion;
        j["ok"] = !rep.has_fatal();
        j["entries"] = nlohmann::json::array();
        for (const auto& e : rep.entries)
            j["entries"].push_back(
                {{"severity", e.severity == gridflow::Severity::Fatal ? "fatal" : "warning"},
                 {"message", e.message}});
        std::cout << j.dump(2) << "\n";
    } else {
        if (rep.entries.empty()) {
            std::cout << "ok: no issues found\n";
        } else {
            for (const auto& e : rep.entries)
                std::cout << (e.severity == gridflow::Severity::Fatal ? "fatal: " : "warning: ")
                          << e.message << "\n";
        }
    }
    return rep.has_fatal() ? kExitParse : kExitOk;
}

// ---------------------------------------------------------------- pf / dcpf --

struct PfPrintData {
    const gridflow::Case& c;
    const gridflow::PowerFlowSolution& sol;
    std::string method;
};

void print_pf(const PfPrintData& d, const std::string& output) {
    const gridflow::Case& c = d.c;
    const gridflow::PowerFlowSolution& s = d.sol;
    double base = c.base_mva;
    if (output == "json") {
        nlohmann::json j;
        j["schema_version"] = gridflow::kJsonSchemaVersion;
        j["method"] = d.method;
        j["converged"] = s.converged;
        j["iterations"] = s.iterations;
        if (!s.mismatch_history.empty()) j["max_mismatch"] = s.mismatch_history.back();
        j["buses"] = nlohmann::json::array();
        for (std::size_t i = 0; i < c.n_bus(); ++i)
            j["buses"].push_back({{"id", c.buses[i].id},
                                  {"vm", s.vm[i]},
                                  {"va_deg", gridflow::rad2deg(s.va[i])}});
        j["branches"] = nlohmann::json::array();
        for (std::size_t l = 0; l < c.n_branch(); ++l)
            j["branches"].push_back({{"from", c.branches[l].from_bus},
                                     {"to", c.branches[l].to_bus},
                                     {"p_from_mw", s.sf[l].real() * base},
                                     {"q_from_mvar", s.sf[l].imag() * base},
                                     {"p_to_mw", s.st[l].real() * base},
                                     {"q_to_mvar", s.st[l].imag() * base},
                                     {"loss_mw", s.losses[l] * base}});
        j["generators"] = nlohmann::json::array();
        for (std::size_t g = 0; g < c.n_gen(); ++g)
            j["generators"].push_back({{"bus", c.generators[g].bus},
                                       {"pg_mw", s.pg[g] * base},
                                       {"qg_mvar", s.qg[g] * base}});
        std::cout << j.dump(2) << "\n";
        return;
    }
    if (output == "csv") {
        std::cout << "bus_id,vm,va_deg\n";
        for (std::size_t i = 0; i < c.n_bus(); ++i)
            std::cout << c.buses[i].id << "," << num(s.vm[i], 4) << ","
                      << num(gridflow::rad2deg(s.va[i]), 4) << "\n";
        std::cout << "\nfrom,to,p_from_mw,q_from_mvar,p_to_mw,q_to_mvar,loss_mw\n";
        for (std::size_t l = 0; l < c.n_branch(); ++l)
            std::cout << c.branches[l].from_bus << "," << c.branches[l].to_bus << ","
                      << num(s.sf[l].real() * base, 2) << "," << num(s.sf[l].imag() * base, 2)
                      << "," << num(s.st[l].real() * base, 2) << ","
                      << num(s.st[l].imag() * base, 2) << "," << num(s.losses[l] * base, 2)
                      << "\n";
        std::cout << "\ngen_bus,pg_mw,qg_mvar\n";
        for (std::size_t g = 0; g < c.n_gen(); ++g)
            std::cout << c.generators[g].bus << "," << num(s.pg[g] * base, 2) << ","
                      << num(s.qg[g] * base, 2) << "\n";
        return;
    }
    std::cout << "method: " << d.method << "  converged: " << (s.converged ? "yes" : "no")
              << "  iterations: " << s.iterations << "\n\n";
    std::cout << "  bus        vm    va_deg\n";
    for (std::size_t i = 0; i < c.n_bus(); ++i)
        std::cout << pad(std::to_string(c.buses[i].id), 5) << pad(num(s.vm[i], 4), 10)
                  << pad(num(gridflow::rad2deg(s.va[i]), 4), 10) << "\n";
    std::cout << "\n from   to   p_from_mw  q_from_mvar    p_to_mw  q_to_mvar  loss_mw\n";
    for (std::size_t l = 0; l < c.n_branch(); ++l)
        std::cout << pad(std::to_string(c.branches[l].from_bus), 5)
                  << pad(std::to_string(c.branches[l].to_bus), 5)
                  << pad(num(s.sf[l].real() * base, 2), 12)
                  << pad(num(s.sf[l].imag() * base, 2), 13)
                  << pad(num(s.st[l].real() * base, 2), 11)
                  << pad(num(s.st[l].imag() * base, 2), 11)
                  << pad(num(s.losses[l] * base, 2), 9) << "\n";
    std::cout << "\n  gen  bus      pg_mw    qg_mvar\n";
    for (std::size_t g = 0; g < c.n_gen(); ++g)
        std::cout << pad(std::to_string(g), 5) << pad(std::to_string(c.generators[g].bus), 5)
                  << pad(num(s.pg[g] * base, 2), 11) << pad(num(s.qg[g] * base, 2), 11) << "\n";
}

int cmd_pf(const std::string& path, const std::string& format, const std::string& output,
           const std::string& method, double tol, int max_iter, bool no_flat_start,
           bool enforce_q, const std::string& dump_ybus) {
    gridflow::Case c = load_case(path, format);
    require_valid(c, path);

    if (!dump_ybus.empty()) {
        gridflow::SystemMatrices m = gridflow::build_system_matrices(c);
        write_file(dump_ybus, gridflow::to_matrix_market(m.ybus));
    }

    gridflow::PowerFlowOptions opt;
    if (method == "gs") opt.method = gridflow::PfMethod::GaussSeidel;
    else if (method == "fdlf") opt.method = gridflow::PfMethod::FastDecoupled;
    else if (method == "dc") opt.method = gridflow::PfMethod::DC;
    else opt.method = gridflow::PfMethod::Newton;
    opt.tol = tol;
    opt.max_iter = max_iter;
    opt.flat_start = !no_flat_start;
    opt.enforce_q_limits = enforce_q;

    gridflow::PowerFlowSolution sol;
    try {
        sol = gridflow::solve(c, opt);
    } catch (const std::exception& e) {
        throw CliError{kExitSolver, std::string("power flow failed: ") + e.what()};
    }
    print_pf({c, sol, method}, output);
    if (!sol.converged) {
        std::cerr << "power flow did not converge within " << sol.iterations
                  << " iterations\n";
        return kExitSolver;
    }
    return kExitOk;
}

// --------------------------------------------------------------------- opf --

int cmd_opf(const std::string& path, const std::string& format, const std::string& output,
            const std::string& export_lp) {
    gridflow::Case c = load_case(path, format);
    require_valid(c, path);

    gridflow::DispatchResult r;
    try {
        if (!export_lp.empty()) {
            gridflow::DcopfModel m = gridflow::build_dcopf(c);
            write_file(export_lp, gridflow::export_lp_text(m.lp));
        }
        r = gridflow::run_dcopf(c);
    } catch (const std::exception& e) {
        throw CliError{kExitParse, path + ": " + e.what()};
    }
    if (r.status != gridflow::LpStatus::Optimal) {
        std::cerr << "dispatch "
                  << (r.status == gridflow::LpStatus::Infeasible ? "infeasible"
                      : r.status == gridflow::LpStatus::Unbounded ? "unbounded"
                                                                  : "hit iteration limit")
                  << "\n";
        return kExitSolver;
    }

    if (output == "json") {
        nlohmann::json j;
        j["schema_version"] = gridflow::kJsonSchemaVersion;
        j["status"] = "optimal";
        j["objective"] = r.objective;
        j["generators"] = nlohmann::json::array();
        for (std::size_t g = 0; g < c.n_gen(); ++g)
            j["generators"].push_back({{"bus", c.generators[g].bus}, {"pg_mw", r.pg_mw[g]}});
        j["branches"] = nlohmann::json::array();
        for (std::size_t l = 0; l < c.n_branch(); ++l)
            j["branches"].push_back({{"from", c.branches[l].from_bus},
                                     {"to", c.branches[l].to_bus},
                                     {"flow_mw", r.flow_mw[l]},
                                     {"rate_mw", c.branches[l].rate_a}});
        j["buses"] = nlohmann::json::array();
        for (std::size_t i = 0; i < c.n_bus(); ++i)
            j["buses"].push_back({{"id", c.buses[i].id},
                                  {"va_deg", gridflow::rad2deg(r.va[i])},
                                  {"price", r.nodal_price[i]}});
        std::cout << j.dump(2) << "\n";
    } else if (output == "csv") {
        std::cout << "objective," << num(r.objective, 2) << "\n";
        std::cout << "\ngen_bus,pg_mw\n";
        for (std::size_t g = 0; g < c.n_gen(); ++g)
            std::cout << c.generators[g].bus << "," << num(r.pg_mw[g], 2) << "\n";
        std::cout << "\nfrom,to,flow_mw,rate_mw\n";
        for (std::size_t l = 0; l < c.n_branch(); ++l)
            std::cout << c.branches[l].from_bus << "," << c.branches[l].to_bus << ","
                      << num(r.flow_mw[l], 2) << "," << num(c.branches[l].rate_a, 2) << "\n";
        std::cout << "\nbus_id,va_deg,price\n";
        for (std::size_t i = 0; i < c.n_bus(); ++i)
            std::cout << c.buses[i].id << "," << num(gridflow::rad2deg(r.va[i]), 4) << ","
                      << num(r.nodal_price[i], 2) << "\n";
    } else {
        std::cout << "status: optimal  objective: " << num(r.objective, 2) << " $/h\n\n";
        std::cout << "  gen  bus      pg_mw\n";
        for (std::size_t g = 0; g < c.n_gen(); ++g)
            std::cout << pad(std::to_string(g), 5) << pad(std::to_string(c.generators[g].bus), 5)
                      << pad(num(r.pg_mw[g], 2), 11) << "\n";
        std::cout << "\n from   to    flow_mw    rate_mw\n";
        for (std::size_t l = 0; l < c.n_branch(); ++l)
            std::cout << pad(std::to_string(c.branches[l].from_bus), 5)
                      << pad(std::to_string(c.branches[l].to_bus), 5)
                      << pad(num(r.flow_mw[l], 2), 11)
                      << pad(num(c.branches[l].rate_a, 2), 11) << "\n";
        std::cout << "\n  bus    va_deg      price\n";
        for (std::size_t i = 0; i < c.n_bus(); ++i)
            std::cout << pad(std::to_string(c.buses[i].id), 5)
                      << pad(num(gridflow::rad2deg(r.va[i]), 4), 10)
                      << pad(num(r.nodal_price[i], 2), 11) << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------------- mp --

int cmd_mp(const std::string& path, const std::string& format, const std::string& output,
           int horizon, const std::string& load_profile, const std::vector<int>& wind_bus,
           const std::vector<double>& wind_pmax, const std::string& wind_profile,
           const std::string& transitions, int count, std::uint64_t seed,
           bool no_terminal_floor) {
    gridflow::Case c = load_case(path, format);
    require_valid(c, path);

    gridflow::MultiperiodConfig cfg;
    if (!load_profile.empty()) cfg.load_profile.values = parse_list(load_profile);
    if (wind_bus.size() != wind_pmax.size())
        throw CliError{kExitParse, "--wind-bus and --wind-pmax must pair up"};
    for (std::size_t i = 0; i < wind_bus.size(); ++i)
        cfg.renewables.push_back({wind_bus[i], wind_pmax[i] / c.base_mva});
    cfg.terminal_energy_floor = !no_terminal_floor;

    std::vector<double> rho_path;
    if (!wind_profile.empty()) rho_path = parse_list(wind_profile);

    cfg.horizon = horizon > 0                       ? horizon
                  : !cfg.load_profile.values.empty() ? static_cast<int>(cfg.load_profile.values.size())
                  : !rho_path.empty()                ? static_cast<int>(rho_path.size())
                                                     : 1;

    if (!transitions.empty()) {
        std::vector<double> initial;
        gridflow::TransitionMatrix tm = load_transitions(transitions, initial);
        try {
            cfg.wind = gridflow::sample_scenarios(tm, count, cfg.horizon, seed, initial);
        } catch (const std::exception& e) {
            throw CliError{kExitParse, std::string("scenario sampling failed: ") + e.what()};
        }
    } else if (!rho_path.empty()) {
        cfg.wind = gridflow::ScenarioSet::deterministic(rho_path);
    } else {
        cfg.wind = gridflow::ScenarioSet::deterministic(std::vector<double>(cfg.horizon, 1.0));
    }

    gridflow::DispatchSchedule sched;
    try {
        sched = gridflow::solve_multiperiod(c, cfg);
    } catch (const std::exception& e) {
        throw CliError{kExitParse, path + ": " + e.what()};
    }
    if (sched.status != gridflow::LpStatus::Optimal) {
        std::cerr << "dispatch "
                  << (sched.status == gridflow::LpStatus::Infeasible ? "infeasible"
                      : sched.status == gridflow::LpStatus::Unbounded ? "unbounded"
                                                                      : "hit iteration limit")
                  << "\n";
        return kExitSolver;
    }

    if (output == "json") {
        std::cout << gridflow::schedule_to_json(sched).dump(2) << "\n";
    } else if (output == "csv") {
        std::cout << gridflow::schedule_to_csv(sched);
    } else {
        std::cout << "status: optimal  horizon: " << sched.horizon
                  << "  expected cost: " << num(sched.expected_cost, 2) << " $\n\n";
        std::cout << "scenario  period        device   value_mw\n";
        std::istringstream rows(gridflow::schedule_to_csv(sched));
        std::string line;
        std::getline(rows, line);   // drop the header
        while (std::getline(rows, line)) {
            std::stringstream ls(line);
            std::string s, t, dev, v;
            std::getline(ls, s, ',');
            std::getline(ls, t, ',');
            std::getline(ls, dev, ',');
            std::getline(ls, v, ',');
            std::cout << pad(s, 8) << pad(t, 8) << pad(dev, 14)
                      << pad(num(std::stod(v), 2), 11) << "\n";
        }
    }
    return kExitOk;
}

// --------------------------------------------------------------- scenarios --

int cmd_scenarios(const std::string& transitions, int count, int horizon, std::uint64_t seed,
                  const std::string& output) {
    std::vector<double> initial;
    gridflow::TransitionMatrix tm = load_transitions(transitions, initial);
    gridflow::ScenarioSet set;
    try {
        set = gridflow::sample_scenarios(tm, count, horizon, seed, initial);
    } catch (const std::exception& e) {
        throw CliError{kExitParse, std::string("scenario sampling failed: ") + e.what()};
    }
    if (output == "json") {
        std::cout << gridflow::scenarios_to_json(set).dump(2) << "\n";
    } else if (output == "csv") {
        std::cout << gridflow::scenarios_to_csv(set);
    } else {
        std::cout << "scenario  period  state       rho  probability\n";
        for (std::size_t s = 0; s < set.scenarios.size(); ++s)
            for (std::size_t t = 0; t < set.scenarios[s].rho.size(); ++t) {
                const auto& sc = set.scenarios[s];
                std::string state =
                    t < sc.states.size() ? tm.states.at(sc.states[t]) : std::string("-");
                std::cout << pad(std::to_string(s), 8) << pad(std::to_string(t + 1), 8)
                          << pad(state, 7) << pad(num(sc.rho[t], 4), 10)
                          << pad(num(sc.probability, 4), 13) << "\n";
            }
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    if (const char* threads = std::getenv("GRIDFLOW_MAX_THREADS")) {
        int n = std::atoi(threads);
        if (n > 0) Eigen::setNbThreads(n);
    }

    CLI::App app{"steady-state power network analysis"};
    app.require_subcommand(1);

    std::string path, format = "auto", output = "table";
    std::string method = "newton", dump_ybus, export_lp;
    double tol = 1e-8;
    int max_iter = -1;
    bool no_flat_start = false, enforce_q = false;

    int horizon = 0, count = 0;
    std::uint64_t seed = 1;
    std::string load_profile, wind_profile, transitions;
    std::vector<int> wind_bus;
    std::vector<double> wind_pmax;
    bool no_terminal_floor = false;

    auto add_common = [&](CLI::App* sub, bool needs_case) {
        if (needs_case)
            sub->add_option("case", path, "case file path, '-' for stdin")->required();
        sub->add_option("--format", format, "case format: auto, matrix, json")
            ->check(CLI::IsMember({"auto", "matrix", "json"}));
        sub->add_option("--output", output, "output style: table, csv, json")
            ->check(CLI::IsMember({"table", "csv", "json"}));
    };

    CLI::App* validate = app.add_subcommand("validate", "check a case file");
    add_common(validate, true);

    CLI::App* pf = app.add_subcommand("pf", "AC/DC power flow");
    add_common(pf, true);
    pf->add_option("--method", method, "newton, gs, fdlf, dc")
        ->check(CLI::IsMember({"newton", "gs", "fdlf", "dc"}));
    pf->add_option("--tol", tol, "mismatch tolerance, p.u.");
    pf->add_option("--max-iter", max_iter, "iteration cap (-1 = method default)");
    pf->add_flag("--no-flat-start", no_flat_start, "start from case voltages");
    pf->add_flag("--enforce-q-limits", enforce_q, "PV to PQ switching on Q violations");
    pf->add_option("--dump-ybus", dump_ybus, "write Ybus in Matrix Market format");

    CLI::App* dcpf = app.add_subcommand("dcpf", "linearized DC power flow");
    add_common(dcpf, true);
    dcpf->add_option("--dump-ybus", dump_ybus, "write Ybus in Matrix Market format");

    CLI::App* opf = app.add_subcommand("opf", "single-period DC optimal dispatch");
    add_common(opf, true);
    opf->add_option("--export-lp", export_lp, "write the dispatch LP as text");

    CLI::App* mp = app.add_subcommand("mp", "multi-period dispatch with storage and wind");
    add_common(mp, true);
    mp->add_option("--horizon", horizon, "number of one-hour periods");
    mp->add_option("--load-profile", load_profile, "comma-separated load multipliers");
    mp->add_option("--wind-bus", wind_bus, "renewable bus id (repeatable)");
    mp->add_option("--wind-pmax", wind_pmax, "renewable capacity MW (repeatable)");
    mp->add_option("--wind-profile", wind_profile, "deterministic availability path");
    mp->add_option("--transitions", transitions, "wind transition matrix JSON");
    mp->add_option("--count", count, "sampled scenarios (0 = enumerate)");
    mp->add_option("--seed", seed, "sampling seed");
    mp->add_flag("--no-terminal-floor", no_terminal_floor,
                 "drop the end-of-horizon storage energy floor");

    CLI::App* scen = app.add_subcommand("scenarios", "sample wind availability paths");
    scen->add_option("--transitions", transitions, "wind transition matrix JSON")->required();
    scen->add_option("--count", count, "sampled scenarios (0 = enumerate)");
    scen->add_option("--horizon", horizon, "periods per path")->required();
    scen->add_option("--seed", seed, "sampling seed");
    scen->add_option("--output", output, "output style: table, csv, json")
        ->check(CLI::IsMember({"table", "csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;   // usage problems map to 1, help to 0
    }

    try {
        if (*validate) return cmd_validate(path, format, output);
        if (*pf)
            return cmd_pf(path, format, output, method, tol, max_iter, no_flat_start, enforce_q,
                          dump_ybus);
        if (*dcpf)
            return cmd_pf(path, format, output, "dc", tol, max_iter, no_flat_start, false,
                          dump_ybus);
        if (*opf) return cmd_opf(path, format, output, export_lp);
        if (*mp)
            return cmd_mp(path, format, output, horizon, load_profile, wind_bus, wind_pmax,
                          wind_profile, transitions, count, seed, no_terminal_floor);
        if (*scen) return cmd_scenarios(transitions, count, horizon, seed, output);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }
    return kExitOk;
}
