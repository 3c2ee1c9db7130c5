#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gridflow/matrix.hpp"
#include "gridflow/types.hpp"

namespace gridflow {

enum class Severity { Warning, Fatal };

struct ValidationEntry {
    Severity severity = Severity::Fatal;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationEntry> entries;

    bool ok() const { return entries.empty(); }
    bool has_fatal() const {
        return std::any_of(entries.begin(), entries.end(),
                           [](const ValidationEntry& e) { return e.severity == Severity::Fatal; });
    }
    void fatal(std::string msg) { entries.push_back({Severity::Fatal, std::move(msg)}); }
    void warn(std::string msg) { entries.push_back({Severity::Warning, std::move(msg)}); }
};

namespace detail {

// Union-find over internal bus indices, in-service branches only.
class IslandFinder {
public:
    explicit IslandFinder(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    int find(int i) {
        while (parent_[i] != i) {
            parent_[i] = parent_[parent_[i]];
            i = parent_[i];
        }
        return i;
    }
    void unite(int a, int b) { parent_[find(a)] = find(b); }

private:
    std::vector<int> parent_;
};

} // namespace detail

inline ValidationReport validate(const Case& c) {
    ValidationReport rep;

    if (c.buses.empty()) {
        rep.fatal("no buses");
        return rep;
    }
    if (!(c.base_mva > 0.0)) rep.fatal("base_mva must be positive");

    std::set<int> seen_ids;
    for (std::size_t i = 0; i < c.buses.size(); ++i) {
        const Bus& b = c.buses[i];
        std::string tag = "bus " + std::to_string(b.id);
        if (!seen_ids.insert(b.id).second) rep.fatal("duplicate bus id " + std::to_string(b.id));
        if (b.vmin > b.vmax) rep.fatal(tag + ": vmin > vmax");
        if (!std::isfinite(b.pd) || !std::isfinite(b.qd)) rep.fatal(tag + ": non-finite load");
        if (!std::isfinite(b.gs) || !std::isfinite(b.bs)) rep.fatal(tag + ": non-finite shunt");
    }
    if (rep.has_fatal()) return rep;   // index map below needs unique ids

    IndexMap idx(c);

    for (std::size_t l = 0; l < c.branches.size(); ++l) {
        const Branch& br = c.branches[l];
        std::string tag = "branch " + std::to_string(l) + " (" + std::to_string(br.from_bus) +
                          "-" + std::to_string(br.to_bus) + ")";
        if (!idx.contains(br.from_bus)) rep.fatal(tag + ": unknown from bus");
        if (!idx.contains(br.to_bus)) rep.fatal(tag + ": unknown to bus");
        if (br.from_bus == br.to_bus) rep.fatal(tag + ": from and to bus coincide");
        if (br.status && br.x == 0.0) rep.fatal(tag + ": zero series reactance");
        if (br.tap < 0.0) rep.fatal(tag + ": negative tap ratio");
    }

    for (std::size_t g = 0; g < c.generators.size(); ++g) {
        const Generator& gen = c.generators[g];
        std::string tag = "generator " + std::to_string(g);
        if (!idx.contains(gen.bus)) rep.fatal(tag + ": unknown bus " + std::to_string(gen.bus));
        if (gen.pmin > gen.pmax) rep.fatal(tag + ": pmin > pmax");
        if (gen.qmin > gen.qmax) rep.fatal(tag + ": qmin > qmax");
        if (gen.cost.kind == CostKind::Polynomial && gen.cost.coefficients.size() > 3)
            rep.fatal(tag + ": polynomial cost degree exceeds 2");
        if (gen.cost.kind == CostKind::PiecewiseLinear) {
            const auto& cc = gen.cost.coefficients;
            if (cc.size() < 4 || cc.size() % 2 != 0)
                rep.fatal(tag + ": piecewise cost needs at least two breakpoint pairs");
            for (std::size_t k = 2; k + 1 < cc.size(); k += 2)
                if (cc[k] <= cc[k - 2]) rep.fatal(tag + ": piecewise breakpoints not increasing");
        }
    }

    for (std::size_t s = 0; s < c.storage.size(); ++s) {
        const StorageUnit& st = c.storage[s];
        std::string tag = "storage " + std::to_string(s);
        if (!idx.contains(st.bus)) rep.fatal(tag + ": unknown bus " + std::to_string(st.bus));
        if (st.e_initial < 0.0 || st.e_initial > st.e_max)
            rep.fatal(tag + ": initial energy outside [0, e_max]");
        if (st.p_charge_max < 0.0 || st.p_discharge_max < 0.0)
            rep.fatal(tag + ": negative charge/discharge rate");
        if (st.eta_charge <= 0.0 || st.eta_charge > 1.0 || st.eta_discharge <= 0.0 ||
            st.eta_discharge > 1.0)
            rep.fatal(tag + ": efficiency outside (0, 1]");
    }

    if (rep.has_fatal()) return rep;

    // Exactly one slack per connected island.
    detail::IslandFinder uf(c.buses.size());
    for (const Branch& br : c.branches)
        if (br.status) uf.unite(idx(br.from_bus), idx(br.to_bus));

    std::unordered_map<int, int> slack_count;
    for (std::size_t i = 0; i < c.buses.size(); ++i) slack_count.emplace(uf.find(static_cast<int>(i)), 0);
    for (std::size_t i = 0; i < c.buses.size(); ++i)
        if (c.buses[i].bus_type == BusType::Slack) ++slack_count[uf.find(static_cast<int>(i))];
    for (const auto& [root, count] : slack_count) {
        if (count == 0)
            rep.fatal("island containing bus " + std::to_string(c.buses[root].id) + ": no slack bus");
        else if (count > 1)
            rep.fatal("island containing bus " + std::to_string(c.buses[root].id) +
                      ": multiple slack buses");
    }

    return rep;
}

// n_b x n_g generator connection matrix C_g; entry (i, j) = 1 iff generator j
// sits at bus i. Out-of-service units still occupy their column.
inline SparseRealMatrix connection_matrix(const Case& c) {
    IndexMap idx(c);
    std::vector<RealTriplet> t;
    t.reserve(c.generators.size());
    for (std::size_t g = 0; g < c.generators.size(); ++g)
        t.emplace_back(idx(c.generators[g].bus), static_cast<int>(g), 1.0);
    return assemble(static_cast<int>(c.n_bus()), static_cast<int>(c.n_gen()), t);
}

// Marginal cost in $/h of a generator producing p (p.u.), evaluated in MW terms.
inline double gen_cost_value(const GenCost& cost, double p_pu, double base_mva) {
    double p_mw = p_pu * base_mva;
    if (cost.kind == CostKind::Polynomial) {
        double v = 0.0;
        for (double c : cost.coefficients) v = v * p_mw + c;
        return v;
    }
    // Piecewise linear: interpolate, extrapolating the end segments.
    const auto& cc = cost.coefficients;
    std::size_t n = cc.size() / 2;
    std::size_t seg = 0;
    while (seg + 2 < n && p_mw > cc[2 * (seg + 1)]) ++seg;
    double x0 = cc[2 * seg], y0 = cc[2 * seg + 1];
    double x1 = cc[2 * seg + 2], y1 = cc[2 * seg + 3];
    return y0 + (y1 - y0) * (p_mw - x0) / (x1 - x0);
}

} // namespace gridflow
