#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace gridflow {

using Complex = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

enum class BusType : int { PQ = 1, PV = 2, Slack = 3 };

// All electrical quantities are stored in per-unit on the system MVA base,
// angles in radians. File formats use MW/MVAr and degrees; conversion
// happens at the IO boundary.
struct Bus {
    int id = 0;
    BusType bus_type = BusType::PQ;
    double pd = 0.0;       // load, p.u.
    double qd = 0.0;
    double gs = 0.0;       // shunt admittance at V = 1 p.u.
    double bs = 0.0;
    int area = 1;
    double vm = 1.0;       // p.u.
    double va = 0.0;       // radians
    double base_kv = 0.0;
    int zone = 1;
    double vmax = 1.1;
    double vmin = 0.9;
};

struct Branch {
    int from_bus = 0;
    int to_bus = 0;
    double r = 0.0;        // series resistance, p.u.
    double x = 0.0;        // series reactance, p.u.
    double b = 0.0;        // total charging susceptance, p.u.
    double rate_a = 0.0;   // MVA rating, 0 = unlimited
    double rate_b = 0.0;
    double rate_c = 0.0;
    double tap = 1.0;      // tap ratio magnitude; 0 on input normalizes to 1
    double shift = 0.0;    // phase shift, radians
    bool status = true;
};

enum class CostKind { Polynomial, PiecewiseLinear };

struct GenCost {
    CostKind kind = CostKind::Polynomial;
    double startup = 0.0;
    double shutdown = 0.0;
    // Polynomial: coefficients highest degree first (c2, c1, c0), degree <= 2.
    // PiecewiseLinear: breakpoint pairs flattened (x1, y1, x2, y2, ...), MW / $.
    std::vector<double> coefficients{0.0};
};

struct Generator {
    int bus = 0;
    double pg = 0.0;       // setpoint, p.u.
    double qg = 0.0;
    double qmax = kInf;    // p.u.
    double qmin = -kInf;
    double vg = 1.0;       // voltage setpoint, p.u.
    double mbase = 0.0;    // machine base (informational)
    bool status = true;
    double pmax = kInf;    // p.u.
    double pmin = 0.0;
    double ramp = kInf;    // p.u. per period
    GenCost cost;

    // A generator with pmax <= 0 models a curtailable (dispatchable) load.
    bool is_dispatchable_load() const { return pmax <= 0.0; }
};

struct StorageUnit {
    int bus = 0;
    double e_max = 0.0;           // p.u.-hours
    double e_initial = 0.0;
    double p_charge_max = 0.0;    // p.u.
    double p_discharge_max = 0.0;
    double eta_charge = 1.0;
    double eta_discharge = 1.0;
};

struct Case {
    std::string name = "case";
    double base_mva = 100.0;
    std::vector<Bus> buses;
    std::vector<Branch> branches;
    std::vector<Generator> generators;
    std::vector<StorageUnit> storage;

    std::size_t n_bus() const { return buses.size(); }
    std::size_t n_branch() const { return branches.size(); }
    std::size_t n_gen() const { return generators.size(); }
};

// Bijection external bus id -> dense internal index, in file order.
class IndexMap {
public:
    IndexMap() = default;

    explicit IndexMap(const Case& c) {
        for (std::size_t i = 0; i < c.buses.size(); ++i) {
            auto [it, inserted] = to_internal_.emplace(c.buses[i].id, static_cast<int>(i));
            if (!inserted)
                throw std::invalid_argument("duplicate bus id " + std::to_string(c.buses[i].id));
            to_external_.push_back(c.buses[i].id);
        }
    }

    int operator()(int external_id) const {
        auto it = to_internal_.find(external_id);
        if (it == to_internal_.end())
            throw std::out_of_range("unknown bus id " + std::to_string(external_id));
        return it->second;
    }

    bool contains(int external_id) const { return to_internal_.count(external_id) != 0; }
    int external(int internal_index) const { return to_external_.at(internal_index); }
    std::size_t size() const { return to_external_.size(); }

private:
    std::unordered_map<int, int> to_internal_;
    std::vector<int> to_external_;
};

inline IndexMap internal_index(const Case& c) { return IndexMap(c); }

} // namespace gridflow
