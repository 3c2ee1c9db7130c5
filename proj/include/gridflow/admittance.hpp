#pragma once

#include <stdexcept>
#include <vector>

#include "gridflow/matrix.hpp"
#include "gridflow/network.hpp"
#include "gridflow/types.hpp"

namespace gridflow {

// 2x2 branch admittance block of the pi model with an ideal phase-shifting
// transformer of ratio tau*e^{j*shift} at the from end:
//
//   [i_f]   [yff yft][v_f]
//   [i_t] = [ytf ytt][v_t]
struct BranchAdmittance {
    Complex yff, yft, ytf, ytt;
};

inline BranchAdmittance branch_admittance(const Branch& br) {
    if (br.r == 0.0 && br.x == 0.0)
        throw std::invalid_argument("branch " + std::to_string(br.from_bus) + "-" +
                                    std::to_string(br.to_bus) + " has zero series impedance");
    double tau = br.tap == 0.0 ? 1.0 : br.tap;
    Complex ys = 1.0 / Complex(br.r, br.x);
    Complex ysh(0.0, br.b / 2.0);
    BranchAdmittance y;
    y.yff = (ys + ysh) / (tau * tau);
    y.yft = -ys / (tau * std::exp(Complex(0.0, -br.shift)));
    y.ytf = -ys / (tau * std::exp(Complex(0.0, br.shift)));
    y.ytt = ys + ysh;
    return y;
}

struct SystemMatrices {
    SparseComplexMatrix ybus;  // n_b x n_b
    SparseComplexMatrix yf;    // n_l x n_b, from-end branch currents
    SparseComplexMatrix yt;    // n_l x n_b, to-end branch currents
};

// Scatter branch blocks into Yf/Yt and sum into Ybus, plus bus shunts on the
// diagonal. Out-of-service branches leave zero rows in Yf/Yt.
inline SystemMatrices build_system_matrices(const Case& c) {
    IndexMap idx(c);
    int nb = static_cast<int>(c.n_bus());
    int nl = static_cast<int>(c.n_branch());

    std::vector<ComplexTriplet> tf, tt, tbus;
    tf.reserve(2 * nl);
    tt.reserve(2 * nl);
    tbus.reserve(4 * nl + nb);

    for (int l = 0; l < nl; ++l) {
        const Branch& br = c.branches[l];
        if (!br.status) continue;
        BranchAdmittance y = branch_admittance(br);
        int f = idx(br.from_bus);
        int t = idx(br.to_bus);
        tf.emplace_back(l, f, y.yff);
        tf.emplace_back(l, t, y.yft);
        tt.emplace_back(l, f, y.ytf);
        tt.emplace_back(l, t, y.ytt);
        tbus.emplace_back(f, f, y.yff);
        tbus.emplace_back(f, t, y.yft);
        tbus.emplace_back(t, f, y.ytf);
        tbus.emplace_back(t, t, y.ytt);
    }
    for (int i = 0; i < nb; ++i) {
        const Bus& b = c.buses[i];
        if (b.gs != 0.0 || b.bs != 0.0) tbus.emplace_back(i, i, Complex(b.gs, b.bs));
    }

    SystemMatrices m;
    m.yf = assemble(nl, nb, tf);
    m.yt = assemble(nl, nb, tt);
    m.ybus = assemble(nb, nb, tbus);
    return m;
}

// S_bus(V) = [V] conj(Y_bus V)
inline ComplexVector bus_injections(const SparseComplexMatrix& ybus, const ComplexVector& v) {
    if (ybus.cols() != v.size())
        throw std::invalid_argument("bus_injections: dimension mismatch");
    return v.cwiseProduct((ybus * v).conjugate());
}

inline ComplexVector polar_voltages(const RealVector& vm, const RealVector& va) {
    ComplexVector v(vm.size());
    for (Eigen::Index i = 0; i < vm.size(); ++i)
        v[i] = std::polar(vm[i], va[i]);
    return v;
}

} // namespace gridflow
