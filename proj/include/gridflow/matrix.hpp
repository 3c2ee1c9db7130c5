#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>

namespace gridflow {

// Triplet-assembled compressed sparse storage; duplicates sum on assembly,
// only exact zeros are pruned.
using SparseComplexMatrix = Eigen::SparseMatrix<std::complex<double>>;
using SparseRealMatrix = Eigen::SparseMatrix<double>;
using ComplexTriplet = Eigen::Triplet<std::complex<double>>;
using RealTriplet = Eigen::Triplet<double>;

using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

inline SparseComplexMatrix assemble(int rows, int cols,
                                    const std::vector<ComplexTriplet>& triplets) {
    SparseComplexMatrix m(rows, cols);
    m.setFromTriplets(triplets.begin(), triplets.end());
    m.prune([](int, int, const std::complex<double>& v) { return v != std::complex<double>(0.0, 0.0); });
    return m;
}

inline SparseRealMatrix assemble(int rows, int cols,
                                 const std::vector<RealTriplet>& triplets) {
    SparseRealMatrix m(rows, cols);
    m.setFromTriplets(triplets.begin(), triplets.end());
    m.prune([](int, int, double v) { return v != 0.0; });
    return m;
}

} // namespace gridflow
