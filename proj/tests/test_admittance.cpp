#include <catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace gridflow;

namespace {

Branch make_branch(double r, double x, double b, double tap = 1.0, double shift_rad = 0.0) {
    Branch br;
    br.from_bus = 1;
    br.to_bus = 2;
    br.r = r;
    br.x = x;
    br.b = b;
    br.tap = tap;
    br.shift = shift_rad;
    return br;
}

double cdist(Complex a, Complex b) { return std::abs(a - b); }

// incidence-product construction: Ybus = A^T D A with A the (+1 from, -1 to)
// branch-bus incidence and D = diag(series admittance)
SparseComplexMatrix incidence_ybus(const Case& c) {
    IndexMap idx(c);
    int nb = static_cast<int>(c.n_bus());
    int nl = static_cast<int>(c.n_branch());
    std::vector<ComplexTriplet> ta, td;
    for (int l = 0; l < nl; ++l) {
        const Branch& br = c.branches[l];
        if (!br.status) continue;
        ta.emplace_back(l, idx(br.from_bus), Complex(1.0, 0.0));
        ta.emplace_back(l, idx(br.to_bus), Complex(-1.0, 0.0));
        td.emplace_back(l, l, 1.0 / Complex(br.r, br.x));
    }
    SparseComplexMatrix a = assemble(nl, nb, ta);
    SparseComplexMatrix d = assemble(nl, nl, td);
    return SparseComplexMatrix(a.transpose() * (d * a));
}

bool incidence_comparable(const Case& c) {
    for (const Bus& b : c.buses)
        if (b.gs != 0.0 || b.bs != 0.0) return false;
    for (const Branch& br : c.branches) {
        if (!br.status) continue;
        if (br.b != 0.0 || br.shift != 0.0) return false;
        if (br.tap != 0.0 && br.tap != 1.0) return false;
    }
    return true;
}

} // namespace

TEST_CASE("branch admittance closed forms") {
    SECTION("pure reactance") {
        BranchAdmittance y = branch_admittance(make_branch(0.0, 1.0, 0.0));
        CHECK(cdist(y.yff, Complex(0, -1)) < 1e-12);
        CHECK(cdist(y.ytt, Complex(0, -1)) < 1e-12);
        CHECK(cdist(y.yft, Complex(0, 1)) < 1e-12);
        CHECK(cdist(y.ytf, Complex(0, 1)) < 1e-12);
    }
    SECTION("lossy line with charging") {
        BranchAdmittance y = branch_admittance(make_branch(0.01, 0.1, 0.02));
        Complex ys = Complex(0.01, -0.1) / (0.01 * 0.01 + 0.1 * 0.1);
        CHECK(cdist(y.yff, ys + Complex(0, 0.01)) < 1e-12);
        CHECK(cdist(y.ytt, y.yff) < 1e-12);
        CHECK(cdist(y.yft, -ys) < 1e-12);
        CHECK(cdist(y.ytf, -ys) < 1e-12);
        CHECK(y.yff.real() == Catch::Approx(0.990099).margin(1e-6));
        CHECK(y.yff.imag() == Catch::Approx(-9.890990).margin(1e-6));
        CHECK(y.yft.real() == Catch::Approx(-0.990099).margin(1e-6));
        CHECK(y.yft.imag() == Catch::Approx(9.900990).margin(1e-6));
    }
    SECTION("30 degree phase shifter") {
        BranchAdmittance y = branch_admittance(make_branch(0.0, 0.1, 0.0, 1.0, deg2rad(30.0)));
        CHECK(cdist(y.yff, Complex(0, -10)) < 1e-12);
        CHECK(cdist(y.ytt, Complex(0, -10)) < 1e-12);
        CHECK(cdist(y.yft, 10.0 * std::exp(Complex(0, deg2rad(120.0)))) < 1e-12);
        CHECK(cdist(y.ytf, 10.0 * std::exp(Complex(0, deg2rad(60.0)))) < 1e-12);
        CHECK(y.yft.real() == Catch::Approx(-5.0).margin(1e-9));
        CHECK(y.yft.imag() == Catch::Approx(8.66025403784).margin(1e-9));
        CHECK(y.ytf.real() == Catch::Approx(5.0).margin(1e-9));
    }
    SECTION("off-diagonal asymmetry appears exactly when shifted") {
        BranchAdmittance flat = branch_admittance(make_branch(0.02, 0.2, 0.04, 1.1, 0.0));
        CHECK(cdist(flat.yft, flat.ytf) < 1e-14);
        BranchAdmittance shifted = branch_admittance(make_branch(0.02, 0.2, 0.04, 1.1, 0.01));
        CHECK(cdist(shifted.yft, shifted.ytf) > 1e-6);
    }
    SECTION("tap scales the from-side block") {
        BranchAdmittance y = branch_admittance(make_branch(0.0, 0.1, 0.0, 2.0));
        CHECK(cdist(y.yff, Complex(0, -2.5)) < 1e-12);
        CHECK(cdist(y.ytt, Complex(0, -10)) < 1e-12);
        CHECK(cdist(y.yft, Complex(0, 5)) < 1e-12);
    }
    SECTION("zero impedance rejected") {
        CHECK_THROWS_AS(branch_admittance(make_branch(0.0, 0.0, 0.0)), std::invalid_argument);
    }
}

TEST_CASE("two-bus system matrices") {
    Case c;
    for (int i = 1; i <= 2; ++i) {
        Bus b;
        b.id = i;
        c.buses.push_back(b);
    }
    c.branches.push_back(make_branch(0.0, 0.1, 0.0));
    SystemMatrices m = build_system_matrices(c);
    CHECK(std::abs(Complex(m.ybus.coeff(0, 0)) - Complex(0, -10)) < 1e-13);
    CHECK(std::abs(Complex(m.ybus.coeff(0, 1)) - Complex(0, 10)) < 1e-13);
    CHECK(std::abs(Complex(m.ybus.coeff(1, 0)) - Complex(0, 10)) < 1e-13);
    CHECK(std::abs(Complex(m.ybus.coeff(1, 1)) - Complex(0, -10)) < 1e-13);
    CHECK(m.yf.rows() == 1);
    CHECK(std::abs(Complex(m.yf.coeff(0, 0)) - Complex(0, -10)) < 1e-13);
    CHECK(std::abs(Complex(m.yt.coeff(0, 1)) - Complex(0, -10)) < 1e-13);
}

TEST_CASE("series-only Ybus rows sum to zero") {
    Case c = testutil::load_fixture("case3_usecase.case");
    SparseComplexMatrix y = build_system_matrices(c).ybus;
    ComplexVector ones = ComplexVector::Ones(y.cols());
    ComplexVector rowsum = y * ones;
    for (Eigen::Index i = 0; i < rowsum.size(); ++i) CHECK(std::abs(rowsum[i]) < 1e-12);
}

TEST_CASE("scatter assembly equals the incidence product on eligible cases") {
    int eligible = 0;
    for (const std::string& name : testutil::case_fixtures()) {
        Case c = testutil::load_fixture(name);
        if (!incidence_comparable(c)) continue;
        ++eligible;
        INFO(name);
        SparseComplexMatrix scatter = build_system_matrices(c).ybus;
        SparseComplexMatrix product = incidence_ybus(c);
        SparseComplexMatrix diff = scatter - product;
        double worst = 0.0;
        for (int col = 0; col < diff.outerSize(); ++col)
            for (SparseComplexMatrix::InnerIterator it(diff, col); it; ++it)
                worst = std::max(worst, std::abs(it.value()));
        CHECK(worst < 1e-13);
    }
    CHECK(eligible >= 5);
}

TEST_CASE("Ybus symmetry holds without phase shifters") {
    for (const std::string& name : {"case3_usecase.case", "case4_tap.case", "case3_shunt.case"}) {
        INFO(name);
        Case c = testutil::load_fixture(name);
        SparseComplexMatrix y = build_system_matrices(c).ybus;
        SparseComplexMatrix diff = SparseComplexMatrix(y.transpose()) - y;
        for (int col = 0; col < diff.outerSize(); ++col)
            for (SparseComplexMatrix::InnerIterator it(diff, col); it; ++it)
                CHECK(std::abs(it.value()) == 0.0);
    }
}

TEST_CASE("switching a branch out changes exactly its four entries") {
    Case c = testutil::load_fixture("case5_mesh.case");
    SparseComplexMatrix before = build_system_matrices(c).ybus;
    c.branches[5].status = false;   // the 2-5 chord, no parallel circuit
    SparseComplexMatrix after = build_system_matrices(c).ybus;
    SparseComplexMatrix diff = before - after;
    diff.prune([](int, int, const Complex& v) { return std::abs(v) > 1e-15; });
    CHECK(diff.nonZeros() == 4);
}

TEST_CASE("bus injections") {
    SECTION("flat voltages on a series-only network draw nothing") {
        Case c = testutil::load_fixture("case3_usecase.case");
        SparseComplexMatrix y = build_system_matrices(c).ybus;
        ComplexVector v = ComplexVector::Ones(3);
        ComplexVector s = bus_injections(y, v);
        for (int i = 0; i < 3; ++i) CHECK(std::abs(s[i]) < 1e-12);
    }
    SECTION("two-bus line with an angle difference") {
        Case c;
        for (int i = 1; i <= 2; ++i) {
            Bus b;
            b.id = i;
            c.buses.push_back(b);
        }
        c.branches.push_back(make_branch(0.0, 0.1, 0.0));
        SparseComplexMatrix y = build_system_matrices(c).ybus;
        ComplexVector v(2);
        v[0] = Complex(1.0, 0.0);
        v[1] = std::polar(1.0, -0.1);
        ComplexVector s = bus_injections(y, v);
        CHECK(s[0].real() == Catch::Approx(0.99833).margin(1e-5));
        CHECK(s[0].imag() == Catch::Approx(0.04996).margin(1e-5));
    }
    SECTION("isolated shunt bus absorbs its susceptance") {
        Case c;
        Bus b;
        b.id = 1;
        b.bs = 0.05;
        c.buses.push_back(b);
        SparseComplexMatrix y = build_system_matrices(c).ybus;
        ComplexVector v = ComplexVector::Ones(1);
        ComplexVector s = bus_injections(y, v);
        CHECK(std::abs(s[0] - Complex(0.0, -0.05)) < 1e-14);
    }
    SECTION("two evaluation orders agree") {
        Case c = testutil::load_fixture("case3_shunt.case");
        SparseComplexMatrix y = build_system_matrices(c).ybus;
        ComplexVector v(3);
        v[0] = std::polar(1.02, 0.0);
        v[1] = std::polar(0.98, -0.05);
        v[2] = std::polar(1.01, 0.03);
        ComplexVector lhs = bus_injections(y, v).conjugate();
        ComplexVector rhs = v.conjugate().cwiseProduct(y * v);
        for (int i = 0; i < 3; ++i) CHECK(std::abs(lhs[i] - rhs[i]) < 1e-12);
    }
    SECTION("dimension mismatch rejected") {
        SparseComplexMatrix y(2, 2);
        CHECK_THROWS_AS(bus_injections(y, ComplexVector::Ones(3)), std::invalid_argument);
    }
}
