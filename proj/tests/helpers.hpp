#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gridflow/gridflow.hpp"

namespace testutil {

inline std::string fixtures_dir() { return GRIDFLOW_FIXTURES_DIR; }

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline gridflow::Case load_fixture(const std::string& name) {
    std::string text = read_file(fixtures_dir() + "/" + name);
    return gridflow::parse_case(text, gridflow::sniff_format(text));
}

// every MatrixText fixture in the corpus
inline const std::vector<std::string>& case_fixtures() {
    static const std::vector<std::string> names = {
        "case2_line.case",    "case2_pwl.case",   "case3_shift.case", "case3_shunt.case",
        "case3_usecase.case", "case3_wind.case",  "case4_ring.case",  "case4_tap.case",
        "case5_mesh.case",    "case6_two_area.case",
    };
    return names;
}

inline bool close(double a, double b, double tol) {
    double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= tol * scale;
}

} // namespace testutil
