#pragma once

#include <cctype>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "gridflow/types.hpp"

namespace gridflow {

enum class CaseFormat { MatrixText, Json };

class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, int line, int col)
        : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(col) +
                             ": " + msg),
          line_(line), col_(col) {}

    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_;
    int col_;
};

namespace caseio_detail {

// RAMP sentinel: -1 in a case file means "no ramp limit".
inline constexpr double kRampUnlimited = -1.0;

struct Token {
    enum Kind { Ident, Number, Equals, LBracket, RBracket, Semi, Newline, End } kind;
    std::string text;
    double value = 0.0;
    int line = 1;
    int col = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_space_and_comments();
        int line = line_, col = col_;
        if (pos_ >= src_.size()) return {Token::End, "", 0.0, line, col};
        char c = src_[pos_];
        if (c == '\n') { advance(); return {Token::Newline, "\n", 0.0, line, col}; }
        if (c == '=') { advance(); return {Token::Equals, "=", 0.0, line, col}; }
        if (c == '[') { advance(); return {Token::LBracket, "[", 0.0, line, col}; }
        if (c == ']') { advance(); return {Token::RBracket, "]", 0.0, line, col}; }
        if (c == ';') { advance(); return {Token::Semi, ";", 0.0, line, col}; }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string ident;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                ident += src_[pos_];
                advance();
            }
            // words like "nan" or "inf" spell numeric values; reject them with
            // a precise message instead of a generic syntax error
            try {
                std::size_t used = 0;
                double v = std::stod(ident, &used);
                if (used == ident.size() && !std::isfinite(v))
                    throw ParseError("non-finite number '" + ident + "'", line, col);
            } catch (const ParseError&) {
                throw;
            } catch (const std::exception&) {
            }
            return {Token::Ident, ident, 0.0, line, col};
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
            std::string num;
            while (pos_ < src_.size() && is_number_char(src_[pos_])) {
                num += src_[pos_];
                advance();
            }
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(num, &used);
            } catch (const std::exception&) {
                throw ParseError("malformed number '" + num + "'", line, col);
            }
            if (used != num.size())
                throw ParseError("malformed number '" + num + "'", line, col);
            if (!std::isfinite(v))
                throw ParseError("non-finite number '" + num + "'", line, col);
            return {Token::Number, num, v, line, col};
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }

private:
    static bool is_number_char(char c) {
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'e' || c == 'E' ||
               c == '-' || c == '+';
    }

    void skip_space_and_comments() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '%') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == ',') {
                advance();
            } else {
                break;
            }
        }
    }

    void advance() {
        if (src_[pos_] == '\n') { ++line_; col_ = 1; } else { ++col_; }
        ++pos_;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

struct Cell {
    double value;
    int line;
    int col;
};

struct Table {
    std::vector<std::vector<Cell>> rows;
    int line = 1;   // where the table started
};

struct Document {
    std::map<std::string, double> scalars;
    std::map<std::string, Table> tables;
    std::string name;
};

inline Document parse_document(const std::string& text) {
    Lexer lex(text);
    Document doc;
    Token tok = lex.next();
    auto skip_newlines = [&] { while (tok.kind == Token::Newline || tok.kind == Token::Semi) tok = lex.next(); };
    skip_newlines();
    while (tok.kind != Token::End) {
        if (tok.kind != Token::Ident)
            throw ParseError("expected table or scalar name", tok.line, tok.col);
        std::string name = tok.text;
        int name_line = tok.line;
        tok = lex.next();
        if (tok.kind != Token::Equals)
            throw ParseError("expected '=' after '" + name + "'", tok.line, tok.col);
        tok = lex.next();
        while (tok.kind == Token::Newline) tok = lex.next();
        if (tok.kind == Token::Number) {
            doc.scalars[name] = tok.value;
            tok = lex.next();
        } else if (tok.kind == Token::LBracket) {
            Table table;
            table.line = name_line;
            std::vector<Cell> row;
            tok = lex.next();
            while (true) {
                if (tok.kind == Token::Number) {
                    row.push_back({tok.value, tok.line, tok.col});
                    tok = lex.next();
                } else if (tok.kind == Token::Semi || tok.kind == Token::Newline) {
                    if (!row.empty()) { table.rows.push_back(std::move(row)); row.clear(); }
                    tok = lex.next();
                } else if (tok.kind == Token::RBracket) {
                    if (!row.empty()) table.rows.push_back(std::move(row));
                    tok = lex.next();
                    break;
                } else {
                    throw ParseError("expected number, ';' or ']' in table '" + name + "'",
                                     tok.line, tok.col);
                }
            }
            doc.tables[name] = std::move(table);
        } else {
            throw ParseError("expected number or '[' after '" + name + " ='", tok.line, tok.col);
        }
        skip_newlines();
    }
    return doc;
}

inline void require_columns(const Table& t, const std::string& name, std::size_t ncols) {
    for (std::size_t r = 0; r < t.rows.size(); ++r)
        if (t.rows[r].size() != ncols)
            throw ParseError("table '" + name + "' row " + std::to_string(r + 1) + " has " +
                                 std::to_string(t.rows[r].size()) + " columns, expected " +
                                 std::to_string(ncols),
                             t.rows[r].empty() ? t.line : t.rows[r][0].line,
                             t.rows[r].empty() ? 1 : t.rows[r][0].col);
}

inline std::string format_number(double v) {
    if (v == kInf) return "Inf";    // never emitted for the pinned columns
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace caseio_detail

// ---------------------------------------------------------------------------
// MatrixText layout (MATPOWER-style; '%' comments, blank lines ignored):
//   baseMVA = <scalar>
//   bus     = [BUS_I TYPE PD QD GS BS AREA VM VA BASE_KV ZONE VMAX VMIN]
//   gen     = [GEN_BUS PG QG QMAX QMIN VG MBASE STATUS PMAX PMIN RAMP]
//   branch  = [F_BUS T_BUS R X B RATE_A RATE_B RATE_C TAP SHIFT STATUS]
//   gencost = [MODEL STARTUP SHUTDOWN NCOST C...]   (row i pairs with gen i)
//   storage = [BUS EMAX E0 PCMAX PDMAX ETAC ETAD]
// MW/MVAr and degrees on file; per-unit and radians in memory.
// ---------------------------------------------------------------------------

inline Case parse_case_matrix_text(const std::string& text) {
    using namespace caseio_detail;
    Document doc = parse_document(text);

    Case c;
    if (auto it = doc.scalars.find("baseMVA"); it != doc.scalars.end())
        c.base_mva = it->second;
    else
        throw ParseError("missing 'baseMVA'", 1, 1);
    if (c.base_mva <= 0.0) throw ParseError("baseMVA must be positive", 1, 1);
    double base = c.base_mva;

    auto bus_it = doc.tables.find("bus");
    if (bus_it == doc.tables.end() || bus_it->second.rows.empty())
        throw ParseError("no buses", 1, 1);
    const Table& bus_t = bus_it->second;
    require_columns(bus_t, "bus", 13);
    for (const auto& row : bus_t.rows) {
        Bus b;
        b.id = static_cast<int>(row[0].value);
        int type = static_cast<int>(row[1].value);
        if (type < 1 || type > 3)
            throw ParseError("invalid bus type " + std::to_string(type), row[1].line, row[1].col);
        b.bus_type = static_cast<BusType>(type);
        b.pd = row[2].value / base;
        b.qd = row[3].value / base;
        b.gs = row[4].value / base;
        b.bs = row[5].value / base;
        b.area = static_cast<int>(row[6].value);
        b.vm = row[7].value;
        b.va = deg2rad(row[8].value);
        b.base_kv = row[9].value;
        b.zone = static_cast<int>(row[10].value);
        b.vmax = row[11].value;
        b.vmin = row[12].value;
        c.buses.push_back(b);
    }

    auto known_bus = [&](int id) {
        for (const Bus& b : c.buses)
            if (b.id == id) return true;
        return false;
    };

    if (auto it = doc.tables.find("gen"); it != doc.tables.end()) {
        require_columns(it->second, "gen", 11);
        for (std::size_t r = 0; r < it->second.rows.size(); ++r) {
            const auto& row = it->second.rows[r];
            Generator g;
            g.bus = static_cast<int>(row[0].value);
            if (!known_bus(g.bus))
                throw ParseError("gen row " + std::to_string(r + 1) + " references unknown bus " +
                                     std::to_string(g.bus),
                                 row[0].line, row[0].col);
            g.pg = row[1].value / base;
            g.qg = row[2].value / base;
            g.qmax = row[3].value / base;
            g.qmin = row[4].value / base;
            g.vg = row[5].value;
            g.mbase = row[6].value;
            g.status = row[7].value != 0.0;
            g.pmax = row[8].value / base;
            g.pmin = row[9].value / base;
            g.ramp = row[10].value < 0.0 ? kInf : row[10].value / base;
            c.generators.push_back(g);
        }
    }

    if (auto it = doc.tables.find("branch"); it != doc.tables.end()) {
        require_columns(it->second, "branch", 11);
        for (std::size_t r = 0; r < it->second.rows.size(); ++r) {
            const auto& row = it->second.rows[r];
            Branch br;
            br.from_bus = static_cast<int>(row[0].value);
            br.to_bus = static_cast<int>(row[1].value);
            for (int side = 0; side < 2; ++side) {
                int id = side == 0 ? br.from_bus : br.to_bus;
                if (!known_bus(id))
                    throw ParseError("branch row " + std::to_string(r + 1) +
                                         " references unknown bus " + std::to_string(id),
                                     row[side].line, row[side].col);
            }
            br.r = row[2].value;
            br.x = row[3].value;
            br.b = row[4].value;
            br.rate_a = row[5].value;
            br.rate_b = row[6].value;
            br.rate_c = row[7].value;
            br.tap = row[8].value == 0.0 ? 1.0 : row[8].value;
            br.shift = deg2rad(row[9].value);
            br.status = row[10].value != 0.0;
            c.branches.push_back(br);
        }
    }

    if (auto it = doc.tables.find("gencost"); it != doc.tables.end()) {
        const Table& t = it->second;
        if (t.rows.size() != c.generators.size())
            throw ParseError("gencost has " + std::to_string(t.rows.size()) + " rows for " +
                                 std::to_string(c.generators.size()) + " generators",
                             t.line, 1);
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            const auto& row = t.rows[r];
            if (row.size() < 4)
                throw ParseError("gencost row " + std::to_string(r + 1) + " too short",
                                 row[0].line, row[0].col);
            GenCost cost;
            int model = static_cast<int>(row[0].value);
            cost.startup = row[1].value;
            cost.shutdown = row[2].value;
            int ncost = static_cast<int>(row[3].value);
            std::size_t expect = model == 1 ? 2 * static_cast<std::size_t>(ncost)
                                            : static_cast<std::size_t>(ncost);
            if (row.size() != 4 + expect)
                throw ParseError("gencost row " + std::to_string(r + 1) + " has " +
                                     std::to_string(row.size() - 4) + " coefficients, expected " +
                                     std::to_string(expect),
                                 row[0].line, row[0].col);
            if (model == 1) {
                cost.kind = CostKind::PiecewiseLinear;
            } else if (model == 2) {
                cost.kind = CostKind::Polynomial;
                if (ncost > 3)
                    throw ParseError("gencost row " + std::to_string(r + 1) +
                                         ": polynomial degree exceeds 2",
                                     row[3].line, row[3].col);
            } else {
                throw ParseError("gencost row " + std::to_string(r + 1) + ": unknown model " +
                                     std::to_string(model),
                                 row[0].line, row[0].col);
            }
            cost.coefficients.clear();
            for (std::size_t k = 4; k < row.size(); ++k) cost.coefficients.push_back(row[k].value);
            c.generators[r].cost = cost;
        }
    }

    if (auto it = doc.tables.find("storage"); it != doc.tables.end()) {
        require_columns(it->second, "storage", 7);
        for (std::size_t r = 0; r < it->second.rows.size(); ++r) {
            const auto& row = it->second.rows[r];
            StorageUnit s;
            s.bus = static_cast<int>(row[0].value);
            if (!known_bus(s.bus))
                throw ParseError("storage row " + std::to_string(r + 1) +
                                     " references unknown bus " + std::to_string(s.bus),
                                 row[0].line, row[0].col);
            s.e_max = row[1].value / base;
            s.e_initial = row[2].value / base;
            s.p_charge_max = row[3].value / base;
            s.p_discharge_max = row[4].value / base;
            s.eta_charge = row[5].value;
            s.eta_discharge = row[6].value;
            c.storage.push_back(s);
        }
    }

    return c;
}

inline std::string serialize_case_matrix_text(const Case& c) {
    using caseio_detail::format_number;
    using caseio_detail::kRampUnlimited;
    std::ostringstream os;
    double base = c.base_mva;
    auto n = [&](double v) { return format_number(v); };

    os << "% " << c.name << "\n";
    os << "baseMVA = " << n(base) << "\n";

    os << "bus = [\n";
    for (const Bus& b : c.buses)
        os << "  " << b.id << " " << static_cast<int>(b.bus_type) << " " << n(b.pd * base) << " "
           << n(b.qd * base) << " " << n(b.gs * base) << " " << n(b.bs * base) << " " << b.area
           << " " << n(b.vm) << " " << n(rad2deg(b.va)) << " " << n(b.base_kv) << " " << b.zone
           << " " << n(b.vmax) << " " << n(b.vmin) << ";\n";
    os << "];\n";

    if (!c.generators.empty()) {
        os << "gen = [\n";
        for (const Generator& g : c.generators)
            os << "  " << g.bus << " " << n(g.pg * base) << " " << n(g.qg * base) << " "
               << n(g.qmax * base) << " " << n(g.qmin * base) << " " << n(g.vg) << " "
               << n(g.mbase) << " " << (g.status ? 1 : 0) << " " << n(g.pmax * base) << " "
               << n(g.pmin * base) << " "
               << (g.ramp == kInf ? n(kRampUnlimited) : n(g.ramp * base)) << ";\n";
        os << "];\n";
    }

    if (!c.branches.empty()) {
        os << "branch = [\n";
        for (const Branch& br : c.branches)
            os << "  " << br.from_bus << " " << br.to_bus << " " << n(br.r) << " " << n(br.x)
               << " " << n(br.b) << " " << n(br.rate_a) << " " << n(br.rate_b) << " "
               << n(br.rate_c) << " " << n(br.tap) << " " << n(rad2deg(br.shift)) << " "
               << (br.status ? 1 : 0) << ";\n";
        os << "];\n";
    }

    bool any_cost = false;
    for (const Generator& g : c.generators)
        if (!(g.cost.kind == CostKind::Polynomial && g.cost.coefficients.size() == 1 &&
              g.cost.coefficients[0] == 0.0))
            any_cost = true;
    if (any_cost) {
        os << "gencost = [\n";
        for (const Generator& g : c.generators) {
            const GenCost& cost = g.cost;
            int model = cost.kind == CostKind::PiecewiseLinear ? 1 : 2;
            std::size_t ncost = cost.kind == CostKind::PiecewiseLinear
                                    ? cost.coefficients.size() / 2
                                    : cost.coefficients.size();
            os << "  " << model << " " << n(cost.startup) << " " << n(cost.shutdown) << " "
               << ncost;
            for (double v : cost.coefficients) os << " " << n(v);
            os << ";\n";
        }
        os << "];\n";
    }

    if (!c.storage.empty()) {
        os << "storage = [\n";
        for (const StorageUnit& s : c.storage)
            os << "  " << s.bus << " " << n(s.e_max * base) << " " << n(s.e_initial * base) << " "
               << n(s.p_charge_max * base) << " " << n(s.p_discharge_max * base) << " "
               << n(s.eta_charge) << " " << n(s.eta_discharge) << ";\n";
        os << "];\n";
    }

    return os.str();
}

// JSON carries the same external units as MatrixText (MW, MVAr, degrees).
inline Case parse_case_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), 1, static_cast<int>(e.byte));
    }
    try {
        Case c;
        c.name = j.value("name", "case");
        c.base_mva = j.at("baseMVA").get<double>();
        if (c.base_mva <= 0.0) throw ParseError("baseMVA must be positive", 1, 1);
        double base = c.base_mva;
        if (!j.contains("bus") || j["bus"].empty()) throw ParseError("no buses", 1, 1);
        for (const auto& jb : j["bus"]) {
            Bus b;
            b.id = jb.at("id").get<int>();
            b.bus_type = static_cast<BusType>(jb.at("type").get<int>());
            b.pd = jb.value("pd", 0.0) / base;
            b.qd = jb.value("qd", 0.0) / base;
            b.gs = jb.value("gs", 0.0) / base;
            b.bs = jb.value("bs", 0.0) / base;
            b.area = jb.value("area", 1);
            b.vm = jb.value("vm", 1.0);
            b.va = deg2rad(jb.value("va", 0.0));
            b.base_kv = jb.value("base_kv", 0.0);
            b.zone = jb.value("zone", 1);
            b.vmax = jb.value("vmax", 1.1);
            b.vmin = jb.value("vmin", 0.9);
            c.buses.push_back(b);
        }
        for (const auto& jg : j.value("gen", nlohmann::json::array())) {
            Generator g;
            g.bus = jg.at("bus").get<int>();
            g.pg = jg.value("pg", 0.0) / base;
            g.qg = jg.value("qg", 0.0) / base;
            g.qmax = jg.value("qmax", 0.0) / base;
            g.qmin = jg.value("qmin", 0.0) / base;
            g.vg = jg.value("vg", 1.0);
            g.mbase = jg.value("mbase", 0.0);
            g.status = jg.value("status", 1) != 0;
            g.pmax = jg.value("pmax", 0.0) / base;
            g.pmin = jg.value("pmin", 0.0) / base;
            double ramp = jg.value("ramp", caseio_detail::kRampUnlimited);
            g.ramp = ramp < 0.0 ? kInf : ramp / base;
            if (jg.contains("cost")) {
                const auto& jc = jg["cost"];
                g.cost.kind = jc.at("model").get<int>() == 1 ? CostKind::PiecewiseLinear
                                                             : CostKind::Polynomial;
                g.cost.startup = jc.value("startup", 0.0);
                g.cost.shutdown = jc.value("shutdown", 0.0);
                g.cost.coefficients = jc.at("coefficients").get<std::vector<double>>();
            }
            c.generators.push_back(g);
        }
        for (const auto& jb : j.value("branch", nlohmann::json::array())) {
            Branch br;
            br.from_bus = jb.at("from").get<int>();
            br.to_bus = jb.at("to").get<int>();
            br.r = jb.value("r", 0.0);
            br.x = jb.at("x").get<double>();
            br.b = jb.value("b", 0.0);
            br.rate_a = jb.value("rate_a", 0.0);
            br.rate_b = jb.value("rate_b", 0.0);
            br.rate_c = jb.value("rate_c", 0.0);
            double tap = jb.value("tap", 1.0);
            br.tap = tap == 0.0 ? 1.0 : tap;
            br.shift = deg2rad(jb.value("shift", 0.0));
            br.status = jb.value("status", 1) != 0;
            c.branches.push_back(br);
        }
        for (const auto& js : j.value("storage", nlohmann::json::array())) {
            StorageUnit s;
            s.bus = js.at("bus").get<int>();
            s.e_max = js.at("e_max").get<double>() / base;
            s.e_initial = js.value("e_initial", 0.0) / base;
            s.p_charge_max = js.value("p_charge_max", 0.0) / base;
            s.p_discharge_max = js.value("p_discharge_max", 0.0) / base;
            s.eta_charge = js.value("eta_charge", 1.0);
            s.eta_discharge = js.value("eta_discharge", 1.0);
            c.storage.push_back(s);
        }
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid case JSON: ") + e.what(), 1, 1);
    }
}

inline std::string serialize_case_json(const Case& c) {
    using caseio_detail::kRampUnlimited;
    nlohmann::json j;
    double base = c.base_mva;
    j["name"] = c.name;
    j["baseMVA"] = base;
    j["bus"] = nlohmann::json::array();
    for (const Bus& b : c.buses)
        j["bus"].push_back({{"id", b.id},
                            {"type", static_cast<int>(b.bus_type)},
                            {"pd", b.pd * base},
                            {"qd", b.qd * base},
                            {"gs", b.gs * base},
                            {"bs", b.bs * base},
                            {"area", b.area},
                            {"vm", b.vm},
                            {"va", rad2deg(b.va)},
                            {"base_kv", b.base_kv},
                            {"zone", b.zone},
                            {"vmax", b.vmax},
                            {"vmin", b.vmin}});
    j["gen"] = nlohmann::json::array();
    for (const Generator& g : c.generators) {
        nlohmann::json jg = {{"bus", g.bus},
                             {"pg", g.pg * base},
                             {"qg", g.qg * base},
                             {"qmax", g.qmax * base},
                             {"qmin", g.qmin * base},
                             {"vg", g.vg},
                             {"mbase", g.mbase},
                             {"status", g.status ? 1 : 0},
                             {"pmax", g.pmax * base},
                             {"pmin", g.pmin * base},
                             {"ramp", g.ramp == kInf ? kRampUnlimited : g.ramp * base}};
        jg["cost"] = {{"model", g.cost.kind == CostKind::PiecewiseLinear ? 1 : 2},
                      {"startup", g.cost.startup},
                      {"shutdown", g.cost.shutdown},
                      {"coefficients", g.cost.coefficients}};
        j["gen"].push_back(jg);
    }
    j["branch"] = nlohmann::json::array();
    for (const Branch& br : c.branches)
        j["branch"].push_back({{"from", br.from_bus},
                               {"to", br.to_bus},
                               {"r", br.r},
                               {"x", br.x},
                               {"b", br.b},
                               {"rate_a", br.rate_a},
                               {"rate_b", br.rate_b},
                               {"rate_c", br.rate_c},
                               {"tap", br.tap},
                               {"shift", rad2deg(br.shift)},
                               {"status", br.status ? 1 : 0}});
    j["storage"] = nlohmann::json::array();
    for (const StorageUnit& s : c.storage)
        j["storage"].push_back({{"bus", s.bus},
                                {"e_max", s.e_max * base},
                                {"e_initial", s.e_initial * base},
                                {"p_charge_max", s.p_charge_max * base},
                                {"p_discharge_max", s.p_discharge_max * base},
                                {"eta_charge", s.eta_charge},
                                {"eta_discharge", s.eta_discharge}});
    return j.dump(2) + "\n";
}

inline Case parse_case(const std::string& text, CaseFormat format) {
    return format == CaseFormat::MatrixText ? parse_case_matrix_text(text)
                                            : parse_case_json(text);
}

inline std::string serialize_case(const Case& c, CaseFormat format) {
    return format == CaseFormat::MatrixText ? serialize_case_matrix_text(c)
                                            : serialize_case_json(c);
}

// '{' or whitespace-then-'{' means JSON; anything else is MatrixText.
inline CaseFormat sniff_format(const std::string& text) {
    for (char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        return ch == '{' ? CaseFormat::Json : CaseFormat::MatrixText;
    }
    return CaseFormat::MatrixText;
}

} // namespace gridflow
