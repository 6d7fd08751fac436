#include "hfox/io.hpp"

#include "hfox/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hfox {

namespace {

double require_number(const Json& j, const std::string& field) {
    if (!j.is_number())
        throw ParseError("params: field '" + field + "' must be a number", field);
    return j.get<double>();
}

int require_int(const Json& j, const std::string& field) {
    if (!j.is_number_integer())
        throw ParseError("params: field '" + field + "' must be an integer", field);
    return j.get<int>();
}

Complex parse_complex(const Json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2)
        throw ParseError("params: field '" + field + "' must be [re, im]", field);
    return {require_number(j[0], field), require_number(j[1], field)};
}

} // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

HFunctionParams params_from_json(const Json& j) {
    if (!j.is_object())
        throw ParseError("params: top level must be an object", "");
    for (const char* field : {"m", "n", "p", "q", "a", "alpha", "b", "beta"})
        if (!j.contains(field))
            throw ParseError(std::string("params: missing field '") + field + "'", field);

    HFunctionParams out;
    out.m = require_int(j["m"], "m");
    out.n = require_int(j["n"], "n");
    out.p = require_int(j["p"], "p");
    out.q = require_int(j["q"], "q");

    const Json& a = j["a"];
    const Json& alpha = j["alpha"];
    const Json& b = j["b"];
    const Json& beta = j["beta"];
    if (!a.is_array() || static_cast<int>(a.size()) != out.p)
        throw ParseError("params: 'a' must be an array of p complex pairs", "a");
    if (!alpha.is_array() || static_cast<int>(alpha.size()) != out.p)
        throw ParseError("params: 'alpha' must be an array of p positive reals", "alpha");
    if (!b.is_array() || static_cast<int>(b.size()) != out.q)
        throw ParseError("params: 'b' must be an array of q complex pairs", "b");
    if (!beta.is_array() || static_cast<int>(beta.size()) != out.q)
        throw ParseError("params: 'beta' must be an array of q positive reals", "beta");

    for (int i = 0; i < out.p; ++i)
        out.upper.push_back({parse_complex(a[static_cast<std::size_t>(i)], "a"),
                             require_number(alpha[static_cast<std::size_t>(i)], "alpha")});
    for (int jj = 0; jj < out.q; ++jj)
        out.lower.push_back({parse_complex(b[static_cast<std::size_t>(jj)], "b"),
                             require_number(beta[static_cast<std::size_t>(jj)], "beta")});
    try {
        out.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("params: ") + e.what(), "");
    }
    return out;
}

Json params_to_json(const HFunctionParams& params) {
    Json j;
    j["m"] = params.m;
    j["n"] = params.n;
    j["p"] = params.p;
    j["q"] = params.q;
    j["a"] = Json::array();
    j["alpha"] = Json::array();
    for (const auto& r : params.upper) {
        j["a"].push_back({r.a.real(), r.a.imag()});
        j["alpha"].push_back(r.scale);
    }
    j["b"] = Json::array();
    j["beta"] = Json::array();
    for (const auto& r : params.lower) {
        j["b"].push_back({r.a.real(), r.a.imag()});
        j["beta"].push_back(r.scale);
    }
    return j;
}

HFunctionParams load_params(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("params: cannot open '" + path + "'", "");
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw ParseError("params: invalid JSON in '" + path + "': " + e.what(), "");
    }
    return params_from_json(j);
}

Json json_number(double x) {
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    return x;
}

Json derived_constants_to_json(const DerivedConstants& c) {
    Json j;
    j["a_star"] = json_number(c.a_star);
    j["a1_star"] = json_number(c.a1_star);
    j["a2_star"] = json_number(c.a2_star);
    j["delta"] = json_number(c.delta);
    j["Delta"] = json_number(c.Delta);
    j["mu"] = {c.mu.real(), c.mu.imag()};
    j["alpha"] = json_number(c.alpha);
    j["beta"] = json_number(c.beta);
    j["alpha0"] = json_number(c.alpha0);
    j["beta0"] = json_number(c.beta0);
    j["rho"] = json_number(c.rho);
    if (c.varrho)
        j["varrho"] = json_number(*c.varrho);
    else
        j["varrho"] = nullptr;
    j["log_order_zero"] = c.log_order_zero;
    j["log_order_inf"] = c.log_order_inf;
    return j;
}

Json regime_report_to_json(const RegimeReport& rep) {
    Json j;
    j["nu"] = rep.nu;
    j["r"] = rep.r;
    j["gamma_r"] = rep.gamma_r;
    j["conditions"] = Json::array();
    for (const auto& c : rep.conditions)
        j["conditions"].push_back({{"name", c.name},
                                   {"holds", c.holds},
                                   {"lhs", json_number(c.lhs)},
                                   {"rhs", json_number(c.rhs)}});
    j["applicable_theorems"] = rep.applicable_theorems;
    j["inversion_branch"] = to_string(rep.inversion_branch);
    j["exceptional_hits"] = Json::array();
    for (const auto& z : rep.exceptional_hits)
        j["exceptional_hits"].push_back({z.real(), z.imag()});
    j["derived_constants"] = derived_constants_to_json(rep.constants);
    j["notes"] = rep.notes;
    return j;
}

void write_grid_csv(const std::string& path, const GridFunction& f,
                    const std::vector<std::string>& comments) {
    f.validate();
    std::ofstream out(path);
    if (!out)
        throw Error("write_grid_csv: cannot open '" + path + "'");
    out << "# weight_nu = " << format_double(f.weight_nu) << "\n";
    for (const auto& c : comments)
        out << "# " << c << "\n";
    out << "t,re,im\n";
    for (std::size_t i = 0; i < f.size(); ++i)
        out << format_double(f.grid[i]) << ',' << format_double(f.values[i].real()) << ','
            << format_double(f.values[i].imag()) << "\n";
}

namespace {

struct CsvData {
    std::vector<double> col0;
    std::vector<Complex> vals;
    std::vector<std::string> comments;
};

CsvData read_csv(const std::string& path, const char* what) {
    std::ifstream in(path);
    if (!in)
        throw Error(std::string(what) + ": cannot open '" + path + "'");
    CsvData data;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        if (line[0] == '#') {
            data.comments.push_back(line.substr(1));
            continue;
        }
        if (!header_seen) {
            header_seen = true;  // column header row
            continue;
        }
        std::istringstream ss(line);
        std::string cell;
        double v[3] = {0, 0, 0};
        for (int k = 0; k < 3; ++k) {
            if (!std::getline(ss, cell, ','))
                throw ParseError(std::string(what) + ": malformed row '" + line + "'", "row");
            v[k] = std::strtod(cell.c_str(), nullptr);
        }
        data.col0.push_back(v[0]);
        data.vals.emplace_back(v[1], v[2]);
    }
    return data;
}

} // namespace

GridFunction read_grid_csv(const std::string& path) {
    const CsvData data = read_csv(path, "read_grid_csv");
    GridFunction f;
    f.grid = data.col0;
    f.values = data.vals;
    for (const auto& c : data.comments) {
        const auto pos = c.find("weight_nu =");
        if (pos != std::string::npos)
            f.weight_nu = std::strtod(c.c_str() + pos + 11, nullptr);
    }
    f.validate();
    return f;
}

void write_line_csv(const std::string& path, const MellinLineFunction& F,
                    const std::vector<std::string>& comments) {
    F.validate();
    std::ofstream out(path);
    if (!out)
        throw Error("write_line_csv: cannot open '" + path + "'");
    out << "# sigma = " << format_double(F.sigma) << "\n";
    for (const auto& c : comments)
        out << "# " << c << "\n";
    out << "tau,re,im\n";
    for (std::size_t i = 0; i < F.size(); ++i)
        out << format_double(F.imag_nodes[i]) << ',' << format_double(F.values[i].real())
            << ',' << format_double(F.values[i].imag()) << "\n";
}

MellinLineFunction read_line_csv(const std::string& path) {
    const CsvData data = read_csv(path, "read_line_csv");
    MellinLineFunction F;
    F.imag_nodes = data.col0;
    F.values = data.vals;
    for (const auto& c : data.comments) {
        const auto pos = c.find("sigma =");
        if (pos != std::string::npos)
            F.sigma = std::strtod(c.c_str() + pos + 7, nullptr);
    }
    F.validate();
    return F;
}

} // namespace hfox
