#include "becpol/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

namespace becpol {
namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& text, const std::string& origin)
{
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw InputError(origin + ": value of '" + key + "' is not a number: '" + text + "'");
    return v;
}

} // namespace

PhysicalParams parse_params(std::istream& in, const std::string& origin)
{
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InputError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw InputError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        if (kv.count(key)) throw InputError(origin + ": duplicate key '" + key + "'");
        kv[key] = val;
    }

    if (!kv.count("unit_system"))
        throw InputError(origin + ": missing required key 'unit_system'");
    if (kv["unit_system"] != "natural")
        throw InputError(origin + ": unsupported unit_system '" + kv["unit_system"]
                         + "' (only 'natural' is defined)");
    kv.erase("unit_system");

    PhysicalParams p;
    const std::map<std::string, double*> fields{
        {"boson_mass", &p.boson_mass},
        {"impurity_mass", &p.impurity_mass},
        {"density", &p.density},
        {"scattering_length_bb", &p.scattering_length_bb},
        {"scattering_length_ib", &p.scattering_length_ib},
        {"uv_cutoff", &p.uv_cutoff},
    };
    double boson_interaction_given = 0.0;
    bool has_interaction = false;
    for (const auto& [key, val] : kv) {
        if (key == "boson_interaction") {
            boson_interaction_given = parse_number(key, val, origin);
            has_interaction = true;
            continue;
        }
        const auto it = fields.find(key);
        if (it == fields.end()) throw InputError(origin + ": unknown key '" + key + "'");
        *it->second = parse_number(key, val, origin);
    }
    validate(p);
    if (has_interaction) {
        const double expected = boson_interaction(p);
        if (std::abs(boson_interaction_given - expected) > 1e-9 * std::abs(expected))
            throw InputError(origin + ": 'boson_interaction' (" + format_g12(boson_interaction_given)
                             + ") disagrees with 4 pi a_s / m = " + format_g12(expected));
    }
    return p;
}

PhysicalParams load_params(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open parameter file '" + path + "'");
    return parse_params(in, path);
}

std::string format_g12(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string provenance(const std::string& subcommand,
                       const std::vector<std::pair<std::string, std::string>>& items)
{
    std::string out = "becpolaron " + subcommand;
    for (const auto& [k, v] : items) out += " " + k + "=" + v;
    return out;
}

std::string params_signature(const PhysicalParams& p)
{
    return "m=" + format_g12(p.boson_mass) + ",M=" + format_g12(p.impurity_mass)
           + ",n=" + format_g12(p.density) + ",a_bb=" + format_g12(p.scattering_length_bb)
           + ",a_ib=" + format_g12(p.scattering_length_ib) + ",cutoff=" + format_g12(p.uv_cutoff);
}

void write_table(std::ostream& out, const std::vector<std::string>& comments,
                 const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows)
{
    for (const auto& c : comments) out << "# " << c << "\n";
    for (std::size_t i = 0; i < header.size(); ++i)
        out << header[i] << (i + 1 < header.size() ? "," : "\n");
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i)
            out << row[i] << (i + 1 < row.size() ? "," : "\n");
}

std::vector<std::string> to_cells(const std::vector<double>& row)
{
    std::vector<std::string> cells;
    cells.reserve(row.size());
    for (double v : row) cells.push_back(format_g12(v));
    return cells;
}

} // namespace becpol
