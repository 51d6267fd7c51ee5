#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "horizonlab/scenario_file.hpp"

namespace horizonlab {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_number(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double out = 0.0;
    try {
        out = std::stod(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != v.size() || v.empty()) throw ParamError("'" + key + "' expects a number, got '" + v + "'");
    return out;
}

int to_integer(const std::string& key, const std::string& v) {
    const double d = to_number(key, v);
    if (d != std::floor(d)) throw ParamError("'" + key + "' expects an integer, got '" + v + "'");
    return static_cast<int>(d);
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ParamError("'" + key + "' expects true or false, got '" + v + "'");
}

FacetTag to_tag(const std::string& key, const std::string& v) {
    if (v == "genuine") return FacetTag::Genuine;
    if (v == "truncation") return FacetTag::Truncation;
    throw ParamError("'" + key + "' expects genuine or truncation, got '" + v + "'");
}

const char* const kCustomKeys[] = {"metric_csv", "spacing", "t0", "x0", "periodic", "edge_t", "edge_x", "holes"};

}  // namespace

ScenarioFile parse_scenario(std::istream& in, const std::filesystem::path& base_dir) {
    ScenarioFile f;
    f.base_dir = base_dir;
    std::string section;
    std::string line;
    int number = 0;
    auto fail = [&](const std::string& what) {
        throw ParamError("scenario line " + std::to_string(number) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail("unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "scenario" && section != "stencil" && section != "analysis")
                fail("unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail("expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail("empty key");
        if (section.empty()) fail("key '" + key + "' before any section");
        try {
            if (section == "scenario") {
                if (key == "name")
                    f.name = value;
                else if (key == "resolution")
                    f.params.resolution = to_integer(key, value);
                else if (key == "seed")
                    f.params.seed = static_cast<std::uint64_t>(to_integer(key, value));
                else if (std::find(std::begin(kCustomKeys), std::end(kCustomKeys), key) != std::end(kCustomKeys))
                    f.custom[key] = value;
                else
                    f.params.values[key] = value;
            } else if (section == "stencil") {
                if (key == "radius")
                    f.stencil.radius = to_integer(key, value);
                else if (key == "margin")
                    f.stencil.margin = to_number(key, value);
                else if (key == "slope_cap")
                    f.stencil.slope_cap = to_number(key, value);
                else
                    fail("unknown stencil key '" + key + "'");
            } else {
                f.analysis[key] = value;
            }
        } catch (const ParamError& e) {
            if (std::string(e.what()).rfind("scenario line", 0) == 0) throw;
            fail(e.what());
        }
    }
    if (f.name != "custom" && !f.custom.empty())
        throw ParamError("key '" + f.custom.begin()->first + "' is only valid for custom scenarios");
    return f;
}

ScenarioFile load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParamError("cannot open scenario file " + path.string());
    return parse_scenario(in, path.parent_path());
}

GridSpacetime ScenarioFile::build() const {
    if (name != "custom") return build_scenario(name, params);
    if (!params.values.empty()) throw ParamError("unknown parameter '" + params.values.begin()->first + "' for custom");
    auto get = [&](const std::string& key, const std::string& fallback) {
        const auto it = custom.find(key);
        return it == custom.end() ? fallback : it->second;
    };
    const std::string csv = get("metric_csv", "");
    if (csv.empty()) throw ParamError("custom scenario needs metric_csv");
    std::filesystem::path path(csv);
    if (path.is_relative()) path = base_dir / path;
    std::ifstream in(path);
    if (!in) throw ParamError("cannot open metric grid " + path.string());
    return metric_from_csv(in, path.stem().string(), to_number("spacing", get("spacing", "0.1")),
                           to_number("t0", get("t0", "0")), to_number("x0", get("x0", "0")),
                           to_bool("periodic", get("periodic", "false")), to_tag("edge_t", get("edge_t", "truncation")),
                           to_tag("edge_x", get("edge_x", "truncation")), to_tag("holes", get("holes", "genuine")));
}

GridSpacetime metric_from_csv(std::istream& in, const std::string& name, double spacing, double t0, double x0,
                              bool periodic, FacetTag edge_t, FacetTag edge_x, FacetTag holes) {
    if (!(spacing > 0.0)) throw ParamError("spacing must be positive");
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) row.push_back(to_number("metric entry", trim(field)));
        if (row.size() % 3 != 0) throw ParamError("metric row " + std::to_string(rows.size()) + " is not a multiple of 3");
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParamError("metric row " + std::to_string(rows.size()) + " has a different width");
        rows.push_back(std::move(row));
    }
    if (rows.empty() || rows.front().empty()) throw ParamError("empty metric grid");
    const int nt = static_cast<int>(rows.size());
    const int nx = static_cast<int>(rows.front().size() / 3);
    GridSpacetime st(name, nt, nx, spacing, t0, x0, periodic);
    for (int t = 0; t < nt; ++t)
        for (int x = 0; x < nx; ++x) {
            const double* g = &rows[static_cast<std::size_t>(t)][static_cast<std::size_t>(3 * x)];
            const bool inside = g[0] != 0.0 || g[1] != 0.0 || g[2] != 0.0;
            st.set_domain({t, x}, inside);
            if (inside) st.set_metric({t, x}, Metric{g[0], g[1], g[2]});
        }
    st.tag_boundary([&](Cell, Facet f) { return f == Facet::PlusT || f == Facet::MinusT ? edge_t : edge_x; },
                    [&](Cell, Facet) { return holes; });
    st.set_foliation(FoliationKind::CoordinateTime);
    return st;
}

}  // namespace horizonlab
