#include <charconv>
#include <sstream>

#include "horizonlab/model.hpp"

namespace horizonlab {

double ScenarioParams::number(const std::string& key, double fallback) const {
    auto it = values.find(key);
    if (it == values.end()) return fallback;
    try {
        std::size_t used = 0;
        const double v = std::stod(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument(key);
        return v;
    } catch (const std::exception&) {
        throw ParamError("parameter '" + key + "' is not a number: " + it->second);
    }
}

int ScenarioParams::integer(const std::string& key, int fallback) const {
    auto it = values.find(key);
    if (it == values.end()) return fallback;
    int v = 0;
    const auto& s = it->second;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParamError("parameter '" + key + "' is not an integer: " + s);
    return v;
}

std::string ScenarioParams::text(const std::string& key, const std::string& fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
}

ScenarioParams& ScenarioParams::set(const std::string& key, const std::string& value) {
    values[key] = value;
    return *this;
}

ScenarioParams& ScenarioParams::set(const std::string& key, double value) {
    std::ostringstream os;
    os.precision(17);
    os << value;
    values[key] = os.str();
    return *this;
}

std::shared_ptr<const GridSpacetime> share(GridSpacetime st) {
    return std::make_shared<const GridSpacetime>(std::move(st));
}

}  // namespace horizonlab
