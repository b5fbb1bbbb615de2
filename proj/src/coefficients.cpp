#include "initrec/coefficients.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace initrec {

namespace {

struct ParsedPreset {
    std::string name;
    std::vector<std::string> args;
};

ParsedPreset parse_preset(const std::string& spec) {
    ParsedPreset p;
    const auto open = spec.find('(');
    if (open == std::string::npos) {
        p.name = spec;
    } else {
        if (spec.back() != ')')
            throw ValidationError("coefficient preset '" + spec + "': missing ')'");
        p.name = spec.substr(0, open);
        std::string inner = spec.substr(open + 1, spec.size() - open - 2);
        std::string item;
        std::istringstream ss(inner);
        while (std::getline(ss, item, ',')) p.args.push_back(item);
    }
    // trim whitespace
    auto trim = [](std::string& s) {
        const auto b = s.find_first_not_of(" \t");
        const auto e = s.find_last_not_of(" \t");
        s = (b == std::string::npos) ? std::string{} : s.substr(b, e - b + 1);
    };
    trim(p.name);
    for (auto& a : p.args) trim(a);
    return p;
}

double numeric_arg(const ParsedPreset& p, std::size_t i) {
    if (i >= p.args.size())
        throw ValidationError("coefficient preset '" + p.name + "': missing parameter " +
                              std::to_string(i + 1));
    try {
        std::size_t pos = 0;
        const double v = std::stod(p.args[i], &pos);
        if (pos != p.args[i].size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ValidationError("coefficient preset '" + p.name + "': bad numeric parameter '" +
                              p.args[i] + "'");
    }
}

std::vector<double> read_tabulated(const std::string& path, std::size_t nx) {
    std::ifstream in(path);
    if (!in) throw ValidationError("coefficient file '" + path + "': cannot open");
    std::vector<double> v;
    double x;
    while (in >> x) v.push_back(x);
    if (v.size() != nx)
        throw ValidationError("coefficient file '" + path + "': expected " + std::to_string(nx) +
                              " values, found " + std::to_string(v.size()));
    return v;
}

}  // namespace

std::vector<double> sample_coefficient(const std::string& preset, const SpaceTimeGrid& grid) {
    const ParsedPreset p = parse_preset(preset);
    const auto sample = [&](auto&& f) {
        std::vector<double> v(grid.nx);
        for (std::size_t j = 0; j < grid.nx; ++j) v[j] = f(grid.x(j + 1));
        return v;
    };
    constexpr double pi = std::numbers::pi;

    if (p.name == "sin_pi") return sample([&](double x) { return std::sin(pi * x); });
    if (p.name == "power") {
        const double mu = numeric_arg(p, 0), nu = numeric_arg(p, 1);
        return sample([&](double x) { return std::pow(x, mu) * std::pow(1.0 - x, nu); });
    }
    if (p.name == "powersin") {
        const double mu = numeric_arg(p, 0), nu = numeric_arg(p, 1);
        return sample(
            [&](double x) { return std::pow(x, mu) * std::pow(1.0 - x, nu) * std::sin(pi * x); });
    }
    if (p.name == "constant") {
        const double v = numeric_arg(p, 0);
        return sample([&](double) { return v; });
    }
    if (p.name == "zero") return sample([](double) { return 0.0; });
    if (p.name == "indicator") {
        const double lo = numeric_arg(p, 0), hi = numeric_arg(p, 1);
        return sample([&](double x) { return (x >= lo && x <= hi) ? 1.0 : 0.0; });
    }
    if (p.name == "cosexp") {
        return sample([&](double x) {
            const double c = 1.0 - std::cos(x);
            const double e = std::exp(1.0 - x) - 1.0;
            return c * c * e * e;
        });
    }
    if (p.name == "file") {
        if (p.args.size() != 1)
            throw ValidationError("coefficient preset 'file': expects one path argument");
        return read_tabulated(p.args[0], grid.nx);
    }
    throw ValidationError("unknown coefficient preset '" + p.name + "'");
}

CoefficientSet CoefficientSet::linear(std::vector<double> a_values) {
    CoefficientSet c;
    c.a = std::move(a_values);
    return c;
}

void CoefficientSet::validate(const SpaceTimeGrid& grid) const {
    if (a.size() != grid.nx)
        throw ValidationError("CoefficientSet: a length does not match grid");
    for (double aj : a)
        if (!(aj > 0.0)) throw ValidationError("CoefficientSet: a must be positive at interior nodes");
    for (const auto* v : {&b, &c, &d})
        if (!v->empty() && v->size() != grid.nx)
            throw ValidationError("CoefficientSet: coefficient length does not match grid");
    if (!(q >= 1.0)) throw ValidationError("CoefficientSet: q must be >= 1");
}

}  // namespace initrec
