#pragma once

// Key-value run configuration.
//
//   # comment
//   omega0     = 229 Hz
//   a          = 2.5 um
//   R_x        = 2.69 um
//   m          = 1.443e-22 g
//   alpha0     = 4.73e-23 cm3
//   d_min      = 6.5 um
//   d_max      = 11 um
//   steps      = 50
//   T_S        = 310 K
//   T_E        = 310 K
//   eps0       = 3.81
//   sigma0     = 1e2 /s
//   oscillator = 0.7 1.3e16 rad/s 0 rad/s     # strength, resonance, damping
//   rel_tol    = 1e-10
//   workers    = 4
//
// Dimensioned values need a unit tag; plain numbers must not carry one.
// Keys may appear in any order; a repeated key overrides the earlier one,
// except "oscillator", which accumulates.

#include "casimir/core.hpp"
#include "casimir/materials.hpp"
#include "casimir/units.hpp"

#include <cmath>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace casimir {

struct RunConfig {
    std::optional<double> omega0, a, R_x, m, alpha0; // CGS
    std::optional<double> d_min, d_max;              // cm
    std::optional<std::size_t> steps;
    std::optional<double> T_S, T_E;
    std::optional<double> eps0;
    std::optional<double> sigma0; // s^-1
    std::vector<Oscillator> oscillators;
    std::optional<double> rel_tol, abs_tol, matsubara_tail_tol;
    std::optional<std::size_t> max_subdivisions, matsubara_max_terms;
    std::optional<unsigned> workers;

    TrapConfig trap() const
    {
        const TrapConfig def;
        return {omega0.value_or(def.omega0()), a.value_or(def.a()), R_x.value_or(def.R_x()), m.value_or(def.m()),
                alpha0.value_or(def.alpha0())};
    }

    QuadratureSettings settings() const
    {
        const QuadratureSettings def;
        return {rel_tol.value_or(def.rel_tol()), abs_tol.value_or(def.abs_tol()),
                max_subdivisions.value_or(def.max_subdivisions()),
                matsubara_tail_tol.value_or(def.matsubara_tail_tol()),
                matsubara_max_terms.value_or(def.matsubara_max_terms())};
    }

    /// Model without conductivity; sigma0 is applied per scan variant.
    PermittivityModel bare_model() const { return PermittivityModel(eps0.value_or(3.81), oscillators); }
};

namespace detail {

inline std::vector<std::string> tokens(const std::string& s)
{
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string t; in >> t;)
        out.push_back(t);
    return out;
}

inline double config_number(const std::string& token, const std::string& where)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(token, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != token.size() || !std::isfinite(v))
        throw ConfigError(where + ": '" + token + "' is not a finite number");
    return v;
}

inline std::size_t config_count(const std::string& token, const std::string& where)
{
    const double v = config_number(token, where);
    if (v < 0.0 || v != std::floor(v) || v > 1e15)
        throw ConfigError(where + ": '" + token + "' is not a non-negative integer");
    return static_cast<std::size_t>(v);
}

inline double config_quantity(const std::vector<std::string>& toks, std::size_t at, Dimension dim,
                              const std::string& where)
{
    if (at + 1 >= toks.size())
        throw ConfigError(where + ": missing unit tag");
    return to_internal(Quantity{config_number(toks[at], where), parse_unit(toks[at + 1])}, dim, where);
}

} // namespace detail

inline RunConfig parse_config(std::istream& is)
{
    RunConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const auto eq = line.find('=');
        const auto head = detail::tokens(line.substr(0, eq == std::string::npos ? line.size() : eq));
        if (head.empty() && eq == std::string::npos)
            continue;
        const std::string where = "config line " + std::to_string(line_no);
        if (eq == std::string::npos || head.size() != 1)
            throw ConfigError(where + ": expected 'key = value [unit]'");
        const std::string& key = head.front();
        const auto v = detail::tokens(line.substr(eq + 1));
        if (v.empty())
            throw ConfigError(where + ": no value for '" + key + "'");
        const std::string at = where + " (" + key + ")";

        auto quantity = [&](Dimension dim) {
            if (v.size() != 2)
                throw ConfigError(at + ": expected '<number> <unit>'");
            return detail::config_quantity(v, 0, dim, at);
        };
        auto plain = [&] {
            if (v.size() != 1)
                throw ConfigError(at + ": expected a plain number without unit");
            return detail::config_number(v[0], at);
        };
        auto count = [&] {
            if (v.size() != 1)
                throw ConfigError(at + ": expected an integer");
            return detail::config_count(v[0], at);
        };

        if (key == "omega0")
            cfg.omega0 = quantity(Dimension::angular_frequency);
        else if (key == "a")
            cfg.a = quantity(Dimension::length);
        else if (key == "R_x")
            cfg.R_x = quantity(Dimension::length);
        else if (key == "m")
            cfg.m = quantity(Dimension::mass);
        else if (key == "alpha0")
            cfg.alpha0 = quantity(Dimension::volume);
        else if (key == "d_min")
            cfg.d_min = quantity(Dimension::length);
        else if (key == "d_max")
            cfg.d_max = quantity(Dimension::length);
        else if (key == "T_S")
            cfg.T_S = quantity(Dimension::temperature);
        else if (key == "T_E")
            cfg.T_E = quantity(Dimension::temperature);
        else if (key == "sigma0")
            cfg.sigma0 = quantity(Dimension::rate);
        else if (key == "eps0")
            cfg.eps0 = plain();
        else if (key == "rel_tol")
            cfg.rel_tol = plain();
        else if (key == "abs_tol")
            cfg.abs_tol = plain();
        else if (key == "matsubara_tail_tol")
            cfg.matsubara_tail_tol = plain();
        else if (key == "steps")
            cfg.steps = count();
        else if (key == "max_subdivisions")
            cfg.max_subdivisions = count();
        else if (key == "matsubara_max_terms")
            cfg.matsubara_max_terms = count();
        else if (key == "workers")
            cfg.workers = static_cast<unsigned>(count());
        else if (key == "oscillator") {
            if (v.size() != 5)
                throw ConfigError(at + ": expected '<strength> <resonance> <unit> <damping> <unit>'");
            cfg.oscillators.push_back({detail::config_number(v[0], at),
                                       detail::config_quantity(v, 1, Dimension::angular_frequency, at),
                                       detail::config_quantity(v, 3, Dimension::angular_frequency, at)});
        } else {
            throw ConfigError(where + ": unknown key '" + key + "'");
        }
    }
    if (cfg.sigma0 && *cfg.sigma0 < 0.0)
        throw ConfigError("sigma0 must be >= 0");
    for (const auto& [name, value] : {std::pair{"T_S", cfg.T_S}, std::pair{"T_E", cfg.T_E},
                                      std::pair{"d_min", cfg.d_min}, std::pair{"d_max", cfg.d_max}})
        if (value)
            detail::require_positive(name, *value);
    if (cfg.workers && *cfg.workers == 0)
        throw ConfigError("workers must be >= 1");
    // Build once so that bad values fail here rather than mid-scan.
    (void)cfg.trap();
    (void)cfg.settings();
    (void)cfg.bare_model();
    return cfg;
}

} // namespace casimir
