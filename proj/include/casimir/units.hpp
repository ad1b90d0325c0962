#pragma once

// Conversion between the human units accepted at the boundary (config
// files, command line) and the internal Gaussian-CGS system.

#include "casimir/core.hpp"

#include <array>
#include <string>
#include <string_view>

namespace casimir {

enum class Dimension { length, temperature, angular_frequency, mass, volume, rate };

enum class Unit { micrometer, nanometer, centimeter, kelvin, hertz, rad_per_s, kilogram, gram, cubic_cm, per_second };

/// A number with its declared unit, as read from user input.
struct Quantity {
    double value;
    Unit unit;
};

namespace detail {

struct UnitInfo {
    Unit unit;
    Dimension dimension;
    double to_cgs; // internal value = value * to_cgs
    std::string_view canonical;
};

// 2*pi for Hz -> rad/s.
inline constexpr std::array<UnitInfo, 10> kUnits{{
    {Unit::micrometer, Dimension::length, 1e-4, "um"},
    {Unit::nanometer, Dimension::length, 1e-7, "nm"},
    {Unit::centimeter, Dimension::length, 1.0, "cm"},
    {Unit::kelvin, Dimension::temperature, 1.0, "K"},
    {Unit::hertz, Dimension::angular_frequency, 2.0 * kPi, "Hz"},
    {Unit::rad_per_s, Dimension::angular_frequency, 1.0, "rad/s"},
    {Unit::kilogram, Dimension::mass, 1e3, "kg"},
    {Unit::gram, Dimension::mass, 1.0, "g"},
    {Unit::cubic_cm, Dimension::volume, 1.0, "cm3"},
    {Unit::per_second, Dimension::rate, 1.0, "/s"},
}};

inline const UnitInfo& info(Unit u)
{
    for (const auto& i : kUnits)
        if (i.unit == u)
            return i;
    throw DomainError("unknown unit enumerator");
}

} // namespace detail

inline Dimension dimension_of(Unit u) { return detail::info(u).dimension; }

inline std::string_view unit_name(Unit u) { return detail::info(u).canonical; }

/// Accepts the spellings found in hand-written config files:
/// um, µm, micron, nm, cm, K, Hz, rad/s, kg, g, cm3, cm^3, cm³, /s, s^-1, 1/s.
inline Unit parse_unit(std::string_view tag)
{
    struct Alias {
        std::string_view text;
        Unit unit;
    };
    static constexpr Alias aliases[] = {
        {"um", Unit::micrometer},   {"µm", Unit::micrometer},    {"μm", Unit::micrometer},
        {"micron", Unit::micrometer}, {"nm", Unit::nanometer},   {"cm", Unit::centimeter},
        {"K", Unit::kelvin},        {"Hz", Unit::hertz},         {"rad/s", Unit::rad_per_s},
        {"kg", Unit::kilogram},     {"g", Unit::gram},           {"cm3", Unit::cubic_cm},
        {"cm^3", Unit::cubic_cm},   {"cm³", Unit::cubic_cm},     {"/s", Unit::per_second},
        {"1/s", Unit::per_second},  {"s^-1", Unit::per_second},  {"s-1", Unit::per_second},
        {"s⁻¹", Unit::per_second},
    };
    for (const auto& a : aliases)
        if (a.text == tag)
            return a.unit;
    throw ConfigError("unknown unit tag '" + std::string(tag) + "'");
}

inline double to_internal(double value, Unit unit) { return value * detail::info(unit).to_cgs; }

inline double to_internal(const Quantity& q) { return to_internal(q.value, q.unit); }

inline double from_internal(double value, Unit unit) { return value / detail::info(unit).to_cgs; }

/// Converts and checks that the unit measures the expected dimension.
inline double to_internal(const Quantity& q, Dimension expected, std::string_view what)
{
    if (dimension_of(q.unit) != expected)
        throw ConfigError("unit '" + std::string(unit_name(q.unit)) + "' is not valid for " + std::string(what));
    return to_internal(q);
}

} // namespace casimir
