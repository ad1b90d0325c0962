#pragma once

// Separation scans of gamma_x, the delimited table they are written to,
// and residuals of measured points against a theory column.
//
// Table format (tab separated, one row per separation):
//   # <free comment lines>
//   # d_um  gamma_x[<variant>]  phi_e_dyn[<variant>] ...
//   6.5     0.000276...         -2.06e-23 ...
// Separations are in micrometres; failed cells are written as "nan".
//
// Data format: one point per line, "d_um gamma d_err_um gamma_err",
// whitespace or comma separated; '#' starts a comment line.

#include "casimir/core.hpp"
#include "casimir/materials.hpp"
#include "casimir/shift.hpp"
#include "casimir/units.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace casimir {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ModelVariant {
    std::string name;
    PermittivityModel model;
};

/// "bare" for a non-conducting model, "sigma0=<value>/s" otherwise.
inline std::string variant_label(const PermittivityModel& model)
{
    if (!model.is_conducting())
        return "bare";
    char buf[64];
    std::snprintf(buf, sizeof buf, "sigma0=%g/s", *model.conductivity());
    return buf;
}

struct ScanSpec {
    double d_min = 6.5e-4; // cm
    double d_max = 11e-4;  // cm
    std::size_t steps = 50;
    double T_S = 310.0;
    double T_E = 310.0;
    std::vector<ModelVariant> variants{{"bare", PermittivityModel{}}};
    TrapConfig trap;
    QuadratureSettings settings;
    unsigned workers = 1;

    void validate() const
    {
        detail::require_positive("d_min", d_min);
        detail::require_positive("d_max", d_max);
        detail::require_positive("T_S", T_S);
        detail::require_positive("T_E", T_E);
        if (!(d_min > trap.reach()))
            throw ConfigError("d_min must exceed a + R_x");
        if (!(d_min < d_max))
            throw ConfigError("d_min must be smaller than d_max");
        if (steps < 2)
            throw ConfigError("steps must be >= 2");
        if (variants.empty())
            throw ConfigError("at least one model variant is required");
        if (workers < 1)
            throw ConfigError("workers must be >= 1");
    }

    /// Uniform grid; the last node is exactly d_max.
    double node(std::size_t i) const
    {
        if (i + 1 == steps)
            return d_max;
        return d_min + (d_max - d_min) * static_cast<double>(i) / static_cast<double>(steps - 1);
    }
};

struct ScanCell {
    std::optional<FrequencyShiftResult> result;
    std::string error;
};

struct ScanRow {
    double d = 0.0; // cm
    std::vector<ScanCell> cells;
};

struct ScanTable {
    double T_S = 0.0;
    double T_E = 0.0;
    std::vector<std::string> variant_names;
    std::vector<ScanRow> rows;

    std::size_t failures() const
    {
        std::size_t n = 0;
        for (const auto& r : rows)
            for (const auto& c : r.cells)
                n += c.result ? 0 : 1;
        return n;
    }

    /// gamma_x column of one variant; NaN where the cell failed.
    std::vector<double> gamma_column(std::size_t variant) const
    {
        std::vector<double> out;
        out.reserve(rows.size());
        for (const auto& r : rows)
            out.push_back(r.cells.at(variant).result ? r.cells[variant].result->gamma_x
                                                      : std::numeric_limits<double>::quiet_NaN());
        return out;
    }
};

/// Computes gamma_x for every (d, variant). Rows are distributed over
/// spec.workers threads; every row is computed the same way whatever the
/// thread count, so output is reproducible. A failing cell records its
/// message and the scan continues.
inline ScanTable run_scan(const ScanSpec& spec)
{
    spec.validate();
    ScanTable table;
    table.T_S = spec.T_S;
    table.T_E = spec.T_E;
    for (const auto& v : spec.variants)
        table.variant_names.push_back(v.name);
    table.rows.resize(spec.steps);

    auto compute_row = [&](std::size_t i) {
        ScanRow& row = table.rows[i];
        row.d = spec.node(i);
        row.cells.resize(spec.variants.size());
        for (std::size_t v = 0; v < spec.variants.size(); ++v) {
            try {
                row.cells[v].result =
                    gamma_x(spec.variants[v].model, ThermalScenario(row.d, spec.T_S, spec.T_E), spec.trap, spec.settings);
            } catch (const std::exception& e) {
                char where[96];
                std::snprintf(where, sizeof where, "d = %.6g um, variant %s: ", from_internal(row.d, Unit::micrometer),
                              spec.variants[v].name.c_str());
                row.cells[v].error = where + std::string(e.what());
            }
        }
    };

    const unsigned workers = std::min<unsigned>(spec.workers, static_cast<unsigned>(spec.steps));
    if (workers <= 1) {
        for (std::size_t i = 0; i < spec.steps; ++i)
            compute_row(i);
        return table;
    }
    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < spec.steps; i = next++)
                    compute_row(i);
            });
    }
    return table;
}

namespace detail {

inline std::string format_number(double v, int digits = 17)
{
    if (std::isnan(v))
        return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

inline std::vector<std::string> split_fields(std::string_view line)
{
    std::vector<std::string> out;
    std::string current;
    for (char ch : line) {
        if (ch == ' ' || ch == '\t' || ch == ',' || ch == '\r') {
            if (!current.empty())
                out.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(ch);
        }
    }
    if (!current.empty())
        out.push_back(std::move(current));
    return out;
}

inline double parse_number(const std::string& field, std::size_t line_no)
{
    if (field == "nan" || field == "NaN")
        return std::numeric_limits<double>::quiet_NaN();
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(field, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != field.size())
        throw ParseError("line " + std::to_string(line_no) + ": '" + field + "' is not a number");
    return v;
}

inline std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

} // namespace detail

inline std::vector<std::string> table_columns(const ScanTable& table)
{
    std::vector<std::string> cols{"d_um"};
    static constexpr const char* fields[] = {"gamma_x",       "phi_e_dyn", "phi_n_ts_dyn", "phi_n_te_dyn",
                                             "f_cp_dyn",      "f_n_ts_dyn", "f_n_te_dyn"};
    for (const auto& name : table.variant_names)
        for (const char* f : fields)
            cols.push_back(std::string(f) + "[" + name + "]");
    return cols;
}

inline void write_table(std::ostream& os, const ScanTable& table)
{
    os << "# fractional trap-frequency shift gamma_x versus trap-center separation\n";
    os << "# T_S = " << detail::format_number(table.T_S) << " K, T_E = " << detail::format_number(table.T_E)
       << " K; forces in dyn, gamma_x dimensionless\n";
    const auto cols = table_columns(table);
    os << "#";
    for (const auto& c : cols)
        os << ' ' << c;
    os << '\n';
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& row : table.rows) {
        os << detail::format_number(from_internal(row.d, Unit::micrometer), 15);
        for (const auto& cell : row.cells) {
            if (cell.result) {
                const auto& r = *cell.result;
                const auto& dec = r.decomposition;
                for (double v : {r.gamma_x, dec.phi_e, dec.phi_n_ts, dec.phi_n_te, dec.f_cp, dec.f_n_ts, dec.f_n_te})
                    os << '\t' << detail::format_number(v);
            } else {
                for (int k = 0; k < 7; ++k)
                    os << '\t' << detail::format_number(nan);
            }
        }
        os << '\n';
    }
}

/// A delimited table as read back from disk.
struct DelimitedTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::size_t column_index(std::string_view name) const
    {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name)
                return i;
        throw ParseError("table has no column '" + std::string(name) + "'");
    }
};

inline DelimitedTable read_table(std::istream& is)
{
    DelimitedTable t;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto body = detail::trim(line);
        if (body.empty())
            continue;
        if (body.front() == '#') {
            auto fields = detail::split_fields(body.substr(1));
            if (!fields.empty() && fields.front() == "d_um")
                t.columns = std::move(fields);
            continue;
        }
        if (t.columns.empty())
            throw ParseError("line " + std::to_string(line_no) + ": data before the '# d_um ...' column header");
        const auto fields = detail::split_fields(body);
        if (fields.size() != t.columns.size())
            throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(t.columns.size()) +
                             " fields, found " + std::to_string(fields.size()));
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& f : fields)
            row.push_back(detail::parse_number(f, line_no));
        t.rows.push_back(std::move(row));
    }
    if (t.columns.empty())
        throw ParseError("no '# d_um ...' column header found");
    return t;
}

/// gamma as a function of separation, separations in cm, ascending.
struct TheoryCurve {
    std::vector<double> d;
    std::vector<double> gamma;
};

inline TheoryCurve theory_curve(const ScanTable& table, std::size_t variant)
{
    TheoryCurve c;
    const auto col = table.gamma_column(variant);
    for (std::size_t i = 0; i < table.rows.size(); ++i)
        if (!std::isnan(col[i])) {
            c.d.push_back(table.rows[i].d);
            c.gamma.push_back(col[i]);
        }
    return c;
}

/// Picks a gamma column out of a table read from disk; rows with NaN are
/// dropped. An empty column name selects the first gamma_x column.
inline TheoryCurve theory_curve(const DelimitedTable& table, std::string_view column = {})
{
    std::size_t index = 0;
    if (column.empty()) {
        for (std::size_t i = 0; i < table.columns.size() && index == 0; ++i)
            if (table.columns[i].rfind("gamma_x", 0) == 0)
                index = i;
        if (index == 0)
            throw ParseError("table has no gamma_x column");
    } else {
        index = table.column_index(column);
    }
    const std::size_t d_index = table.column_index("d_um");
    TheoryCurve c;
    for (const auto& row : table.rows) {
        if (std::isnan(row[index]) || std::isnan(row[d_index]))
            continue;
        c.d.push_back(to_internal(row[d_index], Unit::micrometer));
        c.gamma.push_back(row[index]);
    }
    for (std::size_t i = 1; i < c.d.size(); ++i)
        if (!(c.d[i] > c.d[i - 1]))
            throw ParseError("table separations are not strictly increasing");
    return c;
}

/// One measured point; d and d_err in cm.
struct DataPoint {
    double d = 0.0;
    double gamma = 0.0;
    double d_err = 0.0;
    double gamma_err = 0.0;
};

inline std::vector<DataPoint> read_data(std::istream& is)
{
    std::vector<DataPoint> points;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto body = detail::trim(line);
        if (body.empty() || body.front() == '#')
            continue;
        const auto fields = detail::split_fields(body);
        if (fields.size() != 4)
            throw ParseError("line " + std::to_string(line_no) + ": expected 'd_um gamma d_err_um gamma_err'");
        DataPoint p{to_internal(detail::parse_number(fields[0], line_no), Unit::micrometer),
                    detail::parse_number(fields[1], line_no),
                    to_internal(detail::parse_number(fields[2], line_no), Unit::micrometer),
                    detail::parse_number(fields[3], line_no)};
        if (!(p.d > 0.0) || !(p.gamma >= 0.0) || !(p.d_err >= 0.0) || !(p.gamma_err >= 0.0))
            throw ParseError("line " + std::to_string(line_no) +
                             ": separation must be > 0, gamma and both errors >= 0");
        points.push_back(p);
    }
    return points;
}

/// Piecewise-linear interpolation; exact at the nodes.
inline double interpolate(const TheoryCurve& curve, double d)
{
    const auto& xs = curve.d;
    if (xs.empty() || d < xs.front() || d > xs.back())
        throw DomainError("separation outside the theory curve");
    auto hi = std::lower_bound(xs.begin(), xs.end(), d);
    std::size_t j = static_cast<std::size_t>(hi - xs.begin());
    if (xs[j] == d)
        return curve.gamma[j];
    const std::size_t i = j - 1;
    const double w = (d - xs[i]) / (xs[j] - xs[i]);
    return (1.0 - w) * curve.gamma[i] + w * curve.gamma[j];
}

struct PointResidual {
    DataPoint point;
    bool in_range = false;
    double theory = std::numeric_limits<double>::quiet_NaN();
    double residual = std::numeric_limits<double>::quiet_NaN(); // gamma_data - gamma_theory
    std::optional<double> normalized;                           // residual / gamma_err
    bool excludes_theory = false;
};

struct ResidualReport {
    std::vector<PointResidual> points;
    std::size_t compared = 0;       // in range with gamma_err > 0
    std::size_t exclusions = 0;     // of those, error box misses the curve
    std::size_t out_of_range = 0;
};

namespace detail {

// Range of the interpolated curve over [lo, hi]; extremes sit at the ends
// or at interior nodes.
inline std::pair<double, double> curve_range(const TheoryCurve& c, double lo, double hi)
{
    double mn = std::min(interpolate(c, lo), interpolate(c, hi));
    double mx = std::max(interpolate(c, lo), interpolate(c, hi));
    for (std::size_t i = 0; i < c.d.size(); ++i)
        if (c.d[i] > lo && c.d[i] < hi) {
            mn = std::min(mn, c.gamma[i]);
            mx = std::max(mx, c.gamma[i]);
        }
    return {mn, mx};
}

} // namespace detail

/// A point "excludes" the theory when its error box
/// [d +- d_err] x [gamma +- gamma_err] does not touch the curve. Points
/// with gamma_err = 0 get no normalized residual and are left out of the
/// exclusion count; points outside the curve's range are flagged and
/// left out as well.
inline ResidualReport compare_with_data(const TheoryCurve& curve, const std::vector<DataPoint>& data)
{
    if (data.empty())
        throw ConfigError("compare_with_data: no data points");
    if (curve.d.size() < 2)
        throw ConfigError("compare_with_data: theory curve needs at least two valid rows");
    ResidualReport report;
    for (const auto& p : data) {
        PointResidual r;
        r.point = p;
        r.in_range = p.d >= curve.d.front() && p.d <= curve.d.back();
        if (!r.in_range) {
            ++report.out_of_range;
            report.points.push_back(r);
            continue;
        }
        r.theory = interpolate(curve, p.d);
        r.residual = p.gamma - r.theory;
        if (p.gamma_err > 0.0) {
            r.normalized = r.residual / p.gamma_err;
            const double lo = std::max(curve.d.front(), p.d - p.d_err);
            const double hi = std::min(curve.d.back(), p.d + p.d_err);
            const auto [mn, mx] = detail::curve_range(curve, lo, hi);
            r.excludes_theory = mx < p.gamma - p.gamma_err || mn > p.gamma + p.gamma_err;
            ++report.compared;
            report.exclusions += r.excludes_theory ? 1 : 0;
        }
        report.points.push_back(r);
    }
    return report;
}

inline void write_report(std::ostream& os, const ResidualReport& report)
{
    os << "# d_um\tgamma\tgamma_theory\tresidual\tnormalized\texcludes\n";
    for (const auto& r : report.points) {
        os << detail::format_number(from_internal(r.point.d, Unit::micrometer), 15) << '\t'
           << detail::format_number(r.point.gamma, 15) << '\t';
        if (!r.in_range) {
            os << "out-of-range\n";
            continue;
        }
        os << detail::format_number(r.theory) << '\t' << detail::format_number(r.residual) << '\t'
           << (r.normalized ? detail::format_number(*r.normalized) : std::string("undefined")) << '\t'
           << (r.normalized ? (r.excludes_theory ? "yes" : "no") : "-") << '\n';
    }
    os << "# compared " << report.compared << ", excluding theory " << report.exclusions << ", out of range "
       << report.out_of_range << '\n';
}

} // namespace casimir
