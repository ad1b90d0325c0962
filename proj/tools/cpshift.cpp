// cpshift: separation scans of the trap-frequency shift, comparison with
// measured points, and the built-in self-checks.
//
// Exit status: 0 ok, 1 a validation check failed, 2 bad configuration or
// input, 3 numerical failure, 4 file I/O error.

#include "casimir/casimir.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

enum ExitCode { kOk = 0, kCheckFailed = 1, kConfig = 2, kNumerical = 3, kIo = 4 };

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::ifstream open_in(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path + "' for reading");
    return in;
}

struct ScanArgs {
    std::optional<double> d_min_um, d_max_um, ts, te, eps0, sigma0;
    std::optional<std::size_t> steps;
    std::optional<unsigned> workers;
    std::string config, out;
};

int run_scan_command(const ScanArgs& args)
{
    using namespace casimir;
    RunConfig cfg;
    if (!args.config.empty()) {
        auto in = open_in(args.config);
        cfg = parse_config(in);
    }
    if (args.d_min_um)
        cfg.d_min = to_internal(*args.d_min_um, Unit::micrometer);
    if (args.d_max_um)
        cfg.d_max = to_internal(*args.d_max_um, Unit::micrometer);
    if (args.steps)
        cfg.steps = *args.steps;
    if (args.ts)
        cfg.T_S = *args.ts;
    if (args.te)
        cfg.T_E = *args.te;
    if (args.eps0)
        cfg.eps0 = *args.eps0;
    if (args.sigma0)
        cfg.sigma0 = *args.sigma0;
    if (args.workers)
        cfg.workers = *args.workers;

    ScanSpec spec;
    spec.trap = cfg.trap();
    spec.settings = cfg.settings();
    spec.d_min = cfg.d_min.value_or(spec.d_min);
    spec.d_max = cfg.d_max.value_or(spec.d_max);
    spec.steps = cfg.steps.value_or(spec.steps);
    spec.T_S = cfg.T_S.value_or(spec.T_S);
    spec.T_E = cfg.T_E.value_or(spec.T_E);
    spec.workers = cfg.workers.value_or(1);
    const PermittivityModel bare = cfg.bare_model();
    spec.variants = {{variant_label(bare), bare}};
    if (cfg.sigma0) {
        const PermittivityModel cond = bare.with_conductivity(*cfg.sigma0);
        spec.variants.push_back({variant_label(cond), cond});
    }
    spec.validate();

    const ScanTable table = run_scan(spec);
    for (const auto& row : table.rows)
        for (const auto& cell : row.cells)
            if (!cell.result)
                std::cerr << "cpshift: " << cell.error << '\n';

    if (args.out.empty()) {
        write_table(std::cout, table);
    } else {
        std::ofstream out(args.out);
        if (!out)
            throw IoError("cannot open '" + args.out + "' for writing");
        write_table(out, table);
        if (!out.flush())
            throw IoError("write to '" + args.out + "' failed");
    }
    return table.failures() == 0 ? kOk : kNumerical;
}

int run_compare_command(const std::string& table_path, const std::string& data_path, const std::string& column)
{
    using namespace casimir;
    auto table_in = open_in(table_path);
    const DelimitedTable table = read_table(table_in);
    auto data_in = open_in(data_path);
    const auto data = read_data(data_in);
    const ResidualReport report = compare_with_data(theory_curve(table, column), data);
    write_report(std::cout, report);
    return kOk;
}

int run_validate_command(bool quick, unsigned workers)
{
    casimir::validation::Options opt;
    opt.quick = quick;
    opt.workers = workers;
    bool all = true;
    int index = 1;
    for (const auto& check : casimir::validation::run_all(opt)) {
        std::printf("[%s] %d. %s: %s\n", check.passed ? "PASS" : "FAIL", index++, check.name.c_str(),
                    check.detail.c_str());
        all = all && check.passed;
    }
    return all ? kOk : kCheckFailed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Thermal atom-wall force and trap-frequency shift calculator"};
    app.require_subcommand(1);

    ScanArgs scan_args;
    auto* scan = app.add_subcommand("scan", "Scan gamma_x over trap-center separation and print a table");
    scan->add_option("--d-min", scan_args.d_min_um, "Smallest separation (um)");
    scan->add_option("--d-max", scan_args.d_max_um, "Largest separation (um)");
    scan->add_option("--steps", scan_args.steps, "Number of grid points (>= 2)");
    scan->add_option("--ts", scan_args.ts, "Substrate temperature (K)");
    scan->add_option("--te", scan_args.te, "Environment temperature (K)");
    scan->add_option("--eps0", scan_args.eps0, "Static permittivity of the wall");
    scan->add_option("--sigma0", scan_args.sigma0,
                     "Static conductivity (1/s); adds a second model column. Absent: conductivity neglected");
    scan->add_option("--config", scan_args.config, "Configuration file; flags override its values");
    scan->add_option("--out", scan_args.out, "Output file (default: stdout)");
    scan->add_option("--workers", scan_args.workers, "Rows computed in parallel");

    std::string table_path, data_path, column;
    auto* compare = app.add_subcommand("compare", "Residuals of measured points against a scan table");
    compare->add_option("--table", table_path, "Table written by 'scan'")->required();
    compare->add_option("--data", data_path, "Data file: d_um gamma d_err_um gamma_err")
        ->required()
        ;
    compare->add_option("--column", column, "Theory column (default: first gamma_x column)");

    bool quick = false;
    unsigned workers = 1;
    auto* validate = app.add_subcommand("validate", "Run the built-in self-checks");
    validate->add_flag("--quick", quick, "Fewer distances and a coarse scan grid");
    validate->add_option("--workers", workers, "Rows computed in parallel in the scan check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (*scan)
            return run_scan_command(scan_args);
        if (*compare)
            return run_compare_command(table_path, data_path, column);
        return run_validate_command(quick, workers);
    } catch (const IoError& e) {
        std::cerr << "cpshift: " << e.what() << '\n';
        return kIo;
    } catch (const casimir::ConfigError& e) {
        std::cerr << "cpshift: configuration error: " << e.what() << '\n';
        return kConfig;
    } catch (const casimir::ParseError& e) {
        std::cerr << "cpshift: input error: " << e.what() << '\n';
        return kConfig;
    } catch (const casimir::DomainError& e) {
        std::cerr << "cpshift: input error: " << e.what() << '\n';
        return kConfig;
    } catch (const casimir::NumericalError& e) {
        std::cerr << "cpshift: numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::exception& e) {
        std::cerr << "cpshift: " << e.what() << '\n';
        return kNumerical;
    }
}
