#include "cli.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dmotto/audit.hpp"
#include "dmotto/bounds.hpp"
#include "dmotto/error.hpp"
#include "dmotto/local.hpp"
#include "dmotto/report.hpp"
#include "dmotto/spectrum.hpp"
#include "dmotto/sweep.hpp"

namespace dmotto::cli {

namespace {

struct CycleArgs {
    std::string protocol;
    std::optional<double> J, D, D1, D2, B, B1, B2, T_hot, T_cold;
};

struct OutputArgs {
    std::string out = "-";
    std::string format = "csv";
    unsigned workers = 1;
    bool timestamp = false;
};

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

void deliver(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-")
        out << text;
    else
        write_text(path, text);
}

double require(const std::optional<double>& v, const char* flag, const std::string& protocol) {
    if (!v) throw InvalidParameter(std::string("missing ") + flag + " (required for --protocol " + protocol + ")");
    return *v;
}

void forbid(const std::optional<double>& v, const char* flag, const std::string& protocol) {
    if (v) throw InvalidParameter(std::string(flag) + " does not apply to --protocol " + protocol);
}

int report_violations(const std::vector<Violation>& violations, std::ostream& err) {
    if (violations.empty()) return kExitOk;
    err << "second-law scan: " << violations.size() << " violation(s)\n";
    for (const auto& v : violations)
        err << "  point " << v.index << ": " << to_string(v.kind) << " value=" << format_number(v.value)
            << " limit=" << format_number(v.limit) << "\n";
    return kExitInvariant;
}

int cmd_cycle(const CycleArgs& a, std::ostream& out, std::ostream& err) {
    OttoProtocol proto;
    if (a.protocol == "vary-dm") {
        forbid(a.D, "--D", a.protocol);
        forbid(a.B1, "--B1", a.protocol);
        forbid(a.B2, "--B2", a.protocol);
        proto = VaryDM{require(a.J, "--J", a.protocol), require(a.B, "--B", a.protocol),
                       require(a.D1, "--D1", a.protocol), require(a.D2, "--D2", a.protocol)};
    } else {
        forbid(a.B, "--B", a.protocol);
        forbid(a.D1, "--D1", a.protocol);
        forbid(a.D2, "--D2", a.protocol);
        proto = VaryField{require(a.J, "--J", a.protocol), require(a.D, "--D", a.protocol),
                          require(a.B1, "--B1", a.protocol), require(a.B2, "--B2", a.protocol)};
    }
    const BathSpec baths{require(a.T_hot, "--T-hot", a.protocol), require(a.T_cold, "--T-cold", a.protocol)};
    validate(proto);
    validate(baths);

    const CycleResult r = run_cycle(proto, baths);
    std::string text = "quantity,value\n";
    const auto line = [&](std::string_view k, std::string_view v) {
        text += k;
        text += ',';
        text += v;
        text += '\n';
    };
    line("protocol", protocol_name(proto));
    line("Q_hot", format_number(r.Q_hot));
    line("Q_cold", format_number(r.Q_cold));
    line("W", format_number(r.W));
    line("eta", r.eta ? format_number(*r.eta) : "");
    line("class", to_string(r.mode));
    line("first_law_residual", format_number(r.first_law_residual));
    if (std::holds_alternative<VaryField>(proto)) {
        const LocalCycleResult l = local_cycle(proto, baths);
        line("q1", format_number(l.q1));
        line("q2", format_number(l.q2));
        line("w", format_number(l.w));
        line("eta_local", l.eta_local ? format_number(*l.eta_local) : "");
        line("opposed", l.flags.opposed ? (*l.flags.opposed ? "true" : "false") : "");
    }
    out << text;

    const GridPoint g{proto, baths};
    return report_violations(second_law_scan(std::span(&g, 1)), err);
}

int run_and_emit(const SweepSpec& spec, const OutputArgs& o, std::ostream& out, std::ostream& err) {
    const auto format = parse_format(o.format);
    if (!format) throw InvalidParameter("--format must be csv or json-report, got '" + o.format + "'");
    if (o.workers == 0) throw InvalidParameter("--workers must be at least 1");

    RunArtifact art = run_sweep(spec, o.workers);
    if (o.timestamp) art.metadata.timestamp = utc_now();

    const bool to_file = !(o.out.empty() || o.out == "-");
    if (to_file)
        emit(art, *format, o.out);
    else if (*format == Format::Csv)
        out << to_csv(art);
    else
        out << to_json_report(art.metadata, &art, {});

    const auto points = expand(spec);
    return report_violations(second_law_scan(points, o.workers), err);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cmd_audit(const std::vector<std::string>& claims, const OutputArgs& o, std::ostream& out) {
    AuditConfig cfg;
    if (!claims.empty()) {
        cfg.claims.clear();
        for (const auto& c : claims) cfg.claims.push_back(parse_claim(c));
    }
    if (o.workers == 0) throw InvalidParameter("--workers must be at least 1");
    cfg.workers = o.workers;
    const auto reports = full_audit(cfg);

    RunMetadata meta;
    meta.version = std::string(library_version());
    if (o.timestamp) meta.timestamp = utc_now();
    deliver(to_json_report(meta, nullptr, reports), o.out, out);
    return kExitOk;
}

int cmd_oracle(std::size_t draws, std::uint64_t seed, double tolerance, std::ostream& out, std::ostream& err) {
    if (draws == 0) throw InvalidParameter("--draws must be at least 1");
    const OracleSummary s = spectrum_oracle(draws, seed);
    out << "quantity,value\n"
        << "draws," << s.draws << "\n"
        << "seed," << seed << "\n"
        << "max_eigenvalue_deviation," << format_number(s.max_eigenvalue_deviation) << "\n"
        << "seconds," << format_number(s.seconds) << "\n";
    if (s.max_eigenvalue_deviation > tolerance) {
        err << "oracle: deviation " << format_number(s.max_eigenvalue_deviation) << " exceeds "
            << format_number(tolerance) << "\n";
        return kExitInvariant;
    }
    return kExitOk;
}

void add_output_flags(CLI::App* sub, OutputArgs& o, bool with_format) {
    sub->add_option("--out", o.out, "Output path ('-' for stdout)");
    if (with_format)
        sub->add_option("--format", o.format, "csv | json-report")->check(CLI::IsMember({"csv", "json-report"}));
    sub->add_option("--workers", o.workers, "Worker threads");
    sub->add_flag("--timestamp", o.timestamp, "Record the UTC run time in the metadata");
}

}  // namespace

OracleSummary spectrum_oracle(std::size_t draws, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    OracleSummary s;
    s.draws = draws;
    const auto t0 = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < draws; ++i) {
        const SystemParams p{u(rng), u(rng), u(rng)};
        const Spectrum a = analytic_spectrum(p);
        const Spectrum n = numeric_spectrum(build_hamiltonian(p));
        for (std::size_t k = 0; k < 4; ++k)
            s.max_eigenvalue_deviation = std::max(s.max_eigenvalue_deviation, std::abs(a.energies[k] - n.energies[k]));
    }
    s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return s;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Two-spin XX Heisenberg + DM quantum Otto cycle calculator", "dmotto"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(library_version()));

    CycleArgs cyc;
    auto* cycle = app.add_subcommand("cycle", "Evaluate one Otto cycle");
    cycle->add_option("--protocol", cyc.protocol, "vary-dm | vary-field")
        ->required()
        ->check(CLI::IsMember({"vary-dm", "vary-field"}));
    cycle->add_option("--J", cyc.J, "Exchange coupling");
    cycle->add_option("--D", cyc.D, "DM strength (vary-field)");
    cycle->add_option("--D1", cyc.D1, "Hot-side DM strength (vary-dm)");
    cycle->add_option("--D2", cyc.D2, "Cold-side DM strength (vary-dm)");
    cycle->add_option("--B", cyc.B, "Field (vary-dm)");
    cycle->add_option("--B1", cyc.B1, "Hot-side field (vary-field)");
    cycle->add_option("--B2", cyc.B2, "Cold-side field (vary-field)");
    cycle->add_option("--T-hot", cyc.T_hot, "Hot bath temperature");
    cycle->add_option("--T-cold", cyc.T_cold, "Cold bath temperature");

    std::string config_path;
    OutputArgs sweep_out;
    auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep from a JSON config");
    sweep->add_option("--config", config_path, "Sweep configuration file")->required();
    add_output_flags(sweep, sweep_out, true);

    std::string figure;
    OutputArgs fig_out;
    auto* figures = app.add_subcommand("figures", "Run a built-in figure preset");
    figures->add_option("figure", figure, "fig1 | fig2 | fig3 | fig4 | fig5")
        ->required()
        ->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4", "fig5"}));
    add_output_flags(figures, fig_out, true);

    std::vector<std::string> claims;
    OutputArgs audit_out;
    auto* audit = app.add_subcommand("audit", "Adjudicate claims C1..C8 and write a JSON report");
    audit->add_option("--claims", claims, "Comma-separated claim ids (default: all)")->delimiter(',');
    add_output_flags(audit, audit_out, false);

    std::size_t draws = 1000;
    std::uint64_t seed = 1;
    double tolerance = 1e-10;
    auto* oracle = app.add_subcommand("oracle", "Cross-check analytic and numeric spectra");
    oracle->add_option("--draws", draws, "Number of random parameter draws");
    oracle->add_option("--seed", seed, "RNG seed");
    oracle->add_option("--tolerance", tolerance, "Maximum allowed eigenvalue deviation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (*cycle) return cmd_cycle(cyc, out, err);
        if (*sweep) return run_and_emit(parse_config(read_file(config_path)), sweep_out, out, err);
        if (*figures) return run_and_emit(figure_preset(*parse_figure(figure)), fig_out, out, err);
        if (*audit) return cmd_audit(claims, audit_out, out);
        if (*oracle) return cmd_oracle(draws, seed, tolerance, out, err);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const InvariantViolation& e) {
        err << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const NumericError& e) {
        err << "numeric failure: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const ContractError& e) {
        err << "internal contract failure: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}

}  // namespace dmotto::cli
