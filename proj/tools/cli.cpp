#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "entlab/cnot.hpp"
#include "entlab/format.hpp"
#include "entlab/matrix_json.hpp"
#include "entlab/measures.hpp"
#include "entlab/mems.hpp"
#include "entlab/orbit.hpp"
#include "entlab/version.hpp"
#include "io.hpp"
#include "selftest.hpp"

namespace entlab::cli {

namespace {

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw DomainError("cannot open output file: " + out_path);
    out << text;
    if (!out) throw DomainError("write failed: " + out_path);
}

Spectrum parse_spectrum_arg(const std::string& text) {
    std::array<double, 4> p{};
    std::stringstream ss(text);
    std::string item;
    int i = 0;
    while (std::getline(ss, item, ',')) {
        if (i >= 4) throw DomainError("--p expects four comma-separated values");
        try {
            p[static_cast<size_t>(i)] = std::stod(item);
        } catch (const std::exception&) {
            throw DomainError("--p: cannot parse '" + item + "' as a number");
        }
        ++i;
    }
    if (i != 4) throw DomainError("--p expects four comma-separated values");
    return Spectrum(p); // strict: rejects unsorted or unnormalized input
}

double parse_beta(const std::string& text) {
    if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
    double beta = 0.0;
    try {
        beta = std::stod(text);
    } catch (const std::exception&) {
        throw DomainError("--beta: expected a positive number or 'inf'");
    }
    if (!(beta > 0.0)) throw DomainError("--beta must be positive");
    return beta;
}

struct MeasureArgs {
    std::string input;
    std::string out = "-";
};

struct MemsArgs {
    std::string p;
    std::string variant = "psi";
    bool swapped = false;
    std::string out = "-";
};

struct ScanArgs {
    int spectra = 1000;
    long unitaries = 10000;
    int refine = 0;
    std::uint64_t seed = 0;
    std::string measure = "concurrence";
    int streams = 1;
    std::string out;
};

struct CnotArgs {
    std::string coupling;
    double k = 0.0;
    double wc = 1.0;
    std::string beta = "10";
    double rabi = 1.0;
    int steps = 200;
    std::string out;
    double calibrate = -1.0;
    bool do_calibrate = false;
};

struct SelftestArgs {
    bool fast = false;
    std::string scratch;
    std::string fault;
    std::uint64_t seed = 20250809;
};

int run_measure(const MeasureArgs& a) {
    const DensityMatrix rho(matrix_from_json_file(a.input));
    emit(a.out, measure_report_json(measure_report(rho)) + "\n");
    return 0;
}

int run_mems(const MemsArgs& a) {
    const Spectrum p = parse_spectrum_arg(a.p);
    MemsVariant variant;
    variant.form = a.variant == "phi" ? MemsForm::Phi : MemsForm::Psi;
    variant.swapped = a.swapped;
    const DensityMatrix rho = build_mems(p, variant);
    const StarValue cs = c_star(p);
    const StarValue ns = neg_star(p);

    std::ostringstream os;
    os << "{\"state\": " << matrix_to_json(rho.mat())
       << ", \"report\": " << measure_report_json(measure_report(rho))
       << ", \"c_star\": " << fmt12(cs.clipped) << ", \"c_star_raw\": " << fmt12(cs.raw)
       << ", \"neg_star\": " << fmt12(ns.clipped) << ", \"neg_star_raw\": " << fmt12(ns.raw)
       << ", \"eof_upper_bound\": " << fmt12(eof_upper_bound(p)) << "}\n";
    emit(a.out, os.str());
    return 0;
}

int run_scan(const ScanArgs& a) {
    ScanConfig config;
    config.n_spectra = a.spectra;
    config.n_unitaries_per_spectrum = a.unitaries;
    config.refine_steps = a.refine;
    config.measure_kind = measure_kind_from_string(a.measure);
    config.seed = a.seed;
    config.workers = a.streams;

    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<OrbitResult> rows = scan(config);
    write_scan_csv(a.out, scan_run_manifest(config), rows);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "scan: " << rows.size() << " spectra x " << a.unitaries << " unitaries -> "
              << a.out << " (" << fmt12(secs) << " s)\n";
    return 0;
}

int run_cnot(const CnotArgs& a) {
    const GateSpec gate(a.rabi);
    BathSpec bath;
    bath.coupling_k = a.k;
    bath.cutoff = a.wc;
    bath.inverse_temperature = parse_beta(a.beta);
    const CouplingKind kind = a.coupling == "control" ? CouplingKind::ControlDephasing
                                                      : CouplingKind::GateAxisDephasing;
    if (a.do_calibrate) {
        const double k = calibrate_coupling(kind, gate, bath, a.calibrate);
        std::cout << fmt12(k) << "\n";
        return 0;
    }
    const std::vector<TraceRow> rows = trace_run(kind, gate, bath, a.steps);
    write_trace_csv(a.out, trace_run_manifest(a.coupling, a.k, bath, a.rabi, a.steps), rows);
    std::cerr << "cnot: " << rows.size() << " rows -> " << a.out << "\n";
    return 0;
}

int run_selftest(const SelftestArgs& a) {
    selftest::Options opts;
    opts.fast = a.fast;
    opts.scratch_dir = a.scratch;
    opts.seed = a.seed;
    opts.fault = a.fault == "spin-flip" ? selftest::Fault::SpinFlip : selftest::Fault::None;
    const selftest::Report report = selftest::run(opts, std::cout);
    return report.all_passed() ? 0 : 1;
}

} // namespace

int dispatch(std::vector<std::string> args) {
    CLI::App app{"entlab: two-qubit entanglement laboratory"};
    app.set_version_flag("--version", std::string("entlab v") + kVersion);
    app.require_subcommand(1);

    MeasureArgs measure_args;
    CLI::App* measure = app.add_subcommand("measure", "measures of a density-matrix JSON file");
    measure->add_option("--input", measure_args.input, "DensityMatrix JSON file")->required();
    measure->add_option("--out", measure_args.out, "output path ('-' = stdout)");

    MemsArgs mems_args;
    CLI::App* mems = app.add_subcommand(
        "mems", "build a maximally entangled mixed state for a fixed spectrum");
    mems->add_option("--p", mems_args.p, "spectrum p1,p2,p3,p4 (descending, sums to 1)")
        ->required();
    mems->add_option("--variant", mems_args.variant, "basis assignment")
        ->check(CLI::IsMember({"psi", "phi"}));
    mems->add_flag("--swap", mems_args.swapped, "exchange the Bell and product slots");
    mems->add_option("--out", mems_args.out, "output path ('-' = stdout)");

    ScanArgs scan_args;
    CLI::App* scan_cmd =
        app.add_subcommand("scan", "maximize a measure over unitary orbits of random spectra");
    scan_cmd->add_option("--spectra", scan_args.spectra, "number of random spectra");
    scan_cmd->add_option("--unitaries", scan_args.unitaries, "orbit samples per spectrum");
    scan_cmd->add_option("--refine", scan_args.refine, "hill-climb proposals per spectrum");
    scan_cmd->add_option("--seed", scan_args.seed, "RNG seed (required; no environment default)")
        ->required();
    scan_cmd->add_option("--measure", scan_args.measure, "measure to maximize")
        ->check(CLI::IsMember({"concurrence", "negativity"}));
    scan_cmd->add_option("--streams", scan_args.streams, "worker threads (output-invariant)");
    scan_cmd->add_option("--out", scan_args.out, "output CSV path")->required();

    CnotArgs cnot_args;
    CLI::App* cnot = app.add_subcommand("cnot", "decohered CNOT gate simulation");
    cnot->add_option("--coupling", cnot_args.coupling, "bath coupling kind")
        ->check(CLI::IsMember({"control", "gate-axis"}))
        ->required();
    cnot->add_option("--K", cnot_args.k, "coupling strength");
    cnot->add_option("--wc", cnot_args.wc, "bath cutoff frequency");
    cnot->add_option("--beta", cnot_args.beta, "inverse temperature (number or 'inf')");
    cnot->add_option("--R", cnot_args.rabi, "Rabi rate");
    cnot->add_option("--steps", cnot_args.steps, "time steps on [0, t*]");
    cnot->add_option("--out", cnot_args.out, "trace CSV path");
    CLI::Option* cal = cnot->add_option("--calibrate", cnot_args.calibrate,
                                        "print K reaching this fidelity at t*");

    SelftestArgs selftest_args;
    CLI::App* selftest_cmd = app.add_subcommand("selftest", "run the acceptance suite");
    selftest_cmd->add_flag("--fast", selftest_args.fast, "reduced sample counts, same criteria");
    selftest_cmd->add_option("--scratch", selftest_args.scratch,
                             "directory for emitted datasets (default: system temp)");
    selftest_cmd->add_option("--inject-fault", selftest_args.fault, "fault hook, for testing")
        ->check(CLI::IsMember({"spin-flip"}));
    selftest_cmd->add_option("--seed", selftest_args.seed, "suite seed");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        std::cout << "entlab v" << kVersion << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return 2;
    }

    cnot_args.do_calibrate = cal->count() > 0;
    if (cnot->parsed() && !cnot_args.do_calibrate && cnot_args.out.empty()) {
        std::cerr << "cnot: either --out or --calibrate is required\n\n" << cnot->help();
        return 2;
    }

    try {
        if (measure->parsed()) return run_measure(measure_args);
        if (mems->parsed()) return run_mems(mems_args);
        if (scan_cmd->parsed()) return run_scan(scan_args);
        if (cnot->parsed()) return run_cnot(cnot_args);
        if (selftest_cmd->parsed()) return run_selftest(selftest_args);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace entlab::cli
