#include "io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "entlab/format.hpp"
#include "entlab/version.hpp"

namespace entlab::cli {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot open output file: " + path);
    return out;
}

} // namespace

RunManifest scan_run_manifest(const ScanConfig& c) {
    RunManifest m;
    m.subcommand = "scan";
    m.params = {{"seed", std::to_string(c.seed)},
                {"spectra", std::to_string(c.n_spectra)},
                {"unitaries", std::to_string(c.n_unitaries_per_spectrum)},
                {"refine", std::to_string(c.refine_steps)},
                {"measure", to_string(c.measure_kind)},
                {"streams", std::to_string(c.workers)}};
    return m;
}

RunManifest trace_run_manifest(const std::string& coupling, double k, const BathSpec& bath,
                               double rabi, int steps) {
    RunManifest m;
    m.subcommand = "cnot";
    m.params = {{"coupling", coupling},
                {"K", fmt12(k)},
                {"wc", fmt12(bath.cutoff)},
                {"beta", std::isinf(bath.inverse_temperature) ? std::string("inf")
                                                              : fmt12(bath.inverse_temperature)},
                {"R", fmt12(rabi)},
                {"steps", std::to_string(steps)}};
    return m;
}

std::string manifest_header(const RunManifest& m) {
    std::ostringstream os;
    os << "# entlab " << m.subcommand << " v" << kVersion << "\n# ";
    bool first = true;
    for (const auto& [k, v] : m.params) {
        os << (first ? "" : " ") << k << "=" << v;
        first = false;
    }
    os << "\n";
    return os.str();
}

void write_scan_csv(const std::string& path, const RunManifest& m,
                    const std::vector<OrbitResult>& rows) {
    std::ofstream out = open_out(path);
    out << manifest_header(m);
    out << "# stream layout: stream 0 samples spectra, stream i+1 drives spectrum i\n";
    out << "spectrum_index,p1,p2,p3,p4,participation_ratio,c_star_raw,neg_star_raw,"
           "measure_kind,best_value,samples_used,refined\n";
    for (size_t i = 0; i < rows.size(); ++i) {
        const OrbitResult& r = rows[i];
        out << i << ',' << fmt12(r.spectrum.p1()) << ',' << fmt12(r.spectrum.p2()) << ','
            << fmt12(r.spectrum.p3()) << ',' << fmt12(r.spectrum.p4()) << ','
            << fmt12(r.participation_ratio) << ',' << fmt12(r.c_star_raw) << ','
            << fmt12(r.neg_star_raw) << ',' << to_string(r.measure_kind) << ','
            << fmt12(r.best_value) << ',' << r.samples_used << ','
            << (r.refined ? "true" : "false") << '\n';
    }
    if (!out) throw DomainError("write failed: " + path);
}

void write_trace_csv(const std::string& path, const RunManifest& m,
                     const std::vector<TraceRow>& rows) {
    std::ofstream out = open_out(path);
    out << manifest_header(m);
    out << "t,fidelity,concurrence,eof,bound_eq18,p1,p2,p3,p4\n";
    for (const TraceRow& r : rows) {
        out << fmt12(r.time) << ',' << fmt12(r.fidelity) << ',' << fmt12(r.concurrence) << ','
            << fmt12(r.eof) << ',' << fmt12(r.bound) << ',' << fmt12(r.spectrum[0]) << ','
            << fmt12(r.spectrum[1]) << ',' << fmt12(r.spectrum[2]) << ',' << fmt12(r.spectrum[3])
            << '\n';
    }
    if (!out) throw DomainError("write failed: " + path);
}

std::string measure_report_json(const MeasureReport& r) {
    std::ostringstream os;
    os << "{\"concurrence\": " << fmt12(r.concurrence) << ", \"eof\": " << fmt12(r.eof)
       << ", \"negativity\": " << fmt12(r.negativity) << ", \"purity\": " << fmt12(r.purity)
       << ", \"participation_ratio\": " << fmt12(r.participation_ratio) << "}";
    return os.str();
}

} // namespace entlab::cli
