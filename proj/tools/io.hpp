#ifndef ENTLAB_TOOLS_IO_HPP
#define ENTLAB_TOOLS_IO_HPP

#include <string>
#include <utility>
#include <vector>

#include "entlab/cnot.hpp"
#include "entlab/orbit.hpp"

namespace entlab::cli {

/// Deterministic run description embedded as a '#' header in every emitted
/// dataset. Wall times are deliberately not part of it: identical runs must
/// produce byte-identical files.
struct RunManifest {
    std::string subcommand;
    std::vector<std::pair<std::string, std::string>> params;
};

std::string manifest_header(const RunManifest& m);

RunManifest scan_run_manifest(const ScanConfig& c);
RunManifest trace_run_manifest(const std::string& coupling, double k, const BathSpec& bath,
                               double rabi, int steps);

void write_scan_csv(const std::string& path, const RunManifest& m,
                    const std::vector<OrbitResult>& rows);

void write_trace_csv(const std::string& path, const RunManifest& m,
                     const std::vector<TraceRow>& rows);

std::string measure_report_json(const MeasureReport& r);

} // namespace entlab::cli

#endif
