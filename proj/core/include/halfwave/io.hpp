#pragma once

#include <string>
#include <utility>
#include <vector>

#include "halfwave/bessel.hpp"
#include "halfwave/estimates.hpp"
#include "halfwave/lifespan.hpp"
#include "halfwave/simulator.hpp"

namespace halfwave {

/// Ordered key/value parameter echo reproduced verbatim in every artifact so
/// results are traceable to their inputs.  Version is added automatically.
struct MetaBlock {
    std::vector<std::pair<std::string, std::string>> entries;
    void add(std::string key, std::string value);
    void add(std::string key, double value);
    void add(std::string key, int value);
};

std::string format_double(double v);  // round-trip precision, locale-free

// CSV artifacts.  Every file starts with '#'-prefixed meta lines, then a
// header row, then data rows.
std::string kernel_table_csv(const KernelTable&, const MetaBlock& = {});
std::string estimate_report_csv(const EstimateReport&, const MetaBlock& = {});
std::string trajectory_csv(const TrajectoryRecord&, const MetaBlock& = {});
std::string scaling_sweep_csv(const std::vector<std::vector<double>>& rows,
                              const std::vector<std::string>& columns, const MetaBlock& = {});

// JSON artifacts (serialized text; nlohmann machinery stays internal).
std::string estimate_report_json(const EstimateReport&, const MetaBlock& = {});
std::string massive_estimate_set_json(const MassiveEstimateSet&, const MetaBlock& = {});
std::string certificate_json(const BlowupCertificate&, const ProblemSpec&, const MetaBlock& = {});
std::string no_certificate_json(const ProblemSpec&, double R, double M0, double threshold,
                                const MetaBlock& = {});
std::string trajectory_summary_json(const TrajectoryRecord&, const OdeInequalityReport*,
                                    const MetaBlock& = {});
std::string kernel_table_json(const KernelTable&, const MetaBlock& = {});

void write_file(const std::string& path, const std::string& content);

}  // namespace halfwave
