#pragma once

// Scenario execution: RunConfig -> report + CSV tables.

#include "cqed/config.hpp"
#include "cqed/device.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace cqed {

inline constexpr const char* kArtifactVersion = "0.1.0";

/// Numeric CSV with a fixed column order. Cells are %.17g.
struct CsvTable {
    std::string name;  // file stem
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(const std::vector<double>& values);
    std::string render() const;
};

std::string csv_number(double v);

struct ResultBundle {
    nlohmann::json report;
    std::vector<CsvTable> tables;
    nlohmann::json provenance;
    bool validation_failed = false;
};

struct ResolvedModel {
    EffectiveParams eff;
    std::optional<EffectiveParams> device_map;  // before overrides
    std::optional<EffectiveParams> derived;     // model overrides applied, chi / w'_a not yet replaced
    std::optional<CircuitModel> circuit;
};

/// Device map (if any) followed by [effective] overrides.
ResolvedModel resolve_model(const RunConfig& c);

ResultBundle run(const RunConfig& c);

/// Writes report.json (report + provenance) and <name>.csv per table.
void write_bundle(const ResultBundle& b, const std::filesystem::path& dir);

} // namespace cqed
