#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "dmotto/audit.hpp"
#include "dmotto/sweep.hpp"

namespace dmotto {

enum class Format { Csv, JsonReport };

std::optional<Format> parse_format(std::string_view name);  // "csv" | "json-report"
std::string_view to_string(Format f);

/// Shortest decimal that parses back to the same double.
std::string format_number(double v);

/// Header line plus one line per row, LF-terminated. Undefined efficiencies
/// and local columns of rows without local data are empty fields.
std::string to_csv(const RunArtifact& artifact);

/// FNV-1a, 64 bit.
std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t h);

/// Hash of the data section: the CSV text of the artifact rows.
std::string data_hash(const RunArtifact& artifact);

/// Metadata sidecar written next to a CSV file (JSON, fixed key order).
std::string metadata_json(const RunMetadata& meta, std::string_view hash);

/// Single JSON document: metadata, optional rows, and claim reports. Layout
/// is documented in docs/report-schema.md.
std::string to_json_report(const RunMetadata& meta, const RunArtifact* artifact,
                           std::span<const ClaimReport> claims);

/// Writes text to path; throws IoError naming the path.
void write_text(const std::filesystem::path& path, std::string_view text);

/// CSV: data to `destination`, metadata to `destination` + ".meta.json".
/// JsonReport: one document holding metadata and rows.
void emit(const RunArtifact& artifact, Format format, const std::filesystem::path& destination);

/// Audit-only JSON report.
void emit(std::span<const ClaimReport> claims, const RunMetadata& meta, const std::filesystem::path& destination);

}  // namespace dmotto
