#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dmotto/cycle.hpp"
#include "dmotto/local.hpp"

namespace dmotto {

enum class ProtocolKind { VaryDM, VaryField };

std::string_view to_string(ProtocolKind kind);

/// Output columns, in the fixed order they are emitted.
enum class Column { X, Y, QHot, QCold, W, Eta, Class, Q1, Q2, LocalW, EtaLocal };

std::string_view column_name(Column c);
std::optional<Column> parse_column(std::string_view name);
bool is_local_column(Column c);

struct SweepAxis {
    std::string param;
    double min = 0.0;
    double max = 0.0;
    std::size_t count = 0;

    // min + (max - min) * i / (count - 1); exact at both ends.
    double value(std::size_t i) const;

    friend bool operator==(const SweepAxis&, const SweepAxis&) = default;
};

/// A 1-D or 2-D scan over protocol fields.
///
/// `base` holds the fixed fields; swept fields are zero in `base` and filled
/// per grid point. Grid order is row-major with x as the outer (slowest) axis.
struct SweepSpec {
    ProtocolKind kind = ProtocolKind::VaryDM;
    OttoProtocol base;
    BathSpec baths;
    SweepAxis x;
    std::optional<SweepAxis> y;
    std::vector<Column> columns;  // canonical order, no duplicates

    std::size_t size() const { return x.count * (y ? y->count : 1); }

    friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

/// Names a protocol field can be swept or fixed under.
std::vector<std::string_view> protocol_fields(ProtocolKind kind);

/// Parses the JSON sweep configuration. Accepted keys: protocol, J, B, D1, D2
/// (vary-dm) or J, D, B1, B2 (vary-field), T_hot, T_cold, sweep.x, sweep.y
/// (optional), output. Throws ConfigError carrying line/column for syntax
/// errors and naming the offending key for semantic ones.
SweepSpec parse_config(std::string_view text);

/// Checks every SweepSpec invariant; throws ConfigError on the first failure.
void validate(const SweepSpec& spec);

/// Serializes a spec back to the configuration grammar (stable key order).
std::string to_config_text(const SweepSpec& spec);

/// Every grid point of the spec, in emission order.
std::vector<GridPoint> expand(const SweepSpec& spec);

struct SweepRow {
    double x = 0.0;
    std::optional<double> y;
    GridPoint point;
    CycleResult cycle;
    std::optional<LocalCycleResult> local;
};

struct RunMetadata {
    std::string tool = "dmotto";
    std::string version;
    std::string config;  // echo of the spec in configuration grammar
    std::optional<std::string> timestamp;  // never part of the data hash
};

struct RunArtifact {
    RunMetadata metadata;
    std::vector<Column> columns;
    std::vector<SweepRow> rows;
};

std::string_view library_version();

/// Evaluates every grid point (concurrently with up to `workers` threads) and
/// returns rows in grid order. A failing point aborts the run with a
/// NumericError naming its grid index and coordinates.
RunArtifact run_sweep(const SweepSpec& spec, unsigned workers = 1);

enum class FigureId { Fig1, Fig2, Fig3, Fig4, Fig5 };

std::optional<FigureId> parse_figure(std::string_view name);
std::string_view to_string(FigureId id);

/// Built-in presets from the figure captions. 2-D maps are 61 x 61 over
/// D1, D2 in [0, 3]; 1-D scans are 401 points over D in [0, 20].
SweepSpec figure_preset(FigureId id);

}  // namespace dmotto
