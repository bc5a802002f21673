#include "dmotto/report.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "dmotto/error.hpp"

namespace dmotto {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string mode_name(Mode m) { return std::string(to_string(m)); }

ordered_json number_or_null(std::optional<double> v) {
    if (!v || !std::isfinite(*v)) return nullptr;
    return *v;
}

ordered_json point_json(const GridPoint& g) {
    ordered_json j;
    if (const auto* p = std::get_if<VaryDM>(&g.protocol)) {
        j["protocol"] = "vary-dm";
        j["J"] = p->J;
        j["B"] = p->B;
        j["D1"] = p->D_hot;
        j["D2"] = p->D_cold;
    } else {
        const auto& f = std::get<VaryField>(g.protocol);
        j["protocol"] = "vary-field";
        j["J"] = f.J;
        j["D"] = f.D;
        j["B1"] = f.B_hot;
        j["B2"] = f.B_cold;
    }
    j["T_hot"] = g.baths.T_hot;
    j["T_cold"] = g.baths.T_cold;
    return j;
}

ordered_json named_values(const std::vector<NamedValue>& values) {
    ordered_json arr = ordered_json::array();
    for (const auto& v : values) arr.push_back(ordered_json{{"name", v.name}, {"value", number_or_null(v.value)}});
    return arr;
}

ordered_json claim_json(const ClaimReport& r) {
    ordered_json j;
    j["claim_id"] = std::string(to_string(r.id));
    j["description"] = r.description;
    j["verdict"] = std::string(to_string(r.verdict));
    j["evaluated_points"] = r.evaluated_points;
    j["max_discrepancy"] = number_or_null(r.max_discrepancy);
    j["worst_point"] = r.worst_point ? point_json(*r.worst_point) : ordered_json(nullptr);
    ordered_json samples = ordered_json::array();
    for (const auto& p : r.sample_points) samples.push_back(point_json(p));
    j["sample_points"] = std::move(samples);
    j["canonical_values"] = named_values(r.canonical_values);
    j["printed_values"] = named_values(r.printed_values);
    ordered_json eqs = ordered_json::array();
    for (const auto& e : r.equations) {
        ordered_json labels = ordered_json::array();
        for (std::size_t level : e.best_map) labels.push_back("L" + std::to_string(level + 1));
        eqs.push_back(ordered_json{{"name", e.name},
                                   {"expression", e.expression},
                                   {"points", e.points},
                                   {"identity_residual", number_or_null(e.identity_residual)},
                                   {"best_map", std::move(labels)},
                                   {"best_residual", number_or_null(e.best_residual)}});
    }
    j["equations"] = std::move(eqs);
    j["notes"] = r.notes;
    return j;
}

ordered_json metadata_object(const RunMetadata& meta, std::string_view hash) {
    ordered_json j;
    j["tool"] = meta.tool;
    j["version"] = meta.version;
    j["config"] = meta.config.empty() ? ordered_json(nullptr) : ordered_json::parse(meta.config);
    j["data_hash"] = std::string(hash);
    if (meta.timestamp) j["timestamp"] = *meta.timestamp;
    return j;
}

std::optional<double> cell(const SweepRow& row, Column c) {
    switch (c) {
        case Column::X: return row.x;
        case Column::Y: return row.y;
        case Column::QHot: return row.cycle.Q_hot;
        case Column::QCold: return row.cycle.Q_cold;
        case Column::W: return row.cycle.W;
        case Column::Eta: return row.cycle.eta;
        case Column::Q1: return row.local ? std::optional(row.local->q1) : std::nullopt;
        case Column::Q2: return row.local ? std::optional(row.local->q2) : std::nullopt;
        case Column::LocalW: return row.local ? std::optional(row.local->w) : std::nullopt;
        case Column::EtaLocal: return row.local ? row.local->eta_local : std::nullopt;
        case Column::Class: break;
    }
    return std::nullopt;
}

}  // namespace

std::optional<Format> parse_format(std::string_view name) {
    if (name == "csv") return Format::Csv;
    if (name == "json-report") return Format::JsonReport;
    return std::nullopt;
}

std::string_view to_string(Format f) { return f == Format::Csv ? "csv" : "json-report"; }

std::string format_number(double v) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::string to_csv(const RunArtifact& artifact) {
    std::string out;
    for (std::size_t i = 0; i < artifact.columns.size(); ++i) {
        if (i) out += ',';
        out += column_name(artifact.columns[i]);
    }
    out += '\n';
    for (const auto& row : artifact.rows) {
        for (std::size_t i = 0; i < artifact.columns.size(); ++i) {
            if (i) out += ',';
            const Column c = artifact.columns[i];
            if (c == Column::Class) {
                out += to_string(row.cycle.mode);
            } else if (const auto v = cell(row, c)) {
                out += format_number(*v);
            }
        }
        out += '\n';
    }
    return out;
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t h) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) s[static_cast<std::size_t>(i)] = digits[h & 0xf];
    return s;
}

std::string data_hash(const RunArtifact& artifact) { return "fnv1a64:" + hex64(fnv1a64(to_csv(artifact))); }

std::string metadata_json(const RunMetadata& meta, std::string_view hash) {
    return metadata_object(meta, hash).dump(2) + "\n";
}

std::string to_json_report(const RunMetadata& meta, const RunArtifact* artifact,
                           std::span<const ClaimReport> claims) {
    ordered_json claims_json = ordered_json::array();
    for (const auto& c : claims) claims_json.push_back(claim_json(c));

    std::string hash;
    if (artifact)
        hash = data_hash(*artifact);
    else
        hash = "fnv1a64:" + hex64(fnv1a64(claims_json.dump()));

    ordered_json doc;
    doc["schema"] = "dmotto-report/1";
    doc["metadata"] = metadata_object(meta, hash);
    if (artifact) {
        ordered_json cols = ordered_json::array();
        for (Column c : artifact->columns) cols.push_back(std::string(column_name(c)));
        ordered_json rows = ordered_json::array();
        for (const auto& row : artifact->rows) {
            ordered_json r;
            for (Column c : artifact->columns) {
                const std::string key(column_name(c));
                if (c == Column::Class)
                    r[key] = mode_name(row.cycle.mode);
                else
                    r[key] = number_or_null(cell(row, c));
            }
            rows.push_back(std::move(r));
        }
        doc["columns"] = std::move(cols);
        doc["rows"] = std::move(rows);
    }
    doc["claims"] = std::move(claims_json);
    return doc.dump(2) + "\n";
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

void emit(const RunArtifact& artifact, Format format, const std::filesystem::path& destination) {
    if (format == Format::Csv) {
        write_text(destination, to_csv(artifact));
        write_text(destination.string() + ".meta.json", metadata_json(artifact.metadata, data_hash(artifact)));
    } else {
        write_text(destination, to_json_report(artifact.metadata, &artifact, {}));
    }
}

void emit(std::span<const ClaimReport> claims, const RunMetadata& meta, const std::filesystem::path& destination) {
    write_text(destination, to_json_report(meta, nullptr, claims));
}

}  // namespace dmotto
