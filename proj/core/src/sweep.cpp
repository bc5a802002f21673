#include "dmotto/sweep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <string>

#include <json.hpp>

#include "dmotto/error.hpp"
#include "dmotto/parallel.hpp"

#ifndef DMOTTO_VERSION
#define DMOTTO_VERSION "0.0.0"
#endif

namespace dmotto {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::array kColumns{
    std::pair{Column::X, "x"},        std::pair{Column::Y, "y"},      std::pair{Column::QHot, "Q_hot"},
    std::pair{Column::QCold, "Q_cold"}, std::pair{Column::W, "W"},    std::pair{Column::Eta, "eta"},
    std::pair{Column::Class, "class"}, std::pair{Column::Q1, "q1"},   std::pair{Column::Q2, "q2"},
    std::pair{Column::LocalW, "w"},   std::pair{Column::EtaLocal, "eta_local"},
};

double* field_slot(OttoProtocol& proto, std::string_view name) {
    if (auto* p = std::get_if<VaryDM>(&proto)) {
        if (name == "J") return &p->J;
        if (name == "B") return &p->B;
        if (name == "D1") return &p->D_hot;
        if (name == "D2") return &p->D_cold;
    } else if (auto* p = std::get_if<VaryField>(&proto)) {
        if (name == "J") return &p->J;
        if (name == "D") return &p->D;
        if (name == "B1") return &p->B_hot;
        if (name == "B2") return &p->B_cold;
    }
    return nullptr;
}

double field_value(const OttoProtocol& proto, std::string_view name) {
    OttoProtocol copy = proto;
    return *field_slot(copy, name);
}

// Translates a byte offset into 1-based line/column.
std::pair<std::size_t, std::size_t> locate(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

double read_number(const ordered_json& node, const std::string& key) {
    if (!node.is_number()) throw ConfigError("key '" + key + "' must be a number");
    const double v = node.get<double>();
    if (!std::isfinite(v)) throw ConfigError("key '" + key + "' must be finite");
    return v;
}

SweepAxis read_axis(const ordered_json& node, const std::string& key) {
    if (!node.is_object()) throw ConfigError("key '" + key + "' must be an object with param, min, max, count");
    SweepAxis axis;
    bool seen_param = false, seen_min = false, seen_max = false, seen_count = false;
    for (const auto& [k, v] : node.items()) {
        const std::string path = key + "." + k;
        if (k == "param") {
            if (!v.is_string()) throw ConfigError("key '" + path + "' must be a string");
            axis.param = v.get<std::string>();
            seen_param = true;
        } else if (k == "min") {
            axis.min = read_number(v, path);
            seen_min = true;
        } else if (k == "max") {
            axis.max = read_number(v, path);
            seen_max = true;
        } else if (k == "count") {
            if (!v.is_number_integer() || v.get<long long>() < 0)
                throw ConfigError("key '" + path + "' must be a non-negative integer");
            axis.count = v.get<std::size_t>();
            seen_count = true;
        } else {
            throw ConfigError("unknown key '" + path + "'");
        }
    }
    if (!seen_param) throw ConfigError("missing key '" + key + ".param'");
    if (!seen_min) throw ConfigError("missing key '" + key + ".min'");
    if (!seen_max) throw ConfigError("missing key '" + key + ".max'");
    if (!seen_count) throw ConfigError("missing key '" + key + ".count'");
    return axis;
}

std::vector<Column> default_columns(ProtocolKind kind, bool two_d) {
    std::vector<Column> cols{Column::X};
    if (two_d) cols.push_back(Column::Y);
    cols.insert(cols.end(), {Column::QHot, Column::QCold, Column::W, Column::Eta, Column::Class});
    if (kind == ProtocolKind::VaryField)
        cols.insert(cols.end(), {Column::Q1, Column::Q2, Column::LocalW, Column::EtaLocal});
    return cols;
}

void check_axis(const SweepAxis& axis, ProtocolKind kind, const std::string& key) {
    const auto fields = protocol_fields(kind);
    if (std::find(fields.begin(), fields.end(), axis.param) == fields.end())
        throw ConfigError("key '" + key + ".param': '" + axis.param + "' is not a field of protocol " +
                          std::string(to_string(kind)));
    if (axis.count < 2) throw ConfigError("key '" + key + ".count' must be at least 2");
    if (!(axis.min < axis.max)) throw ConfigError("key '" + key + "': min must be strictly less than max");
}

}  // namespace

std::string_view to_string(ProtocolKind kind) { return kind == ProtocolKind::VaryDM ? "vary-dm" : "vary-field"; }

std::string_view column_name(Column c) {
    for (const auto& [col, name] : kColumns)
        if (col == c) return name;
    return "?";
}

std::optional<Column> parse_column(std::string_view name) {
    for (const auto& [col, n] : kColumns)
        if (name == n) return col;
    return std::nullopt;
}

bool is_local_column(Column c) {
    return c == Column::Q1 || c == Column::Q2 || c == Column::LocalW || c == Column::EtaLocal;
}

double SweepAxis::value(std::size_t i) const {
    if (i + 1 == count) return max;
    return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
}

std::vector<std::string_view> protocol_fields(ProtocolKind kind) {
    if (kind == ProtocolKind::VaryDM) return {"J", "B", "D1", "D2"};
    return {"J", "D", "B1", "B2"};
}

void validate(const SweepSpec& spec) {
    const bool is_dm = std::holds_alternative<VaryDM>(spec.base);
    if (is_dm != (spec.kind == ProtocolKind::VaryDM)) throw ConfigError("protocol kind does not match base protocol");
    check_axis(spec.x, spec.kind, "sweep.x");
    if (spec.y) {
        check_axis(*spec.y, spec.kind, "sweep.y");
        if (spec.y->param == spec.x.param) throw ConfigError("key 'sweep.y.param': axis '" + spec.x.param + "' swept twice");
    }
    try {
        validate(spec.baths);
    } catch (const InvalidParameter& e) {
        throw ConfigError(std::string("keys 'T_hot'/'T_cold': ") + e.what());
    }
    if (spec.columns.empty()) throw ConfigError("key 'output' selects no columns");
    for (std::size_t i = 0; i < spec.columns.size(); ++i) {
        const Column c = spec.columns[i];
        if (i > 0 && !(spec.columns[i - 1] < c))
            throw ConfigError("key 'output': columns must be unique and in canonical order");
        if (c == Column::Y && !spec.y) throw ConfigError("key 'output': column 'y' needs a sweep.y axis");
        if (is_local_column(c) && spec.kind != ProtocolKind::VaryField)
            throw ConfigError("key 'output': column '" + std::string(column_name(c)) +
                              "' is only available for protocol vary-field");
    }
}

SweepSpec parse_config(std::string_view text) {
    ordered_json root;
    try {
        root = ordered_json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        const auto [line, column] = locate(text, e.byte == 0 ? 0 : e.byte - 1);
        // Drop nlohmann's "[json.exception...] parse error at ...: " prefix.
        std::string detail = e.what();
        if (const auto colon = detail.find(": "); colon != std::string::npos) detail = detail.substr(colon + 2);
        throw ConfigError("syntax error at line " + std::to_string(line) + ", column " + std::to_string(column) +
                              ": " + detail,
                          line, column);
    }
    if (!root.is_object()) throw ConfigError("configuration must be a JSON object", 1, 1);

    SweepSpec spec;
    const auto proto_it = root.find("protocol");
    if (proto_it == root.end()) throw ConfigError("missing key 'protocol'");
    if (!proto_it->is_string()) throw ConfigError("key 'protocol' must be a string");
    const std::string proto_name = proto_it->get<std::string>();
    if (proto_name == "vary-dm") {
        spec.kind = ProtocolKind::VaryDM;
        spec.base = VaryDM{};
    } else if (proto_name == "vary-field") {
        spec.kind = ProtocolKind::VaryField;
        spec.base = VaryField{};
    } else {
        throw ConfigError("key 'protocol': expected 'vary-dm' or 'vary-field', got '" + proto_name + "'");
    }

    const auto fields = protocol_fields(spec.kind);
    const auto other = protocol_fields(spec.kind == ProtocolKind::VaryDM ? ProtocolKind::VaryField : ProtocolKind::VaryDM);
    std::set<std::string> fixed;
    bool seen_hot = false, seen_cold = false, seen_sweep = false;
    std::optional<std::vector<Column>> requested;

    for (const auto& [key, value] : root.items()) {
        if (key == "protocol") continue;
        if (std::find(fields.begin(), fields.end(), key) != fields.end()) {
            *field_slot(spec.base, key) = read_number(value, key);
            fixed.insert(key);
        } else if (std::find(other.begin(), other.end(), key) != other.end()) {
            throw ConfigError("key '" + key + "' is not valid for protocol " + proto_name);
        } else if (key == "T_hot") {
            spec.baths.T_hot = read_number(value, key);
            seen_hot = true;
        } else if (key == "T_cold") {
            spec.baths.T_cold = read_number(value, key);
            seen_cold = true;
        } else if (key == "sweep") {
            if (!value.is_object()) throw ConfigError("key 'sweep' must be an object");
            for (const auto& [axis_key, axis] : value.items()) {
                if (axis_key == "x")
                    spec.x = read_axis(axis, "sweep.x");
                else if (axis_key == "y")
                    spec.y = read_axis(axis, "sweep.y");
                else
                    throw ConfigError("unknown key 'sweep." + axis_key + "'");
            }
            if (!value.contains("x")) throw ConfigError("missing key 'sweep.x'");
            seen_sweep = true;
        } else if (key == "output") {
            if (!value.is_array()) throw ConfigError("key 'output' must be an array of column names");
            std::vector<Column> cols;
            for (const auto& item : value) {
                if (!item.is_string()) throw ConfigError("key 'output': column names must be strings");
                const auto c = parse_column(item.get<std::string>());
                if (!c) throw ConfigError("key 'output': unknown column '" + item.get<std::string>() + "'");
                if (std::find(cols.begin(), cols.end(), *c) != cols.end())
                    throw ConfigError("key 'output': duplicate column '" + item.get<std::string>() + "'");
                cols.push_back(*c);
            }
            std::sort(cols.begin(), cols.end());
            requested = std::move(cols);
        } else {
            throw ConfigError("unknown key '" + key + "'");
        }
    }

    if (!seen_hot) throw ConfigError("missing key 'T_hot'");
    if (!seen_cold) throw ConfigError("missing key 'T_cold'");
    if (!seen_sweep) throw ConfigError("missing key 'sweep'");

    check_axis(spec.x, spec.kind, "sweep.x");
    if (spec.y) check_axis(*spec.y, spec.kind, "sweep.y");
    std::vector<std::string> swept{spec.x.param};
    if (spec.y) swept.push_back(spec.y->param);
    for (const auto& name : swept)
        if (fixed.count(name)) throw ConfigError("key '" + name + "' is both fixed and swept");
    for (const auto& name : fields) {
        const std::string n(name);
        if (!fixed.count(n) && std::find(swept.begin(), swept.end(), n) == swept.end())
            throw ConfigError("missing key '" + n + "' (neither fixed nor swept)");
    }

    spec.columns = requested ? *requested : default_columns(spec.kind, spec.y.has_value());
    validate(spec);
    return spec;
}

std::string to_config_text(const SweepSpec& spec) {
    ordered_json j;
    j["protocol"] = std::string(to_string(spec.kind));
    for (const auto& name : protocol_fields(spec.kind)) {
        const bool swept = name == spec.x.param || (spec.y && name == spec.y->param);
        if (!swept) j[std::string(name)] = field_value(spec.base, name);
    }
    j["T_hot"] = spec.baths.T_hot;
    j["T_cold"] = spec.baths.T_cold;
    const auto axis = [](const SweepAxis& a) {
        ordered_json o;
        o["param"] = a.param;
        o["min"] = a.min;
        o["max"] = a.max;
        o["count"] = a.count;
        return o;
    };
    j["sweep"]["x"] = axis(spec.x);
    if (spec.y) j["sweep"]["y"] = axis(*spec.y);
    ordered_json cols = ordered_json::array();
    for (Column c : spec.columns) cols.push_back(std::string(column_name(c)));
    j["output"] = cols;
    return j.dump(2) + "\n";
}

std::vector<GridPoint> expand(const SweepSpec& spec) {
    validate(spec);
    std::vector<GridPoint> points;
    points.reserve(spec.size());
    const std::size_t ny = spec.y ? spec.y->count : 1;
    for (std::size_t i = 0; i < spec.x.count; ++i) {
        for (std::size_t k = 0; k < ny; ++k) {
            OttoProtocol proto = spec.base;
            *field_slot(proto, spec.x.param) = spec.x.value(i);
            if (spec.y) *field_slot(proto, spec.y->param) = spec.y->value(k);
            points.push_back({proto, spec.baths});
        }
    }
    return points;
}

std::string_view library_version() { return DMOTTO_VERSION; }

RunArtifact run_sweep(const SweepSpec& spec, unsigned workers) {
    const std::vector<GridPoint> points = expand(spec);
    const bool want_local = std::any_of(spec.columns.begin(), spec.columns.end(), is_local_column);
    const std::size_t ny = spec.y ? spec.y->count : 1;

    RunArtifact art;
    art.metadata.version = std::string(library_version());
    art.metadata.config = to_config_text(spec);
    art.columns = spec.columns;
    art.rows.resize(points.size());

    parallel_for(points.size(), workers, [&](std::size_t idx) {
        SweepRow& row = art.rows[idx];
        row.x = spec.x.value(idx / ny);
        if (spec.y) row.y = spec.y->value(idx % ny);
        row.point = points[idx];
        try {
            row.cycle = run_cycle(row.point.protocol, row.point.baths);
            if (want_local) row.local = local_cycle(row.point.protocol, row.point.baths);
        } catch (const Error& e) {
            std::string where = "grid point " + std::to_string(idx) + " (x=" + std::to_string(row.x);
            if (row.y) where += ", y=" + std::to_string(*row.y);
            throw NumericError(where + "): " + e.what());
        }
    });
    return art;
}

std::optional<FigureId> parse_figure(std::string_view name) {
    if (name == "fig1") return FigureId::Fig1;
    if (name == "fig2") return FigureId::Fig2;
    if (name == "fig3") return FigureId::Fig3;
    if (name == "fig4") return FigureId::Fig4;
    if (name == "fig5") return FigureId::Fig5;
    return std::nullopt;
}

std::string_view to_string(FigureId id) {
    switch (id) {
        case FigureId::Fig1: return "fig1";
        case FigureId::Fig2: return "fig2";
        case FigureId::Fig3: return "fig3";
        case FigureId::Fig4: return "fig4";
        case FigureId::Fig5: return "fig5";
    }
    return "?";
}

SweepSpec figure_preset(FigureId id) {
    SweepSpec s;
    s.baths = {2.0, 1.0};
    switch (id) {
        case FigureId::Fig1:
        case FigureId::Fig2:
        case FigureId::Fig3: {
            const double J = id == FigureId::Fig3 ? -1.0 : 1.0;
            const double B = id == FigureId::Fig2 ? 6.0 : 4.0;
            s.kind = ProtocolKind::VaryDM;
            s.base = VaryDM{J, B, 0.0, 0.0};
            s.x = {"D1", 0.0, 3.0, 61};
            s.y = SweepAxis{"D2", 0.0, 3.0, 61};
            s.columns = default_columns(s.kind, true);
            break;
        }
        case FigureId::Fig4:
            s.kind = ProtocolKind::VaryField;
            s.base = VaryField{1.0, 0.0, 8.0, 6.0};
            s.x = {"D", 0.0, 20.0, 401};
            s.columns = {Column::X, Column::QHot, Column::QCold, Column::W, Column::Class};
            break;
        case FigureId::Fig5:
            s.kind = ProtocolKind::VaryField;
            s.base = VaryField{1.0, 0.0, 8.0, 6.0};
            s.x = {"D", 0.0, 20.0, 401};
            s.columns = {Column::X,  Column::W,  Column::Eta,    Column::Class,
                         Column::Q1, Column::Q2, Column::LocalW, Column::EtaLocal};
            break;
    }
    return s;
}

}  // namespace dmotto
