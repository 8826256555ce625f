#include "qwalk/report_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

using nlohmann::json;

std::string format_int(long long v) { return std::to_string(v); }

long long parse_int(std::string_view s) {
    long long v = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size()) {
        throw IoError("expected an integer, got '" + std::string(s) + "'");
    }
    return v;
}

void expect_header(const CsvTable& table, const std::vector<std::string>& header, const char* what) {
    if (table.header != header) throw IoError(std::string(what) + ": unexpected CSV header");
}

template <class Row>
Row parse_labelled(std::string_view s, Row (*parse)(std::string_view)) {
    try {
        return parse(s);
    } catch (const InvalidArgument& e) {
        throw IoError(e.what());
    }
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

const std::vector<std::string> kPhaseHeader{"theta1", "theta2", "winding", "gap_plus1", "gap_minus1"};
const std::vector<std::string> kSimilarityHeader{"step", "similarity_A", "similarity_B"};
const std::vector<std::string> kStateHeader{"setting", "position", "re_h", "im_h", "re_v", "im_v"};
const std::vector<std::string> kInterferenceHeader{"setting", "step", "position", "polarization", "i_h", "i_v",
                                                   "i_w",     "i_r",  "m",        "m_error",      "status"};
const std::vector<std::string> kEvolutionHeader{"roundtrip", "position", "intensity_h", "intensity_v", "intensity"};

}  // namespace

std::string format_double(double value) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    if (ec != std::errc{}) throw IoError("format_double: conversion failed");
    return {buf, end};
}

double parse_double(std::string_view text) {
    double v = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) {
        throw IoError("expected a number, got '" + std::string(text) + "'");
    }
    return v;
}

std::string to_csv(const CsvTable& table) {
    std::string out;
    auto put_row = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            const std::string& f = row[i];
            if (f.find_first_of(",\"\r\n") == std::string::npos) {
                out += f;
                continue;
            }
            out += '"';
            for (char c : f) {
                if (c == '"') out += '"';
                out += c;
            }
            out += '"';
        }
        out += '\n';
    };
    put_row(table.header);
    for (const auto& row : table.rows) put_row(row);
    return out;
}

CsvTable parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool at_field_start = true;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c != '"') {
                field += c;
            } else if (i + 1 < text.size() && text[i + 1] == '"') {
                field += '"';
                ++i;
            } else {
                quoted = false;
            }
            continue;
        }
        if (c == '"' && at_field_start) {
            quoted = true;
            at_field_start = false;
        } else if (c == ',') {
            record.push_back(std::move(field));
            field.clear();
            at_field_start = true;
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            record.push_back(std::move(field));
            field.clear();
            records.push_back(std::move(record));
            record.clear();
            at_field_start = true;
        } else if (c == '"') {
            throw IoError("parse_csv: stray quote inside an unquoted field");
        } else {
            field += c;
            at_field_start = false;
        }
    }
    if (quoted) throw IoError("parse_csv: unterminated quoted field");
    if (!at_field_start || !record.empty()) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
    }
    if (records.empty()) throw IoError("parse_csv: missing header row");

    CsvTable table;
    table.header = std::move(records.front());
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != table.header.size()) {
            throw IoError("parse_csv: row " + std::to_string(r) + " has " + std::to_string(records[r].size()) +
                          " fields, header has " + std::to_string(table.header.size()));
        }
        table.rows.push_back(std::move(records[r]));
    }
    return table;
}

void write_output(const std::string& path, std::string_view content) {
    if (path == "-") {
        std::cout << content;
        std::cout.flush();
        if (!std::cout) throw IoError("cannot write to standard output");
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) throw IoError("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

CsvTable phase_table(const std::vector<SymmetryIndexReport>& cells) {
    CsvTable t{kPhaseHeader, {}};
    for (const auto& c : cells) {
        std::string winding = !c.gapped ? "gap-closed" : c.winding ? format_int(*c.winding) : "unresolved";
        t.rows.push_back({format_double(c.theta1), format_double(c.theta2), std::move(winding),
                          format_double(c.gap_at_plus1), format_double(c.gap_at_minus1)});
    }
    return t;
}

std::vector<SymmetryIndexReport> parse_phase_table(const CsvTable& table) {
    expect_header(table, kPhaseHeader, "phase diagram");
    std::vector<SymmetryIndexReport> cells;
    for (const auto& row : table.rows) {
        SymmetryIndexReport c;
        c.theta1 = parse_double(row[0]);
        c.theta2 = parse_double(row[1]);
        c.gapped = row[2] != "gap-closed";
        if (c.gapped && row[2] != "unresolved") c.winding = static_cast<int>(parse_int(row[2]));
        c.gap_at_plus1 = parse_double(row[3]);
        c.gap_at_minus1 = parse_double(row[4]);
        cells.push_back(c);
    }
    return cells;
}

CsvTable similarity_table(const std::vector<SimilarityRow>& rows) {
    CsvTable t{kSimilarityHeader, {}};
    for (const auto& r : rows) {
        t.rows.push_back({format_int(static_cast<long long>(r.step)), format_double(r.similarity_a),
                          format_double(r.similarity_b)});
    }
    return t;
}

std::vector<SimilarityRow> parse_similarity_table(const CsvTable& table) {
    expect_header(table, kSimilarityHeader, "similarity");
    std::vector<SimilarityRow> rows;
    for (const auto& row : table.rows) {
        rows.push_back({static_cast<std::size_t>(parse_int(row[0])), parse_double(row[1]), parse_double(row[2])});
    }
    return rows;
}

CsvTable state_table(const std::vector<StateRow>& rows) {
    CsvTable t{kStateHeader, {}};
    for (const auto& r : rows) {
        t.rows.push_back({std::string(to_string(r.setting)), format_int(r.position),
                          format_double(r.amplitude.h.real()), format_double(r.amplitude.h.imag()),
                          format_double(r.amplitude.v.real()), format_double(r.amplitude.v.imag())});
    }
    return t;
}

std::vector<StateRow> parse_state_table(const CsvTable& table) {
    expect_header(table, kStateHeader, "state");
    std::vector<StateRow> rows;
    for (const auto& row : table.rows) {
        rows.push_back({parse_labelled(row[0], parse_setting), parse_int(row[1]),
                        Spinor{{parse_double(row[2]), parse_double(row[3])},
                               {parse_double(row[4]), parse_double(row[5])}}});
    }
    return rows;
}

CsvTable interference_table(const std::vector<InterferenceRow>& rows) {
    CsvTable t{kInterferenceHeader, {}};
    for (const auto& r : rows) {
        const auto& o = r.outcome;
        t.rows.push_back({std::string(to_string(r.setting)), format_int(r.step), format_int(r.position),
                          std::string(to_string(r.polarization)), format_double(o.i_h), format_double(o.i_v),
                          format_double(o.i_w), format_double(o.i_r), o.m ? format_double(*o.m) : "",
                          o.m ? format_double(o.m_error) : "", r.readable ? "ok" : "unreadable"});
    }
    return t;
}

std::vector<InterferenceRow> parse_interference_table(const CsvTable& table) {
    expect_header(table, kInterferenceHeader, "interference");
    std::vector<InterferenceRow> rows;
    for (const auto& row : table.rows) {
        InterferenceRow r;
        r.setting = parse_labelled(row[0], parse_setting);
        r.step = static_cast<int>(parse_int(row[1]));
        r.position = static_cast<int>(parse_int(row[2]));
        r.polarization = parse_labelled(row[3], parse_polarization);
        r.outcome.i_h = parse_double(row[4]);
        r.outcome.i_v = parse_double(row[5]);
        r.outcome.i_w = parse_double(row[6]);
        r.outcome.i_r = parse_double(row[7]);
        if (!row[8].empty()) r.outcome.m = parse_double(row[8]);
        if (!row[9].empty()) r.outcome.m_error = parse_double(row[9]);
        if (row[10] != "ok" && row[10] != "unreadable") throw IoError("interference: bad status '" + row[10] + "'");
        r.readable = row[10] == "ok";
        rows.push_back(r);
    }
    return rows;
}

CsvTable evolution_table(const std::vector<EvolutionRow>& rows) {
    CsvTable t{kEvolutionHeader, {}};
    for (const auto& r : rows) {
        t.rows.push_back({format_int(static_cast<long long>(r.roundtrip)), format_int(r.position),
                          format_double(r.intensity.h), format_double(r.intensity.v),
                          format_double(r.intensity.total())});
    }
    return t;
}

std::vector<EvolutionRow> parse_evolution_table(const CsvTable& table) {
    expect_header(table, kEvolutionHeader, "evolution");
    std::vector<EvolutionRow> rows;
    for (const auto& row : table.rows) {
        rows.push_back({static_cast<std::uint64_t>(parse_int(row[0])), parse_int(row[1]),
                        {parse_double(row[2]), parse_double(row[3])}});
    }
    return rows;
}

std::string edge_state_json(const std::vector<EdgeStateReport>& reports) {
    json list = json::array();
    for (const auto& r : reports) {
        const auto& s = r.spec;
        json sites = json::array();
        json profile = json::array();
        for (const auto& [x, a] : r.state.amplitudes) {
            sites.push_back({{"position", x}, {"h", complex_json(a.h)}, {"v", complex_json(a.v)}});
            profile.push_back(a.norm2());
        }
        list.push_back({{"setting", std::string(to_string(s.setting))},
                        {"eigenvalue", s.eigenvalue},
                        {"chirality", s.chirality},
                        {"theta1_decoupling", s.theta1_decoupling},
                        {"theta2", s.theta2},
                        {"decay", s.decay},
                        {"boundary_amplitude", s.boundary_amplitude},
                        {"normalization", s.normalization},
                        {"spinor", {{"h", complex_json(s.spinor.h)}, {"v", complex_json(s.spinor.v)}}},
                        {"residual", r.residual},
                        {"sites", std::move(sites)},
                        {"intensity", std::move(profile)}});
    }
    return json{{"edge_states", std::move(list)}}.dump(2) + "\n";
}

std::vector<EdgeStateReport> parse_edge_state_json(std::string_view text) {
    try {
        const json doc = json::parse(text);
        std::vector<EdgeStateReport> reports;
        for (const auto& j : doc.at("edge_states")) {
            EdgeStateReport r;
            r.spec.setting = parse_setting(j.at("setting").get<std::string>());
            r.spec.eigenvalue = j.at("eigenvalue").get<int>();
            r.spec.chirality = j.at("chirality").get<int>();
            r.spec.theta1_decoupling = j.at("theta1_decoupling").get<double>();
            r.spec.theta2 = j.at("theta2").get<double>();
            r.spec.decay = j.at("decay").get<double>();
            r.spec.boundary_amplitude = j.at("boundary_amplitude").get<double>();
            r.spec.normalization = j.at("normalization").get<double>();
            r.spec.spinor = {complex_from(j.at("spinor").at("h")), complex_from(j.at("spinor").at("v"))};
            r.residual = j.at("residual").get<double>();
            for (const auto& site : j.at("sites")) {
                r.state.amplitudes.emplace(site.at("position").get<Position>(),
                                           Spinor{complex_from(site.at("h")), complex_from(site.at("v"))});
            }
            reports.push_back(std::move(r));
        }
        return reports;
    } catch (const json::exception& e) {
        throw IoError(std::string("edge-state JSON: ") + e.what());
    } catch (const InvalidArgument& e) {
        throw IoError(std::string("edge-state JSON: ") + e.what());
    }
}

}  // namespace qwalk
