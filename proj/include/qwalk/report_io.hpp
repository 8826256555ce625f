#pragma once

// CSV and JSON serialisation of every report, plus the matching parsers
// used for round-trip checks. Numbers are written with 17 significant
// digits so that parsing restores the exact double.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "qwalk/distillation.hpp"
#include "qwalk/edge_state.hpp"
#include "qwalk/interferometry.hpp"
#include "qwalk/topology.hpp"

namespace qwalk {

std::string format_double(double value);
/// Accepts anything format_double produces, including "nan" and "inf".
double parse_double(std::string_view text);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    friend bool operator==(const CsvTable&, const CsvTable&) = default;
};

/// Header plus rows, '\n' line ends; fields containing a comma, quote or
/// line break are quoted with embedded quotes doubled.
std::string to_csv(const CsvTable& table);
/// Throws IoError on malformed input or ragged rows.
CsvTable parse_csv(std::string_view text);

/// "-" means standard output. Throws IoError naming the path on failure.
void write_output(const std::string& path, std::string_view content);
std::string read_file(const std::string& path);

CsvTable phase_table(const std::vector<SymmetryIndexReport>& cells);
std::vector<SymmetryIndexReport> parse_phase_table(const CsvTable& table);

struct SimilarityRow {
    std::size_t step = 0;
    double similarity_a = 0.0;
    double similarity_b = 0.0;

    friend bool operator==(const SimilarityRow&, const SimilarityRow&) = default;
};

CsvTable similarity_table(const std::vector<SimilarityRow>& rows);
std::vector<SimilarityRow> parse_similarity_table(const CsvTable& table);

/// One site per row: setting, position, re/im of both polarisations.
struct StateRow {
    Setting setting = Setting::A;
    Position position = 0;
    Spinor amplitude;

    friend bool operator==(const StateRow&, const StateRow&) = default;
};

CsvTable state_table(const std::vector<StateRow>& rows);
std::vector<StateRow> parse_state_table(const CsvTable& table);

struct InterferenceRow {
    Setting setting = Setting::A;
    int step = 0;
    int position = 0;
    Polarization polarization = Polarization::H;
    InterferenceOutcome outcome;
    bool readable = false;
};

/// m and m_error are written as empty fields when absent; status is
/// "ok" or "unreadable".
CsvTable interference_table(const std::vector<InterferenceRow>& rows);
std::vector<InterferenceRow> parse_interference_table(const CsvTable& table);

CsvTable evolution_table(const std::vector<EvolutionRow>& rows);
std::vector<EvolutionRow> parse_evolution_table(const CsvTable& table);

struct EdgeStateReport {
    EdgeStateSpec spec;
    WalkerState state;
    double residual = 0.0;
};

std::string edge_state_json(const std::vector<EdgeStateReport>& reports);
std::vector<EdgeStateReport> parse_edge_state_json(std::string_view text);

}  // namespace qwalk
