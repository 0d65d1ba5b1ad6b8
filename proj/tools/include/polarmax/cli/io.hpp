// CSV and JSON serialization for run outputs.
//
// Doubles are written as the shortest decimal that reads back to the same
// bits, so every CSV written here re-ingests exactly.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "polarmax/analysis.hpp"
#include "polarmax/geometry.hpp"
#include <json.hpp>

namespace polarmax::cli {

std::string format_double(double v);
double parse_double(const std::string& s);

/// Header x0..x{D-1}, one row per agent.
void write_positions_csv(const std::filesystem::path& path, const PointSet& ps);
PointSet read_positions_csv(const std::filesystem::path& path);

/// Header epoch,loss; row e is the loss after e epochs (row 0 is the initial state).
void write_loss_csv(const std::filesystem::path& path, const LossTrace& loss);

/// Header epoch,f0..f{N-1}.
void write_records_csv(const std::filesystem::path& path, const std::vector<CommunicationRecord>& records);

/// Header iy,ix,count for every bin.
void write_histogram_csv(const std::filesystem::path& path, const GridHistogram& h);

/// Fields: centers, counts, assignment, merge_radius, n_infinity.
nlohmann::json attractor_json(const AttractorSummary& s);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace polarmax::cli
