#include "polarmax/cli/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace polarmax::cli {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  if (res.ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  std::size_t begin = s.find_first_not_of(" \t\r");
  std::size_t end = s.find_last_not_of(" \t\r");
  if (begin == std::string::npos) throw std::invalid_argument("expected a number, got an empty field");
  double v = 0;
  const char* first = s.data() + begin;
  const char* last = s.data() + end + 1;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

void write_positions_csv(const std::filesystem::path& path, const PointSet& ps) {
  auto out = open_out(path);
  for (std::size_t d = 0; d < ps.dim(); ++d) out << (d ? ",x" : "x") << d;
  out << '\n';
  for (std::size_t k = 0; k < ps.size(); ++k) {
    const auto z = ps[k];
    for (std::size_t d = 0; d < ps.dim(); ++d) out << (d ? "," : "") << format_double(z[d]);
    out << '\n';
  }
  finish(out, path);
}

PointSet read_positions_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": missing header");
  std::size_t dim = 1;
  for (char c : line) dim += c == ',' ? 1 : 0;
  std::vector<double> coords;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    std::stringstream ss(line);
    std::string field;
    std::size_t fields = 0;
    while (std::getline(ss, field, ',')) {
      try {
        coords.push_back(parse_double(field));
      } catch (const std::invalid_argument& e) {
        throw std::runtime_error(path.string() + ":" + std::to_string(row) + ": " + e.what());
      }
      ++fields;
    }
    if (fields != dim)
      throw std::runtime_error(path.string() + ":" + std::to_string(row) + ": expected " +
                               std::to_string(dim) + " fields");
  }
  if (coords.empty()) throw std::runtime_error(path.string() + ": no positions");
  return PointSet(dim, std::move(coords));
}

void write_loss_csv(const std::filesystem::path& path, const LossTrace& loss) {
  auto out = open_out(path);
  out << "epoch,loss\n";
  for (std::size_t e = 0; e < loss.values.size(); ++e) out << e << ',' << format_double(loss.values[e]) << '\n';
  finish(out, path);
}

void write_records_csv(const std::filesystem::path& path, const std::vector<CommunicationRecord>& records) {
  auto out = open_out(path);
  out << "epoch";
  const std::size_t n = records.empty() ? 0 : records.front().friends.size();
  for (std::size_t k = 0; k < n; ++k) out << ",f" << k;
  out << '\n';
  for (const auto& r : records) {
    out << r.epoch;
    for (auto f : r.friends) out << ',' << f;
    out << '\n';
  }
  finish(out, path);
}

void write_histogram_csv(const std::filesystem::path& path, const GridHistogram& h) {
  auto out = open_out(path);
  out << "iy,ix,count\n";
  for (std::size_t iy = 0; iy < h.grid_size; ++iy)
    for (std::size_t ix = 0; ix < h.grid_size; ++ix) out << iy << ',' << ix << ',' << h.at(ix, iy) << '\n';
  finish(out, path);
}

nlohmann::json attractor_json(const AttractorSummary& s) {
  return {{"centers", s.centers},
          {"counts", s.counts},
          {"assignment", s.assignment},
          {"merge_radius", s.merge_radius},
          {"n_infinity", s.n_clusters()}};
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  write_text(path, j.dump(2) + "\n");
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
  finish(out, path);
}

}  // namespace polarmax::cli
