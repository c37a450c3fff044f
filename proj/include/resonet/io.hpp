// io.hpp — Number formatting, CSV/SVG writers and atomic file output

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "resonet/evolve.hpp"

namespace resonet::io {

// 9 significant digits; infinities as "inf"/"-inf".
std::string format_double(double v);

// Value rounded to 9 significant digits as a JSON number, or the string
// "inf" / "-inf" for infinities.
nlohmann::json json_number(double v);

// Writes to "<path>.tmp" and renames over path.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

// Header: time, occ_1..occ_n, occ_total, purity, fidelity, coh_r_s (r < s, 1-based).
std::vector<std::string> trajectory_columns(std::size_t modes, std::size_t terms);
std::string trajectory_csv(const Trajectory& traj);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvTable parse_csv(const std::string& text);

// Minimal 800x500 line chart, one series.
std::string svg_line_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                           const std::vector<double>& x, const std::vector<double>& y);

} // namespace resonet::io
