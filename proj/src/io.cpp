// io.cpp — Output formatting shared by the command-line front end

#include "resonet/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "resonet/errors.hpp"

namespace resonet::io {

std::string format_double(double v)
{
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

nlohmann::json json_number(double v)
{
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    return std::stod(format_double(v));
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << contents;
        if (!out) throw std::runtime_error("failed writing " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::vector<std::string> trajectory_columns(std::size_t modes, std::size_t terms)
{
    std::vector<std::string> cols{"time"};
    for (std::size_t m = 1; m <= modes; ++m) cols.push_back("occ_" + std::to_string(m));
    cols.insert(cols.end(), {"occ_total", "purity", "fidelity"});
    for (std::size_t r = 1; r <= terms; ++r) {
        for (std::size_t s = r + 1; s <= terms; ++s) {
            cols.push_back("coh_" + std::to_string(r) + "_" + std::to_string(s));
        }
    }
    return cols;
}

std::string trajectory_csv(const Trajectory& traj)
{
    std::ostringstream out;
    const auto cols = trajectory_columns(traj.modes(), traj.terms());
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
    for (const auto& p : traj.points) {
        out << format_double(p.time);
        for (double occ : p.obs.occupation) out << ',' << format_double(occ);
        out << ',' << format_double(p.obs.total_occupation) << ',' << format_double(p.obs.purity) << ','
            << format_double(p.obs.fidelity);
        const auto j = p.coefficients.rows();
        for (Eigen::Index r = 0; r < j; ++r) {
            for (Eigen::Index s = r + 1; s < j; ++s) out << ',' << format_double(std::abs(p.coefficients(r, s)));
        }
        out << '\n';
    }
    return out.str();
}

CsvTable parse_csv(const std::string& text)
{
    CsvTable table;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (first) {
            table.header = std::move(fields);
            first = false;
        } else {
            if (fields.size() != table.header.size()) throw std::runtime_error("ragged CSV row: " + line);
            table.rows.push_back(std::move(fields));
        }
    }
    return table;
}

std::string svg_line_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                           const std::vector<double>& x, const std::vector<double>& y)
{
    constexpr double width = 800.0, height = 500.0;
    constexpr double left = 80.0, right = 30.0, top = 50.0, bottom = 60.0;
    const double pw = width - left - right;
    const double ph = height - top - bottom;

    double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
    std::vector<std::size_t> finite;
    for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
        if (std::isfinite(x[i]) && std::isfinite(y[i])) finite.push_back(i);
    }
    if (!finite.empty()) {
        xmin = xmax = x[finite[0]];
        ymin = ymax = y[finite[0]];
        for (auto i : finite) {
            xmin = std::min(xmin, x[i]);
            xmax = std::max(xmax, x[i]);
            ymin = std::min(ymin, y[i]);
            ymax = std::max(ymax, y[i]);
        }
    }
    if (xmax - xmin <= 0.0) xmax = xmin + 1.0;
    if (ymax - ymin <= 1e-12 * std::max(1.0, std::abs(ymax))) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    auto px = [&](double v) { return left + (v - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double v) { return top + (1.0 - (v - ymin) / (ymax - ymin)) * ph; };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 800 500\" width=\"800\" "
           "height=\"500\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"white\"/>\n"
        << "<text x=\"400\" y=\"30\" text-anchor=\"middle\" font-size=\"18\">" << title << "</text>\n"
        << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\"" << left + pw << "\" y2=\"" << top + ph
        << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + ph
        << "\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double xv = xmin + (xmax - xmin) * k / 4.0;
        const double yv = ymin + (ymax - ymin) * k / 4.0;
        out << "<text x=\"" << px(xv) << "\" y=\"" << top + ph + 20 << "\" text-anchor=\"middle\" font-size=\"12\">"
            << format_double(xv) << "</text>\n";
        out << "<text x=\"" << left - 8 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\" font-size=\"12\">"
            << format_double(yv) << "</text>\n";
    }
    out << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 15 << "\" text-anchor=\"middle\" font-size=\"14\">"
        << x_label << "</text>\n"
        << "<text x=\"20\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 20 "
        << top + ph / 2 << ")\">" << y_label << "</text>\n";
    out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
    for (std::size_t k = 0; k < finite.size(); ++k) {
        out << (k ? " " : "") << format_double(px(x[finite[k]])) << "," << format_double(py(y[finite[k]]));
    }
    out << "\"/>\n</svg>\n";
    return out.str();
}

} // namespace resonet::io
