// Copyright (c) 2026 gridpop contributors.
// All rights reserved.
//
// This software is licensed under the Apache License, Version 2.0 (the "License").
// You may not use this file except in compliance with the License. You may
// obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0.
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gridpop/raster.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "gridpop/error.h"
#include "text_util.h"

namespace gridpop {

RasterGrid::RasterGrid(std::size_t n_cols, std::size_t n_rows, double x_ll, double y_ll,
                       double cell_size, double nodata, std::vector<double> values,
                       std::string crs_tag)
    : m_n_cols{n_cols},
      m_n_rows{n_rows},
      m_x_ll{x_ll},
      m_y_ll{y_ll},
      m_cell_size{cell_size},
      m_nodata{nodata},
      m_values{std::move(values)},
      m_crs_tag{std::move(crs_tag)} {
    if (n_cols == 0 || n_rows == 0) {
        throw InputError("raster must have at least one row and one column");
    }
    if (!(std::isfinite(cell_size) && cell_size > 0)) {
        throw InputError("raster cell size must be positive");
    }
    if (!std::isfinite(x_ll) || !std::isfinite(y_ll) || !std::isfinite(nodata)) {
        throw InputError("raster origin and nodata value must be finite");
    }
    if (m_values.size() != n_cols * n_rows) {
        throw InputError("raster has " + std::to_string(m_values.size()) + " values, expected " +
                         std::to_string(n_cols * n_rows));
    }
    for (std::size_t i = 0; i < m_values.size(); i++) {
        double v = m_values[i];
        if (v == nodata) {
            continue;
        }
        if (!std::isfinite(v) || v < 0) {
            throw InputError("raster value at row " + std::to_string(i / n_cols) + ", col " +
                             std::to_string(i % n_cols) + " is not a non-negative count");
        }
    }
}

Rectangle RasterGrid::extent() const {
    return {m_x_ll, m_y_ll,
            m_x_ll + static_cast<double>(m_n_cols) * m_cell_size,
            m_y_ll + static_cast<double>(m_n_rows) * m_cell_size};
}

double RasterGrid::total() const {
    double sum = 0;
    for (double v : m_values) {
        if (!is_nodata(v)) {
            sum += v;
        }
    }
    return sum;
}

RasterGrid RasterGrid::with_crs(std::string crs_tag) const {
    RasterGrid copy = *this;
    copy.m_crs_tag = std::move(crs_tag);
    return copy;
}

CellWindow::CellWindow(std::size_t row_begin, std::size_t row_end, std::size_t col_begin, std::size_t col_end)
    : m_row_begin{row_begin}, m_row_end{row_end}, m_col_begin{col_begin}, m_col_end{col_end} {
    if (row_begin >= row_end || col_begin >= col_end) {
        m_row_begin = m_row_end = m_col_begin = m_col_end = 0;
    }
}

Rectangle cell_box(const RasterGrid& grid, std::size_t row, std::size_t col) {
    if (row >= grid.n_rows() || col >= grid.n_cols()) {
        throw InputError("cell (" + std::to_string(row) + ", " + std::to_string(col) +
                         ") is outside a " + std::to_string(grid.n_rows()) + "x" +
                         std::to_string(grid.n_cols()) + " grid");
    }
    const double s = grid.cell_size();
    const auto c = static_cast<double>(col);
    const auto r_up = static_cast<double>(grid.n_rows() - 1 - row);
    // Adjacent cells evaluate the shared edge with the same expression, so
    // neighbouring boxes meet exactly.
    return {grid.x_ll() + c * s, grid.y_ll() + r_up * s,
            grid.x_ll() + (c + 1) * s, grid.y_ll() + (r_up + 1) * s};
}

Point cell_center(const RasterGrid& grid, std::size_t row, std::size_t col) {
    Rectangle b = cell_box(grid, row, col);
    return {0.5 * (b.x_min + b.x_max), 0.5 * (b.y_min + b.y_max)};
}

namespace {

// Lower edge coordinate of the k-th cell along an axis; edge(k+1) is the
// upper edge of cell k.
double edge(double origin, double s, std::size_t k) {
    return origin + static_cast<double>(k) * s;
}

// Half-open range [first, last) of cell indices along one axis (counted from
// the origin) whose closed interval meets [lo, hi].
std::pair<std::size_t, std::size_t> axis_range(double origin, double s, std::size_t n, double lo, double hi) {
    if (hi < edge(origin, s, 0) || lo > edge(origin, s, n)) {
        return {0, 0};
    }
    auto clamp_index = [n](double v) -> std::size_t {
        if (!(v > 0)) {
            return 0;
        }
        if (v >= static_cast<double>(n - 1)) {
            return n - 1;
        }
        return static_cast<std::size_t>(v);
    };
    std::size_t first = clamp_index(std::floor((lo - origin) / s));
    std::size_t last = clamp_index(std::floor((hi - origin) / s));

    // The division above is only a guess; settle against the exact edges.
    while (first > 0 && edge(origin, s, first) >= lo) {
        first--;
    }
    while (first < n - 1 && edge(origin, s, first + 1) < lo) {
        first++;
    }
    while (last < n - 1 && edge(origin, s, last + 1) <= hi) {
        last++;
    }
    while (last > 0 && edge(origin, s, last) > hi) {
        last--;
    }
    if (last < first) {
        return {0, 0};
    }
    return {first, last + 1};
}

}

CellWindow cells_intersecting(const RasterGrid& grid, const Rectangle& bbox) {
    const double s = grid.cell_size();
    auto [c0, c1] = axis_range(grid.x_ll(), s, grid.n_cols(), bbox.x_min, bbox.x_max);
    auto [u0, u1] = axis_range(grid.y_ll(), s, grid.n_rows(), bbox.y_min, bbox.y_max);
    if (c0 == c1 || u0 == u1) {
        return {};
    }
    // u counts rows upward from the southern edge; grid rows count downward.
    std::size_t row_begin = grid.n_rows() - u1;
    std::size_t row_end = grid.n_rows() - u0;
    return {row_begin, row_end, c0, c1};
}

namespace {

struct LineReader {
    std::string_view text;
    std::size_t pos = 0;
    std::size_t line_no = 0;

    // Next non-blank line, tokenized; nullopt at end of input.
    std::optional<std::vector<std::string_view>> next() {
        while (pos < text.size()) {
            std::size_t eol = text.find('\n', pos);
            if (eol == std::string_view::npos) {
                eol = text.size();
            }
            std::string_view line = text.substr(pos, eol - pos);
            pos = eol + 1;
            line_no++;
            auto tokens = split_whitespace(line);
            if (!tokens.empty()) {
                return tokens;
            }
        }
        return std::nullopt;
    }
};

double parse_real(std::string_view token, std::size_t line, const char* what) {
    auto v = parse_double(token);
    if (!v) {
        throw ParseError(line, std::string("non-numeric ") + what + " '" + std::string(token) + "'");
    }
    return *v;
}

std::size_t parse_count(std::string_view token, std::size_t line, const char* key) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size() || v == 0) {
        throw ParseError(line, std::string(key) + " must be a positive integer, got '" + std::string(token) + "'");
    }
    return v;
}

std::vector<std::string_view> header_line(LineReader& in, const char* expected) {
    auto tokens = in.next();
    if (!tokens) {
        throw ParseError(in.line_no, std::string("unexpected end of input, expected '") + expected + "'");
    }
    if (tokens->size() != 2) {
        throw ParseError(in.line_no, std::string("malformed header line, expected '") + expected + " <value>'");
    }
    return *tokens;
}

}

RasterGrid parse_ascii_grid(std::string_view text, std::string crs_tag) {
    LineReader in{text};

    auto ncols_line = header_line(in, "ncols");
    if (!iequals(ncols_line[0], "ncols")) {
        throw ParseError(in.line_no, "malformed header key '" + std::string(ncols_line[0]) + "', expected 'ncols'");
    }
    std::size_t n_cols = parse_count(ncols_line[1], in.line_no, "ncols");

    auto nrows_line = header_line(in, "nrows");
    if (!iequals(nrows_line[0], "nrows")) {
        throw ParseError(in.line_no, "malformed header key '" + std::string(nrows_line[0]) + "', expected 'nrows'");
    }
    std::size_t n_rows = parse_count(nrows_line[1], in.line_no, "nrows");

    auto x_line = header_line(in, "xllcorner");
    bool x_center = iequals(x_line[0], "xllcenter");
    if (!x_center && !iequals(x_line[0], "xllcorner")) {
        throw ParseError(in.line_no, "malformed header key '" + std::string(x_line[0]) + "', expected 'xllcorner' or 'xllcenter'");
    }
    double x_ll = parse_real(x_line[1], in.line_no, "x origin");
    std::size_t x_line_no = in.line_no;

    auto y_line = header_line(in, "yllcorner");
    bool y_center = iequals(y_line[0], "yllcenter");
    if (!y_center && !iequals(y_line[0], "yllcorner")) {
        throw ParseError(in.line_no, "malformed header key '" + std::string(y_line[0]) + "', expected 'yllcorner' or 'yllcenter'");
    }
    double y_ll = parse_real(y_line[1], in.line_no, "y origin");
    std::size_t y_line_no = in.line_no;

    auto cs_line = header_line(in, "cellsize");
    if (!iequals(cs_line[0], "cellsize")) {
        throw ParseError(in.line_no, "malformed header key '" + std::string(cs_line[0]) + "', expected 'cellsize'");
    }
    double cell_size = parse_real(cs_line[1], in.line_no, "cellsize");
    if (!(std::isfinite(cell_size) && cell_size > 0)) {
        throw ParseError(in.line_no, "cellsize must be positive");
    }
    if (!std::isfinite(x_ll)) {
        throw ParseError(x_line_no, "x origin must be finite");
    }
    if (!std::isfinite(y_ll)) {
        throw ParseError(y_line_no, "y origin must be finite");
    }
    if (x_center) {
        x_ll -= cell_size / 2;
    }
    if (y_center) {
        y_ll -= cell_size / 2;
    }

    double nodata = kDefaultNodata;
    auto tokens = in.next();
    if (tokens && iequals((*tokens)[0], "nodata_value")) {
        if (tokens->size() != 2) {
            throw ParseError(in.line_no, "malformed header line, expected 'NODATA_value <value>'");
        }
        nodata = parse_real((*tokens)[1], in.line_no, "NODATA_value");
        if (!std::isfinite(nodata)) {
            throw ParseError(in.line_no, "NODATA_value must be finite");
        }
        tokens = in.next();
    }

    std::vector<double> values;
    values.reserve(n_cols * n_rows);
    for (std::size_t r = 0; r < n_rows; r++) {
        if (!tokens) {
            throw ParseError(in.line_no, "expected " + std::to_string(n_rows) + " data rows, found " + std::to_string(r));
        }
        if (tokens->size() != n_cols) {
            throw ParseError(in.line_no, "expected " + std::to_string(n_cols) + " values, found " +
                                             std::to_string(tokens->size()));
        }
        for (auto token : *tokens) {
            double v = parse_real(token, in.line_no, "value");
            if (v != nodata && !(std::isfinite(v) && v >= 0)) {
                throw ParseError(in.line_no, "value '" + std::string(token) + "' is not a non-negative count");
            }
            values.push_back(v);
        }
        tokens = in.next();
    }
    if (tokens) {
        throw ParseError(in.line_no, "unexpected data after " + std::to_string(n_rows) + " rows");
    }

    return RasterGrid(n_cols, n_rows, x_ll, y_ll, cell_size, nodata, std::move(values), std::move(crs_tag));
}

RasterGrid read_ascii_grid(const std::string& path, std::string crs_tag) {
    std::string text = read_file(path);
    try {
        return parse_ascii_grid(text, std::move(crs_tag));
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

std::string write_ascii_grid(const RasterGrid& grid) {
    std::string out;
    out.reserve(grid.size() * 8 + 128);
    out += "ncols ";
    out += std::to_string(grid.n_cols());
    out += "\nnrows ";
    out += std::to_string(grid.n_rows());
    out += "\nxllcorner ";
    out += format_shortest(grid.x_ll());
    out += "\nyllcorner ";
    out += format_shortest(grid.y_ll());
    out += "\ncellsize ";
    out += format_shortest(grid.cell_size());
    out += "\nNODATA_value ";
    out += format_shortest(grid.nodata());
    out += '\n';
    for (std::size_t r = 0; r < grid.n_rows(); r++) {
        for (std::size_t c = 0; c < grid.n_cols(); c++) {
            if (c > 0) {
                out += ' ';
            }
            out += format_shortest(grid(r, c));
        }
        out += '\n';
    }
    return out;
}

}
