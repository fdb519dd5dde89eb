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

#pragma once

#include <cstddef>
#include <iterator>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gridpop/feature.h"
#include "gridpop/geometry.h"

namespace gridpop {

inline constexpr double kDefaultNodata = -9999.0;

/// Georeferenced grid of per-cell population counts.
///
/// Values are stored row-major with row 0 the northernmost row. Cell (r, c)
/// covers [x_ll + c*s, x_ll + (c+1)*s] x [y_ll + (n_rows-1-r)*s, y_ll + (n_rows-r)*s].
/// Instances are immutable once constructed.
class RasterGrid {
public:
    /// Throws InputError if the dimensions, cell size or values violate the
    /// grid invariants (non-nodata values must be finite and >= 0).
    RasterGrid(std::size_t n_cols, std::size_t n_rows, double x_ll, double y_ll,
               double cell_size, double nodata, std::vector<double> values,
               std::string crs_tag = kGeographicWgs84);

    std::size_t n_cols() const { return m_n_cols; }
    std::size_t n_rows() const { return m_n_rows; }
    std::size_t size() const { return m_values.size(); }
    double x_ll() const { return m_x_ll; }
    double y_ll() const { return m_y_ll; }
    double cell_size() const { return m_cell_size; }
    double cell_area() const { return m_cell_size * m_cell_size; }
    double nodata() const { return m_nodata; }
    const std::string& crs_tag() const { return m_crs_tag; }
    std::span<const double> values() const { return m_values; }

    double operator()(std::size_t row, std::size_t col) const {
        return m_values[row * m_n_cols + col];
    }

    bool is_nodata(double v) const { return v == m_nodata; }
    bool is_nodata(std::size_t row, std::size_t col) const { return is_nodata((*this)(row, col)); }

    Rectangle extent() const;

    /// Sum of all non-nodata values, row-major order.
    double total() const;

    RasterGrid with_crs(std::string crs_tag) const;

    bool operator==(const RasterGrid&) const = default;

private:
    std::size_t m_n_cols;
    std::size_t m_n_rows;
    double m_x_ll;
    double m_y_ll;
    double m_cell_size;
    double m_nodata;
    std::vector<double> m_values;
    std::string m_crs_tag;
};

struct CellIndex {
    std::size_t row;
    std::size_t col;

    bool operator==(const CellIndex&) const = default;
    auto operator<=>(const CellIndex&) const = default;
};

/// Rectangular block of cells, visited in row-major order. The bounds are
/// half-open; an empty window has row_begin == row_end.
class CellWindow {
public:
    class iterator {
    public:
        using iterator_category = std::forward_iterator_tag;
        using value_type = CellIndex;
        using difference_type = std::ptrdiff_t;
        using pointer = const CellIndex*;
        using reference = CellIndex;

        iterator() = default;
        iterator(CellIndex at, std::size_t col_begin, std::size_t col_end)
            : m_at{at}, m_col_begin{col_begin}, m_col_end{col_end} {}

        CellIndex operator*() const { return m_at; }

        iterator& operator++() {
            if (++m_at.col == m_col_end) {
                m_at.col = m_col_begin;
                ++m_at.row;
            }
            return *this;
        }

        iterator operator++(int) {
            auto old = *this;
            ++*this;
            return old;
        }

        bool operator==(const iterator& o) const { return m_at == o.m_at; }

    private:
        CellIndex m_at{};
        std::size_t m_col_begin = 0;
        std::size_t m_col_end = 0;
    };

    CellWindow() = default;
    CellWindow(std::size_t row_begin, std::size_t row_end, std::size_t col_begin, std::size_t col_end);

    std::size_t row_begin() const { return m_row_begin; }
    std::size_t row_end() const { return m_row_end; }
    std::size_t col_begin() const { return m_col_begin; }
    std::size_t col_end() const { return m_col_end; }

    bool empty() const { return m_row_begin == m_row_end; }
    std::size_t size() const { return (m_row_end - m_row_begin) * (m_col_end - m_col_begin); }

    iterator begin() const { return {{m_row_begin, m_col_begin}, m_col_begin, m_col_end}; }
    iterator end() const { return {{m_row_end, m_col_begin}, m_col_begin, m_col_end}; }

private:
    std::size_t m_row_begin = 0;
    std::size_t m_row_end = 0;
    std::size_t m_col_begin = 0;
    std::size_t m_col_end = 0;
};

/// Parses an ESRI ASCII Grid. Header keys are case-insensitive and must come
/// in the order ncols, nrows, xllcorner|xllcenter, yllcorner|yllcenter,
/// cellsize, optional NODATA_value. Center-registered origins are shifted by
/// half a cell. Errors are reported as ParseError with a line number.
RasterGrid parse_ascii_grid(std::string_view text, std::string crs_tag = kGeographicWgs84);

RasterGrid read_ascii_grid(const std::string& path, std::string crs_tag = kGeographicWgs84);

/// Emits lower-case keys, the corner convention and NODATA_value, with every
/// value in shortest round-trip decimal form.
std::string write_ascii_grid(const RasterGrid& grid);

/// Throws InputError when the index is out of range.
Rectangle cell_box(const RasterGrid& grid, std::size_t row, std::size_t col);

Point cell_center(const RasterGrid& grid, std::size_t row, std::size_t col);

/// Cells whose closed box meets the closed `bbox`, edge and corner contact
/// included. Empty when the bbox misses the grid extent.
CellWindow cells_intersecting(const RasterGrid& grid, const Rectangle& bbox);

}
