#pragma once

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "qxy/grid.hpp"
#include "qxy/spectrum.hpp"

namespace qxy {

// Filesystem failure (unwritable path, short write). The CLI maps this to
// its I/O exit code.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// CSV rendering of a grid: header "<axis1>,<axis2>,value" followed by
// count1*count2 data rows in row-major axis1-outer order. Numbers carry 17
// significant digits so parsing them back reproduces the exact doubles;
// undefined cells print the sentinel NA. Output is byte-stable for equal
// grids (no metadata, no locale, '\n' line ends).
std::string grid_to_csv(const Grid2D& g);

// JSON object mirroring Grid2D: quantity (token), axis1/axis2, fixed,
// values (numbers, with null for undefined cells), metadata. Keys are
// emitted sorted, so equal grids serialize byte-identically.
nlohmann::json grid_to_json(const Grid2D& g);

// Inverse of grid_to_json; grid_from_json(grid_to_json(g)) == g. Throws
// std::invalid_argument on unknown quantity tokens or mismatched value
// counts, nlohmann::json::exception on structurally malformed documents.
Grid2D grid_from_json(const nlohmann::json& j);

// CSV rendering of a crossing locus: header "segment,<axis1>,<axis2>" and
// one row per point, where segment is the 0-based polyline index.
std::string locus_to_csv(const CrossingLocus& locus);

// JSON rendering: {"axis1": name, "axis2": name, "polylines": [[[x,y],..]]}.
nlohmann::json locus_to_json(const CrossingLocus& locus);

// Standalone SVG heatmap of a grid: one rectangle per grid cell, colored by
// a linear two-ended ramp from #2166ac (minimum) to #b2182b (maximum),
// interpolating each RGB channel in the value. Undefined cells render in
// neutral gray #bdbdbd. The figure carries axis name and tick labels and a
// numeric color-bar; a constant grid renders single-colored with the
// color-bar annotated "constant". Gap grids get their zero contour overlaid
// as black polylines.
std::string render_heatmap(const Grid2D& g);

// Writes content to path, creating or truncating the file. Throws IoError
// if the file cannot be opened or fully written.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace qxy
