#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "gwkit/gw_core.hpp"

namespace gwkit {

struct IngestOptions {
    std::string format = "csv";  // csv | geojson
    std::string x_col = "X";
    std::string y_col = "Y";
};

/// Parsed input. For GeoJSON input the original feature array is retained so
/// result writers can echo the geometries.
struct IngestData {
    ObservationTable table;
    nlohmann::ordered_json features;  // null unless from_geojson
    bool from_geojson = false;
};

/// CSV: the named coordinate columns become coords, the remaining numeric
/// columns become attributes, non-numeric columns become labels. GeoJSON:
/// Point features use their coordinates; Polygon/MultiPolygon features use
/// the area-weighted centroid of their largest exterior ring.
IngestData ingest(const std::string& path, const IngestOptions& opts = {});

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

/// Writes the table back out as CSV in its original column order.
void write_table_csv(const ObservationTable& table, const std::string& path);

/// Writes contents to a temp file in the target directory, then renames, so a
/// failed run never leaves a partial output file.
void write_file_atomic(const std::string& path, const std::string& contents);

/// One CSV field, quoted if it contains a comma, quote, or newline.
std::string csv_escape(const std::string& field);

std::string read_file(const std::string& path);

}  // namespace gwkit
