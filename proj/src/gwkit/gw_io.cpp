#include "gwkit/gw_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

namespace gwkit {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw io_error("cannot write '" + tmp + "'");
        out << contents;
        if (!out) {
            out.close();
            std::remove(tmp.c_str());
            throw io_error("failed writing '" + tmp + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::remove(tmp.c_str());
        throw io_error("cannot rename '" + tmp + "' to '" + path + "': " + ec.message());
    }
}

namespace {

std::optional<double> parse_number(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    if (b == e) return std::nullopt;
    double v = 0.0;
    const auto res = std::from_chars(s.data() + b, s.data() + e, v);
    if (res.ec != std::errc() || res.ptr != s.data() + e) return std::nullopt;
    return v;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    std::size_t i = 0;
    // skip a UTF-8 BOM
    if (text.size() >= 3 && text.compare(0, 3, "\xEF\xBB\xBF") == 0) i = 3;
    auto end_field = [&] { row.push_back(std::move(field)); field.clear(); };
    auto end_row = [&] {
        end_field();
        rows.push_back(std::move(row));
        row.clear();
    };
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\n') {
            if (!field.empty() && field.back() == '\r') field.pop_back();
            end_row();
        } else {
            field += c;
        }
    }
    if (quoted) throw invalid_input("unterminated quote in CSV input");
    if (!field.empty() || !row.empty()) {
        if (!field.empty() && field.back() == '\r') field.pop_back();
        end_row();
    }
    return rows;
}

ObservationTable table_from_csv(const std::string& text, const IngestOptions& opts) {
    auto rows = parse_csv(text);
    if (rows.empty()) throw invalid_input("CSV input is empty");
    const auto header = rows.front();
    if (header.empty()) throw invalid_input("CSV header row is empty");
    for (std::size_t a = 0; a < header.size(); ++a)
        for (std::size_t b = a + 1; b < header.size(); ++b)
            if (header[a] == header[b])
                throw invalid_input("duplicate CSV column '" + header[a] + "'");
    const std::size_t ncol = header.size();
    const std::size_t n = rows.size() - 1;
    if (n == 0) throw invalid_input("CSV has a header but no data rows");
    for (std::size_t r = 1; r < rows.size(); ++r)
        if (rows[r].size() != ncol)
            throw invalid_input("row " + std::to_string(r) + " has " +
                                std::to_string(rows[r].size()) + " fields, expected " +
                                std::to_string(ncol));

    auto col_index = [&](const std::string& name) -> std::size_t {
        for (std::size_t c = 0; c < ncol; ++c)
            if (header[c] == name) return c;
        throw invalid_input("missing coordinate column '" + name + "'");
    };
    const std::size_t xi = col_index(opts.x_col);
    const std::size_t yi = col_index(opts.y_col);

    ObservationTable t;
    t.x_name = opts.x_col;
    t.y_name = opts.y_col;
    t.column_order = header;
    t.x.resize(n);
    t.y.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
        const auto vx = parse_number(rows[r + 1][xi]);
        const auto vy = parse_number(rows[r + 1][yi]);
        if (!vx || !std::isfinite(*vx))
            throw invalid_input("non-numeric coordinate '" + rows[r + 1][xi] +
                                "' in column '" + opts.x_col + "', row " +
                                std::to_string(r + 1));
        if (!vy || !std::isfinite(*vy))
            throw invalid_input("non-numeric coordinate '" + rows[r + 1][yi] +
                                "' in column '" + opts.y_col + "', row " +
                                std::to_string(r + 1));
        t.x[r] = *vx;
        t.y[r] = *vy;
    }

    for (std::size_t c = 0; c < ncol; ++c) {
        if (c == xi || c == yi) continue;
        std::vector<double> nums(n);
        bool numeric = true;
        for (std::size_t r = 0; r < n && numeric; ++r) {
            const auto v = parse_number(rows[r + 1][c]);
            if (!v || !std::isfinite(*v))
                numeric = false;
            else
                nums[r] = *v;
        }
        if (numeric) {
            t.attr_names.push_back(header[c]);
            t.attr_values.push_back(std::move(nums));
        } else {
            std::vector<std::string> vals(n);
            for (std::size_t r = 0; r < n; ++r) vals[r] = rows[r + 1][c];
            t.label_names.push_back(header[c]);
            t.label_values.push_back(std::move(vals));
        }
    }
    t.validate();
    return t;
}

// Shoelace area and area-weighted centroid of one ring.
struct RingCentroid {
    double area = 0.0;
    double cx = 0.0;
    double cy = 0.0;
};

RingCentroid ring_centroid(const nlohmann::ordered_json& ring, std::size_t feature) {
    if (!ring.is_array() || ring.size() < 3)
        throw invalid_input("feature " + std::to_string(feature) +
                            ": polygon ring needs at least 3 vertices");
    double a2 = 0.0, cx = 0.0, cy = 0.0;
    const std::size_t m = ring.size();
    for (std::size_t i = 0; i < m; ++i) {
        const auto& p = ring[i];
        const auto& q = ring[(i + 1) % m];
        const double x0 = p.at(0).get<double>(), y0 = p.at(1).get<double>();
        const double x1 = q.at(0).get<double>(), y1 = q.at(1).get<double>();
        const double cross = x0 * y1 - x1 * y0;
        a2 += cross;
        cx += (x0 + x1) * cross;
        cy += (y0 + y1) * cross;
    }
    RingCentroid out;
    out.area = 0.5 * a2;
    if (out.area == 0.0)
        throw invalid_input("feature " + std::to_string(feature) +
                            ": polygon ring has zero area");
    out.cx = cx / (6.0 * out.area);
    out.cy = cy / (6.0 * out.area);
    out.area = std::abs(out.area);
    return out;
}

std::pair<double, double> feature_point(const nlohmann::ordered_json& geom,
                                        std::size_t feature) {
    const std::string type = geom.at("type").get<std::string>();
    if (type == "Point") {
        const auto& c = geom.at("coordinates");
        return {c.at(0).get<double>(), c.at(1).get<double>()};
    }
    if (type == "Polygon") {
        const auto rc = ring_centroid(geom.at("coordinates").at(0), feature);
        return {rc.cx, rc.cy};
    }
    if (type == "MultiPolygon") {
        RingCentroid best;
        bool first = true;
        for (const auto& poly : geom.at("coordinates")) {
            const auto rc = ring_centroid(poly.at(0), feature);
            if (first || rc.area > best.area) {
                best = rc;
                first = false;
            }
        }
        return {best.cx, best.cy};
    }
    throw invalid_input("feature " + std::to_string(feature) +
                        ": unsupported geometry type '" + type + "'");
}

bool polygonal(const std::string& type) {
    return type == "Polygon" || type == "MultiPolygon";
}

ObservationTable table_from_geojson(const nlohmann::ordered_json& doc,
                                    nlohmann::ordered_json& features_out) {
    if (!doc.is_object() || doc.value("type", "") != "FeatureCollection" ||
        !doc.contains("features") || !doc.at("features").is_array())
        throw invalid_input("GeoJSON input is not a FeatureCollection");
    const auto& feats = doc.at("features");
    if (feats.empty()) throw invalid_input("empty feature collection");

    ObservationTable t;
    t.x_name = "x";
    t.y_name = "y";
    const std::size_t n = feats.size();
    t.x.resize(n);
    t.y.resize(n);

    std::string family;
    std::vector<std::string> prop_names;
    std::vector<bool> prop_numeric;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& f = feats[i];
        if (!f.contains("geometry") || f.at("geometry").is_null())
            throw invalid_input("feature " + std::to_string(i) + " has no geometry");
        const std::string type = f.at("geometry").value("type", "");
        const std::string fam = type == "Point" ? "point"
                                : polygonal(type) ? "polygon"
                                                  : "other";
        if (fam == "other")
            throw invalid_input("feature " + std::to_string(i) +
                                ": unsupported geometry type '" + type + "'");
        if (family.empty())
            family = fam;
        else if (family != fam)
            throw invalid_input("mixed geometry types: feature " + std::to_string(i) +
                                " is " + fam + ", collection started with " + family);
        const auto [px, py] = feature_point(f.at("geometry"), i);
        if (!std::isfinite(px) || !std::isfinite(py))
            throw invalid_input("feature " + std::to_string(i) +
                                " has non-finite coordinates");
        t.x[i] = px;
        t.y[i] = py;

        const auto props = f.contains("properties") && f.at("properties").is_object()
                               ? f.at("properties")
                               : nlohmann::ordered_json::object();
        if (i == 0) {
            for (const auto& [key, val] : props.items()) {
                prop_names.push_back(key);
                prop_numeric.push_back(val.is_number());
                if (val.is_number()) {
                    t.attr_names.push_back(key);
                    t.attr_values.emplace_back(n);
                } else {
                    t.label_names.push_back(key);
                    t.label_values.emplace_back(n);
                }
            }
        }
        std::size_t na = 0, nl = 0;
        for (std::size_t p = 0; p < prop_names.size(); ++p) {
            if (!props.contains(prop_names[p]))
                throw invalid_input("feature " + std::to_string(i) +
                                    " is missing property '" + prop_names[p] + "'");
            const auto& val = props.at(prop_names[p]);
            if (prop_numeric[p]) {
                if (!val.is_number())
                    throw invalid_input("feature " + std::to_string(i) + " property '" +
                                        prop_names[p] + "' is not numeric");
                t.attr_values[na++][i] = val.get<double>();
            } else {
                t.label_values[nl][i] =
                    val.is_string() ? val.get<std::string>() : val.dump();
                ++nl;
            }
        }
    }
    t.column_order = prop_names;
    t.validate();
    features_out = feats;
    return t;
}

}  // namespace

IngestData ingest(const std::string& path, const IngestOptions& opts) {
    IngestData out;
    const std::string text = read_file(path);
    if (opts.format == "csv") {
        out.table = table_from_csv(text, opts);
    } else if (opts.format == "geojson") {
        nlohmann::ordered_json doc;
        try {
            doc = nlohmann::ordered_json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw invalid_input(std::string("GeoJSON parse error: ") + e.what());
        }
        out.table = table_from_geojson(doc, out.features);
        out.from_geojson = true;
    } else {
        throw invalid_input("unknown input format '" + opts.format + "'");
    }
    return out;
}

void write_table_csv(const ObservationTable& table, const std::string& path) {
    std::ostringstream out;
    const auto& order = table.column_order;
    std::vector<std::string> cols =
        order.empty() ? std::vector<std::string>{table.x_name, table.y_name} : order;
    if (order.empty()) {
        cols.insert(cols.end(), table.attr_names.begin(), table.attr_names.end());
        cols.insert(cols.end(), table.label_names.begin(), table.label_names.end());
    }
    for (std::size_t c = 0; c < cols.size(); ++c)
        out << (c ? "," : "") << csv_escape(cols[c]);
    out << "\n";
    const std::size_t n = table.size();
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (c) out << ",";
            const std::string& name = cols[c];
            if (name == table.x_name)
                out << format_double(table.x[r]);
            else if (name == table.y_name)
                out << format_double(table.y[r]);
            else if (table.has_attribute(name))
                out << format_double(table.attribute(name)[r]);
            else {
                for (std::size_t l = 0; l < table.label_names.size(); ++l)
                    if (table.label_names[l] == name) {
                        out << csv_escape(table.label_values[l][r]);
                        break;
                    }
            }
        }
        out << "\n";
    }
    write_file_atomic(path, out.str());
}

}  // namespace gwkit
