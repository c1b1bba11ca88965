#include "gb/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "gb/error.hpp"
#include "gb/rng.hpp"

namespace gb {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::string basename_no_ext(const std::string& path) {
    std::size_t slash = path.find_last_of("/\\");
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    std::size_t dot = base.find_last_of('.');
    if (dot != std::string::npos && dot > 0) base = base.substr(0, dot);
    return base;
}

// splits one line; supports double-quoted cells with "" escapes
std::vector<std::string> split_line(const std::string& line, char delimiter) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell += ch;
            }
        } else if (ch == '"' && cell.empty()) {
            quoted = true;
        } else if (ch == delimiter) {
            cells.push_back(std::move(cell));
            cell.clear();
        } else {
            cell += ch;
        }
    }
    cells.push_back(std::move(cell));
    return cells;
}

std::string trim(const std::string& text) {
    std::size_t begin = text.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    std::size_t end = text.find_last_not_of(" \t\r");
    return text.substr(begin, end - begin + 1);
}

bool parse_double(const std::string& cell, double& out) {
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

} // namespace

std::string format_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, ptr);
}

Dataset load_csv(const std::string& path, const CsvOptions& options) {
    std::ifstream in(path);
    if (!in) throw Error(errc::io_error, "cannot open " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    if (in.bad()) throw Error(errc::io_error, "read failure on " + path);

    std::size_t first_data = options.has_header ? 1 : 0;
    if (lines.size() <= first_data) throw Error(errc::parse_error, path + " has no data rows");

    std::vector<std::string> header;
    if (options.has_header) header = split_line(lines[0], options.delimiter);
    const std::size_t cols = split_line(lines[first_data], options.delimiter).size();
    if (options.has_header && header.size() != cols)
        throw Error(errc::ragged_rows, "header has " + std::to_string(header.size()) + " columns, data has " +
                                           std::to_string(cols));

    // resolve the label column: decimal index, or a header name
    std::ptrdiff_t label_col = -1;
    if (!options.label_column.empty()) {
        bool numeric = std::all_of(options.label_column.begin(), options.label_column.end(),
                                   [](unsigned char ch) { return std::isdigit(ch); });
        if (numeric) {
            label_col = std::stoll(options.label_column);
        } else {
            if (!options.has_header)
                throw Error(errc::parse_error, "label column by name requires a header row");
            for (std::size_t j = 0; j < header.size(); ++j)
                if (trim(header[j]) == options.label_column) label_col = static_cast<std::ptrdiff_t>(j);
            if (label_col < 0)
                throw Error(errc::parse_error, "no column named '" + options.label_column + "'");
        }
        if (label_col < 0 || static_cast<std::size_t>(label_col) >= cols)
            throw Error(errc::parse_error, "label column out of range");
    }

    const bool has_label = label_col >= 0;
    const std::size_t feature_count = cols - (has_label ? 1 : 0);
    if (feature_count == 0) throw Error(errc::parse_error, "no feature columns left");
    const std::size_t row_count = lines.size() - first_data;

    Dataset data;
    data.name = basename_no_ext(path);
    data.features = Matrix(row_count, feature_count);
    std::unordered_map<std::string, int> label_map;
    std::vector<int> labels;

    for (std::size_t r = 0; r < row_count; ++r) {
        const std::size_t file_row = first_data + r;
        auto cells = split_line(lines[file_row], options.delimiter);
        if (cells.size() != cols)
            throw Error(errc::ragged_rows, "row " + std::to_string(file_row + 1) + " has " +
                                               std::to_string(cells.size()) + " columns, expected " +
                                               std::to_string(cols));
        std::size_t f = 0;
        for (std::size_t j = 0; j < cols; ++j) {
            std::string cell = trim(cells[j]);
            if (has_label && j == static_cast<std::size_t>(label_col)) {
                auto [it, fresh] = label_map.emplace(cell, static_cast<int>(label_map.size()));
                (void)fresh;
                labels.push_back(it->second);
                continue;
            }
            double value;
            if (!parse_double(cell, value) || !std::isfinite(value))
                throw Error(errc::parse_error, "row " + std::to_string(file_row + 1) + ", column " +
                                                   std::to_string(j + 1) + ": not a finite number: '" + cell +
                                                   "'");
            data.features(r, f++) = value;
        }
    }
    if (has_label) data.labels = std::move(labels);

    if (options.has_header) {
        for (std::size_t j = 0; j < cols; ++j) {
            if (has_label && j == static_cast<std::size_t>(label_col)) continue;
            data.feature_names.push_back(trim(header[j]));
        }
    }
    return data;
}

void save_csv(const Dataset& data, const std::string& path, char delimiter) {
    std::ofstream out(path);
    if (!out) throw Error(errc::io_error, "cannot write " + path);

    for (std::size_t j = 0; j < data.m(); ++j) {
        if (j) out << delimiter;
        out << (j < data.feature_names.size() ? data.feature_names[j] : "f" + std::to_string(j));
    }
    if (data.has_labels()) out << delimiter << "label";
    out << '\n';

    for (std::size_t i = 0; i < data.n(); ++i) {
        for (std::size_t j = 0; j < data.m(); ++j) {
            if (j) out << delimiter;
            out << format_double(data.features(i, j));
        }
        if (data.has_labels()) out << delimiter << data.labels[i];
        out << '\n';
    }
    if (!out) throw Error(errc::io_error, "write failure on " + path);
}

Dataset minmax_normalize(const Dataset& data) {
    Dataset out = data;
    for (std::size_t j = 0; j < data.m(); ++j) {
        double lo = data.features(0, j), hi = lo;
        for (std::size_t i = 1; i < data.n(); ++i) {
            lo = std::min(lo, data.features(i, j));
            hi = std::max(hi, data.features(i, j));
        }
        const double range = hi - lo;
        for (std::size_t i = 0; i < data.n(); ++i)
            out.features(i, j) = range > 0.0 ? (data.features(i, j) - lo) / range : 0.0;
    }
    return out;
}

SynthShape parse_shape(std::string_view name) {
    if (name == "blobs") return SynthShape::blobs;
    if (name == "rings") return SynthShape::rings;
    if (name == "moons") return SynthShape::moons;
    if (name == "spirals") return SynthShape::spirals;
    throw Error(errc::unknown_shape, "unknown shape '" + std::string(name) + "'");
}

const char* shape_name(SynthShape shape) {
    switch (shape) {
        case SynthShape::blobs: return "blobs";
        case SynthShape::rings: return "rings";
        case SynthShape::moons: return "moons";
        case SynthShape::spirals: return "spirals";
    }
    return "?";
}

Dataset synth(SynthShape shape, std::size_t n, double noise, std::uint64_t seed, std::size_t classes) {
    if (classes == 0) classes = shape == SynthShape::blobs ? 3 : 2;
    if (shape == SynthShape::rings || shape == SynthShape::moons) classes = 2;
    if (n < classes) throw Error(errc::invalid_params, "n must be at least the class count");

    SplitMix64 rng(seed);
    Dataset data;
    data.name = shape_name(shape);
    data.feature_names = {"x", "y"};
    data.features = Matrix(n, 2);
    data.labels.resize(n);

    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t cls = i % classes; // balanced within one point
        double x = 0.0, y = 0.0;
        switch (shape) {
            case SynthShape::blobs: {
                const double angle = kTwoPi * static_cast<double>(cls) / static_cast<double>(classes);
                x = 5.0 * std::cos(angle) + 10.0 * noise * rng.next_gauss();
                y = 5.0 * std::sin(angle) + 10.0 * noise * rng.next_gauss();
                break;
            }
            case SynthShape::rings: {
                const double radius = cls == 0 ? 1.0 : 2.0;
                const double angle = kTwoPi * rng.next_double();
                const double r = radius + noise * rng.next_gauss();
                x = r * std::cos(angle);
                y = r * std::sin(angle);
                break;
            }
            case SynthShape::moons: {
                const double t = 3.14159265358979323846 * rng.next_double();
                if (cls == 0) {
                    x = std::cos(t);
                    y = std::sin(t);
                } else {
                    x = 1.0 - std::cos(t);
                    y = 0.5 - std::sin(t);
                }
                x += noise * rng.next_gauss();
                y += noise * rng.next_gauss();
                break;
            }
            case SynthShape::spirals: {
                const double t = 0.25 + 0.75 * rng.next_double();
                const double angle = kTwoPi * (1.75 * t + static_cast<double>(cls) / static_cast<double>(classes));
                const double r = 2.0 * t;
                x = r * std::cos(angle) + noise * rng.next_gauss();
                y = r * std::sin(angle) + noise * rng.next_gauss();
                break;
            }
        }
        data.features(i, 0) = x;
        data.features(i, 1) = y;
        data.labels[i] = static_cast<int>(cls);
    }
    return data;
}

std::string dataset_checksum(const Dataset& data) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    auto mix = [&hash](const void* bytes, std::size_t count) {
        const unsigned char* p = static_cast<const unsigned char*>(bytes);
        for (std::size_t i = 0; i < count; ++i) {
            hash ^= p[i];
            hash *= 0x100000001b3ULL;
        }
    };
    std::uint64_t dims[2] = {data.n(), data.m()};
    mix(dims, sizeof(dims));
    mix(data.features.data(), data.n() * data.m() * sizeof(double));
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a:%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

} // namespace gb
