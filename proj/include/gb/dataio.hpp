#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "gb/dataset.hpp"

namespace gb {

struct CsvOptions {
    bool has_header = true;
    std::string label_column; // empty = none; decimal digits = 0-based index; otherwise a header name
    char delimiter = ',';
};

// Numeric CSV reader. Textual labels are mapped to dense 0-based integers in
// first-appearance order; any non-numeric feature cell is an error.
Dataset load_csv(const std::string& path, const CsvOptions& options = {});

// Shortest round-trip float formatting; labels appended as a final column.
void save_csv(const Dataset& data, const std::string& path, char delimiter = ',');

// rescales every column to [0,1]; constant columns map to 0
Dataset minmax_normalize(const Dataset& data);

enum class SynthShape { blobs, rings, moons, spirals };

SynthShape parse_shape(std::string_view name); // throws Error(unknown_shape)
const char* shape_name(SynthShape shape);

// 2-D labeled datasets with class sizes balanced within one point.
// classes = 0 picks the shape default (blobs 3, others 2).
Dataset synth(SynthShape shape, std::size_t n, double noise, std::uint64_t seed, std::size_t classes = 0);

// FNV-1a over the row-major feature bytes, formatted "fnv1a:<16 hex digits>"
std::string dataset_checksum(const Dataset& data);

// shortest representation that parses back to the same double
std::string format_double(double value);

} // namespace gb
