#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "gb/ball.hpp"
#include "gb/cluster.hpp"

namespace gb {

// On-disk documents shared by the CLI subcommands. Serialization is
// deterministic: fixed key order, shortest round-trip numbers, no timestamps.

struct BallsDocument {
    std::string dataset_name;
    std::size_t n = 0, m = 0;
    std::string checksum;
    bool normalized = false;
    std::string method; // pojg | cheng | xie
    double gamma = 0.0;
    double delta = 0.0;
    std::uint64_t seed = 0;
    GBSet gbset;
};

struct AssignmentDocument {
    RunMeta meta;
    std::optional<double> gamma, delta; // generation parameters, copied from the balls file
    bool normalized = false;
    std::string dataset_checksum;
    std::string nmi_normalization = "sqrt";
    std::size_t k = 0;
    std::vector<int> ball_labels;
    std::vector<int> instance_labels;
};

std::string balls_to_json(const BallsDocument& doc);
BallsDocument balls_from_json(const std::string& text);

std::string assignment_to_json(const AssignmentDocument& doc);
AssignmentDocument assignment_from_json(const std::string& text);

std::string read_text_file(const std::string& path);            // throws Error(io_error)
void write_text_file(const std::string& path, const std::string& text);

} // namespace gb
