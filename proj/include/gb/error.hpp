#pragma once

#include <stdexcept>
#include <string>

namespace gb {

enum class errc {
    empty_ball,
    bad_index,
    dim_mismatch,
    too_small_to_split,
    degenerate_split,
    too_few_balls,
    degenerate_geometry,
    eig_failed,
    not_symmetric,
    too_few_points,
    length_mismatch,
    io_error,
    parse_error,
    ragged_rows,
    unknown_shape,
    invalid_params,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    errc code() const { return code_; }

    // true for errors caused by files/streams rather than algorithm inputs
    bool is_io() const { return code_ == errc::io_error || code_ == errc::parse_error || code_ == errc::ragged_rows; }

private:
    errc code_;
};

} // namespace gb
