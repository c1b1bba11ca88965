#include "gb/error.hpp"

namespace gb {

const char* errc_name(errc c) {
    switch (c) {
        case errc::empty_ball: return "EmptyBall";
        case errc::bad_index: return "BadIndex";
        case errc::dim_mismatch: return "DimMismatch";
        case errc::too_small_to_split: return "TooSmallToSplit";
        case errc::degenerate_split: return "DegenerateSplit";
        case errc::too_few_balls: return "TooFewBalls";
        case errc::degenerate_geometry: return "DegenerateGeometry";
        case errc::eig_failed: return "EigFailed";
        case errc::not_symmetric: return "NotSymmetric";
        case errc::too_few_points: return "TooFewPoints";
        case errc::length_mismatch: return "LengthMismatch";
        case errc::io_error: return "IoError";
        case errc::parse_error: return "ParseError";
        case errc::ragged_rows: return "RaggedRows";
        case errc::unknown_shape: return "UnknownShape";
        case errc::invalid_params: return "InvalidParams";
    }
    return "UnknownError";
}
} // namespace gb

