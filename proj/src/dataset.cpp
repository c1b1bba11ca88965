#include "gb/dataset.hpp"

#include <cmath>

#include "gb/error.hpp"

namespace gb {

void Dataset::validate() const {
    if (n() == 0 || m() == 0)
        throw Error(errc::invalid_params, "dataset must have at least one row and one column");
    for (std::size_t i = 0; i < n(); ++i)
        for (std::size_t j = 0; j < m(); ++j)
            if (!std::isfinite(features(i, j)))
                throw Error(errc::invalid_params, "non-finite feature value at row " + std::to_string(i));
    if (!labels.empty() && labels.size() != n())
        throw Error(errc::invalid_params, "label count does not match row count");
}
} // namespace gb

