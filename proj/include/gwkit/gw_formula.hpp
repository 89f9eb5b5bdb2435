#pragma once

#include <string>
#include <vector>

#include "gwkit/errors.hpp"

namespace gwkit {

/// response ~ predictor (+ predictor)*; the intercept is always implicit.
struct FormulaSpec {
    std::string response;
    std::vector<std::string> predictors;
    bool intercept = true;

    std::size_t coefficient_count() const {
        return predictors.size() + (intercept ? 1 : 0);
    }
};

/// Parses "y ~ a + b". Names are case-sensitive identifiers; surrounding
/// whitespace is ignored. Throws formula_error carrying the byte position.
FormulaSpec parse_formula(const std::string& text);

}  // namespace gwkit
