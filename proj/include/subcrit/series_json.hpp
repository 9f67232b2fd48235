#pragma once

// JSON form of exact series: {"order": N, "coeffs": ["p/q", ...]}. A bivariate
// series stores, per power of z, the array of its u-coefficients.

#include "json.hpp"

#include "subcrit/series.hpp"

namespace subcrit {

nlohmann::json to_json(const TruncatedEGF& a);
nlohmann::json to_json(const BivariateEGF& a);

/// Throws std::invalid_argument on a malformed document.
TruncatedEGF truncated_from_json(const nlohmann::json& j);
BivariateEGF bivariate_from_json(const nlohmann::json& j);

}  // namespace subcrit
