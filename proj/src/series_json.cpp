#include "subcrit/series_json.hpp"

#include <stdexcept>

namespace subcrit {
namespace {

std::size_t read_order(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("order") || !j.contains("coeffs"))
        throw std::invalid_argument("series json: expected an object with \"order\" and \"coeffs\"");
    if (!j["order"].is_number_unsigned()) throw std::invalid_argument("series json: \"order\" must be a non-negative integer");
    const auto order = j["order"].get<std::size_t>();
    if (!j["coeffs"].is_array() || j["coeffs"].size() != order + 1)
        throw std::invalid_argument("series json: \"coeffs\" must hold order + 1 entries");
    return order;
}

Rational read_fraction(const nlohmann::json& j) {
    if (!j.is_string()) throw std::invalid_argument("series json: coefficients must be fraction strings");
    return parse_fraction(j.get<std::string>());
}

}  // namespace

nlohmann::json to_json(const TruncatedEGF& a) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : a.coeffs()) coeffs.push_back(to_fraction_string(c));
    return {{"order", a.order()}, {"coeffs", std::move(coeffs)}};
}

nlohmann::json to_json(const BivariateEGF& a) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& p : a.coeffs()) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& c : p.coeffs()) row.push_back(to_fraction_string(c));
        coeffs.push_back(std::move(row));
    }
    return {{"order", a.order()}, {"coeffs", std::move(coeffs)}};
}

TruncatedEGF truncated_from_json(const nlohmann::json& j) {
    const std::size_t order = read_order(j);
    TruncatedEGF a(order);
    for (std::size_t n = 0; n <= order; ++n) a.set(n, read_fraction(j["coeffs"][n]));
    return a;
}

BivariateEGF bivariate_from_json(const nlohmann::json& j) {
    const std::size_t order = read_order(j);
    BivariateEGF a(order);
    for (std::size_t n = 0; n <= order; ++n) {
        const auto& row = j["coeffs"][n];
        if (!row.is_array()) throw std::invalid_argument("series json: bivariate coefficients must be arrays");
        std::vector<Rational> u;
        for (const auto& c : row) u.push_back(read_fraction(c));
        a.set(n, UPoly(std::move(u)));
    }
    return a;
}

}  // namespace subcrit
