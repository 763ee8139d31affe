#pragma once

// JSON forms of the three polynomial types:
//   {"basis": name, "coeffs": [...]}      degree-graded
//   {"interval": [a, b], "coeffs": [...]} Bernstein
//   {"nodes": [...], "values": [...]}     Lagrange
// Readers also take a bare coefficient array where the context supplies the rest.

#include "polymul/bernstein.hpp"
#include "polymul/dgmul.hpp"
#include "polymul/json_io.hpp"
#include "polymul/lagrange.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace polymul {

template <Scalar S>
Json dg_to_json(const DgPolynomial<S>& p) {
  return Json{{"basis", p.basis()->name()}, {"coeffs", vector_to_json<S>(p.coeffs())}};
}

template <Scalar S>
DgPolynomial<S> dg_from_json(const Json& j, const BasisPtr<S>& basis) {
  if (j.is_array()) return DgPolynomial<S>(basis, vector_from_json<S>(j));
  if (!j.is_object() || !j.contains("coeffs")) throw std::invalid_argument("polynomial JSON needs a \"coeffs\" array");
  if (j.contains("basis") && j.at("basis").get<std::string>() != basis->name())
    throw std::invalid_argument("polynomial is in basis '" + j.at("basis").get<std::string>() + "' but '" +
                                basis->name() + "' was requested");
  return DgPolynomial<S>(basis, vector_from_json<S>(j.at("coeffs")));
}

template <Scalar S>
Json bernstein_to_json(const bernstein::BernsteinPolynomial<S>& p) {
  return Json{{"interval", Json::array({scalar_to_json(p.a()), scalar_to_json(p.b())})},
              {"coeffs", vector_to_json<S>(p.coeffs())}};
}

/// `interval` is used for bare arrays and must agree with an embedded one.
template <Scalar S>
bernstein::BernsteinPolynomial<S> bernstein_from_json(const Json& j, const std::optional<std::pair<S, S>>& interval) {
  std::optional<std::pair<S, S>> iv = interval;
  Json coeffs = j;
  if (j.is_object()) {
    if (!j.contains("coeffs")) throw std::invalid_argument("Bernstein JSON needs a \"coeffs\" array");
    coeffs = j.at("coeffs");
    if (j.contains("interval")) {
      const auto ab = vector_from_json<S>(j.at("interval"));
      if (ab.size() != 2) throw std::invalid_argument("\"interval\" must have two entries");
      if (iv && !(iv->first == ab[0] && iv->second == ab[1]))
        throw std::invalid_argument("polynomial interval differs from --interval");
      iv = std::pair{ab[0], ab[1]};
    }
  }
  if (!iv) iv = std::pair{S{0}, S{1}};
  return bernstein::BernsteinPolynomial<S>(iv->first, iv->second, vector_from_json<S>(coeffs));
}

template <Scalar S>
Json lagrange_to_json(const lagrange::LagrangePolynomial<S>& p) {
  return Json{{"nodes", vector_to_json<S>(p.nodes())}, {"values", vector_to_json<S>(p.values())}};
}

template <Scalar S>
lagrange::LagrangePolynomial<S> lagrange_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("nodes") || !j.contains("values"))
    throw std::invalid_argument("Lagrange JSON needs \"nodes\" and \"values\" arrays");
  return lagrange::LagrangePolynomial<S>(vector_from_json<S>(j.at("nodes")), vector_from_json<S>(j.at("values")));
}

}  // namespace polymul
