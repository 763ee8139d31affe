#pragma once

// JSON / CSV encodings shared by the CLI and the on-disk H cache.
// Rationals are written as {"num": .., "den": ..} in JSON and "num/den" in
// CSV; doubles use the shortest round-trip decimal.

#include "polymul/bases.hpp"
#include "polymul/matrix.hpp"
#include "polymul/opmatrix.hpp"
#include "polymul/scalar.hpp"

#include <json.hpp>

#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace polymul {

using Json = nlohmann::json;

namespace detail {

inline Json bigint_to_json(const BigInt& v) {
  if (v >= BigInt(std::numeric_limits<long long>::min()) && v <= BigInt(std::numeric_limits<long long>::max()))
    return Json(v.convert_to<long long>());
  return Json(v.str());
}

inline BigInt bigint_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<long long>());
  if (j.is_string()) {
    Rational q = parse_rational(j.get<std::string>());
    if (boost::multiprecision::denominator(q) != 1) throw std::invalid_argument("expected an integer, got " + j.dump());
    return boost::multiprecision::numerator(q);
  }
  throw std::invalid_argument("expected an integer, got " + j.dump());
}

}  // namespace detail

template <Scalar S>
Json scalar_to_json(const S& v) {
  if constexpr (ScalarTraits<S>::exact) {
    return Json{{"num", detail::bigint_to_json(boost::multiprecision::numerator(v))},
                {"den", detail::bigint_to_json(boost::multiprecision::denominator(v))}};
  } else {
    return Json(v == 0.0 ? 0.0 : v);
  }
}

/// Accepts JSON numbers, "p/q" or decimal strings, and {"num","den"} objects.
/// Non-integral JSON numbers are refused in exact mode: their decimal text is
/// already lost, so write them as strings.
template <Scalar S>
S scalar_from_json(const Json& j) {
  if (j.is_number_integer()) {
    if constexpr (ScalarTraits<S>::exact) return S(BigInt(j.get<long long>()));
    else return static_cast<double>(j.get<long long>());
  }
  if (j.is_number_float()) {
    if constexpr (ScalarTraits<S>::exact) {
      throw std::invalid_argument("float literal " + j.dump() + " in exact mode; write it as a \"p/q\" or decimal string");
    } else {
      return j.get<double>();
    }
  }
  if (j.is_string()) return ScalarTraits<S>::parse(j.get<std::string>());
  if (j.is_object() && j.contains("num") && j.contains("den")) {
    const BigInt den = detail::bigint_from_json(j.at("den"));
    if (den == 0) throw std::domain_error("rational with zero denominator");
    return ScalarTraits<S>::from_rational(Rational(detail::bigint_from_json(j.at("num")), den));
  }
  throw std::invalid_argument("not a scalar: " + j.dump());
}

template <Scalar S>
Json vector_to_json(std::span<const S> v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(scalar_to_json(x));
  return out;
}

template <Scalar S>
std::vector<S> vector_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected a JSON array, got " + j.dump());
  std::vector<S> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(scalar_from_json<S>(e));
  return out;
}

template <Scalar S>
Json matrix_rows_to_json(const Matrix<S>& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(vector_to_json<S>(m.row(i)));
  return rows;
}

template <Scalar S>
Matrix<S> matrix_from_rows_json(const Json& rows) {
  if (!rows.is_array() || rows.empty()) throw std::invalid_argument("expected a non-empty array of rows");
  const std::size_t ncols = rows.at(0).size();
  Matrix<S> m(rows.size(), ncols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto r = vector_from_json<S>(rows.at(i));
    if (r.size() != ncols) throw std::invalid_argument("ragged matrix rows");
    std::copy(r.begin(), r.end(), m.row(i).begin());
  }
  return m;
}

template <Scalar S>
std::string matrix_to_csv(const Matrix<S>& m, const std::string& header_comment) {
  std::ostringstream os;
  if (!header_comment.empty()) os << "# " << header_comment << "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ",";
      os << ScalarTraits<S>::format(m(i, j));
    }
    os << "\n";
  }
  return os.str();
}

/// Coordinate triplets (row, col, value) of the exact nonzeros.
template <Scalar S>
Json matrix_to_coo_json(const Matrix<S>& m) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != S{0}) entries.push_back(Json::array({i, j, scalar_to_json(m(i, j))}));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

template <Scalar S>
Json opmatrix_to_json(const OpMatrix<S>& h, const Matrix<S>& shown) {
  return Json{{"basis", h.basis->name()}, {"n", h.n}, {"k", h.k}, {"rows", matrix_rows_to_json(shown)}};
}

template <Scalar S>
Json opmatrix_to_json(const OpMatrix<S>& h) {
  return opmatrix_to_json(h, h.entries);
}

template <Scalar S>
std::string opmatrix_to_csv(const OpMatrix<S>& h, const Matrix<S>& shown) {
  return matrix_to_csv(shown, "H basis=" + h.basis->name() + " n=" + std::to_string(h.n) +
                                  " k=" + std::to_string(h.k));
}

/// {"basis":..,"n":..,"k":..,"rows":[..]} back into an OpMatrix over `basis`.
template <Scalar S>
OpMatrix<S> opmatrix_from_json(const Json& j, const BasisPtr<S>& basis) {
  const auto n = j.at("n").get<std::size_t>();
  const auto k = j.at("k").get<std::size_t>();
  if (j.at("basis").get<std::string>() != basis->name())
    throw std::invalid_argument("H matrix file is for basis '" + j.at("basis").get<std::string>() + "'");
  Matrix<S> m = matrix_from_rows_json<S>(j.at("rows"));
  if (m.rows() != n + 1 || m.cols() != n + k + 1) throw std::invalid_argument("H matrix file has wrong shape");
  return OpMatrix<S>{basis, n, k, std::move(m)};
}

/// {"name":..,"alpha":[..],"beta":[..],"gamma":[..]} with optional
/// "orthonormal": bool and "weight": "gaussian" | "uniform".
template <Scalar S>
BasisPtr<S> custom_basis_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("custom basis must be a JSON object");
  Weight weight = Weight::none;
  if (j.contains("weight")) {
    const auto w = j.at("weight").get<std::string>();
    if (w == "gaussian") weight = Weight::gaussian;
    else if (w == "uniform") weight = Weight::uniform;
    else if (w != "none") throw std::invalid_argument("unknown weight '" + w + "'");
  }
  return custom_basis<S>(j.at("name").get<std::string>(), vector_from_json<S>(j.at("alpha")),
                         vector_from_json<S>(j.at("beta")), vector_from_json<S>(j.at("gamma")),
                         j.value("orthonormal", false), weight);
}

}  // namespace polymul
