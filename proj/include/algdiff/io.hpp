// Copyright 2026 The algdiff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// JSON documents for polynomials and operators. Scalars are decimal strings
// ("num/den" for non-integral rationals) so no reader has to guess at integer
// widths.
//
//   polynomial: {"field": F, "coeffs": [[c_00, c_01, ...], ...]}   row i = X^i
//   operator:   {"var": "Dx"|"Tx", "field": F, "coeffs": [[...], ...]}
//   field F:    {"kind": "prime", "modulus": p} | {"kind": "rational"}

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "algdiff/bipoly.hpp"
#include "algdiff/diffop.hpp"
#include "algdiff/errors.hpp"
#include "algdiff/field.hpp"
#include "json.hpp"

namespace algdiff {

using Json = nlohmann::json;

inline Json field_to_json(const FieldSpec& f) {
  if (f.kind == FieldKind::prime) return {{"kind", "prime"}, {"modulus", f.modulus}};
  return {{"kind", "rational"}};
}

inline FieldSpec field_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) throw ParseError("field: missing \"kind\"");
  const auto kind = j["kind"].get<std::string>();
  if (kind == "rational") return FieldSpec::rational();
  if (kind != "prime") throw ParseError("field: unknown kind \"" + kind + "\"");
  if (!j.contains("modulus")) throw ParseError("field: prime field without \"modulus\"");
  const Json& m = j["modulus"];
  if (m.is_number_integer() && m.get<std::int64_t>() >= 0) return FieldSpec::prime(m.get<std::uint64_t>());
  if (m.is_string()) {
    try {
      return FieldSpec::prime(std::stoull(m.get<std::string>()));
    } catch (const std::logic_error&) {
      throw ParseError("field: bad modulus \"" + m.get<std::string>() + "\"");
    }
  }
  throw ParseError("field: modulus must be a positive integer");
}

template <Field K>
FieldSpec spec_of(const K& k) {
  if constexpr (is_prime_field_v<K>)
    return k.spec();
  else
    return FieldSpec::rational();
}

namespace io_detail {

template <Field K>
Json scalars(const K& k, const std::vector<typename K::Elem>& v) {
  Json a = Json::array();
  for (const auto& c : v) a.push_back(k.to_string(c));
  return a;
}

template <Field K>
std::vector<typename K::Elem> parse_scalars(const K& k, const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + ": expected an array of scalars");
  std::vector<typename K::Elem> out;
  for (const auto& s : j) {
    if (s.is_string())
      out.push_back(k.parse(s.get<std::string>()));
    else if (s.is_number_integer())
      out.push_back(k.from_int(s.get<std::int64_t>()));
    else
      throw ParseError(std::string(what) + ": scalars must be decimal strings");
  }
  return out;
}

template <Field K>
void check_field(const K& k, const Json& j) {
  if (j.contains("field") && !(field_from_json(j["field"]) == spec_of(k)))
    throw DomainError("document field does not match the requested field");
}

}  // namespace io_detail

template <Field K>
Json poly_to_json(const BiPoly<K>& p) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < p.rows(); ++i) {
    std::vector<typename K::Elem> r;
    for (std::size_t j = 0; j < p.cols(); ++j) r.push_back(p.coeff(i, j));
    rows.push_back(io_detail::scalars(p.field(), r));
  }
  return {{"field", field_to_json(spec_of(p.field()))}, {"coeffs", rows}};
}

template <Field K>
BiPoly<K> poly_from_json(const K& k, const Json& j) {
  if (!j.is_object() || !j.contains("coeffs")) throw ParseError("polynomial: missing \"coeffs\"");
  io_detail::check_field(k, j);
  const Json& c = j["coeffs"];
  if (!c.is_array()) throw ParseError("polynomial: \"coeffs\" must be an array of rows");
  std::vector<std::vector<typename K::Elem>> rows;
  for (const auto& r : c) rows.push_back(io_detail::parse_scalars(k, r, "polynomial row"));
  return BiPoly<K>(k, rows);
}

template <Field K>
Json op_to_json(const DiffOp<K>& op) {
  Json cs = Json::array();
  for (const auto& c : op.coeffs()) cs.push_back(io_detail::scalars(op.field(), c.coeffs()));
  return {{"var", op_var_name(op.var())}, {"field", field_to_json(spec_of(op.field()))}, {"coeffs", cs}};
}

template <Field K>
DiffOp<K> op_from_json(const K& k, const Json& j) {
  if (!j.is_object() || !j.contains("var") || !j.contains("coeffs"))
    throw ParseError("operator: expected \"var\" and \"coeffs\"");
  io_detail::check_field(k, j);
  const auto v = j["var"].is_string() ? j["var"].get<std::string>() : std::string();
  if (v != "Dx" && v != "Tx") throw ParseError("operator: \"var\" must be \"Dx\" or \"Tx\"");
  if (!j["coeffs"].is_array()) throw ParseError("operator: \"coeffs\" must be an array");
  std::vector<UniPoly<K>> cs;
  for (const auto& c : j["coeffs"]) cs.emplace_back(k, io_detail::parse_scalars(k, c, "operator coefficient"));
  return DiffOp<K>(k, v == "Dx" ? OpVar::dx : OpVar::theta, std::move(cs));
}

/// Field named by a document, or nullopt when it carries none.
inline std::optional<FieldSpec> document_field(const Json& j) {
  if (j.is_object() && j.contains("field")) return field_from_json(j["field"]);
  return std::nullopt;
}

}  // namespace algdiff
