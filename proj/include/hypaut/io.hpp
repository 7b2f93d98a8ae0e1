// Copyright 2026 The hypaut Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPAUT_IO_HPP
#define HYPAUT_IO_HPP

#include <fstream>
#include <string>

#include <json.hpp>

#include "error.hpp"
#include "numeric.hpp"

namespace hypaut {

using Json = nlohmann::ordered_json;

// Big integers travel as decimal strings, rationals as {num, den} string pairs.
inline Json big_json(const BigInt& v) { return v.str(); }

inline Json rational_json(const Rational& v) {
  return Json{{"num", boost::multiprecision::numerator(v).str()},
              {"den", boost::multiprecision::denominator(v).str()}};
}

inline BigInt big_from_json(const Json& j) { return BigInt(j.get<std::string>()); }

inline Rational rational_from_json(const Json& j) {
  return Rational(BigInt(j.at("num").get<std::string>()), BigInt(j.at("den").get<std::string>()));
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open output file: " + path);
  out << text;
  out.flush();
  if (!out) throw Error("failed writing output file: " + path);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace hypaut

#endif  // HYPAUT_IO_HPP
