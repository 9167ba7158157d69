#include "stampfli/io.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace stampfli {

namespace {

Complex parse_pair(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("matrix_from_json: each entry must be a [re, im] pair");
  const double re = j[0].get<double>();
  const double im = j[1].get<double>();
  if (!std::isfinite(re) || !std::isfinite(im))
    throw ParseError("matrix_from_json: non-finite entry");
  return {re, im};
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

CMatrix matrix_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("matrix_from_json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("data"))
    throw ParseError("matrix_from_json: expected an object with 'n' and 'data'");
  if (!j["n"].is_number_integer())
    throw ParseError("matrix_from_json: 'n' must be an integer");
  const long long n = j["n"].get<long long>();
  if (n < 1 || n > 4096) throw ParseError("matrix_from_json: dimension out of range");
  const nlohmann::json& data = j["data"];
  if (!data.is_array()) throw ParseError("matrix_from_json: 'data' must be an array");

  std::vector<Complex> entries;
  entries.reserve(static_cast<size_t>(n * n));
  if (data.size() == static_cast<size_t>(n) && !data.empty() && data[0].is_array() &&
      data[0].size() == static_cast<size_t>(n) && (n != 2 || !data[0][0].is_number())) {
    for (const auto& row : data) {
      if (!row.is_array() || row.size() != static_cast<size_t>(n))
        throw ParseError("matrix_from_json: ragged row");
      for (const auto& cell : row) entries.push_back(parse_pair(cell));
    }
  } else {
    if (data.size() != static_cast<size_t>(n * n))
      throw ParseError("matrix_from_json: 'data' must hold n*n [re, im] pairs");
    for (const auto& cell : data) entries.push_back(parse_pair(cell));
  }
  return CMatrix(static_cast<int>(n), std::move(entries));
}

std::string matrix_to_json(const CMatrix& A) {
  const int n = A.size();
  std::string out = "{\"n\": " + std::to_string(n) + ", \"data\": [";
  for (int i = 0; i < n; ++i) {
    out += (i ? ", [" : "[");
    for (int j = 0; j < n; ++j) {
      if (j) out += ", ";
      out += "[" + fmt17(A(i, j).real()) + ", " + fmt17(A(i, j).imag()) + "]";
    }
    out += "]";
  }
  out += "]}";
  return out;
}

}  // namespace stampfli
