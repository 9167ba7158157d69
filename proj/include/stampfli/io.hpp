#pragma once

#include <string>

#include "stampfli/matrix.hpp"

namespace stampfli {

/// Malformed matrix text (distinct from semantic InputError so callers can
/// map it to an I/O-style failure).
class ParseError : public InputError {
 public:
  using InputError::InputError;
};

/// Parse {"n": N, "data": ...} where data is either n rows of n [re, im]
/// pairs or a flat list of n*n pairs. All numbers must be finite.
CMatrix matrix_from_json(const std::string& text);

/// Serialize with 17 significant digits, row-nested data.
std::string matrix_to_json(const CMatrix& A);

}  // namespace stampfli
