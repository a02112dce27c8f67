#pragma once

#include <stdexcept>
#include <string>

namespace cy3 {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad caller input: mismatched geometries, wrong lengths, non-ample H,
/// unknown names.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Malformed geometry file or unparsable literal.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Input data that contradicts a theorem the toolkit relies on
/// (non-integral Euler characteristic, Hodge index violation).
class DataError : public Error {
 public:
  using Error::Error;
};

/// The geometry cannot support the construction at all (Picard rank 1).
class StructuralError : public Error {
 public:
  using Error::Error;
};

}  // namespace cy3
