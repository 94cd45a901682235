//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef FRAGTOK_ERROR_H_
#define FRAGTOK_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fragtok {

class Error: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class SmilesSyntaxError: public Error {
public:
  SmilesSyntaxError(std::size_t position, const std::string &message)
      : Error("SMILES syntax error at position " + std::to_string(position)
              + ": " + message),
        position_(position) { }

  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

class UnsupportedFeature: public Error {
public:
  using Error::Error;
};

class InvalidGraph: public Error {
public:
  using Error::Error;
};

}  // namespace fragtok

#endif  // FRAGTOK_ERROR_H_
