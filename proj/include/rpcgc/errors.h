#pragma once

#include <stdexcept>
#include <string>

namespace rpcgc {

// Malformed external input (PLY text, JSON configs, curve files).
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Corrupt or truncated bitstream.
class DecodeError : public std::runtime_error {
public:
  explicit DecodeError(const std::string& what) : std::runtime_error(what) {}
};

// Structurally valid inputs that do not belong together (stream/grid
// mismatch, RD curves without rate overlap).
class IncompatibleError : public std::runtime_error {
public:
  explicit IncompatibleError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rpcgc
