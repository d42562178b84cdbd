#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "rpcgc/errors.h"

namespace rpcgc {

// Little-endian byte stream helpers shared by the bitstream layers.

class ByteWriter {
public:
  void u8(uint8_t v) { _bytes.push_back(v); }

  void u32(uint32_t v)
  {
    for (int i = 0; i < 4; i++)
      _bytes.push_back(static_cast<uint8_t>(v >> (8 * i)));
  }

  void f64(double v)
  {
    uint64_t bits = std::bit_cast<uint64_t>(v);
    for (int i = 0; i < 8; i++)
      _bytes.push_back(static_cast<uint8_t>(bits >> (8 * i)));
  }

  void raw(std::span<const uint8_t> data)
  {
    _bytes.insert(_bytes.end(), data.begin(), data.end());
  }

  void tag(const char (&magic)[5])
  {
    _bytes.insert(_bytes.end(), magic, magic + 4);
  }

  size_t size() const { return _bytes.size(); }
  std::vector<uint8_t> take() { return std::move(_bytes); }
  const std::vector<uint8_t>& bytes() const { return _bytes; }

private:
  std::vector<uint8_t> _bytes;
};

class ByteReader {
public:
  explicit ByteReader(std::span<const uint8_t> bytes) : _bytes(bytes) {}

  size_t pos() const { return _pos; }
  size_t remaining() const { return _bytes.size() - _pos; }

  uint8_t u8()
  {
    need(1);
    return _bytes[_pos++];
  }

  uint32_t u32()
  {
    need(4);
    uint32_t v = 0;
    for (int i = 0; i < 4; i++)
      v |= static_cast<uint32_t>(_bytes[_pos++]) << (8 * i);
    return v;
  }

  double f64()
  {
    need(8);
    uint64_t bits = 0;
    for (int i = 0; i < 8; i++)
      bits |= static_cast<uint64_t>(_bytes[_pos++]) << (8 * i);
    return std::bit_cast<double>(bits);
  }

  std::span<const uint8_t> raw(size_t n)
  {
    need(n);
    auto out = _bytes.subspan(_pos, n);
    _pos += n;
    return out;
  }

  void expectTag(const char (&magic)[5], const char* streamName)
  {
    need(4);
    if (std::memcmp(_bytes.data() + _pos, magic, 4) != 0)
      throw DecodeError(
        std::string(streamName) + ": bad magic at offset " + std::to_string(_pos));
    _pos += 4;
  }

private:
  void need(size_t n) const
  {
    if (remaining() < n)
      throw DecodeError(
        "truncated stream at offset " + std::to_string(_pos) + ": need "
        + std::to_string(n) + " bytes, have " + std::to_string(remaining()));
  }

  std::span<const uint8_t> _bytes;
  size_t _pos = 0;
};

}  // namespace rpcgc
