#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace rpcgc {

// Adaptive frequency table over a finite alphabet, backed by a Fenwick tree.
// Every symbol keeps frequency >= 1; when the total reaches maxTotal all
// frequencies halve (rounding up). Encoder and decoder must drive identical
// update sequences.
class AdaptiveModel {
public:
  explicit AdaptiveModel(
    uint32_t alphabetSize, uint32_t increment = 32, uint32_t maxTotal = 1u << 16);

  uint32_t alphabetSize() const { return _alphabet; }
  uint32_t total() const { return _total; }
  uint32_t freq(uint32_t symbol) const;
  uint32_t cumFreq(uint32_t symbol) const;  // sum of freq over symbols < symbol

  // Largest symbol with cumFreq(symbol) <= target; target must be < total().
  uint32_t findSymbol(uint32_t target, uint32_t* cumOut) const;

  void update(uint32_t symbol);

private:
  void add(uint32_t symbol, int32_t delta);
  void halve();

  uint32_t _alphabet;
  uint32_t _increment;
  uint32_t _maxTotal;
  uint32_t _total;
  uint32_t _mask;  // highest power of two <= _alphabet
  std::vector<uint32_t> _tree;
};

// Carry-aware 32-bit range coder (LZMA-style renormalization). Symbol
// frequencies come from the caller's model; total frequency must stay below
// 2^24.
class RangeEncoder {
public:
  void encode(uint32_t cumFreq, uint32_t freq, uint32_t totalFreq);
  std::vector<uint8_t> finish();

private:
  void shiftLow();

  uint64_t _low = 0;
  uint32_t _range = 0xFFFFFFFFu;
  uint8_t _cache = 0;
  uint64_t _cacheCount = 1;
  std::vector<uint8_t> _bytes;
};

class RangeDecoder {
public:
  explicit RangeDecoder(std::span<const uint8_t> bytes);

  // Returns a value in [0, totalFreq) locating the next symbol; follow with
  // consume() for the symbol's interval.
  uint32_t decodeFreq(uint32_t totalFreq);
  void consume(uint32_t cumFreq, uint32_t freq);

private:
  uint8_t nextByte();

  std::span<const uint8_t> _bytes;
  size_t _pos = 0;
  uint32_t _range = 0xFFFFFFFFu;
  uint32_t _code = 0;
};

void encodeSymbol(RangeEncoder& enc, AdaptiveModel& model, uint32_t symbol);
uint32_t decodeSymbol(RangeDecoder& dec, AdaptiveModel& model);

// Elias-gamma code for v >= 1, each bit driven through an adaptive binary
// model.
void encodeGamma(RangeEncoder& enc, AdaptiveModel& bitModel, uint64_t v);
uint64_t decodeGamma(RangeDecoder& dec, AdaptiveModel& bitModel);

// Whole-sequence helpers with a fresh default model per call.
std::vector<uint8_t> acEncode(std::span<const uint32_t> symbols, uint32_t alphabetSize);
std::vector<uint32_t> acDecode(
  std::span<const uint8_t> bytes, size_t symbolCount, uint32_t alphabetSize);

}  // namespace rpcgc
