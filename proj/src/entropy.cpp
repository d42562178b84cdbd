#include "rpcgc/entropy.h"

#include <bit>
#include <stdexcept>
#include <string>

#include "rpcgc/errors.h"

namespace rpcgc {

namespace {

constexpr uint32_t kTopValue = 1u << 24;

}  // namespace

//============================================================================
// AdaptiveModel

AdaptiveModel::AdaptiveModel(uint32_t alphabetSize, uint32_t increment, uint32_t maxTotal)
  : _alphabet(alphabetSize)
  , _increment(increment)
  , _maxTotal(maxTotal)
  , _total(alphabetSize)
  , _tree(alphabetSize + 1, 0)
{
  if (alphabetSize == 0)
    throw std::invalid_argument("AdaptiveModel: empty alphabet");
  if (maxTotal + increment >= kTopValue)
    throw std::invalid_argument("AdaptiveModel: maxTotal too large for the range coder");
  _mask = std::bit_floor(_alphabet);
  for (uint32_t s = 0; s < _alphabet; s++)
    add(s, 1);
}

void AdaptiveModel::add(uint32_t symbol, int32_t delta)
{
  for (uint32_t i = symbol + 1; i <= _alphabet; i += i & (0u - i))
    _tree[i] = static_cast<uint32_t>(static_cast<int64_t>(_tree[i]) + delta);
}

uint32_t AdaptiveModel::cumFreq(uint32_t symbol) const
{
  uint32_t sum = 0;
  for (uint32_t i = symbol; i > 0; i -= i & (0u - i))
    sum += _tree[i];
  return sum;
}

uint32_t AdaptiveModel::freq(uint32_t symbol) const
{
  return cumFreq(symbol + 1) - cumFreq(symbol);
}

uint32_t AdaptiveModel::findSymbol(uint32_t target, uint32_t* cumOut) const
{
  uint32_t pos = 0;
  uint32_t rem = target;
  for (uint32_t step = _mask; step > 0; step >>= 1) {
    uint32_t next = pos + step;
    if (next <= _alphabet && _tree[next] <= rem) {
      pos = next;
      rem -= _tree[next];
    }
  }
  if (cumOut)
    *cumOut = target - rem;
  return pos;
}

void AdaptiveModel::update(uint32_t symbol)
{
  if (symbol >= _alphabet)
    throw std::invalid_argument(
      "AdaptiveModel: symbol " + std::to_string(symbol) + " outside alphabet of "
      + std::to_string(_alphabet));
  add(symbol, static_cast<int32_t>(_increment));
  _total += _increment;
  if (_total >= _maxTotal)
    halve();
}

void AdaptiveModel::halve()
{
  std::vector<uint32_t> freqs(_alphabet);
  for (uint32_t s = 0; s < _alphabet; s++)
    freqs[s] = freq(s);
  std::fill(_tree.begin(), _tree.end(), 0);
  _total = 0;
  for (uint32_t s = 0; s < _alphabet; s++) {
    uint32_t f = (freqs[s] + 1) >> 1;
    add(s, static_cast<int32_t>(f));
    _total += f;
  }
}

//============================================================================
// RangeEncoder

void RangeEncoder::shiftLow()
{
  if (static_cast<uint32_t>(_low) < 0xFF000000u || (_low >> 32) != 0) {
    auto carry = static_cast<uint8_t>(_low >> 32);
    uint8_t byte = _cache;
    do {
      _bytes.push_back(static_cast<uint8_t>(byte + carry));
      byte = 0xFF;
    } while (--_cacheCount != 0);
    _cache = static_cast<uint8_t>(_low >> 24);
  }
  _cacheCount++;
  _low = (_low << 8) & 0xFFFFFFFFu;
}

void RangeEncoder::encode(uint32_t cumFreq, uint32_t freq, uint32_t totalFreq)
{
  uint32_t r = _range / totalFreq;
  _low += static_cast<uint64_t>(r) * cumFreq;
  _range = r * freq;
  while (_range < kTopValue) {
    _range <<= 8;
    shiftLow();
  }
}

std::vector<uint8_t> RangeEncoder::finish()
{
  for (int i = 0; i < 5; i++)
    shiftLow();
  return std::move(_bytes);
}

//============================================================================
// RangeDecoder

RangeDecoder::RangeDecoder(std::span<const uint8_t> bytes) : _bytes(bytes)
{
  for (int i = 0; i < 5; i++)
    _code = (_code << 8) | nextByte();
}

uint8_t RangeDecoder::nextByte()
{
  // Reading past the end yields zero bytes; callers bound the symbol count.
  return _pos < _bytes.size() ? _bytes[_pos++] : 0;
}

uint32_t RangeDecoder::decodeFreq(uint32_t totalFreq)
{
  _range /= totalFreq;
  uint32_t value = _code / _range;
  return value < totalFreq ? value : totalFreq - 1;
}

void RangeDecoder::consume(uint32_t cumFreq, uint32_t freq)
{
  _code -= cumFreq * _range;
  _range *= freq;
  while (_range < kTopValue) {
    _code = (_code << 8) | nextByte();
    _range <<= 8;
  }
}

//============================================================================

void encodeSymbol(RangeEncoder& enc, AdaptiveModel& model, uint32_t symbol)
{
  if (symbol >= model.alphabetSize())
    throw std::invalid_argument(
      "encodeSymbol: symbol " + std::to_string(symbol) + " outside alphabet of "
      + std::to_string(model.alphabetSize()));
  enc.encode(model.cumFreq(symbol), model.freq(symbol), model.total());
  model.update(symbol);
}

uint32_t decodeSymbol(RangeDecoder& dec, AdaptiveModel& model)
{
  uint32_t target = dec.decodeFreq(model.total());
  uint32_t cum = 0;
  uint32_t symbol = model.findSymbol(target, &cum);
  dec.consume(cum, model.freq(symbol));
  model.update(symbol);
  return symbol;
}

void encodeGamma(RangeEncoder& enc, AdaptiveModel& bitModel, uint64_t v)
{
  if (v == 0)
    throw std::invalid_argument("encodeGamma: value must be >= 1");
  int width = std::bit_width(v);
  for (int i = 0; i < width - 1; i++)
    encodeSymbol(enc, bitModel, 0);
  for (int i = width - 1; i >= 0; i--)
    encodeSymbol(enc, bitModel, static_cast<uint32_t>((v >> i) & 1));
}

uint64_t decodeGamma(RangeDecoder& dec, AdaptiveModel& bitModel)
{
  int zeros = 0;
  while (decodeSymbol(dec, bitModel) == 0) {
    if (++zeros > 63)
      throw DecodeError("decodeGamma: implausible length prefix");
  }
  uint64_t v = 1;
  for (int i = 0; i < zeros; i++)
    v = (v << 1) | decodeSymbol(dec, bitModel);
  return v;
}

std::vector<uint8_t> acEncode(std::span<const uint32_t> symbols, uint32_t alphabetSize)
{
  RangeEncoder enc;
  AdaptiveModel model(alphabetSize);
  for (uint32_t s : symbols)
    encodeSymbol(enc, model, s);
  return enc.finish();
}

std::vector<uint32_t> acDecode(
  std::span<const uint8_t> bytes, size_t symbolCount, uint32_t alphabetSize)
{
  RangeDecoder dec(bytes);
  AdaptiveModel model(alphabetSize);
  std::vector<uint32_t> symbols(symbolCount);
  for (size_t i = 0; i < symbolCount; i++)
    symbols[i] = decodeSymbol(dec, model);
  return symbols;
}

}  // namespace rpcgc
