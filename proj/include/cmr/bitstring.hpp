#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cmr {

// Packed bit string. Bit i lives in byte i/8 at position i%8 (LSB first).
// Trailing bits of the last byte are kept zero so byte-wise compare works.
class BitString {
public:
  BitString() = default;
  static BitString zeros(size_t bits);
  // Low `bits` of `value`, bit 0 first. Values wider than 64 bits get zero-extended.
  static BitString from_uint(uint64_t value, size_t bits);
  // `bits` pseudorandom bits from a splitmix64 stream seeded with `seed`.
  static BitString keyed_random(uint64_t seed, size_t bits);

  size_t size_bits() const { return bits_; }
  bool empty() const { return bits_ == 0; }
  std::span<const uint8_t> bytes() const { return {data_.data(), data_.size()}; }

  bool bit(size_t i) const { return (data_[i >> 3] >> (i & 7)) & 1u; }
  void set_bit(size_t i, bool v);

  // Interprets the first min(64, size) bits as a little-endian integer.
  uint64_t to_uint() const;

  void append(const BitString& other) { append_bits(other.data_.data(), other.bits_); }
  void append_bits(const uint8_t* src, size_t bits);

  BitString slice(size_t begin, size_t len) const;

  // XOR with zero-padding to the longer operand.
  BitString xor_padded(const BitString& other) const;
  // XOR `other` into this, zero-extending this if needed.
  void xor_in(const BitString& other);

  bool operator==(const BitString& other) const {
    return bits_ == other.bits_ && data_ == other.data_;
  }

  std::string to_hex() const;

private:
  std::vector<uint8_t> data_;
  size_t bits_ = 0;
};

}  // namespace cmr
