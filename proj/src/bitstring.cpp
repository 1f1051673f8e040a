#include "cmr/bitstring.hpp"

#include <cassert>
#include <cstring>

#include "cmr/rng.hpp"

namespace cmr {

namespace {
size_t byte_count(size_t bits) { return (bits + 7) / 8; }
}  // namespace

BitString BitString::zeros(size_t bits) {
  BitString s;
  s.bits_ = bits;
  s.data_.assign(byte_count(bits), 0);
  return s;
}

BitString BitString::from_uint(uint64_t value, size_t bits) {
  BitString s = zeros(bits);
  size_t n = bits < 64 ? bits : 64;
  for (size_t i = 0; i < n; i++) {
    if ((value >> i) & 1u) s.data_[i >> 3] |= uint8_t(1u << (i & 7));
  }
  return s;
}

BitString BitString::keyed_random(uint64_t seed, size_t bits) {
  BitString s = zeros(bits);
  SplitMix64 rng(seed);
  size_t full = bits / 8;
  size_t i = 0;
  while (i + 8 <= full) {
    uint64_t w = rng.next();
    std::memcpy(&s.data_[i], &w, 8);
    i += 8;
  }
  if (i < byte_count(bits)) {
    uint64_t w = rng.next();
    for (; i < byte_count(bits); i++) {
      s.data_[i] = uint8_t(w & 0xff);
      w >>= 8;
    }
  }
  size_t tail = bits & 7;
  if (tail != 0) s.data_.back() &= uint8_t((1u << tail) - 1);
  return s;
}

void BitString::set_bit(size_t i, bool v) {
  uint8_t mask = uint8_t(1u << (i & 7));
  if (v)
    data_[i >> 3] |= mask;
  else
    data_[i >> 3] &= uint8_t(~mask);
}

uint64_t BitString::to_uint() const {
  uint64_t v = 0;
  size_t n = bits_ < 64 ? bits_ : 64;
  for (size_t i = 0; i < n; i++) {
    if (bit(i)) v |= (uint64_t(1) << i);
  }
  return v;
}

void BitString::append_bits(const uint8_t* src, size_t bits) {
  if (bits == 0) return;
  size_t old_bits = bits_;
  bits_ += bits;
  data_.resize(byte_count(bits_), 0);
  if ((old_bits & 7) == 0) {
    // byte aligned: straight copy, then clear the stray tail bits of the last byte
    std::memcpy(&data_[old_bits >> 3], src, byte_count(bits));
    size_t tail = bits_ & 7;
    if (tail != 0) data_.back() &= uint8_t((1u << tail) - 1);
    return;
  }
  for (size_t i = 0; i < bits; i++) {
    if ((src[i >> 3] >> (i & 7)) & 1u) {
      size_t j = old_bits + i;
      data_[j >> 3] |= uint8_t(1u << (j & 7));
    }
  }
}

BitString BitString::slice(size_t begin, size_t len) const {
  assert(begin + len <= bits_);
  BitString out = zeros(len);
  if (len == 0) return out;
  if ((begin & 7) == 0) {
    std::memcpy(out.data_.data(), &data_[begin >> 3], byte_count(len));
    size_t tail = len & 7;
    if (tail != 0) out.data_.back() &= uint8_t((1u << tail) - 1);
    return out;
  }
  for (size_t i = 0; i < len; i++) {
    if (bit(begin + i)) out.data_[i >> 3] |= uint8_t(1u << (i & 7));
  }
  return out;
}

BitString BitString::xor_padded(const BitString& other) const {
  const BitString& longer = bits_ >= other.bits_ ? *this : other;
  const BitString& shorter = bits_ >= other.bits_ ? other : *this;
  BitString out = longer;
  for (size_t i = 0; i < shorter.data_.size(); i++) out.data_[i] ^= shorter.data_[i];
  return out;
}

void BitString::xor_in(const BitString& other) {
  if (other.bits_ > bits_) {
    bits_ = other.bits_;
    data_.resize(byte_count(bits_), 0);
  }
  for (size_t i = 0; i < other.data_.size(); i++) data_[i] ^= other.data_[i];
}

std::string BitString::to_hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(data_.size() * 2);
  for (uint8_t b : data_) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xf]);
  }
  return out;
}

}  // namespace cmr
