#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>

#include "ftc/errors.hpp"

namespace ftc {

/// Smallest k with 2^k >= x; ceil_log2(0) and ceil_log2(1) are 0.
constexpr unsigned ceil_log2(std::uint64_t x) noexcept {
  return x <= 1 ? 0u : static_cast<unsigned>(std::bit_width(x - 1));
}

constexpr std::size_t bytes_for_bits(unsigned bits) noexcept { return (bits + 7u) / 8u; }

/// Big-endian writer over an ostream.
class ByteWriter {
 public:
  explicit ByteWriter(std::ostream& out) : out_(out) {}

  void put_uint(std::uint64_t value, std::size_t bytes) {
    for (std::size_t i = bytes; i-- > 0;) {
      out_.put(static_cast<char>((value >> (8 * i)) & 0xffu));
    }
    written_ += bytes;
  }
  void put_u8(std::uint8_t v) { put_uint(v, 1); }
  void put_u16(std::uint16_t v) { put_uint(v, 2); }
  void put_u32(std::uint32_t v) { put_uint(v, 4); }
  void put_u64(std::uint64_t v) { put_uint(v, 8); }
  void put_bytes(const char* data, std::size_t n) {
    out_.write(data, static_cast<std::streamsize>(n));
    written_ += n;
  }

  std::size_t written() const noexcept { return written_; }

 private:
  std::ostream& out_;
  std::size_t written_ = 0;
};

/// Big-endian reader over an istream; throws parse_error on truncation.
class ByteReader {
 public:
  explicit ByteReader(std::istream& in) : in_(in) {}

  std::uint64_t get_uint(std::size_t bytes) {
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < bytes; ++i) {
      const int c = in_.get();
      if (c == std::char_traits<char>::eof()) {
        throw parse_error("unexpected end of label store");
      }
      value = (value << 8) | static_cast<std::uint8_t>(c);
    }
    return value;
  }
  std::uint8_t get_u8() { return static_cast<std::uint8_t>(get_uint(1)); }
  std::uint16_t get_u16() { return static_cast<std::uint16_t>(get_uint(2)); }
  std::uint32_t get_u32() { return static_cast<std::uint32_t>(get_uint(4)); }
  std::uint64_t get_u64() { return get_uint(8); }
  std::string get_bytes(std::size_t n) {
    std::string s(n, '\0');
    in_.read(s.data(), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) {
      throw parse_error("unexpected end of label store");
    }
    return s;
  }

 private:
  std::istream& in_;
};

}  // namespace ftc
