#pragma once

// Arithmetic in GF(2^w), 1 <= w <= 64, with elements held in one machine word.

#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#include <immintrin.h>
#define FTC_PCLMUL_DISPATCH 1
#endif

#include "ftc/bits.hpp"
#include "ftc/errors.hpp"

namespace ftc {

struct FieldElement {
  std::uint64_t value = 0;

  constexpr bool is_zero() const noexcept { return value == 0; }
  friend constexpr bool operator==(FieldElement, FieldElement) = default;
  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

/// Field addition (bitwise XOR); characteristic two, so it is also subtraction.
constexpr FieldElement operator+(FieldElement a, FieldElement b) noexcept { return {a.value ^ b.value}; }
constexpr FieldElement& operator+=(FieldElement& a, FieldElement b) noexcept {
  a.value ^= b.value;
  return a;
}
constexpr FieldElement add(FieldElement a, FieldElement b) noexcept { return a + b; }

namespace detail {

__extension__ typedef unsigned __int128 u128;

constexpr u128 clmul(std::uint64_t a, std::uint64_t b) noexcept {
  u128 product = 0;
  const u128 wide = a;
  while (b != 0) {
    const int i = std::countr_zero(b);
    product ^= wide << i;
    b &= b - 1;
  }
  return product;
}

/// Reduces a polynomial of degree < 2w modulo x^w + low.
constexpr std::uint64_t reduce(u128 p, unsigned w, std::uint64_t low) noexcept {
  const u128 mask = (u128{1} << w) - 1;
  // Fold the high part: x^w == low. Each fold lowers the degree by w - deg(low) > 0.
  while ((p >> w) != 0) {
    p = (p & mask) ^ clmul(static_cast<std::uint64_t>(p >> w), low);
  }
  return static_cast<std::uint64_t>(p);
}

#ifdef FTC_PCLMUL_DISPATCH
__attribute__((target("pclmul,sse2"))) inline u128 clmul_hw(std::uint64_t a, std::uint64_t b) noexcept {
  const __m128i r = _mm_clmulepi64_si128(_mm_cvtsi64_si128(static_cast<long long>(a)),
                                         _mm_cvtsi64_si128(static_cast<long long>(b)), 0);
  const auto lo = static_cast<std::uint64_t>(_mm_cvtsi128_si64(r));
  const auto hi = static_cast<std::uint64_t>(_mm_cvtsi128_si64(_mm_unpackhi_epi64(r, r)));
  return (u128{hi} << 64) | lo;
}

inline bool has_pclmul() noexcept {
  static const bool supported = __builtin_cpu_supports("pclmul");
  return supported;
}
#endif

/// Carry-less product, using the CPU instruction when available.
inline u128 clmul_fast(std::uint64_t a, std::uint64_t b) noexcept {
#ifdef FTC_PCLMUL_DISPATCH
  if (has_pclmul()) return clmul_hw(a, b);
#endif
  return clmul(a, b);
}

/// reduce() with the fast carry-less product.
inline std::uint64_t reduce_fast(u128 p, unsigned w, std::uint64_t low) noexcept {
  const u128 mask = (u128{1} << w) - 1;
  while ((p >> w) != 0) p = (p & mask) ^ clmul_fast(static_cast<std::uint64_t>(p >> w), low);
  return static_cast<std::uint64_t>(p);
}

constexpr unsigned degree(u128 p) noexcept {
  const auto hi = static_cast<std::uint64_t>(p >> 64);
  const auto lo = static_cast<std::uint64_t>(p);
  if (hi != 0) return 127u - static_cast<unsigned>(std::countl_zero(hi));
  return lo == 0 ? 0u : 63u - static_cast<unsigned>(std::countl_zero(lo));
}

/// gcd over GF(2)[x] of polynomials packed into 128-bit words.
constexpr u128 gf2_gcd(u128 a, u128 b) noexcept {
  while (b != 0) {
    while (a != 0 && degree(a) >= degree(b)) a ^= b << (degree(a) - degree(b));
    const u128 t = a;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace detail

/// Rabin's test for x^w + low over GF(2).
constexpr bool is_irreducible(unsigned w, std::uint64_t low) noexcept {
  if (w == 0 || w > 64) return false;
  if (w < 64 && (low >> w) != 0) return false;
  if ((low & 1u) == 0) return false;  // divisible by x
  // x^(2^k) mod f by repeated squaring.
  auto x_pow2 = [&](unsigned k) {
    std::uint64_t x = w == 1 ? low : 2;
    for (unsigned i = 0; i < k; ++i) x = detail::reduce(detail::clmul(x, x), w, low);
    return x;
  };
  const std::uint64_t x_mod = w == 1 ? low : 2;
  if (x_pow2(w) != x_mod) return false;
  const detail::u128 f = (detail::u128{1} << w) | low;
  for (unsigned p = 2; p <= w; ++p) {
    if (w % p != 0) continue;
    bool prime = true;
    for (unsigned d = 2; d * d <= p; ++d) prime = prime && (p % d != 0);
    if (!prime) continue;
    const detail::u128 g = detail::gf2_gcd(f, detail::u128{x_pow2(w / p) ^ x_mod});
    if (g != 1) return false;
  }
  return true;
}

/// GF(2^w) = GF(2)[x] / (x^w + modulus_low).
class FieldSpec {
 public:
  struct TableEntry {
    unsigned width;
    std::uint64_t modulus_low;
  };

  /// One irreducible polynomial per supported label width.
  static constexpr std::array<TableEntry, 8> table() noexcept {
    return {{{8, 0x1b}, {16, 0x2b}, {24, 0x1b}, {32, 0x8d}, {40, 0x39}, {48, 0x2d}, {56, 0x95}, {64, 0x1b}}};
  }

  FieldSpec(unsigned width, std::uint64_t modulus_low) : w_(width), low_(modulus_low) {
    if (width == 0 || width > 64) throw config_error("field width must be in [1, 64]");
    if (!is_irreducible(width, modulus_low)) {
      throw config_error("x^" + std::to_string(width) + " + 0x" + to_hex(modulus_low) + " is not irreducible");
    }
  }

  /// Smallest table field whose elements hold `bits` bits.
  static FieldSpec for_bits(unsigned bits) {
    for (const auto& entry : table()) {
      if (entry.width >= bits) return FieldSpec(entry.width, entry.modulus_low);
    }
    throw config_error("no field wide enough for " + std::to_string(bits) + "-bit locators");
  }

  unsigned width() const noexcept { return w_; }
  std::uint64_t modulus_low() const noexcept { return low_; }
  std::size_t byte_width() const noexcept { return bytes_for_bits(w_); }
  bool contains(FieldElement a) const noexcept { return w_ == 64 || (a.value >> w_) == 0; }

  static constexpr FieldElement zero() noexcept { return {0}; }
  static constexpr FieldElement one() noexcept { return {1}; }

  FieldElement add(FieldElement a, FieldElement b) const noexcept { return a + b; }
  FieldElement mul(FieldElement a, FieldElement b) const noexcept {
    return {detail::reduce_fast(detail::clmul_fast(a.value, b.value), w_, low_)};
  }
  FieldElement square(FieldElement a) const noexcept { return mul(a, a); }

  FieldElement pow(FieldElement a, std::uint64_t e) const noexcept {
    FieldElement result = one();
    while (e != 0) {
      if (e & 1u) result = mul(result, a);
      a = square(a);
      e >>= 1;
    }
    return result;
  }

  /// a^(2^w - 2); throws std::domain_error for zero.
  FieldElement inv(FieldElement a) const {
    if (a.is_zero()) throw std::domain_error("inverse of zero in GF(2^w)");
    // a^(2^w-2) = prod_{i=1}^{w-1} a^(2^i)
    FieldElement result = one();
    FieldElement p = a;
    for (unsigned i = 1; i < w_; ++i) {
      p = square(p);
      result = mul(result, p);
    }
    return result;
  }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  static std::string to_hex(std::uint64_t v) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string s;
    do {
      s.insert(s.begin(), digits[v & 0xf]);
      v >>= 4;
    } while (v != 0);
    return s;
  }

  unsigned w_;
  std::uint64_t low_;
};

/// Big-endian, padded to whole bytes.
inline void write_element(ByteWriter& out, const FieldSpec& field, FieldElement a) {
  out.put_uint(a.value, field.byte_width());
}

inline FieldElement read_element(ByteReader& in, const FieldSpec& field) {
  const FieldElement a{in.get_uint(field.byte_width())};
  if (!field.contains(a)) throw parse_error("field element wider than the field");
  return a;
}

}  // namespace ftc
