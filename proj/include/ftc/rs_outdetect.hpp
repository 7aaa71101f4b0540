#pragma once

// k-threshold outdetect codec. An edge with locator a contributes the row
// (a^0, a^1, ..., a^(2k-1)); a vertex label is the sum of the rows of its
// incident edges, so summing labels over a vertex set cancels the inner edges
// and leaves the power sums of the boundary locators. Those are decoded with
// Berlekamp-Massey plus trace-based root splitting.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ftc/bits.hpp"
#include "ftc/errors.hpp"
#include "ftc/gf2e.hpp"

namespace ftc {

/// Edge IDs built from the preorder starts of the two endpoints:
/// 2^(2q) | start_lo << q | start_hi, where start_lo < start_hi.
struct LocatorFormat {
  unsigned q = 0;
  /// Positions are < this bound; defaults to 2^q.
  std::uint64_t position_bound = 0;

  LocatorFormat() = default;
  explicit LocatorFormat(unsigned q_, std::uint64_t bound = 0)
      : q(q_), position_bound(bound == 0 ? (std::uint64_t{1} << q_) : bound) {}

  unsigned bits() const noexcept { return 2 * q + 1; }

  std::uint64_t encode(std::uint32_t a, std::uint32_t b) const {
    if (a == b) throw std::invalid_argument("edge endpoints must have distinct positions");
    if (a > b) std::swap(a, b);
    if (b >= position_bound) throw std::invalid_argument("position out of range for locator width");
    return (std::uint64_t{1} << (2 * q)) | (std::uint64_t{a} << q) | b;
  }

  /// The two positions (smaller first), or nullopt if `value` is not a well-formed locator.
  std::optional<std::pair<std::uint32_t, std::uint32_t>> decode(std::uint64_t value) const noexcept {
    if ((value >> (2 * q)) != 1) return std::nullopt;
    const std::uint64_t mask = (std::uint64_t{1} << q) - 1;
    const std::uint64_t a = (value >> q) & mask;
    const std::uint64_t b = value & mask;
    if (a >= b || b >= position_bound) return std::nullopt;
    return std::pair{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
  }
};

struct OutdetectSyndrome {
  std::uint32_t k = 0;
  /// 2k power sums: coords[j] = sum of a^j over the support.
  std::vector<FieldElement> coords;

  OutdetectSyndrome() = default;
  explicit OutdetectSyndrome(std::uint32_t k_) : k(k_), coords(2 * static_cast<std::size_t>(k_)) {}

  bool is_zero() const noexcept {
    return std::all_of(coords.begin(), coords.end(), [](FieldElement x) { return x.is_zero(); });
  }
  OutdetectSyndrome& operator+=(const OutdetectSyndrome& other) {
    if (other.k != k) throw std::invalid_argument("syndromes have different thresholds");
    for (std::size_t j = 0; j < coords.size(); ++j) coords[j] += other.coords[j];
    return *this;
  }
  friend bool operator==(const OutdetectSyndrome&, const OutdetectSyndrome&) = default;
};

/// Adds a^0..a^(len-1) into `out`.
inline void accumulate_powers(const FieldSpec& field, FieldElement a, std::span<FieldElement> out) {
  FieldElement p = FieldSpec::one();
  for (auto& x : out) {
    x += p;
    p = field.mul(p, a);
  }
}

inline std::vector<FieldElement> edge_row(const FieldSpec& field, FieldElement locator, std::uint32_t k) {
  if (locator.is_zero()) throw std::invalid_argument("edge locator must be nonzero");
  std::vector<FieldElement> row(2 * static_cast<std::size_t>(k));
  accumulate_powers(field, locator, row);
  return row;
}

struct LocatedEdge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  FieldElement locator;
};

/// Sum of the rows of the edges incident to `v`.
inline OutdetectSyndrome vertex_label(const FieldSpec& field, std::span<const LocatedEdge> edges, std::uint32_t v,
                                      std::uint32_t k) {
  OutdetectSyndrome s(k);
  for (const auto& e : edges) {
    if (e.u == v || e.v == v) accumulate_powers(field, e.locator, s.coords);
  }
  return s;
}

inline OutdetectSyndrome aggregate(std::span<const OutdetectSyndrome> syndromes) {
  if (syndromes.empty()) throw std::invalid_argument("aggregate of no syndromes");
  OutdetectSyndrome sum = syndromes.front();
  for (std::size_t i = 1; i < syndromes.size(); ++i) sum += syndromes[i];
  return sum;
}

inline OutdetectSyndrome prefix(const OutdetectSyndrome& s, std::uint32_t k) {
  if (k > s.k) throw std::invalid_argument("prefix longer than the syndrome");
  OutdetectSyndrome p(k);
  std::copy_n(s.coords.begin(), p.coords.size(), p.coords.begin());
  return p;
}

struct DecodeResult {
  enum class Kind { empty, edges, overflow };
  Kind kind = Kind::empty;
  /// Ascending; nonempty exactly when kind == edges.
  std::vector<FieldElement> locators;

  static DecodeResult overflow() { return {Kind::overflow, {}}; }
};

namespace detail {

// Polynomials over GF(2^w) as coefficient vectors, lowest degree first, with
// no trailing zeros (the zero polynomial is empty).
using Poly = std::vector<FieldElement>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

inline std::size_t deg(const Poly& a) { return a.empty() ? 0 : a.size() - 1; }

/// a mod m, with m monic.
inline void reduce_monic(const FieldSpec& field, Poly& a, const Poly& m) {
  const std::size_t d = m.size() - 1;
  for (std::size_t i = a.size(); i-- > d;) {
    const FieldElement c = a[i];
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < d; ++j) a[i - d + j] += field.mul(c, m[j]);
    a[i] = FieldSpec::zero();
  }
  trim(a);
}

/// a^2 mod m. Squaring is additive in characteristic two.
inline Poly square_mod(const FieldSpec& field, const Poly& a, const Poly& m) {
  Poly r(a.empty() ? 0 : 2 * a.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) r[2 * i] = field.square(a[i]);
  reduce_monic(field, r, m);
  return r;
}

inline Poly make_monic(const FieldSpec& field, Poly a) {
  if (a.empty()) return a;
  const FieldElement inv = field.inv(a.back());
  for (auto& c : a) c = field.mul(c, inv);
  return a;
}

/// Monic gcd.
inline Poly gcd(const FieldSpec& field, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    b = make_monic(field, std::move(b));
    reduce_monic(field, a, b);
    std::swap(a, b);
  }
  return make_monic(field, std::move(a));
}

/// a / b for monic b dividing a.
inline Poly divide_exact(const FieldSpec& field, Poly a, const Poly& b) {
  const std::size_t db = b.size() - 1;
  Poly q(a.size() - db);
  for (std::size_t i = a.size(); i-- > db;) {
    const FieldElement c = a[i];
    q[i - db] = c;
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] += field.mul(c, b[j]);
  }
  trim(q);
  return q;
}

/// Connection polynomial C (C[0] = 1) of the shortest LFSR generating s.
inline Poly berlekamp_massey(const FieldSpec& field, std::span<const FieldElement> s) {
  Poly c{FieldSpec::one()};
  Poly b{FieldSpec::one()};
  std::size_t len = 0;
  std::size_t shift = 1;
  FieldElement last = FieldSpec::one();
  for (std::size_t n = 0; n < s.size(); ++n) {
    FieldElement d = s[n];
    for (std::size_t i = 1; i <= len && i < c.size(); ++i) d += field.mul(c[i], s[n - i]);
    if (d.is_zero()) {
      ++shift;
      continue;
    }
    const FieldElement coef = field.mul(d, field.inv(last));
    Poly next = c;
    if (next.size() < b.size() + shift) next.resize(b.size() + shift);
    for (std::size_t i = 0; i < b.size(); ++i) next[i + shift] += field.mul(coef, b[i]);
    if (2 * len <= n) {
      b = std::move(c);
      len = n + 1 - len;
      last = d;
      shift = 1;
    } else {
      ++shift;
    }
    c = std::move(next);
  }
  c.resize(len + 1);
  return c;
}

/// x^(2^i) mod p for i = 0..w; the last entry closes the Frobenius cycle.
inline std::vector<Poly> frobenius_table(const FieldSpec& field, const Poly& p) {
  std::vector<Poly> table;
  table.reserve(field.width() + 1);
  Poly x{FieldSpec::zero(), FieldSpec::one()};
  reduce_monic(field, x, p);
  table.push_back(std::move(x));
  for (unsigned i = 0; i < field.width(); ++i) table.push_back(square_mod(field, table.back(), p));
  return table;
}

/// Tr(theta·x) mod p as a combination of the Frobenius table.
inline Poly trace_poly(const FieldSpec& field, const std::vector<Poly>& frob, FieldElement theta) {
  Poly tr;
  for (unsigned i = 0; i < field.width(); ++i) {
    if (tr.size() < frob[i].size()) tr.resize(frob[i].size());
    for (std::size_t j = 0; j < frob[i].size(); ++j) tr[j] += field.mul(theta, frob[i][j]);
    theta = field.square(theta);
  }
  trim(tr);
  return tr;
}

/// Roots of a monic factor p of a squarefree split polynomial P. Splits with
/// gcd(p, Tr(theta x)) for basis elements theta = x^b, b >= basis; traces[b]
/// holds Tr(x^b·x) mod P and is reduced mod p here.
inline void split_roots(const FieldSpec& field, const Poly& p, const std::vector<Poly>& traces, unsigned basis,
                        std::vector<FieldElement>& roots) {
  if (p.size() == 2) {
    roots.push_back(p[0]);
    return;
  }
  for (unsigned b = basis; b < field.width(); ++b) {
    Poly tr = traces[b];
    reduce_monic(field, tr, p);
    Poly g = gcd(field, p, std::move(tr));
    if (g.size() > 1 && g.size() < p.size()) {
      Poly h = divide_exact(field, p, g);
      split_roots(field, g, traces, b + 1, roots);
      split_roots(field, h, traces, b + 1, roots);
      return;
    }
  }
  throw invariant_error("trace splitting failed on a squarefree split polynomial");
}

}  // namespace detail

/// Decodes 2k' power sums (coords[0..2k'-1]) into their support.
inline DecodeResult decode_power_sums(const FieldSpec& field, std::span<const FieldElement> coords,
                                      const LocatorFormat* format = nullptr) {
  using Kind = DecodeResult::Kind;
  if (coords.size() % 2 != 0) throw std::invalid_argument("power sum count must be even");
  if (std::all_of(coords.begin(), coords.end(), [](FieldElement x) { return x.is_zero(); })) return {};
  const std::size_t kk = coords.size() / 2;

  // S_1 .. S_2k'; S_2k' = S_k'^2 since every multiplicity is 0 or 1.
  std::vector<FieldElement> s(coords.begin() + 1, coords.end());
  s.push_back(field.square(coords[kk]));
  const detail::Poly c = detail::berlekamp_massey(field, s);
  const std::size_t len = c.size() - 1;
  if (len == 0 || len > kk || c[len].is_zero()) return DecodeResult::overflow();

  // Reversed connection polynomial: prod (x - a) over the support.
  detail::Poly p(c.rbegin(), c.rend());

  // p must divide x^(2^w) - x: all roots distinct and in the field.
  const auto frob = detail::frobenius_table(field, p);
  if (frob.back() != frob.front()) return DecodeResult::overflow();

  std::vector<detail::Poly> traces;
  traces.reserve(field.width());
  for (unsigned b = 0; b < field.width(); ++b) {
    traces.push_back(detail::trace_poly(field, frob, FieldElement{std::uint64_t{1} << b}));
  }
  std::vector<FieldElement> roots;
  roots.reserve(len);
  detail::split_roots(field, p, traces, 0, roots);
  std::sort(roots.begin(), roots.end());

  std::vector<FieldElement> check(coords.size());
  for (const auto a : roots) {
    if (a.is_zero()) return DecodeResult::overflow();
    if (format != nullptr && !format->decode(a.value)) return DecodeResult::overflow();
    accumulate_powers(field, a, check);
  }
  if (!std::equal(check.begin(), check.end(), coords.begin())) return DecodeResult::overflow();
  return {Kind::edges, std::move(roots)};
}

/// Decodes the first 2k' coordinates of `s`.
inline DecodeResult syndrome_decode(const FieldSpec& field, const OutdetectSyndrome& s, std::uint32_t k_prime,
                                    const LocatorFormat* format = nullptr) {
  if (k_prime > s.k) throw std::invalid_argument("decode budget exceeds the syndrome threshold");
  return decode_power_sums(field, std::span(s.coords).first(2 * static_cast<std::size_t>(k_prime)), format);
}

inline void write_syndrome(ByteWriter& out, const FieldSpec& field, const OutdetectSyndrome& s) {
  out.put_u32(s.k);
  for (const auto x : s.coords) write_element(out, field, x);
}

inline OutdetectSyndrome read_syndrome(ByteReader& in, const FieldSpec& field) {
  OutdetectSyndrome s(in.get_u32());
  for (auto& x : s.coords) x = read_element(in, field);
  return s;
}

}  // namespace ftc
