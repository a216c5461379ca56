#pragma once

// Finite fields GF(p) and GF(p^k) with a dense integer element encoding.
//
// An element of GF(p^k) is stored as a single code in [0, q). Its base-p
// digits (d_0, ..., d_{k-1}) are the coefficients of 1, t, ..., t^{k-1},
// where t is a root of the field modulus. Prime-field elements are therefore
// exactly the codes 0..p-1, and code 0 / code 1 are the two identities.

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace mdl {

inline constexpr unsigned kMaxExtensionDegree = 6;
/// Largest field order for which elements are enumerated or tabulated.
inline constexpr std::uint64_t kEnumerationCap = std::uint64_t{1} << 20;
/// Largest prime accepted for arithmetic-only prime fields.
inline constexpr std::uint64_t kMaxPrime = (std::uint64_t{1} << 31) - 1;

struct Element {
  std::uint32_t code = 0;

  friend constexpr auto operator<=>(Element, Element) = default;
};

/// Smallest nontrivial factor of n, or n itself when n is prime (n >= 2).
std::uint64_t smallest_factor(std::uint64_t n);
bool is_prime(std::uint64_t n);

class FieldCtx {
public:
  /// GF(p). Throws CompositeModulus (with a factor) or CapExceeded.
  static FieldCtx prime(std::uint64_t p);
  /// GF(p^k) reduced by the lexicographically smallest monic irreducible of
  /// degree k, compared coefficient-wise from the constant term up.
  static FieldCtx extension(std::uint64_t p, unsigned k);

  std::uint64_t p() const noexcept { return p_; }
  unsigned k() const noexcept { return k_; }
  std::uint64_t q() const noexcept { return q_; }
  bool is_prime_field() const noexcept { return k_ == 1; }
  /// Monic modulus coefficients, constant term first (length k + 1); empty for k = 1.
  std::span<const std::uint32_t> modulus() const noexcept { return modulus_; }

  Element zero() const noexcept { return Element{0}; }
  Element one() const noexcept { return Element{1}; }
  /// Validated element from a code; throws InvalidArgument when code >= q.
  Element element(std::uint64_t code) const;
  /// Image of an integer in the prime subfield (negative values allowed).
  Element from_int(std::int64_t value) const noexcept;
  bool valid(Element a) const noexcept { return a.code < q_; }

  Element add(Element a, Element b) const noexcept;
  Element sub(Element a, Element b) const noexcept;
  Element neg(Element a) const noexcept;
  Element mul(Element a, Element b) const noexcept;
  /// Throws ZeroInverse for a = 0.
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  /// Square-and-multiply; 0^0 = 1.
  Element pow(Element a, std::uint64_t e) const noexcept;

  std::vector<std::uint32_t> digits(Element a) const;
  Element from_digits(std::span<const std::uint32_t> digits) const;

  /// "GF(11)", "GF(3^2)".
  std::string name() const;

  friend bool operator==(const FieldCtx &a, const FieldCtx &b) noexcept {
    return a.p_ == b.p_ && a.k_ == b.k_;
  }

private:
  struct Tables {
    std::vector<std::uint32_t> exp; // exp[i] = g^i, i in [0, q-1)
    std::vector<std::uint32_t> log; // log[code], undefined at 0
  };

  FieldCtx() = default;

  std::uint64_t p_ = 0;
  unsigned k_ = 1;
  std::uint64_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> place_; // p^i for i in [0, k)
  std::shared_ptr<const Tables> tables_;
};

} // namespace mdl
