#pragma once

// Dense univariate polynomials over a FieldCtx and distinct-root counting.

#include "mdl/ff.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mdl {

/// Coefficient i multiplies X^i. Trailing zeros are always trimmed, so the
/// zero polynomial is the empty sequence.
class Poly {
public:
  Poly() = default;
  explicit Poly(std::vector<Element> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  /// c * X^d.
  static Poly monomial(Element c, std::size_t d);

  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const Element> coeffs() const noexcept { return coeffs_; }
  Element operator[](std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : Element{}; }
  Element lead() const noexcept { return coeffs_.empty() ? Element{} : coeffs_.back(); }

  friend bool operator==(const Poly &, const Poly &) = default;

private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().code == 0)
      coeffs_.pop_back();
  }

  std::vector<Element> coeffs_;
};

/// Horner evaluation.
Element poly_eval(const FieldCtx &ctx, const Poly &f, Element x);

Poly poly_add(const FieldCtx &ctx, const Poly &f, const Poly &g);
Poly poly_sub(const FieldCtx &ctx, const Poly &f, const Poly &g);
Poly poly_mul(const FieldCtx &ctx, const Poly &f, const Poly &g);
Poly poly_scale(const FieldCtx &ctx, const Poly &f, Element c);
/// Remainder of f by g; throws ZeroModulus when g = 0.
Poly poly_mod(const FieldCtx &ctx, const Poly &f, const Poly &g);
Poly poly_monic(const FieldCtx &ctx, const Poly &f);

/// X^d + aX + b, d >= 2 (DegreeTooSmall otherwise).
Poly trinomial(const FieldCtx &ctx, unsigned d, Element a, Element b);
/// f_n = X^{n+1} - 2X + 1.
Poly theorem_polynomial(const FieldCtx &ctx, unsigned n);

/// Monic gcd by the Euclidean algorithm. Throws BothZero.
Poly poly_gcd(const FieldCtx &ctx, const Poly &f, const Poly &g);

/// base^e mod modulus by square-and-multiply. Throws ZeroModulus when the
/// modulus is zero or constant.
Poly poly_powmod(const FieldCtx &ctx, const Poly &base, std::uint64_t e, const Poly &modulus);

enum class RootMethod { BruteForce, Gcd, Both, Auto };

/// Auto resolves to Both up to this field order and to Gcd beyond it.
inline constexpr std::uint64_t kCrossCheckCap = 10'000;

struct RootCount {
  std::uint64_t distinct = 0;
  /// Ascending by code; present only when the field was enumerated.
  std::optional<std::vector<Element>> roots;
};

/// Number of distinct roots of f in the field. BruteForce evaluates at every
/// element; Gcd takes deg gcd(f, X^q - X); Both runs both and throws
/// VerificationFailed on disagreement. Throws ZeroPolynomial for f = 0 and
/// CapExceeded when enumeration is requested for q > 2^20.
RootCount distinct_root_count(const FieldCtx &ctx, const Poly &f, RootMethod method = RootMethod::Auto);

/// Distinct roots of X^{n+1} - 2X + 1 other than the ever-present root 1.
std::uint64_t count_R(const FieldCtx &ctx, unsigned n, RootMethod method = RootMethod::Auto);

std::string to_string(const Poly &f);
RootMethod parse_root_method(std::string_view text);

} // namespace mdl
