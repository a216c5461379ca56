#pragma once

// Independent reference computations used to freeze expected values. Nothing
// here calls the arithmetic under test beyond reading a field's parameters.

#include "mdl/ff.hpp"

#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using Digits = std::vector<std::uint32_t>;

/// GF(p^k) by schoolbook polynomial arithmetic on digit vectors.
struct NaiveField {
  std::uint64_t p;
  unsigned k;
  Digits modulus; // monic, constant first; empty when k == 1

  explicit NaiveField(const mdl::FieldCtx &ctx)
      : p(ctx.p()), k(ctx.k()), modulus(ctx.modulus().begin(), ctx.modulus().end()) {}
  NaiveField(std::uint64_t p_, unsigned k_, Digits modulus_) : p(p_), k(k_), modulus(std::move(modulus_)) {}

  std::uint64_t q() const {
    std::uint64_t out = 1;
    for (unsigned i = 0; i < k; ++i)
      out *= p;
    return out;
  }

  Digits unpack(std::uint64_t code) const {
    Digits d(k);
    for (unsigned i = 0; i < k; ++i) {
      d[i] = static_cast<std::uint32_t>(code % p);
      code /= p;
    }
    return d;
  }

  std::uint64_t pack(const Digits &d) const {
    std::uint64_t code = 0;
    for (std::size_t i = d.size(); i-- > 0;)
      code = code * p + d[i];
    return code;
  }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    Digits x = unpack(a), y = unpack(b);
    for (unsigned i = 0; i < k; ++i)
      x[i] = static_cast<std::uint32_t>((x[i] + y[i]) % p);
    return pack(x);
  }

  std::uint64_t neg(std::uint64_t a) const {
    Digits x = unpack(a);
    for (auto &d : x)
      d = static_cast<std::uint32_t>((p - d) % p);
    return pack(x);
  }

  // Long multiplication followed by reduction with the monic modulus.
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    if (k == 1)
      return a * b % p;
    Digits x = unpack(a), y = unpack(b);
    Digits prod(2 * k - 1, 0);
    for (unsigned i = 0; i < k; ++i)
      for (unsigned j = 0; j < k; ++j)
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{x[i]} * y[j]) % p);
    for (std::size_t top = prod.size(); top-- > k;) {
      const std::uint64_t c = prod[top];
      if (c == 0)
        continue;
      for (unsigned i = 0; i <= k; ++i)
        prod[top - k + i] = static_cast<std::uint32_t>((prod[top - k + i] + (p - c) * modulus[i]) % p);
    }
    prod.resize(k);
    return pack(prod);
  }

  // Repeated multiplication, no squaring.
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t out = 1;
    for (std::uint64_t i = 0; i < e; ++i)
      out = mul(out, a);
    return out;
  }

  /// Coefficients constant-first; evaluates sum c_i x^i term by term.
  std::uint64_t eval(const std::vector<std::uint64_t> &coeffs, std::uint64_t x) const {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      acc = add(acc, mul(coeffs[i], pow(x, i)));
    return acc;
  }

  std::set<std::uint64_t> roots(const std::vector<std::uint64_t> &coeffs) const {
    std::set<std::uint64_t> out;
    for (std::uint64_t x = 0; x < q(); ++x)
      if (eval(coeffs, x) == 0)
        out.insert(x);
    return out;
  }

  /// Defining equation of D(q;m,n), evaluated from scratch.
  bool arc(unsigned m, unsigned n, std::uint64_t x1, std::uint64_t x2, std::uint64_t y1, std::uint64_t y2) const {
    return add(x2, y2) == mul(pow(x1, m), pow(y1, n));
  }
};

/// Trinomial coefficients X^d + aX + b, constant first.
inline std::vector<std::uint64_t> trinomial(unsigned d, std::uint64_t a, std::uint64_t b) {
  std::vector<std::uint64_t> c(d + 1, 0);
  c[0] = b;
  c[1] += a;
  c[d] += 1;
  return c;
}

/// Number of ordered pairs of distinct looped vertices joined by an arc,
/// scanning all q^4 pairs with the defining equation.
inline std::uint64_t count_K_bruteforce(const NaiveField &f, unsigned m, unsigned n) {
  const std::uint64_t q = f.q();
  std::uint64_t count = 0;
  for (std::uint64_t u1 = 0; u1 < q; ++u1)
    for (std::uint64_t u2 = 0; u2 < q; ++u2) {
      if (!f.arc(m, n, u1, u2, u1, u2))
        continue;
      for (std::uint64_t v1 = 0; v1 < q; ++v1)
        for (std::uint64_t v2 = 0; v2 < q; ++v2)
          if ((u1 != v1 || u2 != v2) && f.arc(m, n, v1, v2, v1, v2) && f.arc(m, n, u1, u2, v1, v2))
            ++count;
    }
  return count;
}

/// Units k mod (q-1) for which (km, kn) = (m2, n2) after mapping into [1, q-1].
inline std::set<std::pair<unsigned, unsigned>> orbit_by_enumeration(std::uint64_t q, unsigned m, unsigned n) {
  std::set<std::pair<unsigned, unsigned>> out;
  const std::uint64_t r = q - 1;
  for (std::uint64_t k = 1; k <= r; ++k) {
    if (std::gcd(k, r) != 1)
      continue;
    for (unsigned m2 = 1; m2 <= r; ++m2)
      for (unsigned n2 = 1; n2 <= r; ++n2)
        if ((k * m) % r == m2 % r && (k * n) % r == n2 % r)
          out.emplace(m2, n2);
  }
  return out;
}

} // namespace oracle
