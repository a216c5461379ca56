#include "mdl/poly.hpp"

#include "mdl/error.hpp"

#include <algorithm>

namespace mdl {

Poly Poly::monomial(Element c, std::size_t d) {
  std::vector<Element> coeffs(d + 1);
  coeffs[d] = c;
  return Poly(std::move(coeffs));
}

Element poly_eval(const FieldCtx &ctx, const Poly &f, Element x) {
  Element acc = ctx.zero();
  const auto coeffs = f.coeffs();
  for (std::size_t i = coeffs.size(); i-- > 0;)
    acc = ctx.add(ctx.mul(acc, x), coeffs[i]);
  return acc;
}

Poly poly_add(const FieldCtx &ctx, const Poly &f, const Poly &g) {
  std::vector<Element> out(std::max(f.coeffs().size(), g.coeffs().size()));
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = ctx.add(f[i], g[i]);
  return Poly(std::move(out));
}

Poly poly_sub(const FieldCtx &ctx, const Poly &f, const Poly &g) {
  std::vector<Element> out(std::max(f.coeffs().size(), g.coeffs().size()));
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = ctx.sub(f[i], g[i]);
  return Poly(std::move(out));
}

Poly poly_mul(const FieldCtx &ctx, const Poly &f, const Poly &g) {
  if (f.is_zero() || g.is_zero())
    return {};
  const auto a = f.coeffs();
  const auto b = g.coeffs();
  std::vector<Element> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].code == 0)
      continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = ctx.add(out[i + j], ctx.mul(a[i], b[j]));
  }
  return Poly(std::move(out));
}

Poly poly_scale(const FieldCtx &ctx, const Poly &f, Element c) {
  std::vector<Element> out(f.coeffs().begin(), f.coeffs().end());
  for (auto &x : out)
    x = ctx.mul(x, c);
  return Poly(std::move(out));
}

Poly poly_mod(const FieldCtx &ctx, const Poly &f, const Poly &g) {
  if (g.is_zero())
    throw Error(ErrorKind::ZeroModulus, "division by the zero polynomial");
  const std::size_t dg = static_cast<std::size_t>(g.degree());
  if (f.degree() < g.degree())
    return f;
  const Element lead_inv = ctx.inv(g.lead());
  // Only the nonzero lower terms of g participate; trinomial moduli reduce in
  // O(1) work per eliminated coefficient.
  std::vector<std::pair<std::size_t, Element>> terms;
  for (std::size_t i = 0; i < dg; ++i)
    if (g[i].code != 0)
      terms.emplace_back(i, g[i]);

  std::vector<Element> r(f.coeffs().begin(), f.coeffs().end());
  for (std::size_t top = r.size(); top-- > dg;) {
    const Element c = ctx.mul(r[top], lead_inv);
    if (c.code == 0)
      continue;
    const std::size_t shift = top - dg;
    for (const auto &[i, gi] : terms)
      r[shift + i] = ctx.sub(r[shift + i], ctx.mul(c, gi));
    r[top] = ctx.zero();
  }
  r.resize(dg);
  return Poly(std::move(r));
}

Poly poly_monic(const FieldCtx &ctx, const Poly &f) {
  if (f.is_zero())
    return f;
  return poly_scale(ctx, f, ctx.inv(f.lead()));
}

Poly trinomial(const FieldCtx &ctx, unsigned d, Element a, Element b) {
  if (d < 2)
    throw Error(ErrorKind::DegreeTooSmall, "trinomial degree must be at least 2, got " + std::to_string(d));
  std::vector<Element> coeffs(d + 1);
  coeffs[0] = b;
  coeffs[1] = a;
  coeffs[d] = ctx.one();
  return Poly(std::move(coeffs));
}

Poly theorem_polynomial(const FieldCtx &ctx, unsigned n) {
  if (n < 1)
    throw Error(ErrorKind::InvalidExponent, "n must be at least 1");
  return trinomial(ctx, n + 1, ctx.from_int(-2), ctx.one());
}

Poly poly_gcd(const FieldCtx &ctx, const Poly &f, const Poly &g) {
  if (f.is_zero() && g.is_zero())
    throw Error(ErrorKind::BothZero, "gcd of two zero polynomials");
  Poly a = f, b = g;
  while (!b.is_zero()) {
    Poly r = poly_mod(ctx, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(ctx, a);
}

Poly poly_powmod(const FieldCtx &ctx, const Poly &base, std::uint64_t e, const Poly &modulus) {
  if (modulus.degree() < 1)
    throw Error(ErrorKind::ZeroModulus, "modulus must have degree at least 1");
  Poly result = poly_mod(ctx, Poly({ctx.one()}), modulus);
  Poly b = poly_mod(ctx, base, modulus);
  while (e) {
    if (e & 1)
      result = poly_mod(ctx, poly_mul(ctx, result, b), modulus);
    e >>= 1;
    if (e)
      b = poly_mod(ctx, poly_mul(ctx, b, b), modulus);
  }
  return result;
}

namespace {

RootCount count_by_enumeration(const FieldCtx &ctx, const Poly &f) {
  if (ctx.q() > kEnumerationCap)
    throw Error(ErrorKind::CapExceeded,
                "brute-force root enumeration over " + ctx.name() + " exceeds the 2^20 cap");
  std::vector<Element> roots;
  for (std::uint64_t c = 0; c < ctx.q(); ++c) {
    const Element x{static_cast<std::uint32_t>(c)};
    if (poly_eval(ctx, f, x).code == 0)
      roots.push_back(x);
  }
  return RootCount{roots.size(), std::move(roots)};
}

std::uint64_t count_by_gcd(const FieldCtx &ctx, const Poly &f) {
  if (f.degree() < 1)
    return 0;
  const Poly x = Poly::monomial(ctx.one(), 1);
  const Poly xq = poly_powmod(ctx, x, ctx.q(), f);
  const Poly g = poly_gcd(ctx, f, poly_sub(ctx, xq, x));
  return static_cast<std::uint64_t>(g.degree());
}

} // namespace

RootCount distinct_root_count(const FieldCtx &ctx, const Poly &f, RootMethod method) {
  if (f.is_zero())
    throw Error(ErrorKind::ZeroPolynomial, "the zero polynomial vanishes everywhere");
  if (method == RootMethod::Auto)
    method = ctx.q() <= kCrossCheckCap ? RootMethod::Both : RootMethod::Gcd;
  switch (method) {
  case RootMethod::BruteForce:
    return count_by_enumeration(ctx, f);
  case RootMethod::Gcd:
    return RootCount{count_by_gcd(ctx, f), std::nullopt};
  default:
    break;
  }
  RootCount brute = count_by_enumeration(ctx, f);
  const std::uint64_t by_gcd = count_by_gcd(ctx, f);
  if (by_gcd != brute.distinct)
    throw Error(ErrorKind::VerificationFailed,
                "root count mismatch for " + to_string(f) + " over " + ctx.name() + ": enumeration " +
                    std::to_string(brute.distinct) + ", gcd " + std::to_string(by_gcd));
  return brute;
}

std::uint64_t count_R(const FieldCtx &ctx, unsigned n, RootMethod method) {
  return distinct_root_count(ctx, theorem_polynomial(ctx, n), method).distinct - 1;
}

std::string to_string(const Poly &f) {
  if (f.is_zero())
    return "0";
  std::string out;
  const auto c = f.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i].code == 0)
      continue;
    if (!out.empty())
      out += " + ";
    const bool unit = c[i].code == 1 && i > 0;
    if (!unit)
      out += std::to_string(c[i].code);
    if (i > 0) {
      if (!unit)
        out += "*";
      out += "X";
      if (i > 1)
        out += "^" + std::to_string(i);
    }
  }
  return out;
}

RootMethod parse_root_method(std::string_view text) {
  if (text == "bruteforce")
    return RootMethod::BruteForce;
  if (text == "gcd")
    return RootMethod::Gcd;
  if (text == "both")
    return RootMethod::Both;
  if (text == "auto")
    return RootMethod::Auto;
  throw Error(ErrorKind::InvalidArgument, "unknown root method '" + std::string(text) + "'");
}

} // namespace mdl
