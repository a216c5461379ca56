#include "mdl/ff.hpp"

#include "mdl/error.hpp"

#include <algorithm>

namespace mdl {

namespace {

using Coeffs = std::vector<std::uint32_t>;

void trim(Coeffs &f) {
  while (!f.empty() && f.back() == 0)
    f.pop_back();
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  // a^(p-2) mod p
  std::uint64_t result = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1)
      result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

// Remainder of f modulo a monic g, coefficients in GF(p).
Coeffs rem_monic(Coeffs f, const Coeffs &g, std::uint64_t p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  while (f.size() > dg) {
    const std::uint64_t lead = f.back();
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i < dg; ++i)
      f[shift + i] = static_cast<std::uint32_t>((f[shift + i] + (p - lead) * g[i]) % p);
    f.pop_back();
    trim(f);
  }
  return f;
}

bool is_irreducible(const Coeffs &f, std::uint64_t p) {
  const unsigned k = static_cast<unsigned>(f.size() - 1);
  for (unsigned d = 1; d <= k / 2; ++d) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < d; ++i)
      count *= p;
    for (std::uint64_t c = 0; c < count; ++c) {
      Coeffs g(d + 1);
      std::uint64_t rest = c;
      for (unsigned i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(rest % p);
        rest /= p;
      }
      g[d] = 1;
      if (rem_monic(f, g, p).empty())
        return false;
    }
  }
  return true;
}

// Candidate monics enumerated with the constant term as the most significant
// position, so the first irreducible found is lexicographically smallest.
Coeffs smallest_irreducible(std::uint64_t p, unsigned k) {
  std::uint64_t count = 1;
  for (unsigned i = 0; i < k; ++i)
    count *= p;
  for (std::uint64_t c = 0; c < count; ++c) {
    Coeffs f(k + 1);
    std::uint64_t rest = c;
    for (unsigned i = k; i-- > 0;) {
      f[i] = static_cast<std::uint32_t>(rest % p);
      rest /= p;
    }
    f[k] = 1;
    if (is_irreducible(f, p))
      return f;
  }
  throw Error(ErrorKind::InvalidArgument, "no irreducible polynomial found");
}

// Product of digit vectors modulo the field modulus.
Coeffs mul_digits(const Coeffs &a, const Coeffs &b, const Coeffs &modulus, std::uint64_t p) {
  Coeffs prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{a[i]} * b[j]) % p);
  Coeffs r = rem_monic(std::move(prod), modulus, p);
  r.resize(modulus.size() - 1, 0);
  return r;
}

} // namespace

std::uint64_t smallest_factor(std::uint64_t n) {
  if (n % 2 == 0)
    return 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0)
      return d;
  return n;
}

bool is_prime(std::uint64_t n) { return n >= 2 && smallest_factor(n) == n; }

FieldCtx FieldCtx::prime(std::uint64_t p) {
  if (p < 2)
    throw Error(ErrorKind::InvalidArgument, "characteristic must be at least 2, got " + std::to_string(p));
  if (p > kMaxPrime)
    throw Error(ErrorKind::CapExceeded, "prime " + std::to_string(p) + " exceeds 2^31 - 1");
  const std::uint64_t factor = smallest_factor(p);
  if (factor != p)
    throw Error(ErrorKind::CompositeModulus,
                std::to_string(p) + " is composite (factor " + std::to_string(factor) + ")");
  FieldCtx ctx;
  ctx.p_ = p;
  ctx.k_ = 1;
  ctx.q_ = p;
  ctx.place_ = {1};
  return ctx;
}

FieldCtx FieldCtx::extension(std::uint64_t p, unsigned k) {
  if (k == 0 || k > kMaxExtensionDegree)
    throw Error(ErrorKind::CapExceeded, "extension degree must be in [1, 6], got " + std::to_string(k));
  if (k == 1)
    return prime(p);
  FieldCtx ctx = prime(p);
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) {
    q *= p;
    if (q > kEnumerationCap)
      throw Error(ErrorKind::CapExceeded,
                  std::to_string(p) + "^" + std::to_string(k) + " exceeds the enumeration cap 2^20");
  }
  ctx.k_ = k;
  ctx.q_ = q;
  ctx.modulus_ = smallest_irreducible(p, k);
  ctx.place_.assign(k, 1);
  for (unsigned i = 1; i < k; ++i)
    ctx.place_[i] = static_cast<std::uint32_t>(ctx.place_[i - 1] * p);

  // Exponential/logarithm tables from the smallest primitive element.
  auto tables = std::make_shared<Tables>();
  const std::uint64_t order = q - 1;
  for (std::uint64_t g = 2; g < q; ++g) {
    const Coeffs gd = ctx.digits(Element{static_cast<std::uint32_t>(g)});
    std::vector<std::uint32_t> powers;
    powers.reserve(order);
    Coeffs cur(k, 0);
    cur[0] = 1;
    do {
      powers.push_back(ctx.from_digits(cur).code);
      cur = mul_digits(cur, gd, ctx.modulus_, p);
    } while (!(cur[0] == 1 && std::all_of(cur.begin() + 1, cur.end(), [](auto d) { return d == 0; })) &&
             powers.size() <= order);
    if (powers.size() == order) {
      tables->exp = std::move(powers);
      break;
    }
  }
  tables->log.assign(q, 0);
  for (std::uint32_t i = 0; i < tables->exp.size(); ++i)
    tables->log[tables->exp[i]] = i;
  ctx.tables_ = std::move(tables);
  return ctx;
}

Element FieldCtx::element(std::uint64_t code) const {
  if (code >= q_)
    throw Error(ErrorKind::InvalidArgument,
                "element code " + std::to_string(code) + " out of range for " + name());
  return Element{static_cast<std::uint32_t>(code)};
}

Element FieldCtx::from_int(std::int64_t value) const noexcept {
  const auto p = static_cast<std::int64_t>(p_);
  std::int64_t r = value % p;
  if (r < 0)
    r += p;
  return Element{static_cast<std::uint32_t>(r)};
}

Element FieldCtx::add(Element a, Element b) const noexcept {
  if (k_ == 1) {
    std::uint64_t s = std::uint64_t{a.code} + b.code;
    return Element{static_cast<std::uint32_t>(s >= p_ ? s - p_ : s)};
  }
  if (p_ == 2)
    return Element{a.code ^ b.code};
  std::uint32_t code = 0;
  std::uint32_t x = a.code, y = b.code;
  const auto p = static_cast<std::uint32_t>(p_);
  for (unsigned i = 0; i < k_; ++i) {
    std::uint32_t d = x % p + y % p;
    if (d >= p)
      d -= p;
    code += d * place_[i];
    x /= p;
    y /= p;
  }
  return Element{code};
}

Element FieldCtx::neg(Element a) const noexcept {
  if (k_ == 1)
    return Element{a.code == 0 ? 0 : static_cast<std::uint32_t>(p_ - a.code)};
  if (p_ == 2)
    return a;
  std::uint32_t code = 0;
  std::uint32_t x = a.code;
  const auto p = static_cast<std::uint32_t>(p_);
  for (unsigned i = 0; i < k_; ++i) {
    const std::uint32_t d = x % p;
    code += (d == 0 ? 0 : p - d) * place_[i];
    x /= p;
  }
  return Element{code};
}

Element FieldCtx::sub(Element a, Element b) const noexcept { return add(a, neg(b)); }

Element FieldCtx::mul(Element a, Element b) const noexcept {
  if (k_ == 1)
    return Element{static_cast<std::uint32_t>(std::uint64_t{a.code} * b.code % p_)};
  if (a.code == 0 || b.code == 0)
    return zero();
  const std::uint64_t order = q_ - 1;
  const std::uint64_t e = (std::uint64_t{tables_->log[a.code]} + tables_->log[b.code]) % order;
  return Element{tables_->exp[e]};
}

Element FieldCtx::inv(Element a) const {
  if (a.code == 0)
    throw Error(ErrorKind::ZeroInverse, "zero has no multiplicative inverse in " + name());
  if (k_ == 1)
    return Element{static_cast<std::uint32_t>(inv_mod(a.code, p_))};
  const std::uint64_t order = q_ - 1;
  return Element{tables_->exp[(order - tables_->log[a.code]) % order]};
}

Element FieldCtx::pow(Element a, std::uint64_t e) const noexcept {
  Element result = one();
  Element base = a;
  while (e) {
    if (e & 1)
      result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

std::vector<std::uint32_t> FieldCtx::digits(Element a) const {
  std::vector<std::uint32_t> d(k_);
  std::uint64_t x = a.code;
  for (unsigned i = 0; i < k_; ++i) {
    d[i] = static_cast<std::uint32_t>(x % p_);
    x /= p_;
  }
  return d;
}

Element FieldCtx::from_digits(std::span<const std::uint32_t> digits) const {
  std::uint64_t code = 0;
  for (std::size_t i = digits.size(); i-- > 0;)
    code = code * p_ + digits[i] % p_;
  return Element{static_cast<std::uint32_t>(code)};
}

std::string FieldCtx::name() const {
  if (k_ == 1)
    return "GF(" + std::to_string(p_) + ")";
  return "GF(" + std::to_string(p_) + "^" + std::to_string(k_) + ")";
}

} // namespace mdl
