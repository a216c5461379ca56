#include "doctest.h"

#include "mdl/error.hpp"
#include "mdl/ff.hpp"
#include "oracles.hpp"

#include <numeric>
#include <set>
#include <string>

using namespace mdl;

namespace {

ErrorKind kind_of(auto &&fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.kind();
  }
  FAIL("expected an mdl::Error");
  return ErrorKind::InvalidArgument;
}

Element el(std::uint32_t code) { return Element{code}; }

// Monic polynomials of degree d over GF(p) that have no root, enumerated with
// the constant term as the most significant key.
std::vector<oracle::Digits> rootless_monics(std::uint64_t p, unsigned d) {
  std::vector<oracle::Digits> out;
  std::uint64_t count = 1;
  for (unsigned i = 0; i < d; ++i)
    count *= p;
  for (std::uint64_t c = 0; c < count; ++c) {
    oracle::Digits f(d + 1);
    std::uint64_t rest = c;
    for (unsigned i = d; i-- > 0;) {
      f[i] = static_cast<std::uint32_t>(rest % p);
      rest /= p;
    }
    f[d] = 1;
    bool has_root = false;
    for (std::uint64_t x = 0; x < p && !has_root; ++x) {
      std::uint64_t acc = 0, xp = 1;
      for (unsigned i = 0; i <= d; ++i) {
        acc = (acc + f[i] * xp) % p;
        xp = xp * x % p;
      }
      has_root = acc == 0;
    }
    if (!has_root)
      out.push_back(f);
  }
  return out;
}

} // namespace

TEST_CASE("prime fields") {
  const FieldCtx f7 = FieldCtx::prime(7);
  CHECK(f7.q() == 7);
  CHECK(f7.k() == 1);
  CHECK(f7.modulus().empty());
  CHECK(FieldCtx::prime(2).q() == 2);

  try {
    FieldCtx::prime(6);
    FAIL("6 accepted as prime");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::CompositeModulus);
    CHECK(std::string(e.what()).find("factor 2") != std::string::npos);
  }
  CHECK(kind_of([] { FieldCtx::prime(91); }) == ErrorKind::CompositeModulus);
  CHECK(kind_of([] { FieldCtx::prime(1); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { FieldCtx::prime(kMaxPrime + 2); }) == ErrorKind::CapExceeded);
  CHECK(FieldCtx::prime(kMaxPrime).q() == kMaxPrime);
}

TEST_CASE("extension field moduli are the smallest irreducibles") {
  // Degrees 2 and 3: irreducible iff rootless, so root enumeration is an oracle.
  for (auto [p, k] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 2}, {3, 2}, {2, 3}, {5, 2}, {7, 3}, {3, 3}}) {
    CAPTURE(p);
    CAPTURE(k);
    const FieldCtx ctx = FieldCtx::extension(p, k);
    const auto candidates = rootless_monics(p, k);
    REQUIRE(!candidates.empty());
    const oracle::Digits got(ctx.modulus().begin(), ctx.modulus().end());
    CHECK(got == candidates.front());
  }
  const FieldCtx f4 = FieldCtx::extension(2, 2);
  const FieldCtx f9 = FieldCtx::extension(3, 2);
  CHECK(oracle::Digits(f4.modulus().begin(), f4.modulus().end()) == oracle::Digits{1, 1, 1});
  CHECK(oracle::Digits(f9.modulus().begin(), f9.modulus().end()) == oracle::Digits{1, 0, 1});
  // GF(4) has exactly one monic irreducible quadratic.
  CHECK(rootless_monics(2, 2).size() == 1);

  // Constant term first: x^4 + 1 = (x+1)^4 is reducible, and x^4 + x^2 + 1 =
  // (x^2+x+1)^2 is rootless but reducible, so x^4 + x^3 + 1 comes first.
  const FieldCtx f16 = FieldCtx::extension(2, 4);
  CHECK(oracle::Digits(f16.modulus().begin(), f16.modulus().end()) == oracle::Digits{1, 0, 0, 1, 1});

  const FieldCtx f5 = FieldCtx::extension(5, 1);
  CHECK(f5 == FieldCtx::prime(5));
  CHECK(f5.modulus().empty());
}

TEST_CASE("extension field caps") {
  CHECK(kind_of([] { FieldCtx::extension(2, 7); }) == ErrorKind::CapExceeded);
  CHECK(kind_of([] { FieldCtx::extension(2, 0); }) == ErrorKind::CapExceeded);
  CHECK(kind_of([] { FieldCtx::extension(11, 6); }) == ErrorKind::CapExceeded);
  CHECK(kind_of([] { FieldCtx::extension(4, 2); }) == ErrorKind::CompositeModulus);
  CHECK(FieldCtx::extension(2, 6).q() == 64);
}

TEST_CASE("addition") {
  const FieldCtx f7 = FieldCtx::prime(7);
  CHECK(f7.add(el(1), el(6)) == f7.zero());
  const FieldCtx f4 = FieldCtx::extension(2, 2);
  CHECK(f4.add(el(2), el(3)) == el(1));

  for (const FieldCtx &ctx : {f7, f4, FieldCtx::extension(3, 2), FieldCtx::extension(5, 3)}) {
    const oracle::NaiveField ref(ctx);
    for (std::uint32_t a = 0; a < ctx.q(); ++a) {
      CHECK(ctx.add(el(a), ctx.zero()) == el(a));
      CHECK(ctx.add(el(a), ctx.neg(el(a))) == ctx.zero());
      for (std::uint32_t b = 0; b < ctx.q(); b += 7) {
        CHECK(ctx.add(el(a), el(b)).code == ref.add(a, b));
        CHECK(ctx.sub(el(a), el(b)) == ctx.add(el(a), ctx.neg(el(b))));
      }
    }
  }
}

TEST_CASE("multiplication") {
  const FieldCtx f7 = FieldCtx::prime(7);
  CHECK(f7.mul(el(3), el(4)) == el(5));
  const FieldCtx f4 = FieldCtx::extension(2, 2);
  CHECK(f4.mul(el(2), el(2)) == el(3));

  for (const FieldCtx &ctx : {f4, FieldCtx::extension(3, 2), FieldCtx::extension(2, 4), FieldCtx::extension(3, 3),
                              FieldCtx::extension(7, 2)}) {
    CAPTURE(ctx.name());
    const oracle::NaiveField ref(ctx);
    for (std::uint32_t a = 0; a < ctx.q(); ++a) {
      CHECK(ctx.mul(el(a), ctx.one()) == el(a));
      for (std::uint32_t b = 0; b < ctx.q(); ++b)
        REQUIRE(ctx.mul(el(a), el(b)).code == ref.mul(a, b));
    }
  }
}

TEST_CASE("inverses") {
  const FieldCtx f7 = FieldCtx::prime(7);
  CHECK(f7.inv(el(3)) == el(5));
  CHECK(f7.inv(f7.one()) == f7.one());
  CHECK(kind_of([&] { f7.inv(el(0)); }) == ErrorKind::ZeroInverse);

  for (const FieldCtx &ctx : {f7, FieldCtx::prime(101), FieldCtx::extension(2, 5), FieldCtx::extension(3, 4),
                              FieldCtx::prime(kMaxPrime)}) {
    const std::uint64_t limit = std::min<std::uint64_t>(ctx.q(), 5000);
    for (std::uint64_t a = 1; a < limit; ++a) {
      const Element x{static_cast<std::uint32_t>(a)};
      REQUIRE(ctx.mul(x, ctx.inv(x)) == ctx.one());
    }
  }
}

TEST_CASE("powers") {
  const FieldCtx f7 = FieldCtx::prime(7);
  for (std::uint32_t x = 0; x < 7; ++x)
    CHECK(f7.pow(el(x), 7) == el(x));
  CHECK(f7.pow(el(0), 0) == f7.one());
  CHECK(f7.pow(el(5), 0) == f7.one());

  const FieldCtx f11 = FieldCtx::prime(11);
  const oracle::NaiveField ref11(f11);
  CHECK(ref11.pow(8, 4) == 4);
  CHECK(f11.pow(el(8), 4) == el(4));

  // a^e = a^(1 + (e-1) mod (q-1)) for a != 0, and 0^e = 0 for e >= 1.
  for (const FieldCtx &ctx : {f11, FieldCtx::extension(2, 3), FieldCtx::extension(3, 2)}) {
    const oracle::NaiveField ref(ctx);
    const std::uint64_t q = ctx.q();
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint64_t e = 1; e < 3 * q; ++e) {
        const Element got = ctx.pow(el(a), e);
        REQUIRE(got.code == ref.pow(a, e));
        if (a == 0)
          CHECK(got == ctx.zero());
        else
          CHECK(got == ctx.pow(el(a), 1 + (e - 1) % (q - 1)));
      }
  }
}

TEST_CASE("power maps permute the field exactly when gcd(m, q-1) = 1") {
  for (const FieldCtx &ctx : {FieldCtx::prime(31), FieldCtx::extension(31, 2), FieldCtx::extension(3, 3),
                              FieldCtx::prime(1021), FieldCtx::extension(5, 2)}) {
    CAPTURE(ctx.name());
    const std::uint64_t q = ctx.q();
    for (std::uint64_t m = 1; m < q; m += (q > 100 ? 37 : 1)) {
      std::vector<bool> hit(q, false);
      std::uint64_t distinct = 0;
      for (std::uint32_t x = 0; x < q; ++x) {
        const auto y = ctx.pow(el(x), m).code;
        if (!hit[y]) {
          hit[y] = true;
          ++distinct;
        }
      }
      CHECK((distinct == q) == (std::gcd(m, q - 1) == 1));
    }
  }
}

TEST_CASE("field axioms on exhaustive triples") {
  for (const FieldCtx &ctx : {FieldCtx::prime(13), FieldCtx::extension(2, 3), FieldCtx::extension(3, 2),
                              FieldCtx::extension(2, 4)}) {
    CAPTURE(ctx.name());
    const auto q = static_cast<std::uint32_t>(ctx.q());
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b) {
        REQUIRE(ctx.mul(el(a), el(b)) == ctx.mul(el(b), el(a)));
        REQUIRE(ctx.add(el(a), el(b)) == ctx.add(el(b), el(a)));
        for (std::uint32_t c = 0; c < q; ++c) {
          REQUIRE(ctx.mul(ctx.mul(el(a), el(b)), el(c)) == ctx.mul(el(a), ctx.mul(el(b), el(c))));
          REQUIRE(ctx.add(ctx.add(el(a), el(b)), el(c)) == ctx.add(el(a), ctx.add(el(b), el(c))));
          REQUIRE(ctx.mul(el(a), ctx.add(el(b), el(c))) == ctx.add(ctx.mul(el(a), el(b)), ctx.mul(el(a), el(c))));
        }
      }
  }
}

TEST_CASE("element encoding") {
  const FieldCtx f9 = FieldCtx::extension(3, 2);
  CHECK(f9.digits(el(7)) == std::vector<std::uint32_t>{1, 2});
  CHECK(f9.from_digits(std::vector<std::uint32_t>{1, 2}) == el(7));
  CHECK(f9.from_int(-1) == el(2));
  CHECK(kind_of([&] { f9.element(9); }) == ErrorKind::InvalidArgument);
  CHECK(FieldCtx::prime(7).from_int(-2) == el(5));
  CHECK(f9.name() == "GF(3^2)");
}
