#include "mdl/patterns.hpp"

#include "mdl/error.hpp"
#include "mdl/poly.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

namespace mdl {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_add_overflow(a, b, &out))
    throw Error(ErrorKind::CapExceeded, "pattern count overflows 64 bits");
  return out;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out))
    throw Error(ErrorKind::CapExceeded, "count overflows 64 bits");
  return out;
}

Pattern from_mask(unsigned order, std::uint64_t mask) {
  std::vector<Arc> arcs;
  for (unsigned s = 0; s < order; ++s)
    for (unsigned t = 0; t < order; ++t)
      if ((mask >> (s * order + t)) & 1U)
        arcs.emplace_back(s, t);
  return Pattern(order, std::move(arcs));
}

std::uint64_t canonical_mask(unsigned order, std::uint64_t mask) {
  std::vector<unsigned> perm(order);
  std::iota(perm.begin(), perm.end(), 0U);
  std::uint64_t best = ~std::uint64_t{0};
  do {
    std::uint64_t image = 0;
    for (unsigned s = 0; s < order; ++s)
      for (unsigned t = 0; t < order; ++t)
        if ((mask >> (s * order + t)) & 1U)
          image |= std::uint64_t{1} << (perm[s] * order + perm[t]);
    best = std::min(best, image);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

bool weakly_connected(unsigned order, std::uint64_t mask) {
  std::vector<unsigned> seen{0};
  std::vector<bool> visited(order, false);
  visited[0] = true;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    const unsigned u = seen[i];
    for (unsigned v = 0; v < order; ++v) {
      const bool joined = ((mask >> (u * order + v)) & 1U) || ((mask >> (v * order + u)) & 1U);
      if (joined && !visited[v]) {
        visited[v] = true;
        seen.push_back(v);
      }
    }
  }
  return seen.size() == order;
}

} // namespace

Pattern::Pattern(unsigned order, std::vector<Arc> arcs) : order_(order), arcs_(std::move(arcs)) {
  if (order_ == 0 || order_ > kMaxPatternOrder)
    throw Error(ErrorKind::InvalidArgument, "pattern order must be in [1, 8], got " + std::to_string(order_));
  for (auto [s, t] : arcs_)
    if (s >= order_ || t >= order_)
      throw Error(ErrorKind::InvalidArgument,
                  "arc " + std::to_string(s) + " " + std::to_string(t) + " outside a pattern of order " +
                      std::to_string(order_));
  std::sort(arcs_.begin(), arcs_.end());
  if (std::adjacent_find(arcs_.begin(), arcs_.end()) != arcs_.end())
    throw Error(ErrorKind::InvalidArgument, "duplicate arc in pattern");
}

bool Pattern::has_arc(unsigned s, unsigned t) const noexcept {
  return std::binary_search(arcs_.begin(), arcs_.end(), Arc{s, t});
}

Pattern Pattern::converse() const {
  std::vector<Arc> reversed;
  reversed.reserve(arcs_.size());
  for (auto [s, t] : arcs_)
    reversed.emplace_back(t, s);
  return Pattern(order_, std::move(reversed));
}

Pattern parse_pattern(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<unsigned> order;
  std::vector<Arc> arcs;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#')
      continue;
    std::istringstream fields(line);
    long long a = 0, b = 0;
    std::string extra;
    if (!order) {
      if (!(fields >> a) || (fields >> extra) || a <= 0)
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected a positive order");
      order = static_cast<unsigned>(a);
      continue;
    }
    if (!(fields >> a >> b) || (fields >> extra) || a < 0 || b < 0)
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected an arc \"s t\"");
    arcs.emplace_back(static_cast<unsigned>(a), static_cast<unsigned>(b));
  }
  if (!order)
    throw Error(ErrorKind::ParseError, "empty pattern");
  return Pattern(*order, std::move(arcs));
}

std::string format_pattern(const Pattern &h) {
  std::string out = std::to_string(h.order()) + "\n";
  for (auto [s, t] : h.arcs())
    out += std::to_string(s) + " " + std::to_string(t) + "\n";
  return out;
}

Pattern builtin_K() { return Pattern(2, {{0, 0}, {1, 1}, {0, 1}}); }

std::vector<Pattern> connected_pattern_library(unsigned max_order) {
  if (max_order > 4)
    throw Error(ErrorKind::CapExceeded, "pattern library is generated for at most 4 vertices");
  std::vector<Pattern> library;
  for (unsigned order = 1; order <= max_order; ++order) {
    std::set<std::pair<int, std::uint64_t>> seen; // (arc count, canonical mask)
    const std::uint64_t limit = std::uint64_t{1} << (order * order);
    for (std::uint64_t mask = 0; mask < limit; ++mask)
      if (weakly_connected(order, mask))
        seen.emplace(std::popcount(mask), canonical_mask(order, mask));
    for (const auto &[arcs, mask] : seen)
      library.push_back(from_mask(order, mask));
  }
  return library;
}

std::uint64_t automorphism_count(const Pattern &h) {
  std::vector<unsigned> perm(h.order());
  std::iota(perm.begin(), perm.end(), 0U);
  std::uint64_t count = 0;
  do {
    const bool preserves = std::all_of(h.arcs().begin(), h.arcs().end(),
                                       [&](const Arc &a) { return h.has_arc(perm[a.first], perm[a.second]); });
    if (preserves)
      ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

std::uint64_t count_injections(const Digraph &host, const Pattern &h) {
  const std::size_t n = host.order();
  const std::size_t words = words_for(n);
  const unsigned k = h.order();
  if (k > n)
    return 0;

  // High-degree pattern vertices first.
  std::vector<unsigned> degree(k, 0);
  for (auto [s, t] : h.arcs()) {
    ++degree[s];
    ++degree[t];
  }
  std::vector<unsigned> order(k);
  std::iota(order.begin(), order.end(), 0U);
  std::stable_sort(order.begin(), order.end(), [&](unsigned a, unsigned b) { return degree[a] > degree[b]; });

  const BitMatrix in_rows = host.adjacency().transposed();
  std::vector<Word> all(words, ~Word{0}), loops(words, 0);
  if (n % kWordBits)
    all.back() = (Word{1} << (n % kWordBits)) - 1;
  for (std::size_t u = 0; u < n; ++u)
    if (host.has_loop(u))
      loops[u / kWordBits] |= Word{1} << (u % kWordBits);

  std::vector<std::size_t> image(k);
  std::vector<Word> used(words, 0);
  std::vector<std::vector<Word>> cand(k, std::vector<Word>(words));

  auto candidates = [&](unsigned depth) {
    const unsigned p = order[depth];
    auto &c = cand[depth];
    c = h.has_arc(p, p) ? loops : all;
    for (unsigned j = 0; j < depth; ++j) {
      const unsigned prev = order[j];
      if (h.has_arc(prev, p)) {
        const auto row = host.out_row(image[j]);
        for (std::size_t w = 0; w < words; ++w)
          c[w] &= row[w];
      }
      if (h.has_arc(p, prev)) {
        const auto row = in_rows.row(image[j]);
        for (std::size_t w = 0; w < words; ++w)
          c[w] &= row[w];
      }
    }
    for (std::size_t w = 0; w < words; ++w)
      c[w] &= ~used[w];
  };

  std::uint64_t total = 0;
  auto extend = [&](auto &self, unsigned depth) -> void {
    candidates(depth);
    if (depth + 1 == k) {
      std::uint64_t leaf = 0;
      for (Word w : cand[depth])
        leaf += static_cast<std::uint64_t>(std::popcount(w));
      total = checked_add(total, leaf);
      return;
    }
    BitMatrix::for_each_bit(std::span<const Word>(cand[depth]), [&](std::size_t v) {
      image[depth] = v;
      used[v / kWordBits] |= Word{1} << (v % kWordBits);
      self(self, depth + 1);
      used[v / kWordBits] &= ~(Word{1} << (v % kWordBits));
    });
  };
  extend(extend, 0);
  return total;
}

PatternCount count_pattern(const Digraph &host, const Pattern &h) {
  PatternCount out;
  out.injections = count_injections(host, h);
  out.aut = automorphism_count(h);
  out.subdigraphs = out.injections / out.aut;
  if (out.subdigraphs * out.aut != out.injections)
    throw Error(ErrorKind::VerificationFailed, "automorphism count does not divide injection count");
  return out;
}

PatternCount count_pattern(const MonomialDigraph &d, const Pattern &h) {
  if (h.order() > kMaxCountedPatternOrder)
    throw Error(ErrorKind::CapExceeded, "pattern counting is limited to 5 pattern vertices");
  if (d.q() > kMaxPatternHostField)
    throw Error(ErrorKind::CapExceeded, "pattern counting is limited to q <= 13");
  return count_pattern(d.graph(), h);
}

std::uint64_t count_K(const MonomialDigraph &d) {
  const auto loops = d.graph().loops();
  std::uint64_t count = 0;
  for (std::size_t a : loops)
    for (std::size_t b : loops)
      if (a != b && d.graph().has_arc(a, b))
        ++count;
  return count;
}

KFormulaCheck verify_K_formula(const FieldCtx &ctx, unsigned n) {
  if (ctx.p() == 2)
    throw Error(ErrorKind::EvenCharacteristic, "the K formula needs 2 to be invertible");
  const MonomialDigraph d = build_monomial_digraph(ctx, 1, n);
  KFormulaCheck out;
  out.count_k = count_K(d);
  out.predicted = checked_mul(ctx.q() - 1, count_R(ctx, n));
  out.holds = out.count_k == out.predicted;
  return out;
}

} // namespace mdl
