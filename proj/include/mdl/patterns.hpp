#pragma once

// Subdigraph counting. N(X, Y) counts subdigraphs of X isomorphic to Y; it is
// computed as the number of arc-preserving injections of Y into X divided by
// |Aut(Y)|. Non-arcs of the pattern are unconstrained (not induced).

#include "mdl/digraph.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mdl {

inline constexpr unsigned kMaxPatternOrder = 8;
inline constexpr unsigned kMaxCountedPatternOrder = 5;
inline constexpr std::uint64_t kMaxPatternHostField = 13;

using Arc = std::pair<unsigned, unsigned>;

class Pattern {
public:
  Pattern() = default;
  /// Throws InvalidArgument on order > 8, out-of-range endpoints or duplicate arcs.
  Pattern(unsigned order, std::vector<Arc> arcs);

  unsigned order() const noexcept { return order_; }
  /// Sorted ascending.
  const std::vector<Arc> &arcs() const noexcept { return arcs_; }
  bool has_arc(unsigned s, unsigned t) const noexcept;
  Pattern converse() const;

  friend bool operator==(const Pattern &, const Pattern &) = default;

private:
  unsigned order_ = 0;
  std::vector<Arc> arcs_;
};

/// Order on the first line, one "s t" arc per following line. Blank lines and
/// lines starting with '#' are ignored.
Pattern parse_pattern(std::string_view text);
std::string format_pattern(const Pattern &h);

/// Vertices alpha = 0 and beta = 1, loops on both and the arc alpha -> beta.
Pattern builtin_K();

/// Every weakly connected pattern on 1..max_order vertices up to isomorphism,
/// ordered by (order, arc count, canonical adjacency code).
std::vector<Pattern> connected_pattern_library(unsigned max_order);

/// Brute force over all vertex permutations.
std::uint64_t automorphism_count(const Pattern &h);

struct PatternCount {
  std::uint64_t injections = 0;
  std::uint64_t aut = 1;
  std::uint64_t subdigraphs = 0;

  friend bool operator==(const PatternCount &, const PatternCount &) = default;
};

/// Arc-preserving injections counted by backtracking with bitset candidate
/// sets. No caps; callers choose what is affordable.
std::uint64_t count_injections(const Digraph &host, const Pattern &h);
PatternCount count_pattern(const Digraph &host, const Pattern &h);
/// Capped variant: pattern order <= 5 and q <= 13, else CapExceeded.
PatternCount count_pattern(const MonomialDigraph &d, const Pattern &h);

/// Ordered pairs of distinct looped vertices joined by an arc; O(q^2) after
/// extracting the q loops. Equals N(D, K) because K has no automorphism.
std::uint64_t count_K(const MonomialDigraph &d);

struct KFormulaCheck {
  bool holds = false;
  std::uint64_t count_k = 0;
  /// (q - 1) * R(n).
  std::uint64_t predicted = 0;
};

/// Compares N(D(q;1,n), K) with (q - 1) * R(n). Throws EvenCharacteristic for
/// even q and CapExceeded beyond the digraph cap.
KFormulaCheck verify_K_formula(const FieldCtx &ctx, unsigned n);

} // namespace mdl
