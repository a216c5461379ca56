#pragma once

// Isomorphism certificates, invariant fingerprints and budgeted search for
// monomial digraphs.

#include "mdl/digraph.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace mdl {

/// mapping[i] is the image of vertex i.
struct IsoCertificate {
  std::vector<std::size_t> mapping;

  static IsoCertificate identity(std::size_t order);
  /// JSON array of image indices.
  std::string to_json() const;
  static IsoCertificate from_json(std::string_view text);

  friend bool operator==(const IsoCertificate &, const IsoCertificate &) = default;
};

struct IsoCheck {
  bool ok = false;
  /// First ordered pair (u, v), in index order, with arc(u, v) in the source
  /// differing from arc(mapping[u], mapping[v]) in the target.
  std::optional<std::pair<std::size_t, std::size_t>> violation;
  /// Set when the mapping is not a permutation.
  std::string problem;
};

/// Throws SizeMismatch when the orders (or the mapping length) disagree.
IsoCheck verify_iso(const Digraph &d1, const Digraph &d2, const IsoCertificate &cert);
IsoCheck verify_iso(const MonomialDigraph &d1, const MonomialDigraph &d2, const IsoCertificate &cert);

/// The map (x, y) -> (x^k, y) from D(q;m1,n1) onto D(q;m2,n2). It is an
/// isomorphism iff k*m2 = m1 and k*n2 = n1 (mod q-1). Throws NotCoprime,
/// CongruenceFailed naming the failing congruence, or VerificationFailed if a
/// certificate that satisfies the congruences does not verify.
IsoCertificate power_map_iso(const MonomialDigraph &d1, const MonomialDigraph &d2, std::uint64_t k);

/// Automorphism (x, y) -> (x^{p^j}, y^{p^j}) of any D over GF(p^k), verified.
IsoCertificate frobenius_automorphism(const MonomialDigraph &d, unsigned j);

/// Isomorphism invariants. Equal fingerprints are necessary, not sufficient.
struct Fingerprint {
  std::uint64_t loop_count = 0;
  /// Unordered pairs {u, v}, u != v, with arcs both ways.
  std::uint64_t two_cycle_count = 0;
  /// Subdigraph counts over connected_pattern_library(3); absent when the
  /// host exceeded the pattern-count cap.
  std::optional<std::vector<std::uint64_t>> pattern_counts;
  /// (stable color hash, class size), sorted by hash.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> refinement_histogram;

  bool patterns_omitted() const noexcept { return !pattern_counts.has_value(); }
  friend bool operator==(const Fingerprint &, const Fingerprint &) = default;
};

Fingerprint fingerprint(const Digraph &d, bool with_patterns = true);
/// Pattern counts only for q <= 13; larger hosts get them omitted.
Fingerprint fingerprint(const MonomialDigraph &d);

/// Joint 1-dimensional color refinement of several digraphs, seeded with
/// (loop, out-degree, in-degree) and iterated to a fixed point. Color ids are
/// shared across all inputs.
std::vector<std::vector<std::uint32_t>> refine_colors(const std::vector<const Digraph *> &graphs);

inline constexpr std::uint64_t kDefaultSearchBudget = 100'000'000;

enum class SearchStatus { Found, NotIsomorphic, Exhausted };

struct SearchResult {
  SearchStatus status = SearchStatus::Exhausted;
  std::optional<IsoCertificate> certificate;
  /// Backtracking node expansions used.
  std::uint64_t nodes = 0;
  std::string reason;
};

/// Color-refinement pruning followed by backtracking with forward checking.
/// Every node expansion counts against the budget. Found certificates are
/// re-verified before return.
SearchResult brute_force_iso(const Digraph &d1, const Digraph &d2, std::uint64_t budget = kDefaultSearchBudget);
SearchResult brute_force_iso(const MonomialDigraph &d1, const MonomialDigraph &d2,
                             std::uint64_t budget = kDefaultSearchBudget);

/// Maps a residue mod (q-1) into [1, q-1], sending 0 to q-1.
unsigned exponent_representative(std::uint64_t residue, std::uint64_t q);

/// Orbit {(rho(k m), rho(k n)) : gcd(k, q-1) = 1}; the first element is the
/// canonical representative. Throws InvalidExponent outside [1, q-1].
std::set<std::pair<unsigned, unsigned>> conjectured_class(std::uint64_t q, unsigned m, unsigned n);

/// Smallest unit k mod (q-1) with k*m2 = m1 and k*n2 = n1, if any.
std::optional<std::uint64_t> power_map_multiplier(std::uint64_t q, unsigned m1, unsigned n1, unsigned m2,
                                                  unsigned n2);

std::string_view to_string(SearchStatus status);

} // namespace mdl
