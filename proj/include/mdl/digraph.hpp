#pragma once

// Monomial digraphs D(q; m, n): vertices GF(q) x GF(q), and an arc
// (x1, x2) -> (y1, y2) whenever x2 + y2 = x1^m * y1^n.

#include "mdl/bitmatrix.hpp"
#include "mdl/ff.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mdl {

/// Dense-matrix cap: q^2 x q^2 bits stays near 128 MiB at q = 181.
inline constexpr std::uint64_t kMaxDigraphField = 181;
/// Readability cap for DOT output.
inline constexpr std::uint64_t kMaxDotField = 13;

/// A digraph on vertices 0..order-1 with loops allowed.
class Digraph {
public:
  Digraph() = default;
  explicit Digraph(std::size_t order) : adj_(order) {}
  explicit Digraph(BitMatrix adjacency) : adj_(std::move(adjacency)) {}

  std::size_t order() const noexcept { return adj_.size(); }
  bool has_arc(std::size_t u, std::size_t v) const noexcept { return adj_.test(u, v); }
  bool has_loop(std::size_t u) const noexcept { return adj_.test(u, u); }
  void add_arc(std::size_t u, std::size_t v) noexcept { adj_.set(u, v); }

  const BitMatrix &adjacency() const noexcept { return adj_; }
  std::span<const Word> out_row(std::size_t u) const noexcept { return adj_.row(u); }
  std::size_t out_degree(std::size_t u) const noexcept { return adj_.row_count(u); }

  std::uint64_t arc_count() const noexcept;
  std::vector<std::size_t> loops() const;
  /// Same vertex set, every arc reversed.
  Digraph reversed() const { return Digraph(adj_.transposed()); }
  /// Image under a vertex permutation: arc (u, v) becomes (perm[u], perm[v]).
  Digraph relabeled(std::span<const std::size_t> perm) const;

  friend bool operator==(const Digraph &, const Digraph &) = default;

private:
  BitMatrix adj_;
};

struct Vertex {
  Element x1;
  Element x2;

  friend constexpr auto operator<=>(Vertex, Vertex) = default;
};

class MonomialDigraph {
public:
  const FieldCtx &field() const noexcept { return ctx_; }
  std::uint64_t q() const noexcept { return ctx_.q(); }
  /// Normalized exponents in [1, q-1].
  unsigned m() const noexcept { return m_; }
  unsigned n() const noexcept { return n_; }
  std::size_t order() const noexcept { return graph_.order(); }
  const Digraph &graph() const noexcept { return graph_; }

  std::size_t index(Vertex v) const noexcept { return std::size_t{v.x1.code} * q() + v.x2.code; }
  Vertex vertex(std::size_t index) const noexcept {
    return Vertex{Element{static_cast<std::uint32_t>(index / q())}, Element{static_cast<std::uint32_t>(index % q())}};
  }

  bool has_arc(Vertex u, Vertex v) const noexcept { return graph_.has_arc(index(u), index(v)); }
  /// Exactly q targets ordered by index.
  std::vector<Vertex> out_neighbors(Vertex u) const;
  /// The q looped vertices ordered by index.
  std::vector<Vertex> loop_vertices() const;
  /// Transposed adjacency; parameters recorded as (n, m).
  MonomialDigraph converse() const;

  /// "D_q_m_n".
  std::string name() const;
  /// "(a,b)" with element codes.
  std::string label(std::size_t index) const;

private:
  friend MonomialDigraph build_monomial_digraph(const FieldCtx &, std::uint64_t, std::uint64_t);

  MonomialDigraph(FieldCtx ctx, unsigned m, unsigned n, Digraph graph)
      : ctx_(std::move(ctx)), m_(m), n_(n), graph_(std::move(graph)) {}

  FieldCtx ctx_;
  unsigned m_;
  unsigned n_;
  Digraph graph_;
};

/// e -> 1 + ((e - 1) mod (q - 1)), valid because x^q = x on GF(q).
unsigned normalize_exponent(std::uint64_t e, std::uint64_t q);

/// Throws InvalidExponent for m or n below 1, CapExceeded for q > 181.
MonomialDigraph build_monomial_digraph(const FieldCtx &ctx, std::uint64_t m, std::uint64_t n);

/// Graphviz text; throws CapExceeded for q > 13.
std::string export_dot(const MonomialDigraph &d);

} // namespace mdl
