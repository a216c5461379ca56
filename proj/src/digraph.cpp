#include "mdl/digraph.hpp"

#include "mdl/error.hpp"

#include <sstream>

namespace mdl {

std::uint64_t Digraph::arc_count() const noexcept {
  std::uint64_t total = 0;
  for (std::size_t u = 0; u < order(); ++u)
    total += out_degree(u);
  return total;
}

std::vector<std::size_t> Digraph::loops() const {
  std::vector<std::size_t> out;
  for (std::size_t u = 0; u < order(); ++u)
    if (has_loop(u))
      out.push_back(u);
  return out;
}

Digraph Digraph::relabeled(std::span<const std::size_t> perm) const {
  Digraph out(order());
  for (std::size_t u = 0; u < order(); ++u)
    BitMatrix::for_each_bit(out_row(u), [&](std::size_t v) { out.add_arc(perm[u], perm[v]); });
  return out;
}

std::vector<Vertex> MonomialDigraph::out_neighbors(Vertex u) const {
  std::vector<Vertex> out;
  out.reserve(q());
  BitMatrix::for_each_bit(graph_.out_row(index(u)), [&](std::size_t v) { out.push_back(vertex(v)); });
  return out;
}

std::vector<Vertex> MonomialDigraph::loop_vertices() const {
  std::vector<Vertex> out;
  for (std::size_t u : graph_.loops())
    out.push_back(vertex(u));
  return out;
}

MonomialDigraph MonomialDigraph::converse() const { return MonomialDigraph(ctx_, n_, m_, graph_.reversed()); }

std::string MonomialDigraph::name() const {
  return "D_" + std::to_string(q()) + "_" + std::to_string(m_) + "_" + std::to_string(n_);
}

std::string MonomialDigraph::label(std::size_t index) const {
  const Vertex v = vertex(index);
  return "(" + std::to_string(v.x1.code) + "," + std::to_string(v.x2.code) + ")";
}

unsigned normalize_exponent(std::uint64_t e, std::uint64_t q) {
  if (e < 1)
    throw Error(ErrorKind::InvalidExponent, "exponents must be at least 1");
  return static_cast<unsigned>(1 + (e - 1) % (q - 1));
}

MonomialDigraph build_monomial_digraph(const FieldCtx &ctx, std::uint64_t m, std::uint64_t n) {
  if (m < 1 || n < 1)
    throw Error(ErrorKind::InvalidExponent,
                "exponents must be at least 1, got m=" + std::to_string(m) + " n=" + std::to_string(n));
  if (ctx.q() > kMaxDigraphField)
    throw Error(ErrorKind::CapExceeded,
                "dense digraph over " + ctx.name() + " exceeds the q <= 181 cap");
  const std::uint64_t q = ctx.q();
  const unsigned mm = normalize_exponent(m, q);
  const unsigned nn = normalize_exponent(n, q);

  std::vector<Element> pow_m(q), pow_n(q);
  for (std::uint64_t x = 0; x < q; ++x) {
    const Element e{static_cast<std::uint32_t>(x)};
    pow_m[x] = ctx.pow(e, mm);
    pow_n[x] = ctx.pow(e, nn);
  }

  Digraph g(q * q);
  for (std::uint64_t x1 = 0; x1 < q; ++x1)
    for (std::uint64_t x2 = 0; x2 < q; ++x2) {
      const std::size_t u = x1 * q + x2;
      for (std::uint64_t y1 = 0; y1 < q; ++y1) {
        const Element y2 = ctx.sub(ctx.mul(pow_m[x1], pow_n[y1]), Element{static_cast<std::uint32_t>(x2)});
        g.add_arc(u, y1 * q + y2.code);
      }
    }
  return MonomialDigraph(ctx, mm, nn, std::move(g));
}

std::string export_dot(const MonomialDigraph &d) {
  if (d.q() > kMaxDotField)
    throw Error(ErrorKind::CapExceeded, "DOT export is limited to q <= 13");
  std::ostringstream out;
  out << "digraph \"" << d.name() << "\" {\n";
  for (std::size_t u = 0; u < d.order(); ++u)
    out << "  v" << u << " [label=\"" << d.label(u) << "\"];\n";
  for (std::size_t u = 0; u < d.order(); ++u)
    BitMatrix::for_each_bit(d.graph().out_row(u), [&](std::size_t v) { out << "  v" << u << " -> v" << v << ";\n"; });
  out << "}\n";
  return out.str();
}

} // namespace mdl
