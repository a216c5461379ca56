#include "mdl/iso.hpp"

#include "mdl/error.hpp"
#include "mdl/patterns.hpp"

#include "json.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

namespace mdl {

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t combine(std::uint64_t seed, std::uint64_t value) { return mix(seed ^ mix(value)); }

void require_same_order(const Digraph &d1, const Digraph &d2) {
  if (d1.order() != d2.order())
    throw Error(ErrorKind::SizeMismatch, "digraphs of order " + std::to_string(d1.order()) + " and " +
                                             std::to_string(d2.order()));
}

void require_same_field(const MonomialDigraph &d1, const MonomialDigraph &d2) {
  if (!(d1.field() == d2.field()))
    throw Error(ErrorKind::SizeMismatch, "digraphs over " + d1.field().name() + " and " + d2.field().name());
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

IsoCertificate vertex_map(const MonomialDigraph &d, auto &&image) {
  IsoCertificate cert;
  cert.mapping.resize(d.order());
  for (std::size_t i = 0; i < d.order(); ++i)
    cert.mapping[i] = d.index(image(d.vertex(i)));
  return cert;
}

} // namespace

IsoCertificate IsoCertificate::identity(std::size_t order) {
  IsoCertificate cert;
  cert.mapping.resize(order);
  std::iota(cert.mapping.begin(), cert.mapping.end(), std::size_t{0});
  return cert;
}

std::string IsoCertificate::to_json() const { return nlohmann::json(mapping).dump(); }

IsoCertificate IsoCertificate::from_json(std::string_view text) {
  try {
    const auto parsed = nlohmann::json::parse(text);
    IsoCertificate cert;
    cert.mapping = parsed.get<std::vector<std::size_t>>();
    return cert;
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::ParseError, std::string("certificate: ") + e.what());
  }
}

IsoCheck verify_iso(const Digraph &d1, const Digraph &d2, const IsoCertificate &cert) {
  require_same_order(d1, d2);
  const std::size_t n = d1.order();
  if (cert.mapping.size() != n)
    throw Error(ErrorKind::SizeMismatch, "certificate length " + std::to_string(cert.mapping.size()) +
                                             " for order " + std::to_string(n));
  IsoCheck out;
  std::vector<bool> hit(n, false);
  for (std::size_t image : cert.mapping) {
    if (image >= n || hit[image]) {
      out.problem = "mapping is not a permutation";
      return out;
    }
    hit[image] = true;
  }

  std::vector<Word> permuted(words_for(n));
  for (std::size_t u = 0; u < n; ++u) {
    std::fill(permuted.begin(), permuted.end(), Word{0});
    BitMatrix::for_each_bit(d1.out_row(u), [&](std::size_t v) {
      const std::size_t w = cert.mapping[v];
      permuted[w / kWordBits] |= Word{1} << (w % kWordBits);
    });
    const auto target = d2.out_row(cert.mapping[u]);
    if (std::equal(permuted.begin(), permuted.end(), target.begin()))
      continue;
    for (std::size_t v = 0; v < n; ++v)
      if (d1.has_arc(u, v) != d2.has_arc(cert.mapping[u], cert.mapping[v])) {
        out.violation = std::pair{u, v};
        return out;
      }
  }
  out.ok = true;
  return out;
}

IsoCheck verify_iso(const MonomialDigraph &d1, const MonomialDigraph &d2, const IsoCertificate &cert) {
  require_same_field(d1, d2);
  return verify_iso(d1.graph(), d2.graph(), cert);
}

IsoCertificate power_map_iso(const MonomialDigraph &d1, const MonomialDigraph &d2, std::uint64_t k) {
  require_same_field(d1, d2);
  const std::uint64_t order = d1.q() - 1;
  if (k == 0 || gcd(k, order) != 1)
    throw Error(ErrorKind::NotCoprime,
                "k=" + std::to_string(k) + " is not coprime with q-1=" + std::to_string(order));
  auto congruence = [&](const char *lhs, unsigned target_exp, unsigned source_exp) {
    if ((k % order) * target_exp % order != source_exp % order)
      throw Error(ErrorKind::CongruenceFailed,
                  std::to_string(k) + "*" + lhs + "2=" + std::to_string(k) + "*" + std::to_string(target_exp) +
                      " is not congruent to " + lhs + "1=" + std::to_string(source_exp) + " mod " +
                      std::to_string(order));
  };
  congruence("m", d2.m(), d1.m());
  congruence("n", d2.n(), d1.n());

  const FieldCtx &ctx = d1.field();
  IsoCertificate cert = vertex_map(d1, [&](Vertex v) { return Vertex{ctx.pow(v.x1, k), v.x2}; });
  const IsoCheck check = verify_iso(d1, d2, cert);
  if (!check.ok)
    throw Error(ErrorKind::VerificationFailed, "power map certificate for k=" + std::to_string(k) +
                                                   " failed verification: " + d1.name() + " -> " + d2.name());
  return cert;
}

IsoCertificate frobenius_automorphism(const MonomialDigraph &d, unsigned j) {
  const FieldCtx &ctx = d.field();
  std::uint64_t e = 1;
  for (unsigned i = 0; i < j % ctx.k(); ++i)
    e *= ctx.p();
  IsoCertificate cert = vertex_map(d, [&](Vertex v) { return Vertex{ctx.pow(v.x1, e), ctx.pow(v.x2, e)}; });
  if (!verify_iso(d, d, cert).ok)
    throw Error(ErrorKind::VerificationFailed, "Frobenius map is not an automorphism of " + d.name());
  return cert;
}

std::vector<std::vector<std::uint32_t>> refine_colors(const std::vector<const Digraph *> &graphs) {
  using Signature = std::tuple<std::uint32_t, std::vector<std::uint32_t>, std::vector<std::uint32_t>>;

  std::vector<BitMatrix> in_rows;
  for (const Digraph *g : graphs)
    in_rows.push_back(g->adjacency().transposed());

  std::vector<std::vector<std::uint32_t>> colors(graphs.size());
  {
    std::map<std::tuple<bool, std::size_t, std::size_t>, std::uint32_t> seeds;
    for (std::size_t gi = 0; gi < graphs.size(); ++gi)
      for (std::size_t u = 0; u < graphs[gi]->order(); ++u)
        seeds.emplace(std::tuple{graphs[gi]->has_loop(u), graphs[gi]->out_degree(u), in_rows[gi].row_count(u)}, 0);
    std::uint32_t next = 0;
    for (auto &[key, id] : seeds)
      id = next++;
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
      colors[gi].resize(graphs[gi]->order());
      for (std::size_t u = 0; u < graphs[gi]->order(); ++u)
        colors[gi][u] =
            seeds.at(std::tuple{graphs[gi]->has_loop(u), graphs[gi]->out_degree(u), in_rows[gi].row_count(u)});
    }
  }

  std::size_t classes = 0;
  for (;;) {
    std::map<Signature, std::uint32_t> ids;
    std::vector<std::vector<Signature>> sigs(graphs.size());
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
      const Digraph &g = *graphs[gi];
      sigs[gi].resize(g.order());
      for (std::size_t u = 0; u < g.order(); ++u) {
        auto &[own, outs, ins] = sigs[gi][u];
        own = colors[gi][u];
        BitMatrix::for_each_bit(g.out_row(u), [&](std::size_t v) { outs.push_back(colors[gi][v]); });
        BitMatrix::for_each_bit(in_rows[gi].row(u), [&](std::size_t v) { ins.push_back(colors[gi][v]); });
        std::sort(outs.begin(), outs.end());
        std::sort(ins.begin(), ins.end());
        ids.emplace(sigs[gi][u], 0);
      }
    }
    std::uint32_t next = 0;
    for (auto &[sig, id] : ids)
      id = next++;
    for (std::size_t gi = 0; gi < graphs.size(); ++gi)
      for (std::size_t u = 0; u < graphs[gi]->order(); ++u)
        colors[gi][u] = ids.at(sigs[gi][u]);
    if (ids.size() == classes)
      break;
    classes = ids.size();
  }
  return colors;
}

Fingerprint fingerprint(const Digraph &d, bool with_patterns) {
  Fingerprint fp;
  const std::size_t n = d.order();
  for (std::size_t u = 0; u < n; ++u) {
    if (d.has_loop(u))
      ++fp.loop_count;
    BitMatrix::for_each_bit(d.out_row(u), [&](std::size_t v) {
      if (v > u && d.has_arc(v, u))
        ++fp.two_cycle_count;
    });
  }

  if (with_patterns) {
    std::vector<std::uint64_t> counts;
    for (const Pattern &h : connected_pattern_library(3))
      counts.push_back(count_pattern(d, h).subdigraphs);
    fp.pattern_counts = std::move(counts);
  }

  // Hash-valued refinement so that histograms are comparable between
  // digraphs refined separately.
  const BitMatrix in_rows = d.adjacency().transposed();
  std::vector<std::uint64_t> color(n);
  for (std::size_t u = 0; u < n; ++u)
    color[u] = combine(combine(d.has_loop(u) ? 1 : 2, d.out_degree(u)), in_rows.row_count(u));
  auto class_count = [&] {
    std::vector<std::uint64_t> sorted = color;
    std::sort(sorted.begin(), sorted.end());
    return static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
  };
  std::size_t classes = class_count();
  for (;;) {
    std::vector<std::uint64_t> next(n);
    std::vector<std::uint64_t> outs, ins;
    for (std::size_t u = 0; u < n; ++u) {
      outs.clear();
      ins.clear();
      BitMatrix::for_each_bit(d.out_row(u), [&](std::size_t v) { outs.push_back(color[v]); });
      BitMatrix::for_each_bit(in_rows.row(u), [&](std::size_t v) { ins.push_back(color[v]); });
      std::sort(outs.begin(), outs.end());
      std::sort(ins.begin(), ins.end());
      std::uint64_t h = combine(0x6f7574, color[u]);
      for (auto c : outs)
        h = combine(h, c);
      h = combine(h, 0x696e);
      for (auto c : ins)
        h = combine(h, c);
      next[u] = h;
    }
    color = std::move(next);
    const std::size_t now = class_count();
    if (now == classes)
      break;
    classes = now;
  }
  std::map<std::uint64_t, std::uint64_t> histogram;
  for (auto c : color)
    ++histogram[c];
  fp.refinement_histogram.assign(histogram.begin(), histogram.end());
  return fp;
}

Fingerprint fingerprint(const MonomialDigraph &d) { return fingerprint(d.graph(), d.q() <= kMaxPatternHostField); }

namespace {

class Search {
public:
  Search(const Digraph &d1, const Digraph &d2, std::uint64_t budget)
      : d1_(d1), d2_(d2), n_(d1.order()), words_(words_for(d1.order())), budget_(budget),
        in2_(d2.adjacency().transposed()) {}

  SearchResult run() {
    SearchResult out;
    const auto colors = refine_colors({&d1_, &d2_});
    std::map<std::uint32_t, std::int64_t> balance;
    for (auto c : colors[0])
      ++balance[c];
    for (auto c : colors[1])
      --balance[c];
    for (const auto &[c, diff] : balance)
      if (diff != 0) {
        out.status = SearchStatus::NotIsomorphic;
        out.reason = "color refinement histograms differ";
        return out;
      }

    std::map<std::uint32_t, std::size_t> class_size;
    for (auto c : colors[0])
      ++class_size[c];
    rarity_.resize(n_);
    for (std::size_t u = 0; u < n_; ++u)
      rarity_[u] = class_size[colors[0][u]];

    std::vector<Word> domains(n_ * words_, 0);
    for (std::size_t u = 0; u < n_; ++u)
      for (std::size_t v = 0; v < n_; ++v)
        if (colors[0][u] == colors[1][v])
          domains[u * words_ + v / kWordBits] |= Word{1} << (v % kWordBits);

    image_.assign(n_, kUnassigned);
    const Outcome outcome = extend(domains, 0);
    out.nodes = nodes_;
    if (outcome == Outcome::Found) {
      IsoCertificate cert{image_};
      if (!verify_iso(d1_, d2_, cert).ok)
        throw Error(ErrorKind::VerificationFailed, "search produced an invalid certificate");
      out.status = SearchStatus::Found;
      out.certificate = std::move(cert);
    } else if (outcome == Outcome::Exhausted) {
      out.status = SearchStatus::Exhausted;
      out.reason = "budget of " + std::to_string(budget_) + " node expansions exhausted";
    } else {
      out.status = SearchStatus::NotIsomorphic;
      out.reason = "search space exhausted without a consistent mapping";
    }
    return out;
  }

private:
  enum class Outcome { Found, Dead, Exhausted };
  static constexpr std::size_t kUnassigned = ~std::size_t{0};

  std::size_t domain_size(const std::vector<Word> &domains, std::size_t u) const {
    std::size_t total = 0;
    for (std::size_t w = 0; w < words_; ++w)
      total += static_cast<std::size_t>(std::popcount(domains[u * words_ + w]));
    return total;
  }

  // Smallest domain first, then rarer refinement color, then index.
  std::size_t pick(const std::vector<Word> &domains) const {
    std::size_t best = kUnassigned;
    std::tuple<std::size_t, std::size_t, std::size_t> best_key{};
    for (std::size_t u = 0; u < n_; ++u) {
      if (image_[u] != kUnassigned)
        continue;
      const auto key = std::tuple{domain_size(domains, u), rarity_[u], u};
      if (best == kUnassigned || key < best_key) {
        best = u;
        best_key = key;
      }
    }
    return best;
  }

  Outcome extend(const std::vector<Word> &domains, std::size_t depth) {
    if (depth == n_)
      return Outcome::Found;
    const std::size_t u = pick(domains);
    const std::vector<Word> dom(domains.begin() + static_cast<std::ptrdiff_t>(u * words_),
                                domains.begin() + static_cast<std::ptrdiff_t>((u + 1) * words_));
    std::vector<Word> next(domains.size());
    for (std::size_t w = 0; w < words_; ++w) {
      Word word = dom[w];
      while (word) {
        const std::size_t v = w * kWordBits + static_cast<std::size_t>(std::countr_zero(word));
        word &= word - 1;
        if (nodes_ == budget_)
          return Outcome::Exhausted;
        ++nodes_;
        if (d1_.has_loop(u) != d2_.has_loop(v))
          continue;
        image_[u] = v;
        if (forward_check(domains, next, u, v)) {
          const Outcome sub = extend(next, depth + 1);
          if (sub != Outcome::Dead)
            return sub;
        }
        image_[u] = kUnassigned;
      }
    }
    return Outcome::Dead;
  }

  bool forward_check(const std::vector<Word> &domains, std::vector<Word> &next, std::size_t u, std::size_t v) {
    const auto out_v = d2_.out_row(v);
    const auto in_v = in2_.row(v);
    for (std::size_t w = 0; w < n_; ++w) {
      if (image_[w] != kUnassigned)
        continue;
      const bool fwd = d1_.has_arc(u, w);
      const bool back = d1_.has_arc(w, u);
      Word any = 0;
      for (std::size_t i = 0; i < words_; ++i) {
        Word word = domains[w * words_ + i];
        word &= fwd ? out_v[i] : ~out_v[i];
        word &= back ? in_v[i] : ~in_v[i];
        if (i == v / kWordBits)
          word &= ~(Word{1} << (v % kWordBits));
        next[w * words_ + i] = word;
        any |= word;
      }
      if (!any)
        return false;
    }
    return true;
  }

  const Digraph &d1_;
  const Digraph &d2_;
  std::size_t n_;
  std::size_t words_;
  std::uint64_t budget_;
  BitMatrix in2_;
  std::vector<std::size_t> rarity_;
  std::vector<std::size_t> image_;
  std::uint64_t nodes_ = 0;
};

} // namespace

SearchResult brute_force_iso(const Digraph &d1, const Digraph &d2, std::uint64_t budget) {
  require_same_order(d1, d2);
  return Search(d1, d2, budget).run();
}

SearchResult brute_force_iso(const MonomialDigraph &d1, const MonomialDigraph &d2, std::uint64_t budget) {
  require_same_field(d1, d2);
  return brute_force_iso(d1.graph(), d2.graph(), budget);
}

unsigned exponent_representative(std::uint64_t residue, std::uint64_t q) {
  const std::uint64_t r = residue % (q - 1);
  return static_cast<unsigned>(r == 0 ? q - 1 : r);
}

std::set<std::pair<unsigned, unsigned>> conjectured_class(std::uint64_t q, unsigned m, unsigned n) {
  if (m < 1 || n < 1 || m > q - 1 || n > q - 1)
    throw Error(ErrorKind::InvalidExponent, "exponents must lie in [1, q-1]");
  std::set<std::pair<unsigned, unsigned>> orbit;
  const std::uint64_t order = q - 1;
  for (std::uint64_t k = 1; k <= order; ++k)
    if (gcd(k, order) == 1)
      orbit.emplace(exponent_representative(k * m, q), exponent_representative(k * n, q));
  return orbit;
}

std::optional<std::uint64_t> power_map_multiplier(std::uint64_t q, unsigned m1, unsigned n1, unsigned m2,
                                                  unsigned n2) {
  const std::uint64_t order = q - 1;
  for (std::uint64_t k = 1; k <= order; ++k)
    if (gcd(k, order) == 1 && k * m2 % order == m1 % order && k * n2 % order == n1 % order)
      return k;
  return std::nullopt;
}

std::string_view to_string(SearchStatus status) {
  switch (status) {
  case SearchStatus::Found: return "Found";
  case SearchStatus::NotIsomorphic: return "NotIsomorphic";
  case SearchStatus::Exhausted: return "Exhausted";
  }
  return "Unknown";
}

} // namespace mdl
