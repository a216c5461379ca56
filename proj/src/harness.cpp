#include "mdl/harness.hpp"

#include "mdl/digraph.hpp"
#include "mdl/error.hpp"
#include "mdl/patterns.hpp"
#include "mdl/poly.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

namespace mdl {

namespace {

std::vector<std::uint64_t> units_mod(std::uint64_t modulus) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t k = 1; k <= modulus; ++k)
    if (std::gcd(k, modulus) == 1)
      out.push_back(k);
  return out;
}

/// (m, n) in [1, q-1]^2 with mn = 1 (mod q-1), lexicographic.
std::vector<std::pair<unsigned, unsigned>> inverse_pairs(std::uint64_t q) {
  const std::uint64_t order = q - 1;
  std::vector<std::pair<unsigned, unsigned>> out;
  for (std::uint64_t m = 1; m <= order; ++m)
    for (std::uint64_t n = 1; n <= order; ++n)
      if (m * n % order == 1 % order)
        out.emplace_back(static_cast<unsigned>(m), static_cast<unsigned>(n));
  return out;
}

std::string describe(const NamedValues &values) {
  std::string out;
  for (const auto &[k, v] : values) {
    if (!out.empty())
      out += " ";
    out += k + "=" + std::to_string(v);
  }
  return out;
}

void add_meta(ScanReport &report, std::string key, std::string value) {
  report.meta.emplace_back(std::move(key), std::move(value));
}

void add_common_meta(ScanReport &report, std::string scan) {
  add_meta(report, "tool", kToolVersion);
  add_meta(report, "scan", std::move(scan));
  add_meta(report, "enumeration_cap", std::to_string(kEnumerationCap));
  add_meta(report, "digraph_cap", std::to_string(kMaxDigraphField));
}

} // namespace

void ScanReport::add(CheckRecord record) {
  if (!record.pass && !record.witness)
    record.witness = "check failed: " + describe(record.observed);
  CheckTally &tally = summary[record.check];
  ++tally.total;
  if (record.pass)
    ++tally.passed;
  else
    ++tally.failed;
  if (record.exhausted)
    ++tally.exhausted;
  records.push_back(std::move(record));
}

bool ScanReport::all_passed() const noexcept {
  return std::all_of(records.begin(), records.end(), [](const CheckRecord &r) { return r.pass; });
}

bool ScanReport::any_exhausted() const noexcept {
  return std::any_of(records.begin(), records.end(), [](const CheckRecord &r) { return r.exhausted; });
}

unsigned worker_count() {
  if (const char *env = std::getenv("MDL_THREADS")) {
    unsigned value = 0;
    const std::string_view text(env);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec == std::errc{} && ptr == text.data() + text.size() && value > 0)
      return value;
    throw Error(ErrorKind::InvalidArgument, "MDL_THREADS must be a positive integer, got '" + std::string(text) + "'");
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)> &fn) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count && !stop; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure)
              failure = std::current_exception();
            stop = true;
          }
        }
      });
  }
  if (failure)
    std::rethrow_exception(failure);
}

ScanReport run_theorem_scan(unsigned p_max, bool with_digraphs) {
  if (p_max < 3)
    throw Error(ErrorKind::InvalidArgument, "theorem scan needs p_max >= 3");

  struct Item {
    std::uint64_t p;
    unsigned e;
    std::uint64_t r = 0;
    std::optional<KFormulaCheck> k;
  };
  std::vector<Item> items;
  for (std::uint64_t p = 3; p <= p_max; p += 2)
    if (is_prime(p))
      for (std::uint64_t e : units_mod(p - 1))
        items.push_back(Item{p, static_cast<unsigned>(e), 0, std::nullopt});

  parallel_for(items.size(), [&](std::size_t i) {
    Item &item = items[i];
    const FieldCtx ctx = FieldCtx::prime(item.p);
    item.r = count_R(ctx, item.e);
    if (with_digraphs && item.p <= kMaxPatternHostField)
      item.k = verify_K_formula(ctx, item.e);
  });

  ScanReport report;
  add_common_meta(report, "theorem");
  add_meta(report, "p_max", std::to_string(p_max));
  add_meta(report, "digraphs", with_digraphs ? "p<=13" : "off");

  auto find = [&](std::uint64_t p, unsigned e) -> const Item & {
    return *std::find_if(items.begin(), items.end(), [&](const Item &it) { return it.p == p && it.e == e; });
  };
  for (std::uint64_t p = 3; p <= p_max; p += 2) {
    if (!is_prime(p))
      continue;
    for (auto [m, n] : inverse_pairs(p)) {
      const Item &im = find(p, m);
      const Item &in = find(p, n);
      CheckRecord rec;
      rec.check = "theorem";
      rec.params = {{"p", static_cast<std::int64_t>(p)}, {"m", m}, {"n", n}};
      rec.observed = {{"r_m", static_cast<std::int64_t>(im.r)}, {"r_n", static_cast<std::int64_t>(in.r)}};
      rec.pass = im.r == in.r;
      if (im.k && in.k) {
        rec.observed.emplace_back("count_k_m", static_cast<std::int64_t>(im.k->count_k));
        rec.observed.emplace_back("count_k_n", static_cast<std::int64_t>(in.k->count_k));
        rec.pass = rec.pass && im.k->count_k == in.k->count_k;
      }
      if (!rec.pass)
        rec.witness = "R or K counts differ for p=" + std::to_string(p) + " m=" + std::to_string(m) +
                      " n=" + std::to_string(n);
      report.add(std::move(rec));
    }
    for (const Item &item : items) {
      if (item.p != p || !item.k)
        continue;
      CheckRecord rec;
      rec.check = "k_formula";
      rec.params = {{"p", static_cast<std::int64_t>(p)}, {"n", item.e}};
      rec.observed = {{"count_k", static_cast<std::int64_t>(item.k->count_k)},
                      {"predicted", static_cast<std::int64_t>(item.k->predicted)}};
      rec.pass = item.k->holds;
      if (!rec.pass)
        rec.witness = "N(D,K)=" + std::to_string(item.k->count_k) + " but (p-1)R(n)=" +
                      std::to_string(item.k->predicted);
      report.add(std::move(rec));
    }
  }
  return report;
}

ScanReport run_exercise_scan(const std::vector<std::pair<std::uint64_t, unsigned>> &fields) {
  std::vector<FieldCtx> contexts;
  for (auto [p, k] : fields) {
    contexts.push_back(FieldCtx::extension(p, k));
    if (contexts.back().q() > kEnumerationCap)
      throw Error(ErrorKind::CapExceeded, "exercise scan needs q within the enumeration cap");
  }

  struct Item {
    std::size_t field;
    unsigned m, n;
    std::vector<CheckRecord> records;
  };
  std::vector<Item> items;
  for (std::size_t f = 0; f < contexts.size(); ++f)
    for (auto [m, n] : inverse_pairs(contexts[f].q()))
      items.push_back(Item{f, m, n, {}});

  parallel_for(items.size(), [&](std::size_t i) {
    Item &item = items[i];
    const FieldCtx &ctx = contexts[item.field];
    for (std::uint64_t a = 0; a < ctx.q(); ++a)
      for (std::uint64_t b = 0; b < ctx.q(); ++b) {
        const Element ea{static_cast<std::uint32_t>(a)}, eb{static_cast<std::uint32_t>(b)};
        const auto lhs = distinct_root_count(ctx, trinomial(ctx, item.m + 1, ea, eb)).distinct;
        const auto rhs = distinct_root_count(ctx, trinomial(ctx, item.n + 1, ea, ctx.pow(eb, item.m))).distinct;
        CheckRecord rec;
        rec.check = "exercise";
        rec.params = {{"p", static_cast<std::int64_t>(ctx.p())},
                      {"k", ctx.k()},
                      {"q", static_cast<std::int64_t>(ctx.q())},
                      {"m", item.m},
                      {"n", item.n},
                      {"a", static_cast<std::int64_t>(a)},
                      {"b", static_cast<std::int64_t>(b)}};
        rec.observed = {{"roots_m", static_cast<std::int64_t>(lhs)}, {"roots_n", static_cast<std::int64_t>(rhs)}};
        rec.pass = lhs == rhs;
        if (!rec.pass)
          rec.witness = "X^" + std::to_string(item.m + 1) + "+aX+b has " + std::to_string(lhs) + " roots, X^" +
                        std::to_string(item.n + 1) + "+aX+b^m has " + std::to_string(rhs);
        item.records.push_back(std::move(rec));
      }
  });

  ScanReport report;
  add_common_meta(report, "exercise");
  std::string names;
  for (const auto &ctx : contexts)
    names += (names.empty() ? "" : ",") + ctx.name();
  add_meta(report, "fields", names);
  for (Item &item : items)
    for (CheckRecord &rec : item.records)
      report.add(std::move(rec));
  return report;
}

ScanReport run_conjecture_scan(const FieldCtx &ctx, std::uint64_t budget) {
  const std::uint64_t q = ctx.q();
  if (q > kMaxConjectureField)
    throw Error(ErrorKind::CapExceeded, "conjecture scans are limited to q <= 7");
  if (q < 3)
    throw Error(ErrorKind::InvalidArgument, "conjecture scans need q >= 3");

  std::vector<std::pair<unsigned, unsigned>> params;
  for (unsigned m = 1; m < q; ++m)
    for (unsigned n = 1; n < q; ++n)
      params.emplace_back(m, n);
  std::vector<std::optional<MonomialDigraph>> digraphs(params.size());
  std::vector<Fingerprint> prints(params.size());
  parallel_for(params.size(), [&](std::size_t i) {
    digraphs[i] = build_monomial_digraph(ctx, params[i].first, params[i].second);
    prints[i] = fingerprint(*digraphs[i]);
  });
  auto index_of = [&](std::pair<unsigned, unsigned> mn) {
    return static_cast<std::size_t>(std::find(params.begin(), params.end(), mn) - params.begin());
  };

  // Conjectured classes, each listed by ascending (m, n).
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::size_t> class_of(params.size(), ~std::size_t{0});
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (class_of[i] != ~std::size_t{0})
      continue;
    std::vector<std::size_t> members;
    for (auto mn : conjectured_class(q, params[i].first, params[i].second))
      members.push_back(index_of(mn));
    for (std::size_t j : members)
      class_of[j] = classes.size();
    classes.push_back(std::move(members));
  }

  struct Job {
    std::size_t a, b;
    bool same_class;
    CheckRecord record;
    bool isomorphic = false;
  };
  std::vector<Job> jobs;
  for (const auto &members : classes)
    for (std::size_t x = 0; x < members.size(); ++x)
      for (std::size_t y = x + 1; y < members.size(); ++y)
        jobs.push_back(Job{members[x], members[y], true, {}});
  for (std::size_t c1 = 0; c1 < classes.size(); ++c1)
    for (std::size_t c2 = c1 + 1; c2 < classes.size(); ++c2)
      jobs.push_back(Job{classes[c1].front(), classes[c2].front(), false, {}});
  std::sort(jobs.begin(), jobs.end(), [](const Job &x, const Job &y) { return std::pair{x.a, x.b} < std::pair{y.a, y.b}; });

  parallel_for(jobs.size(), [&](std::size_t i) {
    Job &job = jobs[i];
    const auto [m1, n1] = params[job.a];
    const auto [m2, n2] = params[job.b];
    CheckRecord &rec = job.record;
    rec.check = "iso";
    rec.params = {{"p", static_cast<std::int64_t>(ctx.p())}, {"k", ctx.k()}, {"q", static_cast<std::int64_t>(q)},
                  {"m", m1},   {"n", n1},   {"m2", m2},  {"n2", n2}};
    const MonomialDigraph &d1 = *digraphs[job.a];
    const MonomialDigraph &d2 = *digraphs[job.b];
    std::int64_t nodes = 0;
    if (job.same_class) {
      const auto k = power_map_multiplier(q, m1, n1, m2, n2);
      if (!k)
        throw Error(ErrorKind::VerificationFailed, "class members without a power-map multiplier");
      power_map_iso(d1, d2, *k);
      job.isomorphic = true;
      rec.observed = {{"same_class", 1}, {"isomorphic", 1}, {"multiplier", static_cast<std::int64_t>(*k)}};
      rec.pass = true;
    } else if (!(prints[job.a] == prints[job.b])) {
      rec.observed = {{"same_class", 0}, {"isomorphic", 0}, {"fingerprint_differs", 1}};
      rec.pass = true;
    } else {
      const SearchResult found = brute_force_iso(d1, d2, budget);
      nodes = static_cast<std::int64_t>(found.nodes);
      rec.observed = {{"same_class", 0}, {"fingerprint_differs", 0}, {"nodes", nodes}};
      switch (found.status) {
      case SearchStatus::NotIsomorphic:
        rec.observed.emplace_back("isomorphic", 0);
        rec.pass = true;
        break;
      case SearchStatus::Found:
        job.isomorphic = true;
        rec.observed.emplace_back("isomorphic", 1);
        rec.pass = false;
        rec.witness = "counterexample: " + d1.name() + " and " + d2.name() +
                      " are isomorphic across conjectured classes; certificate " + found.certificate->to_json();
        break;
      case SearchStatus::Exhausted:
        rec.observed.emplace_back("isomorphic", -1);
        rec.pass = false;
        rec.exhausted = true;
        rec.witness = "budget exhausted after " + std::to_string(found.nodes) + " node expansions";
        break;
      }
    }
  });

  // Isomorphism classes from the certified pairs.
  std::vector<std::size_t> parent(params.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto root = [&](std::size_t x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Job &job : jobs)
    if (job.isomorphic)
      parent[root(job.a)] = root(job.b);
  std::size_t iso_classes = 0;
  for (std::size_t i = 0; i < params.size(); ++i)
    if (root(i) == i)
      ++iso_classes;

  ScanReport report;
  add_common_meta(report, "conjecture");
  add_meta(report, "field", ctx.name());
  add_meta(report, "budget", std::to_string(budget));
  std::optional<std::string> counterexample;
  bool exhausted = false;
  for (Job &job : jobs) {
    if (!job.record.pass && !job.record.exhausted && !counterexample)
      counterexample = digraphs[job.a]->name() + " ~ " + digraphs[job.b]->name();
    exhausted = exhausted || job.record.exhausted;
    report.add(std::move(job.record));
  }

  CheckRecord summary;
  summary.check = "conjecture";
  summary.params = {{"p", static_cast<std::int64_t>(ctx.p())}, {"k", ctx.k()}, {"q", static_cast<std::int64_t>(q)}};
  summary.observed = {{"digraphs", static_cast<std::int64_t>(params.size())},
                      {"class_count", static_cast<std::int64_t>(classes.size())},
                      {"iso_class_count", static_cast<std::int64_t>(iso_classes)}};
  if (counterexample) {
    report.verdict = "COUNTEREXAMPLE";
    summary.pass = false;
    summary.witness = *counterexample;
  } else if (exhausted) {
    report.verdict = "INCONCLUSIVE";
    summary.pass = false;
    summary.exhausted = true;
    summary.witness = "at least one pair exhausted the search budget";
  } else {
    report.verdict = "CONSISTENT";
    summary.pass = true;
  }
  report.add(std::move(summary));
  return report;
}

ReportFormat parse_report_format(std::string_view text) {
  if (text == "jsonl")
    return ReportFormat::Jsonl;
  if (text == "csv")
    return ReportFormat::Csv;
  throw Error(ErrorKind::InvalidArgument, "unknown report format '" + std::string(text) + "'");
}

namespace {

std::string csv_escape(const std::string &field) {
  if (field.find_first_of(",\"\n") == std::string::npos)
    return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + "\"";
}

const NamedValues::value_type *lookup(const NamedValues &values, const std::string &key) {
  auto it = std::find_if(values.begin(), values.end(), [&](const auto &kv) { return kv.first == key; });
  return it == values.end() ? nullptr : &*it;
}

void write_csv(const ScanReport &report, std::ostream &out) {
  const std::vector<std::string> fixed = {"p", "k", "q", "m", "n", "a", "b"};
  std::vector<std::string> extra_params, observed;
  for (const CheckRecord &rec : report.records) {
    for (const auto &[key, value] : rec.params)
      if (std::find(fixed.begin(), fixed.end(), key) == fixed.end() &&
          std::find(extra_params.begin(), extra_params.end(), key) == extra_params.end())
        extra_params.push_back(key);
    for (const auto &[key, value] : rec.observed)
      if (std::find(observed.begin(), observed.end(), key) == observed.end())
        observed.push_back(key);
  }

  out << "check";
  for (const auto &col : fixed)
    out << ',' << col;
  for (const auto &col : extra_params)
    out << ',' << col;
  for (const auto &col : observed)
    out << ',' << col;
  out << ",pass,witness\n";

  for (const CheckRecord &rec : report.records) {
    out << csv_escape(rec.check);
    for (const auto &col : fixed) {
      out << ',';
      if (const auto *kv = lookup(rec.params, col))
        out << kv->second;
    }
    for (const auto &col : extra_params) {
      out << ',';
      if (const auto *kv = lookup(rec.params, col))
        out << kv->second;
    }
    for (const auto &col : observed) {
      out << ',';
      if (const auto *kv = lookup(rec.observed, col))
        out << kv->second;
    }
    out << ',' << (rec.pass ? "true" : "false") << ',';
    if (rec.witness)
      out << csv_escape(*rec.witness);
    out << '\n';
  }
}

void write_jsonl(const ScanReport &report, std::ostream &out) {
  for (const CheckRecord &rec : report.records) {
    nlohmann::ordered_json line;
    line["check"] = rec.check;
    line["params"] = nlohmann::ordered_json::object();
    for (const auto &[key, value] : rec.params)
      line["params"][key] = value;
    line["observed"] = nlohmann::ordered_json::object();
    for (const auto &[key, value] : rec.observed)
      line["observed"][key] = value;
    line["pass"] = rec.pass;
    if (rec.witness)
      line["witness"] = *rec.witness;
    out << line.dump() << '\n';
  }
}

} // namespace

void emit_report(const ScanReport &report, ReportFormat format, std::ostream &out) {
  if (format == ReportFormat::Jsonl)
    write_jsonl(report, out);
  else
    write_csv(report, out);
  out.flush();
  if (!out)
    throw Error(ErrorKind::IoFailure, "failed to write report");
}

int exit_code(const ScanReport &report) {
  const bool hard_failure =
      std::any_of(report.records.begin(), report.records.end(), [](const CheckRecord &r) { return !r.pass && !r.exhausted; });
  if (hard_failure)
    return 1;
  if (report.any_exhausted())
    return 3;
  return 0;
}

std::vector<std::pair<std::uint64_t, unsigned>> parse_field_list(std::string_view text) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view item = text.substr(pos, comma - pos);
    const std::size_t caret = item.find('^');
    std::uint64_t p = 0;
    unsigned k = 1;
    auto parse = [&](std::string_view digits, auto &value) {
      const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
      if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size())
        throw Error(ErrorKind::ParseError, "bad field '" + std::string(item) + "', expected p or p^k");
    };
    parse(item.substr(0, caret), p);
    if (caret != std::string_view::npos)
      parse(item.substr(caret + 1), k);
    out.emplace_back(p, k);
    pos = comma + 1;
  }
  return out;
}

} // namespace mdl
