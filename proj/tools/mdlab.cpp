// mdlab: command-line laboratory for monomial digraphs over finite fields.

#include "mdl/digraph.hpp"
#include "mdl/error.hpp"
#include "mdl/harness.hpp"
#include "mdl/iso.hpp"
#include "mdl/patterns.hpp"
#include "mdl/poly.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace mdl;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct FieldArgs {
  std::uint64_t p = 0;
  unsigned k = 1;

  void add_to(CLI::App *cmd, bool with_degree = true) {
    cmd->add_option("--p", p, "Field characteristic")->required();
    if (with_degree)
      cmd->add_option("--k", k, "Extension degree")->capture_default_str();
  }
  FieldCtx field() const { return FieldCtx::extension(p, k); }
};

// Negative codes are reduced mod p, which only makes sense in a prime field.
Element element_arg(const FieldCtx &ctx, std::int64_t value) {
  if (value < 0) {
    if (!ctx.is_prime_field())
      throw Error(ErrorKind::InvalidArgument, "negative element codes are only accepted for prime fields");
    return ctx.from_int(value);
  }
  if (ctx.is_prime_field())
    return ctx.from_int(value);
  return ctx.element(static_cast<std::uint64_t>(value));
}

std::pair<unsigned, unsigned> exponent_pair(const std::string &text) {
  const auto comma = text.find(',');
  std::size_t used_m = 0, used_n = 0;
  try {
    if (comma == std::string::npos)
      throw std::invalid_argument("missing comma");
    const unsigned long m = std::stoul(text.substr(0, comma), &used_m);
    const unsigned long n = std::stoul(text.substr(comma + 1), &used_n);
    if (used_m != comma || used_n != text.size() - comma - 1)
      throw std::invalid_argument("trailing characters");
    return {static_cast<unsigned>(m), static_cast<unsigned>(n)};
  } catch (const std::logic_error &) {
    throw Error(ErrorKind::ParseError, "expected M,N but got '" + text + "'");
  }
}

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::IoFailure, "cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_text(const std::string &path, const std::string &text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out)
    throw Error(ErrorKind::IoFailure, "cannot write " + path);
}

struct ReportArgs {
  std::string out = "-";
  std::string format = "jsonl";

  void add_to(CLI::App *cmd) {
    cmd->add_option("--out", out, "Report path, '-' for stdout")->capture_default_str();
    cmd->add_option("--format", format, "jsonl or csv")->check(CLI::IsMember({"jsonl", "csv"}))->capture_default_str();
  }

  int emit(const ScanReport &report) const {
    const ReportFormat fmt = parse_report_format(format);
    if (out == "-") {
      emit_report(report, fmt, std::cout);
    } else {
      std::ofstream file(out, std::ios::binary);
      if (!file)
        throw Error(ErrorKind::IoFailure, "cannot open " + out);
      emit_report(report, fmt, file);
    }
    for (const auto &[check, tally] : report.summary)
      std::cerr << check << ": " << tally.passed << "/" << tally.total << " passed\n";
    if (report.summary.empty())
      std::cerr << "no records\n";
    if (report.verdict)
      std::cerr << "verdict: " << *report.verdict << '\n';
    return exit_code(report);
  }
};

int cmd_build(const FieldArgs &f, std::uint64_t m, std::uint64_t n, const std::string &dot) {
  const MonomialDigraph d = build_monomial_digraph(f.field(), m, n);
  std::cout << d.name() << " over " << d.field().name() << ": " << d.order() << " vertices, "
            << d.graph().arc_count() << " arcs\nloops:";
  for (const Vertex &v : d.loop_vertices())
    std::cout << ' ' << d.label(d.index(v));
  std::cout << '\n';
  if (!dot.empty())
    write_text(dot, export_dot(d));
  return kExitOk;
}

int cmd_roots(const FieldArgs &f, unsigned degree, std::int64_t a, std::int64_t b, bool list,
              const std::string &method) {
  const FieldCtx ctx = f.field();
  const Poly poly = trinomial(ctx, degree, element_arg(ctx, a), element_arg(ctx, b));
  RootMethod how = parse_root_method(method);
  if (list && how == RootMethod::Gcd)
    throw Error(ErrorKind::InvalidArgument, "--list needs an enumerating method");
  if (list && how == RootMethod::Auto)
    how = RootMethod::Both;
  const RootCount count = distinct_root_count(ctx, poly, how);
  std::cout << to_string(poly) << " over " << ctx.name() << ": " << count.distinct << " distinct roots\n";
  if (list && count.roots) {
    std::cout << "roots:";
    for (Element r : *count.roots)
      std::cout << ' ' << r.code;
    std::cout << '\n';
  }
  return kExitOk;
}

int cmd_count_k(const FieldArgs &f, std::uint64_t m, std::uint64_t n) {
  const FieldCtx ctx = f.field();
  const MonomialDigraph d = build_monomial_digraph(ctx, m, n);
  const std::uint64_t count = count_K(d);
  std::cout << "N(" << d.name() << ", K) = " << count << '\n';
  if (d.m() == 1 && ctx.p() != 2) {
    const KFormulaCheck check = verify_K_formula(ctx, d.n());
    std::cout << "(q-1)*R(" << d.n() << ") = " << check.predicted << (check.holds ? " (agrees)" : " (DISAGREES)")
              << '\n';
    return check.holds ? kExitOk : kExitFailed;
  }
  return kExitOk;
}

int cmd_count_pattern(const FieldArgs &f, std::uint64_t m, std::uint64_t n, const std::string &path) {
  const MonomialDigraph d = build_monomial_digraph(f.field(), m, n);
  const Pattern h = parse_pattern(read_file(path));
  const PatternCount count = count_pattern(d, h);
  std::cout << "injections " << count.injections << ", |Aut| " << count.aut << ", subdigraphs " << count.subdigraphs
            << '\n';
  return kExitOk;
}

int cmd_iso(const FieldArgs &f, const std::string &d1_text, const std::string &d2_text, std::uint64_t budget,
            bool assert_iso, const std::string &cert_out) {
  const FieldCtx ctx = f.field();
  const auto [m1, n1] = exponent_pair(d1_text);
  const auto [m2, n2] = exponent_pair(d2_text);
  const MonomialDigraph d1 = build_monomial_digraph(ctx, m1, n1);
  const MonomialDigraph d2 = build_monomial_digraph(ctx, m2, n2);
  std::cout << d1.name() << " vs " << d2.name() << '\n';

  const auto cls = conjectured_class(ctx.q(), d1.m(), d1.n());
  const bool same_class = cls.contains({d2.m(), d2.n()});
  std::cout << "conjectured class of " << d1.name() << ": " << cls.size() << " member(s); "
            << (same_class ? "contains " : "does not contain ") << d2.name() << '\n';

  std::optional<IsoCertificate> cert;
  SearchStatus status = SearchStatus::NotIsomorphic;
  if (const auto k = power_map_multiplier(ctx.q(), d1.m(), d1.n(), d2.m(), d2.n())) {
    cert = power_map_iso(d1, d2, *k);
    status = SearchStatus::Found;
    std::cout << "power map (x,y) -> (x^" << *k << ",y) verified\n";
  } else if (!(fingerprint(d1) == fingerprint(d2))) {
    std::cout << "fingerprints differ: not isomorphic\n";
  } else {
    const SearchResult result = brute_force_iso(d1, d2, budget);
    status = result.status;
    std::cout << "search: " << to_string(result.status) << " after " << result.nodes << " nodes";
    if (!result.reason.empty())
      std::cout << " (" << result.reason << ")";
    std::cout << '\n';
    cert = result.certificate;
  }
  if (cert && !cert_out.empty())
    write_text(cert_out, cert->to_json() + "\n");

  std::cout << "result: " << to_string(status) << '\n';
  if (status == SearchStatus::Exhausted)
    return kExitBudget;
  if (assert_iso && status != SearchStatus::Found)
    return kExitFailed;
  return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Monomial digraph laboratory"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);
  std::function<int()> action;

  FieldArgs field;
  std::uint64_t m = 0, n = 0;
  std::string dot;
  auto *build = app.add_subcommand("build", "Construct D(q;m,n) and optionally export DOT");
  field.add_to(build);
  build->add_option("--m", m)->required();
  build->add_option("--n", n)->required();
  build->add_option("--dot", dot, "DOT output path, '-' for stdout");
  build->callback([&] { action = [&] { return cmd_build(field, m, n, dot); }; });

  unsigned degree = 0;
  std::int64_t a = 0, b = 0;
  bool list = false;
  std::string method = "auto";
  auto *roots = app.add_subcommand("roots", "Count distinct roots of X^D + aX + b");
  field.add_to(roots);
  roots->add_option("--degree", degree)->required();
  roots->add_option("--a", a)->required();
  roots->add_option("--b", b)->required();
  roots->add_flag("--list", list, "Print the roots");
  roots->add_option("--method", method)->check(CLI::IsMember({"bruteforce", "gcd", "both", "auto"}));
  roots->callback([&] { action = [&] { return cmd_roots(field, degree, a, b, list, method); }; });

  auto *count_k = app.add_subcommand("count-k", "Count copies of K (two loops plus an arc)");
  field.add_to(count_k, false);
  count_k->add_option("--m", m)->required();
  count_k->add_option("--n", n)->required();
  count_k->callback([&] { action = [&] { return cmd_count_k(field, m, n); }; });

  std::string pattern_path;
  auto *count_pat = app.add_subcommand("count-pattern", "Count subdigraphs isomorphic to a pattern file");
  field.add_to(count_pat);
  count_pat->add_option("--m", m)->required();
  count_pat->add_option("--n", n)->required();
  count_pat->add_option("--pattern", pattern_path, "Order on line 1, then one 's t' arc per line")->required();
  count_pat->callback([&] { action = [&] { return cmd_count_pattern(field, m, n, pattern_path); }; });

  std::string d1, d2, cert_out;
  std::uint64_t budget = kDefaultSearchBudget;
  bool assert_iso = false;
  auto *iso = app.add_subcommand("iso", "Decide isomorphism of two monomial digraphs");
  field.add_to(iso);
  iso->add_option("--d1", d1, "M1,N1")->required();
  iso->add_option("--d2", d2, "M2,N2")->required();
  iso->add_option("--budget", budget)->capture_default_str();
  iso->add_flag("--assert-iso", assert_iso, "Exit 1 unless an isomorphism is found");
  iso->add_option("--cert-out", cert_out, "Write the certificate as a JSON array");
  iso->callback([&] { action = [&] { return cmd_iso(field, d1, d2, budget, assert_iso, cert_out); }; });

  unsigned pmax = 0;
  bool digraphs = false;
  ReportArgs report_args;
  auto *theorem = app.add_subcommand("theorem", "Scan R(m) = R(n) over odd primes");
  theorem->add_option("--pmax", pmax)->required();
  theorem->add_flag("--digraphs", digraphs, "Also count K in D(p;1,m) for p <= 13");
  report_args.add_to(theorem);
  theorem->callback([&] { action = [&] { return report_args.emit(run_theorem_scan(pmax, digraphs)); }; });

  std::string fields;
  auto *exercise = app.add_subcommand("exercise", "Scan the trinomial root-count identity over GF(q)");
  exercise->add_option("--fields", fields, "p1^k1,p2^k2,...")->required();
  report_args.add_to(exercise);
  exercise->callback([&] { action = [&] { return report_args.emit(run_exercise_scan(parse_field_list(fields))); }; });

  auto *conjecture = app.add_subcommand("conjecture", "Compare isomorphism classes with power-map orbits");
  field.add_to(conjecture);
  conjecture->add_option("--budget", budget)->capture_default_str();
  report_args.add_to(conjecture);
  conjecture->callback(
      [&] { action = [&] { return report_args.emit(run_conjecture_scan(field.field(), budget)); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    return action();
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::VerificationFailed ? kExitFailed : kExitUsage;
  }
}
