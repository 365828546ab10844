#include "cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "weilcode/codes.hpp"
#include "weilcode/sums.hpp"

namespace weilcode::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t parse_u64(std::string_view s, const std::string& what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw UsageError("bad " + what + " '" + std::string(s) + "'");
  return v;
}

// "2,0,1,0" (power basis, zero-padded) or "g^17".
FqElem parse_element(const Field& f, const std::string& text) {
  if (text.rfind("g^", 0) == 0) {
    return f.pow(f.g(), parse_u64(std::string_view(text).substr(2), "exponent in element literal"));
  }
  std::vector<std::uint32_t> coeffs;
  std::string_view rest = text;
  while (true) {
    const auto comma = rest.find(',');
    const std::uint64_t c = parse_u64(rest.substr(0, comma), "coefficient in element literal");
    if (c >= f.p()) throw UsageError("element literal '" + text + "': coefficient not in [0, p)");
    coeffs.push_back(static_cast<std::uint32_t>(c));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (coeffs.size() > f.degree()) throw UsageError("element literal '" + text + "' has more than d coefficients");
  return f.from_coeffs(coeffs);
}

std::string coeff_literal(const FqElem& v) {
  std::string s;
  for (std::size_t j = 0; j < v.coeffs.size(); ++j) s += (j ? "," : "") + std::to_string(v.coeffs[j]);
  return s;
}

std::string index_literal(const Field& f, const FqElem& v) {
  return f.is_zero(v) ? std::string("0") : "g^" + std::to_string(f.index(v));
}

std::string both_literals(const Field& f, const FqElem& v) {
  return coeff_literal(v) + " (" + index_literal(f, v) + ")";
}

std::string approx(const CycInt& v) {
  const auto z = v.to_complex();
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.6f%+.6fi", z.real() + 0.0, z.imag() + 0.0);
  return buf;
}

class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot open output file '" + path + "'");
      out_ = &file_;
    }
  }
  std::ostream& operator*() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

struct Options {
  std::uint64_t p = 0, N = 0, wp = 0;
  unsigned m = 0;
  std::string a = "0", b = "0";
  std::string method = "both";
  bool approx = false;
  std::string output;
  std::uint64_t cap = 1'000'000'000;
  int threads = 0;
  std::string n, k, d;
  std::uint64_t field_size = 3;
};

CodeCaps caps_of(const Options& o) {
  CodeCaps caps;
  caps.census_work = o.cap;
  return caps;
}

int weil_eval(const Options& o, std::ostream& out, std::ostream& err) {
  const Field f = Field::make(o.p, o.N);
  const FqElem a = parse_element(f, o.a);
  const FqElem b = parse_element(f, o.b);
  const bool two = f.shape().kind == ModulusShape::kTwo;

  std::vector<SumResult> results;
  if (o.method == "brute") {
    results.push_back({brute_snab(f, a, b), SumMethod::kBrute});
  } else if (o.method == "closed") {
    if (two) {
      results.push_back({direct_s2(static_cast<std::uint32_t>(f.p()), a.coeffs[0], b.coeffs[0]), SumMethod::kDirectN2});
    } else {
      results.push_back({closed_snab(f, a, b), SumMethod::kThm33});
    }
  } else {
    results = evaluate_all(f, a, b);
  }

  out << "field " << f.describe() << '\n';
  out << "a = " << both_literals(f, a) << "  b = " << both_literals(f, b) << '\n';
  if (f.is_zero(b)) out << "b = 0: S_N(a, 0) = (q-1)/N * S_N(a), (q-1)/N = " << f.cofactor() << '\n';
  for (const auto& r : results) {
    out << method_name(r.method) << '\t' << r.value.to_string();
    if (o.approx) out << '\t' << approx(r.value);
    out << '\n';
  }
  for (const auto& r : results) {
    if (!(r.value == results.front().value)) {
      err << "FAIL " << method_name(r.method) << " disagrees with " << method_name(results.front().method) << '\n';
      return kVerifyFailed;
    }
  }
  if (results.size() > 1) err << "all " << results.size() << " methods agree\n";
  return kOk;
}

int weil_verify(const Options& o, std::ostream& out, std::ostream& err) {
  const Field f = Field::make(o.p, o.N);
  const std::uint64_t q = f.order();
  if (q > (std::uint64_t{1} << 20) || q * q > o.cap / (q - 1)) {
    throw UsageError("weil-verify: q^2 (q-1) = work exceeds --cap " + std::to_string(o.cap));
  }
  const bool two = f.shape().kind == ModulusShape::kTwo;
  const auto p = static_cast<std::uint32_t>(f.p());
  for (std::uint64_t ca = 0; ca < q; ++ca) {
    const FqElem a = f.from_code(ca);
    for (std::uint64_t cb = 0; cb < q; ++cb) {
      const FqElem b = f.from_code(cb);
      const CycInt brute = brute_snab(f, a, b);
      const CycInt closed = two ? direct_s2(p, a.coeffs[0], b.coeffs[0]) : closed_snab(f, a, b);
      if (!(brute == closed)) {
        out << "FAIL a=" << both_literals(f, a) << " b=" << both_literals(f, b) << '\n'
            << "  brute  " << brute.to_string() << '\n'
            << "  closed " << closed.to_string() << '\n';
        err << "first mismatch after " << ca * q + cb << " agreeing pairs\n";
        return kVerifyFailed;
      }
    }
  }
  out << "PASS " << q << '*' << q << " pairs\n";
  return kOk;
}

int trace_table(const Options& o, std::ostream& out, std::ostream& err) {
  const Field f = Field::make(o.p, o.N);
  out << "field " << f.describe() << '\n';
  out << "j\ttable\ttable_mod_p\tdirect\n";
  int bad = 0;
  for (std::uint64_t j = 0; j < 2 * f.N(); ++j) {
    const std::int64_t formula = trace_of_xi_power_integer(f, j);
    const std::uint32_t reduced = trace_of_xi_power(f, j);
    const std::uint32_t direct = f.trace_frobenius(f.xi_pow(j));
    out << j << '\t' << formula << '\t' << reduced << '\t' << direct << (reduced == direct ? "" : "\tMISMATCH") << '\n';
    bad += reduced != direct;
  }
  if (bad) {
    err << "FAIL " << bad << " of " << 2 * f.N() << " rows disagree\n";
    return kVerifyFailed;
  }
  err << "PASS " << 2 * f.N() << " rows\n";
  return kOk;
}

int code_build(const Options& o, std::ostream& out, std::ostream& err) {
  const Field f = code_field(o.wp, o.m);
  CodeCaps caps = caps_of(o);
  const LinearCode code = build_code(f, caps);
  Sink sink(o.output, out);
  *sink << generator_to_text(code);
  err << "[n, k] = [" << code.n << ", " << code.k << "] over F_3, field " << f.describe() << '\n';
  return kOk;
}

void print_prediction(const PredictedParameters& pp, std::ostream& err) {
  err << "predicted: n=" << pp.n << " k=" << pp.k << " w1=" << pp.w1 << " (x" << pp.a_w1 << ") w2=" << pp.w2 << " (x"
      << pp.a_w2 << ")\n";
}

int code_weights(const Options& o, std::ostream& out, std::ostream& err) {
  const PredictedParameters pp = predicted_parameters(o.wp, o.m);
  print_prediction(pp, err);
  if (pp.q > Field::kTableLimit) {
    err << "q = " << pp.q << " is beyond the enumeration cap; formula values only\n";
    return kOk;
  }
  const Field f = code_field(o.wp, o.m);
  const CodeCaps caps = caps_of(o);
  const LinearCode code = build_code(f, caps);
  const WeightDistribution wd = brute_weight_distribution(code, caps);
  Sink sink(o.output, out);
  *sink << wd.to_tsv();

  WeightDistribution expected;
  expected.counts[0] = 1;
  expected.counts[static_cast<std::uint64_t>(pp.w1)] += static_cast<std::uint64_t>(pp.a_w1);
  expected.counts[static_cast<std::uint64_t>(pp.w2)] += static_cast<std::uint64_t>(pp.a_w2);
  const bool match = code.n == pp.n && code.k == pp.k && wd == expected;
  err << (match ? "MATCH" : "MISMATCH") << " enumerated census vs predicted two-weight distribution\n";
  return match ? kOk : kVerifyFailed;
}

int code_dual(const Options& o, std::ostream& out, std::ostream& err) {
  const Field f = code_field(o.wp, o.m);
  const CodeCaps caps = caps_of(o);
  const LinearCode code = build_code(f, caps);
  const DualAnalysis da = dual_analysis(f, code, caps);
  out << "dual [" << da.n << ", " << da.k_dual << ", " << (da.exact ? "" : ">=") << da.d_dual << "]\n";
  out << "negation pair: positions " << da.negation_pair.first << ", " << da.negation_pair.second << " ("
      << coeff_literal(code.defining_set[da.negation_pair.first]) << " / "
      << coeff_literal(code.defining_set[da.negation_pair.second]) << ")"
      << (da.negation_pair_in_dual ? " weight-2 dual codeword" : " NOT in dual") << '\n';
  const bool ok = da.exact && da.d_dual == 2 && da.k_dual + code.k == code.n && da.negation_pair_in_dual;
  err << (ok ? "MATCH" : "MISMATCH") << " predicted dual parameters [n, n-k, 2]\n";
  return ok ? kOk : kVerifyFailed;
}

int code_optimal(const Options& o, std::ostream& out, std::ostream& err) {
  BigInt n, k, d;
  std::uint64_t fs = o.field_size;
  if (o.wp != 0) {
    const PredictedParameters pp = predicted_parameters(o.wp, o.m);
    n = pp.n;
    k = pp.n - pp.k;
    d = 2;
    fs = 3;
    out << "dual of (wp=" << o.wp << ", m=" << o.m << "): [" << n << ", " << k << ", " << d << "] over F_3\n";
    out << "n > (q-1)/2: " << (2 * n > pp.q - 1 ? "yes" : "no") << '\n';
    if (o.m == 1) err << "note: m = 1 lies outside the m > 1 hypothesis for the dual-code results\n";
  } else {
    if (o.n.empty() || o.k.empty() || o.d.empty()) throw UsageError("code-optimal needs --wp/--m or all of --n --k --d");
    try {
      n = BigInt(o.n);
      k = BigInt(o.k);
      d = BigInt(o.d);
    } catch (const std::exception&) {
      throw UsageError("code-optimal: --n, --k, --d must be integers");
    }
  }
  const bool opt = sphere_packing_optimal(n, k, d, fs);
  out << "sphere-packing optimal: " << (opt ? "true" : "false") << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact binomial Weil sums over cyclotomic fields and ternary two-weight codes", "weilcode"};
  app.require_subcommand(1);
  Options o;

  auto field_opts = [&](CLI::App* sub) {
    sub->add_option("--p", o.p, "characteristic (odd prime, primitive root mod N)")->required();
    sub->add_option("--N", o.N, "N in {2, 4, wp^m, 2wp^m}")->required();
  };
  auto code_opts = [&](CLI::App* sub) {
    sub->add_option("--wp", o.wp, "odd prime wp != 3 with 3 primitive mod wp^m")->required();
    sub->add_option("--m", o.m, "exponent m >= 1")->required();
  };
  auto common = [&](CLI::App* sub) {
    sub->add_option("--cap", o.cap, "enumeration work cap")->check(CLI::PositiveNumber);
    sub->add_option("--threads", o.threads, "OpenMP threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
  };

  std::vector<std::pair<CLI::App*, std::function<int(const Options&, std::ostream&, std::ostream&)>>> cmds;

  auto* eval = app.add_subcommand("weil-eval", "evaluate S_N(a, b)");
  field_opts(eval);
  eval->add_option("--a", o.a, "element: \"c0,c1,...\" or \"g^k\"");
  eval->add_option("--b", o.b, "element: \"c0,c1,...\" or \"g^k\"");
  eval->add_option("--method", o.method)->check(CLI::IsMember({"brute", "closed", "both"}));
  eval->add_flag("--approx", o.approx, "append a complex approximation");
  common(eval);
  cmds.emplace_back(eval, weil_eval);

  auto* verify = app.add_subcommand("weil-verify", "compare closed form and brute force over all (a, b)");
  field_opts(verify);
  common(verify);
  cmds.emplace_back(verify, weil_verify);

  auto* table = app.add_subcommand("trace-table", "closed-form Tr(xi^j) next to direct traces, j < 2N");
  field_opts(table);
  cmds.emplace_back(table, trace_table);

  auto* build = app.add_subcommand("code-build", "generator matrix of C_D");
  code_opts(build);
  build->add_option("--output", o.output, "write the matrix here instead of stdout");
  common(build);
  cmds.emplace_back(build, code_build);

  auto* weights = app.add_subcommand("code-weights", "weight distribution TSV plus predicted-vs-enumerated verdict");
  code_opts(weights);
  weights->add_option("--output", o.output, "write the TSV here instead of stdout");
  common(weights);
  cmds.emplace_back(weights, code_weights);

  auto* dual = app.add_subcommand("code-dual", "dual code parameters");
  code_opts(dual);
  common(dual);
  cmds.emplace_back(dual, code_dual);

  auto* optimal = app.add_subcommand("code-optimal", "sphere-packing optimality");
  optimal->add_option("--wp", o.wp, "derive dual parameters from (wp, m)");
  optimal->add_option("--m", o.m);
  optimal->add_option("--n", o.n);
  optimal->add_option("--k", o.k);
  optimal->add_option("--d", o.d);
  optimal->add_option("--field", o.field_size, "alphabet size")->check(CLI::Range(std::uint64_t{2}, ~std::uint64_t{0}));
  cmds.emplace_back(optimal, code_optimal);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  if (o.threads > 0) omp_set_num_threads(o.threads);
  for (auto& [sub, fn] : cmds) {
    if (!sub->parsed()) continue;
    try {
      return fn(o, out, err);
    } catch (const UsageError& e) {
      err << "usage error: " << e.what() << '\n';
    } catch (const std::invalid_argument& e) {
      // UnsupportedError included: the message names the violated precondition.
      err << "usage error: " << e.what() << '\n';
    } catch (const std::out_of_range& e) {
      err << "usage error: " << e.what() << '\n';
    } catch (const std::domain_error& e) {
      err << "usage error: " << e.what() << '\n';
    }
    return kUsage;
  }
  return kUsage;
}

}  // namespace weilcode::cli
