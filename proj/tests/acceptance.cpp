// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
// `acceptance --slow` additionally brute-forces one S_N(a, b) at q = 3^20.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "weilcode/codes.hpp"
#include "weilcode/sums.hpp"

using namespace weilcode;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Check {
 public:
  explicit Check(Outcome& o) : o_(o) {}
  // Records the first failure only; later ones add nothing.
  void require(bool ok, const std::string& what) {
    if (!ok && o_.pass) {
      o_.pass = false;
      o_.detail = what;
    }
  }

 private:
  Outcome& o_;
};

FqElem random_elem(const Field& f, std::mt19937_64& rng) { return f.from_code(rng() % f.order()); }

std::string field_tag(const Field& f) {
  return "(p=" + std::to_string(f.p()) + ",N=" + std::to_string(f.N()) + ")";
}

// closed_sn == brute_sn for every a in F_q
void exhaustive_sn(const Field& f, Check& c, std::uint64_t& cases) {
  for (std::uint64_t code = 0; code < f.order(); ++code) {
    const FqElem a = f.from_code(code);
    c.require(closed_sn(f, a) == brute_sn(f, a), field_tag(f) + " a=" + std::to_string(code));
    ++cases;
  }
}

Outcome c1() {
  Outcome o;
  Check c(o);
  std::uint64_t cases = 0;
  for (std::uint64_t N : {5u, 7u}) {
    const Field f = Field::make(3, N);
    exhaustive_sn(f, c, cases);
    // the full sum over F_q^* agrees with the scaled closed form as well
    for (std::uint64_t code = 0; code < f.order(); ++code) {
      const FqElem a = f.from_code(code);
      c.require(brute_snab(f, a, f.zero()) == closed_sn(f, a).scaled(static_cast<std::int64_t>(f.cofactor())),
                field_tag(f) + " S_N(a,0)");
    }
  }
  o.detail = o.pass ? std::to_string(cases) + " elements" : o.detail;
  return o;
}

Outcome c2() {
  Outcome o;
  Check c(o);
  std::uint64_t cases = 0;
  for (std::uint64_t p : {3u, 7u, 11u}) exhaustive_sn(Field::make(p, 4), c, cases);
  o.detail = o.pass ? std::to_string(cases) + " elements" : o.detail;
  return o;
}

Outcome c3() {
  Outcome o;
  Check c(o);
  std::uint64_t cases = 0;
  exhaustive_sn(Field::make(3, 10), c, cases);
  exhaustive_sn(Field::make(5, 18), c, cases);
  o.detail = o.pass ? std::to_string(cases) + " elements" : o.detail;
  return o;
}

Outcome c4() {
  Outcome o;
  Check c(o);
  std::uint64_t cases = 0;
  exhaustive_sn(Field::make(5, 9), c, cases);
  o.detail = o.pass ? std::to_string(cases) + " elements" : o.detail;
  return o;
}

// chi(xi^k c) sqrt(q) - (sqrt(q) + 1) S_N(c) / den, or nullopt when den does not divide.
std::optional<CycInt> reduction_with_denominator(const Field& f, const FqElem& a, const FqElem& b, std::int64_t den) {
  const FqElem cc = f.mul(a, f.inv(f.pow(b, f.cofactor())));
  const FqElem shifted = f.mul(cc, f.pow(f.xi(), power_sum_shift(f)));
  const auto sq = static_cast<std::int64_t>(f.sqrt_order());
  try {
    return character(f, shifted).scaled(sq) - closed_sn(f, cc).scaled(sq + 1).divided_exact(den);
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
}

Outcome c5() {
  Outcome o;
  Check c(o);
  std::mt19937_64 rng(20240505);
  std::uint64_t pairs = 0;
  std::ostringstream note;

  auto compare = [&](const Field& f, const FqElem& a, const FqElem& b) {
    c.require(closed_snab(f, a, b) == brute_snab(f, a, b),
              field_tag(f) + " a=" + std::to_string(f.code(a)) + " b=" + std::to_string(f.code(b)));
    ++pairs;
  };
  for (std::uint64_t N : {5u, 10u}) {
    const Field f = Field::make(3, N);
    for (std::uint64_t ca = 0; ca < f.order(); ++ca) {
      for (std::uint64_t cb = 0; cb < f.order(); ++cb) compare(f, f.from_code(ca), f.from_code(cb));
    }
  }
  for (auto [p, N] : {std::pair<std::uint64_t, std::uint64_t>{3, 7}, {3, 14}, {5, 9}, {5, 18}}) {
    const Field f = Field::make(p, N);
    for (int t = 0; t < 10000; ++t) compare(f, random_elem(f, rng), random_elem(f, rng));
  }

  // Denominator N against wp^m on the fields where they differ.
  for (auto [p, N] : {std::pair<std::uint64_t, std::uint64_t>{3, 10}, {5, 18}}) {
    const Field f = Field::make(p, N);
    const auto wpm = static_cast<std::int64_t>(N / 2);
    std::uint64_t n_ok = 0, wpm_ok = 0, tried = 0;
    for (int t = 0; t < 2000; ++t) {
      FqElem a = random_elem(f, rng), b = random_elem(f, rng);
      if (f.is_zero(a) || f.is_zero(b)) continue;
      const CycInt brute = brute_snab(f, a, b);
      const auto with_n = reduction_with_denominator(f, a, b, static_cast<std::int64_t>(N));
      const auto with_wpm = reduction_with_denominator(f, a, b, wpm);
      n_ok += with_n && *with_n == brute;
      wpm_ok += with_wpm && *with_wpm == brute;
      ++tried;
    }
    c.require(n_ok == tried, field_tag(f) + " denominator N failed");
    c.require(wpm_ok < tried, field_tag(f) + " denominator wp^m was not refuted");
    note << " " << field_tag(f) << ": N " << n_ok << "/" << tried << ", wp^m " << wpm_ok << "/" << tried;
  }
  if (o.pass) o.detail = std::to_string(pairs) + " pairs;" + note.str();
  return o;
}

Outcome c6() {
  Outcome o;
  Check c(o);
  std::uint64_t cases = 0;
  for (std::uint64_t N : {5u, 7u}) {
    const Field f = Field::make(3, N);
    for (std::uint64_t code = 0; code < f.order(); ++code) {
      const FqElem a = f.from_code(code);
      const CycInt brute = brute_sn(f, a);
      c.require(closed_cor25(f, a) == brute && closed_sn(f, a) == brute, field_tag(f) + " cor25 a=" + std::to_string(code));
      ++cases;
    }
  }
  for (auto [p, N] : {std::pair<std::uint64_t, std::uint64_t>{3, 5}, {3, 7}, {5, 9}}) {
    const Field f = Field::make(p, N);
    for (std::uint32_t a = 0; a < p; ++a) {
      const FqElem e = f.scalar(a);
      c.require(closed_cor24(f, a) == brute_sn(f, e) && closed_cor24(f, a) == closed_sn(f, e),
                field_tag(f) + " cor24 a=" + std::to_string(a));
      ++cases;
    }
  }
  if (o.pass) o.detail = std::to_string(cases) + " cases";
  return o;
}

Outcome c7() {
  Outcome o;
  Check c(o);
  std::uint64_t cases = 0, special = 0, h_rule_misses = 0;
  std::ostringstream note;
  for (auto [p, N] : {std::pair<std::uint64_t, std::uint64_t>{3, 5}, {3, 10}, {3, 7}, {3, 14}}) {
    const Field f = Field::make(p, N);
    const auto sq = static_cast<std::int64_t>(f.sqrt_order());
    const auto hi = CycInt::from_int(3, (static_cast<std::int64_t>(N) - 1) * sq - 1);
    const auto lo = CycInt::from_int(3, -sq - 1);
    // the large value sits on Ind = k (mod N); k = N/2 exactly when (sqrt(q)+1)/N is odd
    const std::uint64_t k = ((sq + 1) / static_cast<std::int64_t>(N)) % 2 == 0 ? 0 : N / 2;
    // v^((q-1)/N) = xi^Ind(v), so coset membership needs no discrete log
    const FqElem target = f.pow(f.xi(), k);
    std::uint64_t misses = 0, hits = 0;
    for (std::uint64_t code = 1; code < f.order(); ++code) {
      const FqElem v = f.from_code(code);
      const PowerSum r = moisio_power_sum(f, v);
      const FqElem root = f.pow(v, f.cofactor());
      const bool member = root == target;
      c.require(r.in_special == member && r.in_h == (root == f.one()),
                field_tag(f) + " classification c=" + std::to_string(code));
      c.require(r.brute == (member ? hi : lo) && r.predicted == r.brute, field_tag(f) + " value c=" + std::to_string(code));
      misses += r.brute != (root == f.one() ? hi : lo);
      hits += member;
      ++cases;
    }
    // Ind = 0 alone is right iff k = 0
    c.require((misses == 0) == (k == 0), field_tag(f) + " H-only rule");
    special += hits;
    h_rule_misses += misses;
    note << " " << field_tag(f) << " k=" << k;
  }
  if (o.pass) {
    o.detail = std::to_string(cases) + " nonzero c, " + std::to_string(special) + " on the large-value coset;" +
               note.str() + "; k=0 rule misses " + std::to_string(h_rule_misses);
  }
  return o;
}

Outcome c8() {
  Outcome o;
  Check c(o);
  std::uint64_t rows = 0;
  for (auto [p, N] : {std::pair<std::uint64_t, std::uint64_t>{3, 5}, {3, 7}, {3, 10}, {5, 9}, {5, 18}, {7, 4}}) {
    const Field f = Field::make(p, N);
    const oracle::Field ref(p, N);
    for (std::uint64_t j = 0; j < 2 * N; ++j) {
      const FqElem x = f.xi_pow(j);
      const std::uint32_t table = trace_of_xi_power(f, j);
      c.require(table == f.trace_frobenius(x) && table == ref.trace(ref.pow(ref.x(), j)),
                field_tag(f) + " j=" + std::to_string(j));
      ++rows;
    }
  }
  if (o.pass) o.detail = std::to_string(rows) + " rows";
  return o;
}

Outcome c9() {
  Outcome o;
  Check c(o);
  const Field f = Field::make(3, 5);
  std::mt19937_64 rng(99);
  for (int t = 0; t < 100; ++t) {
    std::vector<FqElem> l;
    for (std::size_t i = 0; i < f.degree(); ++i) l.push_back(random_elem(f, rng));
    const FqElem a = random_elem(f, rng);
    const LinearizedReduction r = linearized_reduce(f, a, l);
    c.require(r.sum == brute_linearized(f, a, l), "polynomial " + std::to_string(t));
  }
  if (o.pass) o.detail = "100 polynomials";
  return o;
}

Outcome c10() {
  Outcome o;
  Check c(o);
  const Field f = code_field(7, 1);
  const LinearCode code = build_code(f);
  const WeightDistribution wd = brute_weight_distribution(code);
  const PredictedParameters pp = predicted_parameters(7, 1);
  const std::map<std::uint64_t, std::uint64_t> expected{{0, 1}, {54, 104}, {72, 624}};
  c.require(code.n == 104 && code.k == 6, "n, k");
  c.require(wd.counts == expected, "census " + wd.to_tsv());
  c.require(pp.n == 104 && pp.k == 6 && pp.w1 == 54 && pp.w2 == 72 && pp.a_w1 == 104 && pp.a_w2 == 624,
            "predicted parameters");
  if (o.pass) o.detail = "[104, 6], {0:1, 54:104, 72:624}";
  return o;
}

Outcome c11() {
  Outcome o;
  Check c(o);
  const Field f = code_field(7, 1);
  const LinearCode code = build_code(f);
  const DualAnalysis da = dual_analysis(f, code);
  c.require(da.n == 104 && da.k_dual == 98 && da.d_dual == 2 && da.exact, "dual parameters");
  c.require(da.negation_pair_in_dual, "negation pair");
  const auto params = two_weight_parameters(50);
  c.require(params.size() == 6, "parameter list size " + std::to_string(params.size()));
  for (auto [wp, m] : params) {
    c.require(pless_identities_hold(predicted_parameters(wp, m)), "Pless " + std::to_string(wp) + "^" + std::to_string(m));
  }
  if (o.pass) o.detail = "dual [104, 98, 2]; Pless exact for " + std::to_string(params.size()) + " (wp, m)";
  return o;
}

Outcome c12() {
  Outcome o;
  Check c(o);
  auto dual_optimal = [](std::uint64_t wp, unsigned m) {
    const PredictedParameters pp = predicted_parameters(wp, m);
    return sphere_packing_optimal(pp.n, pp.n - pp.k, 2, 3);
  };
  c.require(dual_optimal(5, 2), "(5, 2) should be optimal");
  c.require(dual_optimal(7, 2), "(7, 2) should be optimal");
  c.require(!dual_optimal(7, 1), "(7, 1) should not be optimal (m = 1)");
  if (o.pass) o.detail = "(5,2) true, (7,2) true, (7,1) false";
  return o;
}

Outcome c13(bool slow) {
  Outcome o;
  Check c(o);
  // Regime (b) starts at q = 3^20: the formulas stay exact, the census is refused.
  const PredictedParameters pp = predicted_parameters(5, 2);
  c.require(pless_identities_hold(pp), "Pless at (5, 2)");
  bool refused = false;
  try {
    (void)defining_set(code_field(5, 2));
  } catch (const std::out_of_range&) {
    refused = true;
  }
  c.require(refused, "enumeration at q = 3^20 was not refused");
  std::string detail = "census at q=3^20 out of reach (refused by cap); formula checks hold";
  if (slow) {
    const Field f = Field::make(3, 25);
    const FqElem a = f.one(), b = f.g();
    const CycInt brute = brute_snab(f, a, b, Strategy::kStreaming);
    c.require(brute == closed_snab(f, a, b), "slow q=3^20 single sum");
    detail += "; slow q=3^20 S_N(1, g) brute = closed";
  } else {
    detail += "; slow q=3^20 brute-force sum not run (pass --slow)";
  }
  if (o.pass) o.detail = detail;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const bool slow = argc > 1 && std::strcmp(argv[1], "--slow") == 0;
  struct Criterion {
    int id;
    const char* what;
    double limit_s;  // 0 = no limit
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "closed S_N = brute S_N, N = wp^m (3,5), (3,7)", 5, c1},
      {2, "closed S_N = brute S_N, N = 4, p in {3,7,11}", 1, c2},
      {3, "closed S_N = brute S_N, N = 2wp^m (3,10), (5,18)", 30, c3},
      {4, "closed S_N = brute S_N, m = 2 (5,9)", 30, c4},
      {5, "S_N(a,b) reduction with denominator N", 60, c5},
      {6, "prime-field and p = 3 corollaries", 0, c6},
      {7, "power-sum dichotomy, q in {81, 729}", 0, c7},
      {8, "trace tables vs direct traces", 0, c8},
      {9, "linearized polynomials (3,5)", 0, c9},
      {10, "code (7,1): [104, 6], two-weight census", 5, c10},
      {11, "dual [104, 98, 2]; Pless identities wp^m <= 50", 0, c11},
      {12, "sphere-packing optimality of duals", 0, c12},
      {13, "q = 3^20 scale: formula-only substitute", 0, [slow] { return c13(slow); }},
  };

  int failures = 0;
  for (const auto& cr : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = cr.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (out.pass && cr.limit_s > 0 && secs > cr.limit_s) {
      out = {false, "runtime " + std::to_string(secs) + " s over limit"};
    }
    failures += !out.pass;
    std::printf("C%-2d %s  %s  [%.2fs]  %s\n", cr.id, out.pass ? "PASS" : "FAIL", cr.what, secs, out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
