#include "weilcode/codes.hpp"

#include <omp.h>

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace weilcode {

namespace {

BigInt exact_div(const BigInt& num, const BigInt& den, const char* what) {
  if (num % den != 0) throw std::logic_error(std::string("inexact division in ") + what);
  return num / den;
}

BigInt big_pow(std::uint64_t base, std::uint64_t exp) {
  return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp));
}

Regime regime_of(std::uint64_t wp, unsigned m) {
  if (wp % 3 == 1) return Regime::kOneModThree;
  if (wp % 3 == 2 && m >= 2) return Regime::kMinusOneModThree;
  throw UnsupportedError("parameters not covered by the two-weight construction: need wp = 1 mod 3, "
                         "or wp = 2 mod 3 with m >= 2");
}

void require_code_field(const Field& field) {
  if (field.p() != 3 || field.shape().kind != ModulusShape::kPrimePower) {
    throw UnsupportedError("codes need p = 3 and N = wp^m");
  }
}

}  // namespace

Field code_field(std::uint64_t wp, unsigned m) {
  if (!is_prime(wp) || wp == 2 || wp == 3 || m == 0) {
    throw std::invalid_argument("code parameters need an odd prime wp != 3 and m >= 1");
  }
  const auto N = checked_pow(wp, m);
  if (!N) throw UnsupportedError("wp^m too large");
  return Field::make(3, *N);
}

std::vector<FqElem> defining_set(const Field& field, const CodeCaps& caps) {
  require_code_field(field);
  if (field.order() > caps.field_order) throw std::out_of_range("defining set: q exceeds the enumeration cap");
  std::vector<std::uint32_t> xi_traces(field.N());
  for (std::uint64_t k = 0; k < field.N(); ++k) xi_traces[k] = field.trace(field.xi_pow(k));

  std::vector<FqElem> out;
  for (std::uint64_t code = 1; code < field.order(); ++code) {
    const FqElem x = field.from_code(code);
    // x^((q-1)/N) = xi^(Ind_g(x) mod N)
    const std::uint32_t tr = field.has_tables() ? xi_traces[field.index(x) % field.N()]
                                                : field.trace(field.pow(x, field.cofactor()));
    if (tr == 0) out.push_back(x);
  }
  return out;
}

LinearCode build_code(const Field& field, const CodeCaps& caps) {
  LinearCode code;
  code.defining_set = defining_set(field, caps);
  if (code.defining_set.empty()) throw std::invalid_argument("degenerate parameters: empty defining set");
  code.p = 3;
  code.n = code.defining_set.size();
  code.k = field.degree();
  code.generator.resize(code.k * code.n);
  for (std::size_t j = 0; j < code.k; ++j) {
    const FqElem beta = field.xi_pow(j + 1);
    for (std::size_t i = 0; i < code.n; ++i) {
      code.generator[j * code.n + i] = static_cast<std::uint8_t>(field.trace(field.mul(beta, code.defining_set[i])));
    }
  }
  if (rank_mod_p(code.generator, code.k, code.n, code.p) != code.k) {
    throw std::logic_error("generator rows are dependent");
  }
  return code;
}

std::vector<std::uint8_t> codeword(const Field& field, const LinearCode& code, const FqElem& x) {
  std::vector<std::uint8_t> out(code.n);
  for (std::size_t i = 0; i < code.n; ++i) {
    out[i] = static_cast<std::uint8_t>(field.trace(field.mul(code.defining_set[i], x)));
  }
  return out;
}

std::size_t rank_mod_p(std::vector<std::uint8_t> m, std::size_t rows, std::size_t cols, std::uint32_t p) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot * cols + col] == 0) ++pivot;
    if (pivot == rows) continue;
    for (std::size_t c = 0; c < cols; ++c) std::swap(m[rank * cols + c], m[pivot * cols + c]);
    const auto inv = static_cast<std::uint32_t>(powmod(m[rank * cols + col], p - 2, p));
    for (std::size_t c = 0; c < cols; ++c) m[rank * cols + c] = static_cast<std::uint8_t>(m[rank * cols + c] * inv % p);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r * cols + col] == 0) continue;
      const std::uint32_t f = m[r * cols + col];
      for (std::size_t c = 0; c < cols; ++c) {
        m[r * cols + c] = static_cast<std::uint8_t>((m[r * cols + c] + (p - f) * m[rank * cols + c]) % p);
      }
    }
    ++rank;
  }
  return rank;
}

std::uint64_t WeightDistribution::total() const {
  std::uint64_t t = 0;
  for (const auto& [w, c] : counts) t += c;
  return t;
}

std::uint64_t WeightDistribution::min_nonzero_weight() const {
  for (const auto& [w, c] : counts) {
    if (w > 0 && c > 0) return w;
  }
  return 0;
}

std::string WeightDistribution::to_tsv() const {
  std::ostringstream os;
  for (const auto& [w, c] : counts) os << w << '\t' << c << '\n';
  return os.str();
}

namespace {

std::uint64_t census_size(const LinearCode& code, const CodeCaps& caps) {
  const auto total = checked_pow(code.p, static_cast<unsigned>(code.k));
  std::uint64_t work = 0;
  if (!total || __builtin_mul_overflow(*total, static_cast<std::uint64_t>(code.n), &work) ||
      work > caps.census_work) {
    throw std::out_of_range("weight census exceeds the enumeration cap");
  }
  return *total;
}

WeightDistribution from_histogram(const std::vector<std::uint64_t>& hist) {
  WeightDistribution wd;
  for (std::size_t w = 0; w < hist.size(); ++w) {
    if (hist[w] != 0) wd.counts[w] = hist[w];
  }
  return wd;
}

}  // namespace

namespace serial {

WeightDistribution weight_distribution(const LinearCode& code, const CodeCaps& caps) {
  const std::uint64_t total = census_size(code, caps);
  std::vector<std::uint64_t> hist(code.n + 1, 0);
  std::vector<std::uint32_t> digits(code.k);
  for (std::uint64_t msg = 0; msg < total; ++msg) {
    std::uint64_t rest = msg;
    for (std::size_t j = 0; j < code.k; ++j) {
      digits[j] = static_cast<std::uint32_t>(rest % code.p);
      rest /= code.p;
    }
    std::size_t weight = 0;
    for (std::size_t i = 0; i < code.n; ++i) {
      std::uint32_t s = 0;
      for (std::size_t j = 0; j < code.k; ++j) s += digits[j] * code.at(j, i);
      if (s % code.p != 0) ++weight;
    }
    ++hist[weight];
  }
  return from_histogram(hist);
}

}  // namespace serial

WeightDistribution brute_weight_distribution(const LinearCode& code, const CodeCaps& caps) {
  const std::uint64_t total = census_size(code, caps);
  const std::uint32_t p = code.p;
  const int threads = omp_get_max_threads();
  std::vector<std::vector<std::uint64_t>> partial(static_cast<std::size_t>(threads),
                                                  std::vector<std::uint64_t>(code.n + 1, 0));

#pragma omp parallel num_threads(threads)
  {
    const auto t = static_cast<std::uint64_t>(omp_get_thread_num());
    const auto parts = static_cast<std::uint64_t>(omp_get_num_threads());
    const std::uint64_t lo = total * t / parts;
    const std::uint64_t hi = total * (t + 1) / parts;
    auto& hist = partial[t];
    if (lo < hi) {
      std::vector<std::uint32_t> digits(code.k);
      std::vector<std::uint8_t> word(code.n, 0);
      std::uint64_t rest = lo;
      for (std::size_t j = 0; j < code.k; ++j) {
        digits[j] = static_cast<std::uint32_t>(rest % p);
        rest /= p;
        for (std::size_t i = 0; i < code.n; ++i) {
          word[i] = static_cast<std::uint8_t>((word[i] + digits[j] * code.at(j, i)) % p);
        }
      }
      for (std::uint64_t msg = lo; msg < hi; ++msg) {
        std::size_t weight = 0;
        for (std::uint8_t c : word) weight += c != 0;
        ++hist[weight];
        // Base-p increment: bumping digit j adds row j once, and a wrap from
        // p-1 to 0 is also one addition of row j.
        for (std::size_t j = 0; j < code.k; ++j) {
          const std::uint8_t* row = &code.generator[j * code.n];
          for (std::size_t i = 0; i < code.n; ++i) {
            const std::uint32_t s = word[i] + row[i];
            word[i] = static_cast<std::uint8_t>(s >= p ? s - p : s);
          }
          if (++digits[j] < p) break;
          digits[j] = 0;
        }
      }
    }
  }

  std::vector<std::uint64_t> hist(code.n + 1, 0);
  for (const auto& part : partial) {
    for (std::size_t w = 0; w <= code.n; ++w) hist[w] += part[w];
  }
  return from_histogram(hist);
}

PredictedParameters predicted_parameters(std::uint64_t wp, unsigned m) {
  if (!is_prime(wp) || wp == 2 || wp == 3 || m == 0) {
    throw std::invalid_argument("predicted_parameters: need an odd prime wp != 3 and m >= 1");
  }
  const auto N = checked_pow(wp, m);
  if (!N) throw UnsupportedError("wp^m too large");
  const std::uint64_t phi = euler_phi(*N);
  if (multiplicative_order(3, *N) != phi) throw UnsupportedError("3 is not a primitive root mod wp^m");

  PredictedParameters r;
  r.wp = wp;
  r.m = m;
  r.regime = regime_of(wp, m);
  r.q = big_pow(3, phi);
  r.sqrt_q = big_pow(3, phi / 2);
  r.k = phi;
  const BigInt P = *N;
  const BigInt B = P / wp;
  const BigInt q = r.q;
  const BigInt sq = r.sqrt_q;

  if (r.regime == Regime::kOneModThree) {
    const BigInt M = P - wp + 1;
    r.n = exact_div((q - 1) * M, P, "n");
    r.n0 = r.n + 1;
    r.w1 = exact_div(2 * M * q - 2 * (wp - 1) * sq, 3 * P, "w1");
    r.w2 = exact_div(2 * M * q + 2 * M * sq, 3 * P, "w2");
    r.a_w1 = exact_div(M * (q - 1), P, "A_w1");
    r.a_w2 = exact_div((wp - 1) * (q - 1), P, "A_w2");
  } else {
    r.n = exact_div((q - 1) * (B - 1), B, "n");
    r.n0 = exact_div((q - 1) * (P - wp), P, "n0") + 1;
    if (r.n0 != r.n + 1) throw std::logic_error("length formulas disagree");
    r.w1 = exact_div(2 * (B - 1) * q + 2 * (B - 1) * sq, 3 * B, "w1");
    r.w2 = exact_div(2 * (B - 1) * q - 2 * sq, 3 * B, "w2");
    r.a_w1 = exact_div(q - 1, B, "A_w1");
    r.a_w2 = exact_div((B - 1) * (q - 1), B, "A_w2");
  }
  return r;
}

bool pless_identities_hold(const PredictedParameters& r) {
  return r.a_w1 + r.a_w2 == r.q - 1 && 3 * (r.a_w1 * r.w1 + r.a_w2 * r.w2) == (2 * r.n0 - 2) * r.q;
}

std::vector<std::pair<std::uint64_t, unsigned>> two_weight_parameters(std::uint64_t limit) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t wp = 5; wp <= limit; wp += 2) {
    if (!is_prime(wp)) continue;
    std::uint64_t power = wp;
    for (unsigned m = 1; power <= limit; ++m) {
      const bool primitive = multiplicative_order(3, power) == euler_phi(power);
      const bool covered = wp % 3 == 1 || m >= 2;
      if (primitive && covered) out.emplace_back(wp, m);
      if (__builtin_mul_overflow(power, wp, &power)) break;
    }
  }
  return out;
}

BigInt predicted_nb(const Field& field, const FqElem& b) {
  require_code_field(field);
  if (field.is_zero(b)) throw std::domain_error("predicted_nb: b must be nonzero");
  const std::uint64_t wp = field.shape().wp;
  const unsigned m = field.shape().m;
  const Regime regime = regime_of(wp, m);
  const std::uint64_t P = field.N();
  const std::uint64_t B = field.shape().block();
  const BigInt q = field.order();
  const BigInt sq = field.sqrt_order();

  const std::uint64_t r = field.index(field.inv(b)) % P;
  const bool case_one = r == 0;
  const bool case_two = !case_one && r % B == 0;

  if (regime == Regime::kOneModThree) {
    const BigInt M = P - wp + 1;
    // Shared denominator 3 wp^m; case two carries the -(wp^m - wp + 1) sqrt(q) term.
    const BigInt root_term = case_two ? BigInt(-2) * M * sq : BigInt(2 * (wp - 1)) * sq;
    return exact_div(M * q + root_term + 3 * (wp - 1), 3 * P, "N_b");
  }
  const BigInt Bm1 = B - 1;
  const BigInt root_term = (case_one || case_two) ? BigInt(-2) * Bm1 * sq : BigInt(2) * sq;
  return exact_div(Bm1 * q + root_term + 3, 3 * B, "N_b");
}

DualAnalysis dual_analysis(const Field& field, const LinearCode& code, const CodeCaps& caps) {
  DualAnalysis out;
  out.n = code.n;
  out.k_dual = code.n - rank_mod_p(code.generator, code.k, code.n, code.p);

  const std::uint32_t p = code.p;
  // Columns scaled so their first nonzero entry is 1; equal keys mean parallel columns.
  auto normalized = [&](std::vector<std::uint8_t> col) {
    const auto lead = std::find_if(col.begin(), col.end(), [](std::uint8_t c) { return c != 0; });
    if (lead == col.end()) return col;
    const auto inv = static_cast<std::uint32_t>(powmod(*lead, p - 2, p));
    for (auto& c : col) c = static_cast<std::uint8_t>(c * inv % p);
    return col;
  };
  auto column = [&](std::size_t i) {
    std::vector<std::uint8_t> col(code.k);
    for (std::size_t j = 0; j < code.k; ++j) col[j] = code.at(j, i);
    return col;
  };
  auto key = [](const std::vector<std::uint8_t>& col) { return std::string(col.begin(), col.end()); };

  std::unordered_map<std::string, std::size_t> classes;
  bool zero_column = false;
  bool parallel = false;
  for (std::size_t i = 0; i < code.n; ++i) {
    const auto col = normalized(column(i));
    if (std::all_of(col.begin(), col.end(), [](std::uint8_t c) { return c == 0; })) zero_column = true;
    if (!classes.emplace(key(col), i).second) parallel = true;
  }

  if (zero_column) {
    out.d_dual = 1;
    out.exact = true;
  } else if (parallel) {
    out.d_dual = 2;
    out.exact = true;
  } else if (code.n <= caps.triple_search_length) {
    // No parallel columns: look for alpha c_i + beta c_j + gamma c_l = 0.
    out.d_dual = 4;
    out.exact = false;
    for (std::size_t i = 0; i < code.n && out.d_dual == 4; ++i) {
      const auto ci = column(i);
      for (std::size_t j = i + 1; j < code.n && out.d_dual == 4; ++j) {
        const auto cj = column(j);
        for (std::uint32_t beta = 1; beta < p; ++beta) {
          std::vector<std::uint8_t> s(code.k);
          for (std::size_t r = 0; r < code.k; ++r) s[r] = static_cast<std::uint8_t>((ci[r] + beta * cj[r]) % p);
          if (auto it = classes.find(key(normalized(s))); it != classes.end() && it->second != i && it->second != j) {
            out.d_dual = 3;
            out.exact = true;
            break;
          }
        }
      }
    }
  } else {
    out.d_dual = 3;
    out.exact = false;
  }

  // D = -D gives the explicit weight-2 dual codeword e_i + e_j with d_j = -d_i.
  std::unordered_map<std::uint64_t, std::size_t> position;
  for (std::size_t i = 0; i < code.n; ++i) position.emplace(field.code(code.defining_set[i]), i);
  if (auto it = position.find(field.code(field.neg(code.defining_set[0]))); it != position.end()) {
    const std::size_t j = it->second;
    out.negation_pair = {0, j};
    bool in_dual = j != 0;
    for (std::size_t r = 0; r < code.k && in_dual; ++r) in_dual = (code.at(r, 0) + code.at(r, j)) % p == 0;
    out.negation_pair_in_dual = in_dual;
  }
  return out;
}

bool sphere_packing_optimal(const BigInt& n, const BigInt& k, const BigInt& d, std::uint64_t field_size) {
  if (n <= 0 || k < 0 || k > n || d <= 0 || field_size < 2) {
    throw std::invalid_argument("sphere_packing_optimal: need n > 0, 0 <= k <= n, d > 0, field size >= 2");
  }
  const BigInt radius = d / 2;
  if (radius > 100000) throw std::out_of_range("sphere_packing_optimal: radius too large for exact evaluation");
  const auto t = static_cast<std::uint64_t>(radius);

  // V(n, t) = sum_{i <= t} C(n, i) (field_size - 1)^i
  BigInt volume = 1;
  BigInt binom = 1;
  BigInt spread = 1;
  for (std::uint64_t i = 1; i <= t && BigInt(i) <= n; ++i) {
    binom = binom * (n - i + 1) / i;
    spread *= field_size - 1;
    volume += binom * spread;
  }

  // Compare V against field_size^(n - k) without materialising huge powers.
  const BigInt redundancy = n - k;
  BigInt power = 1;
  for (BigInt e = 0; e < redundancy; ++e) {
    power *= field_size;
    if (power >= volume) return false;
  }
  return volume > power;
}

std::string generator_to_text(const LinearCode& code) {
  std::string out;
  out.reserve(code.k * code.n * 2);
  for (std::size_t r = 0; r < code.k; ++r) {
    for (std::size_t c = 0; c < code.n; ++c) {
      if (c) out += ' ';
      out += static_cast<char>('0' + code.at(r, c));
    }
    out += '\n';
  }
  return out;
}

}  // namespace weilcode
