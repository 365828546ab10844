#include "weilcode/field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

namespace weilcode {

std::vector<std::uint32_t> cyclotomic_poly(std::uint64_t N, std::uint64_t p) {
  if (N % p == 0) throw std::invalid_argument("cyclotomic_poly: p divides N");
  const auto shape = classify_modulus(N);
  if (!shape) throw UnsupportedError("cyclotomic_poly: N must be 2, 4, wp^m or 2wp^m");
  const auto neg_one = static_cast<std::uint32_t>(p - 1);
  switch (shape->kind) {
    case ModulusShape::kTwo:
      return {1, 1};
    case ModulusShape::kFour:
      return {1, 0, 1};
    case ModulusShape::kPrimePower:
    case ModulusShape::kTwicePrimePower: {
      // Q_{wp^m}(x) = sum_{k < wp} x^(k wp^(m-1)); Q_{2wp^m}(x) = Q_{wp^m}(-x).
      const std::uint64_t block = shape->block();
      std::vector<std::uint32_t> poly((shape->wp - 1) * block + 1, 0);
      for (std::uint64_t k = 0; k < shape->wp; ++k) {
        const bool flip = shape->kind == ModulusShape::kTwicePrimePower && (k % 2 == 1);
        poly[k * block] = flip ? neg_one : 1;
      }
      return poly;
    }
  }
  throw std::logic_error("unreachable");
}

Field Field::make(std::uint64_t p, std::uint64_t N) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("make_field: p must be an odd prime");
  if (N % p == 0) throw std::invalid_argument("make_field: p divides N");
  if (N < 2) throw UnsupportedError("make_field: N must be at least 2");
  // shape first: other N have no primitive roots at all
  const auto shape = classify_modulus(N);
  if (!shape) throw UnsupportedError("make_field: N must be 2, 4, wp^m or 2wp^m");
  const std::uint64_t phi = euler_phi(N);
  if (multiplicative_order(p, N) != phi) {
    throw UnsupportedError("make_field: p not a primitive root mod N");
  }

  Field f;
  f.p_ = p;
  f.n_ = N;
  f.d_ = phi;
  f.shape_ = *shape;
  const auto q = checked_pow(p, static_cast<unsigned>(phi));
  if (!q || *q >= (std::uint64_t{1} << 63)) throw UnsupportedError("make_field: field too large");
  f.q_ = *q;
  f.modulus_ = cyclotomic_poly(N, p);

  f.xi_ = f.zero();
  if (f.d_ == 1) {
    // F_p[x]/(x + 1): x is -1.
    f.xi_.coeffs[0] = static_cast<std::uint32_t>(p - 1);
  } else {
    f.xi_.coeffs[1] = 1;
  }

  f.basis_traces_.resize(f.d_);
  for (std::size_t j = 0; j < f.d_; ++j) {
    f.basis_traces_[j] = f.trace_frobenius(f.xi_pow(j));
  }
  f.xi_inv_ = f.inv(f.xi_);

  // An element of multiplicative order q-1 exists only if the quotient ring
  // is a field, so finding g also certifies that Q_N is irreducible.
  const auto factors = prime_factors(f.q_ - 1);
  bool found = false;
  for (std::uint64_t code = 1; code < f.q_; ++code) {
    FqElem cand = f.from_code(code);
    if (!f.is_primitive(cand, factors)) continue;
    if (f.pow(cand, f.cofactor()) == f.xi_) {
      f.g_ = std::move(cand);
      found = true;
      break;
    }
  }
  if (!found) throw std::logic_error("make_field: no primitive g with g^((q-1)/N) = xi");

  f.g_matrix_.assign(f.d_ * f.d_, 0);
  // Column c is g * x^c (for d = 1 the single entry is g).
  FqElem col = f.g_;
  for (std::size_t c = 0; c < f.d_; ++c) {
    for (std::size_t r = 0; r < f.d_; ++r) f.g_matrix_[r * f.d_ + c] = col.coeffs[r];
    col = f.mul(col, f.xi_);
  }

  if (f.q_ <= kTableLimit) f.build_tables();
  return f;
}

void Field::build_tables() {
  auto t = std::make_shared<Tables>();
  const std::uint64_t n = q_ - 1;
  t->exp.resize(n);
  t->log.assign(q_, 0);
  t->trace_g_pow.resize(n);
  std::vector<std::uint32_t> cur(d_, 0), next(d_);
  cur[0] = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    std::uint64_t code = 0;
    std::uint64_t tr = 0;
    for (std::size_t j = d_; j-- > 0;) {
      code = code * p_ + cur[j];
      tr += static_cast<std::uint64_t>(cur[j]) * basis_traces_[j] % p_;
    }
    t->exp[i] = static_cast<std::uint32_t>(code);
    t->log[code] = static_cast<std::uint32_t>(i);
    t->trace_g_pow[i] = static_cast<std::uint32_t>(tr % p_);
    for (std::size_t r = 0; r < d_; ++r) {
      std::uint64_t acc = 0;
      for (std::size_t c = 0; c < d_; ++c) acc += static_cast<std::uint64_t>(g_matrix_[r * d_ + c]) * cur[c] % p_;
      next[r] = static_cast<std::uint32_t>(acc % p_);
    }
    std::swap(cur, next);
  }
  tables_ = std::move(t);
}

std::uint64_t Field::sqrt_order() const {
  if (d_ % 2 != 0) throw UnsupportedError("q is not a perfect square (N = 2)");
  return *checked_pow(p_, static_cast<unsigned>(d_ / 2));
}

std::uint32_t Field::reduce(std::int64_t v) const {
  const auto p = static_cast<std::int64_t>(p_);
  return static_cast<std::uint32_t>(((v % p) + p) % p);
}

void Field::check(const FqElem& v) const {
  if (v.coeffs.size() != d_) throw std::invalid_argument("element has wrong length for this field");
}

FqElem Field::zero() const { return FqElem{std::vector<std::uint32_t>(d_, 0)}; }

FqElem Field::one() const { return scalar(1); }

FqElem Field::scalar(std::int64_t v) const {
  FqElem e = zero();
  e.coeffs[0] = reduce(v);
  return e;
}

FqElem Field::from_coeffs(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() > d_) throw std::invalid_argument("element literal has more than d coefficients");
  FqElem e = zero();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] >= p_) throw std::invalid_argument("element coefficient not in [0, p)");
    e.coeffs[i] = coeffs[i];
  }
  return e;
}

bool Field::is_zero(const FqElem& v) const {
  return std::all_of(v.coeffs.begin(), v.coeffs.end(), [](std::uint32_t c) { return c == 0; });
}

std::uint64_t Field::code(const FqElem& v) const {
  check(v);
  std::uint64_t c = 0;
  for (std::size_t j = d_; j-- > 0;) c = c * p_ + v.coeffs[j];
  return c;
}

FqElem Field::from_code(std::uint64_t code) const {
  if (code >= q_) throw std::out_of_range("element code out of range");
  FqElem e = zero();
  for (std::size_t j = 0; j < d_; ++j) {
    e.coeffs[j] = static_cast<std::uint32_t>(code % p_);
    code /= p_;
  }
  return e;
}

FqElem Field::add(const FqElem& a, const FqElem& b) const {
  check(a);
  check(b);
  FqElem r = zero();
  for (std::size_t i = 0; i < d_; ++i) r.coeffs[i] = static_cast<std::uint32_t>((std::uint64_t{a.coeffs[i]} + b.coeffs[i]) % p_);
  return r;
}

FqElem Field::sub(const FqElem& a, const FqElem& b) const {
  check(a);
  check(b);
  FqElem r = zero();
  for (std::size_t i = 0; i < d_; ++i) r.coeffs[i] = static_cast<std::uint32_t>((std::uint64_t{a.coeffs[i]} + p_ - b.coeffs[i]) % p_);
  return r;
}

FqElem Field::neg(const FqElem& a) const { return sub(zero(), a); }

FqElem Field::mul(const FqElem& a, const FqElem& b) const {
  check(a);
  check(b);
  std::vector<std::uint64_t> prod(2 * d_ - 1, 0);
  for (std::size_t i = 0; i < d_; ++i) {
    if (a.coeffs[i] == 0) continue;
    for (std::size_t j = 0; j < d_; ++j) {
      prod[i + j] = (prod[i + j] + mulmod(a.coeffs[i], b.coeffs[j], p_)) % p_;
    }
  }
  // Reduce by the monic modulus from the top down.
  for (std::size_t k = prod.size(); k-- > d_;) {
    const std::uint64_t t = prod[k];
    if (t == 0) continue;
    for (std::size_t j = 0; j < d_; ++j) {
      const std::uint64_t sub = mulmod(t, modulus_[j], p_);
      prod[k - d_ + j] = (prod[k - d_ + j] + p_ - sub) % p_;
    }
    prod[k] = 0;
  }
  FqElem r = zero();
  for (std::size_t i = 0; i < d_; ++i) r.coeffs[i] = static_cast<std::uint32_t>(prod[i]);
  return r;
}

FqElem Field::scale(const FqElem& a, std::uint64_t s) const {
  check(a);
  FqElem r = zero();
  for (std::size_t i = 0; i < d_; ++i) r.coeffs[i] = static_cast<std::uint32_t>(mulmod(a.coeffs[i], s % p_, p_));
  return r;
}

FqElem Field::pow(const FqElem& a, std::uint64_t e) const {
  FqElem result = one();
  FqElem base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

FqElem Field::inv(const FqElem& a) const {
  if (is_zero(a)) throw std::domain_error("inverse of zero");
  return pow(a, q_ - 2);
}

FqElem Field::frobenius(const FqElem& a) const { return pow(a, p_); }

FqElem Field::xi_pow(std::uint64_t k) const { return pow(xi_, k % n_); }

std::uint32_t Field::trace(const FqElem& v) const {
  check(v);
  std::uint64_t acc = 0;
  for (std::size_t j = 0; j < d_; ++j) acc = (acc + mulmod(v.coeffs[j], basis_traces_[j], p_)) % p_;
  return static_cast<std::uint32_t>(acc);
}

std::uint32_t Field::trace_frobenius(const FqElem& v) const {
  FqElem acc = zero();
  FqElem term = v;
  for (std::size_t i = 0; i < d_; ++i) {
    acc = add(acc, term);
    term = frobenius(term);
  }
  for (std::size_t j = 1; j < d_; ++j) {
    if (acc.coeffs[j] != 0) throw std::logic_error("trace landed outside the prime field");
  }
  return acc.coeffs[0];
}

bool Field::is_primitive(const FqElem& v, const std::vector<std::uint64_t>& factors) const {
  if (is_zero(v)) return false;
  const FqElem unit = one();
  return std::none_of(factors.begin(), factors.end(),
                      [&](std::uint64_t r) { return pow(v, (q_ - 1) / r) == unit; });
}

std::uint64_t Field::index(const FqElem& v) const {
  check(v);
  if (is_zero(v)) throw std::domain_error("index of zero");
  if (tables_) return tables_->log[code(v)];
  return bsgs_index(v);
}

std::uint64_t Field::bsgs_index(const FqElem& v) const {
  const std::uint64_t n = q_ - 1;
  const auto m = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  std::unordered_map<std::uint64_t, std::uint64_t> baby;
  baby.reserve(m);
  FqElem cur = one();
  for (std::uint64_t j = 0; j < m; ++j) {
    baby.emplace(code(cur), j);
    cur = mul(cur, g_);
  }
  const FqElem giant = inv(pow(g_, m));
  FqElem y = v;
  for (std::uint64_t i = 0; i <= m; ++i) {
    if (auto it = baby.find(code(y)); it != baby.end()) return (i * m + it->second) % n;
    y = mul(y, giant);
  }
  throw std::logic_error("baby-step/giant-step found no index");
}

ShiftedCoords Field::to_shifted(const FqElem& v) const {
  return ShiftedCoords{mul(v, xi_inv_).coeffs};
}

FqElem Field::from_shifted(const ShiftedCoords& a) const {
  if (a.a.size() != d_) throw std::invalid_argument("shifted coordinates have wrong length");
  return mul(from_coeffs(a.a), xi_);
}

Slice Field::slice(const ShiftedCoords& a, std::uint64_t i) const {
  if (shape_.kind != ModulusShape::kPrimePower && shape_.kind != ModulusShape::kTwicePrimePower) {
    throw UnsupportedError("slice: N must be wp^m or 2wp^m");
  }
  const std::uint64_t block = shape_.block();
  if (i >= block) throw std::out_of_range("slice: i must lie in [0, wp^(m-1))");
  Slice s;
  s.counts.assign(p_, 0);
  for (std::uint64_t k = 1; k < shape_.wp; ++k) {
    const std::uint32_t v = a.at(k * block - i);
    s.values.push_back(v);
    ++s.counts[v];
  }
  return s;
}

std::string Field::describe() const {
  std::ostringstream os;
  os << "p=" << p_ << " N=" << n_ << " d=" << d_ << " q=" << q_ << " Q_N=";
  bool first = true;
  for (std::size_t k = modulus_.size(); k-- > 0;) {
    if (modulus_[k] == 0) continue;
    if (!first) os << '+';
    first = false;
    if (modulus_[k] != 1 || k == 0) os << modulus_[k];
    if (k > 0) os << (modulus_[k] != 1 ? "*" : "") << "x" << (k > 1 ? "^" + std::to_string(k) : "");
  }
  os << " g=";
  for (std::size_t j = 0; j < d_; ++j) os << (j ? "," : "") << g_.coeffs[j];
  return os.str();
}

std::int64_t trace_of_xi_power_integer(const Field& field, std::uint64_t j) {
  const NShape& s = field.shape();
  switch (s.kind) {
    case ModulusShape::kTwo:
      return j % 2 == 0 ? 1 : -1;
    case ModulusShape::kFour:
      return j % 4 == 0 ? 2 : (j % 4 == 2 ? -2 : 0);
    case ModulusShape::kPrimePower: {
      const auto block = static_cast<std::int64_t>(s.block());
      const auto full = static_cast<std::uint64_t>(block) * s.wp;
      const auto wp = static_cast<std::int64_t>(s.wp);
      if (j % full == 0) return (wp - 1) * block;
      if (j % block == 0) return -block;
      return 0;
    }
    case ModulusShape::kTwicePrimePower: {
      const auto block = static_cast<std::int64_t>(s.block());
      const auto full = static_cast<std::uint64_t>(block) * s.wp;
      const auto wp = static_cast<std::int64_t>(s.wp);
      const bool odd = j % 2 == 1;
      if (j % (2 * full) == 0) return (wp - 1) * block;
      if (j % full == 0 && odd) return -(wp - 1) * block;
      if (j % (2 * static_cast<std::uint64_t>(block)) == 0) return -block;
      if (j % block == 0 && odd) return block;
      return 0;
    }
  }
  throw std::logic_error("unreachable");
}

std::uint32_t trace_of_xi_power(const Field& field, std::uint64_t j) {
  const auto p = static_cast<std::int64_t>(field.p());
  return static_cast<std::uint32_t>(((trace_of_xi_power_integer(field, j) % p) + p) % p);
}

}  // namespace weilcode
