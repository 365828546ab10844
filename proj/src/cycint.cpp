#include "weilcode/cycint.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace weilcode {

namespace {

std::int64_t add_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("CycInt coefficient overflow");
  return r;
}

std::int64_t sub_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("CycInt coefficient overflow");
  return r;
}

std::int64_t mul_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("CycInt coefficient overflow");
  return r;
}

std::uint32_t exp_mod(std::int64_t k, std::uint32_t p) {
  const auto pp = static_cast<std::int64_t>(p);
  return static_cast<std::uint32_t>(((k % pp) + pp) % pp);
}

}  // namespace

CycInt CycInt::zero(std::uint32_t p) {
  if (p < 2) throw std::invalid_argument("CycInt: p must be prime");
  return CycInt(p, std::vector<std::int64_t>(p - 1, 0));
}

CycInt CycInt::from_int(std::uint32_t p, std::int64_t v) {
  CycInt r = zero(p);
  r.c_[0] = v;
  return r;
}

CycInt CycInt::zeta_pow(std::uint32_t p, std::int64_t k) {
  std::vector<std::int64_t> hist(p, 0);
  hist[exp_mod(k, p)] = 1;
  return from_histogram(p, hist);
}

CycInt CycInt::from_histogram(std::uint32_t p, std::span<const std::int64_t> counts) {
  if (counts.size() != p) throw std::invalid_argument("CycInt histogram must have length p");
  CycInt r = zero(p);
  const std::int64_t top = counts[p - 1];
  for (std::uint32_t k = 0; k + 1 < p; ++k) r.c_[k] = sub_checked(counts[k], top);
  return r;
}

void CycInt::same_ring(const CycInt& o) const {
  if (p_ != o.p_) throw std::domain_error("CycInt operands over different p");
}

CycInt CycInt::operator+(const CycInt& o) const {
  CycInt r = *this;
  r += o;
  return r;
}

CycInt& CycInt::operator+=(const CycInt& o) {
  same_ring(o);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] = add_checked(c_[k], o.c_[k]);
  return *this;
}

CycInt CycInt::operator-(const CycInt& o) const {
  same_ring(o);
  CycInt r = *this;
  for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k] = sub_checked(c_[k], o.c_[k]);
  return r;
}

CycInt CycInt::operator-() const { return zero(p_) - *this; }

CycInt CycInt::operator*(const CycInt& o) const {
  same_ring(o);
  std::vector<std::int64_t> hist(p_, 0);
  for (std::uint32_t i = 0; i + 1 < p_; ++i) {
    if (c_[i] == 0) continue;
    for (std::uint32_t j = 0; j + 1 < p_; ++j) {
      auto& slot = hist[(i + j) % p_];
      slot = add_checked(slot, mul_checked(c_[i], o.c_[j]));
    }
  }
  return from_histogram(p_, hist);
}

CycInt CycInt::scaled(std::int64_t s) const {
  CycInt r = *this;
  for (auto& c : r.c_) c = mul_checked(c, s);
  return r;
}

CycInt CycInt::divided_exact(std::int64_t s) const {
  if (s == 0) throw std::domain_error("CycInt division by zero");
  CycInt r = *this;
  for (auto& c : r.c_) {
    if (c % s != 0) throw std::domain_error("CycInt division is not exact");
    c /= s;
  }
  return r;
}

CycInt CycInt::galois(std::int64_t k) const {
  if (exp_mod(k, p_) == 0) throw std::domain_error("galois: k must be prime to p");
  std::vector<std::int64_t> hist(p_, 0);
  for (std::uint32_t i = 0; i + 1 < p_; ++i) {
    hist[exp_mod(static_cast<std::int64_t>(i) * exp_mod(k, p_), p_)] = c_[i];
  }
  return from_histogram(p_, hist);
}

std::optional<std::int64_t> CycInt::as_integer() const {
  if (std::any_of(c_.begin() + 1, c_.end(), [](std::int64_t c) { return c != 0; })) return std::nullopt;
  return c_[0];
}

std::complex<double> CycInt::to_complex() const {
  std::complex<double> acc = 0.0;
  for (std::uint32_t k = 0; k + 1 < p_; ++k) {
    acc += static_cast<double>(c_[k]) * std::polar(1.0, 2.0 * std::numbers::pi * k / p_);
  }
  return acc;
}

std::int64_t CycInt::max_abs_coeff() const {
  std::int64_t m = 0;
  for (auto c : c_) m = std::max(m, c < 0 ? -c : c);
  return m;
}

std::string CycInt::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::uint32_t k = 0; k + 1 < p_; ++k) {
    const std::int64_t c = c_[k];
    if (c == 0) continue;
    const std::uint64_t mag = c < 0 ? static_cast<std::uint64_t>(-(c + 1)) + 1 : static_cast<std::uint64_t>(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << mag;
    } else {
      if (mag != 1) os << mag << '*';
      os << 'z';
      if (k > 1) os << '^' << k;
    }
  }
  if (first) os << '0';
  os << " (mod Phi_" << p_ << ')';
  return os.str();
}

CycInt CycInt::parse(std::string_view text) {
  const auto bad = [&] { return std::invalid_argument("CycInt::parse: malformed '" + std::string(text) + "'"); };
  const auto suffix = text.rfind("(mod Phi_");
  if (suffix == std::string_view::npos || text.back() != ')') throw bad();
  std::uint32_t p = 0;
  const auto pstr = text.substr(suffix + 9, text.size() - suffix - 10);
  if (std::from_chars(pstr.data(), pstr.data() + pstr.size(), p).ec != std::errc{}) throw bad();
  CycInt r = zero(p);

  std::string body(text.substr(0, suffix));
  std::string compact;
  for (char ch : body) {
    if (!std::isspace(static_cast<unsigned char>(ch))) compact += ch;
  }
  if (compact == "0") return r;
  std::size_t pos = 0;
  while (pos < compact.size()) {
    std::int64_t sign = 1;
    if (compact[pos] == '+' || compact[pos] == '-') {
      sign = compact[pos] == '-' ? -1 : 1;
      ++pos;
    }
    std::int64_t mag = 1;
    bool have_mag = false;
    if (pos < compact.size() && std::isdigit(static_cast<unsigned char>(compact[pos]))) {
      auto [next, ec] = std::from_chars(compact.data() + pos, compact.data() + compact.size(), mag);
      if (ec != std::errc{}) throw bad();
      pos = static_cast<std::size_t>(next - compact.data());
      have_mag = true;
    }
    std::uint32_t k = 0;
    if (pos < compact.size() && (compact[pos] == '*' || compact[pos] == 'z')) {
      if (compact[pos] == '*') ++pos;
      if (pos >= compact.size() || compact[pos] != 'z') throw bad();
      ++pos;
      k = 1;
      if (pos < compact.size() && compact[pos] == '^') {
        ++pos;
        auto [next, ec] = std::from_chars(compact.data() + pos, compact.data() + compact.size(), k);
        if (ec != std::errc{}) throw bad();
        pos = static_cast<std::size_t>(next - compact.data());
      }
    } else if (!have_mag) {
      throw bad();
    }
    if (k >= p - 1) throw bad();
    r.c_[k] = add_checked(r.c_[k], sign * mag);
  }
  return r;
}

}  // namespace weilcode
