#include "plateau/cycint.hpp"

#include <limits>
#include <stdexcept>

namespace plateau {

namespace {

std::size_t basis_size(std::uint32_t p) { return p == 2 ? 1 : p - 1; }

i64 narrow(i128 v) {
  if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min()) {
    throw std::overflow_error("cyclotomic coefficient exceeds 64 bits");
  }
  return static_cast<i64>(v);
}

void check_same(const CycInt& a, const CycInt& b) {
  if (a.p() != b.p()) throw std::invalid_argument("cyclotomic operands over different primes");
}

}  // namespace

CycInt::CycInt(std::uint32_t p) : p_(p), coeffs_(basis_size(p), 0) {
  if (p < 2) throw std::invalid_argument("CycInt needs a prime p >= 2");
}

CycInt CycInt::from_integer(std::uint32_t p, i64 value) {
  CycInt out(p);
  out.coeffs_[0] = value;
  return out;
}

CycInt CycInt::from_exponent_counts(std::uint32_t p, std::span<const i64> counts) {
  if (counts.size() != p) throw std::invalid_argument("exponent count vector must have length p");
  CycInt out(p);
  const i64 top = counts[p - 1];
  for (std::size_t k = 0; k < out.coeffs_.size(); ++k) out.coeffs_[k] = counts[k] - top;
  return out;
}

CycInt CycInt::zeta_power(std::uint32_t p, i64 k) {
  std::vector<i64> counts(p, 0);
  const i64 r = ((k % static_cast<i64>(p)) + p) % p;
  counts[static_cast<std::size_t>(r)] = 1;
  return from_exponent_counts(p, counts);
}

CycInt CycInt::operator+(const CycInt& o) const {
  CycInt out = *this;
  out += o;
  return out;
}

CycInt& CycInt::operator+=(const CycInt& o) {
  check_same(*this, o);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] = narrow(static_cast<i128>(coeffs_[k]) + o.coeffs_[k]);
  return *this;
}

CycInt CycInt::operator-(const CycInt& o) const {
  check_same(*this, o);
  CycInt out = *this;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) out.coeffs_[k] = narrow(static_cast<i128>(coeffs_[k]) - o.coeffs_[k]);
  return out;
}

CycInt CycInt::operator-() const { return CycInt(p_) - *this; }

CycInt CycInt::operator*(const CycInt& o) const {
  check_same(*this, o);
  if (p_ == 2) return from_integer(2, narrow(static_cast<i128>(coeffs_[0]) * o.coeffs_[0]));
  std::vector<i128> wide(p_, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
      wide[(i + j) % p_] += static_cast<i128>(coeffs_[i]) * o.coeffs_[j];
    }
  }
  CycInt out(p_);
  for (std::size_t k = 0; k < out.coeffs_.size(); ++k) out.coeffs_[k] = narrow(wide[k] - wide[p_ - 1]);
  return out;
}

CycInt CycInt::conj() const {
  if (p_ == 2) return *this;
  // Length-p form v, then v'[k] = v[-k mod p].
  std::vector<i64> counts(p_, 0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) counts[(p_ - k) % p_] = coeffs_[k];
  return from_exponent_counts(p_, counts);
}

CycInt CycInt::sq_modulus() const { return *this * conj(); }

bool CycInt::is_zero() const {
  for (auto c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool CycInt::is_integer() const {
  for (std::size_t k = 1; k < coeffs_.size(); ++k)
    if (coeffs_[k] != 0) return false;
  return true;
}

std::optional<i64> CycInt::as_integer() const {
  if (!is_integer()) return std::nullopt;
  return coeffs_[0];
}

i64 CycInt::to_integer() const {
  if (!is_integer()) throw std::domain_error("element " + to_string() + " of Z[zeta_" + std::to_string(p_) + "] is not a rational integer");
  return coeffs_[0];
}

std::string CycInt::to_string() const {
  if (p_ == 2) return std::to_string(coeffs_[0]);
  std::string out = "[";
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (k) out += ' ';
    out += std::to_string(coeffs_[k]);
  }
  return out + "]";
}

}  // namespace plateau
