#include "plateau/algebra.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <utility>

namespace plateau {

bool is_prime(u64 value) {
  if (value < 2) return false;
  for (u64 d = 2; d * d <= value; ++d) {
    if (value % d == 0) return false;
  }
  return true;
}

unsigned index_bits(std::uint32_t p, std::uint32_t k) {
  // Smallest b with 2^b >= p^k; saturates at 64.
  unsigned __int128 value = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    value *= p;
    if (value > (static_cast<unsigned __int128>(1) << 64)) return 64;
  }
  unsigned bits = 0;
  while ((static_cast<unsigned __int128>(1) << bits) < value) ++bits;
  return bits;
}

DomainParams::DomainParams(std::uint32_t p_, std::uint32_t n_, std::uint32_t m_) : p(p_), n(n_), m(m_) {
  if (!is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
  if (n < 1 || m < 1) throw std::invalid_argument("dimensions n and m must be at least 1");
  if (index_bits(p, n) > kMaxIndexBits || index_bits(p, m) > kMaxIndexBits) {
    throw BudgetExceeded("p^n and p^m must not exceed 2^" + std::to_string(kMaxIndexBits));
  }
}

FuncTable::FuncTable(DomainParams params, std::vector<std::uint32_t> values)
    : params_(params), values_(std::move(values)) {
  if (values_.size() != params_.input_size()) {
    throw std::invalid_argument("table has " + std::to_string(values_.size()) + " entries, expected p^n = " +
                                std::to_string(params_.input_size()));
  }
  const u64 limit = params_.output_size();
  for (u64 x = 0; x < values_.size(); ++x) {
    if (values_[x] >= limit) {
      throw std::invalid_argument("value " + std::to_string(values_[x]) + " at input " + std::to_string(x) +
                                  " is not below p^m = " + std::to_string(limit));
    }
  }
}

// ---------------------------------------------------------------------------

namespace {

void check_index(u64 i, std::uint32_t p, std::uint32_t len) {
  if (i >= ipow(p, len)) {
    throw std::out_of_range("index " + std::to_string(i) + " out of range for F_" + std::to_string(p) + "^" +
                            std::to_string(len));
  }
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // a^(p-2) mod p
  u64 result = 1, base = a % p;
  for (u64 e = p - 2; e != 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<std::uint32_t>(result);
}

}  // namespace

std::vector<std::uint32_t> to_digits(u64 index, std::uint32_t p, std::uint32_t len) {
  std::vector<std::uint32_t> digits(len);
  for (std::uint32_t k = 0; k < len; ++k) {
    digits[k] = static_cast<std::uint32_t>(index % p);
    index /= p;
  }
  return digits;
}

u64 from_digits(std::span<const std::uint32_t> digits, std::uint32_t p) {
  u64 out = 0;
  for (std::size_t k = digits.size(); k-- > 0;) out = out * p + digits[k] % p;
  return out;
}

u64 vec_add(u64 i, u64 j, std::uint32_t p, std::uint32_t len) {
  check_index(i, p, len);
  check_index(j, p, len);
  return detail::add_digits(i, j, p);
}

u64 vec_sub(u64 i, u64 j, std::uint32_t p, std::uint32_t len) {
  check_index(i, p, len);
  check_index(j, p, len);
  return detail::sub_digits(i, j, p);
}

u64 vec_neg(u64 i, std::uint32_t p, std::uint32_t len) {
  check_index(i, p, len);
  return detail::sub_digits(0, i, p);
}

u64 vec_scale(std::uint32_t c, u64 i, std::uint32_t p, std::uint32_t len) {
  check_index(i, p, len);
  auto digits = to_digits(i, p, len);
  for (auto& d : digits) d = static_cast<std::uint32_t>(static_cast<u64>(d) * (c % p) % p);
  return from_digits(digits, p);
}

std::uint32_t dot(u64 i, u64 j, std::uint32_t p, std::uint32_t len) {
  check_index(i, p, len);
  check_index(j, p, len);
  return detail::dot_digits(i, j, p);
}

// ---------------------------------------------------------------------------

MatrixFp::MatrixFp(std::uint32_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), entries_(rows * cols, 0) {
  if (!is_prime(p)) throw std::invalid_argument("matrix characteristic must be prime");
}

MatrixFp::MatrixFp(std::uint32_t p, std::vector<std::vector<std::uint32_t>> rows)
    : MatrixFp(p, rows.size(), rows.empty() ? 0 : rows.front().size()) {
  for (std::size_t r = 0; r < rows_; ++r) {
    if (rows[r].size() != cols_) throw std::invalid_argument("matrix rows have different lengths");
    for (std::size_t c = 0; c < cols_; ++c) set(r, c, rows[r][c]);
  }
}

MatrixFp MatrixFp::identity(std::uint32_t p, std::size_t size) {
  MatrixFp out(p, size, size);
  for (std::size_t i = 0; i < size; ++i) out.set(i, i, 1);
  return out;
}

void MatrixFp::set(std::size_t r, std::size_t c, std::uint32_t v) {
  if (v >= p_) throw std::invalid_argument("matrix entry " + std::to_string(v) + " is not in F_" + std::to_string(p_));
  entries_[r * cols_ + c] = v;
}

std::size_t MatrixFp::rank() const {
  std::vector<std::uint32_t> a = entries_;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols_ && rank < rows_; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows_ && a[pivot * cols_ + col] == 0) ++pivot;
    if (pivot == rows_) continue;
    for (std::size_t c = 0; c < cols_; ++c) std::swap(a[pivot * cols_ + c], a[rank * cols_ + c]);
    const u64 scale = inv_mod(a[rank * cols_ + col], p_);
    for (std::size_t c = 0; c < cols_; ++c) a[rank * cols_ + c] = static_cast<std::uint32_t>(a[rank * cols_ + c] * scale % p_);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == rank || a[r * cols_ + col] == 0) continue;
      const u64 factor = a[r * cols_ + col];
      for (std::size_t c = 0; c < cols_; ++c) {
        a[r * cols_ + c] = static_cast<std::uint32_t>((a[r * cols_ + c] + p_ * p_ - factor * a[rank * cols_ + c]) % p_);
      }
    }
    ++rank;
  }
  return rank;
}

u64 MatrixFp::apply(u64 x) const {
  if (p_ == 2 && cols_ <= 64) {
    u64 out = 0;
    for (std::size_t r = 0; r < rows_; ++r) {
      u64 row_bits = 0;
      for (std::size_t c = 0; c < cols_; ++c) row_bits |= static_cast<u64>(entries_[r * cols_ + c]) << c;
      out |= static_cast<u64>(__builtin_popcountll(row_bits & x) & 1) << r;
    }
    return out;
  }
  const auto digits = to_digits(x, p_, static_cast<std::uint32_t>(cols_));
  std::vector<std::uint32_t> image(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    u64 acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc += static_cast<u64>(entries_[r * cols_ + c]) * digits[c];
    image[r] = static_cast<std::uint32_t>(acc % p_);
  }
  return from_digits(image, p_);
}

std::vector<std::vector<std::uint32_t>> MatrixFp::to_rows() const {
  std::vector<std::vector<std::uint32_t>> out(rows_, std::vector<std::uint32_t>(cols_));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r][c] = at(r, c);
  return out;
}

// ---------------------------------------------------------------------------
// Polynomials over F_p, coefficients low -> high.

namespace {

void trim(Polynomial& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Polynomial poly_mod(Polynomial a, const Polynomial& f, std::uint32_t p) {
  trim(a);
  Polynomial g = f;
  trim(g);
  const std::size_t dg = g.size() - 1;
  const u64 lead_inv = inv_mod(g.back(), p);
  while (a.size() >= g.size()) {
    const u64 factor = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - g.size();
    for (std::size_t i = 0; i <= dg; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - factor * g[i] % p) % p);
    }
    trim(a);
  }
  return a;
}

Polynomial poly_mulmod(const Polynomial& a, const Polynomial& b, const Polynomial& f, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Polynomial prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<u64>(a[i]) * b[j]) % p);
  return poly_mod(std::move(prod), f, p);
}

Polynomial poly_powmod(Polynomial base, u64 e, const Polynomial& f, std::uint32_t p) {
  Polynomial result{1};
  base = poly_mod(std::move(base), f, p);
  while (e != 0) {
    if (e & 1) result = poly_mulmod(result, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return result;
}

Polynomial poly_gcd(Polynomial a, Polynomial b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Polynomial r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Primitive polynomials, coefficients low -> high.
const std::map<std::pair<std::uint32_t, std::uint32_t>, Polynomial>& bundled_moduli() {
  static const std::map<std::pair<std::uint32_t, std::uint32_t>, Polynomial> table = {
      {{2, 1}, {1, 1}},
      {{2, 2}, {1, 1, 1}},
      {{2, 3}, {1, 1, 0, 1}},
      {{2, 4}, {1, 1, 0, 0, 1}},
      {{2, 5}, {1, 0, 1, 0, 0, 1}},
      {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
      {{2, 7}, {1, 1, 0, 0, 0, 0, 0, 1}},
      {{2, 8}, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
      {{2, 9}, {1, 0, 0, 0, 1, 0, 0, 0, 0, 1}},
      {{2, 10}, {1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1}},
      {{2, 11}, {1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {{2, 12}, {1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1}},
      {{2, 13}, {1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {{2, 14}, {1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1}},
      {{2, 15}, {1, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {{2, 16}, {1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {{3, 1}, {1, 1}},
      {{3, 2}, {2, 2, 1}},
      {{3, 3}, {1, 2, 0, 1}},
      {{3, 4}, {2, 0, 0, 2, 1}},
      {{3, 5}, {1, 2, 0, 0, 0, 1}},
      {{3, 6}, {2, 2, 1, 0, 2, 0, 1}},
      {{3, 7}, {1, 0, 2, 0, 0, 0, 0, 1}},
      {{3, 8}, {2, 2, 2, 0, 1, 2, 0, 0, 1}},
      {{5, 1}, {3, 1}},
      {{5, 2}, {2, 4, 1}},
      {{5, 3}, {3, 3, 0, 1}},
      {{5, 4}, {2, 4, 4, 0, 1}},
      {{5, 5}, {3, 4, 0, 0, 0, 1}},
      {{7, 1}, {4, 1}},
      {{7, 2}, {3, 6, 1}},
      {{7, 3}, {4, 0, 6, 1}},
      {{7, 4}, {3, 4, 5, 0, 1}},
  };
  return table;
}

}  // namespace

bool is_irreducible(const Polynomial& f_in, std::uint32_t p) {
  Polynomial f = f_in;
  trim(f);
  if (f.size() < 2) return false;
  const std::size_t deg = f.size() - 1;
  if (deg == 1) return true;
  const Polynomial x{0, 1};
  Polynomial h = x;
  for (std::size_t i = 1; i <= deg / 2; ++i) {
    h = poly_powmod(h, p, f, p);  // h = x^{p^i} mod f
    Polynomial diff = h;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    const Polynomial g = poly_gcd(f, diff, p);
    if (g.size() != 1) return false;  // nonconstant common factor (or diff == 0)
  }
  return true;
}

Polynomial default_modulus(std::uint32_t p, std::uint32_t deg) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (deg < 1) throw std::invalid_argument("field degree must be at least 1");
  const auto& table = bundled_moduli();
  if (auto it = table.find({p, deg}); it != table.end()) return it->second;
  if (index_bits(p, deg) > kMaxIndexBits) throw BudgetExceeded("field too large");
  // Smallest monic irreducible: enumerate the lower coefficients as a base-p counter.
  const u64 count = ipow(p, deg);
  for (u64 lower = 1; lower < count; ++lower) {
    Polynomial f = to_digits(lower, p, deg);
    if (f[0] == 0) continue;
    f.push_back(1);
    if (is_irreducible(f, p)) return f;
  }
  throw std::logic_error("no irreducible polynomial found");
}

// ---------------------------------------------------------------------------

FieldCtx::FieldCtx(std::uint32_t p, std::uint32_t deg, Polynomial modulus)
    : p_(p), deg_(deg), modulus_(std::move(modulus)) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
  if (deg < 1) throw std::invalid_argument("field degree must be at least 1");
  if (index_bits(p, deg) > kMaxIndexBits) throw BudgetExceeded("field order exceeds 2^" + std::to_string(kMaxIndexBits));
  if (modulus_.size() != deg + 1 || modulus_.back() != 1) {
    throw std::invalid_argument("modulus must be monic of degree " + std::to_string(deg));
  }
  for (auto c : modulus_) {
    if (c >= p) throw std::invalid_argument("modulus coefficient out of range");
  }
  if (!is_irreducible(modulus_, p)) throw std::invalid_argument("modulus is not irreducible over F_" + std::to_string(p));
  order_ = ipow(p, deg);
  if (p == 2) {
    for (std::uint32_t i = 0; i < deg; ++i) reduce_mask_ |= static_cast<u64>(modulus_[i]) << i;
  }
}

FieldCtx FieldCtx::standard(std::uint32_t p, std::uint32_t deg) { return FieldCtx(p, deg, default_modulus(p, deg)); }

u64 FieldCtx::mul(u64 a, u64 b) const {
  if (p_ == 2) {
    u64 result = 0;
    const u64 top = static_cast<u64>(1) << deg_;
    while (b != 0) {
      if (b & 1) result ^= a;
      b >>= 1;
      a <<= 1;
      if (a & top) a = (a ^ top) ^ reduce_mask_;
    }
    return result;
  }
  std::array<u64, 2 * kMaxIndexBits> prod{};
  std::array<std::uint32_t, kMaxIndexBits> da{}, db{};
  for (std::uint32_t k = 0; k < deg_; ++k) {
    da[k] = static_cast<std::uint32_t>(a % p_);
    db[k] = static_cast<std::uint32_t>(b % p_);
    a /= p_;
    b /= p_;
  }
  for (std::uint32_t i = 0; i < deg_; ++i) {
    if (da[i] == 0) continue;
    for (std::uint32_t j = 0; j < deg_; ++j) prod[i + j] += static_cast<u64>(da[i]) * db[j];
  }
  for (std::size_t k = 0; k < 2 * deg_ - 1; ++k) prod[k] %= p_;
  // Reduce by the monic modulus from the top: X^deg = -sum modulus_i X^i.
  for (std::size_t k = 2 * deg_ - 2; k >= deg_; --k) {
    const u64 c = prod[k] % p_;
    if (c == 0) continue;
    prod[k] = 0;
    const std::size_t shift = k - deg_;
    for (std::uint32_t i = 0; i < deg_; ++i) {
      prod[shift + i] = (prod[shift + i] + (p_ - modulus_[i]) * c) % p_;
    }
  }
  u64 out = 0;
  for (std::size_t k = deg_; k-- > 0;) out = out * p_ + prod[k] % p_;
  return out;
}

u64 FieldCtx::pow(u64 a, u64 e) const {
  u64 result = 1;
  while (e != 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

u64 FieldCtx::inv(u64 a) const {
  if (a == 0) throw std::domain_error("inversion of zero in F_" + std::to_string(p_) + "^" + std::to_string(deg_));
  return pow(a, order_ - 2);
}

u64 FieldCtx::rel_trace(u64 a, std::uint32_t m) const {
  if (m == 0 || deg_ % m != 0) {
    throw std::invalid_argument("relative trace needs m | deg (m = " + std::to_string(m) + ", deg = " +
                                std::to_string(deg_) + ")");
  }
  const u64 q = ipow(p_, m);
  u64 sum = 0, term = a;
  for (std::uint32_t i = 0; i < deg_ / m; ++i) {
    sum = add(sum, term);
    term = pow(term, q);
  }
  return sum;
}

bool FieldCtx::is_primitive_element(u64 a) const {
  if (a == 0) return false;
  const u64 group = order_ - 1;
  u64 rest = group;
  for (u64 f = 2; f * f <= rest; ++f) {
    if (rest % f != 0) continue;
    while (rest % f == 0) rest /= f;
    if (pow(a, group / f) == 1) return false;
  }
  if (rest > 1 && pow(a, group / rest) == 1) return false;
  return true;
}

// ---------------------------------------------------------------------------

SubfieldEncoding::SubfieldEncoding(const FieldCtx& ctx, std::uint32_t m) : p_(ctx.p()), deg_(ctx.deg()), m_(m) {
  if (m == 0 || deg_ % m != 0) {
    throw std::invalid_argument("subfield degree " + std::to_string(m) + " does not divide " + std::to_string(deg_));
  }
  const u64 q = ipow(p_, m);
  // Matrix of z -> z^{q} - z: column j holds the digits of (X^j)^q - X^j.
  std::vector<std::vector<std::uint32_t>> a(deg_, std::vector<std::uint32_t>(deg_, 0));
  for (std::uint32_t j = 0; j < deg_; ++j) {
    const u64 xj = ipow(p_, j);
    const auto col = to_digits(ctx.sub(ctx.pow(xj, q), xj), p_, deg_);
    for (std::uint32_t i = 0; i < deg_; ++i) a[i][j] = col[i];
  }
  // Reduced row echelon form.
  std::vector<std::uint32_t> pivot_cols;
  std::uint32_t row = 0;
  for (std::uint32_t col = 0; col < deg_ && row < deg_; ++col) {
    std::uint32_t piv = row;
    while (piv < deg_ && a[piv][col] == 0) ++piv;
    if (piv == deg_) continue;
    std::swap(a[piv], a[row]);
    const u64 s = inv_mod(a[row][col], p_);
    for (auto& v : a[row]) v = static_cast<std::uint32_t>(v * s % p_);
    for (std::uint32_t r = 0; r < deg_; ++r) {
      if (r == row || a[r][col] == 0) continue;
      const u64 f = a[r][col];
      for (std::uint32_t c = 0; c < deg_; ++c) a[r][c] = static_cast<std::uint32_t>((a[r][c] + p_ * p_ - f * a[row][c]) % p_);
    }
    pivot_cols.push_back(col);
    ++row;
  }
  for (std::uint32_t col = 0; col < deg_; ++col) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), col) == pivot_cols.end()) free_positions_.push_back(col);
  }
  if (free_positions_.size() != m) throw std::logic_error("subfield kernel has unexpected dimension");
  for (std::uint32_t f : free_positions_) {
    std::vector<std::uint32_t> v(deg_, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) v[pivot_cols[r]] = (p_ - a[r][f]) % p_;
    basis_.push_back(from_digits(v, p_));
  }
}

u64 SubfieldEncoding::encode(u64 element) const {
  if (element >= ipow(p_, deg_)) throw std::out_of_range("field element out of range");
  const auto digits = to_digits(element, p_, deg_);
  std::vector<std::uint32_t> coords(m_);
  for (std::uint32_t k = 0; k < m_; ++k) coords[k] = digits[free_positions_[k]];
  const u64 index = from_digits(coords, p_);
  // Kernel elements are determined by their free coordinates.
  if (decode(index) != element) {
    throw std::invalid_argument("element " + std::to_string(element) + " is not in the degree-" + std::to_string(m_) +
                                " subfield");
  }
  return index;
}

u64 SubfieldEncoding::decode(u64 index) const {
  if (index >= ipow(p_, m_)) throw std::out_of_range("subfield index out of range");
  const auto coords = to_digits(index, p_, m_);
  std::vector<std::uint32_t> acc(deg_, 0);
  for (std::uint32_t k = 0; k < m_; ++k) {
    if (coords[k] == 0) continue;
    const auto b = to_digits(basis_[k], p_, deg_);
    for (std::uint32_t i = 0; i < deg_; ++i) acc[i] = static_cast<std::uint32_t>((acc[i] + static_cast<u64>(coords[k]) * b[i]) % p_);
  }
  return from_digits(acc, p_);
}

}  // namespace plateau
