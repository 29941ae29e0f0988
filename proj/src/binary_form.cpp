#include "fatpoints/binary_form.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "fatpoints/fp_linalg.hpp"

namespace fatpoints {

namespace {

using Poly = std::vector<std::uint32_t>;

void strip(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

/// Dehomogenize at s = 1: the polynomial sum c_j t^j with trailing zeros removed.
Poly affine_part(const BinaryForm& f) {
  Poly p = f.coeffs();
  strip(p);
  return p;
}

/// Long division; returns the quotient and leaves the remainder in `a`.
Poly divmod(Poly& a, const Poly& b, const PrimeField& F) {
  if (b.empty()) throw std::domain_error("division by the zero polynomial");
  strip(a);
  if (a.size() < b.size()) return {};
  Poly q(a.size() - b.size() + 1, 0);
  const std::uint32_t inv_lead = F.inv(b.back());
  for (std::size_t shift = q.size(); shift-- > 0;) {
    const std::uint32_t coef = F.mul(a[shift + b.size() - 1], inv_lead);
    q[shift] = coef;
    if (coef == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = F.sub(a[shift + j], F.mul(coef, b[j]));
  }
  strip(a);
  return q;
}

Poly poly_gcd(Poly a, Poly b, const PrimeField& F) {
  strip(a);
  strip(b);
  while (!b.empty()) {
    divmod(a, b, F);
    std::swap(a, b);
  }
  if (!a.empty()) {
    const std::uint32_t inv_lead = F.inv(a.back());
    for (auto& c : a) c = F.mul(c, inv_lead);
  }
  return a;
}

BinaryForm homogenize(const PrimeField& F, const Poly& p, std::int64_t degree) {
  std::vector<std::uint32_t> c(static_cast<std::size_t>(degree + 1), 0);
  std::copy(p.begin(), p.end(), c.begin());
  return BinaryForm(F, std::move(c));
}

void require_same_field(const BinaryForm& a, const BinaryForm& b) {
  if (!(a.field() == b.field())) throw std::invalid_argument("binary forms over different fields");
}

}  // namespace

BinaryForm::BinaryForm(PrimeField field, std::int64_t degree) : field_(field) {
  if (degree < 0) throw std::invalid_argument("binary form degree must be nonnegative");
  c_.assign(static_cast<std::size_t>(degree + 1), 0);
}

BinaryForm::BinaryForm(PrimeField field, std::vector<std::uint32_t> coeffs) : field_(field), c_(std::move(coeffs)) {
  if (c_.empty()) throw std::invalid_argument("binary form needs at least one coefficient");
  for (auto& v : c_) v = field_.from_int(v);
}

BinaryForm BinaryForm::monomial(PrimeField field, std::int64_t degree, std::int64_t j) {
  if (j < 0 || j > degree) throw std::out_of_range("monomial index out of range");
  BinaryForm f(field, degree);
  f.c_[static_cast<std::size_t>(j)] = 1;
  return f;
}

bool BinaryForm::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](std::uint32_t v) { return v == 0; });
}

std::int64_t BinaryForm::s_valuation() const {
  for (std::int64_t j = degree(); j >= 0; --j) {
    if (c_[static_cast<std::size_t>(j)] != 0) return degree() - j;
  }
  return degree();
}

std::uint32_t BinaryForm::eval(std::uint32_t s, std::uint32_t t) const {
  std::uint32_t acc = 0;
  std::uint32_t tpow = 1;
  std::vector<std::uint32_t> spow(c_.size(), 1);
  for (std::size_t i = 1; i < c_.size(); ++i) spow[i] = field_.mul(spow[i - 1], s);
  for (std::size_t j = 0; j < c_.size(); ++j) {
    acc = field_.add(acc, field_.mul(c_[j], field_.mul(tpow, spow[c_.size() - 1 - j])));
    tpow = field_.mul(tpow, t);
  }
  return acc;
}

BinaryForm BinaryForm::operator+(const BinaryForm& o) const {
  require_same_field(*this, o);
  if (o.degree() != degree()) throw std::invalid_argument("adding binary forms of different degrees");
  BinaryForm out = *this;
  for (std::size_t j = 0; j < c_.size(); ++j) out.c_[j] = field_.add(c_[j], o.c_[j]);
  return out;
}

BinaryForm BinaryForm::operator-(const BinaryForm& o) const { return *this + o.scaled(field_.neg(1)); }

BinaryForm BinaryForm::operator*(const BinaryForm& o) const {
  require_same_field(*this, o);
  BinaryForm out(field_, degree() + o.degree());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      out.c_[i + j] = field_.add(out.c_[i + j], field_.mul(c_[i], o.c_[j]));
    }
  }
  return out;
}

BinaryForm BinaryForm::scaled(std::uint32_t a) const {
  BinaryForm out = *this;
  for (auto& v : out.c_) v = field_.mul(v, a);
  return out;
}

BinaryForm gcd(const BinaryForm& a, const BinaryForm& b) {
  require_same_field(a, b);
  if (a.is_zero() && b.is_zero()) throw std::invalid_argument("gcd of two zero forms");
  const PrimeField& F = a.field();
  if (a.is_zero() || b.is_zero()) {
    const BinaryForm& f = a.is_zero() ? b : a;
    Poly p = affine_part(f);
    return homogenize(F, poly_gcd(p, {}, F), f.degree());
  }
  const std::int64_t e = std::min(a.s_valuation(), b.s_valuation());
  const Poly g = poly_gcd(affine_part(a), affine_part(b), F);
  return homogenize(F, g, e + static_cast<std::int64_t>(g.size()) - 1);
}

BinaryForm gcd(const std::vector<BinaryForm>& forms) {
  std::vector<const BinaryForm*> nonzero;
  for (const auto& f : forms) {
    if (!f.is_zero()) nonzero.push_back(&f);
  }
  if (nonzero.empty()) throw std::invalid_argument("gcd of zero forms");
  BinaryForm g = gcd(*nonzero[0], *nonzero[0]);
  for (std::size_t i = 1; i < nonzero.size(); ++i) g = gcd(g, *nonzero[i]);
  return g;
}

BinaryForm exact_divide(const BinaryForm& a, const BinaryForm& b) {
  require_same_field(a, b);
  const PrimeField& F = a.field();
  if (b.is_zero()) throw std::domain_error("division by the zero form");
  const std::int64_t qdeg = a.degree() - b.degree();
  if (qdeg < 0) throw std::domain_error("divisor has larger degree than dividend");
  Poly rem = affine_part(a);
  const Poly q = divmod(rem, affine_part(b), F);
  if (!rem.empty() || static_cast<std::int64_t>(q.size()) - 1 > qdeg)
    throw std::domain_error("binary form does not divide");
  BinaryForm out = homogenize(F, q, qdeg);
  if (!(out * b == a)) throw std::domain_error("binary form does not divide");
  return out;
}

std::int64_t sylvester_gcd_degree(const BinaryForm& a, const BinaryForm& b) {
  require_same_field(a, b);
  if (a.is_zero() || b.is_zero()) throw std::invalid_argument("Sylvester matrix needs nonzero forms");
  const std::int64_t da = a.degree(), db = b.degree();
  if (da + db == 0) return 0;
  // Rows are the shifted multiples s^(db-1-i) t^i a and s^(da-1-i) t^i b in degree da+db-1.
  PrimeFieldMatrix syl(a.field(), da + db, da + db);
  for (std::int64_t i = 0; i < db; ++i) {
    for (std::int64_t j = 0; j <= da; ++j) syl.set(i, i + j, a.coeff(j));
  }
  for (std::int64_t i = 0; i < da; ++i) {
    for (std::int64_t j = 0; j <= db; ++j) syl.set(db + i, i + j, b.coeff(j));
  }
  return da + db - rank(syl);
}

Parametrization make_parametrization(BinaryForm f0, BinaryForm f1, BinaryForm f2) {
  if (!(f0.field() == f1.field()) || !(f0.field() == f2.field()))
    throw std::invalid_argument("parametrization forms over different fields");
  if (f0.degree() != f1.degree() || f0.degree() != f2.degree())
    throw std::invalid_argument("parametrization forms must share one degree");
  if (f0.degree() < 1) throw std::invalid_argument("parametrization degree must be at least 1");
  if (f0.is_zero() && f1.is_zero() && f2.is_zero()) throw std::invalid_argument("parametrization forms all zero");
  const BinaryForm g = gcd({f0, f1, f2});
  if (g.degree() != 0)
    throw std::invalid_argument("parametrization forms share a factor of degree " + std::to_string(g.degree()));
  return Parametrization{{std::move(f0), std::move(f1), std::move(f2)}};
}

}  // namespace fatpoints
