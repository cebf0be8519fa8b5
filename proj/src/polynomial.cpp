#include "arrfree/polynomial.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "arrfree/error.hpp"

namespace arrfree {

IntPolynomial::IntPolynomial(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

void IntPolynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPolynomial IntPolynomial::constant(Int c) {
  std::vector<Int> v;
  if (c != 0) v.push_back(std::move(c));
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::t_power(std::size_t k) {
  std::vector<Int> v(k + 1, Int(0));
  v[k] = 1;
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::from_roots(const std::vector<Int>& roots) {
  IntPolynomial p = constant(1);
  for (const Int& r : roots) {
    p = p * IntPolynomial({-r, Int(1)});
  }
  return p;
}

Int IntPolynomial::leading() const {
  if (is_zero()) throw Error(errc::internal, "leading coefficient of zero polynomial");
  return c_.back();
}

Int IntPolynomial::operator()(const Int& t) const {
  Int acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
  std::vector<Int> v(std::max(c_.size(), o.c_.size()), Int(0));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) + o.coeff(i);
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::operator-() const {
  std::vector<Int> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = -c_[i];
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const { return *this + (-o); }

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
  if (is_zero() || o.is_zero()) return IntPolynomial();
  std::vector<Int> v(c_.size() + o.c_.size() - 1, Int(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
  }
  return IntPolynomial(std::move(v));
}

PolyDivMod IntPolynomial::divmod_monic(const IntPolynomial& divisor) const {
  if (divisor.is_zero() || !divisor.is_monic()) {
    throw Error(errc::internal, "divisor must be monic");
  }
  std::vector<Int> rem = c_;
  const int dd = divisor.degree();
  std::vector<Int> quot;
  if (degree() >= dd) quot.assign(static_cast<std::size_t>(degree() - dd) + 1, Int(0));
  for (int k = degree() - dd; k >= 0; --k) {
    const std::size_t top = static_cast<std::size_t>(k + dd);
    Int q = rem[top];
    if (q == 0) continue;
    quot[static_cast<std::size_t>(k)] = q;
    for (int j = 0; j <= dd; ++j) {
      rem[static_cast<std::size_t>(k + j)] -= q * divisor.c_[static_cast<std::size_t>(j)];
    }
  }
  return PolyDivMod{IntPolynomial(std::move(quot)), IntPolynomial(std::move(rem))};
}

bool poly_divides(const IntPolynomial& p, const IntPolynomial& q) {
  if (p.is_zero()) throw Error(errc::precondition, "divisor polynomial is zero");
  if (q.is_zero()) return true;
  if (q.degree() < p.degree()) return false;
  // Fraction-free pseudo-remainder: lc(p)^k * q mod p. Over a field the
  // pseudo-remainder vanishes exactly when p divides q.
  std::vector<Int> rem = q.coeffs();
  const std::vector<Int>& d = p.coeffs();
  const Int lc = p.leading();
  const int dd = p.degree();
  for (int k = static_cast<int>(rem.size()) - 1 - dd; k >= 0; --k) {
    const Int top = rem[static_cast<std::size_t>(k + dd)];
    if (top == 0) continue;
    for (std::size_t i = 0; i < rem.size(); ++i) rem[i] *= lc;
    for (int j = 0; j <= dd; ++j) {
      rem[static_cast<std::size_t>(k + j)] -= top * d[static_cast<std::size_t>(j)];
    }
  }
  for (int i = 0; i < dd; ++i) {
    if (rem[static_cast<std::size_t>(i)] != 0) return false;
  }
  return true;
}

std::string IntPolynomial::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    const Int& c = c_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!s.empty()) s += (c > 0) ? " + " : " - ";
    else if (c < 0) s += "-";
    Int a = abs(c);
    const bool unit = (a == 1) && i > 0;
    if (!unit) s += a.get_str();
    if (i > 0) {
      if (!unit) s += "*";
      s += var;
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

nlohmann::json poly_to_json(const IntPolynomial& p) {
  nlohmann::json a = nlohmann::json::array();
  for (const Int& c : p.coeffs()) a.push_back(int_to_json(c));
  return a;
}

IntPolynomial poly_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(errc::parse, "polynomial JSON must be an array");
  std::vector<Int> c;
  for (const auto& e : j) c.push_back(int_from_json(e));
  return IntPolynomial(std::move(c));
}

}  // namespace arrfree
