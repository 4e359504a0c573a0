// Copyright 2026 The aqrm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "exactpoly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace aqrm {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Integer parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
  Integer v(std::string(s), 10);
  return negative ? Integer(-v) : v;
}

Integer pow10(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = strip(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(strip(s.substr(0, slash)));
    std::string_view den_text = strip(s.substr(slash + 1));
    if (!den_text.empty() && den_text.front() == '+') den_text.remove_prefix(1);
    Integer den = parse_integer(den_text);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(s) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

  // Finite decimal with optional exponent.
  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    Integer ev = parse_integer(s.substr(e + 1));
    if (!ev.fits_slong_p() || abs(ev) > 4096) throw std::invalid_argument("exponent out of range");
    exponent = ev.get_si();
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) throw std::invalid_argument("malformed decimal");
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
      throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(s)) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    digits = std::string(s);
  }
  if (digits.empty()) digits = "0";
  Rational r(Integer(digits, 10));
  if (exponent > 0) r *= Rational(pow10(static_cast<unsigned long>(exponent)));
  if (exponent < 0) r /= Rational(pow10(static_cast<unsigned long>(-exponent)));
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

// ---------------------------------------------------------------------------
// UniPoly
// ---------------------------------------------------------------------------

UniPoly::UniPoly(std::vector<Rational> ascending) : coeffs_(std::move(ascending)) { trim(); }

UniPoly UniPoly::constant(const Rational& c) { return UniPoly({c}); }

UniPoly UniPoly::monomial(const Rational& c, int degree) {
  std::vector<Rational> v(static_cast<size_t>(degree) + 1);
  v.back() = c;
  return UniPoly(std::move(v));
}

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational UniPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[static_cast<size_t>(i)];
}

const Rational& UniPoly::leading() const {
  if (coeffs_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

Rational UniPoly::operator()(const Rational& t) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= t;
    acc += *it;
  }
  return acc;
}

double UniPoly::evaluate(double t) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + it->get_d();
  return acc;
}

UniPoly UniPoly::derivative() const {
  if (degree() < 1) return {};
  std::vector<Rational> v(coeffs_.size() - 1);
  for (size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * static_cast<long>(i);
  return UniPoly(std::move(v));
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return {};
  UniPoly r = *this;
  Rational inv = 1 / leading();
  return r *= inv;
}

UniPoly& UniPoly::operator+=(const UniPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(const Rational& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& v : coeffs_) v *= c;
  return *this;
}

UniPoly operator-(const UniPoly& a) {
  UniPoly r = a;
  return r *= Rational(-1);
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return UniPoly(std::move(v));
}

std::string UniPoly::to_string(char var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeffs_[static_cast<size_t>(i)];
    if (c == 0) continue;
    if (first) {
      os << c.get_str();
    } else {
      os << (c < 0 ? " - " : " + ") << Rational(abs(c)).get_str();
    }
    os << '*' << var << '^' << i;
    first = false;
  }
  return os.str();
}

UniDivision divmod(const UniPoly& num, const UniPoly& den) {
  if (den.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = num.coefficients();
  const int dd = den.degree();
  const int nd = num.degree();
  if (nd < dd) return {UniPoly(), num};
  std::vector<Rational> quo(static_cast<size_t>(nd - dd) + 1);
  const Rational inv_lead = 1 / den.leading();
  for (int k = nd - dd; k >= 0; --k) {
    Rational q = rem[static_cast<size_t>(k + dd)] * inv_lead;
    quo[static_cast<size_t>(k)] = q;
    if (q == 0) continue;
    for (int i = 0; i <= dd; ++i) rem[static_cast<size_t>(k + i)] -= q * den.coefficients()[static_cast<size_t>(i)];
  }
  rem.resize(static_cast<size_t>(dd));
  return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
}

UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = divmod(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

UniPoly squarefree_part(const UniPoly& p) {
  if (p.degree() < 1) return p.monic();
  UniPoly g = gcd(p, p.derivative());
  return divmod(p, g).quotient.monic();
}

// ---------------------------------------------------------------------------
// RatFunc
// ---------------------------------------------------------------------------

RatFunc::RatFunc(UniPoly num) : num_(std::move(num)), den_(UniPoly::constant(1)) {}

RatFunc::RatFunc(UniPoly num, UniPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = UniPoly::constant(1);
    return;
  }
  if (den_.degree() > 0) {
    UniPoly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = divmod(num_, g).quotient;
      den_ = divmod(den_, g).quotient;
    }
  }
  Rational lead = den_.leading();
  if (lead != 1) {
    Rational inv = 1 / lead;
    num_ *= inv;
    den_ *= inv;
  }
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ - b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero rational function");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RatFunc::to_string(char var) const {
  if (is_polynomial()) return num_.to_string(var);
  return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
}

// ---------------------------------------------------------------------------
// BivarPoly
// ---------------------------------------------------------------------------

BivarPoly BivarPoly::term(const Integer& c, int i, int j) {
  if (i < 0 || j < 0) throw std::invalid_argument("negative exponent");
  BivarPoly p;
  p.add_term({i, j}, c);
  return p;
}

void BivarPoly::add_term(const Exponent& e, const Integer& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Integer BivarPoly::coeff(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? Integer(0) : it->second;
}

int BivarPoly::degree_x() const { return terms_.empty() ? -1 : terms_.begin()->first.first; }

int BivarPoly::degree_d() const {
  int deg = -1;
  for (const auto& [e, c] : terms_) deg = std::max(deg, e.second);
  return deg;
}

UniPoly BivarPoly::x_coefficient(int i) const {
  std::vector<Rational> v;
  for (const auto& [e, c] : terms_) {
    if (e.first != i) continue;
    if (v.size() <= static_cast<size_t>(e.second)) v.resize(static_cast<size_t>(e.second) + 1);
    v[static_cast<size_t>(e.second)] = Rational(c);
  }
  return UniPoly(std::move(v));
}

UniPoly BivarPoly::specialize(const Rational& d_value) const {
  if (is_zero()) return {};
  std::vector<Rational> d_pow(static_cast<size_t>(degree_d()) + 1);
  d_pow[0] = 1;
  for (size_t j = 1; j < d_pow.size(); ++j) d_pow[j] = d_pow[j - 1] * d_value;
  std::vector<Rational> v(static_cast<size_t>(degree_x()) + 1);
  for (const auto& [e, c] : terms_) v[static_cast<size_t>(e.first)] += Rational(c) * d_pow[static_cast<size_t>(e.second)];
  return UniPoly(std::move(v));
}

Rational BivarPoly::evaluate(const Rational& x, const Rational& d) const {
  return specialize(d)(x);
}

double BivarPoly::evaluate(double x, double d) const {
  double acc = 0.0;
  for (const auto& [e, c] : terms_) acc += c.get_d() * std::pow(x, e.first) * std::pow(d, e.second);
  return acc;
}

double BivarPoly::abs_evaluate(double x, double d) const {
  double acc = 0.0;
  for (const auto& [e, c] : terms_)
    acc += std::abs(c.get_d()) * std::pow(std::abs(x), e.first) * std::pow(std::abs(d), e.second);
  return acc;
}

BivarPoly& BivarPoly::operator+=(const BivarPoly& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

BivarPoly& BivarPoly::operator-=(const BivarPoly& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e, Integer(-c));
  return *this;
}

BivarPoly& BivarPoly::operator*=(const Integer& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

BivarPoly operator-(const BivarPoly& a) {
  BivarPoly r = a;
  return r *= Integer(-1);
}

BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
  BivarPoly r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_)
      r.add_term({ea.first + eb.first, ea.second + eb.second}, ca * cb);
  return r;
}

std::string BivarPoly::to_text() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (first) {
      os << c.get_str();
    } else {
      os << (c < 0 ? " - " : " + ") << Integer(abs(c)).get_str();
    }
    os << "*x^" << e.first << "*d^" << e.second;
    first = false;
  }
  return os.str();
}

std::string BivarPoly::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : terms_) terms.push_back({e.first, e.second, c.get_str()});
  return nlohmann::json{{"terms", terms}}.dump();
}

BivarPoly BivarPoly::from_text(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw std::invalid_argument("empty polynomial text");
  BivarPoly p;
  size_t pos = 0;
  auto malformed = [&]() {
    return std::invalid_argument("malformed polynomial text near offset " + std::to_string(pos));
  };
  auto read_digits = [&]() {
    const size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) throw malformed();
    return parse_integer(std::string_view(s).substr(start, pos - start));
  };
  // Terms are signed products of integers, x, d and their powers.
  bool first = true;
  while (pos < s.size()) {
    Integer c = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      if (s[pos] == '-') c = -1;
      ++pos;
    } else if (!first) {
      throw malformed();
    }
    first = false;
    long i = 0, j = 0;
    for (bool more = true; more;) {
      if (pos >= s.size()) throw malformed();
      const char ch = s[pos];
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        c *= read_digits();
      } else if (ch == 'x' || ch == 'd') {
        ++pos;
        Integer e = 1;
        if (pos < s.size() && s[pos] == '^') {
          ++pos;
          e = read_digits();
        }
        if (!e.fits_sint_p()) throw std::invalid_argument("exponent too large");
        (ch == 'x' ? i : j) += e.get_si();
        if (i > (1 << 20) || j > (1 << 20)) throw std::invalid_argument("exponent too large");
      } else {
        throw malformed();
      }
      more = pos < s.size() && s[pos] == '*';
      if (more) ++pos;
    }
    p.add_term({static_cast<int>(i), static_cast<int>(j)}, c);
  }
  return p;
}

BivarPoly BivarPoly::from_json(std::string_view json) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("polynomial json: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("terms") || !doc["terms"].is_array())
    throw std::invalid_argument("polynomial json: missing \"terms\" array");
  BivarPoly p;
  for (const auto& t : doc["terms"]) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number_integer() ||
        !t[2].is_string())
      throw std::invalid_argument("polynomial json: each term must be [i, j, \"coeff\"]");
    int i = t[0].get<int>();
    int j = t[1].get<int>();
    if (i < 0 || j < 0) throw std::invalid_argument("polynomial json: negative exponent");
    p.add_term({i, j}, parse_integer(t[2].get<std::string>()));
  }
  return p;
}

BivarPoly poly_arith(const BivarPoly& a, const BivarPoly& b, PolyOp op) {
  switch (op) {
    case PolyOp::add: return a + b;
    case PolyOp::sub: return a - b;
    case PolyOp::mul: return a * b;
  }
  throw std::invalid_argument("unknown polynomial operation");
}

// ---------------------------------------------------------------------------
// XPoly and division over Q(d)
// ---------------------------------------------------------------------------

XPoly::XPoly(std::vector<RatFunc> ascending) : coeffs_(std::move(ascending)) { trim(); }

void XPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

XPoly XPoly::from(const BivarPoly& p) {
  std::vector<RatFunc> v(static_cast<size_t>(p.degree_x() + 1));
  for (int i = 0; i <= p.degree_x(); ++i) v[static_cast<size_t>(i)] = RatFunc(p.x_coefficient(i));
  return XPoly(std::move(v));
}

RatFunc XPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return {};
  return coeffs_[static_cast<size_t>(i)];
}

std::optional<BivarPoly> XPoly::to_integral() const {
  BivarPoly out;
  for (int i = 0; i <= degree(); ++i) {
    const RatFunc& c = coeffs_[static_cast<size_t>(i)];
    if (!c.is_polynomial()) return std::nullopt;
    // Denominators are normalized monic, so a polynomial coefficient has
    // denominator exactly 1.
    const auto& num = c.numerator().coefficients();
    for (size_t j = 0; j < num.size(); ++j) {
      if (num[j].get_den() != 1) return std::nullopt;
      out += BivarPoly::term(num[j].get_num(), i, static_cast<int>(j));
    }
  }
  return out;
}

XPoly operator+(const XPoly& a, const XPoly& b) {
  std::vector<RatFunc> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
  return XPoly(std::move(v));
}

XPoly operator-(const XPoly& a, const XPoly& b) {
  std::vector<RatFunc> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
  return XPoly(std::move(v));
}

XPoly operator*(const XPoly& a, const XPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<RatFunc> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (size_t i = 0; i < a.coeffs_.size(); ++i)
    for (size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] = v[i + j] + a.coeffs_[i] * b.coeffs_[j];
  return XPoly(std::move(v));
}

std::string XPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const RatFunc& c = coeffs_[static_cast<size_t>(i)];
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    os << "(" << c.to_string('d') << ")*x^" << i;
    first = false;
  }
  return os.str();
}

XDivision poly_div_x(const BivarPoly& num, const BivarPoly& den) {
  if (den.is_zero()) throw std::domain_error("division by the zero polynomial");
  XPoly d = XPoly::from(den);
  std::vector<RatFunc> rem = XPoly::from(num).coefficients();
  const int dd = d.degree();
  const int nd = static_cast<int>(rem.size()) - 1;
  if (nd < dd) return {XPoly(), XPoly(std::move(rem))};
  std::vector<RatFunc> quo(static_cast<size_t>(nd - dd) + 1);
  const RatFunc& lead = d.coefficients().back();
  for (int k = nd - dd; k >= 0; --k) {
    RatFunc q = rem[static_cast<size_t>(k + dd)] / lead;
    quo[static_cast<size_t>(k)] = q;
    if (q.is_zero()) continue;
    for (int i = 0; i <= dd; ++i)
      rem[static_cast<size_t>(k + i)] = rem[static_cast<size_t>(k + i)] - q * d.coefficients()[static_cast<size_t>(i)];
  }
  rem.resize(static_cast<size_t>(dd));
  return {XPoly(std::move(quo)), XPoly(std::move(rem))};
}

// ---------------------------------------------------------------------------
// Sturm sequences and root isolation
// ---------------------------------------------------------------------------

std::vector<UniPoly> sturm_sequence(const UniPoly& p) {
  std::vector<UniPoly> chain;
  if (p.is_zero()) return chain;
  chain.push_back(squarefree_part(p));
  if (chain[0].degree() < 1) return chain;
  chain.push_back(chain[0].derivative().monic());
  for (;;) {
    UniPoly r = divmod(chain[chain.size() - 2], chain.back()).remainder;
    if (r.is_zero()) break;
    // Scaling by a positive constant keeps the sign pattern and tames growth.
    Rational scale = 1 / abs(r.leading());
    chain.push_back(-(r * scale));
  }
  return chain;
}

namespace {

int variations(const std::vector<int>& signs) {
  int count = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace

int sign_variations(const std::vector<UniPoly>& chain, const Rational& t) {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& s : chain) signs.push_back(s.sign_at(t));
  return variations(signs);
}

int sign_variations_at_infinity(const std::vector<UniPoly>& chain) {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& s : chain) signs.push_back(s.sign_at_infinity());
  return variations(signs);
}

int count_roots(const std::vector<UniPoly>& chain, const Rational& a, const Rational& b) {
  return sign_variations(chain, a) - sign_variations(chain, b);
}

Rational root_bound(const UniPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("root bound of the zero polynomial");
  Rational best = 0;
  const Rational& lead = p.leading();
  for (int i = 0; i < p.degree(); ++i) {
    Rational r = abs(p.coeff(i) / lead);
    if (r > best) best = r;
  }
  return best + 1;
}

std::vector<RootInterval> isolate_positive_roots(const UniPoly& p, const Rational& precision) {
  if (p.is_zero()) throw std::invalid_argument("root isolation of the zero polynomial");
  if (precision <= 0) throw std::invalid_argument("root isolation precision must be positive");
  std::vector<RootInterval> out;
  std::vector<UniPoly> chain = sturm_sequence(p);
  if (chain[0].degree() < 1) return out;

  struct Pending {
    Rational lo, hi;
    int vlo, vhi;
  };
  Rational upper = root_bound(chain[0]);
  std::vector<Pending> stack{{0, upper, sign_variations(chain, 0), sign_variations(chain, upper)}};
  while (!stack.empty()) {
    Pending cur = std::move(stack.back());
    stack.pop_back();
    int count = cur.vlo - cur.vhi;
    if (count <= 0) continue;
    if (count == 1) {
      while (cur.hi - cur.lo > precision) {
        Rational mid = (cur.lo + cur.hi) / 2;
        int vmid = sign_variations(chain, mid);
        if (cur.vlo - vmid == 1) {
          cur.hi = mid;
          cur.vhi = vmid;
        } else {
          cur.lo = mid;
          cur.vlo = vmid;
        }
      }
      out.push_back({cur.lo, cur.hi});
      continue;
    }
    Rational mid = (cur.lo + cur.hi) / 2;
    int vmid = sign_variations(chain, mid);
    stack.push_back({mid, cur.hi, vmid, cur.vhi});
    stack.push_back({cur.lo, mid, cur.vlo, vmid});
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) { return a.lower < b.lower; });
  return out;
}

// ---------------------------------------------------------------------------
// RationalMatrix
// ---------------------------------------------------------------------------

RationalMatrix RationalMatrix::identity(int n, const Rational& c) {
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = c;
  return m;
}

RationalMatrix& RationalMatrix::operator+=(const RationalMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix shape mismatch");
  for (size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

RationalMatrix& RationalMatrix::operator-=(const RationalMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix shape mismatch");
  for (size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

RationalMatrix& RationalMatrix::operator*=(const Rational& c) {
  for (auto& v : data_) v *= c;
  return *this;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
  RationalMatrix r(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols_; ++j)
        if (b(k, j) != 0) r(i, j) += aik * b(k, j);
    }
  return r;
}

}  // namespace aqrm
