#include "joindeg/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace joindeg {

// ---------------------------------------------------------------- HomPoly

HomPoly HomPoly::monomial(FieldSpec spec, Exponents e, Fq c) {
  int d = std::accumulate(e.begin(), e.end(), 0);
  HomPoly p(spec, static_cast<int>(e.size()), d);
  p.add_term(e, c);
  return p;
}

void HomPoly::add_term(const Exponents& e, const Fq& c) {
  if (static_cast<int>(e.size()) != nvars_) fail(Err::ArityMismatch, "exponent arity");
  if (std::accumulate(e.begin(), e.end(), 0) != deg_)
    fail(Err::DegenerateForms, "monomial breaks homogeneity");
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

HomPoly HomPoly::operator+(const HomPoly& o) const {
  if (nvars_ != o.nvars_ || deg_ != o.deg_) fail(Err::ArityMismatch, "HomPoly add shape");
  HomPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

HomPoly HomPoly::operator-(const HomPoly& o) const { return *this + o.scaled(-Fq::one(spec_)); }

HomPoly HomPoly::operator*(const HomPoly& o) const {
  if (nvars_ != o.nvars_) fail(Err::ArityMismatch, "HomPoly mul arity");
  HomPoly r(spec_, nvars_, deg_ + o.deg_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      Exponents e(e1);
      for (int i = 0; i < nvars_; ++i) e[static_cast<size_t>(i)] += e2[static_cast<size_t>(i)];
      r.add_term(e, c1 * c2);
    }
  return r;
}

HomPoly HomPoly::scaled(const Fq& c) const {
  HomPoly r(spec_, nvars_, deg_);
  if (c.is_zero()) return r;
  for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
  return r;
}

bool HomPoly::operator==(const HomPoly& o) const {
  return nvars_ == o.nvars_ && deg_ == o.deg_ && terms_ == o.terms_;
}

Fq HomPoly::eval(const Vec& pt) const {
  if (static_cast<int>(pt.size()) != nvars_) fail(Err::ArityMismatch, "eval point arity");
  Fq acc = Fq::zero(spec_);
  for (const auto& [e, c] : terms_) {
    Fq m = c;
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < e[static_cast<size_t>(i)]; ++k) m = m * pt[static_cast<size_t>(i)];
    acc = acc + m;
  }
  return acc;
}

HomPoly HomPoly::derivative(int var) const {
  HomPoly r(spec_, nvars_, deg_ > 0 ? deg_ - 1 : 0);
  for (const auto& [e, c] : terms_) {
    int k = e[static_cast<size_t>(var)];
    if (k == 0) continue;
    Fq nc = c * Fq::from_int(spec_, k);
    if (nc.is_zero()) continue;  // char p kills exponents divisible by p
    Exponents ne = e;
    ne[static_cast<size_t>(var)] -= 1;
    r.add_term(ne, nc);
  }
  return r;
}

HomPoly HomPoly::substitute_linear(const Mat& m) const {
  if (static_cast<int>(m.size()) != nvars_) fail(Err::ArityMismatch, "substitution matrix size");
  {
    Mat chk = m;
    if (rref(chk) != nvars_) fail(Err::SingularMatrix, "substitution matrix not invertible");
  }
  // new variable i contributes row i of M: x_i -> sum_j m[i][j] x_j
  std::vector<HomPoly> images;
  for (int i = 0; i < nvars_; ++i) {
    HomPoly li(spec_, nvars_, 1);
    for (int j = 0; j < nvars_; ++j) {
      Exponents e(static_cast<size_t>(nvars_), 0);
      e[static_cast<size_t>(j)] = 1;
      li.add_term(e, m[static_cast<size_t>(i)][static_cast<size_t>(j)]);
    }
    images.push_back(li);
  }
  HomPoly r(spec_, nvars_, deg_);
  for (const auto& [e, c] : terms_) {
    HomPoly term(spec_, nvars_, 0);
    Exponents ze(static_cast<size_t>(nvars_), 0);
    term.add_term(ze, c);
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < e[static_cast<size_t>(i)]; ++k) term = term * images[static_cast<size_t>(i)];
    r = r + term;
  }
  return r;
}

std::string HomPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.str();
    for (int i = 0; i < nvars_; ++i)
      if (e[static_cast<size_t>(i)] > 0) os << "*s" << i << "^" << e[static_cast<size_t>(i)];
  }
  return os.str();
}

// ---------------------------------------------------------------- UniPoly

UniPoly::UniPoly(FieldSpec spec, std::vector<Fq> coeffs) : spec_(spec), c_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::from_ints(const FieldSpec& spec, const std::vector<long>& c) {
  std::vector<Fq> v;
  v.reserve(c.size());
  for (long x : c) v.push_back(Fq::from_int(spec, x));
  return UniPoly(spec, std::move(v));
}

void UniPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Fq UniPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return Fq::zero(spec_);
  return c_[static_cast<size_t>(i)];
}

Fq UniPoly::lead() const {
  if (is_zero()) fail(Err::ZeroPolynomial, "leading coefficient of zero");
  return c_.back();
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  std::vector<Fq> v(std::max(c_.size(), o.c_.size()), Fq::zero(spec_));
  for (size_t i = 0; i < v.size(); ++i) v[i] = coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i));
  return UniPoly(spec_, std::move(v));
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + o.scaled(-Fq::one(spec_)); }

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (is_zero() || o.is_zero()) return UniPoly(spec_);
  std::vector<Fq> v(c_.size() + o.c_.size() - 1, Fq::zero(spec_));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) v[i + j] = v[i + j] + c_[i] * o.c_[j];
  return UniPoly(spec_, std::move(v));
}

UniPoly UniPoly::scaled(const Fq& k) const {
  std::vector<Fq> v;
  v.reserve(c_.size());
  for (const auto& x : c_) v.push_back(x * k);
  return UniPoly(spec_, std::move(v));
}

bool UniPoly::operator==(const UniPoly& o) const { return c_ == o.c_; }

Fq UniPoly::eval(const Fq& x) const {
  Fq acc = Fq::zero(spec_);
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return UniPoly(spec_);
  std::vector<Fq> v;
  v.reserve(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) v.push_back(c_[i] * Fq::from_int(spec_, static_cast<long>(i)));
  return UniPoly(spec_, std::move(v));
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(lead().inv());
}

std::pair<UniPoly, UniPoly> UniPoly::divrem(const UniPoly& d) const {
  if (d.is_zero()) fail(Err::DivisionByZero, "polynomial division by zero");
  UniPoly r = *this;
  std::vector<Fq> q(static_cast<size_t>(std::max(0, deg() - d.deg() + 1)), Fq::zero(spec_));
  Fq dl = d.lead().inv();
  while (!r.is_zero() && r.deg() >= d.deg()) {
    int shift = r.deg() - d.deg();
    Fq f = r.lead() * dl;
    q[static_cast<size_t>(shift)] = f;
    std::vector<Fq> sub(static_cast<size_t>(shift), Fq::zero(spec_));
    for (const auto& dc : d.coeffs()) sub.push_back(dc * f);
    r = r - UniPoly(spec_, std::move(sub));
  }
  return {UniPoly(spec_, std::move(q)), r};
}

std::string UniPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (i + 1 < c_.size()) os << " + ";
    os << c_[i].str();
    if (i > 0) os << "*s^" << i;
  }
  return os.str();
}

namespace {

// Integer-primitive-part Euclid for Q coefficients.
struct ZPoly {
  std::vector<mpz_class> c;

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  int deg() const { return static_cast<int>(c.size()) - 1; }
  bool zero() const { return c.empty(); }
};

ZPoly zpoly_from(const UniPoly& f) {
  mpz_class den = 1;
  for (const auto& q : f.coeffs()) den = den * q.rat().get_den() / gcd(den, mpz_class(q.rat().get_den()));
  ZPoly z;
  for (const auto& q : f.coeffs()) z.c.push_back(mpz_class(q.rat().get_num() * (den / q.rat().get_den())));
  z.trim();
  return z;
}

void make_primitive(ZPoly& f) {
  if (f.zero()) return;
  mpz_class g = 0;
  for (const auto& x : f.c) g = gcd(g, x);
  if (g == 0) return;
  for (auto& x : f.c) x /= g;
  if (f.c.back() < 0)
    for (auto& x : f.c) x = -x;
}

// Pseudo-remainder of a by b.
ZPoly prem(ZPoly a, const ZPoly& b) {
  const mpz_class lb = b.c.back();
  while (!a.zero() && a.deg() >= b.deg()) {
    int shift = a.deg() - b.deg();
    mpz_class la = a.c.back();
    for (auto& x : a.c) x *= lb;
    for (int i = 0; i <= b.deg(); ++i) a.c[static_cast<size_t>(i + shift)] -= la * b.c[static_cast<size_t>(i)];
    a.trim();
  }
  return a;
}

UniPoly unipoly_from_z(const FieldSpec& spec, const ZPoly& z) {
  std::vector<Fq> v;
  for (const auto& x : z.c) v.push_back(Fq::from_mpz(spec, x));
  return UniPoly(spec, std::move(v));
}

}  // namespace

UniPoly uni_gcd(const UniPoly& f, const UniPoly& g) {
  if (f.is_zero() && g.is_zero()) fail(Err::BothZero, "gcd(0, 0)");
  if (f.is_zero()) return g.monic();
  if (g.is_zero()) return f.monic();
  const FieldSpec spec = f.spec();
  if (spec.is_rational()) {
    ZPoly a = zpoly_from(f), b = zpoly_from(g);
    make_primitive(a);
    make_primitive(b);
    if (a.deg() < b.deg()) std::swap(a, b);
    while (!b.zero()) {
      ZPoly r = prem(a, b);
      make_primitive(r);
      a = std::move(b);
      b = std::move(r);
    }
    return unipoly_from_z(spec, a).monic();
  }
  UniPoly a = f, b = g;
  if (a.deg() < b.deg()) std::swap(a, b);
  while (!b.is_zero()) {
    UniPoly r = a.divrem(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

UniPoly squarefree_part(const UniPoly& f) {
  if (f.is_zero()) fail(Err::ZeroPolynomial, "squarefree part of zero");
  if (f.deg() == 0) return f.monic();
  UniPoly d = f.derivative();
  if (d.is_zero()) {
    // char p: f = g(s^p); the Frobenius is the identity on F_p coefficients
    uint64_t p = f.spec().characteristic();
    std::vector<Fq> root(static_cast<size_t>(f.deg() / static_cast<int>(p)) + 1, Fq::zero(f.spec()));
    for (int i = 0; i <= f.deg(); i += static_cast<int>(p)) root[static_cast<size_t>(i / static_cast<int>(p))] = f.coeff(i);
    return squarefree_part(UniPoly(f.spec(), std::move(root)));
  }
  UniPoly g = uni_gcd(f, d);
  UniPoly q = f.divrem(g).first.monic();
  if (g.deg() == 0) return q;
  // factors of multiplicity divisible by p hide entirely inside g
  UniPoly rest = squarefree_part(g);
  UniPoly common = uni_gcd(q, rest);
  return (q * rest.divrem(common).first).monic();
}

int distinct_root_count(const UniPoly& f) {
  if (f.is_zero()) fail(Err::ZeroPolynomial, "root count of zero");
  return squarefree_part(f).deg();
}

Fq sylvester_resultant(const UniPoly& f, const UniPoly& g) {
  int m = f.deg(), n = g.deg();
  if (m < 1 && n < 1) fail(Err::BothConstant, "resultant needs a nonconstant input");
  if (f.is_zero() || g.is_zero()) return Fq::zero(f.spec());
  if (m < 1) {
    Fq r = Fq::one(f.spec());
    for (int i = 0; i < n; ++i) r = r * f.coeff(0);
    return r;
  }
  if (n < 1) {
    Fq r = Fq::one(f.spec());
    for (int i = 0; i < m; ++i) r = r * g.coeff(0);
    return r;
  }
  const FieldSpec spec = f.spec();
  int size = m + n;
  Mat s(static_cast<size_t>(size), Vec(static_cast<size_t>(size), Fq::zero(spec)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) s[static_cast<size_t>(i)][static_cast<size_t>(i + j)] = f.coeff(m - j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) s[static_cast<size_t>(n + i)][static_cast<size_t>(i + j)] = g.coeff(n - j);
  return determinant(std::move(s));
}

// ----------------------------------------------------------------- BiPoly

BiPoly BiPoly::constant(const Fq& c) {
  BiPoly p(c.spec());
  p.add_term(0, 0, c);
  return p;
}

BiPoly BiPoly::monomial(FieldSpec spec, int i, int j, Fq c) {
  BiPoly p(spec);
  p.add_term(i, j, c);
  return p;
}

int BiPoly::deg_s() const {
  int d = -1;
  for (const auto& [k, c] : terms_) d = std::max(d, k.first);
  return d;
}

int BiPoly::deg_t() const {
  int d = -1;
  for (const auto& [k, c] : terms_) d = std::max(d, k.second);
  return d;
}

void BiPoly::add_term(int i, int j, const Fq& c) {
  if (c.is_zero()) return;
  Key k{i, j};
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, c);
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

BiPoly BiPoly::operator+(const BiPoly& o) const {
  BiPoly r = *this;
  for (const auto& [k, c] : o.terms_) r.add_term(k.first, k.second, c);
  return r;
}

BiPoly BiPoly::operator-(const BiPoly& o) const { return *this + o.scaled(-Fq::one(spec_)); }

BiPoly BiPoly::operator*(const BiPoly& o) const {
  BiPoly r(spec_);
  for (const auto& [k1, c1] : terms_)
    for (const auto& [k2, c2] : o.terms_) r.add_term(k1.first + k2.first, k1.second + k2.second, c1 * c2);
  return r;
}

BiPoly BiPoly::scaled(const Fq& c) const {
  BiPoly r(spec_);
  if (c.is_zero()) return r;
  for (const auto& [k, v] : terms_) r.terms_.emplace(k, v * c);
  return r;
}

bool BiPoly::operator==(const BiPoly& o) const { return terms_ == o.terms_; }

Fq BiPoly::eval(const Fq& s, const Fq& t) const {
  Fq acc = Fq::zero(spec_);
  for (const auto& [k, c] : terms_) {
    Fq m = c;
    for (int i = 0; i < k.first; ++i) m = m * s;
    for (int j = 0; j < k.second; ++j) m = m * t;
    acc = acc + m;
  }
  return acc;
}

BiPoly BiPoly::substitute_linear(const Mat& m2) const {
  {
    Mat chk = m2;
    if (rref(chk) != 2) fail(Err::SingularMatrix, "2x2 substitution not invertible");
  }
  BiPoly s_img(spec_), t_img(spec_);
  s_img.add_term(1, 0, m2[0][0]);
  s_img.add_term(0, 1, m2[0][1]);
  t_img.add_term(1, 0, m2[1][0]);
  t_img.add_term(0, 1, m2[1][1]);
  BiPoly r(spec_);
  for (const auto& [k, c] : terms_) {
    BiPoly term = BiPoly::constant(c);
    for (int i = 0; i < k.first; ++i) term = term * s_img;
    for (int j = 0; j < k.second; ++j) term = term * t_img;
    r = r + term;
  }
  return r;
}

std::vector<UniPoly> BiPoly::coeffs_in_s() const {
  int ds = deg_s();
  std::vector<UniPoly> out(static_cast<size_t>(ds + 1), UniPoly(spec_));
  std::vector<std::vector<Fq>> acc(static_cast<size_t>(ds + 1));
  for (const auto& [k, c] : terms_) {
    auto& v = acc[static_cast<size_t>(k.first)];
    if (static_cast<int>(v.size()) <= k.second) v.resize(static_cast<size_t>(k.second + 1), Fq::zero(spec_));
    v[static_cast<size_t>(k.second)] = c;
  }
  for (size_t i = 0; i < acc.size(); ++i) out[i] = UniPoly(spec_, std::move(acc[i]));
  return out;
}

UniPoly BiPoly::substitute_t(const UniPoly& g) const {
  UniPoly acc(spec_);
  for (const auto& [k, c] : terms_) {
    UniPoly m(spec_, {c});
    for (int j = 0; j < k.second; ++j) m = m * g;
    std::vector<Fq> shift(static_cast<size_t>(k.first), Fq::zero(spec_));
    for (const auto& x : m.coeffs()) shift.push_back(x);
    acc = acc + UniPoly(spec_, std::move(shift));
  }
  return acc;
}

std::string BiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.str();
    if (k.first) os << "*s^" << k.first;
    if (k.second) os << "*t^" << k.second;
  }
  return os.str();
}

BiPoly divide_by_s_minus_t(const BiPoly& f) {
  // Synthetic division in s with coefficients in k[t]: s = t is a root of
  // every coefficient combination iff (s - t) divides f.
  const FieldSpec spec = f.spec();
  int ds = f.deg_s();
  std::vector<UniPoly> cs = f.coeffs_in_s();
  std::vector<UniPoly> q(static_cast<size_t>(std::max(ds, 0)), UniPoly(spec));
  UniPoly carry(spec);
  UniPoly tpoly(spec, {Fq::zero(spec), Fq::one(spec)});
  for (int i = ds; i >= 1; --i) {
    carry = carry * tpoly + cs[static_cast<size_t>(i)];
    q[static_cast<size_t>(i - 1)] = carry;
  }
  UniPoly rem = carry * tpoly + cs[0];
  if (!rem.is_zero()) fail(Err::NotZeroDimensional, "(s - t) does not divide the generator");
  BiPoly out(spec);
  for (size_t i = 0; i < q.size(); ++i)
    for (int j = 0; j <= q[i].deg(); ++j) out.add_term(static_cast<int>(i), j, q[i].coeff(j));
  return out;
}

// ----------------------------------------------------------------- parser

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;
  FieldSpec spec;
  int nvars;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void err(const std::string& what) {
    fail(Err::ParseError, what + " at position " + std::to_string(pos) + " in \"" + s + "\"");
  }

  HomPoly parse() {
    HomPoly e = expr();
    skip();
    if (pos != s.size()) err("trailing input");
    return e;
  }

  HomPoly expr() {
    HomPoly acc = eat('-') ? term().scaled(-Fq::one(spec)) : term();
    for (;;) {
      skip();
      if (eat('+')) {
        acc = add_matched(acc, term());
      } else if (eat('-')) {
        acc = add_matched(acc, term().scaled(-Fq::one(spec)));
      } else {
        return acc;
      }
    }
  }

  // Sum with homogeneity enforcement; zero summands adopt the other degree.
  HomPoly add_matched(const HomPoly& a, const HomPoly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.deg() != b.deg()) err("non-homogeneous sum");
    return a + b;
  }

  HomPoly term() {
    HomPoly acc = factor();
    for (;;) {
      skip();
      if (eat('*')) {
        acc = acc * factor();
        if (acc.deg() > kDegreeCap) err("degree cap exceeded");
      } else {
        return acc;
      }
    }
  }

  HomPoly factor() {
    HomPoly b = base();
    skip();
    if (eat('^')) {
      long e = integer();
      if (e < 0) err("negative exponent");
      if (static_cast<long>(b.deg()) * e > kDegreeCap) fail(Err::DegreeCapExceeded, "total degree above " + std::to_string(kDegreeCap));
      HomPoly acc(spec, nvars, 0);
      acc.add_term(HomPoly::Exponents(static_cast<size_t>(nvars), 0), Fq::one(spec));
      for (long i = 0; i < e; ++i) acc = acc * b;
      return acc;
    }
    return b;
  }

  HomPoly base() {
    skip();
    if (pos >= s.size()) err("unexpected end");
    if (s[pos] == '(') {
      ++pos;
      HomPoly e = expr();
      if (!eat(')')) err("expected ')'");
      return e;
    }
    if (s[pos] == 's') {
      ++pos;
      long v = integer();
      if (v < 0 || v >= nvars) err("variable index out of range");
      HomPoly::Exponents e(static_cast<size_t>(nvars), 0);
      e[static_cast<size_t>(v)] = 1;
      return HomPoly::monomial(spec, e, Fq::one(spec));
    }
    if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
      long v = integer();
      HomPoly c(spec, nvars, 0);
      c.add_term(HomPoly::Exponents(static_cast<size_t>(nvars), 0), Fq::from_int(spec, v));
      return c;
    }
    err("unexpected character");
  }

  long integer() {
    skip();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) err("expected integer");
    return std::stol(s.substr(start, pos - start));
  }
};

}  // namespace

HomPoly parse_hompoly(const std::string& text, const FieldSpec& spec, int nvars) {
  Parser p{text, 0, spec, nvars};
  HomPoly r = p.parse();
  if (r.deg() > kDegreeCap) fail(Err::DegreeCapExceeded, "total degree above cap");
  return r;
}

// --------------------------------------------------------------- BinForm

BinForm binform_from_hom(const HomPoly& h) {
  if (h.nvars() != 2) fail(Err::ArityMismatch, "binary form needs 2 variables");
  std::vector<Fq> c(static_cast<size_t>(h.deg() + 1), Fq::zero(h.spec()));
  for (const auto& [e, v] : h.terms()) c[static_cast<size_t>(e[0])] = v;  // u = s0/s1
  return BinForm{UniPoly(h.spec(), std::move(c)), h.deg()};
}

BinForm binform_gcd(const BinForm& a, const BinForm& b) {
  if (a.is_zero() && b.is_zero()) fail(Err::BothZero, "gcd of zero binary forms");
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  UniPoly g = uni_gcd(a.f, b.f);
  int kinf = std::min(a.inf_multiplicity(), b.inf_multiplicity());
  return BinForm{g, g.deg() + kinf};
}

int binform_distinct_roots(const BinForm& a) {
  if (a.is_zero()) fail(Err::ZeroPolynomial, "root count of zero form");
  int n = a.f.deg() == 0 ? 0 : distinct_root_count(a.f);
  return n + (a.inf_multiplicity() > 0 ? 1 : 0);
}

bool binform_squarefree(const BinForm& a) {
  if (a.is_zero()) return false;
  if (a.inf_multiplicity() > 1) return false;
  return a.f.deg() == 0 || distinct_root_count(a.f) == a.f.deg();
}

}  // namespace joindeg
