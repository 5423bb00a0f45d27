#include "joindeg/field.hpp"

#include <algorithm>

namespace joindeg {

const char* err_name(Err e) {
  switch (e) {
    case Err::DivisionByZero: return "DivisionByZero";
    case Err::MixedFields: return "MixedFields";
    case Err::ExhaustedField: return "ExhaustedField";
    case Err::NotPrime: return "NotPrime";
    case Err::ArityMismatch: return "ArityMismatch";
    case Err::BothZero: return "BothZero";
    case Err::ZeroPolynomial: return "ZeroPolynomial";
    case Err::BothConstant: return "BothConstant";
    case Err::SingularMatrix: return "SingularMatrix";
    case Err::DegreeCapExceeded: return "DegreeCapExceeded";
    case Err::ParseError: return "ParseError";
    case Err::NotZeroDimensional: return "NotZeroDimensional";
    case Err::ShearDisagreement: return "ShearDisagreement";
    case Err::CoincidentPoints: return "CoincidentPoints";
    case Err::AmbientMismatch: return "AmbientMismatch";
    case Err::CenterPoint: return "CenterPoint";
    case Err::BasePointFound: return "BasePointFound";
    case Err::NonBirationalParam: return "NonBirationalParam";
    case Err::DegenerateForms: return "DegenerateForms";
    case Err::SingularParameter: return "SingularParameter";
    case Err::LineInsideVariety: return "LineInsideVariety";
    case Err::PositiveDimensionalSection: return "PositiveDimensionalSection";
    case Err::CoincidentSample: return "CoincidentSample";
    case Err::GeneralPositionUncertain: return "GeneralPositionUncertain";
    case Err::TrialDisagreement: return "TrialDisagreement";
    case Err::ChartFailure: return "ChartFailure";
    case Err::JoinDefective: return "JoinDefective";
    case Err::NonIntegralRatio: return "NonIntegralRatio";
    case Err::ZeroWeights: return "ZeroWeights";
    case Err::CheckFailure: return "CheckFailure";
    case Err::FieldMismatch: return "FieldMismatch";
    case Err::EnumerationBudgetExceeded: return "EnumerationBudgetExceeded";
    case Err::NoJoinLineThroughZ: return "NoJoinLineThroughZ";
    case Err::OracleInconclusive: return "OracleInconclusive";
    case Err::InvalidInstance: return "InvalidInstance";
  }
  return "Unknown";
}

namespace {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  if (n < (1ULL << 20)) {
    for (uint64_t d = 41; d * d <= n; d += 2)
      if (n % d == 0) return false;
    return true;
  }
  // Deterministic Miller-Rabin for 64-bit inputs.
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

Fq Fq::from_int(const FieldSpec& s, long v) {
  Fq r;
  r.spec_ = s;
  if (s.is_rational()) {
    r.rat_ = v;
  } else {
    long m = static_cast<long>(v % static_cast<long>(s.p));
    if (m < 0) m += static_cast<long>(s.p);
    r.res_ = static_cast<uint64_t>(m);
  }
  return r;
}

Fq Fq::from_mpz(const FieldSpec& s, const mpz_class& v) {
  Fq r;
  r.spec_ = s;
  if (s.is_rational()) {
    r.rat_ = v;
  } else {
    mpz_class m;
    mpz_class pz;
    mpz_import(pz.get_mpz_t(), 1, 1, sizeof(uint64_t), 0, 0, &s.p);
    mpz_mod(m.get_mpz_t(), v.get_mpz_t(), pz.get_mpz_t());
    r.res_ = mpz_get_ui(m.get_mpz_t());
  }
  return r;
}

Fq Fq::from_mpq(const mpq_class& v) {
  Fq r;
  r.spec_ = FieldSpec::Q();
  // copy via num/den: mpq copies with a negative denominator are unsafe
  mpz_class num = v.get_num(), den = v.get_den();
  if (den < 0) {
    num = -num;
    den = -den;
  }
  r.rat_ = mpq_class(num, den);
  r.rat_.canonicalize();
  return r;
}

Fq Fq::from_residue(const FieldSpec& s, uint64_t v) {
  if (s.is_rational()) fail(Err::MixedFields, "from_residue over Q");
  Fq r;
  r.spec_ = s;
  r.res_ = v % s.p;
  return r;
}

bool Fq::is_zero() const { return spec_.is_rational() ? rat_ == 0 : res_ == 0; }
bool Fq::is_one() const { return spec_.is_rational() ? rat_ == 1 : res_ == 1; }

void Fq::require_same(const Fq& a, const Fq& b) {
  if (!(a.spec_ == b.spec_)) fail(Err::MixedFields, a.spec_.str() + " vs " + b.spec_.str());
}

Fq Fq::operator-() const {
  Fq r = *this;
  if (spec_.is_rational())
    r.rat_ = -rat_;
  else
    r.res_ = res_ == 0 ? 0 : spec_.p - res_;
  return r;
}

Fq Fq::inv() const {
  if (is_zero()) fail(Err::DivisionByZero, "inverse of zero in " + spec_.str());
  Fq r = *this;
  if (spec_.is_rational()) {
    r.rat_ = 1 / rat_;
  } else {
    r.res_ = powmod_u64(res_, spec_.p - 2, spec_.p);
  }
  return r;
}

Fq operator+(const Fq& a, const Fq& b) {
  Fq::require_same(a, b);
  Fq r = a;
  if (a.spec_.is_rational()) {
    r.rat_ = a.rat_ + b.rat_;
  } else {
    uint64_t s = a.res_ + b.res_;  // p < 2^63 keeps this overflow-free for residues < p
    if (s >= a.spec_.p) s -= a.spec_.p;
    r.res_ = s;
  }
  return r;
}

Fq operator-(const Fq& a, const Fq& b) { return a + (-b); }

Fq operator*(const Fq& a, const Fq& b) {
  Fq::require_same(a, b);
  Fq r = a;
  if (a.spec_.is_rational())
    r.rat_ = a.rat_ * b.rat_;
  else
    r.res_ = mulmod_u64(a.res_, b.res_, a.spec_.p);
  return r;
}

Fq operator/(const Fq& a, const Fq& b) {
  Fq::require_same(a, b);
  if (b.is_zero()) fail(Err::DivisionByZero, "division by zero in " + a.spec_.str());
  return a * b.inv();
}

bool Fq::operator==(const Fq& o) const {
  if (!(spec_ == o.spec_)) return false;
  return spec_.is_rational() ? rat_ == o.rat_ : res_ == o.res_;
}

bool Fq::operator<(const Fq& o) const {
  require_same(*this, o);
  return spec_.is_rational() ? rat_ < o.rat_ : res_ < o.res_;
}

std::string Fq::str() const {
  if (spec_.is_rational()) return rat_.get_str();
  return std::to_string(res_);
}

Fq random_element(const FieldSpec& spec, Rng& rng, const std::vector<Fq>& avoid, long box) {
  if (!spec.is_rational() && avoid.size() >= spec.p)
    fail(Err::ExhaustedField, "avoid set covers " + spec.str());
  for (int tries = 0; tries < 100000; ++tries) {
    Fq cand;
    if (spec.is_rational()) {
      long num = rng.in_range(-box, box);
      long den = rng.in_range(1, box);
      cand = Fq::from_mpq(mpq_class(num, den));
    } else {
      cand = Fq::from_residue(spec, rng.below(spec.p));
    }
    if (std::find(avoid.begin(), avoid.end(), cand) == avoid.end()) return cand;
  }
  fail(Err::ExhaustedField, "could not sample outside avoid set");
}

Fq random_nonzero(const FieldSpec& spec, Rng& rng, long box) {
  return random_element(spec, rng, {Fq::zero(spec)}, box);
}

}  // namespace joindeg
