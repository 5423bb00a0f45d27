#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "joindeg/errors.hpp"
#include "joindeg/rng.hpp"

namespace joindeg {

enum class FieldKind { Rationals, PrimeField };

bool is_prime_u64(uint64_t n);

struct FieldSpec {
  FieldKind kind = FieldKind::Rationals;
  uint64_t p = 0;

  static FieldSpec Q() { return FieldSpec{FieldKind::Rationals, 0}; }
  static FieldSpec Fp(uint64_t p) {
    if (p < 2 || !is_prime_u64(p)) fail(Err::NotPrime, "modulus " + std::to_string(p) + " is not prime");
    if (p >= (1ULL << 63)) fail(Err::NotPrime, "modulus must fit in 63 bits");
    return FieldSpec{FieldKind::PrimeField, p};
  }

  bool is_rational() const { return kind == FieldKind::Rationals; }
  uint64_t characteristic() const { return is_rational() ? 0 : p; }
  bool operator==(const FieldSpec&) const = default;
  std::string str() const { return is_rational() ? "Q" : "F_" + std::to_string(p); }
};

// Exact scalar, canonically normalized: a reduced mpq with positive
// denominator, or a residue in [0, p). Immutable in practice (all
// operations return fresh values).
class Fq {
 public:
  Fq() = default;  // zero over Q; prefer the named constructors

  static Fq zero(const FieldSpec& s) { return from_int(s, 0); }
  static Fq one(const FieldSpec& s) { return from_int(s, 1); }
  static Fq from_int(const FieldSpec& s, long v);
  static Fq from_mpz(const FieldSpec& s, const mpz_class& v);
  static Fq from_mpq(const mpq_class& v);  // Rationals only
  static Fq from_residue(const FieldSpec& s, uint64_t r);

  const FieldSpec& spec() const { return spec_; }
  bool is_zero() const;
  bool is_one() const;

  Fq operator-() const;
  Fq inv() const;

  friend Fq operator+(const Fq& a, const Fq& b);
  friend Fq operator-(const Fq& a, const Fq& b);
  friend Fq operator*(const Fq& a, const Fq& b);
  friend Fq operator/(const Fq& a, const Fq& b);
  bool operator==(const Fq& o) const;
  bool operator!=(const Fq& o) const { return !(*this == o); }
  // Total order on normalized representations; used for canonical maps/dedup.
  bool operator<(const Fq& o) const;

  const mpq_class& rat() const { return rat_; }
  uint64_t residue() const { return res_; }
  std::string str() const;

 private:
  static void require_same(const Fq& a, const Fq& b);
  FieldSpec spec_ = FieldSpec::Q();
  mpq_class rat_ = 0;   // valid when Rationals
  uint64_t res_ = 0;    // valid when PrimeField
};

// Uniform random field element avoiding the given values. Over Q the
// numerator/denominator are drawn from [-box, box] x [1, box].
Fq random_element(const FieldSpec& spec, Rng& rng, const std::vector<Fq>& avoid = {}, long box = 10);

// Nonzero convenience wrapper.
Fq random_nonzero(const FieldSpec& spec, Rng& rng, long box = 10);

}  // namespace joindeg
