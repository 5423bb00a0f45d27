#pragma once

#include <vector>

#include "joindeg/poly.hpp"
#include "joindeg/rng.hpp"

namespace joindeg {

enum class BivarProvenance { Collinearity, Slice, Other };
enum class LexOrder { TOverS, SOverT };
enum class KeepVar { S, T };

struct BivarSystem {
  std::vector<BiPoly> gens;
  BivarProvenance prov = BivarProvenance::Other;
};

// Reduced Groebner basis for the chosen lex order (Buchberger with the
// coprime-lcm and chain criteria; two variables only).
std::vector<BiPoly> lex_groebner_2var(const BivarSystem& sys, LexOrder order);

// Generator of the elimination ideal in the kept variable.
UniPoly eliminant(const BivarSystem& sys, KeepVar keep);

struct SolutionCount {
  long P = 0;  // distinct closure solutions
  long S = 0;  // distinct s-coordinates
  long T = 0;  // distinct t-coordinates
  std::vector<Fq> shears;
  bool certified = false;
};

// Counts distinct closure solutions via random-shear eliminants; two
// independent shears must agree on P.
SolutionCount count_solutions(const BivarSystem& sys, Rng& rng, int max_retries = 4);

// True iff the affine solution set is finite: the generators share no
// nonconstant factor (decided by an exact bivariate gcd fold).
bool is_zero_dimensional(const BivarSystem& sys);

}  // namespace joindeg
