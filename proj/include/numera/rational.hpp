#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "numera/errors.hpp"

namespace numera {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p", "-p" or "p/q" into a rational in lowest terms.
inline Rat parse_rat(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw FormatError("bad rational: " + s);
  if (r.get_den() == 0) throw FormatError("zero denominator: " + s);
  r.canonicalize();
  return r;
}

/// Prints a rational in lowest terms, "p" when the denominator is one.
inline std::string rat_str(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Int floor_rat(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

inline Int ceil_rat(const Rat& r) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

inline Rat pow_rat(const Rat& base, unsigned long e) {
  Rat r;
  mpz_pow_ui(r.get_num().get_mpz_t(), base.get_num().get_mpz_t(), e);
  mpz_pow_ui(r.get_den().get_mpz_t(), base.get_den().get_mpz_t(), e);
  r.canonicalize();
  return r;
}

inline Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

}  // namespace numera
