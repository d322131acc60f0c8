#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nfold {

using i64 = std::int64_t;

// Base class for everything this library throws.
class solver_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Checked 64-bit arithmetic would wrap.
class overflow_error : public solver_error {
 public:
  using solver_error::solver_error;
};

// A term was evaluated outside its defined domain.
class eval_error : public solver_error {
 public:
  using solver_error::solver_error;
};

// An enumeration or encoding cap was exceeded.
class cap_error : public solver_error {
 public:
  using solver_error::solver_error;
};

// Exact mode refused: a complexity bound does not fit in 64 bits.
class bound_error : public solver_error {
 public:
  using solver_error::solver_error;
};

// Malformed input file.
class io_error : public solver_error {
 public:
  using solver_error::solver_error;
};

// All arithmetic on instance data is checked: wraparound would silently
// corrupt optimality arguments, so it aborts the computation instead.

inline i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) throw overflow_error("integer overflow in addition");
  return r;
}

inline i64 checked_sub(i64 a, i64 b) {
  i64 r;
  if (__builtin_sub_overflow(a, b, &r)) throw overflow_error("integer overflow in subtraction");
  return r;
}

inline i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw overflow_error("integer overflow in multiplication");
  return r;
}

inline i64 checked_neg(i64 a) { return checked_sub(0, a); }

inline i64 checked_abs(i64 a) { return a < 0 ? checked_neg(a) : a; }

// a^e for e >= 0, checked.
inline i64 checked_pow(i64 a, i64 e) {
  if (e < 0) throw std::invalid_argument("checked_pow: negative exponent");
  i64 r = 1;
  for (i64 i = 0; i < e; ++i) r = checked_mul(r, a);
  return r;
}

// ceil(a / b) for b > 0.
inline i64 ceil_div(i64 a, i64 b) {
  i64 q = a / b;
  return q + (a % b != 0 && a > 0 ? 1 : 0);
}

// floor(a / b) for b > 0.
inline i64 floor_div(i64 a, i64 b) {
  i64 q = a / b;
  return q - (a % b != 0 && a < 0 ? 1 : 0);
}

}  // namespace nfold
