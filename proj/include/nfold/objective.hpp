#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "nfold/ints.hpp"

namespace nfold {

struct PwlPoint {
  i64 x;
  i64 y;
  friend bool operator==(const PwlPoint&, const PwlPoint&) = default;
};

// One univariate convex term of a separable objective.
//
// Serializable kinds are Zero, Linear and Pwl. Pwl terms are given by
// breakpoints with strictly increasing integer abscissae; each segment must
// have an integer slope so that evaluation at any integer inside the span is
// exact, and slopes must be non-decreasing (convexity). Custom wraps an
// arbitrary evaluation callback for library users; it cannot be serialized
// and convexity is the caller's responsibility.
class UnivariateTerm {
 public:
  enum class Kind { Zero, Linear, Pwl, Custom };

  UnivariateTerm() : kind_(Kind::Zero) {}

  static UnivariateTerm zero() { return UnivariateTerm(); }

  static UnivariateTerm linear(i64 coeff) {
    UnivariateTerm t;
    t.kind_ = Kind::Linear;
    t.coeff_ = coeff;
    return t;
  }

  static UnivariateTerm pwl(std::vector<PwlPoint> points) {
    UnivariateTerm t;
    t.kind_ = Kind::Pwl;
    t.points_ = std::move(points);
    return t;
  }

  static UnivariateTerm custom(std::function<i64(i64)> fn) {
    UnivariateTerm t;
    t.kind_ = Kind::Custom;
    t.fn_ = std::move(fn);
    return t;
  }

  Kind kind() const { return kind_; }
  i64 coeff() const { return coeff_; }
  const std::vector<PwlPoint>& points() const { return points_; }

  // Exact integer evaluation. Pwl terms throw eval_error outside their span.
  i64 eval(i64 x) const;

  // Structural violations of this term, given the box [lo, hi] of the
  // variable it is attached to. Empty result means the term is usable.
  std::vector<std::string> check(i64 lo, i64 hi) const;

  bool operator==(const UnivariateTerm& o) const {
    if (kind_ != o.kind_) return false;
    if (kind_ == Kind::Linear) return coeff_ == o.coeff_;
    if (kind_ == Kind::Pwl) return points_ == o.points_;
    return kind_ != Kind::Custom;  // callbacks never compare equal
  }

 private:
  Kind kind_;
  i64 coeff_ = 0;
  std::vector<PwlPoint> points_;
  std::function<i64(i64)> fn_;
};

// f(x) = sum of one univariate term per flat variable index.
struct SeparableObjective {
  std::vector<UnivariateTerm> terms;

  static SeparableObjective zeros(std::size_t n) {
    SeparableObjective o;
    o.terms.assign(n, UnivariateTerm::zero());
    return o;
  }

  static SeparableObjective linear(std::vector<i64> coeffs) {
    SeparableObjective o;
    o.terms.reserve(coeffs.size());
    for (i64 c : coeffs) o.terms.push_back(UnivariateTerm::linear(c));
    return o;
  }

  bool operator==(const SeparableObjective& o) const { return terms == o.terms; }
};

}  // namespace nfold
