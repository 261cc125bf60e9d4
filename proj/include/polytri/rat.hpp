#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>

#include "polytri/error.hpp"

namespace polytri {

// Exact rational scalar.
//
// A thin value-semantics wrapper around GMP's mpq_class that
//  * keeps every value in canonical form (lowest terms, positive denominator),
//  * evaluates every operator eagerly, so that the type composes safely with
//    Eigen's own expression templates (mixing two lazy expression-template
//    systems miscompiles in subtle ways),
//  * speaks the text syntax "p/q" (with "/q" omitted when q == 1) bit-exactly
//    in both directions.
class Rat {
public:
  Rat() : v_(0) {}
  Rat(int n) : v_(n) {}                 // NOLINT: implicit by design
  Rat(long n) : v_(n) {}                // NOLINT: implicit by design
  Rat(long num, long den) : v_(num, den) {
    if (den == 0) throw StructuralError("rational with zero denominator");
    v_.canonicalize();
  }
  explicit Rat(const mpz_class& n) : v_(n) {}
  Rat(const mpz_class& num, const mpz_class& den) : v_(num, den) {
    if (den == 0) throw StructuralError("rational with zero denominator");
    v_.canonicalize();
  }
  explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  // Parses "p" or "p/q" (optional leading '-' or '+' on p). Anything else is
  // rejected. The result is canonicalized, so parse(format(x)) == x bit-exactly.
  static Rat from_string(const std::string& s);

  // Canonical text form: "p" when the denominator is 1, else "p/q" with q > 0
  // and gcd(|p|, q) == 1.
  std::string str() const { return v_.get_str(); }

  const mpz_class& num() const { return v_.get_num(); }
  const mpz_class& den() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  double to_double() const { return v_.get_d(); }

  friend Rat operator+(const Rat& a, const Rat& b) { return make(a.v_ + b.v_); }
  friend Rat operator-(const Rat& a, const Rat& b) { return make(a.v_ - b.v_); }
  friend Rat operator*(const Rat& a, const Rat& b) { return make(a.v_ * b.v_); }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (sgn(b.v_) == 0) throw StructuralError("rational division by zero");
    return make(a.v_ / b.v_);
  }
  Rat operator-() const { return make(-v_); }
  Rat operator+() const { return *this; }

  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (sgn(o.v_) == 0) throw StructuralError("rational division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) == 0; }
  friend bool operator!=(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) != 0; }
  friend bool operator<(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) <= 0; }
  friend bool operator>(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) > 0; }
  friend bool operator>=(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) >= 0; }

  friend Rat abs(const Rat& a) { return make(::abs(a.v_)); }
  friend Rat min(const Rat& a, const Rat& b) { return a <= b ? a : b; }
  friend Rat max(const Rat& a, const Rat& b) { return a >= b ? a : b; }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r);

private:
  // mpq_class arithmetic keeps canonical operands canonical, so results of the
  // eager operators need no re-canonicalization.
  template <typename Expr>
  static Rat make(Expr&& e) {
    Rat r;
    r.v_ = std::forward<Expr>(e);  // forces evaluation of the gmpxx expression
    return r;
  }

  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

}  // namespace polytri

namespace Eigen {

template <>
struct NumTraits<polytri::Rat> : GenericNumTraits<polytri::Rat> {
  typedef polytri::Rat Real;
  typedef polytri::Rat NonInteger;
  typedef polytri::Rat Nested;
  typedef polytri::Rat Literal;

  static inline Real epsilon() { return polytri::Rat(0); }
  static inline Real dummy_precision() { return polytri::Rat(0); }
  static inline int digits10() { return 0; }

  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 60,
    MulCost = 60,
  };
};

}  // namespace Eigen

namespace std {

template <>
struct hash<polytri::Rat> {
  size_t operator()(const polytri::Rat& r) const noexcept {
    return std::hash<std::string>()(r.str());
  }
};

}  // namespace std
