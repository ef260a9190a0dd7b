#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "evo1d/budget.hpp"

namespace evo1d {

/// Which classification applies to rational inputs: rationals embedded in
/// the reals (rank + signature) or in a quadratically closed field (rank).
enum class RationalMode { Real, QuadraticClosure };

namespace detail {
struct FieldData;
}

class Scalar;

/// Handle to an interned scalar domain. Two handles compare equal iff they
/// denote the same field (and, for rationals, the same mode).
///
/// Finite fields are F_p (deg 1) and F_{p^2} (deg 2). For odd p the quadratic
/// extension is F_p[i] with i^2 the least non-square of F_p; F_4 is F_2[α]
/// with α^2 = α + 1, so that β := α + 1 = α^2.
class Field {
 public:
  static Field rationals(RationalMode mode);
  static Field finite(unsigned p, unsigned degree);

  /// Command-line descriptor: "F<q>" (q = p or p^2), "R" / "real"
  /// (real-closure rationals), "C" / "qc" (quadratic-closure rationals).
  static Field parse(std::string_view spec);

  bool is_rational() const noexcept;
  bool is_finite() const noexcept { return !is_rational(); }
  RationalMode mode() const;

  /// 0 for the rationals.
  unsigned characteristic() const noexcept;
  unsigned prime() const;
  unsigned degree() const;
  /// Number of elements; throws UnsupportedField for the rationals.
  std::uint64_t order() const;

  /// Every element is a square: perfect fields of characteristic two.
  bool is_char2() const noexcept { return characteristic() == 2; }

  /// Short human-readable name, e.g. "F9", "F4", "Q[real]".
  std::string name() const;

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long v) const;
  /// Finite fields: the element with the given enumeration code.
  Scalar element(std::uint32_t code) const;
  /// Odd finite fields: the least non-square in enumeration order (ω).
  Scalar least_nonsquare() const;

  friend bool operator==(const Field& a, const Field& b) noexcept { return a.data_ == b.data_; }

  const detail::FieldData* data() const noexcept { return data_; }

 private:
  explicit Field(const detail::FieldData* d) noexcept : data_(d) {}
  const detail::FieldData* data_;
  friend class Scalar;
};

/// An exact field element. Finite elements are stored by enumeration code
/// c = a + p*b for a + b*x (x = i or α); rationals as reduced GMP fractions.
class Scalar {
 public:
  Scalar(Field field, std::uint32_t code);
  Scalar(Field field, mpq_class value);

  Field field() const noexcept { return Field(field_); }

  bool is_zero() const noexcept;
  bool is_one() const noexcept;

  /// Finite fields only.
  std::uint32_t code() const;
  /// Rationals only.
  const mpq_class& rational() const;

  Scalar operator-() const;
  Scalar inverse() const;
  Scalar pow(std::uint64_t e) const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b);
  /// Enumeration order for finite fields, numeric order for rationals.
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

  /// Canonical text, accepted back by parse_scalar.
  std::string to_string() const;

 private:
  void check_same(const Scalar& o) const;

  const detail::FieldData* field_;
  std::variant<std::uint32_t, mpq_class> v_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Coset label of a scalar in K*/(K*)^2, coarsened per classification mode.
enum class SquareClass {
  Zero,
  Square,     // [1]   (odd finite fields)
  NonSquare,  // [ω]   (odd finite fields)
  Positive,   // real-closure rationals
  Negative,
  Nonzero,    // quadratic-closure rationals, perfect characteristic two
};

std::string to_string(SquareClass c);

/// Product of two labels in the quotient group (zero absorbs).
SquareClass multiply(SquareClass a, SquareClass b);

Scalar parse_scalar(std::string_view text, const Field& field);

SquareClass square_class(const Scalar& x);

/// A root r with r^2 = x, if one exists in the field. Finite fields return
/// the root with the smaller enumeration code.
std::optional<Scalar> sqrt(const Scalar& x);

/// All q elements in enumeration order (0, 1, ...).
std::vector<Scalar> enumerate_elements(const Field& field, const Budget& budget = {});

}  // namespace evo1d
