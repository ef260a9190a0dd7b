#include "evo1d/field.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <tuple>

#include "evo1d/error.hpp"

namespace evo1d {

namespace detail {

constexpr std::uint32_t kNoRoot = UINT32_MAX;
constexpr std::uint64_t kMaxFiniteOrder = 65536;

struct FieldData {
  bool rational = false;
  RationalMode mode = RationalMode::Real;
  unsigned p = 0;
  unsigned deg = 0;
  std::uint32_t q = 0;
  // Generator x of the quadratic extension satisfies x^2 = c0 + c1*x.
  std::uint32_t c0 = 0;
  std::uint32_t c1 = 0;
  std::uint32_t omega = kNoRoot;
  std::vector<std::uint32_t> inv;
  std::vector<std::uint32_t> root;

  std::uint32_t lo(std::uint32_t c) const { return c % p; }
  std::uint32_t hi(std::uint32_t c) const { return c / p; }
  std::uint32_t pack(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint32_t>(a % p + p * (b % p));
  }
  std::uint32_t add(std::uint32_t x, std::uint32_t y) const {
    return pack(lo(x) + lo(y), hi(x) + hi(y));
  }
  std::uint32_t neg(std::uint32_t x) const { return pack(p - lo(x), p - hi(x)); }
  std::uint32_t mul(std::uint32_t x, std::uint32_t y) const {
    const std::uint64_t a0 = lo(x), a1 = hi(x), b0 = lo(y), b1 = hi(y);
    const std::uint64_t t = a1 * b1 % p;
    return pack(a0 * b0 + t * c0, a0 * b1 + a1 * b0 + t * c1);
  }
};

}  // namespace detail

namespace {

using detail::FieldData;

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void build_tables(FieldData& f) {
  f.inv.assign(f.q, 0);
  f.root.assign(f.q, detail::kNoRoot);
  for (std::uint32_t x = 1; x < f.q; ++x) {
    // x^(q-2) = x^-1
    std::uint32_t r = 1, b = x;
    for (std::uint32_t e = f.q - 2; e; e >>= 1) {
      if (e & 1) r = f.mul(r, b);
      b = f.mul(b, b);
    }
    f.inv[x] = r;
  }
  for (std::uint32_t y = 0; y < f.q; ++y) {
    const std::uint32_t s = f.mul(y, y);
    if (f.root[s] == detail::kNoRoot) f.root[s] = y;
  }
  if (f.p != 2) {
    for (std::uint32_t x = 1; x < f.q; ++x) {
      if (f.root[x] == detail::kNoRoot) {
        f.omega = x;
        break;
      }
    }
  }
}

const FieldData* intern(bool rational, RationalMode mode, unsigned p, unsigned deg) {
  static std::mutex mu;
  static std::map<std::tuple<bool, int, unsigned, unsigned>, std::unique_ptr<FieldData>> table;
  std::lock_guard lock(mu);
  auto key = std::make_tuple(rational, static_cast<int>(mode), p, deg);
  auto it = table.find(key);
  if (it != table.end()) return it->second.get();

  auto f = std::make_unique<FieldData>();
  f->rational = rational;
  f->mode = mode;
  if (!rational) {
    f->p = p;
    f->deg = deg;
    f->q = deg == 1 ? p : p * p;
    if (deg == 2) {
      if (p == 2) {
        f->c0 = 1;
        f->c1 = 1;
      } else {
        std::uint32_t n = 2;
        auto is_residue = [p](std::uint32_t v) {
          for (std::uint32_t y = 1; y < p; ++y)
            if (y * y % p == v) return true;
          return false;
        };
        while (is_residue(n)) ++n;
        f->c0 = n;
        f->c1 = 0;
      }
    }
    build_tables(*f);
  }
  const FieldData* out = f.get();
  table.emplace(key, std::move(f));
  return out;
}

std::string trim(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::uint32_t reduce_digits(std::string_view digits, unsigned p) {
  mpz_class v(std::string(digits), 10);
  mpz_class r = v % p;
  return static_cast<std::uint32_t>(r.get_ui());
}

[[noreturn]] void bad_scalar(std::string_view text, const Field& f, std::string_view why) {
  throw ParseError("cannot parse scalar '" + std::string(text) + "' over " + f.name() + ": " +
                   std::string(why));
}

}  // namespace

// ---- Field ----------------------------------------------------------------

Field Field::rationals(RationalMode mode) { return Field(intern(true, mode, 0, 0)); }

Field Field::finite(unsigned p, unsigned degree) {
  if (!is_prime(p)) throw UnsupportedField("F_q requires a prime characteristic, got " + std::to_string(p));
  if (degree != 1 && degree != 2)
    throw UnsupportedField("only prime fields and quadratic extensions are supported");
  if (saturating_pow(p, degree) > detail::kMaxFiniteOrder)
    throw UnsupportedField("field order exceeds " + std::to_string(detail::kMaxFiniteOrder));
  return Field(intern(false, RationalMode::Real, p, degree));
}

Field Field::parse(std::string_view spec) {
  const std::string s = trim(spec);
  if (s == "R" || s == "real" || s == "Q-real") return rationals(RationalMode::Real);
  if (s == "C" || s == "qc" || s == "quadratic-closure" || s == "Q-qc")
    return rationals(RationalMode::QuadraticClosure);
  if (s.size() >= 2 && (s[0] == 'F' || s[0] == 'f') && all_digits(s.substr(1))) {
    const unsigned long q = std::stoul(s.substr(1));
    if (q <= detail::kMaxFiniteOrder) {
      if (is_prime(static_cast<unsigned>(q))) return finite(static_cast<unsigned>(q), 1);
      for (unsigned p = 2; p * p <= q; ++p)
        if (p * p == q && is_prime(p)) return finite(p, 2);
    }
    throw UnsupportedField("unsupported finite field order " + s.substr(1));
  }
  throw ParseError("unknown field descriptor '" + std::string(spec) + "'");
}

bool Field::is_rational() const noexcept { return data_->rational; }

RationalMode Field::mode() const {
  if (!data_->rational) throw UnsupportedField("mode() is defined for the rationals only");
  return data_->mode;
}

unsigned Field::characteristic() const noexcept { return data_->rational ? 0 : data_->p; }

unsigned Field::prime() const {
  if (data_->rational) throw UnsupportedField("the rationals have no prime subfield order");
  return data_->p;
}

unsigned Field::degree() const {
  if (data_->rational) throw UnsupportedField("the rationals are not a finite extension");
  return data_->deg;
}

std::uint64_t Field::order() const {
  if (data_->rational) throw UnsupportedField("the rationals are infinite");
  return data_->q;
}

std::string Field::name() const {
  if (data_->rational)
    return data_->mode == RationalMode::Real ? "Q[real]" : "Q[quadratic-closure]";
  return "F" + std::to_string(data_->q);
}

Scalar Field::zero() const { return from_int(0); }
Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(long v) const {
  if (data_->rational) return Scalar(*this, mpq_class(v));
  const long p = data_->p;
  return Scalar(*this, static_cast<std::uint32_t>(((v % p) + p) % p));
}

Scalar Field::element(std::uint32_t code) const {
  if (data_->rational) throw UnsupportedField("element codes exist for finite fields only");
  if (code >= data_->q) throw PreconditionError("element code out of range");
  return Scalar(*this, code);
}

Scalar Field::least_nonsquare() const {
  if (data_->rational || data_->p == 2)
    throw UnsupportedField(name() + " has no distinguished non-square");
  return Scalar(*this, data_->omega);
}

// ---- Scalar ---------------------------------------------------------------

Scalar::Scalar(Field field, std::uint32_t code) : field_(field.data_), v_(code) {
  if (field_->rational) v_ = mpq_class(code);
}

Scalar::Scalar(Field field, mpq_class value) : field_(field.data_) {
  if (!field_->rational) throw FieldMismatch("rational value given for " + field.name());
  value.canonicalize();
  v_ = std::move(value);
}

bool Scalar::is_zero() const noexcept {
  if (field_->rational) return sgn(std::get<mpq_class>(v_)) == 0;
  return std::get<std::uint32_t>(v_) == 0;
}

bool Scalar::is_one() const noexcept {
  if (field_->rational) return std::get<mpq_class>(v_) == 1;
  return std::get<std::uint32_t>(v_) == 1;
}

std::uint32_t Scalar::code() const {
  if (field_->rational) throw UnsupportedField("rationals have no element code");
  return std::get<std::uint32_t>(v_);
}

const mpq_class& Scalar::rational() const {
  if (!field_->rational) throw UnsupportedField("finite-field scalar is not rational");
  return std::get<mpq_class>(v_);
}

void Scalar::check_same(const Scalar& o) const {
  if (field_ != o.field_) throw FieldMismatch();
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (field_->rational)
    std::get<mpq_class>(r.v_) = -std::get<mpq_class>(v_);
  else
    std::get<std::uint32_t>(r.v_) = field_->neg(std::get<std::uint32_t>(v_));
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero();
  Scalar r = *this;
  if (field_->rational)
    std::get<mpq_class>(r.v_) = 1 / std::get<mpq_class>(v_);
  else
    std::get<std::uint32_t>(r.v_) = field_->inv[std::get<std::uint32_t>(v_)];
  return r;
}

Scalar Scalar::pow(std::uint64_t e) const {
  Scalar result = field().one();
  Scalar base = *this;
  while (e) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same(o);
  if (field_->rational)
    std::get<mpq_class>(v_) += std::get<mpq_class>(o.v_);
  else
    std::get<std::uint32_t>(v_) = field_->add(std::get<std::uint32_t>(v_), std::get<std::uint32_t>(o.v_));
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same(o);
  if (field_->rational)
    std::get<mpq_class>(v_) -= std::get<mpq_class>(o.v_);
  else
    std::get<std::uint32_t>(v_) =
        field_->add(std::get<std::uint32_t>(v_), field_->neg(std::get<std::uint32_t>(o.v_)));
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same(o);
  if (field_->rational)
    std::get<mpq_class>(v_) *= std::get<mpq_class>(o.v_);
  else
    std::get<std::uint32_t>(v_) = field_->mul(std::get<std::uint32_t>(v_), std::get<std::uint32_t>(o.v_));
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_same(o);
  return *this *= o.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.field_ != b.field_) return false;
  return a.v_ == b.v_;
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  a.check_same(b);
  if (a.field_->rational) {
    const int c = cmp(std::get<mpq_class>(a.v_), std::get<mpq_class>(b.v_));
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  return std::get<std::uint32_t>(a.v_) <=> std::get<std::uint32_t>(b.v_);
}

std::string Scalar::to_string() const {
  if (field_->rational) return std::get<mpq_class>(v_).get_str();
  const std::uint32_t c = std::get<std::uint32_t>(v_);
  if (field_->deg == 1) return std::to_string(c);
  if (field_->p == 2) {
    static constexpr const char* kNames[] = {"0", "1", "a", "b"};
    return kNames[c];
  }
  const std::uint32_t a = field_->lo(c), b = field_->hi(c);
  if (b == 0) return std::to_string(a);
  const std::string imag = b == 1 ? "i" : std::to_string(b) + "*i";
  if (a == 0) return imag;
  return std::to_string(a) + "+" + imag;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

// ---- free functions -------------------------------------------------------

std::string to_string(SquareClass c) {
  switch (c) {
    case SquareClass::Zero: return "0";
    case SquareClass::Square: return "[1]";
    case SquareClass::NonSquare: return "[ω]";
    case SquareClass::Positive: return "+";
    case SquareClass::Negative: return "-";
    case SquareClass::Nonzero: return "nonzero";
  }
  return "?";
}

SquareClass multiply(SquareClass a, SquareClass b) {
  if (a == SquareClass::Zero || b == SquareClass::Zero) return SquareClass::Zero;
  switch (a) {
    case SquareClass::Square:
    case SquareClass::NonSquare:
      if (b != SquareClass::Square && b != SquareClass::NonSquare) break;
      return a == b ? SquareClass::Square : SquareClass::NonSquare;
    case SquareClass::Positive:
    case SquareClass::Negative:
      if (b != SquareClass::Positive && b != SquareClass::Negative) break;
      return a == b ? SquareClass::Positive : SquareClass::Negative;
    case SquareClass::Nonzero:
      if (b != SquareClass::Nonzero) break;
      return SquareClass::Nonzero;
    default:
      break;
  }
  throw PreconditionError("square-class labels from different classification modes");
}

Scalar parse_scalar(std::string_view text, const Field& field) {
  const std::string s = trim(text);
  if (s.empty()) bad_scalar(text, field, "empty");
  const FieldData& f = *field.data();

  if (f.rational) {
    std::string_view body = s;
    if (body.front() == '-') body.remove_prefix(1);
    const auto slash = body.find('/');
    const std::string_view num = body.substr(0, slash);
    if (!all_digits(num)) bad_scalar(text, field, "expected [-]digits[/digits]");
    mpq_class v;
    if (slash == std::string_view::npos) {
      v = mpq_class(mpz_class(std::string(num), 10));
    } else {
      const std::string_view den = body.substr(slash + 1);
      if (!all_digits(den)) bad_scalar(text, field, "expected [-]digits[/digits]");
      mpz_class d(std::string(den), 10);
      if (d == 0) bad_scalar(text, field, "denominator zero");
      v = mpq_class(mpz_class(std::string(num), 10), d);
    }
    v.canonicalize();
    if (s.front() == '-') v = -v;
    return Scalar(field, v);
  }

  if (f.p == 2 && f.deg == 2) {
    if (s == "0") return Scalar(field, std::uint32_t{0});
    if (s == "1") return Scalar(field, std::uint32_t{1});
    if (s == "a" || s == "alpha" || s == "α") return Scalar(field, std::uint32_t{2});
    if (s == "b" || s == "beta" || s == "β") return Scalar(field, std::uint32_t{3});
    bad_scalar(text, field, "expected one of 0, 1, a, b");
  }

  // Sum of signed terms: digits, digits*i, digits i, i.
  std::uint64_t re = 0, im = 0;
  std::size_t pos = 0;
  bool any = false;
  while (pos < s.size()) {
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
      negative = s[pos] == '-';
      ++pos;
    } else if (any) {
      bad_scalar(text, field, "expected '+' or '-' between terms");
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    std::string_view term = std::string_view(s).substr(pos, end - pos);
    pos = end;
    if (term.empty()) bad_scalar(text, field, "empty term");
    bool imaginary = false;
    std::string_view coeff = term;
    if (term.back() == 'i') {
      if (f.deg != 2) bad_scalar(text, field, "'i' is not an element of a prime field");
      imaginary = true;
      coeff = term.substr(0, term.size() - 1);
      if (!coeff.empty() && coeff.back() == '*') {
        coeff.remove_suffix(1);
        if (coeff.empty()) bad_scalar(text, field, "missing coefficient before '*i'");
      }
    }
    std::uint32_t c = 1;
    if (!coeff.empty()) {
      if (!all_digits(coeff)) bad_scalar(text, field, "coefficient is not a non-negative integer");
      c = reduce_digits(coeff, f.p);
    } else if (!imaginary) {
      bad_scalar(text, field, "empty coefficient");
    }
    if (negative) c = (f.p - c) % f.p;
    (imaginary ? im : re) += c;
    any = true;
  }
  return Scalar(field, f.pack(re, im));
}

SquareClass square_class(const Scalar& x) {
  if (x.is_zero()) return SquareClass::Zero;
  const FieldData& f = *x.field().data();
  if (f.rational) {
    if (f.mode == RationalMode::QuadraticClosure) return SquareClass::Nonzero;
    return sgn(x.rational()) > 0 ? SquareClass::Positive : SquareClass::Negative;
  }
  if (f.p == 2) return SquareClass::Nonzero;
  return f.root[x.code()] != detail::kNoRoot ? SquareClass::Square : SquareClass::NonSquare;
}

std::optional<Scalar> sqrt(const Scalar& x) {
  const FieldData& f = *x.field().data();
  if (f.rational) {
    const mpq_class& v = x.rational();
    if (sgn(v) < 0) return std::nullopt;
    if (!mpz_perfect_square_p(v.get_num_mpz_t()) || !mpz_perfect_square_p(v.get_den_mpz_t()))
      return std::nullopt;
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), v.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), v.get_den_mpz_t());
    return Scalar(x.field(), mpq_class(n, d));
  }
  const std::uint32_t r = f.root[x.code()];
  if (r == detail::kNoRoot) return std::nullopt;
  return Scalar(x.field(), r);
}

std::vector<Scalar> enumerate_elements(const Field& field, const Budget& budget) {
  if (field.is_rational()) throw UnsupportedField("cannot enumerate the elements of " + field.name());
  const std::uint64_t q = field.order();
  if (q > budget.elements)
    throw BudgetExceeded(field.name() + " has " + std::to_string(q) + " elements, budget is " +
                         std::to_string(budget.elements));
  std::vector<Scalar> out;
  out.reserve(q);
  for (std::uint32_t c = 0; c < q; ++c) out.emplace_back(field, c);
  return out;
}

}  // namespace evo1d
