#include "evo1d/forms.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "evo1d/error.hpp"

namespace evo1d {

namespace {

void require_same_field(const Field& a, const Field& b) {
  if (!(a == b)) throw FieldMismatch("forms over " + a.name() + " and " + b.name());
}

Vector restrict_to(const Vector& v, const std::vector<std::size_t>& idx) {
  Vector out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(v.at(i));
  return out;
}

Vector vector_from_index(const Field& f, std::size_t n, std::uint64_t index) {
  const std::uint64_t q = f.order();
  Vector v = zero_vector(f, n);
  for (std::size_t k = n; k-- > 0;) {
    v[k] = f.element(static_cast<std::uint32_t>(index % q));
    index /= q;
  }
  return v;
}

void check_vector_budget(const Field& f, std::size_t n, const Budget& budget) {
  if (f.order() > budget.elements)
    throw BudgetExceeded(f.name() + " exceeds the element budget");
  if (saturating_pow(f.order(), n) > budget.matrix_search)
    throw BudgetExceeded("vector search over " + f.name() + "^" + std::to_string(n) +
                         " exceeds the search budget");
}

// Basis b_1..b_m of (F^m, diag(c)) with Gram matrix standard_form, returned
// as the columns of B. Odd finite fields; diag(c) nondegenerate.
Matrix standard_basis_odd(const DiagonalForm& form, const Budget& budget) {
  const Field& f = form.field;
  const std::size_t m = form.dim();
  if (f.order() > budget.elements) throw BudgetExceeded(f.name() + " exceeds the element budget");
  const auto elements = enumerate_elements(f, budget);
  std::vector<Vector> basis;
  for (std::size_t k = 0; k < m; ++k) basis.push_back(unit_vector(f, m, k));
  Vector c = form.d;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    // x, y with c_k x^2 + c_{k+1} y^2 = 1
    std::optional<std::pair<Scalar, Scalar>> sol;
    for (const auto& x : elements) {
      const Scalar r = (f.one() - c[k] * x * x) / c[k + 1];
      if (auto y = sqrt(r)) {
        sol.emplace(x, *y);
        break;
      }
    }
    if (!sol) throw std::logic_error("binary form over a finite field failed to represent 1");
    const auto& [x, y] = *sol;
    Vector u = add(scaled(basis[k], x), scaled(basis[k + 1], y));
    Vector u2 = add(scaled(basis[k], -(c[k + 1] * y)), scaled(basis[k + 1], c[k] * x));
    basis[k] = std::move(u);
    basis[k + 1] = std::move(u2);
    c[k + 1] = c[k] * c[k + 1];
    c[k] = f.one();
  }
  if (m > 0) {
    const Scalar delta = square_class(c[m - 1]) == SquareClass::Square ? f.one() : f.least_nonsquare();
    const auto t = sqrt(c[m - 1] / delta);
    basis[m - 1] = scaled(basis[m - 1], t->inverse());
  }
  return Matrix::from_columns(f, m, basis);
}

// Isometry between nondegenerate rational diagonal forms that only permutes
// and rescales coordinates.
std::optional<Matrix> rational_matching(const DiagonalForm& from, const DiagonalForm& to) {
  const Field& f = from.field;
  const std::size_t m = from.dim();
  Matrix theta(f, m, m);
  std::vector<bool> used(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    bool matched = false;
    for (std::size_t j = 0; j < m && !matched; ++j) {
      if (used[j]) continue;
      if (auto t = sqrt(from.d[i] / to.d[j])) {
        theta(j, i) = *t;
        used[j] = true;
        matched = true;
      }
    }
    if (!matched) return std::nullopt;
  }
  return theta;
}

void verify_isometry(const Matrix& theta, const DiagonalForm& from, const DiagonalForm& to) {
  if (!(congruence(to.gram(), theta) == from.gram()))
    throw std::logic_error("constructed map is not an isometry");
}

}  // namespace

// ---- types ----------------------------------------------------------------

DiagonalForm::DiagonalForm(Field f, Vector entries) : field(f), d(std::move(entries)) {
  for (const auto& x : d)
    if (!(x.field() == field)) throw FieldMismatch("diagonal entry from " + x.field().name());
}

Scalar DiagonalForm::pair(const Vector& x, const Vector& y) const {
  if (x.size() != dim() || y.size() != dim()) throw PreconditionError("vector length differs from form dimension");
  Scalar s = field.zero();
  for (std::size_t i = 0; i < dim(); ++i)
    if (!d[i].is_zero()) s += d[i] * x[i] * y[i];
  return s;
}

std::size_t DiagonalForm::rank() const {
  return static_cast<std::size_t>(std::count_if(d.begin(), d.end(), [](const Scalar& s) { return !s.is_zero(); }));
}

GramForm::GramForm(Matrix g) : gram(std::move(g)) {
  if (!gram.is_symmetric()) throw PreconditionError("Gram matrix is not symmetric");
}

std::string FormInvariants::detail_string() const {
  std::ostringstream os;
  switch (detail) {
    case Detail::RankOnly: os << "rank " << rank; break;
    case Detail::Signature: os << "signature (" << positive << ", " << negative << ")"; break;
    case Detail::Discriminant: os << "discriminant " << evo1d::to_string(discriminant); break;
  }
  return os.str();
}

std::string FormInvariants::to_string() const {
  std::ostringstream os;
  os << "dim " << n << ", rank " << rank;
  if (detail != Detail::RankOnly) os << ", " << detail_string();
  return os.str();
}

// ---- operations -----------------------------------------------------------

std::vector<std::size_t> radical_indices(const DiagonalForm& form) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < form.dim(); ++i)
    if (form.d[i].is_zero()) out.push_back(i);
  return out;
}

std::vector<std::size_t> nondegenerate_indices(const DiagonalForm& form) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < form.dim(); ++i)
    if (!form.d[i].is_zero()) out.push_back(i);
  return out;
}

Diagonalization diagonalize(const GramForm& form) {
  const Field& f = form.field();
  const std::size_t n = form.dim();
  Matrix p = Matrix::identity(f, n);
  if (form.gram.is_diagonal()) {
    Vector d;
    for (std::size_t i = 0; i < n; ++i) d.push_back(form.gram(i, i));
    return {p, DiagonalForm(f, d)};
  }
  if (f.is_char2()) throw PreconditionError("congruence diagonalisation needs characteristic not two");

  Matrix g = form.gram;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && g(piv, piv).is_zero()) ++piv;
    if (piv == n) {
      // All remaining diagonal entries vanish: e_i <- e_i + e_j for a nonzero <e_i, e_j>.
      std::optional<std::pair<std::size_t, std::size_t>> off;
      for (std::size_t i = k; i < n && !off; ++i)
        for (std::size_t j = i + 1; j < n && !off; ++j)
          if (!g(i, j).is_zero()) off.emplace(i, j);
      if (!off) break;
      for (std::size_t r = 0; r < n; ++r) p(r, off->first) += p(r, off->second);
      g = congruence(form.gram, p);
      piv = off->first;
    }
    if (piv != k) {
      for (std::size_t r = 0; r < n; ++r) std::swap(p(r, piv), p(r, k));
      g = congruence(form.gram, p);
    }
    const Scalar inv = g(k, k).inverse();
    for (std::size_t j = k + 1; j < n; ++j) {
      if (g(k, j).is_zero()) continue;
      const Scalar factor = g(k, j) * inv;
      for (std::size_t r = 0; r < n; ++r) p(r, j) -= factor * p(r, k);
    }
    g = congruence(form.gram, p);
  }
  Vector d;
  for (std::size_t i = 0; i < n; ++i) d.push_back(g(i, i));
  if (!g.is_diagonal()) throw std::logic_error("diagonalisation left off-diagonal entries");
  return {p, DiagonalForm(f, d)};
}

FormInvariants form_invariants(const DiagonalForm& form) {
  FormInvariants inv;
  inv.n = form.dim();
  inv.rank = form.rank();
  const Field& f = form.field;
  if (f.is_rational()) {
    if (f.mode() == RationalMode::QuadraticClosure) return inv;
    inv.detail = FormInvariants::Detail::Signature;
    for (const auto& x : form.d) {
      if (x.is_zero()) continue;
      (sgn(x.rational()) > 0 ? inv.positive : inv.negative)++;
    }
    return inv;
  }
  if (f.is_char2()) return inv;
  inv.detail = FormInvariants::Detail::Discriminant;
  Scalar det = f.one();
  for (const auto& x : form.d)
    if (!x.is_zero()) det *= x;
  inv.discriminant = square_class(det);
  return inv;
}

bool isometric(const DiagonalForm& a, const DiagonalForm& b) {
  require_same_field(a.field, b.field);
  return a.dim() == b.dim() && form_invariants(a) == form_invariants(b);
}

DiagonalForm standard_form(const Field& field, const FormInvariants& inv) {
  Vector d = zero_vector(field, inv.n);
  switch (inv.detail) {
    case FormInvariants::Detail::RankOnly:
      for (std::size_t i = 0; i < inv.rank; ++i) d[i] = field.one();
      break;
    case FormInvariants::Detail::Signature:
      for (std::size_t i = 0; i < inv.positive; ++i) d[i] = field.one();
      for (std::size_t i = 0; i < inv.negative; ++i) d[inv.positive + i] = -field.one();
      break;
    case FormInvariants::Detail::Discriminant:
      for (std::size_t i = 0; i < inv.rank; ++i) d[i] = field.one();
      if (inv.rank > 0 && inv.discriminant == SquareClass::NonSquare) d[inv.rank - 1] = field.least_nonsquare();
      break;
  }
  return DiagonalForm(field, d);
}

std::vector<Vector> all_vectors(const Field& field, std::size_t n, const Budget& budget) {
  if (field.is_rational()) throw UnsupportedField("cannot enumerate vectors over " + field.name());
  check_vector_budget(field, n, budget);
  const std::uint64_t total = saturating_pow(field.order(), n);
  std::vector<Vector> out;
  out.reserve(total);
  for (std::uint64_t k = 0; k < total; ++k) out.push_back(vector_from_index(field, n, k));
  return out;
}

std::optional<Vector> represent_value(const DiagonalForm& form, const Scalar& c, const Budget& budget) {
  require_same_field(form.field, c.field());
  const Field& f = form.field;
  if (c.is_zero()) return zero_vector(f, form.dim());
  if (f.is_rational()) throw UnsupportedField("represent_value needs a finite field, got " + f.name());
  const auto idx = nondegenerate_indices(form);
  check_vector_budget(f, idx.size(), budget);
  const std::uint64_t total = saturating_pow(f.order(), idx.size());
  for (std::uint64_t k = 0; k < total; ++k) {
    const Vector part = vector_from_index(f, idx.size(), k);
    Vector v = zero_vector(f, form.dim());
    for (std::size_t i = 0; i < idx.size(); ++i) v[idx[i]] = part[i];
    if (form.value(v) == c) return v;
  }
  return std::nullopt;
}

IsotropicSearch find_isotropic(const DiagonalForm& form, const Budget& budget) {
  const Field& f = form.field;
  const auto idx = nondegenerate_indices(form);
  if (f.is_finite()) {
    check_vector_budget(f, idx.size(), budget);
    const std::uint64_t total = saturating_pow(f.order(), idx.size());
    for (std::uint64_t k = 1; k < total; ++k) {
      const Vector part = vector_from_index(f, idx.size(), k);
      Vector v = zero_vector(f, form.dim());
      for (std::size_t i = 0; i < idx.size(); ++i) v[idx[i]] = part[i];
      if (form.value(v).is_zero()) return {true, v};
    }
    return {false, std::nullopt};
  }

  IsotropicSearch out;
  if (f.mode() == RationalMode::Real) {
    const auto inv = form_invariants(form);
    out.exists = inv.positive > 0 && inv.negative > 0;
  } else {
    out.exists = idx.size() >= 2;
  }
  if (!out.exists) return out;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      const Scalar ratio = -(form.d[idx[a]] / form.d[idx[b]]);
      if (auto t = sqrt(ratio)) {
        Vector v = zero_vector(f, form.dim());
        v[idx[a]] = f.one();
        v[idx[b]] = *t;
        out.vector = v;
        return out;
      }
    }
  }
  return out;
}

Vector hyperbolic_pair(const DiagonalForm& form, const Vector& w) {
  const Field& f = form.field;
  if (f.is_char2()) throw PreconditionError("hyperbolic_pair needs characteristic not two");
  if (w.size() != form.dim()) throw PreconditionError("vector length differs from form dimension");
  if (is_zero(w)) throw PreconditionError("hyperbolic_pair: w is zero");
  if (!form.value(w).is_zero()) throw PreconditionError("hyperbolic_pair: w is anisotropic");
  std::optional<std::size_t> k;
  for (std::size_t i = 0; i < form.dim() && !k; ++i)
    if (!(form.d[i] * w[i]).is_zero()) k = i;
  if (!k) throw PreconditionError("hyperbolic_pair: w lies in the radical");

  const Vector u = scaled(unit_vector(f, form.dim(), *k), (form.d[*k] * w[*k]).inverse());
  const Vector wp = sub(u, scaled(w, form.value(u) / f.from_int(2)));
  if (!form.pair(w, wp).is_one() || !form.value(wp).is_zero())
    throw std::logic_error("hyperbolic pair identities failed");
  return wp;
}

std::optional<Matrix> diagonal_isometry(const DiagonalForm& from, const DiagonalForm& to, const Budget& budget) {
  require_same_field(from.field, to.field);
  if (from.dim() != to.dim() || !from.nondegenerate() || !to.nondegenerate())
    throw PreconditionError("diagonal_isometry needs nondegenerate forms of equal dimension");
  if (!isometric(from, to)) return std::nullopt;
  const Field& f = from.field;
  const std::size_t m = from.dim();
  std::optional<Matrix> theta;
  if (f.is_rational()) {
    theta = rational_matching(from, to);
  } else if (f.is_char2()) {
    theta = Matrix(f, m, m);
    for (std::size_t i = 0; i < m; ++i) (*theta)(i, i) = *sqrt(from.d[i] / to.d[i]);
  } else {
    const Matrix b_from = standard_basis_odd(from, budget);
    const Matrix b_to = standard_basis_odd(to, budget);
    theta = b_to * *b_from.inverse();
  }
  if (theta) verify_isometry(*theta, from, to);
  return theta;
}

TransportResult transporter(const DiagonalForm& d1, const Vector& w1, const DiagonalForm& d2, const Vector& w2,
                            const Budget& budget) {
  require_same_field(d1.field, d2.field);
  const Field& f = d1.field;
  if (!isometric(d1, d2)) throw PreconditionError("transporter: forms are not isometric");
  const auto n1 = nondegenerate_indices(d1), n2 = nondegenerate_indices(d2);
  const auto r1 = radical_indices(d1), r2 = radical_indices(d2);
  for (const auto& [form, w, rad] : {std::tie(d1, w1, r1), std::tie(d2, w2, r2)}) {
    if (w.size() != form.dim()) throw PreconditionError("transporter: vector length differs from form dimension");
    if (is_zero(w)) throw PreconditionError("transporter: zero vector");
    if (!form.value(w).is_zero()) throw PreconditionError("transporter: vector is anisotropic");
    for (auto i : rad)
      if (!w[i].is_zero()) throw PreconditionError("transporter: vector leaves the nondegenerate part");
  }

  const DiagonalForm e1(f, restrict_to(d1.d, n1)), e2(f, restrict_to(d2.d, n2));
  const Vector v1 = restrict_to(w1, n1), v2 = restrict_to(w2, n2);
  const std::size_t m = n1.size();

  std::optional<Matrix> inner;
  if (e1 == e2 && v1 == v2) {
    inner = Matrix::identity(f, m);
  } else if (f.is_char2()) {
    // Rescale both sides to the identity form, then search O(I_m).
    const DiagonalForm id(f, Vector(m, f.one()));
    const Matrix s1 = *diagonal_isometry(e1, id, budget);
    const Matrix s2 = *diagonal_isometry(e2, id, budget);
    const Vector target = s2 * v2;
    const Vector source = s1 * v1;
    for (const auto& g : orthogonal_group(id, budget)) {
      if (g.map * source == target) {
        inner = *s2.inverse() * g.map * s1;
        break;
      }
    }
    if (!inner) return {false, std::nullopt};
  } else {
    const Vector p1 = hyperbolic_pair(e1, v1), p2 = hyperbolic_pair(e2, v2);
    std::vector<Vector> cols1{v1, p1}, cols2{v2, p2};
    std::optional<Matrix> eta = Matrix(f, 0, 0);
    if (m > 2) {
      auto complement = [&](const DiagonalForm& e, const Vector& a, const Vector& b) {
        Matrix constraints(f, 2, m);
        for (std::size_t k = 0; k < m; ++k) {
          constraints(0, k) = e.d[k] * a[k];
          constraints(1, k) = e.d[k] * b[k];
        }
        const Matrix basis = Matrix::from_columns(f, m, constraints.null_space());
        const auto diag = diagonalize(GramForm(congruence(e.gram(), basis)));
        return std::make_pair(basis * diag.transform, diag.form);
      };
      const auto [u1, c1] = complement(e1, v1, p1);
      const auto [u2, c2] = complement(e2, v2, p2);
      eta = diagonal_isometry(c1, c2, budget);
      if (!eta) return {true, std::nullopt};
      for (std::size_t k = 0; k < m - 2; ++k) {
        cols1.push_back(u1.column(k));
        cols2.push_back(u2 * eta->column(k));
      }
    }
    const Matrix t1 = Matrix::from_columns(f, m, cols1);
    const Matrix t2 = Matrix::from_columns(f, m, cols2);
    inner = t2 * *t1.inverse();
  }

  Matrix theta(f, d1.dim(), d1.dim());
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) theta(n2[b], n1[a]) = (*inner)(b, a);
  for (std::size_t k = 0; k < r1.size(); ++k) theta(r2[k], r1[k]) = f.one();
  verify_isometry(theta, d1, d2);
  if (!(theta * w1 == w2)) throw std::logic_error("transporter does not send w1 to w2");
  return {true, Isometry{theta}};
}

std::vector<Isometry> orthogonal_group(const DiagonalForm& form, const Budget& budget) {
  const Field& f = form.field;
  if (f.is_rational()) throw UnsupportedField("orthogonal_group needs a finite field, got " + f.name());
  if (!form.nondegenerate()) throw PreconditionError("orthogonal_group: degenerate form");
  const std::size_t n = form.dim();
  if (f.order() > budget.group_field)
    throw BudgetExceeded(f.name() + " exceeds the group-enumeration field budget");
  if (saturating_pow(f.order(), n * n) > budget.matrix_search)
    throw BudgetExceeded("orthogonal_group over " + f.name() + " in dimension " + std::to_string(n) +
                         " exceeds the search budget");

  const auto vectors = all_vectors(f, n, budget);
  std::vector<std::vector<const Vector*>> candidates(n);
  for (const auto& v : vectors)
    for (std::size_t j = 0; j < n; ++j)
      if (form.value(v) == form.d[j]) candidates[j].push_back(&v);

  std::vector<Isometry> out;
  std::vector<const Vector*> chosen(n, nullptr);
  auto extend = [&](auto&& self, std::size_t j) -> void {
    if (j == n) {
      std::vector<Vector> cols;
      for (auto* c : chosen) cols.push_back(*c);
      out.push_back({Matrix::from_columns(f, n, cols)});
      return;
    }
    for (const Vector* c : candidates[j]) {
      bool ok = true;
      for (std::size_t i = 0; i < j && ok; ++i) ok = form.pair(*chosen[i], *c).is_zero();
      if (!ok) continue;
      chosen[j] = c;
      self(self, j + 1);
    }
  };
  extend(extend, 0);
  return out;
}

std::vector<Orbit> isotropic_orbits(const DiagonalForm& form, const Budget& budget) {
  const auto group = orthogonal_group(form, budget);
  std::set<Vector, decltype(&lex_less)> remaining(&lex_less);
  for (auto& v : all_vectors(form.field, form.dim(), budget))
    if (!is_zero(v) && form.value(v).is_zero()) remaining.insert(std::move(v));

  std::vector<Orbit> out;
  while (!remaining.empty()) {
    const Vector seed = *remaining.begin();
    std::set<Vector, decltype(&lex_less)> members(&lex_less);
    for (const auto& g : group) members.insert(g.map * seed);
    for (const auto& v : members) remaining.erase(v);
    Orbit orbit{*members.begin(), std::vector<Vector>(members.begin(), members.end())};
    out.push_back(std::move(orbit));
  }
  return out;
}

}  // namespace evo1d
