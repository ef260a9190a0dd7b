#include "evo1d/evolution.hpp"

#include <set>
#include <sstream>

#include "evo1d/error.hpp"

namespace evo1d {

namespace {

Vector restrict_to(const Vector& v, const std::vector<std::size_t>& idx) {
  Vector out;
  for (auto i : idx) out.push_back(v[i]);
  return out;
}

std::size_t first_nonzero(const Vector& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) return i;
  throw PreconditionError("zero vector");
}

// Scale s that puts diag(s·w) into the fixed representative of its
// similarity class.
Scalar similarity_scale(const Field& f, const FormInvariants& inv) {
  if (f.is_rational()) {
    if (inv.detail == FormInvariants::Detail::Signature && inv.negative > inv.positive) return -f.one();
    return f.one();
  }
  if (inv.detail == FormInvariants::Detail::Discriminant && inv.rank % 2 == 1 &&
      inv.discriminant == SquareClass::NonSquare)
    return f.least_nonsquare();
  return f.one();
}

// Reflection of (F^m, diag(k)) in the hyperplane orthogonal to x.
Matrix reflection(const DiagonalForm& k, const Vector& x) {
  const Field& f = k.field;
  const std::size_t m = k.dim();
  const Scalar factor = f.from_int(2) / k.value(x);
  Matrix r = Matrix::identity(f, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) r(i, j) -= factor * x[i] * k.d[j] * x[j];
  return r;
}

// Isometry of diag(k) sending u to v, both of norm 1 (characteristic not two).
Matrix unit_transport(const DiagonalForm& k, const Vector& u, const Vector& v) {
  if (u == v) return Matrix::identity(k.field, k.dim());
  const Vector diff = sub(u, v);
  if (!k.value(diff).is_zero()) return reflection(k, diff);
  return reflection(k, v) * reflection(k, add(u, v));
}

struct OrbitHit {
  Vector rep;
  Matrix sigma;
  Scalar t;
};

// Least r = t⁻¹ σ u over σ in the group and t in K* (t = 1 unless scaled).
OrbitHit orbit_minimum(const std::vector<Isometry>& group, const Vector& u, bool scaled_orbit, const Budget& budget) {
  const Field f = u.front().field();
  std::vector<Scalar> scalars{f.one()};
  if (scaled_orbit) {
    scalars.clear();
    for (const auto& x : enumerate_elements(f, budget))
      if (!x.is_zero()) scalars.push_back(x);
  }
  std::optional<OrbitHit> best;
  for (const auto& g : group) {
    const Vector image = g.map * u;
    for (const auto& t : scalars) {
      Vector r = scaled(image, t.inverse());
      if (!best || lex_less(r, best->rep)) best = OrbitHit{std::move(r), g.map, t};
    }
  }
  return *best;
}

// Isomorphism onto the canonical algebra assembled from its blocks.
Matrix build_transform(const Field& f, std::size_t n, Flavor flavor, const std::vector<std::size_t>& zero_idx,
                       const std::vector<std::size_t>& nz_idx, const Vector& g, const Matrix& theta, const Scalar& c,
                       const Vector& gc) {
  const std::size_t d = zero_idx.size();
  const Vector g_z = restrict_to(g, zero_idx);
  const Vector g_n = restrict_to(g, nz_idx);

  Matrix xi = Matrix::identity(f, d);
  if (flavor == Flavor::NullCube) {
    // Basis of Ann starting with g_Z / c, inverted.
    const std::size_t piv = first_nonzero(g_z);
    std::vector<Vector> cols{scaled(g_z, c.inverse())};
    for (std::size_t k = 0; k < d; ++k)
      if (k != piv) cols.push_back(unit_vector(f, d, k));
    xi = *Matrix::from_columns(f, d, cols).inverse();
  }

  Matrix t(f, n, n);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t j = 0; j < d; ++j) t(r, zero_idx[j]) = xi(r, j);
  for (std::size_t i = 0; i < nz_idx.size(); ++i)
    for (std::size_t j = 0; j < nz_idx.size(); ++j) t(d + i, nz_idx[j]) = theta(i, j);
  if (flavor != Flavor::NullCube && d > 0) {
    // Ann correction x ↦ f(x_W)·(c·gc_Z − ξ g_Z) with f(g_W) = 1.
    const std::size_t k = first_nonzero(g_n);
    const Vector gc_z(gc.begin(), gc.begin() + static_cast<std::ptrdiff_t>(d));
    const Vector shift = sub(scaled(gc_z, c), xi * g_z);
    const Scalar inv = g_n[k].inverse();
    for (std::size_t r = 0; r < d; ++r) t(r, nz_idx[k]) = shift[r] * inv;
  }
  return t;
}

std::string describe_mismatch(const InvariantBundle& a, const InvariantBundle& b) {
  std::ostringstream os;
  if (a.n != b.n) {
    os << "dimensions " << a.n << " vs " << b.n;
  } else if (a.flavor != b.flavor) {
    os << "flavours " << flavor_number(a.flavor) << " vs " << flavor_number(b.flavor);
  } else if (a.dim_ann != b.dim_ann) {
    os << "annihilator dimensions " << a.dim_ann << " vs " << b.dim_ann;
  } else if (!(a.w_part == b.w_part)) {
    switch (a.w_part.detail) {
      case FormInvariants::Detail::Discriminant:
        os << "discriminants " << to_string(a.w_part.discriminant) << " vs " << to_string(b.w_part.discriminant);
        break;
      case FormInvariants::Detail::Signature:
        os << "signatures (" << a.w_part.positive << ", " << a.w_part.negative << ") vs (" << b.w_part.positive
           << ", " << b.w_part.negative << ")";
        break;
      case FormInvariants::Detail::RankOnly:
        os << "ranks " << a.w_part.rank << " vs " << b.w_part.rank;
        break;
    }
  } else {
    os << "orbit labels " << (a.orbit_label ? to_string(*a.orbit_label) : "-") << " vs "
       << (b.orbit_label ? to_string(*b.orbit_label) : "-");
  }
  return os.str();
}

}  // namespace

// ---- algebra ----------------------------------------------------------------

EvolutionAlgebra EvolutionAlgebra::validate(const Field& field, std::size_t n, const Matrix& structure) {
  if (n == 0) throw PreconditionError("dimension must be at least 1");
  if (structure.rows() != n || structure.cols() != n)
    throw PreconditionError("structure matrix must be " + std::to_string(n) + "x" + std::to_string(n));
  if (!(structure.field() == field)) throw FieldMismatch("structure matrix over " + structure.field().name());
  const std::size_t r = structure.rank();
  if (r == 0) throw RankError(RankError::Kind::RankZero, 0);
  if (r > 1) throw RankError(RankError::Kind::RankTooLarge, r);
  return EvolutionAlgebra(structure);
}

Vector EvolutionAlgebra::multiply(const Vector& x, const Vector& y) const {
  if (x.size() != dim() || y.size() != dim()) throw PreconditionError("vector length differs from algebra dimension");
  Vector out = zero_vector(field(), dim());
  for (std::size_t k = 0; k < dim(); ++k) {
    const Scalar w = x[k] * y[k];
    if (w.is_zero()) continue;
    for (std::size_t j = 0; j < dim(); ++j) out[j] += w * c_(k, j);
  }
  return out;
}

std::string to_string(Flavor f) {
  switch (f) {
    case Flavor::NullCube: return "NullCube";
    case Flavor::IsotropicNonAnn: return "IsotropicNonAnn";
    case Flavor::Idempotent: return "Idempotent";
  }
  return "?";
}

int flavor_number(Flavor f) { return static_cast<int>(f); }

Flavor flavor_from_number(int k) {
  if (k < 1 || k > 3) throw PreconditionError("flavour must be 1, 2 or 3");
  return static_cast<Flavor>(k);
}

std::string InvariantBundle::to_string() const {
  std::ostringstream os;
  os << "n=" << n << ", dimAnn=" << dim_ann << ", flavour " << flavor_number(flavor) << " ("
     << evo1d::to_string(flavor) << "), W: " << w_part.to_string();
  if (orbit_label) os << ", orbit " << evo1d::to_string(*orbit_label);
  return os.str();
}

Presentation presentation(const EvolutionAlgebra& alg) {
  const Matrix& c = alg.structure();
  const std::size_t n = alg.dim();
  Presentation p;
  for (std::size_t r = 0; r < n && p.a.empty(); ++r) {
    const Vector row = c.row(r);
    if (!is_zero(row)) p.a = scaled(row, row[first_nonzero(row)].inverse());
  }
  const std::size_t piv = first_nonzero(p.a);
  for (std::size_t i = 0; i < n; ++i) p.lambda.push_back(c(i, piv));
  for (std::size_t i = 0; i < n; ++i)
    if (!(scaled(p.a, p.lambda[i]) == c.row(i))) throw std::logic_error("presentation does not reproduce C");
  return p;
}

std::vector<std::size_t> annihilator(const Presentation& p) { return radical_indices(DiagonalForm(p.a.front().field(), p.lambda)); }

Flavor classify_flavor(const Presentation& p) {
  const DiagonalForm form(p.a.front().field(), p.lambda);
  if (!form.value(p.a).is_zero()) return Flavor::Idempotent;
  for (std::size_t i = 0; i < p.a.size(); ++i)
    if (!(p.a[i] * p.lambda[i]).is_zero()) return Flavor::IsotropicNonAnn;
  return Flavor::NullCube;
}

Vector idempotent(const Presentation& p) {
  if (classify_flavor(p) != Flavor::Idempotent) throw PreconditionError("idempotent: flavour is not Idempotent");
  const Field f = p.a.front().field();
  const DiagonalForm form(f, p.lambda);
  const Scalar s = form.value(p.a);
  const Vector e = scaled(p.a, s.inverse());
  // e·e = ⟨e,e⟩ a, and ⟨e,e⟩ = 1 for the inner product attached to the generator e.
  if (!(scaled(p.a, form.value(e)) == e)) throw std::logic_error("idempotent: e·e ≠ e");
  if (!(DiagonalForm(f, scaled(p.lambda, s)).value(e).is_one())) throw std::logic_error("idempotent: ⟨e,e⟩ ≠ 1");
  return e;
}

// ---- normal form ------------------------------------------------------------

DiagonalForm canonical_w(const Field& field, Flavor flavor, const FormInvariants& inv) {
  DiagonalForm k = standard_form(field, inv);
  if (flavor == Flavor::IsotropicNonAnn && field.is_rational() && field.mode() == RationalMode::QuadraticClosure &&
      k.dim() >= 2)
    k.d[1] = -field.one();
  return k;
}

EvolutionAlgebra assemble(const Field& field, std::size_t dim_ann, const Vector& w, const Vector& g_w, Flavor flavor) {
  const std::size_t n = dim_ann + w.size();
  Vector mu = zero_vector(field, n);
  for (std::size_t i = 0; i < w.size(); ++i) mu[dim_ann + i] = w[i];
  Vector g = zero_vector(field, n);
  if (flavor == Flavor::NullCube) {
    if (dim_ann == 0) throw PreconditionError("NullCube needs a nonzero annihilator");
    g[0] = field.one();
  } else {
    if (g_w.size() != w.size()) throw PreconditionError("generator length differs from W");
    for (std::size_t i = 0; i < g_w.size(); ++i) g[dim_ann + i] = g_w[i];
  }
  Matrix c(field, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c(i, j) = mu[i] * g[j];
  return EvolutionAlgebra::validate(field, n, c);
}

std::vector<Vector> generator_orbits(const Field& field, std::size_t m, Flavor flavor, const Budget& budget) {
  if (!field.is_char2()) throw PreconditionError("generator_orbits is for characteristic two");
  if (flavor == Flavor::NullCube) throw PreconditionError("generator_orbits: NullCube has no W generator");
  const DiagonalForm id(field, Vector(m, field.one()));
  const auto group = orthogonal_group(id, budget);
  const bool flavour3 = flavor == Flavor::Idempotent;
  std::set<Vector, decltype(&lex_less)> reps(&lex_less);
  for (const auto& u : all_vectors(field, m, budget)) {
    if (is_zero(u)) continue;
    const Scalar v = id.value(u);
    if (flavour3 ? !v.is_one() : !v.is_zero()) continue;
    reps.insert(orbit_minimum(group, u, !flavour3, budget).rep);
  }
  return {reps.begin(), reps.end()};
}

NormalForm normalize(const EvolutionAlgebra& alg, const Budget& budget) {
  const Field& f = alg.field();
  const std::size_t n = alg.dim();
  const Presentation p = presentation(alg);
  const Flavor flavor = classify_flavor(p);
  const DiagonalForm lam = p.form(f);
  const auto zero_idx = radical_indices(lam);
  const auto nz_idx = nondegenerate_indices(lam);
  const std::size_t d = zero_idx.size();

  // Rescale the generator: xy = ⟨x,y⟩_μ g with g = a/s, μ = sλ.
  const Scalar s = flavor == Flavor::Idempotent
                       ? lam.value(p.a)
                       : similarity_scale(f, form_invariants(DiagonalForm(f, restrict_to(p.lambda, nz_idx))));
  const Vector g = scaled(p.a, s.inverse());
  const DiagonalForm w_form(f, scaled(restrict_to(p.lambda, nz_idx), s));
  const Vector g_n = restrict_to(g, nz_idx);

  InvariantBundle bundle;
  bundle.n = n;
  bundle.dim_ann = d;
  bundle.flavor = flavor;
  bundle.w_part = form_invariants(w_form);

  const DiagonalForm k = canonical_w(f, flavor, bundle.w_part);
  std::optional<Matrix> theta;
  Scalar c = f.one();
  Vector gc_n;

  if (flavor == Flavor::NullCube) {
    theta = diagonal_isometry(w_form, k, budget);
  } else if (f.is_char2()) {
    const Matrix r = *diagonal_isometry(w_form, k, budget);
    const auto group = orthogonal_group(k, budget);
    const auto hit = orbit_minimum(group, r * g_n, flavor == Flavor::IsotropicNonAnn, budget);
    gc_n = hit.rep;
    bundle.orbit_label = hit.rep;
    c = hit.t * hit.t;
    Matrix scaled_sigma = hit.sigma;
    for (std::size_t i = 0; i < scaled_sigma.rows(); ++i)
      for (std::size_t j = 0; j < scaled_sigma.cols(); ++j) scaled_sigma(i, j) *= hit.t;
    theta = scaled_sigma * r;
  } else if (flavor == Flavor::Idempotent) {
    gc_n = unit_vector(f, k.dim(), 0);
    if (auto r = diagonal_isometry(w_form, k, budget)) theta = unit_transport(k, *r * g_n, gc_n) * *r;
  } else {
    const auto iso = find_isotropic(k, budget);
    if (!iso.vector) throw std::logic_error("canonical W-form lacks a rational isotropic vector");
    gc_n = *iso.vector;
    if (auto tr = transporter(w_form, g_n, k, gc_n, budget); tr.isometry) theta = tr.isometry->map;
  }

  EvolutionAlgebra canonical = assemble(f, d, k.d, gc_n, flavor);
  std::optional<Matrix> to_canonical;
  if (theta) {
    Vector gc = zero_vector(f, n);
    if (flavor == Flavor::NullCube) gc[0] = f.one();
    for (std::size_t i = 0; i < gc_n.size(); ++i) gc[d + i] = gc_n[i];
    to_canonical = build_transform(f, n, flavor, zero_idx, nz_idx, g, *theta, c, gc);
    if (!check_morphism(*to_canonical, alg, canonical))
      throw std::logic_error("normal form transform is not an isomorphism");
  }
  return {std::move(bundle), std::move(canonical), std::move(to_canonical)};
}

InvariantBundle invariants(const EvolutionAlgebra& a, const Budget& budget) { return normalize(a, budget).invariants; }

EvolutionAlgebra canonical_form(const EvolutionAlgebra& a, const Budget& budget) {
  return normalize(a, budget).canonical;
}

IsoResult is_isomorphic(const NormalForm& a, const NormalForm& b) {
  if (!(a.canonical.field() == b.canonical.field()))
    throw FieldMismatch("algebras over " + a.canonical.field().name() + " and " + b.canonical.field().name());
  IsoResult out;
  if (!(a.invariants == b.invariants)) {
    out.reason = describe_mismatch(a.invariants, b.invariants);
    return out;
  }
  if (!(a.canonical == b.canonical)) throw std::logic_error("equal invariants with different canonical forms");
  out.isomorphic = true;
  out.reason = "same invariants: " + a.invariants.to_string();
  if (a.to_canonical && b.to_canonical) out.witness = *b.to_canonical->inverse() * *a.to_canonical;
  return out;
}

IsoResult is_isomorphic(const EvolutionAlgebra& a, const EvolutionAlgebra& b, const Budget& budget) {
  if (!(a.field() == b.field())) throw FieldMismatch("algebras over " + a.field().name() + " and " + b.field().name());
  return is_isomorphic(normalize(a, budget), normalize(b, budget));
}

bool check_morphism(const Matrix& f, const EvolutionAlgebra& a, const EvolutionAlgebra& b) {
  const std::size_t n = a.dim();
  if (b.dim() != n || f.rows() != n || f.cols() != n) throw PreconditionError("check_morphism: dimension mismatch");
  if (!(a.field() == b.field()) || !(f.field() == a.field())) throw FieldMismatch();
  if (f.determinant().is_zero()) return false;
  std::vector<Vector> images;
  for (std::size_t i = 0; i < n; ++i) images.push_back(f.column(i));
  for (std::size_t i = 0; i < n; ++i) {
    const Vector lhs = f * a.structure().row(i);
    if (!(b.multiply(images[i], images[i]) == lhs)) return false;
    for (std::size_t j = i + 1; j < n; ++j)
      if (!is_zero(b.multiply(images[i], images[j]))) return false;
  }
  return true;
}

}  // namespace evo1d
