#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "evo1d/budget.hpp"
#include "evo1d/field.hpp"
#include "evo1d/matrix.hpp"

namespace evo1d {

/// Symmetric bilinear form with Gram matrix diag(d).
struct DiagonalForm {
  Field field;
  Vector d;

  DiagonalForm(Field f, Vector entries);

  std::size_t dim() const noexcept { return d.size(); }
  Scalar pair(const Vector& x, const Vector& y) const;
  Scalar value(const Vector& x) const { return pair(x, x); }
  Matrix gram() const { return Matrix::diagonal(field, d); }
  std::size_t rank() const;
  bool nondegenerate() const { return rank() == dim(); }

  friend bool operator==(const DiagonalForm&, const DiagonalForm&) = default;
};

/// Symmetric bilinear form given by an arbitrary symmetric Gram matrix.
struct GramForm {
  Matrix gram;

  explicit GramForm(Matrix g);
  const Field& field() const noexcept { return gram.field(); }
  std::size_t dim() const noexcept { return gram.rows(); }
};

/// Complete isometry invariants for the supported fields.
struct FormInvariants {
  enum class Detail { RankOnly, Signature, Discriminant };

  std::size_t n = 0;
  std::size_t rank = 0;
  Detail detail = Detail::RankOnly;
  std::size_t positive = 0;  // Signature
  std::size_t negative = 0;  // Signature
  SquareClass discriminant = SquareClass::Square;  // Discriminant, of the nondegenerate part

  friend bool operator==(const FormInvariants&, const FormInvariants&) = default;
  std::string to_string() const;
  /// The part that distinguishes forms of equal rank ("signature (2, 1)",
  /// "discriminant [ω]", "rank 3").
  std::string detail_string() const;
};

/// θ with θᵀ G₂ θ = G₁; column k holds the image of the k-th source basis
/// vector in target coordinates.
struct Isometry {
  Matrix map;
  friend bool operator==(const Isometry&, const Isometry&) = default;
};

struct Diagonalization {
  Matrix transform;  // P with Pᵀ G P = diag(form.d)
  DiagonalForm form;
};

struct IsotropicSearch {
  bool exists = false;
  /// Empty when existence is decided without a rational witness.
  std::optional<Vector> vector;
};

struct TransportResult {
  bool exists = false;
  /// Empty when an isometry exists but no rational witness was constructed.
  std::optional<Isometry> isometry;
};

struct Orbit {
  Vector representative;  // least member in enumeration order
  std::vector<Vector> members;
};

/// Indices i (0-based) with d_i = 0.
std::vector<std::size_t> radical_indices(const DiagonalForm& form);
std::vector<std::size_t> nondegenerate_indices(const DiagonalForm& form);

/// Congruence diagonalisation by symmetric elimination. Characteristic two
/// accepts only already-diagonal input.
Diagonalization diagonalize(const GramForm& form);

FormInvariants form_invariants(const DiagonalForm& form);

/// Equal dimension and equal invariants.
bool isometric(const DiagonalForm& a, const DiagonalForm& b);

/// The standard representative of a nondegenerate isometry class:
/// diag(1,…,1,δ) with δ ∈ {1, ω} over odd finite fields, the identity over
/// perfect characteristic two and quadratic closure, diag(1,…,1,-1,…,-1) in
/// real-closure mode.
DiagonalForm standard_form(const Field& field, const FormInvariants& inv);

/// First v (enumeration order, radical coordinates zero) with vᵀDv = c.
/// Finite fields only.
std::optional<Vector> represent_value(const DiagonalForm& form, const Scalar& c,
                                      const Budget& budget = {});

/// A nonzero isotropic vector supported on the nondegenerate coordinates.
IsotropicSearch find_isotropic(const DiagonalForm& form, const Budget& budget = {});

/// w′ with ⟨w,w′⟩ = 1 and ⟨w′,w′⟩ = 0, for w nonzero isotropic outside the
/// radical. Characteristic not two.
Vector hyperbolic_pair(const DiagonalForm& form, const Vector& w);

/// θ with θᵀ diag(to) θ = diag(from), for nondegenerate isometric forms.
/// Empty over the rationals when the needed rescalings are irrational, and
/// whenever the forms are not isometric.
std::optional<Matrix> diagonal_isometry(const DiagonalForm& from, const DiagonalForm& to,
                                        const Budget& budget = {});

/// An isometry D1 → D2 sending w1 to w2, both nonzero isotropic vectors
/// supported on the nondegenerate coordinates.
TransportResult transporter(const DiagonalForm& d1, const Vector& w1, const DiagonalForm& d2,
                            const Vector& w2, const Budget& budget = {});

/// Every M with Mᵀ D M = D, ordered lexicographically by columns.
std::vector<Isometry> orthogonal_group(const DiagonalForm& form, const Budget& budget = {});

/// Orbits of orthogonal_group on the nonzero isotropic vectors, sorted by
/// representative.
std::vector<Orbit> isotropic_orbits(const DiagonalForm& form, const Budget& budget = {});

/// All q^n vectors of a finite field in enumeration order.
std::vector<Vector> all_vectors(const Field& field, std::size_t n, const Budget& budget = {});

}  // namespace evo1d
