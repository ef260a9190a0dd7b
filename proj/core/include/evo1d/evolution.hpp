#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "evo1d/budget.hpp"
#include "evo1d/field.hpp"
#include "evo1d/forms.hpp"
#include "evo1d/matrix.hpp"

namespace evo1d {

/// Evolution algebra in its natural basis: row i of the structure matrix
/// holds the coordinates of e_i², and e_i e_j = 0 for i ≠ j.
class EvolutionAlgebra {
 public:
  /// Accepts iff the structure matrix has rank 1; throws RankError otherwise.
  static EvolutionAlgebra validate(const Field& field, std::size_t n, const Matrix& structure);

  const Field& field() const noexcept { return c_.field(); }
  std::size_t dim() const noexcept { return c_.rows(); }
  const Matrix& structure() const noexcept { return c_; }

  /// Product of two coordinate vectors.
  Vector multiply(const Vector& x, const Vector& y) const;

  friend bool operator==(const EvolutionAlgebra&, const EvolutionAlgebra&) = default;

 private:
  explicit EvolutionAlgebra(Matrix c) : c_(std::move(c)) {}
  Matrix c_;
};

/// xy = ⟨x,y⟩ a with ⟨e_i, e_j⟩ = δ_ij λ_i. The first nonzero coordinate of a is 1.
struct Presentation {
  Vector a;
  Vector lambda;

  DiagonalForm form(const Field& f) const { return DiagonalForm(f, lambda); }
  friend bool operator==(const Presentation&, const Presentation&) = default;
};

enum class Flavor {
  NullCube = 1,         // a ∈ Ann(A)
  IsotropicNonAnn = 2,  // a ∉ Ann(A), ⟨a,a⟩ = 0
  Idempotent = 3,       // ⟨a,a⟩ ≠ 0
};

std::string to_string(Flavor f);
int flavor_number(Flavor f);
Flavor flavor_from_number(int k);

/// Complete isomorphism invariant.
///
/// The inner product is only defined up to the choice of generator of A²,
/// so w_part is read after normalising it: at the idempotent for flavour 3,
/// and up to similarity for flavours 1 and 2 (a fixed scale per class).
/// Over characteristic two the W-part of the normalised generator carries
/// extra information, recorded as the least vector of its orbit.
struct InvariantBundle {
  std::size_t n = 0;
  std::size_t dim_ann = 0;
  Flavor flavor = Flavor::NullCube;
  FormInvariants w_part;
  std::optional<Vector> orbit_label;

  friend bool operator==(const InvariantBundle&, const InvariantBundle&) = default;
  std::string to_string() const;
};

struct IsoResult {
  bool isomorphic = false;
  /// F with F(xy) = F(x)F(y); absent for rational inputs when no rational
  /// witness was constructed.
  std::optional<Matrix> witness;
  /// Human-readable basis of the verdict, e.g. "discriminants [1] vs [ω]".
  std::string reason;
};

/// Invariants, canonical representative and an isomorphism onto it.
struct NormalForm {
  InvariantBundle invariants;
  EvolutionAlgebra canonical;
  std::optional<Matrix> to_canonical;
};

Presentation presentation(const EvolutionAlgebra& a);

/// Indices i with λ_i = 0 (a basis of Ann(A)).
std::vector<std::size_t> annihilator(const Presentation& p);

Flavor classify_flavor(const Presentation& p);

/// e = a / ⟨a,a⟩; throws PreconditionError unless the flavour is Idempotent.
Vector idempotent(const Presentation& p);

NormalForm normalize(const EvolutionAlgebra& a, const Budget& budget = {});
InvariantBundle invariants(const EvolutionAlgebra& a, const Budget& budget = {});
EvolutionAlgebra canonical_form(const EvolutionAlgebra& a, const Budget& budget = {});

IsoResult is_isomorphic(const EvolutionAlgebra& a, const EvolutionAlgebra& b, const Budget& budget = {});
IsoResult is_isomorphic(const NormalForm& a, const NormalForm& b);

/// F invertible and F(e_i)F(e_j) = F(e_i e_j) in B for all i ≤ j.
bool check_morphism(const Matrix& f, const EvolutionAlgebra& a, const EvolutionAlgebra& b);

// Building blocks shared with the atlas.

/// Canonical algebra with Ann coordinates first, W-form diag(w) on the
/// remaining coordinates and generator (0, …, 0, g_w) (flavour 1: e_1).
EvolutionAlgebra assemble(const Field& field, std::size_t dim_ann, const Vector& w, const Vector& g_w, Flavor flavor);

/// Canonical W-form for normalised invariants.
DiagonalForm canonical_w(const Field& field, Flavor flavor, const FormInvariants& inv);

/// Least representative per orbit of admissible generator W-parts over
/// characteristic two, with W the identity form of dimension m: vectors of
/// norm 1 under O(W) for flavour 3, nonzero isotropic vectors under
/// O(W) × K* for flavour 2.
std::vector<Vector> generator_orbits(const Field& field, std::size_t m, Flavor flavor, const Budget& budget = {});

}  // namespace evo1d
