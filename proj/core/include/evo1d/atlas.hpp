#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "evo1d/budget.hpp"
#include "evo1d/evolution.hpp"

namespace evo1d {

struct ClassEntry {
  InvariantBundle invariants;
  EvolutionAlgebra algebra;  // canonical representative
};

/// All isomorphism classes of n-dimensional algebras with dim(A²) = 1,
/// ordered by flavour, then annihilator dimension, then W-class.
struct ClassTable {
  Field field;
  std::size_t n = 0;
  std::vector<ClassEntry> entries;

  std::size_t count(Flavor flavor, std::optional<std::size_t> dim_ann = std::nullopt) const;
  /// Index of the entry isomorphic to a, or empty.
  std::optional<std::size_t> locate(const EvolutionAlgebra& a, const Budget& budget = {}) const;
};

ClassTable enumerate_classes(const Field& field, std::size_t n, const Budget& budget = {});

/// Exhaustive search for an isomorphism over a finite field.
std::optional<Matrix> brute_force_witness(const EvolutionAlgebra& a, const EvolutionAlgebra& b,
                                          const Budget& budget = {});
bool brute_force_iso(const EvolutionAlgebra& a, const EvolutionAlgebra& b, const Budget& budget = {});

/// Every rank-1 structure matrix λ ⊗ a with a normalised (first nonzero
/// coordinate 1), over a finite field. Each algebra appears exactly once.
std::vector<EvolutionAlgebra> all_algebras(const Field& field, std::size_t n, const Budget& budget = {});

// ---- verification against the worked examples --------------------------------

struct CountCheck {
  std::string what;  // e.g. "flavour 1, dimAnn 2"
  Flavor flavor;
  std::optional<std::size_t> dim_ann;
  std::size_t expected;
  std::size_t computed;
  bool ok() const { return expected == computed; }
};

struct RepresentativeMatch {
  std::string label;
  EvolutionAlgebra algebra;
  Flavor listed_flavor;  // flavour under which the example lists it
  Flavor actual_flavor;
  std::vector<std::size_t> matches;  // indices into the class table
  /// Other listed representatives in the same class.
  std::vector<std::string> same_class_as;
  bool ok() const { return matches.size() == 1; }
};

struct ExtraCheck {
  std::string what;
  bool ok;
  std::string detail;
};

struct VerificationReport {
  std::string case_id;
  ClassTable table;
  std::vector<CountCheck> counts;
  std::vector<RepresentativeMatch> representatives;
  std::vector<ExtraCheck> extras;
  std::vector<std::string> notes;
  bool pass = false;
};

std::vector<std::string> paper_cases();

/// Cases: "f9-dim3", "f4-dim3", "r-dim3", "c-dim4". Throws PreconditionError
/// for an unknown case.
VerificationReport verify_paper(const std::string& case_id, const Budget& budget = {});

}  // namespace evo1d
