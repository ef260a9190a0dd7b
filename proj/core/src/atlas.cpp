#include "evo1d/atlas.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "evo1d/document.hpp"
#include "evo1d/error.hpp"
#include "paper_data.hpp"

namespace evo1d {

namespace {

using nlohmann::json;

std::vector<FormInvariants> nondegenerate_classes(const Field& f, std::size_t m) {
  FormInvariants base;
  base.n = m;
  base.rank = m;
  std::vector<FormInvariants> out;
  if (f.is_rational() && f.mode() == RationalMode::Real) {
    base.detail = FormInvariants::Detail::Signature;
    for (std::size_t p = m + 1; p-- > 0;) {
      base.positive = p;
      base.negative = m - p;
      out.push_back(base);
    }
  } else if (f.is_rational() || f.is_char2()) {
    out.push_back(base);
  } else {
    base.detail = FormInvariants::Detail::Discriminant;
    base.discriminant = SquareClass::Square;
    out.push_back(base);
    base.discriminant = SquareClass::NonSquare;
    out.push_back(base);
  }
  return out;
}

// One algebra per admissible (flavour, dimAnn, W-class[, orbit]), possibly
// with repeats; normalisation removes them.
std::vector<EvolutionAlgebra> candidates(const Field& f, std::size_t n, Flavor flavor, const Budget& budget) {
  std::vector<EvolutionAlgebra> out;
  const std::size_t d_min = flavor == Flavor::NullCube ? 1 : 0;
  const std::size_t d_max = flavor == Flavor::IsotropicNonAnn ? (n >= 2 ? n - 2 : 0) : n - 1;
  if (flavor == Flavor::IsotropicNonAnn && n < 2) return out;
  if (flavor == Flavor::NullCube && n < 2) return out;
  for (std::size_t d = d_min; d <= d_max; ++d) {
    const std::size_t m = n - d;
    if (flavor != Flavor::NullCube && f.is_char2()) {
      const Vector id(m, f.one());
      for (const auto& rep : generator_orbits(f, m, flavor, budget)) out.push_back(assemble(f, d, id, rep, flavor));
      continue;
    }
    for (const auto& inv : nondegenerate_classes(f, m)) {
      const DiagonalForm k = canonical_w(f, flavor, inv);
      switch (flavor) {
        case Flavor::NullCube:
          out.push_back(assemble(f, d, k.d, {}, flavor));
          break;
        case Flavor::Idempotent:
          if (k.d[0].is_one()) out.push_back(assemble(f, d, k.d, unit_vector(f, m, 0), flavor));
          break;
        case Flavor::IsotropicNonAnn:
          if (auto iso = find_isotropic(k, budget); iso.exists && iso.vector)
            out.push_back(assemble(f, d, k.d, *iso.vector, flavor));
          break;
      }
    }
  }
  return out;
}

std::string count_label(Flavor flavor, std::optional<std::size_t> dim_ann) {
  std::string s = "flavour " + std::to_string(flavor_number(flavor));
  if (dim_ann) s += ", dimAnn " + std::to_string(*dim_ann);
  return s;
}

Matrix matrix_from_json(const Field& f, const json& rows) {
  std::vector<Vector> rv;
  for (const auto& row : rows) {
    Vector v;
    for (const auto& cell : row) v.push_back(parse_scalar(cell.get<std::string>(), f));
    rv.push_back(std::move(v));
  }
  return Matrix::from_rows(f, rv);
}

}  // namespace

// ---- class table ------------------------------------------------------------

std::size_t ClassTable::count(Flavor flavor, std::optional<std::size_t> dim_ann) const {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [&](const ClassEntry& e) {
    return e.invariants.flavor == flavor && (!dim_ann || e.invariants.dim_ann == *dim_ann);
  }));
}

std::optional<std::size_t> ClassTable::locate(const EvolutionAlgebra& a, const Budget& budget) const {
  const auto inv = invariants(a, budget);
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (entries[i].invariants == inv) return i;
  return std::nullopt;
}

ClassTable enumerate_classes(const Field& field, std::size_t n, const Budget& budget) {
  if (n == 0) throw PreconditionError("dimension must be at least 1");
  ClassTable table{field, n, {}};
  std::vector<NormalForm> forms;
  for (Flavor flavor : {Flavor::NullCube, Flavor::IsotropicNonAnn, Flavor::Idempotent}) {
    for (const auto& alg : candidates(field, n, flavor, budget)) {
      NormalForm nf = normalize(alg, budget);
      const bool seen = std::any_of(forms.begin(), forms.end(),
                                    [&](const NormalForm& g) { return g.invariants == nf.invariants; });
      if (seen) continue;
      if (!(normalize(nf.canonical, budget).canonical == nf.canonical))
        throw std::logic_error("canonical form is not a fixed point: " + nf.canonical.structure().to_string());
      table.entries.push_back({nf.invariants, nf.canonical});
      forms.push_back(std::move(nf));
    }
  }
  for (std::size_t i = 0; i < forms.size(); ++i)
    for (std::size_t j = i + 1; j < forms.size(); ++j)
      if (is_isomorphic(forms[i], forms[j]).isomorphic) throw std::logic_error("class table entries are isomorphic");
  return table;
}

// ---- brute force ------------------------------------------------------------

std::optional<Matrix> brute_force_witness(const EvolutionAlgebra& a, const EvolutionAlgebra& b,
                                          const Budget& budget) {
  const Field& f = a.field();
  if (!(f == b.field())) throw FieldMismatch();
  if (f.is_rational()) throw UnsupportedField("brute force needs a finite field, got " + f.name());
  const std::size_t n = a.dim();
  if (b.dim() != n) return std::nullopt;
  if (saturating_pow(f.order(), n * n) > budget.matrix_search)
    throw BudgetExceeded("brute force over GL(" + std::to_string(n) + ", " + f.name() + ") exceeds the search budget");

  // Arithmetic on element codes through tables built from the field itself.
  const auto elements = enumerate_elements(f, budget);
  const std::size_t q = elements.size();
  std::vector<std::uint32_t> add_t(q * q), mul_t(q * q);
  for (std::size_t x = 0; x < q; ++x)
    for (std::size_t y = 0; y < q; ++y) {
      add_t[x * q + y] = (elements[x] + elements[y]).code();
      mul_t[x * q + y] = (elements[x] * elements[y]).code();
    }
  using Codes = std::vector<std::uint32_t>;
  auto codes_of = [](const Vector& v) {
    Codes c;
    for (const auto& x : v) c.push_back(x.code());
    return c;
  };
  std::vector<Codes> ca, cb;
  for (std::size_t i = 0; i < n; ++i) {
    ca.push_back(codes_of(a.structure().row(i)));
    cb.push_back(codes_of(b.structure().row(i)));
  }
  auto product_b = [&](const Codes& x, const Codes& y) {
    Codes out(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
      const auto w = mul_t[x[k] * q + y[k]];
      if (w == 0) continue;
      for (std::size_t j = 0; j < n; ++j) out[j] = add_t[out[j] * q + mul_t[w * q + cb[k][j]]];
    }
    return out;
  };
  auto is_zero_codes = [](const Codes& x) {
    return std::all_of(x.begin(), x.end(), [](std::uint32_t c) { return c == 0; });
  };

  std::vector<Vector> vectors;
  std::vector<Codes> vc;
  for (auto& v : all_vectors(f, n, budget)) {
    if (is_zero(v)) continue;
    vc.push_back(codes_of(v));
    vectors.push_back(std::move(v));
  }
  const std::size_t count = vectors.size();
  std::vector<Codes> squares;
  for (const auto& v : vc) squares.push_back(product_b(v, v));
  std::vector<std::uint8_t> orthogonal(count * count);
  for (std::size_t x = 0; x < count; ++x)
    for (std::size_t y = x; y < count; ++y)
      orthogonal[x * count + y] = orthogonal[y * count + x] = is_zero_codes(product_b(vc[x], vc[y])) ? 1 : 0;

  // Column k of F is needed by the square condition of row i when C_A(i,k) ≠ 0.
  std::size_t last_needed = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (ca[i][k] != 0) last_needed = std::max(last_needed, k);

  std::vector<std::size_t> chosen(n);
  auto square_ok = [&](std::size_t i) {
    Codes rhs(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
      const auto c = ca[i][k];
      if (c == 0) continue;
      const Codes& col = vc[chosen[k]];
      for (std::size_t j = 0; j < n; ++j) rhs[j] = add_t[rhs[j] * q + mul_t[c * q + col[j]]];
    }
    return squares[chosen[i]] == rhs;
  };

  std::optional<Matrix> found;
  auto extend = [&](auto&& self, std::size_t j) -> bool {
    if (j == n) {
      std::vector<Vector> cols;
      for (auto c : chosen) cols.push_back(vectors[c]);
      Matrix m = Matrix::from_columns(f, n, cols);
      if (m.determinant().is_zero()) return false;
      found = std::move(m);
      return true;
    }
    const bool zero_row = is_zero_codes(ca[j]);
    for (std::size_t c = 0; c < count; ++c) {
      if (zero_row && !is_zero_codes(squares[c])) continue;
      chosen[j] = c;
      bool ok = true;
      for (std::size_t i = 0; i < j && ok; ++i) ok = orthogonal[chosen[i] * count + c] != 0;
      if (ok && j == last_needed)
        for (std::size_t i = 0; i <= j && ok; ++i) ok = square_ok(i);
      if (ok && j > last_needed) ok = square_ok(j);
      if (ok && self(self, j + 1)) return true;
    }
    return false;
  };
  extend(extend, 0);
  return found;
}

bool brute_force_iso(const EvolutionAlgebra& a, const EvolutionAlgebra& b, const Budget& budget) {
  return brute_force_witness(a, b, budget).has_value();
}

std::vector<EvolutionAlgebra> all_algebras(const Field& field, std::size_t n, const Budget& budget) {
  std::vector<EvolutionAlgebra> out;
  const auto vectors = all_vectors(field, n, budget);
  for (const auto& a : vectors) {
    const auto lead = std::find_if(a.begin(), a.end(), [](const Scalar& x) { return !x.is_zero(); });
    if (lead == a.end() || !lead->is_one()) continue;
    for (const auto& lam : vectors) {
      if (is_zero(lam)) continue;
      Matrix c(field, n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) c(i, j) = lam[i] * a[j];
      out.push_back(EvolutionAlgebra::validate(field, n, c));
    }
  }
  return out;
}

// ---- verification against the worked examples --------------------------------

std::vector<std::string> paper_cases() {
  std::vector<std::string> out;
  for (const auto& [id, text] : detail::paper_documents()) out.push_back(id);
  return out;
}

VerificationReport verify_paper(const std::string& case_id, const Budget& budget) {
  const auto& docs = detail::paper_documents();
  auto it = std::find_if(docs.begin(), docs.end(), [&](const auto& d) { return d.first == case_id; });
  if (it == docs.end()) throw PreconditionError("unknown case '" + case_id + "'");
  const json doc = json::parse(it->second);
  const Field field = parse_field_descriptor(doc.at("field").dump());
  const std::size_t n = doc.at("dim").get<std::size_t>();

  VerificationReport report{case_id, enumerate_classes(field, n, budget), {}, {}, {}, {}, false};
  const ClassTable& table = report.table;
  std::vector<NormalForm> entry_forms;
  for (const auto& e : table.entries) entry_forms.push_back(normalize(e.algebra, budget));

  for (const auto& c : doc.at("counts")) {
    const Flavor flavor = flavor_from_number(c.at("flavor").get<int>());
    std::optional<std::size_t> d;
    if (c.contains("dim_ann")) d = c.at("dim_ann").get<std::size_t>();
    report.counts.push_back({count_label(flavor, d), flavor, d, c.at("count").get<std::size_t>(), table.count(flavor, d)});
  }

  std::vector<NormalForm> rep_forms;
  for (const auto& r : doc.at("representatives")) {
    const EvolutionAlgebra alg = EvolutionAlgebra::validate(field, n, matrix_from_json(field, r.at("structure")));
    NormalForm nf = normalize(alg, budget);
    RepresentativeMatch m{r.at("label").get<std::string>(), alg, flavor_from_number(r.at("flavor").get<int>()),
                          nf.invariants.flavor, {}, {}};
    for (std::size_t i = 0; i < entry_forms.size(); ++i)
      if (is_isomorphic(nf, entry_forms[i]).isomorphic) m.matches.push_back(i);
    report.representatives.push_back(std::move(m));
    rep_forms.push_back(std::move(nf));
  }

  // Listed representatives that fall into one class, with a checked witness.
  for (std::size_t i = 0; i < rep_forms.size(); ++i) {
    for (std::size_t j = i + 1; j < rep_forms.size(); ++j) {
      const auto res = is_isomorphic(rep_forms[i], rep_forms[j]);
      if (!res.isomorphic) continue;
      auto& ri = report.representatives[i];
      auto& rj = report.representatives[j];
      ri.same_class_as.push_back(rj.label);
      rj.same_class_as.push_back(ri.label);
      std::ostringstream os;
      os << "listed as distinct but isomorphic: " << ri.label << " and " << rj.label;
      if (res.witness) {
        os << ", F = " << res.witness->to_string() << ", check_morphism "
           << (check_morphism(*res.witness, ri.algebra, rj.algebra) ? "ok" : "FAILED");
      } else {
        os << " (decided by invariants, no rational witness)";
      }
      report.notes.push_back(os.str());
    }
  }
  for (const auto& r : report.representatives)
    if (r.listed_flavor != r.actual_flavor)
      report.notes.push_back(r.label + " is listed under flavour " + std::to_string(flavor_number(r.listed_flavor)) +
                             " but has flavour " + std::to_string(flavor_number(r.actual_flavor)) + " (" +
                             to_string(r.actual_flavor) + ")");

  if (doc.contains("orthogonal_group_2")) {
    const DiagonalForm id(field, Vector(2, field.one()));
    std::set<std::string> expected, computed;
    for (const auto& m : doc.at("orthogonal_group_2")) expected.insert(matrix_from_json(field, m).to_string());
    for (const auto& g : orthogonal_group(id, budget)) computed.insert(g.map.to_string());
    std::string detail;
    for (const auto& s : computed) detail += (detail.empty() ? "" : " ") + s;
    report.extras.push_back({"orthogonal group of the identity form in dimension 2", expected == computed, detail});

    std::set<std::vector<std::string>> exp_orbits, got_orbits;
    for (const auto& orbit : doc.at("isotropic_orbits_2")) {
      std::vector<std::string> members;
      for (const auto& v : orbit) {
        Vector vec;
        for (const auto& x : v) vec.push_back(parse_scalar(x.get<std::string>(), field));
        members.push_back(to_string(vec));
      }
      std::sort(members.begin(), members.end());
      exp_orbits.insert(members);
    }
    std::string orbit_detail;
    for (const auto& orbit : isotropic_orbits(id, budget)) {
      std::vector<std::string> members;
      for (const auto& v : orbit.members) members.push_back(to_string(v));
      orbit_detail += (orbit_detail.empty() ? "{" : " {");
      for (std::size_t k = 0; k < members.size(); ++k) orbit_detail += (k ? ", " : "") + members[k];
      orbit_detail += "}";
      std::sort(members.begin(), members.end());
      got_orbits.insert(members);
    }
    report.extras.push_back({"isotropic orbits of the identity form in dimension 2", exp_orbits == got_orbits,
                             orbit_detail});
  }

  if (doc.contains("signature_table")) {
    std::multiset<std::pair<std::size_t, std::size_t>> expected, computed;
    for (const auto& row : doc.at("signature_table")) expected.insert({row[0].get<std::size_t>(), row[1].get<std::size_t>()});
    std::string detail;
    for (const auto& e : table.entries) {
      if (e.invariants.flavor != Flavor::Idempotent) continue;
      computed.insert({e.invariants.w_part.positive, e.invariants.w_part.negative});
      detail += (detail.empty() ? "" : " ") + std::string("(") + std::to_string(e.invariants.w_part.positive) + "," +
                std::to_string(e.invariants.w_part.negative) + ")";
    }
    report.extras.push_back({"flavour-3 signature table", expected == computed, detail});
  }

  if (case_id == "c-dim4") {
    std::multiset<std::size_t> ranks;
    std::string detail;
    for (const auto& e : table.entries) {
      if (e.invariants.flavor != Flavor::Idempotent) continue;
      ranks.insert(e.invariants.w_part.rank);
      detail += (detail.empty() ? "rank " : ", ") + std::to_string(e.invariants.w_part.rank);
    }
    report.extras.push_back({"flavour-3 ranks 1 to 4", ranks == std::multiset<std::size_t>{1, 2, 3, 4}, detail});
  }

  if (doc.contains("notes"))
    for (const auto& note : doc.at("notes")) report.notes.push_back(note.get<std::string>());

  report.pass = std::all_of(report.counts.begin(), report.counts.end(), [](const auto& c) { return c.ok(); }) &&
                std::all_of(report.representatives.begin(), report.representatives.end(),
                            [](const auto& r) { return r.ok(); }) &&
                std::all_of(report.extras.begin(), report.extras.end(), [](const auto& e) { return e.ok; });
  return report;
}

}  // namespace evo1d
