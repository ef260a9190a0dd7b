#include "cli.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "evo1d/atlas.hpp"
#include "evo1d/document.hpp"
#include "evo1d/error.hpp"

namespace evo1d::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

json vector_json(const Vector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.to_string());
  return out;
}

json matrix_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vector_json(m.row(r)));
  return out;
}

ordered_json forms_json(const FormInvariants& inv) {
  ordered_json j;
  j["dim"] = inv.n;
  j["rank"] = inv.rank;
  switch (inv.detail) {
    case FormInvariants::Detail::RankOnly: j["detail"] = "rank-only"; break;
    case FormInvariants::Detail::Signature:
      j["detail"] = "signature";
      j["signature"] = {inv.positive, inv.negative};
      break;
    case FormInvariants::Detail::Discriminant:
      j["detail"] = "discriminant";
      j["discriminant"] = to_string(inv.discriminant);
      break;
  }
  return j;
}

ordered_json bundle_json(const InvariantBundle& b) {
  ordered_json j;
  j["n"] = b.n;
  j["dim_ann"] = b.dim_ann;
  j["flavor"] = flavor_number(b.flavor);
  j["flavor_name"] = to_string(b.flavor);
  j["w_part"] = forms_json(b.w_part);
  if (b.orbit_label) j["orbit_label"] = vector_json(*b.orbit_label);
  return j;
}

std::string index_list(const std::vector<std::size_t>& idx) {
  std::string s = "{";
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? ", " : "") + std::to_string(idx[i] + 1);
  return s + "}";
}

// Plain-text table with left-aligned columns.
void print_table(std::ostream& out, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  auto visible = [](const std::string& s) {
    // count code points, not bytes
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
  };
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = visible(header[c]);
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], visible(r[c]));
  auto line = [&](const std::vector<std::string>& r) {
    std::string s;
    for (std::size_t c = 0; c < r.size(); ++c) {
      s += r[c];
      if (c + 1 < r.size()) s += std::string(width[c] - visible(r[c]) + 2, ' ');
    }
    out << s << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
}

std::string w_text(const InvariantBundle& b) {
  std::string s = b.w_part.detail_string();
  if (b.w_part.detail != FormInvariants::Detail::RankOnly) s = "rank " + std::to_string(b.w_part.rank) + ", " + s;
  if (b.orbit_label) s += ", orbit " + to_string(*b.orbit_label);
  return s;
}

// ---- subcommands ------------------------------------------------------------

int cmd_analyze(const std::string& path, bool as_json, const Budget& budget, std::ostream& out) {
  const auto doc = load_document(path);
  const auto& a = doc.algebra;
  const auto p = presentation(a);
  const auto ann = annihilator(p);
  const auto flavor = classify_flavor(p);
  const auto nf = normalize(a, budget);
  if (as_json) {
    ordered_json j;
    if (doc.label) j["label"] = *doc.label;
    j["field"] = a.field().name();
    j["dim"] = a.dim();
    j["generator"] = vector_json(p.a);
    j["weights"] = vector_json(p.lambda);
    std::vector<std::size_t> one_based;
    for (auto i : ann) one_based.push_back(i + 1);
    j["annihilator"] = one_based;
    j["dim_ann"] = ann.size();
    j["flavor"] = flavor_number(flavor);
    if (flavor == Flavor::Idempotent) j["idempotent"] = vector_json(idempotent(p));
    j["invariants"] = bundle_json(nf.invariants);
    out << j.dump(2) << "\n";
    return kOk;
  }
  if (doc.label) out << "label:        " << *doc.label << "\n";
  out << "field:        " << a.field().name() << "\n";
  out << "dim:          " << a.dim() << "\n";
  out << "generator a:  " << to_string(p.a) << "\n";
  out << "weights λ:    " << to_string(p.lambda) << "\n";
  out << "annihilator:  " << index_list(ann) << " (dimAnn " << ann.size() << ")\n";
  out << "flavour:      " << flavor_number(flavor) << " (" << to_string(flavor) << ")\n";
  if (flavor == Flavor::Idempotent) out << "idempotent:   " << to_string(idempotent(p)) << "\n";
  out << "invariants:   " << nf.invariants.to_string() << "\n";
  return kOk;
}

int cmd_iso(const std::string& p1, const std::string& p2, bool witness, bool as_json, const Budget& budget,
            std::ostream& out) {
  const auto a = load_document(p1).algebra;
  const auto b = load_document(p2).algebra;
  const auto res = is_isomorphic(a, b, budget);
  std::optional<bool> checked;
  if (res.witness) checked = check_morphism(*res.witness, a, b);
  if (as_json) {
    ordered_json j;
    j["isomorphic"] = res.isomorphic;
    j["reason"] = res.reason;
    if (witness && res.isomorphic) {
      j["witness"] = res.witness ? json(matrix_json(*res.witness)) : json(nullptr);
      if (checked) j["check_morphism"] = *checked;
    }
    out << j.dump(2) << "\n";
    return kOk;
  }
  if (!res.isomorphic) {
    out << "NOT isomorphic: " << res.reason << "\n";
    return kOk;
  }
  out << "isomorphic: " << res.reason << "\n";
  if (witness) {
    if (res.witness) {
      out << "witness F = " << res.witness->to_string() << "\n";
      out << "check_morphism: " << (*checked ? "true" : "false") << "\n";
    } else {
      out << "witness: none (no rational witness; decided by invariants)\n";
    }
  }
  return kOk;
}

int cmd_canon(const std::string& path, const Budget& budget, std::ostream& out) {
  const auto doc = load_document(path);
  out << write_document(canonical_form(doc.algebra, budget), doc.label);
  return kOk;
}

int cmd_enumerate(const std::string& field_spec, std::size_t n, int flavor_filter, bool as_json, const Budget& budget,
                  std::ostream& out) {
  const Field f = Field::parse(field_spec);
  std::optional<Flavor> only;
  if (flavor_filter != 0) only = flavor_from_number(flavor_filter);
  const auto table = enumerate_classes(f, n, budget);
  if (as_json) {
    ordered_json j;
    j["field"] = f.name();
    j["dim"] = n;
    j["counts"] = {{"1", table.count(Flavor::NullCube)},
                   {"2", table.count(Flavor::IsotropicNonAnn)},
                   {"3", table.count(Flavor::Idempotent)}};
    j["classes"] = json::array();
    for (std::size_t i = 0; i < table.entries.size(); ++i) {
      const auto& e = table.entries[i];
      if (only && e.invariants.flavor != *only) continue;
      const auto p = presentation(e.algebra);
      ordered_json c;
      c["index"] = i + 1;
      c["invariants"] = bundle_json(e.invariants);
      c["weights"] = vector_json(p.lambda);
      c["generator"] = vector_json(p.a);
      c["structure"] = matrix_json(e.algebra.structure());
      j["classes"].push_back(c);
    }
    out << j.dump(2) << "\n";
    return kOk;
  }
  out << f.name() << ", n = " << n << ": " << table.entries.size() << " classes (flavour 1: "
      << table.count(Flavor::NullCube) << ", flavour 2: " << table.count(Flavor::IsotropicNonAnn)
      << ", flavour 3: " << table.count(Flavor::Idempotent) << ")\n";
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    const auto& e = table.entries[i];
    if (only && e.invariants.flavor != *only) continue;
    const auto p = presentation(e.algebra);
    rows.push_back({std::to_string(i + 1), std::to_string(flavor_number(e.invariants.flavor)),
                    std::to_string(e.invariants.dim_ann), w_text(e.invariants), to_string(p.lambda), to_string(p.a)});
  }
  print_table(out, {"#", "flavour", "dimAnn", "W", "weights λ", "generator a"}, rows);
  return kOk;
}

int cmd_verify(const std::string& case_id, bool as_json, const Budget& budget, std::ostream& out) {
  const auto report = verify_paper(case_id, budget);
  if (as_json) {
    ordered_json j;
    j["case"] = report.case_id;
    j["verdict"] = report.pass ? "pass" : "fail";
    j["counts"] = json::array();
    for (const auto& c : report.counts)
      j["counts"].push_back(ordered_json{{"what", c.what}, {"expected", c.expected}, {"computed", c.computed}});
    j["representatives"] = json::array();
    for (const auto& r : report.representatives) {
      std::vector<std::size_t> one_based;
      for (auto m : r.matches) one_based.push_back(m + 1);
      j["representatives"].push_back(ordered_json{{"label", r.label},
                                                  {"listed_flavor", flavor_number(r.listed_flavor)},
                                                  {"flavor", flavor_number(r.actual_flavor)},
                                                  {"matches", one_based},
                                                  {"same_class_as", r.same_class_as}});
    }
    j["checks"] = json::array();
    for (const auto& e : report.extras)
      j["checks"].push_back(ordered_json{{"what", e.what}, {"ok", e.ok}, {"detail", e.detail}});
    j["notes"] = report.notes;
    j["classes"] = json::array();
    for (const auto& e : report.table.entries) j["classes"].push_back(bundle_json(e.invariants));
    out << j.dump(2) << "\n";
    return report.pass ? kOk : kMismatch;
  }
  out << "case " << report.case_id << ": " << (report.pass ? "PASS" : "FAIL") << "\n\ncounts\n";
  std::vector<std::vector<std::string>> rows;
  for (const auto& c : report.counts)
    rows.push_back({c.what, std::to_string(c.expected), std::to_string(c.computed), c.ok() ? "ok" : "MISMATCH"});
  print_table(out, {"class", "expected", "computed", "status"}, rows);

  out << "\nrepresentatives\n";
  rows.clear();
  for (const auto& r : report.representatives) {
    std::string same;
    for (const auto& s : r.same_class_as) same += (same.empty() ? "" : "; ") + s;
    rows.push_back({r.label, std::to_string(flavor_number(r.listed_flavor)), std::to_string(flavor_number(r.actual_flavor)),
                    index_list(r.matches), r.ok() ? "ok" : "MISMATCH", same});
  }
  print_table(out, {"listed product", "listed", "flavour", "class", "status", "same class as"}, rows);

  if (!report.extras.empty()) {
    out << "\nchecks\n";
    for (const auto& e : report.extras)
      out << "  " << (e.ok ? "ok        " : "MISMATCH  ") << e.what << ": " << e.detail << "\n";
  }
  if (!report.notes.empty()) {
    out << "\nnotes\n";
    for (const auto& n : report.notes) out << "  - " << n << "\n";
  }
  out << "\nclasses\n";
  rows.clear();
  for (std::size_t i = 0; i < report.table.entries.size(); ++i) {
    const auto& e = report.table.entries[i];
    const auto p = presentation(e.algebra);
    rows.push_back({std::to_string(i + 1), std::to_string(flavor_number(e.invariants.flavor)),
                    std::to_string(e.invariants.dim_ann), w_text(e.invariants), to_string(p.lambda), to_string(p.a)});
  }
  print_table(out, {"#", "flavour", "dimAnn", "W", "weights λ", "generator a"}, rows);
  return report.pass ? kOk : kMismatch;
}

EvolutionAlgebra random_algebra(const Field& f, std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(f.order() - 1));
  auto random_nonzero = [&]() {
    Vector v;
    do {
      v.clear();
      for (std::size_t i = 0; i < n; ++i) v.push_back(f.element(pick(rng)));
    } while (is_zero(v));
    return v;
  };
  const Vector a = random_nonzero();
  const Vector lam = random_nonzero();
  Matrix c(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c(i, j) = lam[i] * a[j];
  return EvolutionAlgebra::validate(f, n, c);
}

int cmd_oracle(const std::string& field_spec, std::size_t n, std::size_t trials, std::uint64_t seed, bool as_json,
               const Budget& budget, std::ostream& out) {
  const Field f = Field::parse(field_spec);
  if (f.is_rational()) throw UnsupportedField("oracle-check needs a finite field");
  std::mt19937_64 rng(seed);
  std::size_t agree = 0, positives = 0;
  std::vector<std::string> failures;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto a = random_algebra(f, n, rng);
    const auto na = normalize(a, budget);
    auto b = random_algebra(f, n, rng);
    if (t % 2 == 1) {
      // conditioned: same dimAnn and flavour
      for (int tries = 0; tries < 10000; ++tries) {
        const auto inv = invariants(b, budget);
        if (inv.flavor == na.invariants.flavor && inv.dim_ann == na.invariants.dim_ann) break;
        b = random_algebra(f, n, rng);
      }
    }
    const auto res = is_isomorphic(na, normalize(b, budget));
    const bool oracle = brute_force_iso(a, b, budget);
    bool ok = res.isomorphic == oracle;
    if (ok && res.isomorphic) ok = res.witness && check_morphism(*res.witness, a, b);
    if (res.isomorphic) ++positives;
    if (ok) {
      ++agree;
    } else {
      failures.push_back("trial " + std::to_string(t + 1) + ": " + a.structure().to_string() + " vs " +
                         b.structure().to_string() + ": decision " + (res.isomorphic ? "true" : "false") +
                         ", oracle " + (oracle ? "true" : "false"));
    }
  }
  const bool pass = agree == trials;
  if (as_json) {
    ordered_json j;
    j["field"] = f.name();
    j["dim"] = n;
    j["trials"] = trials;
    j["seed"] = seed;
    j["agree"] = agree;
    j["disagree"] = trials - agree;
    j["isomorphic_pairs"] = positives;
    j["failures"] = failures;
    out << j.dump(2) << "\n";
  } else {
    out << "oracle-check " << f.name() << " n=" << n << " seed=" << seed << ": " << trials << " trials, " << agree
        << " agree, " << (trials - agree) << " disagree (" << positives << " isomorphic pairs)\n";
    for (const auto& s : failures) out << "  " << s << "\n";
  }
  return pass ? kOk : kMismatch;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"classify evolution algebras with one-dimensional square"};
  app.require_subcommand(1);
  bool as_json = false;
  std::uint64_t budget_value = 0;
  app.add_flag("--json", as_json, "machine-readable output");
  app.add_option("--budget", budget_value, "exhaustive search budget (matrix candidates)");

  std::string file1, file2, field_spec, case_id;
  bool witness = false;
  std::size_t dim = 0, trials = 0;
  std::uint64_t seed = 0;
  int flavor = 0;

  auto* analyze = app.add_subcommand("analyze", "presentation, flavour and invariants of an algebra file");
  analyze->add_option("file", file1)->required();
  auto* iso = app.add_subcommand("iso", "decide isomorphism of two algebra files");
  iso->add_option("file1", file1)->required();
  iso->add_option("file2", file2)->required();
  iso->add_flag("--witness", witness, "print and check an isomorphism");
  auto* canon = app.add_subcommand("canon", "print the canonical representative");
  canon->add_option("file", file1)->required();
  auto* enumerate = app.add_subcommand("enumerate", "list all isomorphism classes");
  enumerate->add_option("--field", field_spec)->required();
  enumerate->add_option("--dim", dim)->required()->check(CLI::PositiveNumber);
  enumerate->add_option("--flavor", flavor)->check(CLI::Range(1, 3));
  auto* verify = app.add_subcommand("verify-paper", "check the worked-example tables");
  verify->add_option("--case", case_id)->required()->check(CLI::IsMember(paper_cases()));
  auto* oracle = app.add_subcommand("oracle-check", "compare the decision with brute force on random pairs");
  oracle->add_option("--field", field_spec)->required();
  oracle->add_option("--dim", dim)->required()->check(CLI::PositiveNumber);
  oracle->add_option("--trials", trials)->required();
  oracle->add_option("--seed", seed)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsageError;
  }

  Budget budget;
  if (budget_value != 0) budget.matrix_search = budget_value;

  try {
    if (*analyze) return cmd_analyze(file1, as_json, budget, out);
    if (*iso) return cmd_iso(file1, file2, witness, as_json, budget, out);
    if (*canon) return cmd_canon(file1, budget, out);
    if (*enumerate) return cmd_enumerate(field_spec, dim, flavor, as_json, budget, out);
    if (*verify) return cmd_verify(case_id, as_json, budget, out);
    if (*oracle) return cmd_oracle(field_spec, dim, trials, seed, as_json, budget, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsageError;
  } catch (const RankError& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }
  return kUsageError;
}

}  // namespace evo1d::cli
