// Acceptance suite. Prints one PASS/FAIL line per criterion; with a numeric
// argument runs only that criterion. Exit status 0 iff every criterion run
// passed. All limits are pinned here.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "evo1d/atlas.hpp"
#include "evo1d/forms.hpp"
#include "support.hpp"

using namespace evo1d;
using support::vec;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
};

struct Criterion {
  int id;
  std::string title;
  double seconds;  // runtime limit
  std::function<void(Outcome&)> body;
};

void add_representatives(Outcome& o, const VerificationReport& report) {
  for (const auto& r : report.representatives) {
    std::string msg = r.label + " matches " + std::to_string(r.matches.size()) + " class(es)";
    if (!r.same_class_as.empty()) {
      msg += ", same class as";
      for (const auto& s : r.same_class_as) msg += " [" + s + "]";
    }
    o.require(r.ok(), msg);
  }
  for (const auto& n : report.notes) o.details.push_back("     note: " + n);
}

// 1. F9, n = 3
void criterion_f9(Outcome& o) {
  const auto f9 = Field::finite(3, 2);
  const auto t = enumerate_classes(f9, 3);
  o.require(t.count(Flavor::Idempotent) == 6, "flavour 3 count " + std::to_string(t.count(Flavor::Idempotent)) + " (want 6)");
  o.require(t.count(Flavor::NullCube) == 4, "flavour 1 count " + std::to_string(t.count(Flavor::NullCube)) + " (want 4)");
  o.require(t.count(Flavor::IsotropicNonAnn) == 3,
            "flavour 2 count " + std::to_string(t.count(Flavor::IsotropicNonAnn)) + " (want 3)");
  const auto report = verify_paper("f9-dim3");
  o.require(report.representatives.size() == 13, "13 listed products");
  add_representatives(o, report);
}

// 2. F4
void criterion_f4(Outcome& o) {
  const auto f4 = Field::finite(2, 2);
  const DiagonalForm id2(f4, vec(f4, {"1", "1"}));
  const auto group = orthogonal_group(id2);
  std::set<std::string> got;
  for (const auto& g : group) got.insert(g.map.to_string());
  std::set<std::string> want;
  for (const auto& rows : std::vector<std::vector<std::vector<std::string>>>{
           {{"1", "0"}, {"0", "1"}}, {{"0", "1"}, {"1", "0"}}, {{"a", "b"}, {"b", "a"}}, {{"b", "a"}, {"a", "b"}}})
    want.insert(Matrix::from_rows(f4, {vec(f4, rows[0]), vec(f4, rows[1])}).to_string());
  o.require(got == want, "O(I_2) is exactly the 4 listed matrices (" + std::to_string(group.size()) + " found)");

  const auto orbits = isotropic_orbits(id2);
  const std::vector<std::vector<Vector>> want_orbits{
      {vec(f4, {"1", "1"})}, {vec(f4, {"a", "a"})}, {vec(f4, {"b", "b"})}};
  std::vector<std::vector<Vector>> got_orbits;
  for (const auto& orb : orbits) got_orbits.push_back(orb.members);
  o.require(got_orbits == want_orbits, "isotropic orbits {(1,1)}, {(α,α)}, {(β,β)}");

  // n = 3 orbit machinery: the full 4^9 search for O(I_3)
  const DiagonalForm id3(f4, vec(f4, {"1", "1", "1"}));
  const auto g3 = orthogonal_group(id3);
  const oracle::Fq o4(2, 2);
  std::size_t naive = 0;
  oracle::for_each_matrix(o4, 3, [&](const oracle::Table& m) {
    // MᵀM = I
    bool ok = true;
    for (std::size_t i = 0; i < 3 && ok; ++i)
      for (std::size_t j = 0; j < 3 && ok; ++j) {
        unsigned s = 0;
        for (std::size_t k = 0; k < 3; ++k) s = o4.add(s, o4.mul(m[k][i], m[k][j]));
        ok = s == (i == j ? 1u : 0u);
      }
    naive += ok;
    return false;
  });
  o.require(g3.size() == naive, "O(I_3): " + std::to_string(g3.size()) + " isometries, naive search " +
                                    std::to_string(naive));

  const auto t = enumerate_classes(f4, 3);
  std::vector<std::size_t> ranks;
  for (const auto& e : t.entries)
    if (e.invariants.flavor == Flavor::Idempotent) ranks.push_back(e.invariants.w_part.rank);
  std::string rank_text;
  for (auto r : ranks) rank_text += (rank_text.empty() ? "" : ", ") + std::to_string(r);
  o.require(t.count(Flavor::Idempotent) == 3,
            "flavour 3 count " + std::to_string(t.count(Flavor::Idempotent)) + " (want 3: Id, diag(1,1,0), diag(1,0,0)); W ranks " + rank_text);
  o.require(t.count(Flavor::IsotropicNonAnn, 1) == 3,
            "flavour 2 with dimAnn 1 count " + std::to_string(t.count(Flavor::IsotropicNonAnn, 1)) + " (want 3)");
  add_representatives(o, verify_paper("f4-dim3"));
}

// 3. real closure, n = 3
void criterion_real(Outcome& o) {
  const auto r = Field::rationals(RationalMode::Real);
  const auto t = enumerate_classes(r, 3);
  std::multiset<std::tuple<std::size_t, std::size_t, std::size_t>> got;
  for (const auto& e : t.entries)
    if (e.invariants.flavor == Flavor::Idempotent)
      got.insert({e.invariants.w_part.rank, e.invariants.w_part.positive, e.invariants.w_part.negative});
  const std::multiset<std::tuple<std::size_t, std::size_t, std::size_t>> want{
      {1, 1, 0}, {2, 2, 0}, {2, 1, 1}, {3, 3, 0}, {3, 2, 1}, {3, 1, 2}};
  o.require(got == want, "flavour 3 (rank, signature) table: " + std::to_string(got.size()) + " rows");
  o.require(t.count(Flavor::NullCube) == 9, "flavour 1 count " + std::to_string(t.count(Flavor::NullCube)) + " (want 9)");
  add_representatives(o, verify_paper("r-dim3"));
}

// 4. quadratic closure, n = 4
void criterion_qc(Outcome& o) {
  const auto c = Field::rationals(RationalMode::QuadraticClosure);
  const auto t = enumerate_classes(c, 4);
  std::set<std::size_t> ranks;
  for (const auto& e : t.entries)
    if (e.invariants.flavor == Flavor::Idempotent) ranks.insert(e.invariants.w_part.rank);
  o.require(t.count(Flavor::Idempotent) == 4 && ranks == std::set<std::size_t>{1, 2, 3, 4},
            "flavour 3 count " + std::to_string(t.count(Flavor::Idempotent)) + " with ranks 1-4");
  o.require(t.count(Flavor::NullCube) == 3, "flavour 1 count " + std::to_string(t.count(Flavor::NullCube)) + " (want 3)");
  const auto report = verify_paper("c-dim4");
  add_representatives(o, report);
  o.require(report.pass, "report passes");
}

// 5. oracle agreement through the command line
void criterion_oracle(Outcome& o) {
  std::ostringstream out, err;
  const int code =
      evo1d::cli::run({"oracle-check", "--field", "F3", "--dim", "3", "--trials", "200", "--seed", "1"}, out, err);
  std::string line = out.str();
  if (auto nl = line.find('\n'); nl != std::string::npos) line = line.substr(0, nl);
  o.require(code == 0 && line.find(", 0 disagree") != std::string::npos, line + err.str());
}

// 6. witness soundness
void criterion_witness(Outcome& o) {
  for (auto [p, d] : {std::pair{3u, 1u}, {2u, 2u}, {3u, 2u}}) {
    const auto f = Field::finite(p, d);
    for (std::size_t n = 1; n <= 3; ++n) {
      const auto table = enumerate_classes(f, n);
      const auto algs = all_algebras(f, n);
      std::size_t pairs = 0, sound = 0;
      std::map<std::size_t, std::pair<EvolutionAlgebra, NormalForm>> first;  // class index -> first member seen
      for (const auto& a : algs) {
        auto na = normalize(a);
        std::size_t k = table.entries.size();
        for (std::size_t i = 0; i < table.entries.size(); ++i)
          if (table.entries[i].invariants == na.invariants) k = i;
        if (k == table.entries.size()) {
          o.require(false, f.name() + " n=" + std::to_string(n) + ": algebra outside the class table");
          continue;
        }
        // every member against the class representative and the first member
        const auto rep = normalize(table.entries[k].algebra);
        auto check = [&](const NormalForm& x, const NormalForm& y, const EvolutionAlgebra& xa, const EvolutionAlgebra& ya) {
          ++pairs;
          const auto res = is_isomorphic(x, y);
          if (res.isomorphic && res.witness && res.witness->rank() == n && check_morphism(*res.witness, xa, ya)) ++sound;
        };
        check(na, rep, a, table.entries[k].algebra);
        auto [it, fresh] = first.try_emplace(k, a, na);
        if (!fresh) check(it->second.second, na, it->second.first, a);
      }
      o.require(pairs == sound, f.name() + " n=" + std::to_string(n) + ": " + std::to_string(sound) + "/" +
                                    std::to_string(pairs) + " same-class pairs with a valid invertible witness");
    }
  }
}

// 7. property suites
void criterion_properties(Outcome& o) {
  std::mt19937_64 rng(20261018);
  const auto q = Field::rationals(RationalMode::Real);
  auto random_rational = [&](int range) {
    std::uniform_int_distribution<int> num(-range, range), den(1, range);
    return Scalar(q, mpq_class(num(rng), den(rng)));
  };
  auto random_symmetric = [&](std::size_t n) {
    Matrix g(q, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        // sparse zeros exercise the off-diagonal pivot path
        const auto x = rng() % 4 == 0 ? q.zero() : random_rational(9);
        g(i, j) = x;
        g(j, i) = x;
      }
    return g;
  };

  std::size_t ok = 0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 1 + rng() % 6;
    const auto g = random_symmetric(n);
    const auto d = diagonalize(GramForm(g));
    ok += congruence(g, d.transform) == d.form.gram() && d.transform.rank() == n;
  }
  o.require(ok == 500, "diagonalize: PᵀGP = D on " + std::to_string(ok) + "/500 random symmetric matrices");

  ok = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 6;
    const auto g = random_symmetric(n);
    Matrix p(q, n, n);
    do {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) p(i, j) = random_rational(5);
    } while (p.rank() != n);
    const auto a = form_invariants(diagonalize(GramForm(g)).form);
    const auto b = form_invariants(diagonalize(GramForm(congruence(g, p))).form);
    ok += a == b;
  }
  o.require(ok == 200, "signature invariant under " + std::to_string(ok) + "/200 random congruences");

  for (unsigned p : {3u, 5u}) {
    const auto f = Field::finite(p, 1);
    std::size_t forms = 0, pairs = 0, pairs_ok = 0, transports = 0, transports_ok = 0;
    for (std::size_t n = 1; n <= 3; ++n)
      for (const auto& d : all_vectors(f, n)) {
        const DiagonalForm form(f, d);
        if (!form.nondegenerate()) continue;
        ++forms;
        const auto standard = standard_form(f, form_invariants(form));
        std::vector<Vector> iso, iso_std;
        for (const auto& v : all_vectors(f, n)) {
          if (is_zero(v)) continue;
          if (form.value(v).is_zero()) iso.push_back(v);
          if (standard.value(v).is_zero()) iso_std.push_back(v);
        }
        for (const auto& w : iso) {
          ++pairs;
          const auto w2 = hyperbolic_pair(form, w);
          pairs_ok += form.pair(w, w2).is_one() && form.value(w2).is_zero();
        }
        auto transport = [&](const DiagonalForm& d2, const Vector& w1, const Vector& w2) {
          ++transports;
          const auto r = transporter(form, w1, d2, w2);
          transports_ok += r.exists && r.isometry && congruence(d2.gram(), r.isometry->map) == form.gram() &&
                           r.isometry->map * w1 == w2;
        };
        for (const auto& w1 : iso) {
          for (const auto& w2 : iso) transport(form, w1, w2);
          for (const auto& w2 : iso_std) transport(standard, w1, w2);
        }
      }
    o.require(pairs == pairs_ok, "F" + std::to_string(p) + ": hyperbolic pairs " + std::to_string(pairs_ok) + "/" +
                                     std::to_string(pairs) + " over " + std::to_string(forms) + " forms");
    o.require(transports == transports_ok && transports > 0,
              "F" + std::to_string(p) + ": transporter " + std::to_string(transports_ok) + "/" +
                  std::to_string(transports) + " isotropic pairs");
  }
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "F9 dim-3 atlas", 5.0, criterion_f9},
      {2, "F4 isometries, orbits and classes", 10.0, criterion_f4},
      {3, "real-closure dim-3 tables", 1.0, criterion_real},
      {4, "quadratic-closure dim-4 tables", 1.0, criterion_qc},
      {5, "oracle agreement F3 dim 3, 200 trials", 60.0, criterion_oracle},
      {6, "witness soundness over F3, F4, F9", 30.0, criterion_witness},
      {7, "property suites", 60.0, criterion_properties},
  };
  std::set<int> selected;
  bool verbose = false;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "-v" || a == "--verbose") verbose = true;
    else selected.insert(std::stoi(a));
  }
  bool all_pass = true;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream timing;
    timing.precision(2);
    timing << std::fixed << secs << " s (limit " << c.seconds << " s)";
    o.require(secs < c.seconds, "runtime " + timing.str());
    all_pass = all_pass && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.title << "  [" << timing.str()
              << "]\n";
    if (verbose || !o.pass)
      for (const auto& d : o.details) std::cout << "      " << d << "\n";
  }
  return all_pass ? 0 : 1;
}
