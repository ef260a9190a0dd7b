#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "evo1d/error.hpp"
#include "evo1d/forms.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace evo1d;
using support::vec;

namespace {

DiagonalForm form(const Field& f, const std::vector<std::string>& d) { return DiagonalForm(f, vec(f, d)); }

bool preserves(const Matrix& m, const DiagonalForm& from, const DiagonalForm& to) {
  return congruence(to.gram(), m) == from.gram();
}

}  // namespace

TEST_CASE("radical") {
  const auto q = Field::rationals(RationalMode::Real);
  const auto f9 = Field::finite(3, 2);
  CHECK(radical_indices(form(q, {"0", "1", "-1"})) == std::vector<std::size_t>{0});
  CHECK(radical_indices(form(f9, {"1", "1", "1"})).empty());
  CHECK(radical_indices(form(f9, {"0", "0", "1"})) == std::vector<std::size_t>{0, 1});
  CHECK(nondegenerate_indices(form(f9, {"0", "0", "1"})) == std::vector<std::size_t>{2});
}

TEST_CASE("diagonalize") {
  const auto q = Field::rationals(RationalMode::Real);
  const auto g = Matrix::from_rows(q, {vec(q, {"0", "1"}), vec(q, {"1", "0"})});
  const auto d = diagonalize(GramForm(g));
  CHECK(congruence(g, d.transform) == d.form.gram());
  CHECK(d.form.rank() == 2);
  CHECK(form_invariants(d.form).positive == 1);

  const auto diag = Matrix::diagonal(q, vec(q, {"3", "0", "-1/2"}));
  const auto dd = diagonalize(GramForm(diag));
  CHECK(dd.transform == Matrix::identity(q, 3));
  CHECK(dd.form.d == vec(q, {"3", "0", "-1/2"}));

  const auto z = diagonalize(GramForm(Matrix(q, 2, 2)));
  CHECK(z.form.d == vec(q, {"0", "0"}));

  const auto f4 = Field::finite(2, 2);
  const auto h = Matrix::from_rows(f4, {vec(f4, {"0", "1"}), vec(f4, {"1", "0"})});
  CHECK_THROWS(diagonalize(GramForm(h)));
}

TEST_CASE("form invariants") {
  const auto r = Field::rationals(RationalMode::Real);
  const auto inv = form_invariants(form(r, {"1", "1", "-1"}));
  CHECK(inv.rank == 3);
  CHECK(inv.detail == FormInvariants::Detail::Signature);
  CHECK(inv.positive == 2);
  CHECK(inv.negative == 1);

  const auto f9 = Field::finite(3, 2);
  const auto w = form_invariants(form(f9, {"1+i", "1", "1"}));
  CHECK(w.rank == 3);
  CHECK(w.discriminant == SquareClass::NonSquare);
  CHECK(form_invariants(form(f9, {"0", "0"})).rank == 0);

  CHECK(isometric(form(f9, {"1", "1"}), form(f9, {"1", "-1"})));
  CHECK_FALSE(isometric(form(r, {"1", "1"}), form(r, {"1", "-1"})));
  const auto f4 = Field::finite(2, 2);
  CHECK(isometric(form(f4, {"1", "1", "0"}), form(f4, {"1", "1", "0"})));
  CHECK(form_invariants(form(f4, {"a", "b", "0"})).detail == FormInvariants::Detail::RankOnly);
}

TEST_CASE("invariants are complete over F3: exhaustive isometry search") {
  const auto f = Field::finite(3, 1);
  const oracle::Fq o(3, 1);
  const auto diagonals = all_vectors(f, 2);
  for (const auto& d1 : diagonals)
    for (const auto& d2 : diagonals) {
      const DiagonalForm a(f, d1), b(f, d2);
      bool found = oracle::for_each_matrix(o, 2, [&](const oracle::Table& m) {
        if (o.det(m) == 0) return false;
        for (std::size_t i = 0; i < 2; ++i)
          for (std::size_t j = 0; j < 2; ++j) {
            unsigned s = 0;
            for (std::size_t k = 0; k < 2; ++k) s = o.add(s, o.mul(d2[k].code(), o.mul(m[k][i], m[k][j])));
            const unsigned want = i == j ? d1[i].code() : 0;
            if (s != want) return false;
          }
        return true;
      });
      CHECK(isometric(a, b) == found);
    }
}

TEST_CASE("standard form") {
  const auto f9 = Field::finite(3, 2);
  auto inv = form_invariants(form(f9, {"1+i", "1", "0"}));
  CHECK(standard_form(f9, inv).d == vec(f9, {"1", "1+i", "0"}));
  const auto r = Field::rationals(RationalMode::Real);
  inv = form_invariants(form(r, {"-2", "0", "5"}));
  CHECK(standard_form(r, inv).d == vec(r, {"1", "-1", "0"}));
}

TEST_CASE("represent_value") {
  const auto f9 = Field::finite(3, 2);
  const auto d = form(f9, {"1", "1"});
  const auto w = parse_scalar("1+i", f9);
  const auto v = represent_value(d, w);
  REQUIRE(v);
  CHECK(d.value(*v) == w);
  CHECK(is_zero(*represent_value(d, f9.zero())));
  const auto f3 = Field::finite(3, 1);
  CHECK_FALSE(represent_value(form(f3, {"1"}), f3.from_int(2)));
  CHECK_THROWS_AS(represent_value(form(Field::rationals(RationalMode::Real), {"1"}), Field::rationals(RationalMode::Real).one()),
                  UnsupportedField);
}

TEST_CASE("find_isotropic") {
  const auto f9 = Field::finite(3, 2);
  CHECK_FALSE(find_isotropic(form(f9, {"1+i", "1"})).exists);
  const auto f4 = Field::finite(2, 2);
  const auto s = find_isotropic(form(f4, {"1", "1"}));
  REQUIRE(s.vector);
  CHECK(*s.vector == vec(f4, {"1", "1"}));
  const auto r = Field::rationals(RationalMode::Real);
  const auto t = find_isotropic(form(r, {"1", "-1"}));
  REQUIRE(t.vector);
  CHECK(*t.vector == vec(r, {"1", "1"}));
  CHECK_FALSE(find_isotropic(form(r, {"1", "2", "0"})).exists);
  const auto u = find_isotropic(form(r, {"1", "-2"}));  // -2 is negative, ratio 2 is not a square
  CHECK(u.exists);
}

TEST_CASE("hyperbolic pair") {
  const auto q = Field::rationals(RationalMode::Real);
  const auto d = form(q, {"1", "-1"});
  const auto w2 = hyperbolic_pair(d, vec(q, {"1", "1"}));
  CHECK(w2 == vec(q, {"1/2", "-1/2"}));
  const auto d3 = form(q, {"1", "-1", "1"});
  const auto w = vec(q, {"1", "1", "0"});
  const auto w3 = hyperbolic_pair(d3, w);
  CHECK(d3.pair(w, w3) == q.one());
  CHECK(d3.value(w3).is_zero());
  CHECK_THROWS_AS(hyperbolic_pair(d3, vec(q, {"1", "0", "0"})), PreconditionError);
}

TEST_CASE("transporter") {
  const auto f3 = Field::finite(3, 1);
  const auto d = form(f3, {"1", "-1"});
  const auto w1 = vec(f3, {"1", "1"});
  const auto w2 = vec(f3, {"1", "2"});
  const auto t = transporter(d, w1, d, w2);
  REQUIRE(t.isometry);
  CHECK(preserves(t.isometry->map, d, d));
  CHECK(t.isometry->map * w1 == w2);
  const auto same = transporter(d, w1, d, w1);
  REQUIRE(same.isometry);
  CHECK(same.isometry->map * w1 == w1);

  const auto f4 = Field::finite(2, 2);
  const auto id = form(f4, {"1", "1"});
  CHECK_FALSE(transporter(id, vec(f4, {"1", "1"}), id, vec(f4, {"a", "a"})).exists);
}

TEST_CASE("orthogonal group") {
  const auto f4 = Field::finite(2, 2);
  const auto id = form(f4, {"1", "1"});
  const auto g = orthogonal_group(id);
  REQUIRE(g.size() == 4);
  for (const auto& m : g) {
    CHECK(preserves(m.map, id, id));
    CHECK(m.map * m.map == Matrix::identity(f4, 2));  // Klein four-group
  }
  const auto f3 = Field::finite(3, 1);
  const auto one = orthogonal_group(form(f3, {"1"}));
  REQUIRE(one.size() == 2);
  CHECK(one[0].map(0, 0) == f3.one());
  CHECK(one[1].map(0, 0) == f3.from_int(-1));
  CHECK(orthogonal_group(form(f3, {"1", "1"})).size() == 8);
  CHECK_THROWS_AS(orthogonal_group(form(Field::finite(3, 2), {"1", "1", "1"}), Budget{.matrix_search = 1000}),
                  BudgetExceeded);
}

TEST_CASE("orthogonal groups are closed and match a naive count") {
  for (auto [p, dg, entries] : {std::tuple{3u, 1u, std::vector<std::string>{"1", "2"}},
                                std::tuple{3u, 1u, std::vector<std::string>{"1", "1", "2"}},
                                std::tuple{5u, 1u, std::vector<std::string>{"1", "2"}},
                                std::tuple{2u, 2u, std::vector<std::string>{"1", "1", "1"}}}) {
    const auto f = Field::finite(p, dg);
    const auto d = form(f, entries);
    const auto g = orthogonal_group(d);
    const oracle::Fq o(p, dg);
    std::size_t naive = 0;
    oracle::for_each_matrix(o, d.dim(), [&](const oracle::Table& m) {
      bool ok = true;
      for (std::size_t i = 0; i < d.dim() && ok; ++i)
        for (std::size_t j = 0; j < d.dim() && ok; ++j) {
          unsigned s = 0;
          for (std::size_t k = 0; k < d.dim(); ++k) s = o.add(s, o.mul(d.d[k].code(), o.mul(m[k][i], m[k][j])));
          ok = s == (i == j ? d.d[i].code() : 0u);
        }
      naive += ok;
      return false;
    });
    CHECK(g.size() == naive);
    std::set<std::string> members;
    for (const auto& m : g) members.insert(m.map.to_string());
    for (const auto& x : g)
      for (const auto& y : g) CHECK(members.count((x.map * y.map).to_string()) == 1);
  }
}

TEST_CASE("isotropic orbits") {
  const auto f4 = Field::finite(2, 2);
  const auto orbits = isotropic_orbits(form(f4, {"1", "1"}));
  REQUIRE(orbits.size() == 3);
  CHECK(orbits[0].members == std::vector<Vector>{vec(f4, {"1", "1"})});
  CHECK(orbits[1].members == std::vector<Vector>{vec(f4, {"a", "a"})});
  CHECK(orbits[2].members == std::vector<Vector>{vec(f4, {"b", "b"})});
  CHECK(isotropic_orbits(form(Field::finite(3, 2), {"1+i", "1"})).empty());
  const auto f3 = Field::finite(3, 1);
  const auto single = isotropic_orbits(form(f3, {"1", "-1"}));
  REQUIRE(single.size() == 1);
  CHECK(single[0].members.size() == 4);
}
