#pragma once

#include <string>
#include <vector>

#include "evo1d/evolution.hpp"
#include "oracle.hpp"

namespace support {

using namespace evo1d;

inline Vector vec(const Field& f, const std::vector<std::string>& xs) {
  Vector v;
  for (const auto& x : xs) v.push_back(parse_scalar(x, f));
  return v;
}

/// The algebra with xy = <x,y>_λ a.
inline EvolutionAlgebra from_pair(const Field& f, const std::vector<std::string>& lambda,
                                  const std::vector<std::string>& a) {
  const auto l = vec(f, lambda);
  const auto g = vec(f, a);
  Matrix c(f, l.size(), l.size());
  for (std::size_t i = 0; i < l.size(); ++i)
    for (std::size_t k = 0; k < l.size(); ++k) c(i, k) = l[i] * g[k];
  return EvolutionAlgebra::validate(f, l.size(), c);
}

inline oracle::Fq oracle_field(const Field& f) { return oracle::Fq(f.prime(), f.degree()); }

inline oracle::Table table(const EvolutionAlgebra& a) {
  oracle::Table t(a.dim(), std::vector<unsigned>(a.dim()));
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < a.dim(); ++k) t[i][k] = a.structure()(i, k).code();
  return t;
}

inline oracle::Table table(const Matrix& m) {
  oracle::Table t(m.rows(), std::vector<unsigned>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < m.cols(); ++k) t[i][k] = m(i, k).code();
  return t;
}

}  // namespace support
