#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "uvt/rational.hpp"

namespace uvt {

using ScalarMatrix = std::vector<std::vector<Scalar>>;
using QMatrix = std::vector<std::vector<mpq_class>>;

// Rational point used for rank probes. A rank found at a point is a lower
// bound for the rank over Q(v,t); a nonzero minor at a point certifies the
// corresponding symbolic minor is nonzero.
struct EvalPoint {
  mpq_class v;
  mpq_class t;
};
const EvalPoint& probe_point();
const EvalPoint& second_probe_point();

// nullopt if some entry has a pole at the point.
std::optional<QMatrix> evaluate(const ScalarMatrix& m, const EvalPoint& p);

std::size_t rank(QMatrix m);

// Rank of m reduced modulo a fixed 61-bit prime; a lower bound for rank(m),
// so a full rank here certifies full rank over Q. nullopt if a denominator
// vanishes modulo the prime.
std::optional<std::size_t> rank_mod_prime(const QMatrix& m);

// Greedy scan of rows in order, keeping a row iff it raises the rank.
std::vector<std::size_t> independent_rows(const QMatrix& m);

// Pivot columns of the reduced row echelon form.
std::vector<std::size_t> pivot_columns(QMatrix m);

// Symbolic rank, evaluated at two probe points (maximum taken).
std::size_t generic_rank(const ScalarMatrix& m);

// Exact inverse over Q(v,t); InvariantError when singular.
ScalarMatrix inverse(const ScalarMatrix& m);

Scalar determinant(ScalarMatrix m);

// Basis of {x : m x = 0} over Q(v,t); columns count fixed by `cols`.
std::vector<std::vector<Scalar>> kernel_basis(const ScalarMatrix& m, std::size_t cols);

std::vector<Scalar> mat_vec(const ScalarMatrix& m, const std::vector<Scalar>& x);

}  // namespace uvt
