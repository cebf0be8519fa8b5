#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "arrfree/arrangement.hpp"
#include "arrfree/scalar.hpp"

namespace arrfree {

using ScalarRow = std::vector<Scalar>;

/// Dense matrix over a single field. Rows may be empty (0 x cols).
struct ScalarMatrix {
  Field field = Field::rationals();
  std::size_t cols = 0;
  std::vector<ScalarRow> rows;
};

struct RrefResult {
  ScalarMatrix reduced;               // canonical reduced form, rank rows
  std::vector<std::size_t> pivots;    // pivot column per row
};

/// Canonical reduced row echelon form. Over Q the computation is
/// fraction-free on integer rows with content stripping; the result has
/// primitive integer rows with positive pivots (the unique integer rescaling
/// of the rational RREF). Over GF(p) pivots are 1.
RrefResult rref(const ScalarMatrix& m);

std::size_t rank_of(const ScalarMatrix& m);

/// Canonical basis of the right null space {x : m x = 0}, one vector per
/// free column in ascending column order. Over Q the vectors are primitive
/// integer vectors with positive entry at their free column.
std::vector<ScalarRow> kernel_basis(const ScalarMatrix& m);

/// Membership of v in the row space of an rref() result.
bool in_row_space(const RrefResult& r, const ScalarRow& v);

/// Deterministic serialization (used as hash key for canonical matrices).
std::string matrix_key(const ScalarMatrix& m);

/// Row matrix of the forms of an arrangement (or a subset of them).
ScalarMatrix forms_matrix(const Arrangement& a);
ScalarMatrix forms_matrix(const Arrangement& a, const std::vector<std::uint32_t>& indices);

ScalarRow form_to_row(const Field& f, const LinearForm& lf);

/// Stacks extra rows onto a matrix (same field / width).
ScalarMatrix stacked(const ScalarMatrix& m, const ScalarRow& extra);

}  // namespace arrfree
