#include "arrfree/matrix.hpp"

#include <algorithm>

#include "arrfree/error.hpp"

namespace arrfree {

namespace {

// ---- rational path: fraction-free elimination on integer rows ----

using ZRow = std::vector<Int>;

ZRow to_integer_row(const ScalarRow& row) {
  Int l = 1;
  for (const Scalar& s : row) l = lcm(l, s.den());
  ZRow out(row.size());
  for (std::size_t i = 0; i < row.size(); ++i) {
    out[i] = row[i].num() * div_exact(l, row[i].den());
  }
  return out;
}

void strip_content(ZRow& row) {
  Int g = 0;
  for (const Int& c : row) {
    g = gcd(g, c);
    if (g == 1) return;
  }
  if (g == 0 || g == 1) return;
  for (Int& c : row) c = div_exact(c, g);
}

std::size_t nnz(const ZRow& row) {
  std::size_t n = 0;
  for (const Int& c : row) {
    if (c != 0) ++n;
  }
  return n;
}

// Gauss-Jordan, fraction-free with per-row content stripping. Returns pivot
// columns; on exit rows [0, pivots.size()) are the reduced nonzero rows.
std::vector<std::size_t> rref_q(std::vector<ZRow>& rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t pos = 0;
  for (std::size_t col = 0; col < cols && pos < rows.size(); ++col) {
    std::size_t best = rows.size();
    std::size_t best_nnz = 0;
    for (std::size_t i = pos; i < rows.size(); ++i) {
      if (rows[i][col] == 0) continue;
      const std::size_t n = nnz(rows[i]);
      if (best == rows.size() || n < best_nnz ||
          (n == best_nnz && cmp(abs(rows[i][col]), abs(rows[best][col])) < 0)) {
        best = i;
        best_nnz = n;
      }
    }
    if (best == rows.size()) continue;
    std::swap(rows[pos], rows[best]);
    strip_content(rows[pos]);
    const ZRow& prow = rows[pos];
    const Int piv = prow[col];
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (j == pos || rows[j][col] == 0) continue;
      const Int f = rows[j][col];
      for (std::size_t k = 0; k < cols; ++k) {
        rows[j][k] = rows[j][k] * piv - f * prow[k];
      }
      strip_content(rows[j]);
    }
    pivots.push_back(col);
    ++pos;
  }
  rows.resize(pivots.size());
  // Sign convention: pivot entries positive; rows already primitive.
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r][pivots[r]] < 0) {
      for (Int& c : rows[r]) c = -c;
    }
  }
  return pivots;
}

// ---- prime-field path ----

using PRow = std::vector<std::uint64_t>;

std::vector<std::size_t> rref_p(std::vector<PRow>& rows, std::size_t cols, std::uint64_t p) {
  std::vector<std::size_t> pivots;
  std::size_t pos = 0;
  for (std::size_t col = 0; col < cols && pos < rows.size(); ++col) {
    std::size_t best = rows.size();
    for (std::size_t i = pos; i < rows.size(); ++i) {
      if (rows[i][col] != 0) {
        best = i;
        break;
      }
    }
    if (best == rows.size()) continue;
    std::swap(rows[pos], rows[best]);
    const std::uint64_t inv = inv_mod(rows[pos][col], p);
    for (auto& c : rows[pos]) c = mul_mod(c, inv, p);
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (j == pos || rows[j][col] == 0) continue;
      const std::uint64_t f = rows[j][col];
      for (std::size_t k = 0; k < cols; ++k) {
        const std::uint64_t sub = mul_mod(f, rows[pos][k], p);
        rows[j][k] = (rows[j][k] + p - sub) % p;
      }
    }
    pivots.push_back(col);
    ++pos;
  }
  rows.resize(pivots.size());
  return pivots;
}

// Removes columns forced to zero by singleton rows; used only for kernel
// computation of homogeneous systems. Mutates entries in place.
template <class Row, class IsZero, class SetZero>
std::vector<bool> force_singletons(std::vector<Row>& rows, std::size_t cols, IsZero is_zero,
                                   SetZero set_zero) {
  std::vector<bool> forced(cols, false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::size_t count = 0, last = 0;
      for (std::size_t k = 0; k < cols; ++k) {
        if (!is_zero(rows[i][k])) {
          ++count;
          last = k;
          if (count > 1) break;
        }
      }
      if (count == 1 && !forced[last]) {
        forced[last] = true;
        for (auto& row : rows) set_zero(row[last]);
        changed = true;
      }
    }
  }
  return forced;
}

}  // namespace

ScalarRow form_to_row(const Field& f, const LinearForm& lf) {
  ScalarRow row;
  row.reserve(lf.dim());
  for (const Int& c : lf.coeffs()) row.push_back(Scalar::of(f, c));
  return row;
}

ScalarMatrix forms_matrix(const Arrangement& a) {
  ScalarMatrix m{a.field(), static_cast<std::size_t>(a.dim()), {}};
  for (const LinearForm& f : a.forms()) m.rows.push_back(form_to_row(a.field(), f));
  return m;
}

ScalarMatrix forms_matrix(const Arrangement& a, const std::vector<std::uint32_t>& indices) {
  ScalarMatrix m{a.field(), static_cast<std::size_t>(a.dim()), {}};
  for (std::uint32_t i : indices) m.rows.push_back(form_to_row(a.field(), a.form(i)));
  return m;
}

ScalarMatrix stacked(const ScalarMatrix& m, const ScalarRow& extra) {
  if (extra.size() != m.cols) throw Error(errc::internal, "row width mismatch");
  ScalarMatrix out = m;
  out.rows.push_back(extra);
  return out;
}

RrefResult rref(const ScalarMatrix& m) {
  RrefResult res;
  res.reduced.field = m.field;
  res.reduced.cols = m.cols;
  if (m.field.is_rational()) {
    std::vector<ZRow> rows;
    rows.reserve(m.rows.size());
    for (const ScalarRow& r : m.rows) rows.push_back(to_integer_row(r));
    res.pivots = rref_q(rows, m.cols);
    for (const ZRow& r : rows) {
      ScalarRow out(m.cols);
      for (std::size_t k = 0; k < m.cols; ++k) out[k] = Scalar::rational(r[k]);
      res.reduced.rows.push_back(std::move(out));
    }
  } else {
    const std::uint64_t p = m.field.modulus();
    std::vector<PRow> rows;
    rows.reserve(m.rows.size());
    for (const ScalarRow& r : m.rows) {
      PRow pr(m.cols);
      for (std::size_t k = 0; k < m.cols; ++k) pr[k] = r[k].value();
      rows.push_back(std::move(pr));
    }
    res.pivots = rref_p(rows, m.cols, p);
    for (const PRow& r : rows) {
      ScalarRow out(m.cols);
      for (std::size_t k = 0; k < m.cols; ++k) out[k] = Scalar::residue(r[k], p);
      res.reduced.rows.push_back(std::move(out));
    }
  }
  return res;
}

std::size_t rank_of(const ScalarMatrix& m) { return rref(m).pivots.size(); }

std::vector<ScalarRow> kernel_basis(const ScalarMatrix& m) {
  const std::size_t cols = m.cols;
  std::vector<ScalarRow> basis;
  if (m.field.is_rational()) {
    std::vector<ZRow> rows;
    rows.reserve(m.rows.size());
    for (const ScalarRow& r : m.rows) rows.push_back(to_integer_row(r));
    const std::vector<bool> forced = force_singletons(
        rows, cols, [](const Int& v) { return v == 0; }, [](Int& v) { v = 0; });
    const std::vector<std::size_t> pivots = rref_q(rows, cols);
    std::vector<std::size_t> pivot_of(cols, SIZE_MAX);
    for (std::size_t r = 0; r < pivots.size(); ++r) pivot_of[pivots[r]] = r;
    for (std::size_t f = 0; f < cols; ++f) {
      if (forced[f] || pivot_of[f] != SIZE_MAX) continue;
      Int scale = 1;
      for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (rows[r][f] != 0) scale = lcm(scale, rows[r][pivots[r]]);
      }
      std::vector<Int> vec(cols, Int(0));
      vec[f] = scale;
      for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (rows[r][f] != 0) {
          vec[pivots[r]] = -rows[r][f] * div_exact(scale, rows[r][pivots[r]]);
        }
      }
      strip_content(vec);
      ScalarRow out(cols);
      for (std::size_t k = 0; k < cols; ++k) out[k] = Scalar::rational(vec[k]);
      basis.push_back(std::move(out));
    }
  } else {
    const std::uint64_t p = m.field.modulus();
    std::vector<PRow> rows;
    rows.reserve(m.rows.size());
    for (const ScalarRow& r : m.rows) {
      PRow pr(cols);
      for (std::size_t k = 0; k < cols; ++k) pr[k] = r[k].value();
      rows.push_back(std::move(pr));
    }
    const std::vector<bool> forced = force_singletons(
        rows, cols, [](std::uint64_t v) { return v == 0; }, [](std::uint64_t& v) { v = 0; });
    const std::vector<std::size_t> pivots = rref_p(rows, cols, p);
    std::vector<std::size_t> pivot_of(cols, SIZE_MAX);
    for (std::size_t r = 0; r < pivots.size(); ++r) pivot_of[pivots[r]] = r;
    for (std::size_t f = 0; f < cols; ++f) {
      if (forced[f] || pivot_of[f] != SIZE_MAX) continue;
      ScalarRow out(cols, Scalar::residue(0, p));
      out[f] = Scalar::residue(1, p);
      for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (rows[r][f] != 0) out[pivots[r]] = Scalar::residue(p - rows[r][f], p);
      }
      basis.push_back(std::move(out));
    }
  }
  return basis;
}

bool in_row_space(const RrefResult& r, const ScalarRow& v) {
  if (v.size() != r.reduced.cols) throw Error(errc::internal, "row width mismatch");
  ScalarRow w = v;
  for (std::size_t i = 0; i < r.pivots.size(); ++i) {
    const std::size_t p = r.pivots[i];
    if (w[p].is_zero()) continue;
    const Scalar piv = r.reduced.rows[i][p];
    const Scalar f = w[p];
    for (std::size_t k = 0; k < w.size(); ++k) {
      w[k] = w[k] * piv - f * r.reduced.rows[i][k];
    }
  }
  return std::all_of(w.begin(), w.end(), [](const Scalar& s) { return s.is_zero(); });
}

std::string matrix_key(const ScalarMatrix& m) {
  std::string s = std::to_string(m.rows.size()) + "x" + std::to_string(m.cols) + ":";
  for (const ScalarRow& r : m.rows) {
    for (const Scalar& c : r) {
      s += c.str();
      s += ",";
    }
    s += ";";
  }
  return s;
}

}  // namespace arrfree
