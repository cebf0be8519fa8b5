#include "arrfree/multiarrangement.hpp"

#include <algorithm>

#include "arrfree/error.hpp"

namespace arrfree {

ZieglerRestriction ziegler_restrict(const Arrangement& a, std::uint32_t h) {
  Restriction rest = restrict_to(a, h);
  std::vector<int> mults;
  mults.reserve(rest.traces.size());
  long long total = 0;
  for (const auto& tr : rest.traces) {
    mults.push_back(static_cast<int>(tr.size()));
    total += static_cast<long long>(tr.size());
  }
  if (total != static_cast<long long>(a.size()) - 1) {
    throw Error(errc::internal, "|m^H| != |A| - 1");
  }
  return ZieglerRestriction{std::move(rest), Multiplicity(std::move(mults))};
}

EssentialMulti essentialize_rank2(const Arrangement& a, const Multiplicity& m) {
  if (m.size() != a.size()) throw Error(errc::precondition, "multiplicity size mismatch");
  if (a.dim() == 2) return EssentialMulti{a, m};
  const RrefResult rr = rref(forms_matrix(a));
  if (rr.pivots.size() != 2) throw Error(errc::precondition, "arrangement is not of rank 2");
  // Every form is a combination of the two echelon rows w1, w2; read the
  // coefficients off the pivot columns and renormalize.
  std::vector<LinearForm> forms;
  for (const LinearForm& f : a.forms()) {
    const Scalar a1 = Scalar::of(a.field(), f[rr.pivots[0]]) / rr.reduced.rows[0][rr.pivots[0]];
    const Scalar a2 = Scalar::of(a.field(), f[rr.pivots[1]]) / rr.reduced.rows[1][rr.pivots[1]];
    std::vector<Int> two;
    if (a.field().is_rational()) {
      const Int l = lcm(a1.den(), a2.den());
      two = {a1.num() * div_exact(l, a1.den()), a2.num() * div_exact(l, a2.den())};
    } else {
      two = {Int(std::to_string(a1.value())), Int(std::to_string(a2.value()))};
    }
    forms.push_back(LinearForm::canonical(a.field(), std::move(two)));
  }
  return EssentialMulti{Arrangement(a.field(), 2, std::move(forms)), m};
}

Exp2Result exp2(const Arrangement& a, const Multiplicity& m) {
  if (a.is_empty()) throw Error(errc::precondition, "exp2 needs a nonempty arrangement");
  const EssentialMulti em = essentialize_rank2(a, m);
  const long long total = em.mult.total();
  // d1 is the minimal degree carrying a nonzero piece of D(A,m); d1 <= |m|/2.
  int d1 = -1;
  ScalarRow theta1;
  for (int d = 0; d <= static_cast<int>((total + 1) / 2); ++d) {
    auto kb = graded_kernel(em.arr, em.mult, d);
    if (!kb.empty()) {
      d1 = d;
      theta1 = kb.front();
      break;
    }
  }
  if (d1 < 0) throw Error(errc::internal, "rank-2 module has no low-degree element");
  const int d2 = static_cast<int>(total) - d1;

  // Second basis element: a degree-d2 kernel element outside S * theta1.
  const GradedDerivation th1 = derivation_from_vector(em.arr, d1, theta1);
  const auto monos_d2 = monomials(2, d2);
  std::map<std::vector<int>, std::size_t> index_d2;
  for (std::size_t i = 0; i < monos_d2.size(); ++i) index_d2.emplace(monos_d2[i], i);
  ScalarMatrix span{em.arr.field(), 2 * monos_d2.size(), {}};
  for (const auto& gamma : monomials(2, d2 - d1)) {
    ScalarRow row(span.cols, Scalar::zero(em.arr.field()));
    for (int i = 0; i < 2; ++i) {
      const MPoly shifted = th1.comps[static_cast<std::size_t>(i)].shifted(gamma);
      for (const auto& [e, c] : shifted.terms()) {
        row[static_cast<std::size_t>(i) * monos_d2.size() + index_d2.at(e)] = c;
      }
    }
    span.rows.push_back(std::move(row));
  }
  const RrefResult rr = rref(span);
  ScalarRow theta2;
  for (const ScalarRow& v : graded_kernel(em.arr, em.mult, d2)) {
    if (!in_row_space(rr, v)) {
      theta2 = v;
      break;
    }
  }
  if (theta2.empty()) throw Error(errc::internal, "no independent degree-d2 element (rank-2 must be free)");

  std::vector<GradedDerivation> basis = {th1, derivation_from_vector(em.arr, d2, theta2)};
  // Saito determinant identity makes the pair a certified basis.
  MPoly det = basis[0].comps[0] * basis[1].comps[1] - basis[0].comps[1] * basis[1].comps[0];
  const MPoly q = defining_polynomial(em.arr, em.mult);
  Scalar c = Scalar::zero(em.arr.field());
  bool ok = false;
  if (!det.is_zero()) {
    const auto& [e0, c0] = *q.terms().begin();
    auto it = det.terms().find(e0);
    if (it != det.terms().end()) {
      c = it->second / c0;
      ok = (det == q.scaled(c));
    }
  }
  if (!ok || c.is_zero()) throw Error(errc::internal, "Saito pair determinant check failed");

  Exp2Result res;
  res.d1 = d1;
  res.d2 = d2;
  res.cert.basis = std::move(basis);
  res.cert.det_scalar = c;
  res.cert.exponents = {d1, d2};
  res.cert.arrangement_hash = arrangement_hash(em.arr, em.mult);
  return res;
}

Int b2_multi(const Arrangement& a, const Multiplicity& m) {
  if (m.size() != a.size()) throw Error(errc::precondition, "multiplicity size mismatch");
  const auto lat = lattice_of(a);
  Int acc = 0;
  if (lat->max_codim() < 2) return acc;
  for (std::uint32_t id : lat->levels()[2]) {
    const Flat& x = lat->flat(id);
    std::vector<int> local_m;
    local_m.reserve(x.contains.size());
    for (std::uint32_t i : x.contains) local_m.push_back(m[i]);
    const Exp2Result e = exp2(a.subarrangement(x.contains), Multiplicity(std::move(local_m)));
    acc += Int(e.d1) * Int(e.d2);
  }
  return acc;
}

}  // namespace arrfree
