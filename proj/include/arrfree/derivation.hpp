#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "arrfree/arrangement.hpp"
#include "arrfree/matrix.hpp"

namespace arrfree {

/// Exponent vectors of total degree d in n variables, in graded-lex order
/// (descending exponent vectors, x_1-heavy first).
std::vector<std::vector<int>> monomials(int nvars, int d);
long long monomial_count(int nvars, int d);

/// Sparse multivariate polynomial over the arrangement's field; terms keyed
/// by exponent vector.
class MPoly {
 public:
  MPoly(Field f, int nvars) : field_(f), nvars_(nvars) {}

  static MPoly zero(Field f, int nvars) { return MPoly(f, nvars); }
  static MPoly constant(Field f, int nvars, const Scalar& c);
  static MPoly variable(Field f, int nvars, int i);
  static MPoly linear(Field f, const LinearForm& alpha);

  const Field& field() const { return field_; }
  int nvars() const { return nvars_; }
  bool is_zero() const { return t_.empty(); }
  const std::map<std::vector<int>, Scalar>& terms() const { return t_; }

  void add_term(const std::vector<int>& e, const Scalar& c);
  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator*(const MPoly& o) const;
  MPoly scaled(const Scalar& c) const;
  MPoly shifted(const std::vector<int>& e) const;  // * x^e
  bool operator==(const MPoly& o) const { return t_ == o.t_; }

  int total_degree() const;  // -1 for zero

 private:
  Field field_;
  int nvars_;
  std::map<std::vector<int>, Scalar> t_;
};

/// Product of alpha_H^{m(H)} over the arrangement.
MPoly defining_polynomial(const Arrangement& a, const Multiplicity& m);

/// One homogeneous derivation: l polynomial components of equal degree.
struct GradedDerivation {
  int degree = 0;
  std::vector<MPoly> comps;
};

/// theta(alpha_H) divisible by alpha_H^{m(H)} for every H, checked exactly
/// via a per-hyperplane linear change of coordinates (no polynomial
/// division).
bool derivation_in_module(const Arrangement& a, const Multiplicity& m,
                          const GradedDerivation& theta);

/// Linear conditions cutting out D(A,m)_d inside the space of degree-d
/// derivation coefficient vectors (component-major layout: component i,
/// monomial mu at column i*M + mu). Throws Error("budget") when the unknown
/// count exceeds 5000.
ScalarMatrix derivation_constraints(const Arrangement& a, const Multiplicity& m, int d);

/// Canonical basis of D(A,m)_d as coefficient vectors.
std::vector<ScalarRow> graded_kernel(const Arrangement& a, const Multiplicity& m, int d);
int graded_dim(const Arrangement& a, const Multiplicity& m, int d);

GradedDerivation derivation_from_vector(const Arrangement& a, int d, const ScalarRow& v);

/// Membership of the Euler derivation; true for every arrangement, used as a
/// self-test of the constraint assembler.
bool euler_membership(const Arrangement& a);

/// Membership of theta_E^H = (Q(A,m)/Q(A)) * theta_E in D(A,m); the input is
/// a multiarrangement, typically a Ziegler restriction.
bool euler_multi_membership(const Arrangement& a, const Multiplicity& m);

/// A full homogeneous basis certified by the determinant identity
/// det(theta_i components) = c * Q(A,m), c a nonzero constant.
struct SaitoCertificate {
  std::vector<GradedDerivation> basis;
  Scalar det_scalar;
  std::vector<int> exponents;  // sorted degrees, sum = |m|
  std::string arrangement_hash;
};

/// Ascends degrees 0..cap collecting minimal generators (kernel elements not
/// in the span of multiples of earlier finds); when l of them reach degree
/// sum |m| the determinant identity is verified. nullopt when the cap is
/// reached (inconclusive, not a non-freeness proof).
std::optional<SaitoCertificate> saito_search(const Arrangement& a, const Multiplicity& m,
                                             int degree_cap);

/// Exact replay of a certificate: membership of every component, degree sum,
/// determinant identity, and the arrangement hash.
bool verify_certificate(const Arrangement& a, const Multiplicity& m,
                        const SaitoCertificate& cert, std::string* why = nullptr);

std::string arrangement_hash(const Arrangement& a, const Multiplicity& m);

nlohmann::json certificate_to_json(const SaitoCertificate& cert);
SaitoCertificate certificate_from_json(const Field& f, int nvars, const nlohmann::json& j);

/// Compares graded_dim against the free-module prediction
/// sum_i dim S_{d-d_i} for d = 0..cap; a deficit refutes the candidate
/// exponents as a basis-degree profile.
struct HilbertProbeRow {
  int degree = 0;
  long long actual = 0;
  long long predicted = 0;
};
struct HilbertProbe {
  std::vector<HilbertProbeRow> rows;
  bool consistent = true;
  int first_mismatch = -1;
};
HilbertProbe hilbert_freeness_probe(const Arrangement& a, const Multiplicity& m,
                                    const std::vector<int>& candidate_exponents, int cap = -1);

}  // namespace arrfree
