#include "arrfree/derivation.hpp"

#include <algorithm>
#include <functional>

#include <nlohmann/json.hpp>

#include "arrfree/error.hpp"

namespace arrfree {

std::vector<std::vector<int>> monomials(int nvars, int d) {
  std::vector<std::vector<int>> out;
  if (d < 0) return out;
  std::vector<int> cur(static_cast<std::size_t>(nvars), 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == nvars - 1) {
      cur[static_cast<std::size_t>(pos)] = left;
      out.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[static_cast<std::size_t>(pos)] = e;
      rec(pos + 1, left - e);
    }
  };
  if (nvars == 0) return out;
  rec(0, d);
  return out;
}

long long monomial_count(int nvars, int d) {
  if (d < 0) return 0;
  long long num = 1;
  for (int i = 1; i < nvars; ++i) num = num * (d + i) / i;  // C(d+n-1, n-1), exact stepwise
  return num;
}

MPoly MPoly::constant(Field f, int nvars, const Scalar& c) {
  MPoly p(f, nvars);
  p.add_term(std::vector<int>(static_cast<std::size_t>(nvars), 0), c);
  return p;
}

MPoly MPoly::variable(Field f, int nvars, int i) {
  MPoly p(f, nvars);
  std::vector<int> e(static_cast<std::size_t>(nvars), 0);
  e[static_cast<std::size_t>(i)] = 1;
  p.add_term(e, Scalar::one(f));
  return p;
}

MPoly MPoly::linear(Field f, const LinearForm& alpha) {
  MPoly p(f, static_cast<int>(alpha.dim()));
  std::vector<int> e(alpha.dim(), 0);
  for (std::size_t i = 0; i < alpha.dim(); ++i) {
    if (alpha[i] == 0) continue;
    e[i] = 1;
    p.add_term(e, Scalar::of(f, alpha[i]));
    e[i] = 0;
  }
  return p;
}

void MPoly::add_term(const std::vector<int>& e, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = t_.find(e);
  if (it == t_.end()) {
    t_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) t_.erase(it);
}

MPoly MPoly::operator+(const MPoly& o) const {
  MPoly r = *this;
  for (const auto& [e, c] : o.t_) r.add_term(e, c);
  return r;
}

MPoly MPoly::operator-(const MPoly& o) const {
  MPoly r = *this;
  for (const auto& [e, c] : o.t_) r.add_term(e, -c);
  return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
  MPoly r(field_, nvars_);
  std::vector<int> e(static_cast<std::size_t>(nvars_));
  for (const auto& [ea, ca] : t_) {
    for (const auto& [eb, cb] : o.t_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

MPoly MPoly::scaled(const Scalar& c) const {
  MPoly r(field_, nvars_);
  if (c.is_zero()) return r;
  for (const auto& [e, v] : t_) r.t_.emplace(e, v * c);
  return r;
}

MPoly MPoly::shifted(const std::vector<int>& e) const {
  MPoly r(field_, nvars_);
  std::vector<int> f(static_cast<std::size_t>(nvars_));
  for (const auto& [ea, c] : t_) {
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = ea[i] + e[i];
    r.t_.emplace(f, c);
  }
  return r;
}

int MPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : t_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

MPoly defining_polynomial(const Arrangement& a, const Multiplicity& m) {
  MPoly q = MPoly::constant(a.field(), a.dim(), Scalar::one(a.field()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    const MPoly alpha = MPoly::linear(a.field(), a.form(i));
    for (int k = 0; k < m[i]; ++k) q = q * alpha;
  }
  return q;
}

namespace {

// Change of coordinates attached to one hyperplane: y_0 tracks the direction
// alpha, the other variables map to scaled copies of the non-pivot x's. Under
// x = image(y), alpha(x) = c_p * y_0, so divisibility by alpha^k becomes
// "every monomial has y_0-exponent >= k".
struct HyperplaneFrame {
  std::vector<MPoly> var_image;  // image of each original variable
  Scalar cp;
};

HyperplaneFrame frame_for(const Arrangement& a, std::size_t h) {
  const Field& f = a.field();
  const LinearForm& alpha = a.form(h);
  const int l = a.dim();
  const std::size_t p = alpha.pivot();
  HyperplaneFrame fr{{}, Scalar::of(f, alpha[p])};
  fr.var_image.reserve(static_cast<std::size_t>(l));
  // Slot assignment: y_0 = alpha direction; remaining vars keep their order.
  std::vector<int> slot(static_cast<std::size_t>(l), -1);
  int next = 1;
  for (int j = 0; j < l; ++j) {
    if (static_cast<std::size_t>(j) != p) slot[static_cast<std::size_t>(j)] = next++;
  }
  for (int j = 0; j < l; ++j) {
    if (static_cast<std::size_t>(j) == p) {
      MPoly img = MPoly::variable(f, l, 0);
      for (int k = 0; k < l; ++k) {
        if (static_cast<std::size_t>(k) == p || alpha[static_cast<std::size_t>(k)] == 0) continue;
        std::vector<int> e(static_cast<std::size_t>(l), 0);
        e[static_cast<std::size_t>(slot[static_cast<std::size_t>(k)])] = 1;
        img.add_term(e, -Scalar::of(f, alpha[static_cast<std::size_t>(k)]));
      }
      fr.var_image.push_back(std::move(img));
    } else {
      fr.var_image.push_back(
          MPoly::variable(f, l, slot[static_cast<std::size_t>(j)]).scaled(fr.cp));
    }
  }
  return fr;
}

MPoly substitute(const MPoly& g, const HyperplaneFrame& fr) {
  MPoly out(g.field(), g.nvars());
  // Power cache per variable.
  std::vector<std::vector<MPoly>> pow(static_cast<std::size_t>(g.nvars()));
  const auto power = [&](int var, int k) -> const MPoly& {
    auto& pv = pow[static_cast<std::size_t>(var)];
    if (pv.empty()) pv.push_back(MPoly::constant(g.field(), g.nvars(), Scalar::one(g.field())));
    while (static_cast<int>(pv.size()) <= k) {
      pv.push_back(pv.back() * fr.var_image[static_cast<std::size_t>(var)]);
    }
    return pv[static_cast<std::size_t>(k)];
  };
  for (const auto& [e, c] : g.terms()) {
    MPoly term = MPoly::constant(g.field(), g.nvars(), c);
    for (int i = 0; i < g.nvars(); ++i) {
      if (e[static_cast<std::size_t>(i)] > 0) term = term * power(i, e[static_cast<std::size_t>(i)]);
    }
    out = out + term;
  }
  return out;
}

bool y0_degree_at_least(const MPoly& g, int k) {
  for (const auto& [e, c] : g.terms()) {
    if (e[0] < k) return false;
  }
  return true;
}

MPoly apply_to_form(const Arrangement& a, const GradedDerivation& theta, std::size_t h) {
  const LinearForm& alpha = a.form(h);
  MPoly g(a.field(), a.dim());
  for (int i = 0; i < a.dim(); ++i) {
    if (alpha[static_cast<std::size_t>(i)] == 0) continue;
    g = g + theta.comps[static_cast<std::size_t>(i)].scaled(
                Scalar::of(a.field(), alpha[static_cast<std::size_t>(i)]));
  }
  return g;
}

void check_multiplicity(const Arrangement& a, const Multiplicity& m) {
  if (m.size() != a.size()) throw Error(errc::precondition, "multiplicity size mismatch");
}

}  // namespace

bool derivation_in_module(const Arrangement& a, const Multiplicity& m,
                          const GradedDerivation& theta) {
  check_multiplicity(a, m);
  if (static_cast<int>(theta.comps.size()) != a.dim()) {
    throw Error(errc::precondition, "derivation has wrong number of components");
  }
  for (std::size_t h = 0; h < a.size(); ++h) {
    const MPoly g = apply_to_form(a, theta, h);
    if (g.is_zero()) continue;
    if (!y0_degree_at_least(substitute(g, frame_for(a, h)), m[h])) return false;
  }
  return true;
}

ScalarMatrix derivation_constraints(const Arrangement& a, const Multiplicity& m, int d) {
  check_multiplicity(a, m);
  if (d < 0) throw Error(errc::precondition, "degree must be >= 0");
  const Field& f = a.field();
  const int l = a.dim();
  const auto monos = monomials(l, d);
  const std::size_t M = monos.size();
  const std::size_t unknowns = static_cast<std::size_t>(l) * M;
  if (unknowns > 5000) {
    throw Error(errc::budget, "graded piece has " + std::to_string(unknowns) +
                                  " unknowns (budget 5000)");
  }
  ScalarMatrix sys{f, unknowns, {}};
  for (std::size_t h = 0; h < a.size(); ++h) {
    const LinearForm& alpha = a.form(h);
    const HyperplaneFrame fr = frame_for(a, h);
    const int mh = m[h];
    // Image of the pivot variable, memoized powers.
    std::vector<MPoly> ppow = {MPoly::constant(f, l, Scalar::one(f))};
    const std::size_t p = alpha.pivot();
    for (int k = 1; k <= d; ++k) ppow.push_back(ppow.back() * fr.var_image[p]);
    // Slot of each non-pivot variable (same convention as frame_for).
    std::vector<int> slot(static_cast<std::size_t>(l), -1);
    int next = 1;
    for (int j = 0; j < l; ++j) {
      if (static_cast<std::size_t>(j) != p) slot[static_cast<std::size_t>(j)] = next++;
    }
    // Powers of the pivot coefficient.
    std::vector<Scalar> cpk = {Scalar::one(f)};
    for (int k = 1; k <= d; ++k) cpk.push_back(cpk.back() * fr.cp);

    std::map<std::vector<int>, std::size_t> row_of;
    std::vector<ScalarRow> rows;
    const auto row_for = [&](const std::vector<int>& e) -> ScalarRow& {
      auto it = row_of.find(e);
      if (it == row_of.end()) {
        it = row_of.emplace(e, rows.size()).first;
        rows.emplace_back(unknowns, Scalar::zero(f));
      }
      return rows[it->second];
    };

    for (int comp = 0; comp < l; ++comp) {
      const Int& ci = alpha[static_cast<std::size_t>(comp)];
      if (ci == 0) continue;
      const Scalar ci_s = Scalar::of(f, ci);
      for (std::size_t mu = 0; mu < M; ++mu) {
        const std::vector<int>& e = monos[mu];
        const int ep = e[p];
        // Transform of x^mu: cp^(d-ep) * prod y_slot(j)^(e_j) * ppow[ep].
        int rest = 0;
        std::vector<int> base(static_cast<std::size_t>(l), 0);
        for (int j = 0; j < l; ++j) {
          if (static_cast<std::size_t>(j) == p || e[static_cast<std::size_t>(j)] == 0) continue;
          base[static_cast<std::size_t>(slot[static_cast<std::size_t>(j)])] =
              e[static_cast<std::size_t>(j)];
          rest += e[static_cast<std::size_t>(j)];
        }
        const Scalar scale = ci_s * cpk[static_cast<std::size_t>(rest)];
        const std::size_t col = static_cast<std::size_t>(comp) * M + mu;
        std::vector<int> key(static_cast<std::size_t>(l));
        for (const auto& [pe, pc] : ppow[static_cast<std::size_t>(ep)].terms()) {
          if (pe[0] >= mh) continue;  // only low alpha-degree monomials constrain
          for (std::size_t t = 0; t < key.size(); ++t) key[t] = pe[t] + base[t];
          ScalarRow& row = row_for(key);
          row[col] += scale * pc;
        }
      }
    }
    // Rows appended in deterministic (sorted exponent) order.
    std::vector<std::pair<std::vector<int>, std::size_t>> ordered(row_of.begin(), row_of.end());
    for (const auto& [e, idx] : ordered) sys.rows.push_back(std::move(rows[idx]));
  }
  return sys;
}

std::vector<ScalarRow> graded_kernel(const Arrangement& a, const Multiplicity& m, int d) {
  return kernel_basis(derivation_constraints(a, m, d));
}

int graded_dim(const Arrangement& a, const Multiplicity& m, int d) {
  return static_cast<int>(graded_kernel(a, m, d).size());
}

GradedDerivation derivation_from_vector(const Arrangement& a, int d, const ScalarRow& v) {
  const auto monos = monomials(a.dim(), d);
  const std::size_t M = monos.size();
  if (v.size() != static_cast<std::size_t>(a.dim()) * M) {
    throw Error(errc::internal, "coefficient vector has wrong length");
  }
  GradedDerivation theta{d, {}};
  for (int i = 0; i < a.dim(); ++i) {
    MPoly comp(a.field(), a.dim());
    for (std::size_t mu = 0; mu < M; ++mu) {
      comp.add_term(monos[mu], v[static_cast<std::size_t>(i) * M + mu]);
    }
    theta.comps.push_back(std::move(comp));
  }
  return theta;
}

bool euler_membership(const Arrangement& a) {
  GradedDerivation euler{1, {}};
  for (int i = 0; i < a.dim(); ++i) {
    euler.comps.push_back(MPoly::variable(a.field(), a.dim(), i));
  }
  return derivation_in_module(a, Multiplicity::ones(a.size()), euler);
}

bool euler_multi_membership(const Arrangement& a, const Multiplicity& m) {
  check_multiplicity(a, m);
  // theta_E^H = (Q(A,m)/Q(A)) * theta_E: multiply Euler by prod alpha^(m-1).
  MPoly b = MPoly::constant(a.field(), a.dim(), Scalar::one(a.field()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    const MPoly alpha = MPoly::linear(a.field(), a.form(i));
    for (int k = 1; k < m[i]; ++k) b = b * alpha;
  }
  GradedDerivation theta{static_cast<int>(m.total() - static_cast<long long>(a.size())) + 1, {}};
  for (int i = 0; i < a.dim(); ++i) {
    theta.comps.push_back(b * MPoly::variable(a.field(), a.dim(), i));
  }
  return derivation_in_module(a, m, theta);
}

namespace {

// Determinant of the l x l component matrix by column-subset expansion.
MPoly derivation_determinant(const Field& f, int l, const std::vector<GradedDerivation>& ths) {
  std::map<std::uint32_t, MPoly> memo;  // column subset -> minor on last rows
  std::function<MPoly(std::uint32_t, int)> minor = [&](std::uint32_t colset, int row) -> MPoly {
    if (colset == 0) return MPoly::constant(f, l, Scalar::one(f));
    auto it = memo.find(colset);
    if (it != memo.end()) return it->second;
    MPoly acc(f, l);
    int sign = 0;
    for (int j = 0; j < l; ++j) {
      if (!(colset & (1u << j))) continue;
      const MPoly& entry = ths[static_cast<std::size_t>(row)].comps[static_cast<std::size_t>(j)];
      if (!entry.is_zero()) {
        MPoly sub = minor(colset & ~(1u << j), row + 1) * entry;
        acc = (sign % 2 == 0) ? acc + sub : acc - sub;
      }
      ++sign;
    }
    memo.emplace(colset, acc);
    return acc;
  };
  return minor((1u << l) - 1, 0);
}

std::optional<Scalar> proportionality(const MPoly& det, const MPoly& q) {
  if (det.is_zero()) return std::nullopt;
  if (q.is_zero()) return std::nullopt;
  const auto& [e0, c0] = *q.terms().begin();
  auto it = det.terms().find(e0);
  if (it == det.terms().end()) return std::nullopt;
  const Scalar c = it->second / c0;
  if (det == q.scaled(c)) return c;
  return std::nullopt;
}

}  // namespace

std::string arrangement_hash(const Arrangement& a, const Multiplicity& m) {
  return hex64(fnv1a(a.text(&m)));
}

std::optional<SaitoCertificate> saito_search(const Arrangement& a, const Multiplicity& m,
                                             int degree_cap) {
  check_multiplicity(a, m);
  const int l = a.dim();
  const long long total = m.total();
  std::vector<std::pair<int, ScalarRow>> gens;  // (degree, coefficient vector)
  for (int d = 0; d <= degree_cap; ++d) {
    const auto kb = graded_kernel(a, m, d);
    if (!kb.empty()) {
      // Span of x^gamma * theta_j for earlier generators, inside degree d.
      const auto monos_d = monomials(l, d);
      std::map<std::vector<int>, std::size_t> index_d;
      for (std::size_t i = 0; i < monos_d.size(); ++i) index_d.emplace(monos_d[i], i);
      const std::size_t M = monos_d.size();
      ScalarMatrix span{a.field(), static_cast<std::size_t>(l) * M, {}};
      for (const auto& [dg, vec] : gens) {
        const GradedDerivation th = derivation_from_vector(a, dg, vec);
        for (const auto& gamma : monomials(l, d - dg)) {
          ScalarRow row(span.cols, Scalar::zero(a.field()));
          for (int i = 0; i < l; ++i) {
            const MPoly shifted = th.comps[static_cast<std::size_t>(i)].shifted(gamma);
            for (const auto& [e, c] : shifted.terms()) {
              row[static_cast<std::size_t>(i) * M + index_d.at(e)] = c;
            }
          }
          span.rows.push_back(std::move(row));
        }
      }
      RrefResult rr = rref(span);
      for (const ScalarRow& v : kb) {
        if (in_row_space(rr, v)) continue;
        gens.emplace_back(d, v);
        span = rr.reduced;
        span.rows.push_back(v);
        rr = rref(span);
      }
    }
    if (static_cast<int>(gens.size()) == l) {
      long long degsum = 0;
      for (const auto& [dg, vec] : gens) degsum += dg;
      if (degsum == total) {
        std::vector<GradedDerivation> basis;
        for (const auto& [dg, vec] : gens) basis.push_back(derivation_from_vector(a, dg, vec));
        const MPoly det = derivation_determinant(a.field(), l, basis);
        const auto c = proportionality(det, defining_polynomial(a, m));
        if (c) {
          SaitoCertificate cert;
          cert.basis = std::move(basis);
          cert.det_scalar = *c;
          for (const auto& [dg, vec] : gens) cert.exponents.push_back(dg);
          std::sort(cert.exponents.begin(), cert.exponents.end());
          cert.arrangement_hash = arrangement_hash(a, m);
          return cert;
        }
      }
    }
  }
  return std::nullopt;
}

bool verify_certificate(const Arrangement& a, const Multiplicity& m,
                        const SaitoCertificate& cert, std::string* why) {
  const auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (cert.arrangement_hash != arrangement_hash(a, m)) return fail("arrangement hash mismatch");
  if (static_cast<int>(cert.basis.size()) != a.dim()) return fail("wrong number of derivations");
  long long degsum = 0;
  for (const GradedDerivation& th : cert.basis) {
    if (static_cast<int>(th.comps.size()) != a.dim()) return fail("component count mismatch");
    for (const MPoly& c : th.comps) {
      for (const auto& [e, v] : c.terms()) {
        int s = 0;
        for (int x : e) s += x;
        if (s != th.degree) return fail("inhomogeneous component");
      }
    }
    if (!derivation_in_module(a, m, th)) return fail("membership fails");
    degsum += th.degree;
  }
  if (degsum != m.total()) return fail("degree sum differs from |m|");
  if (cert.det_scalar.is_zero()) return fail("determinant scalar is zero");
  const MPoly det = derivation_determinant(a.field(), a.dim(), cert.basis);
  if (!(det == defining_polynomial(a, m).scaled(cert.det_scalar))) {
    return fail("determinant identity fails");
  }
  return true;
}

nlohmann::json certificate_to_json(const SaitoCertificate& cert) {
  nlohmann::json j;
  j["kind"] = "saito";
  j["exponents"] = cert.exponents;
  j["det_scalar"] = cert.det_scalar.str();
  j["arrangement_hash"] = cert.arrangement_hash;
  nlohmann::json basis = nlohmann::json::array();
  for (const GradedDerivation& th : cert.basis) {
    nlohmann::json tj;
    tj["degree"] = th.degree;
    nlohmann::json comps = nlohmann::json::array();
    for (const MPoly& c : th.comps) {
      nlohmann::json terms = nlohmann::json::array();
      for (const auto& [e, v] : c.terms()) {
        terms.push_back(nlohmann::json::array({nlohmann::json(e), nlohmann::json(v.str())}));
      }
      comps.push_back(std::move(terms));
    }
    tj["components"] = std::move(comps);
    basis.push_back(std::move(tj));
  }
  j["basis"] = std::move(basis);
  return j;
}

namespace {
Scalar scalar_from_str(const Field& f, const std::string& s) {
  if (f.is_rational()) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Scalar::rational(Int(s));
    return Scalar::rational(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
  }
  return Scalar::residue(std::stoull(s), f.modulus());
}
}  // namespace

SaitoCertificate certificate_from_json(const Field& f, int nvars, const nlohmann::json& j) {
  SaitoCertificate cert;
  cert.exponents = j.at("exponents").get<std::vector<int>>();
  cert.det_scalar = scalar_from_str(f, j.at("det_scalar").get<std::string>());
  cert.arrangement_hash = j.at("arrangement_hash").get<std::string>();
  for (const auto& tj : j.at("basis")) {
    GradedDerivation th{tj.at("degree").get<int>(), {}};
    for (const auto& comp : tj.at("components")) {
      MPoly c(f, nvars);
      for (const auto& term : comp) {
        c.add_term(term.at(0).get<std::vector<int>>(),
                   scalar_from_str(f, term.at(1).get<std::string>()));
      }
      th.comps.push_back(std::move(c));
    }
    cert.basis.push_back(std::move(th));
  }
  return cert;
}

HilbertProbe hilbert_freeness_probe(const Arrangement& a, const Multiplicity& m,
                                    const std::vector<int>& candidate_exponents, int cap) {
  check_multiplicity(a, m);
  if (cap < 0) {
    cap = 0;
    for (int e : candidate_exponents) cap = std::max(cap, e);
    cap += 1;
  }
  HilbertProbe probe;
  for (int d = 0; d <= cap; ++d) {
    HilbertProbeRow row;
    row.degree = d;
    row.actual = graded_dim(a, m, d);
    row.predicted = 0;
    for (int e : candidate_exponents) row.predicted += monomial_count(a.dim(), d - e);
    if (row.actual != row.predicted && probe.consistent) {
      probe.consistent = false;
      probe.first_mismatch = d;
    }
    probe.rows.push_back(row);
  }
  return probe;
}

}  // namespace arrfree
