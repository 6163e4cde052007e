#include "geocensus/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "geocensus/errors.hpp"

namespace geocensus {

SymMatrix SymMatrix::identity(unsigned dim) {
  SymMatrix m;
  m.dim = dim;
  m.a.assign(static_cast<std::size_t>(dim) * dim, 0.0);
  for (unsigned i = 0; i < dim; ++i) m.at(i, i) = 1.0;
  return m;
}

double SymMatrix::det() const {
  std::vector<double> lu = a;
  const unsigned n = dim;
  double d = 1.0;
  for (unsigned c = 0; c < n; ++c) {
    unsigned p = c;
    for (unsigned r = c + 1; r < n; ++r)
      if (std::fabs(lu[r * n + c]) > std::fabs(lu[p * n + c])) p = r;
    if (lu[p * n + c] == 0.0) return 0.0;
    if (p != c) {
      for (unsigned k = 0; k < n; ++k) std::swap(lu[p * n + k], lu[c * n + k]);
      d = -d;
    }
    d *= lu[c * n + c];
    for (unsigned r = c + 1; r < n; ++r) {
      double f = lu[r * n + c] / lu[c * n + c];
      for (unsigned k = c; k < n; ++k) lu[r * n + k] -= f * lu[c * n + k];
    }
  }
  return d;
}

SymMatrix SymMatrix::inverse() const {
  const unsigned n = dim;
  std::vector<double> aug(static_cast<std::size_t>(n) * 2 * n, 0.0);
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) aug[i * 2 * n + j] = at(i, j);
    aug[i * 2 * n + n + i] = 1.0;
  }
  for (unsigned c = 0; c < n; ++c) {
    unsigned p = c;
    for (unsigned r = c + 1; r < n; ++r)
      if (std::fabs(aug[r * 2 * n + c]) > std::fabs(aug[p * 2 * n + c])) p = r;
    if (aug[p * 2 * n + c] == 0.0) throw DomainError("singular matrix has no inverse");
    if (p != c)
      for (unsigned k = 0; k < 2 * n; ++k) std::swap(aug[p * 2 * n + k], aug[c * 2 * n + k]);
    double piv = aug[c * 2 * n + c];
    for (unsigned k = 0; k < 2 * n; ++k) aug[c * 2 * n + k] /= piv;
    for (unsigned r = 0; r < n; ++r) {
      if (r == c) continue;
      double f = aug[r * 2 * n + c];
      if (f == 0.0) continue;
      for (unsigned k = 0; k < 2 * n; ++k) aug[r * 2 * n + k] -= f * aug[c * 2 * n + k];
    }
  }
  SymMatrix inv;
  inv.dim = n;
  inv.a.resize(static_cast<std::size_t>(n) * n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) inv.at(i, j) = aug[i * 2 * n + n + j];
  return inv;
}

bool SymMatrix::positive_definite() const {
  // Cholesky probe.
  const unsigned n = dim;
  std::vector<double> l(static_cast<std::size_t>(n) * n, 0.0);
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j <= i; ++j) {
      double s = at(i, j);
      for (unsigned k = 0; k < j; ++k) s -= l[i * n + k] * l[j * n + k];
      if (i == j) {
        if (s <= 0) return false;
        l[i * n + i] = std::sqrt(s);
      } else {
        l[i * n + j] = s / l[j * n + j];
      }
    }
  }
  return true;
}

bool SymMatrix::symmetric(double tol) const {
  for (unsigned i = 0; i < dim; ++i)
    for (unsigned j = i + 1; j < dim; ++j)
      if (std::fabs(at(i, j) - at(j, i)) > tol) return false;
  return true;
}

AsymptoticModel AsymptoticModel::standard(unsigned genus) {
  return with_matrix(genus, SymMatrix::identity(2 * genus));
}

AsymptoticModel AsymptoticModel::with_matrix(unsigned genus, SymMatrix N) {
  if (genus < 2) throw DomainError("asymptotic model requires genus >= 2");
  return with_parameters(genus, 1.0 / (2 * M_PI * (genus - 1)), std::move(N));
}

AsymptoticModel AsymptoticModel::with_parameters(unsigned genus, double sigma2, SymMatrix N) {
  if (genus < 2) throw DomainError("asymptotic model requires genus >= 2");
  if (!(sigma2 > 0)) throw DomainError("sigma^2 must be positive");
  if (N.dim != 2 * genus) throw DomainError("N must be a 2g x 2g matrix");
  if (!N.symmetric(1e-9)) throw DomainError("N must be symmetric");
  if (std::fabs(N.det() - 1.0) > 1e-9) throw DomainError("N must have determinant 1");
  if (!N.positive_definite()) throw DomainError("N must be positive definite");
  AsymptoticModel m;
  m.genus_ = genus;
  m.sigma2_ = sigma2;
  m.N_inv_ = N.inverse();
  m.N_ = std::move(N);
  return m;
}

double AsymptoticModel::quad(const HomologyVector& v) const {
  if (v.size() != 2 * genus_) throw DomainError("quadratic form dimension mismatch");
  double s = 0;
  for (unsigned i = 0; i < 2 * genus_; ++i)
    for (unsigned j = 0; j < 2 * genus_; ++j) s += v[i] * N_inv_.at(i, j) * v[j];
  return s;
}

double AsymptoticModel::quad(std::span<const std::int16_t> v) const {
  HomologyVector h(v.begin(), v.end());
  return quad(h);
}

namespace {

constexpr double kLi2 = 1.045163780117492784844588889194613136522615578151;

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4 * fm + fb);
}

double adaptive_simpson(double a, double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = 1.0 / std::log(lm), frm = 1.0 / std::log(rm);
  double left = simpson(a, m, fa, flm, fm);
  double right = simpson(m, b, fm, frm, fb);
  if (depth <= 0 || std::fabs(left + right - whole) <= 15 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         adaptive_simpson(m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

}  // namespace

double li(double x) {
  if (!(x >= 2)) throw DomainError("li(x) requires x >= 2");
  if (x == 2) return kLi2;
  double fa = 1.0 / std::log(2.0), fb = 1.0 / std::log(x);
  double m = 0.5 * (2.0 + x);
  double fm = 1.0 / std::log(m);
  double whole = simpson(2.0, x, fa, fm, fb);
  // Absolute tolerance scaled to a crude size estimate keeps the relative
  // error near 1e-12, well inside the 1e-10 contract.
  double tol = std::max(whole, 1.0) * 1e-12;
  return kLi2 + adaptive_simpson(2.0, x, fa, fm, fb, whole, tol, 60);
}

double ps_main_term(const AsymptoticModel& m, double x) {
  if (!(x > 1)) throw DomainError("ps_main_term requires x > 1");
  double g = m.genus();
  return std::pow(g - 1.0, g) * x / std::pow(std::log(x), g + 1);
}

double local_limit_term(const AsymptoticModel& m, const HomologyVector& beta, double x) {
  double L = std::log(x);
  double q = m.quad(beta);
  return std::exp(-q / (2 * m.sigma2() * L)) /
         std::pow(2 * M_PI * m.sigma2() * L, m.genus()) * li(x);
}

double A_weight(const AsymptoticModel& m, const HomologyVector& beta, double x) {
  if (!(x > 1)) throw DomainError("A_weight requires x > 1");
  double L = std::log(x);
  double q = m.quad(beta);
  return 4 * std::sqrt(x) * std::exp(-q / (2 * m.sigma2() * L)) /
         std::pow(2 * M_PI * m.sigma2() * L, m.genus());
}

double pair_main_term(const AsymptoticModel& m, const HomologyVector& beta, double x1,
                      double x2) {
  double L1 = std::log(x1), L2 = std::log(x2);
  double q = m.quad(beta);
  return std::exp(-q / (2 * m.sigma2() * L2)) /
         std::pow(2 * M_PI * m.sigma2() * (L1 + L2), m.genus()) * (x1 * x2) / (L1 * L2);
}

double R2_main_term(const AsymptoticModel& m, const HomologyVector& beta, double x1,
                    double x2) {
  double L1 = std::log(x1), L2 = std::log(x2);
  double q = m.quad(beta);
  return 16 * std::sqrt(x1 * x2) * std::exp(-q / (2 * m.sigma2() * L2)) /
         std::pow(2 * M_PI * m.sigma2() * (L1 + L2), m.genus());
}

double g_combined(double x1, double x2) {
  if (!(x1 > 1) || !(x2 > 1)) throw DomainError("g_combined requires x1, x2 > 1");
  double L1 = std::log(x1), L2 = std::log(x2);
  return L1 * L2 / (L1 + L2);
}

namespace {

// Enumerates alpha in Z^dim with ||alpha||_m <= window, lexicographic order.
template <typename F>
void lattice_walk(unsigned dim, double window, HomNorm kind, std::vector<int>& alpha,
                  unsigned coord, int used, F&& f) {
  int w = static_cast<int>(std::floor(window));
  if (coord == dim) {
    f(alpha);
    return;
  }
  int budget = kind == HomNorm::Sum ? w - used : w;
  for (int v = -budget; v <= budget; ++v) {
    alpha[coord] = v;
    lattice_walk(dim, window, kind, alpha, coord + 1,
                 kind == HomNorm::Sum ? used + std::abs(v) : used, f);
  }
  alpha[coord] = 0;
}

}  // namespace

GaussianCheck gaussian_convolution_check(const AsymptoticModel& m, const HomologyVector& beta,
                                         double L1, double L2, double window,
                                         HomNorm norm_kind) {
  const unsigned dim = 2 * m.genus();
  if (beta.size() != dim) throw DomainError("beta dimension mismatch");
  const double s2 = m.sigma2();
  long double lhs = 0;
  std::vector<int> alpha(dim, 0);
  HomologyVector av(dim), abv(dim);
  lattice_walk(dim, window, norm_kind, alpha, 0, 0, [&](const std::vector<int>& a) {
    for (unsigned i = 0; i < dim; ++i) {
      av[i] = a[i];
      abv[i] = a[i] + beta[i];
    }
    double q1 = m.quad(av);
    double q2 = m.quad(abv);
    lhs += std::exp(-q1 / (2 * s2 * L1) - q2 / (2 * s2 * L2));
  });
  double g12 = L1 * L2 / (L1 + L2);
  double rhs = std::exp(-m.quad(beta) / (2 * s2 * (L1 + L2))) *
               std::pow(2 * M_PI * s2 * g12, m.genus());
  GaussianCheck out;
  out.lhs = static_cast<double>(lhs);
  out.rhs = rhs;
  out.rel_err = std::fabs(out.lhs - rhs) / rhs;
  return out;
}

CovarianceEstimate estimate_covariance(const Census& c, double l_lo, double l_hi,
                                       std::size_t min_samples) {
  const unsigned dim = 2 * c.genus();
  std::vector<long double> acc(static_cast<std::size_t>(dim) * dim, 0.0L);
  std::size_t n = 0;
  for (const auto& r : c.records()) {
    if (r.multiplicity != 1) continue;
    double l = r.len_hi + r.len_lo;
    if (l < l_lo || l > l_hi) continue;
    double inv_sqrt_l = 1.0 / std::sqrt(l);
    ++n;
    for (unsigned i = 0; i < dim; ++i)
      for (unsigned j = 0; j < dim; ++j)
        acc[i * dim + j] +=
            static_cast<long double>(r.hom[i] * inv_sqrt_l) * (r.hom[j] * inv_sqrt_l);
  }
  if (n < min_samples)
    throw InsufficientData("covariance estimate needs >= " + std::to_string(min_samples) +
                           " primitive classes in the window, found " + std::to_string(n));
  SymMatrix C;
  C.dim = dim;
  C.a.resize(static_cast<std::size_t>(dim) * dim);
  for (unsigned i = 0; i < dim * dim; ++i) C.a[i] = static_cast<double>(acc[i] / n);
  double d = C.det();
  if (!(d > 0)) throw InsufficientData("sample covariance is degenerate");
  CovarianceEstimate out;
  out.sigma2_hat = std::pow(d, 1.0 / dim);
  out.N_hat = C;
  for (double& v : out.N_hat.a) v /= out.sigma2_hat;
  out.samples = n;
  return out;
}

const char* predictor_name(PredictorKind k) {
  switch (k) {
    case PredictorKind::Pi: return "pi";
    case PredictorKind::PiBeta: return "pi_beta";
    case PredictorKind::PiBetaLead: return "pi_beta_lead";
    case PredictorKind::RBeta: return "R_beta";
    case PredictorKind::Pair: return "pair";
    case PredictorKind::R2: return "R2";
    case PredictorKind::P2Relation: return "P2_relation";
  }
  return "?";
}

ComparisonReport compare(const Census& c, const AsymptoticModel& m,
                         const std::vector<CompareQuery>& queries) {
  ComparisonReport rep;
  rep.census_id = c.representation_id();
  rep.genus = m.genus();
  rep.sigma2 = m.sigma2();
  rep.N_entries = m.N().a;
  double lstar = c.size() ? c.completeness_length().to_double() : 0.0;

  for (const CompareQuery& q : queries) {
    CompareRow row;
    row.fn = q.fn;
    row.beta = q.beta;
    row.x1 = q.x1;
    row.x2 = q.x2;
    bool single_cutoff = q.fn == PredictorKind::Pi || q.fn == PredictorKind::PiBeta ||
                         q.fn == PredictorKind::PiBetaLead || q.fn == PredictorKind::RBeta;
    double xmax = single_cutoff ? q.x1 : std::max(q.x1, q.x2);
    row.complete = c.size() > 0 && std::log(xmax) <= lstar;
    switch (q.fn) {
      case PredictorKind::Pi:
        row.observed = static_cast<double>(pi_count(c, q.x1));
        row.predicted = li(q.x1);
        break;
      case PredictorKind::PiBeta:
        row.observed = static_cast<double>(pi_beta(c, q.beta, q.x1));
        row.predicted = local_limit_term(m, q.beta, q.x1);
        break;
      case PredictorKind::PiBetaLead:
        row.observed = static_cast<double>(pi_beta(c, q.beta, q.x1));
        row.predicted = ps_main_term(m, q.x1);
        break;
      case PredictorKind::RBeta:
        row.observed = R_beta(c, q.beta, q.x1);
        row.predicted = A_weight(m, q.beta, q.x1);
        break;
      case PredictorKind::Pair: {
        PairQuery pq{q.beta, q.x1, q.x2};
        row.observed = static_cast<double>(pair_count(c, pq));
        row.predicted = pair_main_term(m, q.beta, q.x1, q.x2);
        break;
      }
      case PredictorKind::R2: {
        PairQuery pq{q.beta, q.x1, q.x2};
        row.observed = R2_beta(c, pq);
        row.predicted = R2_main_term(m, q.beta, q.x1, q.x2);
        break;
      }
      case PredictorKind::P2Relation: {
        PairQuery pq{q.beta, q.x1, q.x2};
        row.observed = static_cast<double>(pair_count(c, pq));
        double p2 = P2_beta(c, pq);
        row.predicted = std::sqrt(q.x1 * q.x2) / (16 * std::log(q.x1) * std::log(q.x2)) * p2;
        break;
      }
    }
    row.ratio = row.predicted != 0 ? row.observed / row.predicted
                                   : std::numeric_limits<double>::quiet_NaN();
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

std::vector<CompareQuery> default_queries(const Census& c) {
  std::vector<CompareQuery> qs;
  if (c.size() == 0) return qs;
  double x = std::exp(c.completeness_length().to_double());
  HomologyVector zero(2 * c.genus(), 0);
  HomologyVector e1 = zero;
  e1[0] = 1;
  qs.push_back({PredictorKind::Pi, zero, x, 0});
  qs.push_back({PredictorKind::PiBeta, zero, x, 0});
  qs.push_back({PredictorKind::RBeta, zero, x, 0});
  qs.push_back({PredictorKind::Pair, zero, x, x});
  qs.push_back({PredictorKind::R2, e1, x, x});
  qs.push_back({PredictorKind::P2Relation, zero, x, x});
  return qs;
}

namespace {

std::string beta_str(const HomologyVector& b) {
  std::string s;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(b[i]);
  }
  return s;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string ComparisonReport::to_csv() const {
  std::ostringstream out;
  out << "# census=" << census_id << " genus=" << genus << " sigma2=" << fmt_double(sigma2)
      << " N=";
  for (std::size_t i = 0; i < N_entries.size(); ++i) {
    if (i) out << ';';
    out << fmt_double(N_entries[i]);
  }
  out << "\nfunction,beta,x1,x2,observed,predicted,ratio,complete\n";
  for (const auto& r : rows) {
    out << predictor_name(r.fn) << ',' << beta_str(r.beta) << ',' << fmt_double(r.x1) << ','
        << fmt_double(r.x2) << ',' << fmt_double(r.observed) << ',' << fmt_double(r.predicted)
        << ',' << fmt_double(r.ratio) << ',' << (r.complete ? 1 : 0) << "\n";
  }
  return out.str();
}

std::string ComparisonReport::to_json() const {
  std::ostringstream out;
  out << "{\"census\":\"" << census_id << "\",\"genus\":" << genus
      << ",\"sigma2\":" << fmt_double(sigma2) << ",\"N\":[";
  for (std::size_t i = 0; i < N_entries.size(); ++i) {
    if (i) out << ',';
    out << fmt_double(N_entries[i]);
  }
  out << "],\"rows\":[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (i) out << ',';
    out << "{\"function\":\"" << predictor_name(r.fn) << "\",\"beta\":[";
    for (std::size_t j = 0; j < r.beta.size(); ++j) {
      if (j) out << ',';
      out << r.beta[j];
    }
    out << "],\"x1\":" << fmt_double(r.x1) << ",\"x2\":" << fmt_double(r.x2)
        << ",\"observed\":" << fmt_double(r.observed)
        << ",\"predicted\":" << fmt_double(r.predicted) << ",\"ratio\":" << fmt_double(r.ratio)
        << ",\"complete\":" << (r.complete ? "true" : "false") << "}";
  }
  out << "]}";
  return out.str();
}

}  // namespace geocensus
