#ifndef GEOCENSUS_ASYMPTOTICS_HPP
#define GEOCENSUS_ASYMPTOTICS_HPP

#include <span>
#include <string>
#include <vector>

#include "geocensus/census.hpp"
#include "geocensus/counting.hpp"
#include "geocensus/word.hpp"

namespace geocensus {

// Dense symmetric matrix of dimension 2g, row-major.
struct SymMatrix {
  unsigned dim = 0;
  std::vector<double> a;  // dim*dim entries

  static SymMatrix identity(unsigned dim);
  double& at(unsigned i, unsigned j) { return a[i * dim + j]; }
  double at(unsigned i, unsigned j) const { return a[i * dim + j]; }
  double det() const;            // LU with partial pivoting
  SymMatrix inverse() const;     // throws DomainError if singular
  bool positive_definite() const;  // Cholesky probe
  bool symmetric(double tol) const;
};

// Parameters of every predictor formula: genus, sigma^2 = 1/(2 pi (g-1)),
// and the positive definite symmetric covariance shape N with det N = 1.
// For the Bolza octagon N = I (the symmetry forces a multiple of the
// identity, and det 1 then forces the identity).
class AsymptoticModel {
 public:
  static AsymptoticModel standard(unsigned genus);  // default sigma2, N = I
  static AsymptoticModel with_matrix(unsigned genus, SymMatrix N);
  static AsymptoticModel with_parameters(unsigned genus, double sigma2, SymMatrix N);

  unsigned genus() const { return genus_; }
  double sigma2() const { return sigma2_; }
  const SymMatrix& N() const { return N_; }
  const SymMatrix& N_inverse() const { return N_inv_; }

  // <v, N^-1 v>, the quadratic form in every Gaussian factor.
  double quad(const HomologyVector& v) const;
  double quad(std::span<const std::int16_t> v) const;

 private:
  AsymptoticModel() = default;
  unsigned genus_ = 2;
  double sigma2_ = 0;
  SymMatrix N_, N_inv_;
};

// Logarithmic integral with the offset-from-2 convention:
// li(x) = int_2^x dt/log t + li(2), li(2) = 1.0451637801174927848...
// Adaptive quadrature, relative error <= 1e-10. Throws DomainError for x < 2.
double li(double x);

// (g-1)^g x / log^{g+1} x: the beta-independent leading term of pi_beta.
double ps_main_term(const AsymptoticModel& m, double x);

// e^{-<b,N^-1 b>/(2 sigma^2 log x)} / (2 pi sigma^2 log x)^g * li(x).
double local_limit_term(const AsymptoticModel& m, const HomologyVector& beta, double x);

// A(beta, x) = 4 sqrt(x) e^{-<b,N^-1 b>/(2 sigma^2 log x)} / (2 pi sigma^2 log x)^g,
// the weighted-density predictor for R_beta.
double A_weight(const AsymptoticModel& m, const HomologyVector& beta, double x);

// Pair count main term:
// e^{-<b,N^-1 b>/(2 sigma^2 log x2)} / (2 pi sigma^2 (log x1 + log x2))^g
//   * x1 x2 / (log x1 log x2).
// The exponential deliberately carries log x2 (the second cutoff); under the
// standing size assumption the two choices agree asymptotically.
double pair_main_term(const AsymptoticModel& m, const HomologyVector& beta, double x1,
                      double x2);

// R_2 main term: 16 sqrt(x1 x2) e^{-<b,N^-1 b>/(2 sigma^2 log x2)}
//   / (2 pi sigma^2 (log x1 + log x2))^g.
double R2_main_term(const AsymptoticModel& m, const HomologyVector& beta, double x1,
                    double x2);

// Harmonic combination of logs: (log^-1 x1 + log^-1 x2)^-1.
double g_combined(double x1, double x2);

// Numerical check of the Gaussian lattice-sum identity behind the pair main
// term: L1, L2 are the logs of the cutoffs.
//   lhs = sum over alpha in Z^{2g}, ||alpha||_m <= window of
//         e^{-<a,N^-1 a>/(2 s^2 L1)} e^{-<a+b,N^-1(a+b)>/(2 s^2 L2)}
//   rhs = e^{-<b,N^-1 b>/(2 s^2 (L1+L2))} (2 pi s^2 g12)^g,  g12 = L1 L2/(L1+L2).
struct GaussianCheck {
  double lhs = 0;
  double rhs = 0;
  double rel_err = 0;
};
GaussianCheck gaussian_convolution_check(const AsymptoticModel& m, const HomologyVector& beta,
                                         double L1, double L2, double window,
                                         HomNorm norm_kind = HomNorm::Sum);

// Sample second moment of homology/sqrt(length) over primitive classes with
// length in [l_lo, l_hi]; returns sigma2_hat = det(C)^{1/2g} and
// N_hat = C / sigma2_hat (so det N_hat = 1 by construction).
// Throws InsufficientData below min_samples.
struct CovarianceEstimate {
  double sigma2_hat = 0;
  SymMatrix N_hat;
  std::size_t samples = 0;
};
CovarianceEstimate estimate_covariance(const Census& c, double l_lo, double l_hi,
                                       std::size_t min_samples = 100);

// One row of a census-vs-predictor comparison.
enum class PredictorKind {
  Pi,           // pi(x)            vs li(x)
  PiBeta,       // pi_beta(x)       vs local_limit_term
  PiBetaLead,   // pi_beta(x)       vs ps_main_term (beta-independent)
  RBeta,        // R_beta(x)        vs A_weight
  Pair,         // pi_2^beta(x1,x2) vs pair_main_term
  R2,           // R_2^beta         vs R2_main_term
  P2Relation,   // pi_2^beta        vs (1/16) sqrt(x1 x2)/(log x1 log x2) P_2^beta
};

const char* predictor_name(PredictorKind k);

struct CompareQuery {
  PredictorKind fn;
  HomologyVector beta;
  double x1 = 0;
  double x2 = 0;  // unused for the single-cutoff functions
};

struct CompareRow {
  PredictorKind fn;
  HomologyVector beta;
  double x1 = 0, x2 = 0;
  double observed = 0;
  double predicted = 0;
  double ratio = 0;
  bool complete = true;
};

struct ComparisonReport {
  std::vector<CompareRow> rows;
  std::string census_id;
  unsigned genus = 2;
  double sigma2 = 0;
  std::vector<double> N_entries;

  std::string to_csv() const;
  std::string to_json() const;
};

ComparisonReport compare(const Census& c, const AsymptoticModel& m,
                         const std::vector<CompareQuery>& queries);

// The default query set: all six predictor pairings at the census
// completeness threshold.
std::vector<CompareQuery> default_queries(const Census& c);

}  // namespace geocensus

#endif
