#pragma once

/// Identity checks. Each check evaluates one side of an identity numerically
/// (periodic quadrature, Jackson sum or series) and the other side in closed
/// form, and returns a VerificationReport. Engine errors never escape a check;
/// they produce a failed report whose note carries the diagnostic.

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "qkernel/context.hpp"
#include "qkernel/quadrature.hpp"

namespace qkernel::verify {

using Complex = std::complex<double>;
using Context = QContext<double>;
using Params = std::map<std::string, Complex>;

struct VerificationReport {
  std::string check_id;
  Params params;
  Complex lhs{0};
  Complex rhs{0};
  double abs_err = 0;   ///< |lhs - rhs|
  double rel_err = 0;   ///< abs_err / (1 + max(|lhs|, |rhs|))
  double tol = 0;
  std::int64_t nodes_used = 0;
  bool pass = false;    ///< rel_err <= tol
  double runtime_ms = 0;
  std::string note;     ///< diagnostics; empty when there is nothing to say

  /// Field-wise equality; NaN compares equal to NaN.
  friend bool operator==(const VerificationReport& a, const VerificationReport& b);
};

/// Builds a report with abs_err, rel_err and pass derived from lhs, rhs and tol.
VerificationReport make_report(std::string check_id, Params params, Complex lhs, Complex rhs,
                               double tol, std::int64_t nodes_used, std::string note = {});

enum class ToleranceKind { Quadrature, Series, Bound };

/// 1e-9 for quadrature checks, 1e-11 for series and product checks, 1e-12
/// slack for the inequality check. QKERNEL_TOL, when set to a positive
/// number, replaces all three.
double default_tolerance(ToleranceKind kind);

// Closed forms and numeric sides shared with tests.

/// 1/h_n(beta|q) if m == n, else 0.
Complex thm_1_1_rhs(int m, int n, Complex beta, const Context& ctx);
QuadratureResult<double> thm_1_1_lhs(int m, int n, Complex beta, const Context& ctx);

/// Closed form of int_0^pi C_m(.;gamma) C_n(.;beta) omega_beta; zero when the
/// parities differ or m < n.
Complex thm_1_2_rhs(int m, int n, Complex beta, Complex gamma, const Context& ctx);

/// Diagonal value 2 pi (alpha,beta;q)_inf/(q,alpha beta;q)_inf (1/(1-alpha q^n) + 1/(1-beta q^n)) (alpha beta;q)_n/(q;q)_n.
Complex thm_1_3_diagonal(int n, Complex alpha, Complex beta, const Context& ctx);

struct SeriesSum {
  Complex value;
  double tail_bound = 0;  ///< certified bound on |discarded tail|
  std::size_t terms = 0;
};

/// Right side of the five-parameter q-beta integral, with a certified tail.
SeriesSum thm_1_4_rhs(Complex alpha, Complex beta, Complex s, Complex t, const Context& ctx);

/// G(m, n) = int_0^pi C_m C_n omega_beta for 0 <= m, n <= max_degree.
Eigen::MatrixXcd gram_matrix_thm_1_1(int max_degree, Complex beta, const Context& ctx);

// Checks.

VerificationReport verify_thm_1_1(int m, int n, Complex beta, const Context& ctx,
                                  std::optional<double> tol = {});

VerificationReport verify_thm_1_2(int m, int n, Complex beta, Complex gamma, const Context& ctx,
                                  std::optional<double> tol = {});

/// Which argument the second polynomial factor of the two-parameter orthogonality integrand takes.
enum class SecondFactor { SameAngle, ConjugateAngle };

VerificationReport verify_thm_1_3(int m, int n, Complex alpha, Complex beta, const Context& ctx,
                                  std::optional<double> tol = {},
                                  SecondFactor variant = SecondFactor::SameAngle);

VerificationReport verify_thm_1_4(Complex alpha, Complex beta, Complex s, Complex t,
                                  const Context& ctx, std::optional<double> tol = {});

VerificationReport verify_prop_3_1(Complex a, Complex b, Complex c, Complex x, Complex y,
                                   const Context& ctx, std::optional<double> tol = {});

VerificationReport verify_prop_3_2(int n, Complex a, Complex b, Complex x, Complex y,
                                   const Context& ctx, std::optional<double> tol = {});

VerificationReport verify_rogers_connection(int n, Complex beta, Complex gamma,
                                            std::span<const double> thetas, const Context& ctx,
                                            std::optional<double> tol = {});

/// Uniform grid theta_j = pi (j + 1/2) / grid_size.
std::vector<double> connection_grid(int grid_size);

VerificationReport verify_askey_ismail_chebyshev(int n, int k, Complex beta, const Context& ctx,
                                                 std::optional<double> tol = {});

VerificationReport verify_gf_4_1(Complex beta, double theta, int degree, const Context& ctx,
                                 std::optional<double> tol = {});

VerificationReport verify_prop_4_2(Complex beta, Complex gamma, double theta, int degree,
                                   const Context& ctx, std::optional<double> tol = {});

VerificationReport verify_uniform_bound(int n, double alpha, double beta, int grid_size,
                                        const Context& ctx, std::optional<double> tol = {});

/// 1phi0(a; -; q, z) against (az;q)_inf/(z;q)_inf.
VerificationReport verify_qbinomial_theorem(Complex a, Complex z, const Context& ctx,
                                            std::optional<double> tol = {});

/// 6W5(a; b, c, d; q, aq/bcd) against the Rogers product.
VerificationReport verify_rogers_6phi5(Complex a, Complex b, Complex c, Complex d,
                                       const Context& ctx, std::optional<double> tol = {});

}  // namespace qkernel::verify
