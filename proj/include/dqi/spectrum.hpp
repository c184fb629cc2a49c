// Closed-form performance predictor: the symmetric tridiagonal operator whose
// principal eigenpair gives the optimal expected satisfied-constraint count,
// plus its large-size limits and the bounds used when the code's dual
// distance is exceeded.
#pragma once

#include <cstdint>
#include <vector>

namespace dqi {

struct TridiagonalSpec {
    size_t m = 0;   // constraint count
    size_t ell = 0; // polynomial degree, 0 <= ell <= m
    double d = 0.0; // diagonal slope
};

// Symmetric tridiagonal matrix of size ell+1: diagonal (0, d, 2d, ..., ell*d),
// off-diagonal a_k = sqrt(k (m - k + 1)) for k = 1..ell.
struct Tridiagonal {
    std::vector<double> diag; // size ell+1
    std::vector<double> off;  // size ell; off[k] couples entries k and k+1
    size_t size() const { return diag.size(); }
};

Tridiagonal build_tridiagonal(const TridiagonalSpec& spec);

// Largest eigenvalue and its unit eigenvector (first nonzero entry positive).
struct EigResult {
    double lambda = 0.0;
    std::vector<double> w;
    double residual = 0.0; // ||A w - lambda w||_2 achieved
};

// Bisection on Sturm counts for lambda_max, then inverse iteration for w.
// Residual is certified <= tol * ||A||; non-convergence raises a numeric
// error carrying the best residual reached.
EigResult principal_eig(const Tridiagonal& tri, double tol = 1e-12);

// w^T A w for a coefficient vector of matching size.
double quadratic_form(const Tridiagonal& tri, const std::vector<double>& w);

// Diagonal slope implied by field size p and allowed-set size r.
double tridiag_slope(uint32_t p, uint32_t r);

// Expected satisfied count m*r/p + (sqrt(r(p-r))/p) * w^T A w for a unit
// 2-norm weight vector w of size ell+1. Valid as a prediction only when the
// caller has checked 2*ell+1 < dual distance; this routine does not.
double expected_satisfied(size_t m, size_t ell, uint32_t p, uint32_t r,
                          const std::vector<double>& w);

// Asymptotic optimal satisfied fraction at degree fraction mu = ell/m and
// allowed fraction rho = r/p: (sqrt(mu(1-rho)) + sqrt(rho(1-mu)))^2, capped
// at 1 once rho > 1 - mu.
double semicircle(double mu, double rho);

// Limit of lambda_max/m at degree fraction mu and slope d: mu*d + 2*sqrt(mu(1-mu)).
// Requires mu <= 1/2 and d >= -(1-2mu)/sqrt(mu(1-mu)).
double asymptotic_eig(double mu, double d);

// Bounds on the balanced objective when up to a zeta fraction of interfering
// dual codewords is tolerated (binary case, mu <= 1/4):
//   average case: 2 sqrt(mu(1-mu)) / (1 + 4 zeta)
//   worst case:   (2 sqrt(mu(1-mu)) - 4 zeta) / (1 + 4 zeta)
// Satisfied fractions follow via s/m = 1/2 + f/(2m). A negative worst-case
// bound is reported as 0 with `worst_clamped` set.
struct BeyondBounds {
    double avg_f_over_m = 0.0;
    double worst_f_over_m = 0.0;
    double avg_s_over_m = 0.0;
    double worst_s_over_m = 0.0;
    bool worst_clamped = false;
};
BeyondBounds beyond_distance_bounds(double mu, double zeta);

// Eigenvalue upper bound 2 sqrt(m) + ell*d + 2 sqrt(ell(m-ell)), ell <= m/2.
double gershgorin_bound(size_t m, size_t ell, double d);

// Unit vector with uniform mass on the top ceil(sqrt(ell)) coordinates;
// its quadratic form lower-bounds lambda_max.
std::vector<double> lower_bound_witness(size_t m, size_t ell);

} // namespace dqi
