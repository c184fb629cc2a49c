#include "dqi/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dqi/errors.hpp"

namespace dqi {

Tridiagonal build_tridiagonal(const TridiagonalSpec& spec) {
    require(spec.ell <= spec.m, ErrorKind::parameter,
            "build_tridiagonal: degree exceeds constraint count");
    Tridiagonal t;
    t.diag.resize(spec.ell + 1);
    t.off.resize(spec.ell);
    for (size_t k = 0; k <= spec.ell; ++k) t.diag[k] = static_cast<double>(k) * spec.d;
    for (size_t k = 1; k <= spec.ell; ++k) {
        t.off[k - 1] = std::sqrt(static_cast<double>(k) *
                                 static_cast<double>(spec.m - k + 1));
    }
    return t;
}

double quadratic_form(const Tridiagonal& tri, const std::vector<double>& w) {
    require(w.size() == tri.size(), ErrorKind::parameter, "quadratic_form: size mismatch");
    double acc = 0.0;
    for (size_t i = 0; i < w.size(); ++i) acc += tri.diag[i] * w[i] * w[i];
    for (size_t i = 0; i + 1 < w.size(); ++i) acc += 2.0 * tri.off[i] * w[i] * w[i + 1];
    return acc;
}

namespace {

double inf_norm(const Tridiagonal& t) {
    double best = 0.0;
    const size_t n = t.size();
    for (size_t i = 0; i < n; ++i) {
        double row = std::abs(t.diag[i]);
        if (i > 0) row += std::abs(t.off[i - 1]);
        if (i + 1 < n) row += std::abs(t.off[i]);
        best = std::max(best, row);
    }
    return best;
}

// Number of eigenvalues strictly below x (Sturm count via LDL^T signs).
size_t sturm_count_below(const Tridiagonal& t, double x) {
    const size_t n = t.size();
    const double tiny = std::numeric_limits<double>::min() * 4.0;
    size_t count = 0;
    double q = t.diag[0] - x;
    if (q < 0) ++count;
    for (size_t i = 1; i < n; ++i) {
        if (q == 0.0) q = tiny;
        q = (t.diag[i] - x) - t.off[i - 1] * t.off[i - 1] / q;
        if (q < 0) ++count;
    }
    return count;
}

// Solve (T - sigma I) x = rhs by tridiagonal LU with partial pivoting
// (one extra superdiagonal of fill-in).
std::vector<double> shifted_solve(const Tridiagonal& t, double sigma,
                                  std::vector<double> rhs) {
    const size_t n = t.size();
    std::vector<double> low(n, 0.0), mid(n, 0.0), up1(n, 0.0), up2(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
        mid[i] = t.diag[i] - sigma;
        if (i > 0) low[i] = t.off[i - 1];
        if (i + 1 < n) up1[i] = t.off[i];
    }
    const double tiny = std::numeric_limits<double>::min() * 4.0;
    for (size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(low[i + 1]) > std::abs(mid[i])) {
            std::swap(mid[i], low[i + 1]);
            std::swap(up1[i], mid[i + 1]);
            std::swap(up2[i], up1[i + 1]);
            std::swap(rhs[i], rhs[i + 1]);
        }
        if (mid[i] == 0.0) mid[i] = tiny;
        const double factor = low[i + 1] / mid[i];
        mid[i + 1] -= factor * up1[i];
        up1[i + 1] -= factor * up2[i];
        rhs[i + 1] -= factor * rhs[i];
    }
    if (mid[n - 1] == 0.0) mid[n - 1] = tiny;
    std::vector<double> x(n);
    for (size_t ii = n; ii-- > 0;) {
        double s = rhs[ii];
        if (ii + 1 < n) s -= up1[ii] * x[ii + 1];
        if (ii + 2 < n) s -= up2[ii] * x[ii + 2];
        x[ii] = s / mid[ii];
    }
    return x;
}

void normalize(std::vector<double>& v) {
    double norm2 = 0.0;
    for (double x : v) norm2 += x * x;
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& x : v) x *= inv;
}

std::vector<double> mat_apply(const Tridiagonal& t, const std::vector<double>& v) {
    const size_t n = t.size();
    std::vector<double> y(n);
    for (size_t i = 0; i < n; ++i) {
        double s = t.diag[i] * v[i];
        if (i > 0) s += t.off[i - 1] * v[i - 1];
        if (i + 1 < n) s += t.off[i] * v[i + 1];
        y[i] = s;
    }
    return y;
}

void fix_sign(std::vector<double>& v) {
    for (double x : v) {
        if (x > 0) return;
        if (x < 0) {
            for (double& y : v) y = -y;
            return;
        }
    }
}

} // namespace

EigResult principal_eig(const Tridiagonal& tri, double tol) {
    require(tol > 0, ErrorKind::parameter, "principal_eig: tolerance must be positive");
    const size_t n = tri.size();
    require(n >= 1, ErrorKind::parameter, "principal_eig: empty matrix");

    EigResult res;
    if (n == 1) {
        res.lambda = tri.diag[0];
        res.w = {1.0};
        res.residual = 0.0;
        return res;
    }

    const double scale = std::max(inf_norm(tri), 1.0);

    // Bisection bracket from Gershgorin disks.
    double lo = tri.diag[0], hi = tri.diag[0];
    for (size_t i = 0; i < n; ++i) {
        double radius = 0.0;
        if (i > 0) radius += std::abs(tri.off[i - 1]);
        if (i + 1 < n) radius += std::abs(tri.off[i]);
        lo = std::min(lo, tri.diag[i] - radius);
        hi = std::max(hi, tri.diag[i] + radius);
    }
    hi += scale * 1e-12 + 1.0;

    const double bisect_tol = scale * std::max(tol * 0.25, 1e-15);
    while (hi - lo > bisect_tol) {
        const double mid = 0.5 * (lo + hi);
        if (sturm_count_below(tri, mid) >= n)
            hi = mid;
        else
            lo = mid;
    }
    double lambda = 0.5 * (lo + hi);

    // Inverse iteration, refreshing the shift with the Rayleigh quotient.
    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    double sigma = lambda;
    double best_residual = std::numeric_limits<double>::infinity();
    std::vector<double> best_v = v;
    double best_lambda = lambda;
    const int kMaxIters = 60;
    for (int iter = 0; iter < kMaxIters; ++iter) {
        v = shifted_solve(tri, sigma, v);
        normalize(v);
        std::vector<double> av = mat_apply(tri, v);
        double rayleigh = 0.0;
        for (size_t i = 0; i < n; ++i) rayleigh += v[i] * av[i];
        double resid = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double r = av[i] - rayleigh * v[i];
            resid += r * r;
        }
        resid = std::sqrt(resid);
        if (resid < best_residual) {
            best_residual = resid;
            best_v = v;
            best_lambda = rayleigh;
        }
        if (resid <= tol * scale) break;
        sigma = rayleigh;
    }
    require(best_residual <= tol * scale, ErrorKind::numeric,
            "principal_eig: no convergence; best residual " + std::to_string(best_residual) +
                " vs bound " + std::to_string(tol * scale));

    fix_sign(best_v);
    res.lambda = best_lambda;
    res.w = std::move(best_v);
    res.residual = best_residual;
    return res;
}

double tridiag_slope(uint32_t p, uint32_t r) {
    require(r >= 1 && r <= p - 1, ErrorKind::parameter, "tridiag_slope: need 1 <= r <= p-1");
    return (static_cast<double>(p) - 2.0 * static_cast<double>(r)) /
           std::sqrt(static_cast<double>(r) * static_cast<double>(p - r));
}

double expected_satisfied(size_t m, size_t ell, uint32_t p, uint32_t r,
                          const std::vector<double>& w) {
    require(r >= 1 && r <= p - 1, ErrorKind::parameter,
            "expected_satisfied: need 1 <= r <= p-1");
    require(w.size() == ell + 1, ErrorKind::parameter,
            "expected_satisfied: weight vector must have ell+1 entries");
    double norm2 = 0.0;
    for (double x : w) norm2 += x * x;
    require(std::abs(norm2 - 1.0) <= 1e-9, ErrorKind::parameter,
            "expected_satisfied: weight vector must have unit 2-norm");

    const double d = tridiag_slope(p, r);
    const Tridiagonal tri = build_tridiagonal({m, ell, d});
    const double rp = static_cast<double>(r) * static_cast<double>(p - r);
    return static_cast<double>(m) * r / p + std::sqrt(rp) / p * quadratic_form(tri, w);
}

double semicircle(double mu, double rho) {
    require(mu >= 0.0 && mu <= 0.5, ErrorKind::parameter, "semicircle: need 0 <= mu <= 1/2");
    require(rho > 0.0 && rho < 1.0, ErrorKind::parameter, "semicircle: need 0 < rho < 1");
    if (rho > 1.0 - mu) return 1.0;
    const double root = std::sqrt(mu * (1.0 - rho)) + std::sqrt(rho * (1.0 - mu));
    return root * root;
}

double asymptotic_eig(double mu, double d) {
    require(mu >= 0.0 && mu <= 0.5, ErrorKind::numeric, "asymptotic_eig: need 0 <= mu <= 1/2");
    if (mu == 0.0) return 0.0;
    const double floor_d = -(1.0 - 2.0 * mu) / std::sqrt(mu * (1.0 - mu));
    require(d >= floor_d - 1e-12, ErrorKind::numeric,
            "asymptotic_eig: slope below admissible floor");
    return mu * d + 2.0 * std::sqrt(mu * (1.0 - mu));
}

BeyondBounds beyond_distance_bounds(double mu, double zeta) {
    require(mu >= 0.0 && mu <= 0.25, ErrorKind::numeric,
            "beyond_distance_bounds: need 0 <= mu <= 1/4");
    require(zeta >= 0.0, ErrorKind::numeric, "beyond_distance_bounds: need zeta >= 0");
    const double core = 2.0 * std::sqrt(mu * (1.0 - mu));
    BeyondBounds out;
    out.avg_f_over_m = core / (1.0 + 4.0 * zeta);
    double worst = (core - 4.0 * zeta) / (1.0 + 4.0 * zeta);
    if (worst < 0.0) {
        worst = 0.0;
        out.worst_clamped = true;
    }
    out.worst_f_over_m = worst;
    out.avg_s_over_m = 0.5 + 0.5 * out.avg_f_over_m;
    out.worst_s_over_m = 0.5 + 0.5 * out.worst_f_over_m;
    return out;
}

double gershgorin_bound(size_t m, size_t ell, double d) {
    require(2 * ell <= m, ErrorKind::parameter, "gershgorin_bound: need ell <= m/2");
    return 2.0 * std::sqrt(static_cast<double>(m)) + static_cast<double>(ell) * d +
           2.0 * std::sqrt(static_cast<double>(ell) * static_cast<double>(m - ell));
}

std::vector<double> lower_bound_witness(size_t m, size_t ell) {
    require(ell <= m, ErrorKind::parameter, "lower_bound_witness: degree exceeds m");
    std::vector<double> w(ell + 1, 0.0);
    if (ell == 0) {
        w[0] = 1.0;
        return w;
    }
    const size_t t = static_cast<size_t>(std::ceil(std::sqrt(static_cast<double>(ell))));
    const double mass = 1.0 / std::sqrt(static_cast<double>(t));
    for (size_t i = ell + 1 - t; i <= ell; ++i) w[i] = mass;
    return w;
}

} // namespace dqi
