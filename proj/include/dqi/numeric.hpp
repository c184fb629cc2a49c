// Shared numeric utilities: exact big-integer combinatorics, entropy,
// compensated summation, float formatting for reports, and binomial
// confidence intervals.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

namespace dqi {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// C(n, k) exactly; 0 when k < 0 or k > n.
BigInt binomial(long n, long k);

// Full row {C(n,0), ..., C(n,n)}.
std::vector<BigInt> binomial_row(long n);

double to_double(const BigInt& v);
double to_double(const BigRational& v);

// log2 of a positive big integer, accurate to double precision.
double log2_big(const BigInt& v);

// Binary entropy h(x) = -x log2 x - (1-x) log2(1-x), with h(0) = h(1) = 0.
// Arguments outside [0, 1] are a caller bug and trip an assertion-style throw.
double binary_entropy(double x);

// Compensated (Kahan) accumulator. Summation order is part of the workbench's
// reproducibility contract, so parallel reductions sum fixed-size chunks with
// one of these per chunk and merge the chunk totals in index order.
class KahanSum {
  public:
    void add(double x) {
        double y = x - compensation_;
        double t = sum_ + y;
        compensation_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

  private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

// Shortest round-trip decimal representation, capped at 12 significant digits,
// locale-independent. Used for every float written to CSV/JSON reports.
std::string format_float(double v);

struct WilsonInterval {
    double lower = 0.0;
    double upper = 0.0;
};

// 95% Wilson score interval for a binomial proportion (z = 1.96).
WilsonInterval wilson_interval(uint64_t successes, uint64_t trials);

// Number of fixed-size chunks a length-n reduction splits into. Chunk size is
// a compile-time constant so serial and parallel runs produce identical sums.
inline constexpr size_t kReductionChunk = 4096;

// Deterministic sum of f(i) for i in [0, n): per-chunk Kahan, chunk totals
// merged in index order. With OpenMP enabled the chunks run in parallel;
// the result is bit-identical either way.
template <typename F>
double chunked_sum(size_t n, F&& f) {
    const size_t nchunks = (n + kReductionChunk - 1) / kReductionChunk;
    std::vector<double> partial(nchunks, 0.0);
#if defined(DQI_HAVE_OPENMP)
#pragma omp parallel for schedule(static)
#endif
    for (long long c = 0; c < static_cast<long long>(nchunks); ++c) {
        const size_t begin = static_cast<size_t>(c) * kReductionChunk;
        const size_t end = begin + kReductionChunk < n ? begin + kReductionChunk : n;
        KahanSum acc;
        for (size_t i = begin; i < end; ++i) acc.add(f(i));
        partial[static_cast<size_t>(c)] = acc.value();
    }
    KahanSum total;
    for (double p : partial) total.add(p);
    return total.value();
}

} // namespace dqi
