#include "dqi/numeric.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>

#include "dqi/errors.hpp"

namespace dqi {

BigInt binomial(long n, long k) {
    if (k < 0 || k > n || n < 0) return 0;
    if (k > n - k) k = n - k;
    BigInt acc = 1;
    for (long i = 1; i <= k; ++i) {
        acc *= (n - k + i);
        acc /= i;
    }
    return acc;
}

std::vector<BigInt> binomial_row(long n) {
    require(n >= 0, ErrorKind::parameter, "binomial_row: negative n");
    std::vector<BigInt> row(static_cast<size_t>(n) + 1);
    row[0] = 1;
    for (long k = 1; k <= n; ++k) {
        row[static_cast<size_t>(k)] = row[static_cast<size_t>(k - 1)] * (n - k + 1) / k;
    }
    return row;
}

double to_double(const BigInt& v) { return v.convert_to<double>(); }

double to_double(const BigRational& v) { return v.convert_to<double>(); }

double log2_big(const BigInt& v) {
    require(v > 0, ErrorKind::parameter, "log2_big: argument must be positive");
    // Extract the top 64 bits and account for the shift exactly.
    const size_t bits = boost::multiprecision::msb(v) + 1;
    if (bits <= 64) {
        return std::log2(v.convert_to<double>());
    }
    const size_t shift = bits - 64;
    BigInt top = v >> shift;
    return std::log2(top.convert_to<double>()) + static_cast<double>(shift);
}

double binary_entropy(double x) {
    require(x >= 0.0 && x <= 1.0, ErrorKind::parameter, "binary_entropy: argument outside [0,1]");
    if (x == 0.0 || x == 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

std::string format_float(double v) {
    // Shortest representation that round-trips, then cap at 12 significant
    // digits for report stability; std::to_chars is locale-independent.
    char shortest[64];
    auto r = std::to_chars(shortest, shortest + sizeof(shortest), v);
    *r.ptr = '\0';

    // Count significant digits in the shortest form.
    int sig = 0;
    bool seen_nonzero = false;
    for (const char* p = shortest; *p && *p != 'e' && *p != 'E'; ++p) {
        if (*p >= '1' && *p <= '9') {
            seen_nonzero = true;
            ++sig;
        } else if (*p == '0' && seen_nonzero) {
            ++sig;
        }
    }
    if (sig <= 12) return std::string(shortest);

    char capped[64];
    auto r2 = std::to_chars(capped, capped + sizeof(capped), v, std::chars_format::general, 12);
    *r2.ptr = '\0';
    return std::string(capped);
}

WilsonInterval wilson_interval(uint64_t successes, uint64_t trials) {
    require(trials > 0, ErrorKind::parameter, "wilson_interval: zero trials");
    require(successes <= trials, ErrorKind::parameter, "wilson_interval: successes > trials");
    const double z = 1.96;
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = phat + z2 / (2.0 * n);
    const double spread = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
    WilsonInterval out;
    out.lower = std::max(0.0, (center - spread) / denom);
    out.upper = std::min(1.0, (center + spread) / denom);
    return out;
}

} // namespace dqi
