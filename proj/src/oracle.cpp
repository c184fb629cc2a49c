#include "dqi/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <json.hpp>

#include "dqi/errors.hpp"
#include "dqi/io.hpp"
#include "dqi/rng.hpp"

namespace dqi {

GTransform g_transform(const MaxLinsatInstance& inst) {
    const uint32_t p = inst.p;
    GTransform out;
    out.tables.resize(inst.m);
    out.f_bar.resize(inst.m);
    out.phi.resize(inst.m);
    std::optional<uint32_t> shared_r;
    bool uniform = true;
    for (size_t i = 0; i < inst.m; ++i) {
        std::vector<double> f(p, -1.0);
        uint32_t r = 0;
        if (inst.binary()) {
            f[inst.v[i]] = 1.0;
            r = 1;
        } else {
            for (uint32_t c : inst.f_sets[i]) {
                f[c] = 1.0;
                ++r;
            }
        }
        require(r > 0 && r < p, ErrorKind::parameter,
                "g_transform: constraint " + std::to_string(i) +
                    " has a constant value function");
        const double mean = (2.0 * r - p) / p;
        const double dev = 2.0 * std::sqrt(static_cast<double>(r) * (p - r) / p);
        out.f_bar[i] = mean;
        out.phi[i] = dev;
        out.tables[i].resize(p);
        for (uint32_t c = 0; c < p; ++c) out.tables[i][c] = (f[c] - mean) / dev;
        if (!shared_r)
            shared_r = r;
        else if (*shared_r != r)
            uniform = false;
    }
    if (uniform) out.uniform_r = shared_r;
    return out;
}

uint64_t state_count(const MaxLinsatInstance& inst) {
    uint64_t count = 1;
    for (size_t i = 0; i < inst.n; ++i) {
        if (count > (uint64_t(1) << 62) / inst.p) return uint64_t(1) << 63;
        count *= inst.p;
    }
    return count;
}

FpVector decode_assignment(const MaxLinsatInstance& inst, uint64_t rank) {
    FpVector x(inst.n);
    for (size_t i = inst.n; i-- > 0;) {
        x[i] = static_cast<uint32_t>(rank % inst.p);
        rank /= inst.p;
    }
    return x;
}

namespace {

// Per-assignment evaluation shared by the table and streaming paths:
// amplitude via the elementary-symmetric recurrence, satisfied count via the
// instance's own row predicates.
struct StateScan {
    const MaxLinsatInstance& inst;
    GTransform g;
    size_t ell;
    std::vector<double> scaled_w; // w_k / sqrt(p^{n-k} C(m,k))

    StateScan(const MaxLinsatInstance& inst_, size_t ell_,
              const std::vector<double>& w)
        : inst(inst_), g(g_transform(inst_)), ell(ell_) {
        scaled_w.resize(ell + 1);
        for (size_t k = 0; k <= ell; ++k) {
            const double states = std::pow(static_cast<double>(inst.p),
                                           static_cast<double>(inst.n) -
                                               static_cast<double>(k));
            scaled_w[k] =
                w[k] / std::sqrt(states * to_double(binomial(
                                              static_cast<long>(inst.m),
                                              static_cast<long>(k))));
        }
    }

    void eval(uint64_t rank, double& amp, size_t& satisfied) const {
        const FpVector x = decode_assignment(inst, rank);
        std::vector<double> e(ell + 1, 0.0);
        e[0] = 1.0;
        satisfied = 0;
        for (size_t i = 0; i < inst.m; ++i) {
            const uint32_t dot = inst.row_dot(i, x);
            if (inst.row_satisfied(i, dot)) ++satisfied;
            const double gi = g.tables[i][dot];
            const size_t top = std::min(ell, i + 1);
            for (size_t k = top; k >= 1; --k) e[k] += gi * e[k - 1];
        }
        amp = 0.0;
        for (size_t k = 0; k <= ell; ++k) amp += scaled_w[k] * e[k];
    }
};

uint64_t checked_count(const MaxLinsatInstance& inst, uint64_t budget) {
    const uint64_t count = state_count(inst);
    require(count <= budget, ErrorKind::capacity,
            "state enumeration: " + std::to_string(inst.p) + "^" +
                std::to_string(inst.n) + " assignments exceed the budget " +
                std::to_string(budget));
    return count;
}

void check_weights(const MaxLinsatInstance& inst, size_t ell,
                   const std::vector<double>& w) {
    require(ell <= inst.m, ErrorKind::parameter,
            "state enumeration: degree exceeds the constraint count");
    require(w.size() == ell + 1, ErrorKind::parameter,
            "state enumeration: weight vector must have ell+1 entries");
}

} // namespace

DqiStateTable amplitudes(const MaxLinsatInstance& inst, size_t ell,
                         const std::vector<double>& w, uint64_t budget) {
    check_weights(inst, ell, w);
    const uint64_t count = checked_count(inst, budget);
    const StateScan scan(inst, ell, w);

    DqiStateTable out;
    out.instance = inst;
    out.ell = ell;
    out.w = w;
    out.amplitudes.resize(count);
#if defined(DQI_HAVE_OPENMP)
#pragma omp parallel for schedule(static)
#endif
    for (long long r = 0; r < static_cast<long long>(count); ++r) {
        double amp;
        size_t satisfied;
        scan.eval(static_cast<uint64_t>(r), amp, satisfied);
        out.amplitudes[static_cast<size_t>(r)] = amp;
    }
    out.norm2 = chunked_sum(count, [&](size_t i) {
        const double a = out.amplitudes[i];
        return a * a;
    });
    return out;
}

namespace {

Expectation expectation_from(const MaxLinsatInstance& inst, double norm2,
                             double weighted_s) {
    require(norm2 > 0.0, ErrorKind::validation,
            "exact_expectation: state has zero norm");
    Expectation out;
    out.norm2 = norm2;
    out.s = weighted_s / norm2;
    out.f = 2.0 * out.s - static_cast<double>(inst.m);
    return out;
}

} // namespace

Expectation exact_expectation(const DqiStateTable& state) {
    const MaxLinsatInstance& inst = state.instance;
    const double weighted_s = chunked_sum(state.amplitudes.size(), [&](size_t i) {
        const FpVector x = decode_assignment(inst, i);
        size_t satisfied = 0;
        for (size_t row = 0; row < inst.m; ++row)
            if (inst.row_satisfied(row, inst.row_dot(row, x))) ++satisfied;
        const double a = state.amplitudes[i];
        return static_cast<double>(satisfied) * a * a;
    });
    return expectation_from(inst, state.norm2, weighted_s);
}

Expectation exact_expectation(const MaxLinsatInstance& inst, size_t ell,
                              const std::vector<double>& w, uint64_t budget) {
    check_weights(inst, ell, w);
    const uint64_t count = checked_count(inst, budget);
    const StateScan scan(inst, ell, w);

    // One streaming pass, two compensated accumulators per fixed-size chunk;
    // chunk totals merge in index order so the result is bit-stable under
    // any thread count.
    const size_t nchunks = (count + kReductionChunk - 1) / kReductionChunk;
    std::vector<double> part_norm(nchunks, 0.0);
    std::vector<double> part_s(nchunks, 0.0);
#if defined(DQI_HAVE_OPENMP)
#pragma omp parallel for schedule(static)
#endif
    for (long long c = 0; c < static_cast<long long>(nchunks); ++c) {
        const uint64_t begin = static_cast<uint64_t>(c) * kReductionChunk;
        const uint64_t end = std::min<uint64_t>(begin + kReductionChunk, count);
        KahanSum norm_acc, s_acc;
        for (uint64_t r = begin; r < end; ++r) {
            double amp;
            size_t satisfied;
            scan.eval(r, amp, satisfied);
            norm_acc.add(amp * amp);
            s_acc.add(static_cast<double>(satisfied) * amp * amp);
        }
        part_norm[static_cast<size_t>(c)] = norm_acc.value();
        part_s[static_cast<size_t>(c)] = s_acc.value();
    }
    KahanSum norm_total, s_total;
    for (size_t c = 0; c < nchunks; ++c) {
        norm_total.add(part_norm[c]);
        s_total.add(part_s[c]);
    }
    return expectation_from(inst, norm_total.value(), s_total.value());
}

std::vector<uint64_t> sample(const DqiStateTable& state, size_t shots,
                             uint64_t seed) {
    require(shots >= 1, ErrorKind::parameter, "sample: need at least one shot");
    require(state.norm2 > 0.0, ErrorKind::validation,
            "sample: state has zero norm");
    const size_t n = state.amplitudes.size();

    // Alias table (Vose): stable construction order, then two uniform draws
    // per shot.
    std::vector<double> keep(n, 1.0);
    std::vector<size_t> alias(n);
    std::vector<double> scaled(n);
    for (size_t i = 0; i < n; ++i) {
        alias[i] = i;
        const double a = state.amplitudes[i];
        scaled[i] = a * a / state.norm2 * static_cast<double>(n);
    }
    std::vector<size_t> small, large;
    for (size_t i = n; i-- > 0;)
        (scaled[i] < 1.0 ? small : large).push_back(i);
    while (!small.empty() && !large.empty()) {
        const size_t s = small.back();
        small.pop_back();
        const size_t l = large.back();
        keep[s] = scaled[s];
        alias[s] = l;
        scaled[l] -= 1.0 - scaled[s];
        if (scaled[l] < 1.0) {
            large.pop_back();
            small.push_back(l);
        }
    }

    Rng rng(Rng::substream(seed, "oracle-sample", 0));
    std::vector<uint64_t> out(shots);
    for (size_t shot = 0; shot < shots; ++shot) {
        const size_t cell = static_cast<size_t>(rng.below(n));
        out[shot] = rng.next_double() < keep[cell] ? cell : alias[cell];
    }
    return out;
}

BigInt krawtchouk(long m, long k, long t) {
    BigInt acc = 0;
    for (long j = 0; j <= std::min(k, t); ++j) {
        const BigInt term = binomial(t, j) * binomial(m - t, k - j);
        acc += (j % 2 == 0) ? term : -term;
    }
    return acc;
}

namespace {

BigRational rational_from_double(double d) {
    require(std::isfinite(d), ErrorKind::parameter,
            "polynomial coefficients must be finite");
    if (d == 0.0) return BigRational(0);
    int exp2;
    const double mant = std::frexp(d, &exp2);
    const long long imant = std::llround(std::ldexp(mant, 53));
    const int shift = exp2 - 53;
    if (shift >= 0) return BigRational(BigInt(imant) << shift);
    return BigRational(BigInt(imant), BigInt(1) << (-shift));
}

// Solve a dense square rational system in place; throws a numeric error when
// singular.
std::vector<BigRational> solve_rational(std::vector<std::vector<BigRational>> a,
                                        std::vector<BigRational> b) {
    const size_t n = b.size();
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) ++pivot;
        require(pivot < n, ErrorKind::numeric,
                "symmetric-expansion solve: singular value-point system");
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        for (size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col] == 0) continue;
            const BigRational factor = a[row][col] / a[col][col];
            for (size_t j = col; j < n; ++j) a[row][j] -= factor * a[col][j];
            b[row] -= factor * b[col];
        }
    }
    std::vector<BigRational> x(n);
    for (size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

std::vector<double> solve_double(std::vector<std::vector<double>> a,
                                 std::vector<double> b) {
    const size_t n = b.size();
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        for (size_t row = col + 1; row < n; ++row)
            if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
        require(std::abs(a[pivot][col]) > 0.0, ErrorKind::numeric,
                "symmetric-expansion solve: singular value-point system");
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        for (size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col] == 0.0) continue;
            const double factor = a[row][col] / a[col][col];
            for (size_t j = col; j < n; ++j) a[row][j] -= factor * a[col][j];
            b[row] -= factor * b[col];
        }
    }
    std::vector<double> x(n);
    for (size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

BigRational eval_poly_rational(const std::vector<BigRational>& alpha, long value) {
    BigRational acc = 0;
    for (size_t j = alpha.size(); j-- > 0;) acc = acc * value + alpha[j];
    return acc;
}

double eval_poly_double(const std::vector<double>& alpha, double value) {
    double acc = 0.0;
    for (size_t j = alpha.size(); j-- > 0;) acc = acc * value + alpha[j];
    return acc;
}

} // namespace

PolyWeights poly_to_weights(const std::vector<double>& alpha, size_t m,
                            uint32_t p, uint32_t r) {
    require(!alpha.empty(), ErrorKind::parameter,
            "poly_to_weights: empty coefficient vector");
    const size_t ell = alpha.size() - 1;
    require(ell <= m, ErrorKind::parameter,
            "poly_to_weights: polynomial degree exceeds the constraint count");
    require(r > 0 && r < p, ErrorKind::parameter,
            "poly_to_weights: allowed-set size must be in (0, p)");
    const long lm = static_cast<long>(m);

    PolyWeights out;
    if (m <= 64) {
        std::vector<BigRational> ra(alpha.size());
        for (size_t j = 0; j < alpha.size(); ++j) ra[j] = rational_from_double(alpha[j]);
        std::vector<std::vector<BigRational>> mat(ell + 1,
                                                  std::vector<BigRational>(ell + 1));
        std::vector<BigRational> rhs(ell + 1);
        for (size_t t = 0; t <= ell; ++t) {
            for (size_t k = 0; k <= ell; ++k)
                mat[t][k] = BigRational(
                    krawtchouk(lm, static_cast<long>(k), static_cast<long>(t)));
            rhs[t] = eval_poly_rational(ra, lm - 2 * static_cast<long>(t));
        }
        const std::vector<BigRational> u = solve_rational(mat, rhs);
        // The expansion must hold identically, not just at the fitted points.
        for (long t = static_cast<long>(ell) + 1; t <= lm; ++t) {
            BigRational lhs = 0;
            for (size_t k = 0; k <= ell; ++k)
                lhs += u[k] * BigRational(krawtchouk(lm, static_cast<long>(k), t));
            require(lhs == eval_poly_rational(ra, lm - 2 * t), ErrorKind::numeric,
                    "poly_to_weights: expansion fails on held-out value points");
        }
        out.u.resize(ell + 1);
        for (size_t k = 0; k <= ell; ++k) out.u[k] = to_double(u[k]);
    } else {
        std::vector<std::vector<double>> mat(ell + 1, std::vector<double>(ell + 1));
        std::vector<double> rhs(ell + 1);
        double scale = 0.0;
        for (size_t t = 0; t <= ell; ++t) {
            for (size_t k = 0; k <= ell; ++k)
                mat[t][k] = to_double(
                    krawtchouk(lm, static_cast<long>(k), static_cast<long>(t)));
            rhs[t] = eval_poly_double(alpha,
                                      static_cast<double>(lm - 2 * static_cast<long>(t)));
            scale = std::max(scale, std::abs(rhs[t]));
        }
        out.u = solve_double(mat, rhs);
        for (long t = static_cast<long>(ell) + 1; t <= lm; ++t) {
            double lhs = 0.0;
            for (size_t k = 0; k <= ell; ++k)
                lhs += out.u[k] *
                       to_double(krawtchouk(lm, static_cast<long>(k), t));
            const double target = eval_poly_double(alpha, static_cast<double>(lm - 2 * t));
            scale = std::max(scale, std::abs(target));
            require(std::abs(lhs - target) <= 1e-6 * std::max(scale, 1.0),
                    ErrorKind::numeric,
                    "poly_to_weights: expansion fails on held-out value points");
        }
    }

    // Repackage onto the centered unit-power variables: with f = phi*g + mean
    // per constraint, e_k over the raw values expands triangularly in e_j
    // over the centered ones.
    const double mean = (2.0 * r - static_cast<double>(p)) / p;
    const double dev = 2.0 * std::sqrt(static_cast<double>(r) * (p - r) / p);
    std::vector<double> u_centered(ell + 1, 0.0);
    for (size_t j = 0; j <= ell; ++j) {
        double acc = 0.0;
        for (size_t k = j; k <= ell; ++k)
            acc += out.u[k] *
                   to_double(binomial(lm - static_cast<long>(j),
                                      static_cast<long>(k - j))) *
                   std::pow(mean, static_cast<double>(k - j));
        u_centered[j] = acc * std::pow(dev, static_cast<double>(j));
    }
    out.w.resize(ell + 1);
    double norm2 = 0.0;
    for (size_t j = 0; j <= ell; ++j) {
        out.w[j] = u_centered[j] *
                   std::sqrt(to_double(binomial(lm, static_cast<long>(j))) /
                             std::pow(static_cast<double>(p), static_cast<double>(j)));
        norm2 += out.w[j] * out.w[j];
    }
    require(norm2 > 0.0, ErrorKind::parameter,
            "poly_to_weights: zero polynomial");
    for (double& x : out.w) x /= std::sqrt(norm2);
    return out;
}

std::vector<double> weights_to_poly(const std::vector<double>& u, size_t m) {
    require(!u.empty(), ErrorKind::parameter, "weights_to_poly: empty expansion");
    const size_t ell = u.size() - 1;
    require(ell <= m, ErrorKind::parameter,
            "weights_to_poly: expansion degree exceeds the constraint count");
    const long lm = static_cast<long>(m);
    if (m <= 64) {
        std::vector<std::vector<BigRational>> mat(ell + 1,
                                                  std::vector<BigRational>(ell + 1));
        std::vector<BigRational> rhs(ell + 1);
        for (size_t t = 0; t <= ell; ++t) {
            const long value = lm - 2 * static_cast<long>(t);
            BigRational power = 1;
            for (size_t j = 0; j <= ell; ++j) {
                mat[t][j] = power;
                power *= value;
            }
            BigRational q = 0;
            for (size_t k = 0; k <= ell; ++k)
                q += rational_from_double(u[k]) *
                     BigRational(krawtchouk(lm, static_cast<long>(k),
                                            static_cast<long>(t)));
            rhs[t] = q;
        }
        const std::vector<BigRational> alpha = solve_rational(mat, rhs);
        std::vector<double> out(ell + 1);
        for (size_t j = 0; j <= ell; ++j) out[j] = to_double(alpha[j]);
        return out;
    }
    std::vector<std::vector<double>> mat(ell + 1, std::vector<double>(ell + 1));
    std::vector<double> rhs(ell + 1);
    for (size_t t = 0; t <= ell; ++t) {
        const double value = static_cast<double>(lm - 2 * static_cast<long>(t));
        double power = 1.0;
        for (size_t j = 0; j <= ell; ++j) {
            mat[t][j] = power;
            power *= value;
        }
        double q = 0.0;
        for (size_t k = 0; k <= ell; ++k)
            q += u[k] * to_double(krawtchouk(lm, static_cast<long>(k),
                                             static_cast<long>(t)));
        rhs[t] = q;
    }
    return solve_double(mat, rhs);
}

double fidelity_bound(double eps, double eta) {
    require(eps >= 0.0 && eps <= 1.0 && eta >= 0.0 && eta <= 1.0,
            ErrorKind::parameter, "fidelity_bound: arguments must lie in [0, 1]");
    const double slack = 1.0 - eps - eta;
    if (slack <= 0.0) return 0.0;
    return 0.8 * slack * slack;
}

void save_state_table(const DqiStateTable& state, const std::string& path_base) {
    std::string raw(state.amplitudes.size() * sizeof(double), '\0');
    std::memcpy(raw.data(), state.amplitudes.data(), raw.size());
    write_file_atomic(path_base + ".f64", raw);

    nlohmann::json header;
    header["instance"] = nlohmann::json::parse(instance_to_json_string(state.instance));
    header["ell"] = state.ell;
    header["w"] = state.w;
    header["norm2"] = state.norm2;
    header["count"] = state.amplitudes.size();
    header["data"] = path_base + ".f64";
    write_file_atomic(path_base + ".json", header.dump(2) + "\n");
}

DqiStateTable load_state_table(const std::string& path_base) {
    DqiStateTable out;
    try {
        const nlohmann::json header =
            nlohmann::json::parse(read_file(path_base + ".json"));
        out.instance = instance_from_json_string(header.at("instance").dump());
        out.ell = header.at("ell").get<size_t>();
        out.w = header.at("w").get<std::vector<double>>();
        out.norm2 = header.at("norm2").get<double>();
        const size_t count = header.at("count").get<size_t>();
        const std::string raw = read_file(header.at("data").get<std::string>());
        require(raw.size() == count * sizeof(double), ErrorKind::validation,
                "state table data file has the wrong length");
        out.amplitudes.resize(count);
        std::memcpy(out.amplitudes.data(), raw.data(), raw.size());
    } catch (const nlohmann::json::exception& e) {
        throw_parameter(std::string("state table header error: ") + e.what());
    }
    return out;
}

} // namespace dqi
