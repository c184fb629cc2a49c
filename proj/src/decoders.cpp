#include "dqi/decoders.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>

#include "dqi/rng.hpp"

namespace dqi {

namespace {

// Checks that B has the transposed-Vandermonde layout bw_decode relies on:
// odd prime modulus, m = p - 1 rows, dense rows with entry (i, j) equal to
// g^{i*j} for the smallest multiplicative generator g.
void require_opi_shape(const MaxLinsatInstance& inst, const FieldCtx& F) {
    require(inst.p >= 3, ErrorKind::parameter,
            "algebraic decoding needs an odd prime modulus, got p = " + std::to_string(inst.p));
    require(inst.m == static_cast<size_t>(inst.p) - 1, ErrorKind::parameter,
            "algebraic decoding needs m = p - 1 rows");
    require(inst.n >= 1 && inst.n <= inst.m, ErrorKind::parameter,
            "algebraic decoding needs 1 <= n <= m columns");
    const uint32_t g = F.primitive_element();
    for (size_t i = 0; i < inst.m; ++i) {
        const auto& row = inst.rows[i];
        require(row.size() == inst.n, ErrorKind::parameter,
                "algebraic decoding needs dense rows");
        for (size_t j = 0; j < inst.n; ++j) {
            require(row[j].first == j, ErrorKind::parameter,
                    "algebraic decoding needs columns in order 0..n-1");
            require(row[j].second == F.pow(g, static_cast<uint64_t>(i) * j),
                    ErrorKind::parameter,
                    "matrix entries do not follow the geometric-row layout");
        }
    }
}

} // namespace

DecodeOutcome bw_decode(const MaxLinsatInstance& inst, const FpVector& syndrome,
                        size_t ell_cap) {
    const FieldCtx F(inst.p);
    require_opi_shape(inst, F);
    const size_t m = inst.m;
    const size_t n = inst.n;
    require(syndrome.size() == n, ErrorKind::parameter, "syndrome length must equal n");
    for (uint32_t s : syndrome)
        require(s < inst.p, ErrorKind::parameter, "syndrome entry out of field range");

    DecodeOutcome out;
    out.error_vector.assign(m, 0);
    out.residual_weight =
        static_cast<size_t>(std::count_if(syndrome.begin(), syndrome.end(),
                                          [](uint32_t s) { return s != 0; }));

    if (out.residual_weight == 0) {
        out.status = DecodeStatus::success;
        out.iterations = 0;
        out.residual_weight = 0;
        return out;
    }

    // Evaluation point attached to row i: alpha_i = g^i. The syndrome entries
    // are the power sums s_j = sum_{i in support} y_i alpha_i^j, j = 0..n-1.
    const uint32_t g = F.primitive_element();
    std::vector<uint32_t> alpha(m);
    for (size_t i = 0; i < m; ++i) alpha[i] = F.pow(g, i);

    const size_t certified = n / 2;
    size_t cap = (ell_cap == SIZE_MAX) ? (n + 1) / 2 : ell_cap;
    cap = std::min(cap, n - 1); // the locator system needs at least one equation
    cap = std::min(cap, m);

    for (size_t t = 1; t <= cap; ++t) {
        // Locator coefficients l_1..l_t of L(z) = 1 + l_1 z + ... + l_t z^t,
        // whose roots are the inverses of the support's evaluation points.
        // They satisfy, for every window position j:
        //   sum_k l_k s_{j+t-k} = -s_{j+t}.
        const size_t rows = n - t;
        FpMatrix key(rows, t);
        FpVector rhs(rows);
        for (size_t j = 0; j < rows; ++j) {
            for (size_t k = 1; k <= t; ++k) key.at(j, k - 1) = syndrome[j + t - k];
            rhs[j] = F.neg(syndrome[j + t]);
        }
        FpSolveResult sol = solve_particular(F, key, rhs);
        if (!sol.ok) continue;

        // Roots of L among the available evaluation points give the support.
        std::vector<size_t> support;
        for (size_t i = 0; i < m; ++i) {
            const uint32_t z = F.inv(alpha[i]);
            uint32_t acc = sol.x[t - 1];
            for (size_t k = t - 1; k >= 1; --k) acc = F.add(F.mul(acc, z), sol.x[k - 1]);
            acc = F.add(F.mul(acc, z), 1);
            if (acc == 0) support.push_back(i);
            if (support.size() > t) break;
        }
        if (support.size() != t) continue;

        // Magnitudes from the first t power sums (Vandermonde system).
        FpMatrix van(t, t);
        FpVector vrhs(t);
        for (size_t j = 0; j < t; ++j) {
            for (size_t c = 0; c < t; ++c) van.at(j, c) = F.pow(alpha[support[c]], j);
            vrhs[j] = syndrome[j];
        }
        FpSolveResult mag = solve_particular(F, van, vrhs);
        if (!mag.ok) continue;
        if (std::any_of(mag.x.begin(), mag.x.end(), [](uint32_t v) { return v == 0; }))
            continue;

        // Mandatory certification against the full syndrome before reporting.
        bool verified = true;
        for (size_t j = 0; j < n && verified; ++j) {
            uint32_t acc = 0;
            for (size_t c = 0; c < t; ++c)
                acc = F.add(acc, F.mul(mag.x[c], F.pow(alpha[support[c]], j)));
            verified = (acc == syndrome[j]);
        }
        if (!verified) continue;

        for (size_t c = 0; c < t; ++c) out.error_vector[support[c]] = mag.x[c];
        out.status = (t <= certified) ? DecodeStatus::success : DecodeStatus::detected_ambiguity;
        out.iterations = t;
        out.residual_weight = 0;
        return out;
    }

    out.status = DecodeStatus::failure;
    out.iterations = cap;
    return out;
}

size_t SparseParity::edge_count() const {
    size_t e = 0;
    for (const auto& c : check_bits) e += c.size();
    return e;
}

SparseParity sparse_parity(const MaxLinsatInstance& inst) {
    require(inst.p == 2, ErrorKind::parameter, "sparse check systems require modulus 2");
    SparseParity h;
    h.bits = inst.m;
    h.checks = inst.n;
    h.check_bits.assign(inst.n, {});
    h.bit_checks.assign(inst.m, {});
    for (size_t i = 0; i < inst.m; ++i) {
        for (const auto& [col, val] : inst.rows[i]) {
            if (val == 0) continue;
            h.check_bits[col].push_back(static_cast<uint32_t>(i));
            h.bit_checks[i].push_back(col);
        }
    }
    for (auto& c : h.check_bits) std::sort(c.begin(), c.end());
    for (auto& b : h.bit_checks) std::sort(b.begin(), b.end());
    return h;
}

DecodeOutcome bp_decode(const SparseParity& h, const std::vector<uint8_t>& syndrome,
                        const BpConfig& cfg) {
    require(h.bits > 0 && h.checks > 0, ErrorKind::parameter, "empty check system");
    require(syndrome.size() == h.checks, ErrorKind::parameter,
            "syndrome length must equal the number of checks");
    require(cfg.q > 0.0 && cfg.q < 1.0, ErrorKind::parameter,
            "channel prior must lie strictly inside (0, 1)");
    require(cfg.damping >= 0.0 && cfg.damping < 1.0, ErrorKind::parameter,
            "damping must lie in [0, 1)");
    require(cfg.llr_clamp > 0.0, ErrorKind::parameter, "llr_clamp must be positive");
    for (uint8_t s : syndrome)
        require(s <= 1, ErrorKind::parameter, "syndrome entries must be bits");

    const double L0 = std::log((1.0 - cfg.q) / cfg.q);
    const double clamp = cfg.llr_clamp;
    auto clip = [clamp](double x) { return std::clamp(x, -clamp, clamp); };

    // Edge layout: one id per (bit, incident check) pair, grouped by bit.
    const size_t bits = h.bits;
    const size_t checks = h.checks;
    std::vector<size_t> bit_first(bits + 1, 0);
    for (size_t i = 0; i < bits; ++i) bit_first[i + 1] = bit_first[i] + h.bit_checks[i].size();
    const size_t edges = bit_first[bits];
    std::vector<std::vector<size_t>> check_edges(checks);
    for (size_t i = 0; i < bits; ++i)
        for (size_t k = 0; k < h.bit_checks[i].size(); ++k)
            check_edges[h.bit_checks[i][k]].push_back(bit_first[i] + k);

    std::vector<double> v2c(edges, L0), c2v(edges, 0.0);
    std::vector<uint8_t> y(bits, 0);

    auto mismatches = [&]() {
        size_t bad = 0;
        for (size_t c = 0; c < checks; ++c) {
            uint8_t parity = 0;
            for (uint32_t b : h.check_bits[c]) parity ^= y[b];
            bad += (parity != syndrome[c]);
        }
        return bad;
    };

    DecodeOutcome out;
    auto decide = [&]() {
        for (size_t i = 0; i < bits; ++i) {
            double total = L0;
            for (size_t e = bit_first[i]; e < bit_first[i + 1]; ++e) total += c2v[e];
            y[i] = total < 0.0 ? 1 : 0;
        }
    };
    auto finish = [&](DecodeStatus status, size_t it, size_t bad) {
        out.status = status;
        out.iterations = it;
        out.residual_weight = bad;
        out.error_vector.assign(bits, 0);
        for (size_t i = 0; i < bits; ++i) out.error_vector[i] = y[i];
        return out;
    };

    decide(); // round 0: prior-only decision (all zero for q < 1/2)
    size_t bad = mismatches();
    if (bad == 0) return finish(DecodeStatus::success, 0, 0);

    std::vector<double> fwd, bwd;
    for (size_t it = 1; it <= cfg.max_iters; ++it) {
        for (size_t c = 0; c < checks; ++c) {
            const auto& es = check_edges[c];
            const size_t d = es.size();
            const double sign0 = syndrome[c] ? -1.0 : 1.0;
            if (d == 0) continue;
            if (!cfg.min_sum) {
                // Sum-product via prefix/suffix tanh products (no division).
                fwd.assign(d + 1, 1.0);
                bwd.assign(d + 1, 1.0);
                for (size_t k = 0; k < d; ++k)
                    fwd[k + 1] = fwd[k] * std::tanh(0.5 * v2c[es[k]]);
                for (size_t k = d; k-- > 0;)
                    bwd[k] = bwd[k + 1] * std::tanh(0.5 * v2c[es[k]]);
                for (size_t k = 0; k < d; ++k) {
                    double t = sign0 * fwd[k] * bwd[k + 1];
                    t = std::clamp(t, -1.0 + 1e-12, 1.0 - 1e-12);
                    double msg = 2.0 * std::atanh(t);
                    if (cfg.damping > 0.0)
                        msg = (1.0 - cfg.damping) * msg + cfg.damping * c2v[es[k]];
                    c2v[es[k]] = clip(msg);
                }
            } else {
                // Min-sum: product of signs and the two smallest magnitudes.
                double min1 = 1e300, min2 = 1e300;
                size_t arg1 = 0;
                int neg = syndrome[c] ? 1 : 0;
                for (size_t k = 0; k < d; ++k) {
                    const double v = v2c[es[k]];
                    if (v < 0.0) ++neg;
                    const double a = std::fabs(v);
                    if (a < min1) {
                        min2 = min1;
                        min1 = a;
                        arg1 = k;
                    } else if (a < min2) {
                        min2 = a;
                    }
                }
                for (size_t k = 0; k < d; ++k) {
                    const double v = v2c[es[k]];
                    int n_excl = neg - (v < 0.0 ? 1 : 0);
                    const double mag = (k == arg1) ? min2 : min1;
                    double msg = (n_excl % 2 ? -1.0 : 1.0) * (d == 1 ? clamp : mag);
                    if (cfg.damping > 0.0)
                        msg = (1.0 - cfg.damping) * msg + cfg.damping * c2v[es[k]];
                    c2v[es[k]] = clip(msg);
                }
            }
        }
        decide();
        bad = mismatches();
        if (bad == 0) return finish(DecodeStatus::success, it, 0);
        for (size_t i = 0; i < bits; ++i) {
            double total = L0;
            for (size_t e = bit_first[i]; e < bit_first[i + 1]; ++e) total += c2v[e];
            for (size_t e = bit_first[i]; e < bit_first[i + 1]; ++e)
                v2c[e] = clip(total - c2v[e]);
        }
    }
    return finish(DecodeStatus::failure, cfg.max_iters, bad);
}

FailureRateResult failure_rate(const MaxLinsatInstance& inst, size_t ell, uint64_t trials,
                               uint64_t seed, const DecodeFn& decode) {
    require(trials >= 1, ErrorKind::parameter, "need at least one trial");
    require(ell <= inst.m, ErrorKind::parameter, "error weight exceeds the number of rows");
    const FieldCtx F(inst.p);

    int64_t failures = 0;
#pragma omp parallel for schedule(dynamic, 8) reduction(+ : failures)
    for (int64_t trial = 0; trial < static_cast<int64_t>(trials); ++trial) {
        Rng rng = Rng::substream(seed, "failure-rate", static_cast<uint64_t>(trial));
        FpVector y(inst.m, 0);
        for (size_t pos : rng.sample_without_replacement(inst.m, ell))
            y[pos] = (inst.p == 2) ? 1
                                   : static_cast<uint32_t>(rng.below(inst.p - 1)) + 1;
        FpVector s(inst.n, 0);
        for (size_t i = 0; i < inst.m; ++i) {
            if (y[i] == 0) continue;
            for (const auto& [col, val] : inst.rows[i])
                s[col] = F.add(s[col], F.mul(val, y[i]));
        }
        const DecodeOutcome out = decode(inst, s);
        const bool ok = out.status != DecodeStatus::failure && out.error_vector == y;
        if (!ok) ++failures;
    }

    FailureRateResult r;
    r.trials = trials;
    r.failures = static_cast<uint64_t>(failures);
    r.rate = static_cast<double>(failures) / static_cast<double>(trials);
    r.interval = wilson_interval(r.failures, trials);
    return r;
}

namespace {

// Edge-perspective degree sampler: picking the degree seen from a uniformly
// random edge weights each node degree d by d * fraction(d).
class EdgeDegreeSampler {
  public:
    explicit EdgeDegreeSampler(const std::map<uint32_t, double>& node_law) {
        double total = 0.0;
        for (const auto& [d, frac] : node_law) total += d * frac;
        require(total > 0.0, ErrorKind::parameter, "degree law has no edges");
        double acc = 0.0;
        for (const auto& [d, frac] : node_law) {
            acc += d * frac / total;
            degrees_.push_back(d);
            cdf_.push_back(acc);
        }
        cdf_.back() = 1.0;
    }

    uint32_t draw(Rng& rng) const {
        const double u = rng.next_double();
        for (size_t i = 0; i < cdf_.size(); ++i)
            if (u < cdf_[i]) return degrees_[i];
        return degrees_.back();
    }

  private:
    std::vector<uint32_t> degrees_;
    std::vector<double> cdf_;
};

} // namespace

ThresholdResult density_evolution_threshold(const DegreeDistribution& dist, size_t samples,
                                            size_t iters, uint64_t seed) {
    validate_distribution(dist);
    require(samples >= 100, ErrorKind::parameter, "population too small");
    require(iters >= 1, ErrorKind::parameter, "need at least one iteration");
    // A bit of the error vector participates in as many checks as its row has
    // entries, so the bit side of the message-passing graph follows the
    // constraint-degree law and the check side the variable-degree law.
    const EdgeDegreeSampler bit_side(dist.constraint);
    const EdgeDegreeSampler check_side(dist.variable);

    uint64_t probe = 0;
    const double kExtinct = 1e-4;
    auto decodable = [&](double q) {
        Rng rng = Rng::substream(seed, "density-evolution", probe++);
        const double L = std::log((1.0 - q) / q);
        std::vector<double> bit_pop(samples), check_pop(samples);
        for (double& v : bit_pop) v = rng.bernoulli(q) ? -L : L;
        double err = 1.0;
        for (size_t it = 0; it < iters; ++it) {
            for (double& c : check_pop) {
                const uint32_t dc = check_side.draw(rng);
                double t = 1.0;
                for (uint32_t k = 0; k + 1 < dc; ++k)
                    t *= std::tanh(0.5 * bit_pop[rng.below(samples)]);
                t = std::clamp(t, -1.0 + 1e-12, 1.0 - 1e-12);
                c = 2.0 * std::atanh(t);
            }
            size_t wrong = 0;
            for (double& v : bit_pop) {
                const uint32_t dv = bit_side.draw(rng);
                double total = rng.bernoulli(q) ? -L : L;
                for (uint32_t k = 0; k + 1 < dv; ++k) total += check_pop[rng.below(samples)];
                v = std::clamp(total, -50.0, 50.0);
                wrong += (v < 0.0);
            }
            err = static_cast<double>(wrong) / static_cast<double>(samples);
            if (err == 0.0) return true;
        }
        return err <= kExtinct;
    };

    double lo = 1.0 / 256.0;
    double hi = 0.5;
    if (!decodable(lo))
        throw_numeric("no decodable channel found down to q = " + format_float(lo));
    while (hi - lo > 1.0 / 16384.0) {
        const double mid = 0.5 * (lo + hi);
        (decodable(mid) ? lo : hi) = mid;
    }
    ThresholdResult r;
    r.q_star = 0.5 * (lo + hi);
    r.lo = lo;
    r.hi = hi;
    return r;
}

std::string to_alist(const SparseParity& h) {
    require(h.bits > 0 && h.checks > 0, ErrorKind::parameter, "empty check system");
    size_t max_bit = 0, max_check = 0;
    for (const auto& b : h.bit_checks) max_bit = std::max(max_bit, b.size());
    for (const auto& c : h.check_bits) max_check = std::max(max_check, c.size());
    std::ostringstream os;
    os << h.bits << ' ' << h.checks << '\n';
    os << max_bit << ' ' << max_check << '\n';
    for (size_t i = 0; i < h.bits; ++i)
        os << h.bit_checks[i].size() << (i + 1 < h.bits ? ' ' : '\n');
    for (size_t c = 0; c < h.checks; ++c)
        os << h.check_bits[c].size() << (c + 1 < h.checks ? ' ' : '\n');
    for (const auto& b : h.bit_checks) {
        for (size_t k = 0; k < max_bit; ++k)
            os << (k < b.size() ? b[k] + 1 : 0) << (k + 1 < max_bit ? ' ' : '\n');
    }
    for (const auto& c : h.check_bits) {
        for (size_t k = 0; k < max_check; ++k)
            os << (k < c.size() ? c[k] + 1 : 0) << (k + 1 < max_check ? ' ' : '\n');
    }
    return os.str();
}

SparseParity from_alist(const std::string& text) {
    std::istringstream is(text);
    std::vector<std::vector<long long>> lines;
    std::string line;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::vector<long long> vals;
        long long v;
        while (ls >> v) vals.push_back(v);
        if (!ls.eof()) throw_parameter("alist: non-numeric token");
        if (!vals.empty()) lines.push_back(std::move(vals));
    }
    require(lines.size() >= 4, ErrorKind::parameter, "alist: truncated header");
    require(lines[0].size() == 2 && lines[0][0] > 0 && lines[0][1] > 0, ErrorKind::parameter,
            "alist: first line must hold two positive sizes");
    const size_t bits = static_cast<size_t>(lines[0][0]);
    const size_t checks = static_cast<size_t>(lines[0][1]);
    require(lines.size() == 4 + bits + checks, ErrorKind::parameter,
            "alist: wrong number of lines");
    require(lines[2].size() == bits && lines[3].size() == checks, ErrorKind::parameter,
            "alist: degree list length mismatch");

    SparseParity h;
    h.bits = bits;
    h.checks = checks;
    h.bit_checks.assign(bits, {});
    h.check_bits.assign(checks, {});

    auto read_block = [&lines](size_t first_line, size_t count, size_t limit,
                               const std::vector<long long>& degrees,
                               std::vector<std::vector<uint32_t>>& out) {
        for (size_t i = 0; i < count; ++i) {
            const auto& vals = lines[first_line + i];
            const long long deg = degrees[i];
            require(deg >= 0 && static_cast<size_t>(deg) <= vals.size(), ErrorKind::parameter,
                    "alist: entry list shorter than its degree");
            for (size_t k = 0; k < vals.size(); ++k) {
                const long long v = vals[k];
                if (k < static_cast<size_t>(deg)) {
                    require(v >= 1 && static_cast<size_t>(v) <= limit, ErrorKind::parameter,
                            "alist: index out of range");
                    out[i].push_back(static_cast<uint32_t>(v - 1));
                } else {
                    require(v == 0, ErrorKind::parameter, "alist: padding must be zero");
                }
            }
            std::sort(out[i].begin(), out[i].end());
        }
    };
    read_block(4, bits, checks, lines[2], h.bit_checks);
    read_block(4 + bits, checks, bits, lines[3], h.check_bits);

    // The two adjacency blocks are redundant; they must describe one graph.
    std::vector<std::vector<uint32_t>> from_cols(checks);
    for (size_t i = 0; i < bits; ++i)
        for (uint32_t c : h.bit_checks[i]) from_cols[c].push_back(static_cast<uint32_t>(i));
    for (auto& c : from_cols) std::sort(c.begin(), c.end());
    require(from_cols == h.check_bits, ErrorKind::validation,
            "alist: column and row adjacency blocks disagree");
    return h;
}

} // namespace dqi
