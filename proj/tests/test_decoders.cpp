#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "dqi/decoders.hpp"
#include "dqi/errors.hpp"
#include "dqi/instance.hpp"
#include "dqi/rng.hpp"
#include "support.hpp"

using namespace dqi;

namespace {

// Test-side modular arithmetic, independent of FieldCtx.
uint32_t tpow(uint32_t base, uint64_t e, uint32_t p) {
    uint64_t acc = 1, b = base % p;
    while (e) {
        if (e & 1) acc = acc * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<uint32_t>(acc);
}

uint32_t smallest_generator(uint32_t p) {
    for (uint32_t g = 2; g < p; ++g) {
        uint32_t order = 1, x = g;
        while (x != 1) {
            x = static_cast<uint32_t>(static_cast<uint64_t>(x) * g % p);
            ++order;
        }
        if (order == p - 1) return g;
    }
    return 1;
}

// Power-sum syndrome of an error vector, computed from first principles:
// s_j = sum_i y_i * (g^i)^j mod p.
FpVector power_sums(const FpVector& y, size_t n, uint32_t p) {
    const uint32_t g = smallest_generator(p);
    FpVector s(n, 0);
    for (size_t i = 0; i < y.size(); ++i) {
        if (y[i] == 0) continue;
        for (size_t j = 0; j < n; ++j) {
            const uint64_t term = static_cast<uint64_t>(y[i]) * tpow(tpow(g, i, p), j, p);
            s[j] = static_cast<uint32_t>((s[j] + term) % p);
        }
    }
    return s;
}

size_t weight(const FpVector& y) {
    return static_cast<size_t>(std::count_if(y.begin(), y.end(), [](uint32_t v) { return v != 0; }));
}

FpVector random_error(Rng& rng, size_t m, size_t w, uint32_t p) {
    FpVector y(m, 0);
    for (size_t pos : rng.sample_without_replacement(m, w))
        y[pos] = (p == 2) ? 1 : static_cast<uint32_t>(rng.below(p - 1)) + 1;
    return y;
}

SparseParity hand_system(size_t bits, size_t checks,
                         const std::vector<std::vector<uint32_t>>& check_bits) {
    SparseParity h;
    h.bits = bits;
    h.checks = checks;
    h.check_bits = check_bits;
    h.bit_checks.assign(bits, {});
    for (size_t c = 0; c < checks; ++c)
        for (uint32_t b : check_bits[c]) h.bit_checks[b].push_back(static_cast<uint32_t>(c));
    return h;
}

bool same_outcome(const DecodeOutcome& a, const DecodeOutcome& b) {
    return a.status == b.status && a.error_vector == b.error_vector &&
           a.iterations == b.iterations && a.residual_weight == b.residual_weight;
}

} // namespace

TEST_CASE("algebraic decoder accepts the zero syndrome") {
    const auto inst = gen_opi(13, 4, 7);
    const auto out = bw_decode(inst, FpVector(4, 0));
    CHECK(out.status == DecodeStatus::success);
    CHECK(out.iterations == 0);
    CHECK(out.residual_weight == 0);
    CHECK(out.error_vector == FpVector(12, 0));
}

TEST_CASE("algebraic decoder recovers every error within the certified radius") {
    const std::vector<std::pair<uint32_t, size_t>> shapes = {{7, 3}, {11, 5}, {13, 6}};
    for (const auto& [p, n] : shapes) {
        const auto inst = gen_opi(p, n, 42);
        for (size_t w = 1; w <= n / 2; ++w) {
            Rng rng = Rng::substream(5, "bw-trials", p * 100 + w);
            for (size_t trial = 0; trial < 150; ++trial) {
                const FpVector y = random_error(rng, inst.m, w, p);
                const FpVector s = power_sums(y, n, p); // independent of the library
                const auto out = bw_decode(inst, s);
                REQUIRE(out.status == DecodeStatus::success);
                REQUIRE(out.error_vector == y);
                CHECK(out.iterations == w);
            }
        }
    }
}

TEST_CASE("algebraic decoder is never silently wrong beyond the certified radius") {
    const uint32_t p = 13;
    const size_t n = 4; // certified radius 2
    const auto inst = gen_opi(p, n, 9);
    Rng rng = Rng::substream(11, "bw-beyond", 0);
    size_t returned = 0;
    for (size_t trial = 0; trial < 200; ++trial) {
        const FpVector y = random_error(rng, inst.m, 3, p);
        const FpVector s = power_sums(y, n, p);
        const auto out = bw_decode(inst, s, 3);
        if (out.status == DecodeStatus::failure) continue;
        ++returned;
        // Whatever comes back must reproduce the full syndrome...
        CHECK(power_sums(out.error_vector, n, p) == s);
        // ...and the certification label must match the weight found.
        const size_t w = weight(out.error_vector);
        CHECK(out.iterations == w);
        if (out.status == DecodeStatus::success) {
            CHECK(w <= n / 2);
        } else {
            CHECK(out.status == DecodeStatus::detected_ambiguity);
            CHECK(w == 3);
        }
    }
    CHECK(returned > 0);

    // With the default cap (floor((n+1)/2) = 2) a weight-3 pattern is only
    // reported when a lighter coset representative exists, always certified.
    Rng rng2 = Rng::substream(11, "bw-beyond", 1);
    for (size_t trial = 0; trial < 100; ++trial) {
        const FpVector y = random_error(rng2, inst.m, 3, p);
        const auto out = bw_decode(inst, power_sums(y, n, p));
        if (out.status == DecodeStatus::failure) continue;
        CHECK(out.status == DecodeStatus::success);
        CHECK(weight(out.error_vector) <= 2);
        CHECK(power_sums(out.error_vector, n, p) == power_sums(y, n, p));
    }
}

TEST_CASE("algebraic decoder is deterministic and validates its inputs") {
    const auto inst = gen_opi(11, 5, 3);
    Rng rng = Rng::substream(2, "bw-det", 0);
    const FpVector y = random_error(rng, inst.m, 2, 11);
    const FpVector s = power_sums(y, 5, 11);
    CHECK(same_outcome(bw_decode(inst, s), bw_decode(inst, s)));

    CHECK_THROWS_AS(bw_decode(gen_gallager(2, 3, 4, 1), FpVector(8, 0)), Error);

    auto tampered = inst;
    tampered.rows[1][1].second = (tampered.rows[1][1].second + 1) % 11;
    CHECK_THROWS_AS(bw_decode(tampered, s), Error);

    auto short_rows = inst;
    short_rows.rows.pop_back();
    short_rows.m -= 1;
    short_rows.v.pop_back();
    short_rows.f_sets.resize(short_rows.m);
    CHECK_THROWS_AS(bw_decode(short_rows, s), Error);

    CHECK_THROWS_AS(bw_decode(inst, FpVector(4, 0)), Error);
    FpVector bad = s;
    bad[0] = 11;
    CHECK_THROWS_AS(bw_decode(inst, bad), Error);
}

TEST_CASE("sparse adjacency matches the transposed bit matrix") {
    const auto inst = gen_gallager(3, 6, 10, 77);
    const auto h = sparse_parity(inst);
    CHECK(h.bits == inst.m);
    CHECK(h.checks == inst.n);
    CHECK(h.edge_count() == inst.m * 3);
    CHECK(h.edge_count() == inst.n * 6);

    const BitMatrix t = bit_b_transpose(inst); // n x m
    for (size_t c = 0; c < h.checks; ++c) {
        size_t deg = 0;
        for (size_t i = 0; i < h.bits; ++i) {
            const bool adj =
                std::binary_search(h.check_bits[c].begin(), h.check_bits[c].end(), i);
            REQUIRE(adj == t.get(c, i));
            deg += adj;
        }
        CHECK(deg == 6);
    }
    for (size_t i = 0; i < h.bits; ++i) CHECK(h.bit_checks[i].size() == 3);

    CHECK_THROWS_AS(sparse_parity(gen_opi(7, 3, 1)), Error);
}

TEST_CASE("belief propagation accepts the zero syndrome at round zero") {
    const auto h = sparse_parity(gen_gallager(3, 6, 50, 5));
    const auto out = bp_decode(h, std::vector<uint8_t>(h.checks, 0));
    CHECK(out.status == DecodeStatus::success);
    CHECK(out.iterations == 0);
    CHECK(out.residual_weight == 0);
    CHECK(weight(out.error_vector) == 0);
}

TEST_CASE("belief propagation resolves a forced tiny system") {
    // Check 0 touches only bit 0, so its syndrome pins that bit; check 1 then
    // determines bit 1.
    const auto h = hand_system(2, 2, {{0}, {0, 1}});
    for (int variant = 0; variant < 3; ++variant) {
        BpConfig cfg;
        cfg.q = 0.2;
        if (variant == 1) cfg.min_sum = true;
        if (variant == 2) cfg.damping = 0.3;
        const auto out = bp_decode(h, {1, 1}, cfg);
        CHECK(out.status == DecodeStatus::success);
        CHECK(out.error_vector == FpVector({1, 0}));
        const auto out2 = bp_decode(h, {1, 0}, cfg);
        CHECK(out2.status == DecodeStatus::success);
        CHECK(out2.error_vector == FpVector({1, 1}));
    }
}

TEST_CASE("belief propagation corrects single flips on a (3,6) system") {
    const auto inst = gen_gallager(3, 6, 200, 13); // m = 1200 bits, n = 600 checks
    const auto h = sparse_parity(inst);
    BpConfig cfg;
    cfg.q = 1.0 / 1200.0;
    const DecodeFn bp = [&](const MaxLinsatInstance&, const FpVector& s) {
        std::vector<uint8_t> sb(s.begin(), s.end());
        return bp_decode(h, sb, cfg);
    };
    const auto r = failure_rate(inst, 1, 400, 21, bp);
    CHECK(r.trials == 400);
    CHECK(r.rate <= 0.01);
}

TEST_CASE("belief propagation corrects five percent error patterns") {
    const auto inst = gen_gallager(3, 6, 200, 17);
    const auto h = sparse_parity(inst);
    BpConfig cfg;
    cfg.q = 0.05;
    const DecodeFn bp = [&](const MaxLinsatInstance&, const FpVector& s) {
        std::vector<uint8_t> sb(s.begin(), s.end());
        return bp_decode(h, sb, cfg);
    };
    const auto r = failure_rate(inst, 60, 200, 3, bp);
    CHECK(r.rate <= 0.05); // at least 95% exact recoveries
}

TEST_CASE("belief propagation reports diagnostics on failure") {
    const auto inst = gen_gallager(3, 6, 200, 19);
    const auto h = sparse_parity(inst);
    Rng rng = Rng::substream(23, "bp-fail", 0);
    const FpVector y = random_error(rng, inst.m, 300, 2); // a quarter flipped
    FpVector s(inst.n, 0);
    for (size_t i = 0; i < inst.m; ++i)
        if (y[i])
            for (const auto& [col, val] : inst.rows[i]) s[col] ^= val;
    BpConfig cfg;
    cfg.q = 0.25;
    cfg.max_iters = 15;
    std::vector<uint8_t> sb(s.begin(), s.end());
    const auto out = bp_decode(h, sb, cfg);
    if (out.status == DecodeStatus::failure) {
        CHECK(out.iterations == 15);
        CHECK(out.residual_weight > 0);
        CHECK(out.error_vector.size() == inst.m);
    } else {
        // If it does converge, the hard decision must reproduce the syndrome.
        FpVector s2(inst.n, 0);
        for (size_t i = 0; i < inst.m; ++i)
            if (out.error_vector[i])
                for (const auto& [col, val] : inst.rows[i]) s2[col] ^= val;
        CHECK(s2 == s);
    }
}

TEST_CASE("failure rate is reproducible and zero inside the certified radius") {
    const auto inst = gen_opi(13, 6, 31);
    const DecodeFn bw = [](const MaxLinsatInstance& i, const FpVector& s) {
        return bw_decode(i, s);
    };
    const auto a = failure_rate(inst, 3, 300, 77, bw);
    CHECK(a.failures == 0);
    CHECK(a.rate == 0.0);
    CHECK(a.interval.lower == 0.0);
    CHECK(a.interval.upper > 0.0);
    const auto b = failure_rate(inst, 3, 300, 77, bw);
    CHECK(a.failures == b.failures);
    CHECK(a.interval.upper == b.interval.upper);

    CHECK_THROWS_AS(failure_rate(inst, 13, 10, 1, bw), Error); // weight > m
    CHECK_THROWS_AS(failure_rate(inst, 1, 0, 1, bw), Error);
}

TEST_CASE("failure rate grows with the error weight across the BP threshold") {
    const auto inst = gen_gallager(3, 6, 200, 29);
    const auto h = sparse_parity(inst);
    const std::vector<size_t> weights = {30, 90, 150, 300};
    std::vector<FailureRateResult> res;
    for (size_t w : weights) {
        BpConfig cfg;
        cfg.q = static_cast<double>(w) / static_cast<double>(inst.m);
        const DecodeFn bp = [&](const MaxLinsatInstance&, const FpVector& s) {
            std::vector<uint8_t> sb(s.begin(), s.end());
            return bp_decode(h, sb, cfg);
        };
        res.push_back(failure_rate(inst, w, 150, 41, bp));
    }
    for (size_t i = 0; i + 1 < res.size(); ++i) {
        const auto sigma = [](const FailureRateResult& r) {
            return std::sqrt(std::max(r.rate * (1.0 - r.rate), 1e-6) /
                             static_cast<double>(r.trials));
        };
        CHECK(res[i].rate <= res[i + 1].rate + 3.0 * (sigma(res[i]) + sigma(res[i + 1])));
    }
    CHECK(res.front().rate <= 0.05);   // far below threshold
    CHECK(res.back().rate >= 0.9);     // far above threshold
}

TEST_CASE("density evolution separates code families") {
    DegreeDistribution d36;
    d36.constraint = {{3, 1.0}};
    d36.variable = {{6, 1.0}};
    const auto r36 = density_evolution_threshold(d36, 30000, 60, 0);
    CHECK(r36.q_star >= 0.07);
    CHECK(r36.q_star <= 0.10);
    CHECK(r36.lo < r36.hi);
    CHECK(r36.hi - r36.lo <= 1.0 / 16384.0 + 1e-12);

    DegreeDistribution low_rate; // more checks than bits: much stronger
    low_rate.constraint = {{3, 1.0}};
    low_rate.variable = {{2, 1.0}};
    const auto rl = density_evolution_threshold(low_rate, 20000, 60, 0);
    CHECK(rl.q_star > r36.q_star + 0.05);

    DegreeDistribution bad;
    bad.constraint = {{3, 0.5}};
    bad.variable = {{6, 1.0}};
    CHECK_THROWS_AS(density_evolution_threshold(bad, 1000, 10, 0), Error);
}

TEST_CASE("bp configuration is validated") {
    const auto h = hand_system(2, 2, {{0}, {0, 1}});
    BpConfig cfg;
    cfg.q = 0.0;
    CHECK_THROWS_AS(bp_decode(h, {0, 0}, cfg), Error);
    cfg.q = 0.2;
    cfg.damping = 1.0;
    CHECK_THROWS_AS(bp_decode(h, {0, 0}, cfg), Error);
    CHECK_THROWS_AS(bp_decode(h, {0}, BpConfig{}), Error);
    CHECK_THROWS_AS(bp_decode(h, {0, 2}, BpConfig{}), Error);
}

TEST_CASE("alist round trip preserves the check system") {
    const auto h = sparse_parity(gen_gallager(3, 6, 5, 101));
    const auto text = to_alist(h);
    const auto back = from_alist(text);
    CHECK(back.bits == h.bits);
    CHECK(back.checks == h.checks);
    CHECK(back.check_bits == h.check_bits);
    CHECK(back.bit_checks == h.bit_checks);

    // Hand-written text for a concrete 2-bit, 2-check system.
    const std::string hand = "2 2\n2 2\n1 2\n2 1\n1 0\n1 2\n1 2\n2 0\n";
    const auto hp = from_alist(hand);
    CHECK(hp.bit_checks == std::vector<std::vector<uint32_t>>({{0}, {0, 1}}));
    CHECK(hp.check_bits == std::vector<std::vector<uint32_t>>({{0, 1}, {1}}));
    CHECK(to_alist(hp) == hand);
}

TEST_CASE("alist parsing rejects malformed and inconsistent inputs") {
    CHECK_THROWS_AS(from_alist("2 2\n2 2\n1 2\n"), Error);           // truncated
    CHECK_THROWS_AS(from_alist("2 x\n"), Error);                     // non-numeric
    CHECK_THROWS_AS(from_alist("0 2\n0 0\n\n\n"), Error);            // empty side
    // Index out of range (bit line references check 3 of 2).
    CHECK_THROWS_AS(from_alist("2 2\n2 2\n1 2\n2 1\n3 0\n1 2\n1 2\n2 0\n"), Error);
    // Nonzero padding.
    CHECK_THROWS_AS(from_alist("2 2\n2 2\n1 2\n2 1\n1 1\n1 2\n1 2\n2 0\n"), Error);
    // Structurally valid but the two adjacency blocks disagree.
    const std::string mismatch = "2 2\n2 2\n1 2\n2 1\n2 0\n1 2\n1 2\n2 0\n";
    CHECK_THROWS_AS(from_alist(mismatch), Error);
    try {
        (void)from_alist(mismatch);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::validation);
    }
}
