#include "dqi/instance.hpp"

#include <algorithm>
#include <unordered_map>

#include <json.hpp>

#include "dqi/io.hpp"
#include "dqi/rng.hpp"

namespace dqi {

using nlohmann::json;

// ---- evaluation ------------------------------------------------------------

uint32_t MaxLinsatInstance::row_dot(size_t i, const FpVector& x) const {
    uint64_t acc = 0;
    for (const auto& [col, val] : rows[i]) {
        acc += static_cast<uint64_t>(val) * x[col];
        if (acc >= (1ULL << 62)) acc %= p;
    }
    return static_cast<uint32_t>(acc % p);
}

bool MaxLinsatInstance::row_satisfied(size_t i, uint32_t dot_value) const {
    if (binary()) return dot_value == v[i];
    const auto& set = f_sets[i];
    return std::binary_search(set.begin(), set.end(), dot_value);
}

size_t MaxLinsatInstance::max_constraint_degree() const {
    size_t d = 0;
    for (const auto& r : rows) d = std::max(d, r.size());
    return d;
}

size_t MaxLinsatInstance::max_variable_degree() const {
    std::vector<size_t> deg(n, 0);
    for (const auto& r : rows)
        for (const auto& [col, val] : r) {
            (void)val;
            ++deg[col];
        }
    size_t d = 0;
    for (size_t c : deg) d = std::max(d, c);
    return d;
}

size_t satisfied_count(const MaxLinsatInstance& inst, const FpVector& x) {
    require(x.size() == inst.n, ErrorKind::parameter, "satisfied_count: x has wrong length");
    for (uint32_t xi : x)
        require(xi < inst.p, ErrorKind::parameter, "satisfied_count: entry outside field");
    size_t count = 0;
    for (size_t i = 0; i < inst.m; ++i) {
        if (inst.row_satisfied(i, inst.row_dot(i, x))) ++count;
    }
    return count;
}

long long objective_value(const MaxLinsatInstance& inst, const FpVector& x) {
    return 2LL * static_cast<long long>(satisfied_count(inst, x)) -
           static_cast<long long>(inst.m);
}

uint32_t primitive_element(uint32_t p) { return FieldCtx(p).primitive_element(); }

void validate_instance(const MaxLinsatInstance& inst) {
    FieldCtx F(inst.p); // validates primality
    require(inst.m >= inst.n && inst.n >= 1, ErrorKind::parameter,
            "instance: need m >= n >= 1");
    require(inst.rows.size() == inst.m, ErrorKind::parameter, "instance: row count != m");
    for (const auto& r : inst.rows) {
        uint32_t prev_col = 0;
        bool first = true;
        for (const auto& [col, val] : r) {
            require(col < inst.n, ErrorKind::parameter, "instance: column out of range");
            require(first || col > prev_col, ErrorKind::parameter,
                    "instance: columns not strictly ascending");
            require(val >= 1 && val < inst.p, ErrorKind::parameter,
                    "instance: coefficient outside [1, p-1]");
            prev_col = col;
            first = false;
        }
    }
    if (inst.binary()) {
        require(inst.v.size() == inst.m, ErrorKind::parameter, "instance: v has wrong length");
        require(inst.f_sets.empty(), ErrorKind::parameter, "instance: f_sets forbidden for p=2");
        for (uint8_t b : inst.v)
            require(b <= 1, ErrorKind::parameter, "instance: v entries must be bits");
    } else {
        require(inst.v.empty(), ErrorKind::parameter, "instance: v forbidden for p>2");
        require(inst.f_sets.size() == inst.m, ErrorKind::parameter,
                "instance: f_sets has wrong length");
        for (const auto& set : inst.f_sets) {
            require(!set.empty() && set.size() <= inst.p - 1, ErrorKind::parameter,
                    "instance: allowed set size outside [1, p-1]");
            for (size_t i = 0; i < set.size(); ++i) {
                require(set[i] < inst.p, ErrorKind::parameter,
                        "instance: allowed value outside field");
                require(i == 0 || set[i] > set[i - 1], ErrorKind::parameter,
                        "instance: allowed set not sorted unique");
            }
        }
    }
    if (inst.meta.planted_x.has_value()) {
        require(satisfied_count(inst, *inst.meta.planted_x) == inst.m, ErrorKind::validation,
                "instance: planted solution does not satisfy all constraints");
    }
}

// ---- dense views -----------------------------------------------------------

FpMatrix dense_b(const MaxLinsatInstance& inst) {
    FpMatrix B(inst.m, inst.n);
    for (size_t i = 0; i < inst.m; ++i)
        for (const auto& [col, val] : inst.rows[i]) B.at(i, col) = val;
    return B;
}

BitMatrix bit_b(const MaxLinsatInstance& inst) {
    require(inst.binary(), ErrorKind::parameter, "bit_b: requires p = 2");
    BitMatrix B(inst.m, inst.n);
    for (size_t i = 0; i < inst.m; ++i)
        for (const auto& [col, val] : inst.rows[i]) {
            (void)val;
            B.set(i, col, true);
        }
    return B;
}

BitMatrix bit_b_transpose(const MaxLinsatInstance& inst) {
    require(inst.binary(), ErrorKind::parameter, "bit_b_transpose: requires p = 2");
    BitMatrix Bt(inst.n, inst.m);
    for (size_t i = 0; i < inst.m; ++i)
        for (const auto& [col, val] : inst.rows[i]) {
            (void)val;
            Bt.set(col, i, true);
        }
    return Bt;
}

// ---- Gallager ensemble -----------------------------------------------------

MaxLinsatInstance gen_gallager(uint32_t k, uint32_t D, size_t b, uint64_t seed, bool plant) {
    require(k >= 1 && D >= 1 && b >= 1, ErrorKind::parameter,
            "gen_gallager: k, D, b must all be >= 1");
    const size_t n = b * k;
    const size_t m = b * D;
    require(m >= n, ErrorKind::parameter, "gen_gallager: needs D >= k so that m >= n");

    Rng rng = Rng::substream(seed, "gallager", 0);

    MaxLinsatInstance inst;
    inst.p = 2;
    inst.m = m;
    inst.n = n;
    inst.rows.assign(m, {});

    // Layer t of the n x m transpose: D identity blocks side by side, columns
    // permuted. Column perm[j] carries a single 1 at row t*b + (j mod b),
    // i.e. constraint perm[j] involves variable t*b + (j mod b).
    std::vector<size_t> perm(m);
    for (uint32_t t = 0; t < k; ++t) {
        for (size_t j = 0; j < m; ++j) perm[j] = j;
        rng.shuffle(perm);
        for (size_t j = 0; j < m; ++j) {
            const uint32_t var = static_cast<uint32_t>(t * b + (j % b));
            inst.rows[perm[j]].emplace_back(var, 1);
        }
    }
    for (auto& row : inst.rows) std::sort(row.begin(), row.end());

    inst.meta.generator = "gallager";
    inst.meta.seed = seed;
    if (plant) {
        FpVector xstar(n);
        for (size_t j = 0; j < n; ++j) xstar[j] = static_cast<uint32_t>(rng.below(2));
        inst.v.resize(m);
        for (size_t i = 0; i < m; ++i)
            inst.v[i] = static_cast<uint8_t>(inst.row_dot(i, xstar));
        inst.meta.planted_x = xstar;
    } else {
        inst.v.resize(m);
        for (size_t i = 0; i < m; ++i) inst.v[i] = static_cast<uint8_t>(rng.below(2));
    }
    validate_instance(inst);
    return inst;
}

// ---- irregular ensemble ----------------------------------------------------

void validate_distribution(const DegreeDistribution& dist) {
    auto check_side = [](const std::map<uint32_t, double>& side, const char* name) {
        require(!side.empty(), ErrorKind::parameter,
                std::string("distribution: empty ") + name + " side");
        double total = 0.0;
        for (const auto& [deg, frac] : side) {
            require(deg >= 1, ErrorKind::parameter,
                    std::string("distribution: ") + name + " degree must be >= 1");
            require(frac >= 0.0, ErrorKind::parameter,
                    std::string("distribution: ") + name + " fraction negative");
            total += frac;
        }
        require(std::abs(total - 1.0) <= 1e-12, ErrorKind::parameter,
                std::string("distribution: ") + name + " fractions sum to " +
                    std::to_string(total) + ", expected 1");
    };
    check_side(dist.variable, "variable");
    check_side(dist.constraint, "constraint");
}

namespace {

// Largest-remainder rounding of count*frac per degree so totals hit `count`
// exactly. Ties and surplus go to higher degrees first (deterministic).
std::map<uint32_t, size_t> round_counts(size_t count, const std::map<uint32_t, double>& side) {
    std::map<uint32_t, size_t> out;
    std::vector<std::pair<double, uint32_t>> remainders; // (-remainder, degree) for sorting
    size_t assigned = 0;
    for (const auto& [deg, frac] : side) {
        const double ideal = static_cast<double>(count) * frac;
        const size_t base = static_cast<size_t>(ideal);
        out[deg] = base;
        assigned += base;
        remainders.push_back({ideal - static_cast<double>(base), deg});
    }
    // Larger remainder first; among equal remainders, larger degree first.
    std::sort(remainders.begin(), remainders.end(),
              [](const auto& a, const auto& b) {
                  if (a.first != b.first) return a.first > b.first;
                  return a.second > b.second;
              });
    require(assigned <= count, ErrorKind::parameter, "distribution: rounding overflow");
    size_t leftover = count - assigned;
    for (size_t i = 0; i < remainders.size() && leftover > 0; ++i, --leftover)
        ++out[remainders[i].second];
    require(leftover == 0, ErrorKind::parameter,
            "distribution: cannot distribute rounding leftover");
    return out;
}

size_t edge_total(const std::map<uint32_t, size_t>& counts) {
    size_t e = 0;
    for (const auto& [deg, c] : counts) e += static_cast<size_t>(deg) * c;
    return e;
}

std::vector<uint32_t> expand_descending(const std::map<uint32_t, size_t>& counts) {
    std::vector<uint32_t> seq;
    for (auto it = counts.rbegin(); it != counts.rend(); ++it)
        seq.insert(seq.end(), it->second, it->first);
    return seq;
}

} // namespace

DegreeSequences integer_degree_sequences(size_t m, size_t n, const DegreeDistribution& dist) {
    validate_distribution(dist);
    std::map<uint32_t, size_t> ccounts = round_counts(m, dist.constraint);
    std::map<uint32_t, size_t> vcounts = round_counts(n, dist.variable);

    const size_t ec = edge_total(ccounts);
    size_t ev = edge_total(vcounts);

    // Rounding can shift each bucket by at most one entity, so the edge-count
    // gap attributable to rounding is bounded by the sum of degrees across
    // both supports. A larger gap means the distributions themselves are
    // inconsistent for this (m, n).
    size_t slack = 0;
    for (const auto& [deg, frac] : dist.constraint) {
        (void)frac;
        slack += deg;
    }
    for (const auto& [deg, frac] : dist.variable) {
        (void)frac;
        slack += deg;
    }
    const long long deficit =
        static_cast<long long>(ev) - static_cast<long long>(ec);
    require(static_cast<size_t>(deficit < 0 ? -deficit : deficit) <= slack,
            ErrorKind::parameter,
            "degree sequences cannot be balanced: constraint-side edges " +
                std::to_string(ec) + ", variable-side edges " + std::to_string(ev) +
                ", deficit " + std::to_string(deficit) + " exceeds rounding slack " +
                std::to_string(slack));

    // Repair on the variable side, one edge at a time, always taking an entity
    // out of the highest occupied bucket.
    auto highest_occupied = [&]() -> uint32_t {
        for (auto it = vcounts.rbegin(); it != vcounts.rend(); ++it)
            if (it->second > 0) return it->first;
        return 0;
    };
    while (ev > ec) {
        const uint32_t d = highest_occupied();
        require(d >= 2, ErrorKind::parameter,
                "degree sequences cannot be balanced: variable degrees cannot drop below 1 "
                "(remaining deficit " + std::to_string(ev - ec) + ")");
        --vcounts[d];
        ++vcounts[d - 1];
        --ev;
    }
    while (ev < ec) {
        const uint32_t d = highest_occupied();
        require(d >= 1, ErrorKind::parameter, "degree sequences: empty variable side");
        --vcounts[d];
        ++vcounts[d + 1];
        ++ev;
    }

    DegreeSequences out;
    out.constraint_degrees = expand_descending(ccounts);
    out.variable_degrees = expand_descending(vcounts);
    return out;
}

MaxLinsatInstance gen_irregular(size_t m, size_t n, const DegreeDistribution& dist,
                                uint64_t seed) {
    require(m >= n && n >= 1, ErrorKind::parameter, "gen_irregular: need m >= n >= 1");
    DegreeSequences seqs = integer_degree_sequences(m, n, dist);

    Rng rng = Rng::substream(seed, "irregular", 0);

    // Stub lists: entity index repeated once per incident edge.
    std::vector<uint32_t> cstub, vstub;
    for (size_t i = 0; i < m; ++i)
        cstub.insert(cstub.end(), seqs.constraint_degrees[i], static_cast<uint32_t>(i));
    for (size_t j = 0; j < n; ++j)
        vstub.insert(vstub.end(), seqs.variable_degrees[j], static_cast<uint32_t>(j));
    require(cstub.size() == vstub.size(), ErrorKind::parameter,
            "gen_irregular: internal edge-count mismatch");
    const size_t E = cstub.size();

    rng.shuffle(vstub);

    // Remove duplicate edges by swapping variable endpoints with a random
    // partner edge; degree sequences are preserved by every swap.
    const int kMaxPasses = 1000;
    bool clean = false;
    for (int pass = 0; pass < kMaxPasses && !clean; ++pass) {
        std::unordered_map<uint64_t, uint32_t> seen; // edge key -> multiplicity
        seen.reserve(E * 2);
        std::vector<size_t> bad;
        for (size_t e = 0; e < E; ++e) {
            const uint64_t key = static_cast<uint64_t>(cstub[e]) * n + vstub[e];
            if (++seen[key] > 1) bad.push_back(e);
        }
        if (bad.empty()) {
            clean = true;
            break;
        }
        for (size_t e : bad) {
            const size_t partner = static_cast<size_t>(rng.below(E));
            std::swap(vstub[e], vstub[partner]);
        }
    }
    require(clean, ErrorKind::capacity,
            "gen_irregular: duplicate edges persist after 1000 repair passes");

    MaxLinsatInstance inst;
    inst.p = 2;
    inst.m = m;
    inst.n = n;
    inst.rows.assign(m, {});
    for (size_t e = 0; e < E; ++e) inst.rows[cstub[e]].emplace_back(vstub[e], 1);
    for (auto& row : inst.rows) std::sort(row.begin(), row.end());

    inst.v.resize(m);
    for (size_t i = 0; i < m; ++i) inst.v[i] = static_cast<uint8_t>(rng.below(2));
    inst.meta.generator = "irregular";
    inst.meta.seed = seed;
    validate_instance(inst);
    return inst;
}

// ---- structured prime-field ensemble ---------------------------------------

MaxLinsatInstance gen_opi(uint32_t p, size_t n, uint64_t seed, bool plant) {
    FieldCtx F(p);
    require(p >= 3, ErrorKind::parameter, "gen_opi: requires an odd prime");
    require(n >= 1 && n < p, ErrorKind::parameter, "gen_opi: requires 1 <= n < p");
    const size_t m = p - 1;
    const uint32_t gamma = F.primitive_element();
    const uint32_t r = p / 2; // allowed-set size

    Rng rng = Rng::substream(seed, "opi", 0);

    MaxLinsatInstance inst;
    inst.p = p;
    inst.m = m;
    inst.n = n;
    inst.rows.assign(m, {});
    for (size_t i = 0; i < m; ++i) {
        inst.rows[i].reserve(n);
        for (size_t j = 0; j < n; ++j) {
            const uint32_t val = F.pow(gamma, static_cast<uint64_t>(i) * j);
            inst.rows[i].emplace_back(static_cast<uint32_t>(j), val);
        }
    }

    inst.meta.generator = "opi";
    inst.meta.seed = seed;

    FpVector xstar;
    if (plant) {
        xstar.resize(n);
        for (size_t j = 0; j < n; ++j) xstar[j] = static_cast<uint32_t>(rng.below(p));
    }

    inst.f_sets.resize(m);
    for (size_t i = 0; i < m; ++i) {
        std::vector<uint32_t> set;
        if (plant) {
            const uint32_t target = inst.row_dot(i, xstar);
            // r-1 uniform values from F_p \ {target}, plus the target itself.
            std::vector<size_t> picks = rng.sample_without_replacement(p - 1, r - 1);
            set.reserve(r);
            set.push_back(target);
            for (size_t u : picks)
                set.push_back(static_cast<uint32_t>(u < target ? u : u + 1));
        } else {
            std::vector<size_t> picks = rng.sample_without_replacement(p, r);
            set.assign(picks.begin(), picks.end());
        }
        std::sort(set.begin(), set.end());
        inst.f_sets[i] = std::move(set);
    }
    if (plant) inst.meta.planted_x = xstar;
    validate_instance(inst);
    return inst;
}

// ---- serialization ---------------------------------------------------------

std::string instance_to_json_string(const MaxLinsatInstance& inst) {
    json j;
    j["p"] = inst.p;
    j["m"] = inst.m;
    j["n"] = inst.n;
    json rows = json::array();
    for (const auto& row : inst.rows) {
        json jr = json::array();
        for (const auto& [col, val] : row) {
            jr.push_back(col);
            if (inst.p > 2) jr.push_back(val);
        }
        rows.push_back(std::move(jr));
    }
    j["b_rows"] = std::move(rows);
    if (inst.binary()) {
        j["v"] = inst.v;
    } else {
        j["f_sets"] = inst.f_sets;
    }
    json meta;
    meta["generator"] = inst.meta.generator;
    meta["seed"] = inst.meta.seed;
    if (inst.meta.planted_x.has_value()) meta["planted_x"] = *inst.meta.planted_x;
    j["meta"] = std::move(meta);
    return j.dump();
}

MaxLinsatInstance instance_from_json_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw_parameter(std::string("instance JSON parse error: ") + e.what());
    }
    MaxLinsatInstance inst;
    try {
        inst.p = j.at("p").get<uint32_t>();
        inst.m = j.at("m").get<size_t>();
        inst.n = j.at("n").get<size_t>();
        const json& rows = j.at("b_rows");
        require(rows.is_array() && rows.size() == inst.m, ErrorKind::parameter,
                "instance JSON: b_rows must be an array of m rows");
        inst.rows.resize(inst.m);
        for (size_t i = 0; i < inst.m; ++i) {
            const json& jr = rows[i];
            if (inst.p == 2) {
                for (const auto& c : jr)
                    inst.rows[i].emplace_back(c.get<uint32_t>(), 1);
            } else {
                require(jr.size() % 2 == 0, ErrorKind::parameter,
                        "instance JSON: p>2 rows must hold (col, value) pairs");
                for (size_t t = 0; t < jr.size(); t += 2)
                    inst.rows[i].emplace_back(jr[t].get<uint32_t>(),
                                              jr[t + 1].get<uint32_t>());
            }
        }
        if (inst.p == 2) {
            inst.v = j.at("v").get<std::vector<uint8_t>>();
        } else {
            inst.f_sets = j.at("f_sets").get<std::vector<std::vector<uint32_t>>>();
        }
        if (j.contains("meta")) {
            const json& meta = j.at("meta");
            inst.meta.generator = meta.value("generator", std::string());
            inst.meta.seed = meta.value("seed", uint64_t{0});
            if (meta.contains("planted_x"))
                inst.meta.planted_x = meta.at("planted_x").get<FpVector>();
        }
    } catch (const json::exception& e) {
        throw_parameter(std::string("instance JSON structure error: ") + e.what());
    }
    validate_instance(inst);
    return inst;
}

void save_instance(const MaxLinsatInstance& inst, const std::string& path) {
    write_file_atomic(path, instance_to_json_string(inst));
}

MaxLinsatInstance load_instance(const std::string& path) {
    return instance_from_json_string(read_file(path));
}

DegreeDistribution distribution_from_json_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw_parameter(std::string("distribution JSON parse error: ") + e.what());
    }
    DegreeDistribution dist;
    try {
        for (const auto& [key, value] : j.at("variable").items())
            dist.variable[static_cast<uint32_t>(std::stoul(key))] = value.get<double>();
        for (const auto& [key, value] : j.at("constraint").items())
            dist.constraint[static_cast<uint32_t>(std::stoul(key))] = value.get<double>();
    } catch (const json::exception& e) {
        throw_parameter(std::string("distribution JSON structure error: ") + e.what());
    } catch (const std::exception& e) {
        throw_parameter(std::string("distribution JSON: bad degree key: ") + e.what());
    }
    validate_distribution(dist);
    return dist;
}

std::string distribution_to_json_string(const DegreeDistribution& dist) {
    json j;
    json var = json::object();
    for (const auto& [deg, frac] : dist.variable) var[std::to_string(deg)] = frac;
    json con = json::object();
    for (const auto& [deg, frac] : dist.constraint) con[std::to_string(deg)] = frac;
    j["variable"] = std::move(var);
    j["constraint"] = std::move(con);
    return j.dump();
}

DegreeDistribution load_distribution(const std::string& path) {
    return distribution_from_json_string(read_file(path));
}

} // namespace dqi
