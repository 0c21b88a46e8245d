#include "gauging/distance.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <random>
#include <thread>

#include "gauging/errors.hpp"

namespace gauging {

namespace {

constexpr size_t kShards = 8;

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// C(n, w) clamped at `cap` to avoid overflow.
uint64_t binomial_clamped(uint64_t n, uint64_t w, uint64_t cap) {
    uint64_t r = 1;
    for (uint64_t i = 0; i < w; i++) {
        if (r > cap) {
            return cap + 1;
        }
        r = r * (n - i) / (i + 1);
    }
    return std::min(r, cap + 1);
}

/// Visit all size-w subsets of [0, n) in lexicographic order until the visitor
/// returns true; returns whether the visitor ever did.
bool for_each_subset(size_t n, size_t w,
                     const std::function<bool(const std::vector<size_t>&)>& visit) {
    if (w > n) {
        return false;
    }
    std::vector<size_t> idx(w);
    for (size_t i = 0; i < w; i++) {
        idx[i] = i;
    }
    while (true) {
        if (visit(idx)) {
            return true;
        }
        size_t i = w;
        while (i > 0) {
            i--;
            if (idx[i] != i + n - w) {
                idx[i]++;
                for (size_t j = i + 1; j < w; j++) {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
            if (i == 0) {
                return false;
            }
        }
    }
}

}  // namespace

std::optional<size_t> distance_exact(const CssCode& code, size_t w_max, uint64_t budget) {
    if (code.k() == 0) {
        return std::nullopt;
    }
    size_t n = code.n();
    RowReduce rr_x = code.hx.row_reduce();
    RowReduce rr_z = code.hz.row_reduce();
    uint64_t spent = 0;
    for (size_t w = 1; w <= std::min(w_max, n); w++) {
        uint64_t cost = 2 * binomial_clamped(n, w, budget);
        if (spent + cost > budget) {
            throw BudgetError("distance_exact: enumeration budget exceeded at weight " +
                              std::to_string(w));
        }
        spent += cost;
        // X-type candidates: kernel of hz, outside rowspace(hx); then Z-type.
        auto try_side = [&](const BitMatrix& other, const RowReduce& own) {
            return for_each_subset(n, w, [&](const std::vector<size_t>& qs) {
                BitVec v(n);
                for (size_t q : qs) {
                    v.set(q, true);
                }
                if (other.mul_vec(v).any()) {
                    return false;
                }
                return !in_row_space(own, v);
            });
        };
        if (try_side(code.hz, rr_x) || try_side(code.hx, rr_z)) {
            return w;
        }
    }
    return std::nullopt;
}

std::optional<size_t> distance_exact(const StabilizerCode& code, size_t w_max,
                                     uint64_t budget) {
    if (code.k() == 0) {
        return std::nullopt;
    }
    size_t n = code.n;
    RowReduce rr = code.symplectic().row_reduce();
    auto is_logical = [&](const PauliOp& p) {
        for (const PauliOp& c : code.checks) {
            if (!c.commutes(p)) {
                return false;
            }
        }
        BitVec row(2 * n);
        for (size_t q = 0; q < n; q++) {
            row.set(q, p.x.get(q));
            row.set(n + q, p.z.get(q));
        }
        return !in_row_space(rr, row);
    };
    uint64_t spent = 0;
    for (size_t w = 1; w <= std::min(w_max, n); w++) {
        uint64_t pow3 = 1;
        for (size_t i = 0; i < w && pow3 <= budget; i++) {
            pow3 *= 3;
        }
        uint64_t cost = binomial_clamped(n, w, budget);
        if (cost > budget / pow3) {
            throw BudgetError("distance_exact: enumeration budget exceeded at weight " +
                              std::to_string(w));
        }
        cost *= pow3;
        if (spent + cost > budget) {
            throw BudgetError("distance_exact: enumeration budget exceeded at weight " +
                              std::to_string(w));
        }
        spent += cost;
        bool found = for_each_subset(n, w, [&](const std::vector<size_t>& qs) {
            // 3^w single-qubit Pauli assignments on the chosen support.
            std::vector<int> assign(w, 0);
            while (true) {
                PauliOp p(n);
                for (size_t i = 0; i < w; i++) {
                    p.x.set(qs[i], assign[i] != 2);       // X or Y
                    p.z.set(qs[i], assign[i] != 0);       // Z or Y
                }
                size_t y = 0;
                for (size_t i = 0; i < w; i++) {
                    y += assign[i] == 1;
                }
                p.phase = uint8_t(y % 4);
                if (is_logical(p)) {
                    return true;
                }
                size_t i = 0;
                while (i < w && assign[i] == 2) {
                    assign[i] = 0;
                    i++;
                }
                if (i == w) {
                    return false;
                }
                assign[i]++;
            }
        });
        if (found) {
            return w;
        }
    }
    return std::nullopt;
}

namespace {

struct SideSearch {
    const BitMatrix* kernel;  // generator rows of candidate supports
    const RowReduce* own;     // row space that makes a candidate trivial
    char type;                // 'X' or 'Z'
};

struct ShardBest {
    size_t weight = SIZE_MAX;
    BitVec support;
    char type = 'X';
};

/// One information-set trial: permute qubits, row-reduce the permuted kernel,
/// and harvest low-weight rows and row pairs.
void isd_trial(const SideSearch& side, std::mt19937_64& rng, ShardBest& best) {
    size_t n = side.kernel->cols;
    std::vector<size_t> perm(n);
    for (size_t i = 0; i < n; i++) {
        perm[i] = i;
    }
    for (size_t i = n - 1; i > 0; i--) {
        size_t j = rng() % (i + 1);
        std::swap(perm[i], perm[j]);
    }
    BitMatrix shuffled(side.kernel->rows, n);
    for (size_t r = 0; r < shuffled.rows; r++) {
        for (size_t c = 0; c < n; c++) {
            if (side.kernel->get(r, c)) {
                shuffled.set(r, perm[c], true);
            }
        }
    }
    BitMatrix rref = shuffled.row_reduce().rref;
    auto consider = [&](const BitVec& permuted) {
        size_t w = permuted.popcount();
        if (w == 0 || w >= best.weight) {
            return;
        }
        // perm maps original column -> shuffled column.
        BitVec v(n);
        for (size_t c = 0; c < n; c++) {
            if (permuted.get(perm[c])) {
                v.set(c, true);
            }
        }
        if (!in_row_space(*side.own, v)) {
            best.weight = w;
            best.support = v;
        }
    };
    for (size_t r = 0; r < rref.rows; r++) {
        if (!rref.row_any(r)) {
            break;
        }
        consider(rref.row(r));
    }
    for (size_t r = 0; r < rref.rows; r++) {
        if (!rref.row_any(r)) {
            break;
        }
        for (size_t s = r + 1; s < rref.rows; s++) {
            if (!rref.row_any(s)) {
                break;
            }
            BitVec combo = rref.row(r);
            combo.xor_with(rref.row(s));
            consider(combo);
        }
    }
}

DistanceWitness css_distance_upper(const CssCode& code, size_t trials, uint64_t seed) {
    if (code.k() == 0) {
        throw ValidationError("distance_upper: code has no logical operators");
    }
    if (trials == 0) {
        throw ValidationError("distance_upper: need at least one trial");
    }
    size_t n = code.n();
    BitMatrix kernel_x = code.hz.nullspace();  // X-type candidate supports
    BitMatrix kernel_z = code.hx.nullspace();
    RowReduce rr_x = code.hx.row_reduce();
    RowReduce rr_z = code.hz.row_reduce();
    SideSearch sides[2] = {{&kernel_x, &rr_x, 'X'}, {&kernel_z, &rr_z, 'Z'}};

    size_t shard_count = std::min(trials, kShards);
    std::vector<ShardBest> results(shard_count);
    std::vector<std::thread> workers;
    for (size_t s = 0; s < shard_count; s++) {
        size_t shard_trials = trials / shard_count + (s < trials % shard_count ? 1 : 0);
        workers.emplace_back([&, s, shard_trials]() {
            std::mt19937_64 rng(splitmix64(seed ^ (0xABCD1234ull + s)));
            ShardBest best;
            for (size_t t = 0; t < shard_trials; t++) {
                for (const SideSearch& side : sides) {
                    isd_trial(side, rng, best);
                }
            }
            results[s] = std::move(best);
        });
    }
    for (auto& w : workers) {
        w.join();
    }
    // Lowest weight wins; ties resolved by lowest shard index.
    size_t pick = 0;
    for (size_t s = 1; s < shard_count; s++) {
        if (results[s].weight < results[pick].weight) {
            pick = s;
        }
    }
    if (results[pick].weight == SIZE_MAX) {
        throw ValidationError("distance_upper: no logical found; increase trials");
    }
    PauliOp witness(n);
    if (results[pick].type == 'X') {
        witness.x = results[pick].support;
    } else {
        witness.z = results[pick].support;
    }
    return {results[pick].weight, witness};
}

}  // namespace

DistanceWitness distance_upper(const CssCode& code, size_t trials, uint64_t seed) {
    return css_distance_upper(code, trials, seed);
}

DistanceWitness distance_upper(const StabilizerCode& code, size_t trials, uint64_t seed) {
    // CSS split when every check is pure X or pure Z.
    bool css_like = true;
    for (const PauliOp& c : code.checks) {
        if (!c.is_x_type() && !c.is_z_type()) {
            css_like = false;
            break;
        }
    }
    if (css_like) {
        BitMatrix hx(0, code.n);
        BitMatrix hz(0, code.n);
        for (const PauliOp& c : code.checks) {
            if (c.is_x_type() && !c.is_identity()) {
                hx.append_row(c.x);
            } else if (!c.is_identity()) {
                hz.append_row(c.z);
            }
        }
        return css_distance_upper(CssCode(std::move(hx), std::move(hz)), trials, seed);
    }

    // General stabilizer fallback: information-set search over the normalizer.
    if (code.k() == 0) {
        throw ValidationError("distance_upper: code has no logical operators");
    }
    if (trials == 0) {
        throw ValidationError("distance_upper: need at least one trial");
    }
    size_t n = code.n;
    BitMatrix omega(code.checks.size(), 2 * n);  // symplectic pairing rows (z|x)
    for (size_t i = 0; i < code.checks.size(); i++) {
        for (size_t q = 0; q < n; q++) {
            omega.set(i, q, code.checks[i].z.get(q));
            omega.set(i, n + q, code.checks[i].x.get(q));
        }
    }
    BitMatrix normalizer = omega.nullspace();  // rows (x|z) commuting with all checks
    RowReduce rr_checks = code.symplectic().row_reduce();

    size_t shard_count = std::min(trials, kShards);
    std::vector<ShardBest> results(shard_count);
    std::vector<std::thread> workers;
    for (size_t s = 0; s < shard_count; s++) {
        size_t shard_trials = trials / shard_count + (s < trials % shard_count ? 1 : 0);
        workers.emplace_back([&, s, shard_trials]() {
            std::mt19937_64 rng(splitmix64(seed ^ (0xABCD1234ull + s)));
            ShardBest best;  // support stored as full (x|z) row, weight = qubit support
            for (size_t t = 0; t < shard_trials; t++) {
                std::vector<size_t> perm(n);
                for (size_t i = 0; i < n; i++) {
                    perm[i] = i;
                }
                for (size_t i = n - 1; i > 0; i--) {
                    size_t j = rng() % (i + 1);
                    std::swap(perm[i], perm[j]);
                }
                // Columns regrouped as (x_q, z_q) pairs in permuted qubit order.
                BitMatrix shuffled(normalizer.rows, 2 * n);
                for (size_t r = 0; r < normalizer.rows; r++) {
                    for (size_t q = 0; q < n; q++) {
                        shuffled.set(r, 2 * perm[q], normalizer.get(r, q));
                        shuffled.set(r, 2 * perm[q] + 1, normalizer.get(r, n + q));
                    }
                }
                BitMatrix rref = shuffled.row_reduce().rref;
                auto consider = [&](const BitVec& row) {
                    BitVec v(2 * n);
                    size_t w = 0;
                    for (size_t q = 0; q < n; q++) {
                        bool xb = row.get(2 * perm[q]);
                        bool zb = row.get(2 * perm[q] + 1);
                        v.set(q, xb);
                        v.set(n + q, zb);
                        w += xb || zb;
                    }
                    if (w == 0 || w >= best.weight) {
                        return;
                    }
                    if (!in_row_space(rr_checks, v)) {
                        best.weight = w;
                        best.support = v;
                    }
                };
                for (size_t r = 0; r < rref.rows && rref.row_any(r); r++) {
                    consider(rref.row(r));
                    for (size_t u = r + 1; u < rref.rows && rref.row_any(u); u++) {
                        BitVec combo = rref.row(r);
                        combo.xor_with(rref.row(u));
                        consider(combo);
                    }
                }
            }
            results[s] = std::move(best);
        });
    }
    for (auto& w : workers) {
        w.join();
    }
    size_t pick = 0;
    for (size_t s = 1; s < shard_count; s++) {
        if (results[s].weight < results[pick].weight) {
            pick = s;
        }
    }
    if (results[pick].weight == SIZE_MAX) {
        throw ValidationError("distance_upper: no logical found; increase trials");
    }
    PauliOp witness(n);
    for (size_t q = 0; q < n; q++) {
        witness.x.set(q, results[pick].support.get(q));
        witness.z.set(q, results[pick].support.get(n + q));
    }
    size_t y = 0;
    for (size_t i = 0; i < witness.x.w.size(); i++) {
        y += std::popcount(witness.x.w[i] & witness.z.w[i]);
    }
    witness.phase = uint8_t(y % 4);  // Hermitian, sign +1
    return {results[pick].weight, witness};
}

}  // namespace gauging
