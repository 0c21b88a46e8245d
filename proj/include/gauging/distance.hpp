#pragma once

#include <cstdint>
#include <optional>

#include "gauging/code.hpp"

namespace gauging {

struct DistanceWitness {
    size_t weight = 0;
    PauliOp witness;
};

/// Exact minimum logical weight by ascending-weight enumeration, or nullopt if
/// no logical of weight <= w_max exists (in particular when k = 0). Throws
/// BudgetError before starting any weight class that would push the enumeration
/// past `budget` candidate operators.
std::optional<size_t> distance_exact(const CssCode& code, size_t w_max,
                                     uint64_t budget = 50000000);
std::optional<size_t> distance_exact(const StabilizerCode& code, size_t w_max,
                                     uint64_t budget = 50000000);

/// Randomized information-set upper bound. Returns the lightest verified
/// logical found across `trials` permutation trials; deterministic for a fixed
/// (seed, trials) pair regardless of thread count. Throws ValidationError when
/// the code has no logical operators.
DistanceWitness distance_upper(const CssCode& code, size_t trials, uint64_t seed);
DistanceWitness distance_upper(const StabilizerCode& code, size_t trials, uint64_t seed);

}  // namespace gauging
