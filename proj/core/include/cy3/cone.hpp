#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "cy3/rational.hpp"

namespace cy3 {

/// Nonnegative combination sum_n lambda_n * generators[n] == target, as
/// (generator index, lambda) pairs with lambda > 0.
using ConeDecomposition = std::vector<std::pair<std::size_t, Rational>>;

/// Exact membership test for the rational cone spanned by generators.
/// Phase-one simplex over Q with Bland's rule; returns a witness when the
/// target is in the cone. The zero vector is always a member.
std::optional<ConeDecomposition> cone_decomposition(const std::vector<std::vector<Rational>>& generators,
                                                    const std::vector<Rational>& target);

}  // namespace cy3
