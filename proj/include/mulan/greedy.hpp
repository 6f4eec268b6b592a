#pragma once

#include <vector>

#include "mulan/partition.hpp"

namespace mulan {

/// Agglomerative modularity maximisation (Clauset–Newman–Moore): starting from
/// singletons, repeatedly merge the adjacent community pair with the largest
/// modularity gain while that gain is positive. Ties go to the
/// lexicographically smallest id pair. Deterministic.
/// If `merge_gains` is given, the gain of every executed merge is appended.
/// Throws EmptyGraph.
[[nodiscard]] Partition greedy_cnm(const WeightedFlatGraph& g, std::vector<double>* merge_gains = nullptr);

}  // namespace mulan
