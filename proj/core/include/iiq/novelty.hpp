#pragma once

#include <deque>
#include <functional>

#include "iiq/types.hpp"

namespace iiq {

using SimilarityScore = double;  // always in [0,1]

// Pluggable scorer signature; any callable matching it can drive
// novelty_weight (embedding-based scorers plug in here).
using SimilarityFn =
    std::function<SimilarityScore(const TaskRepresentation&, const TaskRepresentation&)>;

// 1 - LevenshteinDistance / max(len). Two empty texts compare as 1.0.
// Texts longer than kMaxComparableChars are truncated for the distance
// computation only.
SimilarityScore edit_similarity(const TaskRepresentation& a, const TaskRepresentation& b);

// Jaccard index over keyword sets. Two empty sets compare as 1.0
// (degenerate duplicates).
SimilarityScore keyword_similarity(const TaskRepresentation& a, const TaskRepresentation& b);

// max(edit, keyword): the conservative anti-gaming combination.
SimilarityScore hybrid_similarity(const TaskRepresentation& a, const TaskRepresentation& b);

SimilarityScore similarity(const TaskRepresentation& a, const TaskRepresentation& b,
                           SimilarityMethod method);

// Novelty weight: max(0, 1 - max similarity against the history).
// Empty history yields 1.
double novelty_weight(const TaskRepresentation& repr,
                      const std::deque<TaskRepresentation>& history, SimilarityMethod method);
double novelty_weight(const TaskRepresentation& repr,
                      const std::deque<TaskRepresentation>& history, const SimilarityFn& scorer);

// Appends one representation, evicting the oldest beyond capacity.
void push_history(std::deque<TaskRepresentation>& history, TaskRepresentation repr,
                  std::size_t capacity);

}  // namespace iiq
