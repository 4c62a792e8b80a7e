#include "iiq/novelty.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace iiq {

namespace {

std::size_t levenshtein_distance(std::string_view a, std::string_view b) {
  if (a.size() > b.size()) std::swap(a, b);
  if (a.empty()) return b.size();

  std::vector<std::size_t> row(a.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t j = 1; j <= b.size(); ++j) {
    std::size_t diag = row[0];
    row[0] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
      std::size_t above = row[i];
      std::size_t cost = (a[i - 1] == b[j - 1]) ? diag : diag + 1;
      row[i] = std::min({above + 1, row[i - 1] + 1, cost});
      diag = above;
    }
  }
  return row[a.size()];
}

}  // namespace

SimilarityScore edit_similarity(const TaskRepresentation& a, const TaskRepresentation& b) {
  std::string_view ta = std::string_view(a.normalized_text).substr(0, kMaxComparableChars);
  std::string_view tb = std::string_view(b.normalized_text).substr(0, kMaxComparableChars);
  const std::size_t longest = std::max(ta.size(), tb.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(levenshtein_distance(ta, tb)) / static_cast<double>(longest);
}

SimilarityScore keyword_similarity(const TaskRepresentation& a, const TaskRepresentation& b) {
  if (a.keyword_set.empty() && b.keyword_set.empty()) return 1.0;
  std::size_t intersection = 0;
  auto ia = a.keyword_set.begin();
  auto ib = b.keyword_set.begin();
  while (ia != a.keyword_set.end() && ib != b.keyword_set.end()) {
    if (*ia < *ib) ++ia;
    else if (*ib < *ia) ++ib;
    else { ++intersection; ++ia; ++ib; }
  }
  const std::size_t unions = a.keyword_set.size() + b.keyword_set.size() - intersection;
  return static_cast<double>(intersection) / static_cast<double>(unions);
}

SimilarityScore hybrid_similarity(const TaskRepresentation& a, const TaskRepresentation& b) {
  return std::max(edit_similarity(a, b), keyword_similarity(a, b));
}

SimilarityScore similarity(const TaskRepresentation& a, const TaskRepresentation& b,
                           SimilarityMethod method) {
  switch (method) {
    case SimilarityMethod::edit: return edit_similarity(a, b);
    case SimilarityMethod::keyword: return keyword_similarity(a, b);
    case SimilarityMethod::hybrid: return hybrid_similarity(a, b);
  }
  return hybrid_similarity(a, b);
}

double novelty_weight(const TaskRepresentation& repr,
                      const std::deque<TaskRepresentation>& history, SimilarityMethod method) {
  return novelty_weight(repr, history, [method](const TaskRepresentation& a,
                                                const TaskRepresentation& b) {
    return similarity(a, b, method);
  });
}

double novelty_weight(const TaskRepresentation& repr,
                      const std::deque<TaskRepresentation>& history,
                      const SimilarityFn& scorer) {
  if (history.empty()) return 1.0;
  double max_similarity = 0.0;
  for (const TaskRepresentation& past : history) {
    max_similarity = std::max(max_similarity, scorer(repr, past));
    if (max_similarity >= 1.0) break;  // cannot grow past 1
  }
  return std::max(0.0, 1.0 - max_similarity);
}

void push_history(std::deque<TaskRepresentation>& history, TaskRepresentation repr,
                  std::size_t capacity) {
  history.push_back(std::move(repr));
  while (history.size() > capacity) history.pop_front();
}

}  // namespace iiq
