#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "iiq/novelty.hpp"
#include "iiq/simulator.hpp"
#include "test_util.hpp"

using namespace iiq;
using testutil::close;

namespace {

TaskRepresentation repr(const std::string& text) { return TaskRepresentation::from_raw(text); }

// Textbook recursive Levenshtein used as an independent check of the
// two-row implementation.
std::size_t lev_reference(std::string_view a, std::string_view b) {
  if (a.empty()) return b.size();
  if (b.empty()) return a.size();
  const std::size_t cost = a.back() == b.back() ? 0 : 1;
  const auto a1 = a.substr(0, a.size() - 1);
  const auto b1 = b.substr(0, b.size() - 1);
  return std::min({lev_reference(a1, b) + 1, lev_reference(a, b1) + 1,
                   lev_reference(a1, b1) + cost});
}

}  // namespace

TEST_CASE("text normalization and keyword extraction") {
  const TaskRepresentation r = repr("  Draft   the Q3 Report!! ");
  CHECK(r.normalized_text == "draft the q3 report!!");
  CHECK(r.keyword_set == std::set<std::string>{"draft", "the", "report"});  // q3 splits, len<3

  CHECK(repr("").normalized_text.empty());
  CHECK(repr("").keyword_set.empty());
  CHECK(repr("a b c").keyword_set.empty());

  // Keyword extraction sees the full text even past the comparison cap.
  std::string long_text(2500, 'x');
  long_text += " trailing";
  const TaskRepresentation capped = repr(long_text);
  CHECK(capped.normalized_text.size() == kMaxComparableChars);
  CHECK(capped.keyword_set.contains("trailing"));
}

TEST_CASE("edit similarity examples") {
  CHECK(edit_similarity(repr("draft q3 report"), repr("draft q3 report")) == 1.0);
  CHECK(edit_similarity(repr("abcd"), repr("wxyz")) == 0.0);
  CHECK(edit_similarity(repr("abcd"), repr("abce")) == doctest::Approx(0.75));
  CHECK(edit_similarity(repr(""), repr("")) == 1.0);
  CHECK(edit_similarity(repr(""), repr("abc")) == 0.0);
}

TEST_CASE("edit similarity agrees with the recursive reference") {
  const std::vector<std::string> samples = {"",        "a",        "ab",      "kitten",
                                            "sitting", "saturday", "sunday",  "abcabc",
                                            "flaw",    "lawn",     "deploy1", "deploy2"};
  for (const std::string& a : samples) {
    for (const std::string& b : samples) {
      const double expected =
          (a.empty() && b.empty())
              ? 1.0
              : 1.0 - static_cast<double>(lev_reference(a, b)) /
                          static_cast<double>(std::max(a.size(), b.size()));
      CHECK(edit_similarity(repr(a), repr(b)) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("keyword similarity examples") {
  CHECK(keyword_similarity(repr("alpha beta gamma"), repr("alpha beta gamma")) == 1.0);
  CHECK(keyword_similarity(repr("alpha beta"), repr("gamma delta")) == 0.0);
  CHECK(keyword_similarity(repr("alpha beta gamma"), repr("beta gamma delta")) ==
        doctest::Approx(0.5));
  CHECK(keyword_similarity(repr(""), repr("")) == 1.0);
  CHECK(keyword_similarity(repr(""), repr("alpha")) == 0.0);
}

TEST_CASE("hybrid takes the max and every scorer is symmetric") {
  const TaskRepresentation a = repr("alpha beta gamma common");
  const TaskRepresentation b = repr("zzz qqq common vvv www");
  CHECK(hybrid_similarity(a, b) == std::max(edit_similarity(a, b), keyword_similarity(a, b)));
  CHECK(hybrid_similarity(a, a) == 1.0);
  // Disjoint keywords and maximally-different texts: both components 0.
  CHECK(hybrid_similarity(repr("aaaa"), repr("zzzz")) == 0.0);

  const std::vector<std::string> samples = {"alpha beta", "beta gamma", "abcd", "wxyz", ""};
  for (const std::string& x : samples) {
    for (const std::string& y : samples) {
      CHECK(edit_similarity(repr(x), repr(y)) == edit_similarity(repr(y), repr(x)));
      CHECK(keyword_similarity(repr(x), repr(y)) == keyword_similarity(repr(y), repr(x)));
      CHECK(hybrid_similarity(repr(x), repr(y)) == hybrid_similarity(repr(y), repr(x)));
    }
  }
}

TEST_CASE("similarity scores stay within [0,1]") {
  Rng rng(42);
  const std::vector<std::string> words = {"alpha", "beta",  "gamma", "delta",
                                          "epsln", "zeta",  "eta",   "theta"};
  for (int i = 0; i < 200; ++i) {
    std::string a, b;
    for (int w = 0; w < rng.next_int(0, 5); ++w) {
      a += words[static_cast<std::size_t>(rng.next_int(0, 7))] + " ";
    }
    for (int w = 0; w < rng.next_int(0, 5); ++w) {
      b += words[static_cast<std::size_t>(rng.next_int(0, 7))] + " ";
    }
    for (auto method :
         {SimilarityMethod::edit, SimilarityMethod::keyword, SimilarityMethod::hybrid}) {
      const double s = similarity(repr(a), repr(b), method);
      CHECK(s >= 0.0);
      CHECK(s <= 1.0);
    }
  }
}

TEST_CASE("novelty weight") {
  std::deque<TaskRepresentation> history;
  CHECK(novelty_weight(repr("anything at all"), history, SimilarityMethod::hybrid) == 1.0);

  history.push_back(repr("migrate billing database"));
  CHECK(novelty_weight(repr("migrate billing database"), history, SimilarityMethod::hybrid) ==
        0.0);

  // keyword overlap 3 of 11 -> nu = 1 - 3/11
  std::deque<TaskRepresentation> h2 = {repr("one two three four five six seven")};
  const TaskRepresentation probe = repr("one two three eight nine tenx eleven");
  const double sim = keyword_similarity(probe, h2.front());
  CHECK(sim == doctest::Approx(3.0 / 11.0));
  CHECK(novelty_weight(probe, h2, SimilarityMethod::keyword) ==
        doctest::Approx(1.0 - 3.0 / 11.0));
}

TEST_CASE("novelty never increases as history grows") {
  std::deque<TaskRepresentation> history;
  const TaskRepresentation probe = repr("refactor auth token cache");
  double last = novelty_weight(probe, history, SimilarityMethod::hybrid);
  for (const char* text : {"unrelated words entirely", "refactor auth flows",
                           "token cache sizing", "refactor auth token cache"}) {
    history.push_back(repr(text));
    const double nu = novelty_weight(probe, history, SimilarityMethod::hybrid);
    CHECK(nu <= last + 1e-15);
    last = nu;
  }
  CHECK(last == 0.0);
}

TEST_CASE("novelty sums at the extremes") {
  // n identical events -> sum nu = 1, for every method.
  for (auto method :
       {SimilarityMethod::edit, SimilarityMethod::keyword, SimilarityMethod::hybrid}) {
    std::deque<TaskRepresentation> history;
    double total = 0.0;
    for (int i = 0; i < 10; ++i) {
      const TaskRepresentation r = repr("exact same prompt");
      total += novelty_weight(r, history, method);
      push_history(history, r, 50);
    }
    CHECK(total == 1.0);
  }

  // n pairwise maximally-dissimilar events -> sum nu = n.
  std::deque<TaskRepresentation> history;
  double total = 0.0;
  for (const char* text : {"aaaa", "bbbb", "cccc", "dddd"}) {
    const TaskRepresentation r = repr(text);
    total += novelty_weight(r, history, SimilarityMethod::hybrid);
    push_history(history, r, 50);
  }
  CHECK(total == 4.0);
}

TEST_CASE("push_history is a ring buffer") {
  std::deque<TaskRepresentation> history;
  push_history(history, repr("first"), 50);
  CHECK(history.size() == 1);
  for (int i = 0; i < 50; ++i) {
    push_history(history, repr("entry " + std::to_string(i)), 50);
  }
  CHECK(history.size() == 50);
  CHECK(history.front().normalized_text == "entry 0");  // "first" evicted
  CHECK(history.back().normalized_text == "entry 49");
}

TEST_CASE("custom similarity callables plug in") {
  std::deque<TaskRepresentation> history = {repr("whatever")};
  const SimilarityFn constant_half = [](const TaskRepresentation&, const TaskRepresentation&) {
    return 0.5;
  };
  CHECK(novelty_weight(repr("probe"), history, constant_half) == doctest::Approx(0.5));
}
