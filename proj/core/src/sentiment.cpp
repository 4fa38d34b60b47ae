#include "bnlf/sentiment.hpp"

#include <algorithm>

namespace bnlf {

std::string_view to_string(Sentiment s) noexcept {
  switch (s) {
    case Sentiment::Negative: return "negative";
    case Sentiment::Neutral: return "neutral";
    case Sentiment::Positive: return "positive";
  }
  return "?";
}

std::optional<Sentiment> parse_sentiment(std::string_view name) noexcept {
  for (auto s : kSentiments)
    if (to_string(s) == name) return s;
  return std::nullopt;
}

std::vector<std::string> sentiment_state_names() {
  std::vector<std::string> out;
  for (auto s : kSentiments) out.emplace_back(to_string(s));
  return out;
}

const std::vector<std::string>& known_corpora() {
  static const std::vector<std::string> tags{"financial_phrasebank", "tfns", "fiqa"};
  return tags;
}

bool is_known_corpus(std::string_view tag) {
  const auto& k = known_corpora();
  return std::find(k.begin(), k.end(), tag) != k.end();
}

std::vector<std::string> order_corpora(std::vector<std::string> tags) {
  std::vector<std::string> out;
  for (const auto& k : known_corpora())
    if (std::find(tags.begin(), tags.end(), k) != tags.end()) out.push_back(k);
  std::vector<std::string> rest;
  for (auto& t : tags)
    if (!is_known_corpus(t)) rest.push_back(std::move(t));
  std::sort(rest.begin(), rest.end());
  rest.erase(std::unique(rest.begin(), rest.end()), rest.end());
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

}  // namespace bnlf
