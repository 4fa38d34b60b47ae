#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bnlf {

/// Canonical three-class label; the numeric values are the state indices.
enum class Sentiment : std::uint8_t { Negative = 0, Neutral = 1, Positive = 2 };

inline constexpr std::size_t kSentimentCount = 3;
inline constexpr std::array<Sentiment, kSentimentCount> kSentiments{Sentiment::Negative, Sentiment::Neutral,
                                                                     Sentiment::Positive};

/// Class-probability vector in canonical order.
using Probs = std::array<double, kSentimentCount>;

inline constexpr std::size_t index(Sentiment s) noexcept { return static_cast<std::size_t>(s); }
inline constexpr Sentiment sentiment_at(std::size_t i) noexcept { return static_cast<Sentiment>(i); }

std::string_view to_string(Sentiment s) noexcept;
/// Accepts only the canonical names "negative", "neutral", "positive".
std::optional<Sentiment> parse_sentiment(std::string_view name) noexcept;
std::vector<std::string> sentiment_state_names();

inline constexpr std::string_view kCorpusNode = "Corpus";
inline constexpr std::string_view kSentimentNode = "Sentiment";

/// Corpus tags in canonical order.
const std::vector<std::string>& known_corpora();
bool is_known_corpus(std::string_view tag);
/// Known tags first in canonical order, then any others sorted; duplicates removed.
std::vector<std::string> order_corpora(std::vector<std::string> tags);

}  // namespace bnlf
