#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bnlf/network.hpp"

namespace bnlf {

struct Posterior {
  std::string node;
  std::vector<double> distribution;  // canonical state order of `node`
  Assignment evidence;
};

/// Exact P(query | evidence) by enumerating the unobserved ancestors of the
/// query and evidence nodes. When the query is a sink and the evidence binds
/// all of its parents the stored CPT row is returned unchanged.
///
/// Throws UnknownNode / UnknownState for bad evidence, QueryBoundInEvidence,
/// and InconsistentEvidence when P(evidence) = 0.
Posterior posterior(const Network& net, std::string_view query, const Assignment& evidence);

/// P(evidence), summing out every unbound node. The empty assignment has
/// probability 1.
double evidence_probability(const Network& net, const Assignment& evidence);

/// Index of the first maximal entry.
std::size_t argmax_first(std::span<const double> values);

/// State name of the first maximal posterior entry of `query`.
std::string predict_label(const Network& net, const Assignment& evidence, std::string_view query = "Sentiment");

}  // namespace bnlf
