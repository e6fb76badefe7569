#pragma once

#include "logmap/marked_graph.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace logmap {

/// Undecorated dual graph with per-vertex multidegree and fixed leg
/// contact orders.
struct DualGraphInput {
  struct PlainEdge {
    std::string id;
    std::array<std::string, 2> ends;
  };

  /// Each vertex must carry a multidegree.
  std::vector<Vertex> vertices;
  std::vector<PlainEdge> edges;
  std::vector<Leg> legs;
};

struct EnumerationLimits {
  std::int64_t max_solutions = 10000;
  /// Defaults to analytic_contact_bound(input) + 1.
  std::optional<std::int64_t> max_contact;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

struct EnumerationResult {
  std::vector<MarkedGraph> graphs;
  bool complete = true;
  /// Which limit cut the search short ("max_solutions", "max_contact").
  std::vector<std::string> limits_hit;
};

/// Structure, connectivity and the global constraint sum d_v + sum c_i = 0.
/// Throws DegreeMismatch, Disconnected or InvalidArgument.
void check_input(const DualGraphInput& input);

/// sum |d_v| + sum c_i: no contact order of a solution exceeds it.
std::int64_t analytic_contact_bound(const DualGraphInput& input);

struct DistinguishedPartition {
  /// Oriented edges ending at v.
  std::vector<std::string> lower;
  /// Oriented edges starting at v and legs at v with positive contact.
  std::vector<std::string> upper;
};

DistinguishedPartition distinguished_partition(const MarkedGraph& g, const std::string& v);

/// d_v == sum of lower contact orders - sum of upper contact orders.
bool degree_balance(const MarkedGraph& g, const std::string& v, std::int64_t d_v);

/// All admissible marked graphs over the input that balance at every
/// vertex, sorted by canonical form.
EnumerationResult enumerate(const DualGraphInput& input, const EnumerationLimits& limits = {});

/// Exhaustive scan over every orientation and contact order <= bound;
/// independent of enumerate and meant for small inputs.
std::vector<MarkedGraph> brute_force_enumerate(const DualGraphInput& input,
                                               std::int64_t contact_bound);

} // namespace logmap
