#pragma once

#include "logmap/integer.hpp"
#include "logmap/monoid.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace logmap {

struct Vertex {
  std::string id;
  bool nondegenerate = false;
  std::optional<std::int64_t> multidegree;

  bool operator==(const Vertex&) const = default;
};

struct Orientation {
  std::string initial;
  std::string end;

  bool operator==(const Orientation&) const = default;
};

struct Edge {
  std::string id;
  std::array<std::string, 2> ends;
  std::int64_t contact_order = 0;
  std::optional<Orientation> orientation;

  bool is_loop() const { return ends[0] == ends[1]; }
  bool operator==(const Edge&) const = default;
};

struct Leg {
  std::string id;
  std::string vertex;
  std::int64_t contact_order = 0;

  bool operator==(const Leg&) const = default;
};

/// Dual graph of a nodal curve with its nondegenerate vertices, contact
/// orders and compatible partial orientation.
struct MarkedGraph {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<Leg> legs;

  const Vertex* find_vertex(const std::string& id) const;
  const Edge* find_edge(const std::string& id) const;

  bool operator==(const MarkedGraph&) const = default;
};

enum class GraphIssue {
  DuplicateId,
  UnknownVertex,
  NegativeContact,
  LoopWithContact,
  OrientationContactMismatch,
  OrientationNotAlongEdge,
  OrientedIntoNondegenerate,
  Disconnected,
};

std::string_view to_string(GraphIssue issue);

struct Diagnostic {
  GraphIssue issue;
  std::vector<std::string> ids;
  std::string message;
};

/// Every violated invariant, in a stable order; empty means valid.
std::vector<Diagnostic> validate(const MarkedGraph& g);

/// Throws InvalidArgument with the first diagnostic when g is invalid.
void require_valid(const MarkedGraph& g);

/// Closed walk following oriented edges forward, non-oriented edges freely,
/// with at least one oriented edge.
bool has_strict_cycle(const MarkedGraph& g);

/// Generator names used in presentations and reports.
std::string vertex_generator(const std::string& id);
std::string edge_generator(const std::string& id);

struct AssociatedMonoid {
  MonoidPresentation presentation;
  GroupData group;
  AffineMonoid unsaturated;
  AffineMonoid saturated;
  std::map<std::string, Vector> generator_images;

  const Vector& vertex_image(const std::string& id) const;
  const Vector& edge_image(const std::string& id) const;
};

/// Presentation with generators e_v (vertices by id) then e_l (edges by id).
MonoidPresentation graph_presentation(const MarkedGraph& g);
AssociatedMonoid associated_monoid(const MarkedGraph& g);

struct Admissibility {
  bool admissible = false;
  /// "ok", "NotSharp", "EdgeVanishes:<id>" or "DegeneracyVanishes:<id>".
  std::string reason;
};

/// Sharpness and nonvanishing edge elements only need the cone of N(G),
/// so this skips the Hilbert basis. With strict_degeneracy, degenerate
/// vertices must also have a nonzero element.
Admissibility admissibility(const MarkedGraph& g, bool strict_degeneracy = false);
bool is_admissible(const MarkedGraph& g);

/// Element of each vertex in the lattice of the associated monoid.
std::map<std::string, Vector> degeneracies(const MarkedGraph& g);

struct SpecializationSpec {
  std::vector<std::string> contracted_edges;
  std::vector<std::string> newly_nondegenerate;
};

struct Specialization {
  MarkedGraph graph;
  /// Old vertex id -> vertex id in the specialized graph.
  std::map<std::string, std::string> vertex_map;
  /// Induced map q' from the monoid of the input to that of the result.
  MonoidMorphism induced;
  /// Quotient of the input monoid by the face the spec kills.
  FaceQuotient face;
  /// Factorization of `induced` through the face quotient.
  MonoidMorphism comparison;
  /// comparison is an isomorphism and induced = comparison ∘ face.map.
  bool coherent = false;
};

Specialization specialize(const MarkedGraph& g, const SpecializationSpec& spec);

/// Whether the canonical map from the associated monoid to `target`
/// given by `assignment` (generator name -> target vector) is an
/// isomorphism. Throws RelationViolated when the assignment is not a
/// morphism.
bool minimality_check(const MarkedGraph& g, const AffineMonoid& target,
                      const std::map<std::string, Vector>& assignment);

/// Sorted (edge id, orientation, contact order) triples.
using CanonicalForm = std::vector<std::tuple<std::string, std::string, std::int64_t>>;
CanonicalForm canonical_form(const MarkedGraph& g);

/// "none" or "<initial>-><end>".
std::string orientation_label(const Edge& e);

} // namespace logmap
