#include "logmap/marked_graph.hpp"
#include "logmap/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <utility>

namespace logmap {

const Vertex* MarkedGraph::find_vertex(const std::string& id) const {
  auto it = std::find_if(vertices.begin(), vertices.end(),
                         [&](const Vertex& v) { return v.id == id; });
  return it == vertices.end() ? nullptr : &*it;
}

const Edge* MarkedGraph::find_edge(const std::string& id) const {
  auto it = std::find_if(edges.begin(), edges.end(), [&](const Edge& e) { return e.id == id; });
  return it == edges.end() ? nullptr : &*it;
}

std::string_view to_string(GraphIssue issue) {
  switch (issue) {
  case GraphIssue::DuplicateId: return "DuplicateId";
  case GraphIssue::UnknownVertex: return "UnknownVertex";
  case GraphIssue::NegativeContact: return "NegativeContact";
  case GraphIssue::LoopWithContact: return "LoopWithContact";
  case GraphIssue::OrientationContactMismatch: return "OrientationContactMismatch";
  case GraphIssue::OrientationNotAlongEdge: return "OrientationNotAlongEdge";
  case GraphIssue::OrientedIntoNondegenerate: return "OrientedIntoNondegenerate";
  case GraphIssue::Disconnected: return "Disconnected";
  }
  return "Unknown";
}

std::string orientation_label(const Edge& e) {
  return e.orientation ? e.orientation->initial + "->" + e.orientation->end : "none";
}

namespace {

class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

private:
  std::vector<std::size_t> parent_;
};

/// Vertices sorted by id with a lookup table.
struct VertexIndex {
  std::vector<std::string> ids;
  std::map<std::string, std::size_t> at;

  explicit VertexIndex(const MarkedGraph& g) {
    for (const auto& v : g.vertices) ids.push_back(v.id);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (std::size_t i = 0; i < ids.size(); ++i) at[ids[i]] = i;
  }
  std::size_t operator[](const std::string& id) const {
    auto it = at.find(id);
    if (it == at.end()) throw Error(ErrorKind::InvalidArgument, "unknown vertex '" + id + "'");
    return it->second;
  }
};

std::vector<const Edge*> edges_by_id(const MarkedGraph& g) {
  std::vector<const Edge*> out;
  for (const auto& e : g.edges) out.push_back(&e);
  std::sort(out.begin(), out.end(), [](const Edge* a, const Edge* b) { return a->id < b->id; });
  return out;
}

} // namespace

std::vector<Diagnostic> validate(const MarkedGraph& g) {
  std::vector<Diagnostic> out;
  auto report = [&](GraphIssue issue, std::vector<std::string> ids, std::string msg) {
    out.push_back(Diagnostic{issue, std::move(ids), std::move(msg)});
  };

  std::set<std::string> seen_v, seen_e, seen_l;
  std::map<std::string, bool> nondeg;
  for (const auto& v : g.vertices) {
    if (!seen_v.insert(v.id).second)
      report(GraphIssue::DuplicateId, {v.id}, "vertex id '" + v.id + "' appears twice");
    nondeg[v.id] = v.nondegenerate;
  }
  for (const auto& e : g.edges)
    if (!seen_e.insert(e.id).second)
      report(GraphIssue::DuplicateId, {e.id}, "edge id '" + e.id + "' appears twice");
  for (const auto& l : g.legs)
    if (!seen_l.insert(l.id).second)
      report(GraphIssue::DuplicateId, {l.id}, "leg id '" + l.id + "' appears twice");

  bool ends_known = true;
  for (const auto& e : g.edges) {
    for (const auto& end : e.ends)
      if (!nondeg.count(end)) {
        ends_known = false;
        report(GraphIssue::UnknownVertex, {e.id, end},
               "edge '" + e.id + "' ends at unknown vertex '" + end + "'");
      }
    if (e.contact_order < 0)
      report(GraphIssue::NegativeContact, {e.id}, "edge '" + e.id + "' has negative contact order");
    if (e.is_loop() && e.contact_order != 0)
      report(GraphIssue::LoopWithContact, {e.id},
             "loop '" + e.id + "' must have contact order 0");
    if (e.orientation.has_value() != (e.contact_order != 0))
      report(GraphIssue::OrientationContactMismatch, {e.id},
             "edge '" + e.id + "' must be oriented exactly when its contact order is nonzero");
    if (e.orientation) {
      const auto& o = *e.orientation;
      bool along = (o.initial == e.ends[0] && o.end == e.ends[1]) ||
                   (o.initial == e.ends[1] && o.end == e.ends[0]);
      if (!along) {
        report(GraphIssue::OrientationNotAlongEdge, {e.id},
               "orientation of edge '" + e.id + "' does not join its ends");
      } else if (nondeg.count(o.end) && nondeg[o.end]) {
        report(GraphIssue::OrientedIntoNondegenerate, {e.id, o.end},
               "oriented edge '" + e.id + "' ends at nondegenerate vertex '" + o.end + "'");
      }
    }
  }
  for (const auto& l : g.legs) {
    if (!nondeg.count(l.vertex))
      report(GraphIssue::UnknownVertex, {l.id, l.vertex},
             "leg '" + l.id + "' is attached to unknown vertex '" + l.vertex + "'");
    if (l.contact_order < 0)
      report(GraphIssue::NegativeContact, {l.id}, "leg '" + l.id + "' has negative contact order");
  }

  if (g.vertices.empty()) {
    report(GraphIssue::Disconnected, {}, "graph has no vertices");
  } else if (ends_known) {
    VertexIndex idx(g);
    UnionFind uf(idx.ids.size());
    for (const auto& e : g.edges) uf.unite(idx[e.ends[0]], idx[e.ends[1]]);
    std::vector<std::string> stray;
    for (std::size_t i = 0; i < idx.ids.size(); ++i)
      if (uf.find(i) != 0) stray.push_back(idx.ids[i]);
    if (!stray.empty())
      report(GraphIssue::Disconnected, stray, "graph is disconnected");
  }
  return out;
}

void require_valid(const MarkedGraph& g) {
  auto diags = validate(g);
  if (!diags.empty())
    throw Error(ErrorKind::InvalidArgument,
                std::string(to_string(diags.front().issue)) + ": " + diags.front().message);
}

bool has_strict_cycle(const MarkedGraph& g) {
  VertexIndex idx(g);
  UnionFind uf(idx.ids.size());
  for (const auto& e : g.edges)
    if (!e.orientation) uf.unite(idx[e.ends[0]], idx[e.ends[1]]);

  const std::size_t n = idx.ids.size();
  std::vector<std::vector<std::size_t>> out(n);
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& e : g.edges) {
    if (!e.orientation) continue;
    std::size_t a = uf.find(idx[e.orientation->initial]);
    std::size_t b = uf.find(idx[e.orientation->end]);
    if (a == b) return true;
    out[a].push_back(b);
    ++indegree[b];
  }
  // Kahn's algorithm on the condensed graph.
  std::vector<std::size_t> ready;
  std::size_t nodes = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (uf.find(i) != i) continue;
    ++nodes;
    if (indegree[i] == 0) ready.push_back(i);
  }
  std::size_t removed = 0;
  while (!ready.empty()) {
    std::size_t a = ready.back();
    ready.pop_back();
    ++removed;
    for (std::size_t b : out[a])
      if (--indegree[b] == 0) ready.push_back(b);
  }
  return removed != nodes;
}

std::string vertex_generator(const std::string& id) { return "v:" + id; }
std::string edge_generator(const std::string& id) { return "l:" + id; }

const Vector& AssociatedMonoid::vertex_image(const std::string& id) const {
  return generator_images.at(vertex_generator(id));
}

const Vector& AssociatedMonoid::edge_image(const std::string& id) const {
  return generator_images.at(edge_generator(id));
}

MonoidPresentation graph_presentation(const MarkedGraph& g) {
  VertexIndex idx(g);
  const auto edges = edges_by_id(g);
  const std::size_t nv = idx.ids.size();
  const std::size_t n = nv + edges.size();

  MonoidPresentation p;
  for (const auto& id : idx.ids) p.generators.push_back(vertex_generator(id));
  for (const Edge* e : edges) p.generators.push_back(edge_generator(e->id));

  for (const auto& id : idx.ids) {
    if (!g.find_vertex(id)->nondegenerate) continue;
    MonoidPresentation::Relation r{Vector(n), Vector(n), "h_v:" + id};
    r.lhs[idx[id]] = 1;
    p.relations.push_back(std::move(r));
  }
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const Edge& e = *edges[k];
    MonoidPresentation::Relation r{Vector(n), Vector(n), "h_l:" + e.id};
    if (e.orientation) {
      // e_end = e_initial + c * e_l
      r.lhs[idx[e.orientation->end]] += 1;
      r.rhs[idx[e.orientation->initial]] += 1;
      r.rhs[nv + k] += e.contact_order;
    } else {
      // e_u = e_w, with e_l left free.
      r.lhs[idx[e.ends[0]]] += 1;
      r.rhs[idx[e.ends[1]]] += 1;
    }
    p.relations.push_back(std::move(r));
  }
  return p;
}

AssociatedMonoid associated_monoid(const MarkedGraph& g) {
  require_valid(g);
  AssociatedMonoid am;
  am.presentation = graph_presentation(g);
  am.group = groupify(am.presentation);
  am.unsaturated = affine_image(am.group);
  am.saturated = saturate(am.unsaturated);
  for (std::size_t i = 0; i < am.presentation.generators.size(); ++i)
    am.generator_images[am.presentation.generators[i]] = am.group.projection[i];
  return am;
}

Admissibility admissibility(const MarkedGraph& g, bool strict_degeneracy) {
  require_valid(g);
  const MonoidPresentation p = graph_presentation(g);
  const GroupData group = groupify(p);
  const AffineMonoid n = affine_image(group);
  if (!n.sharp()) return {false, "NotSharp"};
  for (std::size_t i = 0; i < p.generators.size(); ++i) {
    const std::string& name = p.generators[i];
    if (name.starts_with("l:") && is_zero(group.projection[i]))
      return {false, "EdgeVanishes:" + name.substr(2)};
  }
  if (strict_degeneracy) {
    for (std::size_t i = 0; i < p.generators.size(); ++i) {
      const std::string& name = p.generators[i];
      if (!name.starts_with("v:")) continue;
      const std::string id = name.substr(2);
      if (!g.find_vertex(id)->nondegenerate && is_zero(group.projection[i]))
        return {false, "DegeneracyVanishes:" + id};
    }
  }
  return {true, "ok"};
}

bool is_admissible(const MarkedGraph& g) { return admissibility(g).admissible; }

std::map<std::string, Vector> degeneracies(const MarkedGraph& g) {
  require_valid(g);
  const MonoidPresentation p = graph_presentation(g);
  const GroupData group = groupify(p);
  std::map<std::string, Vector> out;
  for (std::size_t i = 0; i < p.generators.size(); ++i)
    if (p.generators[i].starts_with("v:")) out[p.generators[i].substr(2)] = group.projection[i];
  return out;
}

namespace {

// Lattice map of the associated monoid sending each generator to the
// corresponding row of `images`.
IntMatrix induced_matrix(const AssociatedMonoid& am, const std::vector<Vector>& images,
                         std::size_t target_rank) {
  IntMatrix a = IntMatrix::from_rows(images, target_rank);
  IntMatrix m = am.group.lift * a;
  if (am.group.projection_matrix() * m != a)
    throw std::logic_error("generator assignment does not factor through the associated monoid");
  return m;
}

std::vector<Vector> map_all(const std::vector<Vector>& xs, const IntMatrix& m) {
  std::vector<Vector> out;
  for (const auto& x : xs) out.push_back(image_of(x, m));
  return out;
}

} // namespace

Specialization specialize(const MarkedGraph& g, const SpecializationSpec& spec) {
  require_valid(g);
  const Admissibility adm = admissibility(g);
  if (!adm.admissible)
    throw Error(ErrorKind::InvalidArgument, "specialize needs an admissible graph (" + adm.reason + ")");

  std::set<std::string> contracted(spec.contracted_edges.begin(), spec.contracted_edges.end());
  std::set<std::string> vanish(spec.newly_nondegenerate.begin(), spec.newly_nondegenerate.end());
  for (const auto& id : contracted)
    if (!g.find_edge(id)) throw Error(ErrorKind::InvalidSpec, "unknown edge '" + id + "'");
  for (const auto& id : vanish) {
    const Vertex* v = g.find_vertex(id);
    if (!v) throw Error(ErrorKind::InvalidSpec, "unknown vertex '" + id + "'");
    if (v->nondegenerate)
      throw Error(ErrorKind::InvalidSpec, "vertex '" + id + "' is already nondegenerate");
  }

  const AssociatedMonoid am = associated_monoid(g);
  const AffineMonoid& sat = am.saturated;

  // The killed elements must span a face of the cone.
  std::vector<Vector> zero_set;
  for (const auto& id : contracted) zero_set.push_back(am.edge_image(id));
  for (const auto& id : vanish) zero_set.push_back(am.vertex_image(id));
  std::vector<const Vector*> tight;
  for (const auto& h : sat.normals())
    if (std::all_of(zero_set.begin(), zero_set.end(),
                    [&](const Vector& z) { return sgn(dot(h, z)) == 0; }))
      tight.push_back(&h);
  for (const auto& ray : sat.extremal_rays()) {
    bool in_face = std::all_of(tight.begin(), tight.end(),
                               [&](const Vector* h) { return sgn(dot(*h, ray)) == 0; });
    if (!in_face) continue;
    bool hit = std::any_of(zero_set.begin(), zero_set.end(),
                           [&](const Vector& z) { return !is_zero(z) && primitive(z) == ray; });
    if (!hit)
      throw Error(ErrorKind::NotAFace, "the killed elements do not span a face: ray " +
                                           to_string(ray) + " is not reached");
  }
  FaceQuotient face = face_quotient(sat, smallest_face(sat, zero_set));

  // Contract and relabel.
  VertexIndex idx(g);
  UnionFind uf(idx.ids.size());
  for (const auto& id : contracted) {
    const Edge* e = g.find_edge(id);
    uf.unite(idx[e->ends[0]], idx[e->ends[1]]);
  }
  Specialization out;
  std::map<std::size_t, Vertex> merged;
  for (const auto& id : idx.ids) {
    const std::size_t root = uf.find(idx[id]);
    const Vertex& v = *g.find_vertex(id);
    auto [it, fresh] = merged.try_emplace(root, Vertex{idx.ids[root], false, std::int64_t{0}});
    Vertex& m = it->second;
    m.nondegenerate = m.nondegenerate || v.nondegenerate || vanish.count(id) > 0;
    if (m.multidegree && v.multidegree)
      *m.multidegree += *v.multidegree;
    else
      m.multidegree.reset();
    out.vertex_map[id] = idx.ids[root];
  }
  for (auto& [root, v] : merged) out.graph.vertices.push_back(std::move(v));
  for (const auto& e : g.edges) {
    if (contracted.count(e.id)) continue;
    Edge ne = e;
    ne.ends = {out.vertex_map[e.ends[0]], out.vertex_map[e.ends[1]]};
    if (ne.orientation)
      ne.orientation = Orientation{out.vertex_map[e.orientation->initial],
                                   out.vertex_map[e.orientation->end]};
    out.graph.edges.push_back(std::move(ne));
  }
  for (const auto& l : g.legs) {
    Leg nl = l;
    nl.vertex = out.vertex_map[l.vertex];
    out.graph.legs.push_back(std::move(nl));
  }
  if (auto diags = validate(out.graph); !diags.empty()) {
    std::string msg = "specialized graph is invalid:";
    for (const auto& d : diags) msg += " " + std::string(to_string(d.issue)) + " (" + d.message + ");";
    throw Error(ErrorKind::ResultInvalid, msg);
  }

  const AssociatedMonoid target = associated_monoid(out.graph);
  const std::size_t rt = target.saturated.rank();
  std::vector<Vector> images;
  for (const auto& name : am.presentation.generators) {
    const std::string id = name.substr(2);
    if (name.starts_with("v:"))
      images.push_back(target.vertex_image(out.vertex_map.at(id)));
    else if (contracted.count(id))
      images.push_back(Vector(rt));
    else
      images.push_back(target.edge_image(id));
  }
  IntMatrix m = induced_matrix(am, images, rt);
  out.induced = MonoidMorphism{sat, target.saturated, map_all(sat.generators(), m), m};

  IntMatrix psi = left_inverse(face.map.group_matrix) * m;
  out.comparison = MonoidMorphism{face.quotient, target.saturated,
                                  map_all(face.quotient.generators(), psi), psi};
  out.coherent = face.map.group_matrix * psi == m && is_isomorphism(out.comparison);
  out.face = std::move(face);
  return out;
}

bool minimality_check(const MarkedGraph& g, const AffineMonoid& target,
                      const std::map<std::string, Vector>& assignment) {
  require_valid(g);
  if (!target.sharp()) throw Error(ErrorKind::NotSharp, "minimality target must be sharp");
  if (!is_saturated(target))
    throw Error(ErrorKind::InvalidArgument, "minimality target must be saturated");

  const MonoidPresentation p = graph_presentation(g);
  std::vector<Vector> images;
  for (const auto& name : p.generators) {
    auto it = assignment.find(name);
    if (it == assignment.end())
      throw Error(ErrorKind::InvalidArgument, "assignment misses generator '" + name + "'");
    if (it->second.size() != target.rank())
      throw Error(ErrorKind::InvalidArgument,
                  "assignment of '" + name + "' has the wrong rank");
    images.push_back(it->second);
  }
  for (const auto& [name, v] : assignment)
    if (std::find(p.generators.begin(), p.generators.end(), name) == p.generators.end())
      throw Error(ErrorKind::InvalidArgument, "assignment names unknown generator '" + name + "'");

  for (const auto& r : p.relations) {
    Vector lhs(target.rank()), rhs(target.rank());
    for (std::size_t i = 0; i < p.generators.size(); ++i) {
      if (sgn(r.lhs[i]) != 0) lhs = lhs + r.lhs[i] * images[i];
      if (sgn(r.rhs[i]) != 0) rhs = rhs + r.rhs[i] * images[i];
    }
    if (lhs != rhs)
      throw Error(ErrorKind::RelationViolated, "assignment violates relation " + r.label);
  }

  const AssociatedMonoid am = associated_monoid(g);
  IntMatrix m = induced_matrix(am, images, target.rank());
  AffineMonoid sat_target = target.saturated() ? target : saturate(target);
  MonoidMorphism phi{am.saturated, sat_target, map_all(am.saturated.generators(), m), m};
  for (const auto& img : phi.generator_images)
    if (!sat_target.in_cone(img)) return false;
  return is_isomorphism(phi);
}

CanonicalForm canonical_form(const MarkedGraph& g) {
  CanonicalForm out;
  for (const auto& e : g.edges) out.emplace_back(e.id, orientation_label(e), e.contact_order);
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace logmap
