#include "logmap/json_io.hpp"
#include "logmap/error.hpp"

#include <algorithm>
#include <initializer_list>
#include <limits>
#include <set>

namespace logmap::json {
namespace {

[[noreturn]] void schema(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::SchemaViolation, "field '" + path + "': " + what);
}

void only_keys(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
  if (!j.is_object()) schema(path.empty() ? "<root>" : path, "expected an object");
  for (const auto& [k, v] : j.items()) {
    bool known = std::any_of(keys.begin(), keys.end(), [&](const char* x) { return k == x; });
    if (!known) schema(path.empty() ? k : path + "." + k, "unknown key");
  }
}

const json& required(const json& j, const std::string& path, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) schema(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string read_id(const json& j, const std::string& path) {
  if (!j.is_string()) schema(path, "expected a string");
  std::string s = j.get<std::string>();
  if (s.empty()) schema(path, "ids must be nonempty");
  for (unsigned char c : s)
    if (c >= 0x80) schema(path, "ids must be ASCII");
  return s;
}

std::int64_t read_int(const json& j, const std::string& path) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned() &&
        j.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
      schema(path, "integer out of range");
    return j.get<std::int64_t>();
  }
  schema(path, "expected an integer");
}

bool read_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) schema(path, "expected a boolean");
  return j.get<bool>();
}

Integer read_integer(const json& j, const std::string& path) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
    return Integer(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    Integer x;
    if (x.set_str(j.get<std::string>(), 10) != 0) schema(path, "expected a decimal integer");
    return x;
  }
  schema(path, "expected an integer");
}

Vector read_vector(const json& j, const std::string& path) {
  if (!j.is_array()) schema(path, "expected an array of integers");
  Vector v;
  for (std::size_t i = 0; i < j.size(); ++i)
    v.push_back(read_integer(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

const json& read_array(const json& j, const std::string& path) {
  if (!j.is_array()) schema(path, "expected an array");
  return j;
}

std::array<std::string, 2> read_ends(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) schema(path, "expected two vertex ids");
  return {read_id(j[0], path + "[0]"), read_id(j[1], path + "[1]")};
}

std::vector<Vertex> read_vertices(const json& j) {
  std::vector<Vertex> out;
  const json& arr = read_array(required(j, "", "vertices"), "vertices");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = "vertices[" + std::to_string(i) + "]";
    only_keys(arr[i], p, {"id", "nondegenerate", "multidegree"});
    Vertex v;
    v.id = read_id(required(arr[i], p, "id"), join(p, "id"));
    if (arr[i].contains("nondegenerate"))
      v.nondegenerate = read_bool(arr[i]["nondegenerate"], join(p, "nondegenerate"));
    if (arr[i].contains("multidegree"))
      v.multidegree = read_int(arr[i]["multidegree"], join(p, "multidegree"));
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Leg> read_legs(const json& j) {
  std::vector<Leg> out;
  if (!j.contains("legs")) return out;
  const json& arr = read_array(j["legs"], "legs");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = "legs[" + std::to_string(i) + "]";
    only_keys(arr[i], p, {"id", "vertex", "contact_order"});
    Leg l;
    l.id = read_id(required(arr[i], p, "id"), join(p, "id"));
    l.vertex = read_id(required(arr[i], p, "vertex"), join(p, "vertex"));
    l.contact_order = read_int(required(arr[i], p, "contact_order"), join(p, "contact_order"));
    if (l.contact_order < 0) schema(join(p, "contact_order"), "must be non-negative");
    out.push_back(std::move(l));
  }
  return out;
}

} // namespace

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::ParseError, "malformed JSON at line " + std::to_string(line) +
                                           ", column " + std::to_string(col) + ": " + e.what());
  }
}

MarkedGraph marked_graph_from_json(const json& j) {
  only_keys(j, "", {"vertices", "edges", "legs"});
  MarkedGraph g;
  g.vertices = read_vertices(j);
  const json& arr = read_array(required(j, "", "edges"), "edges");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = "edges[" + std::to_string(i) + "]";
    only_keys(arr[i], p, {"id", "ends", "contact_order", "orientation"});
    Edge e;
    e.id = read_id(required(arr[i], p, "id"), join(p, "id"));
    e.ends = read_ends(required(arr[i], p, "ends"), join(p, "ends"));
    e.contact_order = read_int(required(arr[i], p, "contact_order"), join(p, "contact_order"));
    const json& o = required(arr[i], p, "orientation");
    if (!o.is_string()) schema(join(p, "orientation"), "expected a string");
    const std::string label = o.get<std::string>();
    if (label != "none") {
      if (label == e.ends[0] + "->" + e.ends[1])
        e.orientation = Orientation{e.ends[0], e.ends[1]};
      else if (label == e.ends[1] + "->" + e.ends[0])
        e.orientation = Orientation{e.ends[1], e.ends[0]};
      else
        schema(join(p, "orientation"), "expected \"none\" or \"<end>-><end>\" over the edge's ends");
    }
    g.edges.push_back(std::move(e));
  }
  g.legs = read_legs(j);
  return g;
}

DualGraphInput dual_graph_from_json(const json& j) {
  only_keys(j, "", {"vertices", "edges", "legs"});
  DualGraphInput in;
  in.vertices = read_vertices(j);
  for (std::size_t i = 0; i < in.vertices.size(); ++i)
    if (!in.vertices[i].multidegree)
      schema("vertices[" + std::to_string(i) + "].multidegree", "missing");
  const json& arr = read_array(required(j, "", "edges"), "edges");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = "edges[" + std::to_string(i) + "]";
    if (arr[i].is_object()) {
      for (const char* k : {"contact_order", "orientation"})
        if (arr[i].contains(k)) schema(join(p, k), "not allowed in an enumeration input");
    }
    only_keys(arr[i], p, {"id", "ends"});
    in.edges.push_back({read_id(required(arr[i], p, "id"), join(p, "id")),
                        read_ends(required(arr[i], p, "ends"), join(p, "ends"))});
  }
  in.legs = read_legs(j);
  return in;
}

AffineMonoid monoid_from_json(const json& j) {
  only_keys(j, "", {"rank", "generators", "hilbert_basis", "extremal_rays", "sharp", "torsion",
                    "generator_images"});
  const std::int64_t rank = read_int(required(j, "", "rank"), "rank");
  if (rank < 0) schema("rank", "must be non-negative");
  if (j.contains("torsion") && !read_array(j["torsion"], "torsion").empty())
    schema("torsion", "target monoids must be torsion-free");
  if (j.contains("generators") == j.contains("hilbert_basis"))
    schema("generators", "give exactly one of \"generators\" or \"hilbert_basis\"");
  const char* key = j.contains("generators") ? "generators" : "hilbert_basis";
  const json& arr = read_array(j[key], key);
  std::vector<Vector> gens;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = std::string(key) + "[" + std::to_string(i) + "]";
    Vector v = read_vector(arr[i], p);
    if (static_cast<std::int64_t>(v.size()) != rank) schema(p, "length differs from rank");
    gens.push_back(std::move(v));
  }
  return AffineMonoid(static_cast<std::size_t>(rank), std::move(gens));
}

std::map<std::string, Vector> assignment_from_json(const json& j) {
  if (!j.is_object()) schema("<root>", "expected an object of generator name -> vector");
  std::map<std::string, Vector> out;
  for (const auto& [k, v] : j.items()) out[k] = read_vector(v, k);
  return out;
}

json to_json(const Integer& x) {
  if (x.fits_slong_p()) return json(x.get_si());
  return json(x.get_str());
}

json to_json(const Vector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

json to_json(const std::vector<Vector>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

json to_json(const IntMatrix& m) { return to_json(m.row_vectors()); }

json to_json(const MarkedGraph& g) {
  std::vector<const Vertex*> vs;
  for (const auto& v : g.vertices) vs.push_back(&v);
  std::sort(vs.begin(), vs.end(), [](auto* a, auto* b) { return a->id < b->id; });
  std::vector<const Edge*> es;
  for (const auto& e : g.edges) es.push_back(&e);
  std::sort(es.begin(), es.end(), [](auto* a, auto* b) { return a->id < b->id; });
  std::vector<const Leg*> ls;
  for (const auto& l : g.legs) ls.push_back(&l);
  std::sort(ls.begin(), ls.end(), [](auto* a, auto* b) { return a->id < b->id; });

  json out = json::object();
  out["vertices"] = json::array();
  for (const Vertex* v : vs) {
    json o = {{"id", v->id}, {"nondegenerate", v->nondegenerate}};
    if (v->multidegree) o["multidegree"] = *v->multidegree;
    out["vertices"].push_back(std::move(o));
  }
  out["edges"] = json::array();
  for (const Edge* e : es)
    out["edges"].push_back({{"id", e->id},
                            {"ends", {e->ends[0], e->ends[1]}},
                            {"contact_order", e->contact_order},
                            {"orientation", orientation_label(*e)}});
  out["legs"] = json::array();
  for (const Leg* l : ls)
    out["legs"].push_back({{"id", l->id}, {"vertex", l->vertex}, {"contact_order", l->contact_order}});
  return out;
}

json to_json(const MonoidMorphism& phi) {
  return {{"source", monoid_report(phi.source)},
          {"target", monoid_report(phi.target)},
          {"group_matrix", to_json(phi.group_matrix)},
          {"generator_images", to_json(phi.generator_images)}};
}

json monoid_report(const AffineMonoid& m, const std::vector<Integer>& torsion,
                   const std::map<std::string, Vector>& generator_images) {
  json out = json::object();
  out["rank"] = m.rank();
  out["torsion"] = to_json(Vector(torsion.begin(), torsion.end()));
  out["sharp"] = m.sharp();
  std::vector<Vector> hb, rays;
  if (m.sharp()) {
    hb = hilbert_basis(m);
    rays = m.extremal_rays();
  }
  sort_unique(hb);
  sort_unique(rays);
  out["hilbert_basis"] = to_json(hb);
  out["extremal_rays"] = to_json(rays);
  json images = json::object();
  for (const auto& [name, v] : generator_images) images[name] = to_json(v);
  out["generator_images"] = std::move(images);
  return out;
}

json monoid_report(const AssociatedMonoid& am) {
  return monoid_report(am.saturated, am.group.torsion_invariants, am.generator_images);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

} // namespace logmap::json
