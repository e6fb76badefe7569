#include "logmap/enumeration.hpp"
#include "logmap/error.hpp"
#include "logmap/json_io.hpp"
#include "logmap/marked_graph.hpp"
#include "logmap/monoid.hpp"
#include "logmap/normal_form.hpp"
#include "oracles.hpp"
#include "suites.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace logmap;
namespace t = logmap::testing;
namespace io = logmap::json;

namespace {

constexpr double kSmithSeconds = 5.0;
constexpr double kSaturationSeconds = 30.0;
constexpr double kStrictCycleSeconds = 300.0;
constexpr double kEnumerationSeconds = 120.0;
constexpr long kMultipleCap = 64;
constexpr int kSuiteVertices = 4, kSuiteEdges = 5, kSuiteContact = 3;
constexpr std::int64_t kBruteForceBound = 10;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
  std::string first_failure;

  void fail(const std::string& why) {
    if (pass) first_failure = why;
    pass = false;
  }
};

Vector combination(const std::vector<Vector>& gens, const std::vector<Integer>& coeffs, std::size_t rank) {
  Vector s = zero_vector(rank);
  for (std::size_t i = 0; i < gens.size(); ++i) s = s + coeffs[i] * gens[i];
  return s;
}

std::string describe(const MarkedGraph& g) { return io::to_json(g).dump(); }

// ---------------------------------------------------------------------------

Outcome smith_forms() {
  Outcome o;
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  const auto start = Clock::now();
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t m = dim(rng), n = dim(rng);
    const IntMatrix a = IntMatrix::from_rows(t::to_vectors(t::random_rows(rng, m, n, -9, 9)), n);
    const SmithForm s = smith_normal_form(a);
    bool ok = s.U * a * s.V == s.D && abs(determinant(s.U)) == 1 && abs(determinant(s.V)) == 1;
    for (std::size_t i = 0; i < m && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j) ok = i == j ? s.D(i, j) >= 0 : s.D(i, j) == 0;
    for (std::size_t i = 0; i + 1 < std::min(m, n) && ok; ++i)
      ok = s.D(i, i) == 0 ? s.D(i + 1, i + 1) == 0 : s.D(i + 1, i + 1) % s.D(i, i) == 0;
    if (!ok) o.fail("matrix #" + std::to_string(trial));
  }
  const double secs = seconds_since(start);
  if (secs >= kSmithSeconds) o.fail("runtime " + std::to_string(secs) + " s");
  std::ostringstream d;
  d << "1000 matrices, " << std::fixed << std::setprecision(2) << secs << " s";
  o.detail = d.str();
  return o;
}

Outcome saturation_oracle() {
  Outcome o;
  std::mt19937_64 rng(424242);
  std::uniform_int_distribution<std::size_t> rank_dist(1, 3), count_dist(1, 5);
  const auto start = Clock::now();
  std::size_t total_hb = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = rank_dist(rng);
    const auto gens = t::random_rows(rng, count_dist(rng), r, 0, 4);
    const AffineMonoid sat = saturate(AffineMonoid(r, t::to_vectors(gens)));
    const auto expected = t::to_vectors(t::box_hilbert_basis(gens, r, 12));
    total_hb += expected.size();
    if (sat.hilbert_basis() != expected) o.fail("instance #" + std::to_string(trial));
  }
  const double secs = seconds_since(start);
  if (secs >= kSaturationSeconds) o.fail("runtime " + std::to_string(secs) + " s");
  std::ostringstream d;
  d << "200 monoids, " << total_hb << " basis elements, " << std::fixed << std::setprecision(2) << secs << " s";
  o.detail = d.str();
  return o;
}

struct SmallGraphSuite {
  std::vector<MarkedGraph> graphs;
  std::vector<const MarkedGraph*> admissible;
};

const SmallGraphSuite& suite() {
  static const SmallGraphSuite s = [] {
    SmallGraphSuite out;
    out.graphs = t::small_marked_graphs(kSuiteVertices, kSuiteEdges, kSuiteContact);
    for (const auto& g : out.graphs)
      if (is_admissible(g)) out.admissible.push_back(&g);
    return out;
  }();
  return s;
}

bool full_verdict(const MarkedGraph& g) {
  const AssociatedMonoid am = associated_monoid(g);
  if (!am.saturated.sharp()) return false;
  return std::none_of(g.edges.begin(), g.edges.end(),
                      [&](const Edge& e) { return is_zero(am.edge_image(e.id)); });
}

Outcome no_strict_cycles() {
  Outcome o;
  const auto start = Clock::now();
  const auto& s = suite();
  std::size_t cycles = 0, counterexamples = 0, disagreements = 0;
  for (const auto& g : s.graphs) {
    if (!has_strict_cycle(g)) continue;
    ++cycles;
    const bool fast = is_admissible(g);
    const bool full = full_verdict(g);
    if (fast != full) {
      ++disagreements;
      o.fail("verdicts disagree on " + describe(g));
    }
    if (fast || full) {
      ++counterexamples;
      o.fail("admissible with a strict cycle: " + describe(g));
    }
  }
  const double secs = seconds_since(start);
  if (secs >= kStrictCycleSeconds) o.fail("runtime " + std::to_string(secs) + " s");
  std::ostringstream d;
  d << s.graphs.size() << " graphs up to isomorphism, " << s.admissible.size() << " admissible, "
    << cycles << " with strict cycles, " << counterexamples << " counterexamples, " << std::fixed
    << std::setprecision(1) << secs << " s";
  o.detail = d.str();
  return o;
}

// Vertices whose non-oriented component receives no oriented edge.
std::set<std::string> minimal_vertices(const MarkedGraph& g) {
  std::map<std::string, std::string> parent;
  for (const auto& v : g.vertices) parent[v.id] = v.id;
  std::function<std::string(const std::string&)> find = [&](const std::string& x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& e : g.edges)
    if (!e.orientation) parent[find(e.ends[0])] = find(e.ends[1]);
  std::set<std::string> reached;
  for (const auto& e : g.edges)
    if (e.orientation) reached.insert(find(e.orientation->end));
  std::set<std::string> out;
  for (const auto& v : g.vertices)
    if (!reached.count(find(v.id))) out.insert(v.id);
  return out;
}

struct LemmaStats {
  std::size_t graphs = 0, elements = 0, ray_elements = 0;
  long max_multiple = 0;
};

struct SpecializationStats {
  std::size_t specs = 0, coherent = 0, not_a_face = 0, invalid_result = 0;
};

struct SuiteChecks {
  Outcome multiples, rays, specialization;
  LemmaStats lemma;
  SpecializationStats spec;
  double seconds = 0;
};

// Independent re-derivation of the factorization through the face quotient.
bool check_specialization(const MarkedGraph& g, const AssociatedMonoid& am, const SpecializationSpec& spec,
                          const Specialization& s, std::string& why) {
  const AssociatedMonoid after = associated_monoid(s.graph);
  if (s.induced.target.hilbert_basis() != after.saturated.hilbert_basis()) {
    why = "target is not the monoid of the specialized graph";
    return false;
  }
  const std::set<std::string> contracted(spec.contracted_edges.begin(), spec.contracted_edges.end());
  for (const auto& v : g.vertices)
    if (s.induced(am.vertex_image(v.id)) != after.vertex_image(s.vertex_map.at(v.id))) {
      why = "vertex " + v.id + " not sent to its merged vertex";
      return false;
    }
  for (const auto& e : g.edges) {
    const Vector img = s.induced(am.edge_image(e.id));
    const bool ok = contracted.count(e.id) ? is_zero(img) : img == after.edge_image(e.id);
    if (!ok) {
      why = "edge " + e.id + " has the wrong image";
      return false;
    }
  }
  std::vector<Vector> killed;
  for (const auto& id : spec.contracted_edges) killed.push_back(am.edge_image(id));
  for (const auto& id : spec.newly_nondegenerate) killed.push_back(am.vertex_image(id));
  const FaceQuotient fq = face_quotient(am.saturated, smallest_face(am.saturated, killed));
  if (fq.quotient.rank() != after.saturated.rank()) {
    why = "face quotient rank differs";
    return false;
  }
  const IntMatrix psi = left_inverse(fq.map.group_matrix) * s.induced.group_matrix;
  if (fq.map.group_matrix * psi != s.induced.group_matrix) {
    why = "induced map does not factor through the face quotient";
    return false;
  }
  std::vector<Vector> images;
  for (const auto& h : fq.quotient.generators()) images.push_back(image_of(h, psi));
  if (!is_isomorphism(MonoidMorphism{fq.quotient, after.saturated, images, psi})) {
    why = "comparison map is not an isomorphism";
    return false;
  }
  return true;
}

SuiteChecks suite_checks() {
  SuiteChecks c;
  const auto start = Clock::now();
  for (const MarkedGraph* gp : suite().admissible) {
    const MarkedGraph& g = *gp;
    const AssociatedMonoid am = associated_monoid(g);
    const AffineMonoid& sat = am.saturated;
    ++c.lemma.graphs;

    const auto& rays = sat.extremal_rays();
    const auto minimal = minimal_vertices(g);
    std::vector<Vector> named;
    for (const auto& id : minimal) named.push_back(am.vertex_image(id));
    for (const auto& e : g.edges) named.push_back(am.edge_image(e.id));

    for (const auto& a : sat.hilbert_basis()) {
      ++c.lemma.elements;
      try {
        const MultipleResult m = multiple_in_unsaturated(am.unsaturated, a, kMultipleCap);
        c.lemma.max_multiple = std::max(c.lemma.max_multiple, m.multiple.get_si());
        if (m.multiple < 1 || m.multiple > kMultipleCap ||
            combination(am.unsaturated.generators(), m.certificate, sat.rank()) != m.multiple * a ||
            std::any_of(m.certificate.begin(), m.certificate.end(), [](const Integer& x) { return x < 0; }))
          c.multiples.fail("bad certificate for " + to_string(a) + " in " + describe(g));
      } catch (const Error& e) {
        c.multiples.fail(std::string(e.what()) + " in " + describe(g));
      }

      if (!std::binary_search(rays.begin(), rays.end(), a, LexLess{})) continue;
      ++c.lemma.ray_elements;
      const bool hit = std::any_of(named.begin(), named.end(),
                                   [&](const Vector& x) { return !is_zero(x) && primitive(x) == a; });
      if (!hit) c.rays.fail("ray element " + to_string(a) + " unnamed in " + describe(g));
    }

    std::vector<SpecializationSpec> specs;
    for (const auto& e : g.edges) specs.push_back({{e.id}, {}});
    for (const auto& v : g.vertices)
      if (!v.nondegenerate) specs.push_back({{}, {v.id}});
    for (const auto& spec : specs) {
      ++c.spec.specs;
      try {
        const Specialization s = specialize(g, spec);
        std::string why;
        if (!s.coherent) why = "specialize reports incoherence";
        if (why.empty() && check_specialization(g, am, spec, s, why)) {
          ++c.spec.coherent;
        } else {
          c.specialization.fail(why + " in " + describe(g));
        }
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::NotAFace) ++c.spec.not_a_face;
        else if (e.kind() == ErrorKind::ResultInvalid) ++c.spec.invalid_result;
        else c.specialization.fail(std::string(e.what()) + " in " + describe(g));
      }
    }
  }
  c.seconds = seconds_since(start);

  std::ostringstream m;
  m << c.lemma.graphs << " admissible graphs, " << c.lemma.elements << " basis elements, largest multiple "
    << c.lemma.max_multiple << " (cap " << kMultipleCap << ")";
  c.multiples.detail = m.str();
  std::ostringstream r;
  r << c.lemma.ray_elements << " basis elements on extremal rays";
  c.rays.detail = r.str();
  std::ostringstream s;
  s << c.spec.specs << " single contractions/vanishings: " << c.spec.coherent << " coherent, "
    << c.spec.not_a_face << " fail the face test, " << c.spec.invalid_result
    << " give an invalid graph (rejected), " << std::fixed << std::setprecision(1) << c.seconds
    << " s for criteria 4-6";
  c.specialization.detail = s.str();
  return c;
}

Outcome enumeration_oracle() {
  Outcome o;
  const auto start = Clock::now();
  const auto inputs = t::small_dual_inputs(3, 3, 4, 4);
  std::size_t solutions = 0, at_bound = 0;
  EnumerationLimits limits;
  limits.threads = 1;
  for (const auto& in : inputs) {
    const EnumerationResult r = enumerate(in, limits);
    const auto brute = brute_force_enumerate(in, kBruteForceBound);
    for (const auto& g : brute)
      for (const auto& e : g.edges)
        if (e.contact_order == kBruteForceBound) ++at_bound;
    solutions += r.graphs.size();
    std::set<CanonicalForm> a, b;
    for (const auto& g : r.graphs) a.insert(canonical_form(g));
    for (const auto& g : brute) b.insert(canonical_form(g));
    if (!r.complete || a != b || a.size() != r.graphs.size()) {
      std::ostringstream msg;
      msg << "mismatch (" << a.size() << " vs " << b.size() << ") on input with " << in.edges.size()
          << " edges";
      o.fail(msg.str());
    }
  }
  const double secs = seconds_since(start);
  if (at_bound) o.fail("brute-force solutions reach the contact bound");
  if (secs >= kEnumerationSeconds) o.fail("runtime " + std::to_string(secs) + " s");
  std::ostringstream d;
  d << inputs.size() << " inputs up to isomorphism, " << solutions << " solutions, " << std::fixed
    << std::setprecision(1) << secs << " s";
  o.detail = d.str();
  return o;
}

Outcome worked_examples() {
  Outcome o;
  const auto v = [](std::string id, bool nd = false) { return Vertex{std::move(id), nd, {}}; };
  const auto arrow = [](std::string id, std::string a, std::string b, std::int64_t c) {
    return Edge{std::move(id), {a, b}, c, Orientation{a, b}};
  };
  struct Expectation {
    MarkedGraph g;
    std::size_t rank;
    std::vector<std::int64_t> torsion;
    std::size_t hb_size;
  };
  const std::vector<Expectation> cases{
      {{{v("v1", true), v("v2")}, {arrow("l", "v1", "v2", 1)}, {}}, 1, {}, 1},
      {{{v("v1"), v("v2")}, {arrow("l1", "v1", "v2", 1), arrow("l2", "v1", "v2", 2)}, {}}, 2, {}, 2},
      {{{v("v1"), v("v2")}, {arrow("l1", "v1", "v2", 2), arrow("l2", "v1", "v2", 2)}, {}}, 2, {2}, 2},
  };
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const auto& ex = cases[k];
    const std::string tag = "example " + std::to_string(k + 1) + ": ";
    const AssociatedMonoid am = associated_monoid(ex.g);

    // Group invariants from minors of the relation matrix.
    std::vector<t::SmallVec> rows;
    const IntMatrix rel = am.presentation.relation_matrix();
    for (std::size_t i = 0; i < rel.rows(); ++i) rows.push_back(t::to_small(rel.row_vector(i)));
    const auto inv = t::quotient_invariants(rows, am.presentation.generators.size());
    std::vector<std::int64_t> torsion;
    for (const auto& d : am.group.torsion_invariants) torsion.push_back(d.get_si());
    if (inv.free_rank != ex.rank || am.saturated.rank() != ex.rank) o.fail(tag + "rank");
    if (inv.torsion != ex.torsion || torsion != ex.torsion) o.fail(tag + "torsion");

    // Hilbert basis from a signed box scan over the generator images.
    std::vector<t::SmallVec> gens;
    for (const auto& g : am.unsaturated.generators()) gens.push_back(t::to_small(g));
    const auto hb = t::to_vectors(t::signed_box_hilbert_basis(gens, ex.rank, 8));
    if (hb != am.saturated.hilbert_basis() || hb.size() != ex.hb_size) o.fail(tag + "Hilbert basis");
  }
  const AssociatedMonoid one = associated_monoid(cases[0].g);
  if (!is_zero(one.vertex_image("v1")) || one.edge_image("l") != one.vertex_image("v2") ||
      one.saturated.hilbert_basis() != std::vector<Vector>{one.edge_image("l")})
    o.fail("example 1: generator images");
  const AssociatedMonoid two = associated_monoid(cases[1].g);
  if (two.edge_image("l1") != Integer(2) * two.edge_image("l2")) o.fail("example 2: e_l1 = 2 e_l2");
  const AssociatedMonoid three = associated_monoid(cases[2].g);
  if (three.edge_image("l1") != three.edge_image("l2") ||
      three.group.torsion_part[2] == three.group.torsion_part[3])
    o.fail("example 3: torsion class of e_l1 - e_l2");
  o.detail = "rank, torsion and Hilbert basis of 3 examples against minor-gcd and box-scan oracles";
  return o;
}

#ifdef LOGMAP_CLI_PATH

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run_cli(const std::string& env, const std::string& args) {
  const std::string cmd = env + " " + LOGMAP_CLI_PATH + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Outcome cli_contract() {
  Outcome o;
  const std::string f = std::string(LOGMAP_FIXTURES_DIR) + "/";
  struct Case {
    std::string args;
    int code;
  };
  const std::vector<Case> cases{
      {"monoid -i " + f + "one_edge.json", 0},
      {"monoid -i " + f + "parallel_torsion.json", 0},
      {"monoid -i " + f + "parallel_mixed.json", 0},
      {"monoid -i " + f + "strict_cycle.json", 0},
      {"monoid -i " + f + "malformed.json", 2},
      {"monoid -i " + f + "unknown_key.json", 2},
      {"admissible -i " + f + "one_edge.json", 0},
      {"admissible -i " + f + "strict_cycle.json", 1},
      {"admissible -i " + f + "flat_to_nondegenerate.json", 0},
      {"admissible --strict-degeneracy -i " + f + "flat_to_nondegenerate.json", 1},
      {"enumerate -i " + f + "chain_input.json", 0},
      {"enumerate -i " + f + "triangle_input.json", 0},
      {"enumerate --max-solutions 1 -i " + f + "triangle_input.json", 1},
      {"enumerate -i " + f + "degree_mismatch.json", 2},
      {"enumerate -i " + f + "one_edge.json", 2},
      {"specialize --contract x -i " + f + "two_edges.json", 0},
      {"specialize --vanish v3 -i " + f + "two_edges.json", 1},
      {"specialize --contract nope -i " + f + "two_edges.json", 2},
      {"minimal -i " + f + "one_edge.json --target " + f + "target_n1.json --assignment " + f +
           "assignment_one_edge.json",
       0},
      {"minimal -i " + f + "one_edge.json --target " + f + "target_n1.json --assignment " + f +
           "assignment_doubled.json",
       1},
      {"minimal -i " + f + "one_edge.json --target " + f + "target_n1.json --assignment " + f +
           "assignment_broken.json",
       2},
  };
  std::size_t runs = 0;
  for (const auto& c : cases) {
    const CliRun first = run_cli("", c.args);
    const CliRun second = run_cli("", c.args);
    const CliRun single = run_cli("LOGMAP_THREADS=1", c.args);
    runs += 3;
    if (first.code != c.code) o.fail("exit " + std::to_string(first.code) + " for " + c.args);
    if (first.out != second.out || first.out != single.out || first.code != second.code)
      o.fail("output differs between runs for " + c.args);
  }
  // Every emitted graph re-parses and validates.
  const CliRun e = run_cli("", "enumerate -i " + f + "triangle_input.json");
  try {
    const auto doc = io::parse_document(e.out);
    for (const auto& g : doc.at("solutions"))
      if (!validate(io::marked_graph_from_json(g)).empty()) o.fail("emitted graph does not validate");
    const auto s = io::parse_document(run_cli("", "specialize --contract x -i " + f + "two_edges.json").out);
    if (!validate(io::marked_graph_from_json(s.at("graph"))).empty()) o.fail("specialized graph invalid");
  } catch (const std::exception& ex) {
    o.fail(std::string("round trip: ") + ex.what());
  }
  o.detail = std::to_string(cases.size()) + " invocations x 3 runs, exit codes and bytes compared";
  return o;
}

#endif

} // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  const auto wanted = [&](int k) { return only.empty() || only.count(k); };

  bool all = true;
  const auto report = [&](int k, const char* title, const Outcome& o) {
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << k << "  " << title << "  [" << o.detail << "]";
    if (!o.pass) std::cout << "  first failure: " << o.first_failure;
    std::cout << std::endl;
  };

  if (wanted(1)) report(1, "Smith normal form", smith_forms());
  if (wanted(2)) report(2, "saturation vs box scan", saturation_oracle());
  if (wanted(3)) report(3, "admissible implies no strict cycle", no_strict_cycles());
  if (wanted(4) || wanted(5) || wanted(6)) {
    const SuiteChecks c = suite_checks();
    if (wanted(4)) report(4, "multiples lie in the unsaturated monoid", c.multiples);
    if (wanted(5)) report(5, "extremal basis elements are named", c.rays);
    if (wanted(6)) report(6, "specialization coherence", c.specialization);
  }
  if (wanted(7)) report(7, "enumeration vs brute force", enumeration_oracle());
  if (wanted(8)) report(8, "worked associated-monoid examples", worked_examples());
#ifdef LOGMAP_CLI_PATH
  if (wanted(9)) report(9, "CLI determinism and exit codes", cli_contract());
#else
  if (wanted(9)) report(9, "CLI determinism and exit codes", Outcome{false, "CLI not built", "CLI not built"});
#endif
  return all ? 0 : 1;
}
