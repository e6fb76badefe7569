#include "logmap/enumeration.hpp"
#include "logmap/error.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>
#include <utility>

namespace logmap {
namespace {

// Integer-indexed view of the input shared by both search routes.
struct Skeleton {
  std::vector<std::string> vertex_ids;
  std::vector<bool> nondegenerate;
  std::vector<std::int64_t> degree;
  /// Sum of leg contact orders per vertex.
  std::vector<std::int64_t> leg_total;
  std::vector<std::string> edge_ids;
  std::vector<std::array<std::size_t, 2>> ends;

  explicit Skeleton(const DualGraphInput& in) {
    std::map<std::string, const Vertex*> by_id;
    for (const auto& v : in.vertices) by_id[v.id] = &v;
    std::map<std::string, std::size_t> at;
    for (const auto& [id, v] : by_id) {
      at[id] = vertex_ids.size();
      vertex_ids.push_back(id);
      nondegenerate.push_back(v->nondegenerate);
      degree.push_back(v->multidegree.value_or(0));
    }
    leg_total.assign(vertex_ids.size(), 0);
    for (const auto& l : in.legs) leg_total[at.at(l.vertex)] += l.contact_order;
    std::vector<const DualGraphInput::PlainEdge*> edges;
    for (const auto& e : in.edges) edges.push_back(&e);
    std::sort(edges.begin(), edges.end(), [](auto* a, auto* b) { return a->id < b->id; });
    for (const auto* e : edges) {
      edge_ids.push_back(e->id);
      ends.push_back({at.at(e->ends[0]), at.at(e->ends[1])});
    }
  }

  std::size_t nv() const { return vertex_ids.size(); }
  std::size_t ne() const { return edge_ids.size(); }
};

// Edge status: 0 non-oriented, 1 ends[0] -> ends[1], 2 ends[1] -> ends[0].
struct Decoration {
  std::vector<int> status;
  std::vector<std::int64_t> contact;
};

MarkedGraph build_graph(const DualGraphInput& in, const Skeleton& sk, const Decoration& d) {
  MarkedGraph g;
  g.vertices = in.vertices;
  std::sort(g.vertices.begin(), g.vertices.end(),
            [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
  for (std::size_t k = 0; k < sk.ne(); ++k) {
    Edge e;
    e.id = sk.edge_ids[k];
    e.ends = {sk.vertex_ids[sk.ends[k][0]], sk.vertex_ids[sk.ends[k][1]]};
    e.contact_order = d.contact[k];
    if (d.status[k] == 1) e.orientation = Orientation{e.ends[0], e.ends[1]};
    if (d.status[k] == 2) e.orientation = Orientation{e.ends[1], e.ends[0]};
    g.edges.push_back(std::move(e));
  }
  g.legs = in.legs;
  std::sort(g.legs.begin(), g.legs.end(), [](const Leg& a, const Leg& b) { return a.id < b.id; });
  return g;
}

std::size_t head(const Skeleton& sk, std::size_t k, int status) {
  return status == 1 ? sk.ends[k][1] : sk.ends[k][0];
}
std::size_t tail(const Skeleton& sk, std::size_t k, int status) {
  return status == 1 ? sk.ends[k][0] : sk.ends[k][1];
}

// Strict cycle among the decided edges [0, upto).
bool strict_cycle(const Skeleton& sk, const std::vector<int>& status, std::size_t upto) {
  const std::size_t n = sk.nv();
  std::vector<std::size_t> comp(n);
  std::iota(comp.begin(), comp.end(), 0);
  auto find = [&](std::size_t x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  for (std::size_t k = 0; k < upto; ++k)
    if (status[k] == 0) comp[find(sk.ends[k][0])] = find(sk.ends[k][1]);
  std::vector<std::vector<std::size_t>> out(n);
  std::vector<std::size_t> indeg(n, 0);
  for (std::size_t k = 0; k < upto; ++k) {
    if (status[k] == 0) continue;
    std::size_t a = find(tail(sk, k, status[k])), b = find(head(sk, k, status[k]));
    if (a == b) return true;
    out[a].push_back(b);
    ++indeg[b];
  }
  std::vector<std::size_t> ready;
  std::size_t nodes = 0, removed = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (find(i) == i) {
      ++nodes;
      if (indeg[i] == 0) ready.push_back(i);
    }
  while (!ready.empty()) {
    std::size_t a = ready.back();
    ready.pop_back();
    ++removed;
    for (std::size_t b : out[a])
      if (--indeg[b] == 0) ready.push_back(b);
  }
  return removed != nodes;
}

void collect_patterns(const Skeleton& sk, std::vector<int>& status, std::size_t k,
                      std::vector<std::vector<int>>& out) {
  if (k == sk.ne()) {
    out.push_back(status);
    return;
  }
  const bool loop = sk.ends[k][0] == sk.ends[k][1];
  for (int s = 0; s <= (loop ? 0 : 2); ++s) {
    status[k] = s;
    if (s != 0 && sk.nondegenerate[head(sk, k, s)]) continue;
    if (s != 0 && strict_cycle(sk, status, k + 1)) continue;
    collect_patterns(sk, status, k + 1, out);
  }
  status[k] = 0;
}

struct PatternOutcome {
  std::vector<MarkedGraph> graphs;
  bool hit_solutions = false;
  bool hit_contact = false;
};

class PatternSolver {
public:
  PatternSolver(const DualGraphInput& in, const Skeleton& sk, const std::vector<int>& status,
                std::int64_t max_contact, std::int64_t max_solutions)
      : in_(in), sk_(sk), max_contact_(max_contact), max_solutions_(max_solutions) {
    deco_.status = status;
    deco_.contact.assign(sk.ne(), 0);
    incoming_.resize(sk.nv());
    outgoing_.resize(sk.nv());
    for (std::size_t k = 0; k < sk.ne(); ++k) {
      if (status[k] == 0) continue;
      incoming_[head(sk, k, status[k])].push_back(k);
      outgoing_[tail(sk, k, status[k])].push_back(k);
    }
    // Maximal vertices first, then any vertex whose successors are done;
    // ties by id order.
    std::vector<bool> done(sk.nv(), false);
    while (order_.size() < sk.nv()) {
      for (std::size_t v = 0; v < sk.nv(); ++v) {
        if (done[v]) continue;
        bool ready = std::all_of(outgoing_[v].begin(), outgoing_[v].end(), [&](std::size_t k) {
          return done[head(sk, k, status[k])];
        });
        if (ready) {
          done[v] = true;
          order_.push_back(v);
          break;
        }
      }
    }
  }

  PatternOutcome run() {
    solve(0);
    return std::move(outcome_);
  }

private:
  void solve(std::size_t pos) {
    if (outcome_.hit_solutions) return;
    if (pos == order_.size()) {
      MarkedGraph g = build_graph(in_, sk_, deco_);
      if (!is_admissible(g)) return;
      if (static_cast<std::int64_t>(outcome_.graphs.size()) >= max_solutions_) {
        outcome_.hit_solutions = true;
        return;
      }
      outcome_.graphs.push_back(std::move(g));
      return;
    }
    const std::size_t v = order_[pos];
    // d_v = sum(lower) - sum(upper)  =>  sum(lower) = d_v + sum(upper).
    std::int64_t need = sk_.degree[v] + sk_.leg_total[v];
    for (std::size_t k : outgoing_[v]) need += deco_.contact[k];
    const auto& in = incoming_[v];
    if (in.empty()) {
      if (need == 0) solve(pos + 1);
      return;
    }
    distribute(pos, in, 0, need);
  }

  // Positive compositions of `left` over the incoming edges of order_[pos].
  void distribute(std::size_t pos, const std::vector<std::size_t>& in, std::size_t i,
                  std::int64_t left) {
    const std::int64_t slots = static_cast<std::int64_t>(in.size() - i);
    if (left < slots) return;
    if (i + 1 == in.size()) {
      if (left > max_contact_) {
        outcome_.hit_contact = true;
        return;
      }
      deco_.contact[in[i]] = left;
      solve(pos + 1);
      deco_.contact[in[i]] = 0;
      return;
    }
    for (std::int64_t c = 1; c <= left - (slots - 1); ++c) {
      if (c > max_contact_) {
        outcome_.hit_contact = true;
        break;
      }
      deco_.contact[in[i]] = c;
      distribute(pos, in, i + 1, left - c);
      if (outcome_.hit_solutions) break;
    }
    deco_.contact[in[i]] = 0;
  }

  const DualGraphInput& in_;
  const Skeleton& sk_;
  std::int64_t max_contact_;
  std::int64_t max_solutions_;
  Decoration deco_;
  std::vector<std::vector<std::size_t>> incoming_, outgoing_;
  std::vector<std::size_t> order_;
  PatternOutcome outcome_;
};

void sort_canonically(std::vector<MarkedGraph>& gs) {
  std::vector<std::pair<CanonicalForm, MarkedGraph>> keyed;
  for (auto& g : gs) keyed.emplace_back(canonical_form(g), std::move(g));
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  keyed.erase(std::unique(keyed.begin(), keyed.end(),
                          [](const auto& a, const auto& b) { return a.first == b.first; }),
              keyed.end());
  gs.clear();
  for (auto& [k, g] : keyed) gs.push_back(std::move(g));
}

} // namespace

void check_input(const DualGraphInput& input) {
  std::set<std::string> vids, eids, lids;
  for (const auto& v : input.vertices) {
    if (!vids.insert(v.id).second)
      throw Error(ErrorKind::InvalidArgument, "vertex id '" + v.id + "' appears twice");
    if (!v.multidegree)
      throw Error(ErrorKind::InvalidArgument, "vertex '" + v.id + "' has no multidegree");
  }
  if (input.vertices.empty()) throw Error(ErrorKind::Disconnected, "graph has no vertices");
  for (const auto& e : input.edges) {
    if (!eids.insert(e.id).second)
      throw Error(ErrorKind::InvalidArgument, "edge id '" + e.id + "' appears twice");
    for (const auto& end : e.ends)
      if (!vids.count(end))
        throw Error(ErrorKind::InvalidArgument,
                    "edge '" + e.id + "' ends at unknown vertex '" + end + "'");
  }
  for (const auto& l : input.legs) {
    if (!lids.insert(l.id).second)
      throw Error(ErrorKind::InvalidArgument, "leg id '" + l.id + "' appears twice");
    if (!vids.count(l.vertex))
      throw Error(ErrorKind::InvalidArgument,
                  "leg '" + l.id + "' is attached to unknown vertex '" + l.vertex + "'");
    if (l.contact_order < 0)
      throw Error(ErrorKind::InvalidArgument, "leg '" + l.id + "' has negative contact order");
  }

  MarkedGraph plain;
  plain.vertices = input.vertices;
  for (const auto& e : input.edges) plain.edges.push_back(Edge{e.id, e.ends, 0, std::nullopt});
  for (const auto& d : validate(plain))
    if (d.issue == GraphIssue::Disconnected) throw Error(ErrorKind::Disconnected, d.message);

  std::int64_t deg = 0, contact = 0;
  for (const auto& v : input.vertices) deg += *v.multidegree;
  for (const auto& l : input.legs) contact += l.contact_order;
  if (deg + contact != 0)
    throw Error(ErrorKind::DegreeMismatch,
                "sum of multidegrees is " + std::to_string(deg) +
                    " but sum of leg contact orders is " + std::to_string(contact));
}

std::int64_t analytic_contact_bound(const DualGraphInput& input) {
  std::int64_t b = 0;
  for (const auto& v : input.vertices) b += std::abs(v.multidegree.value_or(0));
  for (const auto& l : input.legs) b += l.contact_order;
  return b;
}

DistinguishedPartition distinguished_partition(const MarkedGraph& g, const std::string& v) {
  if (!g.find_vertex(v)) throw Error(ErrorKind::InvalidArgument, "unknown vertex '" + v + "'");
  DistinguishedPartition p;
  for (const auto& e : g.edges) {
    if (!e.orientation) continue;
    if (e.orientation->end == v) p.lower.push_back(e.id);
    if (e.orientation->initial == v) p.upper.push_back(e.id);
  }
  for (const auto& l : g.legs)
    if (l.vertex == v && l.contact_order > 0) p.upper.push_back(l.id);
  std::sort(p.lower.begin(), p.lower.end());
  std::sort(p.upper.begin(), p.upper.end());
  return p;
}

bool degree_balance(const MarkedGraph& g, const std::string& v, std::int64_t d_v) {
  if (!g.find_vertex(v)) throw Error(ErrorKind::InvalidArgument, "unknown vertex '" + v + "'");
  std::int64_t s = 0;
  for (const auto& e : g.edges) {
    if (!e.orientation) continue;
    if (e.orientation->end == v) s += e.contact_order;
    if (e.orientation->initial == v) s -= e.contact_order;
  }
  for (const auto& l : g.legs)
    if (l.vertex == v) s -= l.contact_order;
  return s == d_v;
}

EnumerationResult enumerate(const DualGraphInput& input, const EnumerationLimits& limits) {
  check_input(input);
  if (limits.max_solutions < 1 || (limits.max_contact && *limits.max_contact < 1))
    throw Error(ErrorKind::InvalidArgument, "enumeration limits must be at least 1");
  const std::int64_t max_contact = limits.max_contact.value_or(analytic_contact_bound(input) + 1);

  const Skeleton sk(input);
  std::vector<std::vector<int>> patterns;
  std::vector<int> status(sk.ne(), 0);
  collect_patterns(sk, status, 0, patterns);

  std::vector<PatternOutcome> outcomes(patterns.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < patterns.size(); i = next++)
      outcomes[i] = PatternSolver(input, sk, patterns[i], max_contact, limits.max_solutions).run();
  };
  unsigned threads = limits.threads ? limits.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, patterns.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  EnumerationResult result;
  bool hit_solutions = false, hit_contact = false;
  for (auto& o : outcomes) {
    hit_solutions = hit_solutions || o.hit_solutions;
    hit_contact = hit_contact || o.hit_contact;
    for (auto& g : o.graphs) result.graphs.push_back(std::move(g));
  }
  sort_canonically(result.graphs);
  if (static_cast<std::int64_t>(result.graphs.size()) > limits.max_solutions) {
    result.graphs.resize(static_cast<std::size_t>(limits.max_solutions));
    hit_solutions = true;
  }
  if (hit_solutions) result.limits_hit.push_back("max_solutions");
  if (hit_contact) result.limits_hit.push_back("max_contact");
  result.complete = result.limits_hit.empty();
  return result;
}

std::vector<MarkedGraph> brute_force_enumerate(const DualGraphInput& input,
                                               std::int64_t contact_bound) {
  try {
    check_input(input);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::DegreeMismatch) return {};
    throw;
  }
  const Skeleton sk(input);
  const std::size_t ne = sk.ne(), nv = sk.nv();

  // Option list per edge: (status, contact).
  std::vector<std::pair<int, std::int64_t>> options{{0, 0}};
  for (std::int64_t c = 1; c <= contact_bound; ++c) {
    options.emplace_back(1, c);
    options.emplace_back(2, c);
  }

  std::vector<std::size_t> pick(ne, 0);
  std::vector<std::int64_t> balance(nv);
  std::vector<MarkedGraph> out;
  Decoration deco{std::vector<int>(ne), std::vector<std::int64_t>(ne)};
  for (;;) {
    // d_v = incoming - outgoing - legs at every vertex.
    for (std::size_t v = 0; v < nv; ++v) balance[v] = -sk.leg_total[v];
    for (std::size_t k = 0; k < ne; ++k) {
      const auto [s, c] = options[pick[k]];
      if (s == 0) continue;
      balance[head(sk, k, s)] += c;
      balance[tail(sk, k, s)] -= c;
    }
    bool balanced = true;
    for (std::size_t v = 0; v < nv && balanced; ++v) balanced = balance[v] == sk.degree[v];
    if (balanced) {
      for (std::size_t k = 0; k < ne; ++k) {
        deco.status[k] = options[pick[k]].first;
        deco.contact[k] = options[pick[k]].second;
      }
      MarkedGraph g = build_graph(input, sk, deco);
      if (validate(g).empty() && is_admissible(g)) out.push_back(std::move(g));
    }
    std::size_t k = 0;
    while (k < ne && ++pick[k] == options.size()) pick[k++] = 0;
    if (k == ne) break;
  }
  sort_canonically(out);
  return out;
}

} // namespace logmap
