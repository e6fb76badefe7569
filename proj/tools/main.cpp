#include "logmap/enumeration.hpp"
#include "logmap/error.hpp"
#include "logmap/json_io.hpp"
#include "logmap/marked_graph.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace logmap;
namespace io = logmap::json;
using nlohmann::json;

enum Exit : int { kOk = 0, kNegative = 1, kInputError = 2, kInternal = 3 };

struct Options {
  std::string input;
  std::string output;
  std::vector<std::string> contract;
  std::vector<std::string> vanish;
  std::string target;
  std::string assignment;
  std::optional<std::int64_t> max_solutions;
  std::optional<std::int64_t> max_contact;
  bool strict_degeneracy = false;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::string& path) {
  try {
    return io::parse_document(read_file(path));
  } catch (const Error& e) {
    throw Error(e.kind(), (path.empty() ? std::string("<stdin>") : path) + ": " + e.what());
  }
}

void write_output(const std::string& path, const json& j) {
  const std::string text = io::dump(j);
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

MarkedGraph load_graph(const std::string& path) {
  MarkedGraph g = io::marked_graph_from_json(read_json(path));
  require_valid(g);
  return g;
}

int run_monoid(const Options& o) {
  const MarkedGraph g = load_graph(o.input);
  write_output(o.output, io::monoid_report(associated_monoid(g)));
  return kOk;
}

int run_admissible(const Options& o) {
  const MarkedGraph g = load_graph(o.input);
  const Admissibility a = admissibility(g, o.strict_degeneracy);
  write_output(o.output, {{"admissible", a.admissible}, {"reason", a.reason}});
  return a.admissible ? kOk : kNegative;
}

unsigned thread_cap() {
  const char* env = std::getenv("LOGMAP_THREADS");
  if (!env || !*env) return 0;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1) throw InputError("LOGMAP_THREADS must be a positive integer");
  return static_cast<unsigned>(n);
}

int run_enumerate(const Options& o) {
  const DualGraphInput in = io::dual_graph_from_json(read_json(o.input));
  EnumerationLimits limits;
  if (o.max_solutions) limits.max_solutions = *o.max_solutions;
  limits.max_contact = o.max_contact;
  limits.threads = thread_cap();
  const EnumerationResult r = enumerate(in, limits);
  json solutions = json::array();
  for (const auto& g : r.graphs) solutions.push_back(io::to_json(g));
  write_output(o.output, {{"solutions", std::move(solutions)},
                          {"count", r.graphs.size()},
                          {"complete", r.complete},
                          {"limits_hit", r.limits_hit}});
  return r.complete ? kOk : kNegative;
}

int run_specialize(const Options& o) {
  const MarkedGraph g = load_graph(o.input);
  const Specialization s = specialize(g, {o.contract, o.vanish});
  if (!s.coherent) {
    std::cerr << "logmap: internal: specialization is not coherent with the face quotient\n";
    return kInternal;
  }
  const AssociatedMonoid before = associated_monoid(g);
  json generator_images = json::object();
  for (const auto& [name, image] : before.generator_images)
    generator_images[name] = io::to_json(s.induced(image));
  write_output(o.output, {{"graph", io::to_json(s.graph)},
                          {"vertex_map", s.vertex_map},
                          {"morphism",
                           {{"group_matrix", io::to_json(s.induced.group_matrix)},
                            {"generator_images", std::move(generator_images)},
                             {"source", io::monoid_report(before)},
                            {"target", io::monoid_report(associated_monoid(s.graph))}}},
                          {"coherent", s.coherent}});
  return kOk;
}

int run_minimal(const Options& o) {
  const MarkedGraph g = load_graph(o.input);
  const AffineMonoid target = io::monoid_from_json(read_json(o.target));
  const auto assignment = io::assignment_from_json(read_json(o.assignment));
  const bool minimal = minimality_check(g, target, assignment);
  write_output(o.output, {{"minimal", minimal}});
  return minimal ? kOk : kNegative;
}

int exit_for(ErrorKind k) {
  switch (k) {
  case ErrorKind::NotAFace:
  case ErrorKind::ResultInvalid:
    return kNegative;
  case ErrorKind::CapExceeded:
  case ErrorKind::LimitExceeded:
    return kInternal;
  default:
    return kInputError;
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Combinatorics of minimal log maps: associated monoids, admissibility, "
               "specialization and enumeration of marked graphs."};
  app.require_subcommand(1);
  Options o;

  auto add_io = [&](CLI::App* sub) {
    sub->add_option("-i,--input", o.input, "Input JSON file (stdin when omitted)");
    sub->add_option("-o,--output", o.output, "Output file (stdout when omitted)");
  };

  auto* monoid = app.add_subcommand("monoid", "Associated monoid of a marked graph");
  add_io(monoid);

  auto* admissible = app.add_subcommand("admissible", "Admissibility verdict for a marked graph");
  add_io(admissible);
  admissible->add_flag("--strict-degeneracy", o.strict_degeneracy,
                       "Also require degenerate vertices to have nonzero elements");

  auto* enumerate_cmd = app.add_subcommand("enumerate", "All admissible marked graphs over a dual graph");
  add_io(enumerate_cmd);
  enumerate_cmd->add_option("--max-solutions", o.max_solutions, "Stop after this many solutions")
      ->check(CLI::PositiveNumber);
  enumerate_cmd->add_option("--max-contact", o.max_contact, "Largest contact order to try")
      ->check(CLI::PositiveNumber);

  auto* specialize_cmd = app.add_subcommand("specialize", "Contract edges and vanish vertices");
  add_io(specialize_cmd);
  specialize_cmd->add_option("--contract", o.contract, "Edge ids to contract")->delimiter(',');
  specialize_cmd->add_option("--vanish", o.vanish, "Vertex ids that become nondegenerate")
      ->delimiter(',');

  auto* minimal = app.add_subcommand("minimal", "Whether the canonical map to a target is an isomorphism");
  add_io(minimal);
  minimal->add_option("--target", o.target, "Target monoid JSON")->required();
  minimal->add_option("--assignment", o.assignment, "Generator assignment JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (monoid->parsed()) return run_monoid(o);
    if (admissible->parsed()) return run_admissible(o);
    if (enumerate_cmd->parsed()) return run_enumerate(o);
    if (specialize_cmd->parsed()) return run_specialize(o);
    if (minimal->parsed()) return run_minimal(o);
  } catch (const Error& e) {
    std::cerr << "logmap: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_for(e.kind());
  } catch (const InputError& e) {
    std::cerr << "logmap: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "logmap: internal: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
