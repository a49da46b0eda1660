// repshift: command-line front end for representation shifts of knots.
//
//   repshift build     --knot K --group G [--dot FILE] [--csv FILE]
//   repshift analyze   --knot K --group G [--max-r R] [--tol T] [--machine]
//   repshift probe     --knot K [--max-n N] [--max-r R]
//   repshift alexander --knot K
//
// K is a catalog name (unknot, trefoil, figure-eight, 5_2, 6_1, or the
// aliases 0_1, 3_1, 4_1) or a knot file.  G is S<k> or cayley:<file>.
// Exit status: 0 success, 2 input error, 3 resource cap exceeded.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "repshift/repshift.hpp"

namespace {

using namespace repshift;

constexpr int exit_input = 2;
constexpr int exit_cap = 3;

HnnSystem resolve_knot(std::string const& arg) {
  if (auto sys = find_in_catalog(arg)) {
    return *sys;
  }
  if (std::filesystem::is_regular_file(arg)) {
    return load_system(arg);
  }
  std::string names;
  for (auto const& [name, sys] : builtin_catalog()) {
    names += (names.empty() ? "" : ", ") + name;
  }
  throw InputError("unknown knot '" + arg + "' (not a file; catalog knots: " + names + ")");
}

FiniteGroup resolve_group(std::string const& arg) {
  if (arg.rfind("cayley:", 0) == 0) {
    return load_cayley(arg.substr(7));
  }
  if (arg.size() >= 2 && arg[0] == 'S'
      && arg.find_first_not_of("0123456789", 1) == std::string::npos && arg.size() <= 4) {
    return FiniteGroup::symmetric(std::stoul(arg.substr(1)));
  }
  throw InputError("bad group '" + arg + "' (expected S<k> or cayley:<path>)");
}

std::uint64_t edge_cap_from_env(std::uint64_t fallback) {
  if (char const* env = std::getenv("REPSHIFT_EDGE_CAP")) {
    std::string s(env);
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 19) {
      throw InputError("REPSHIFT_EDGE_CAP must be a positive integer");
    }
    auto v = std::stoull(s);
    if (v == 0) {
      throw InputError("REPSHIFT_EDGE_CAP must be a positive integer");
    }
    return v;
  }
  return fallback;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Representation shifts of knot groups into finite groups"};
  app.require_subcommand(1);

  std::string knot;
  std::string group;
  std::string dot_path;
  std::string csv_path;
  std::uint32_t max_r = default_max_period;
  std::size_t max_n = 5;
  double tol = default_entropy_tol;
  bool machine = false;

  auto* build = app.add_subcommand("build", "Build and prune the shift graph");
  build->add_option("--knot", knot, "Catalog name or knot file")->required();
  build->add_option("--group", group, "S<k> or cayley:<path>")->required();
  build->add_option("--dot", dot_path, "Write the pruned graph as GraphViz DOT");
  build->add_option("--csv", csv_path, "Write the pruned adjacency matrix as CSV");

  auto* analyze_cmd = app.add_subcommand("analyze", "Entropy, periodic points, countability");
  analyze_cmd->add_option("--knot", knot, "Catalog name or knot file")->required();
  analyze_cmd->add_option("--group", group, "S<k> or cayley:<path>")->required();
  analyze_cmd->add_option("--max-r", max_r, "Largest period r")->check(CLI::Range(1u, 1000u));
  analyze_cmd->add_option("--tol", tol, "Power iteration tolerance")
      ->check(CLI::PositiveNumber);
  analyze_cmd->add_flag("--machine", machine, "Append a key=value block");

  auto* probe_cmd = app.add_subcommand("probe", "Search S_2..S_N for positive entropy");
  probe_cmd->add_option("--knot", knot, "Catalog name or knot file")->required();
  probe_cmd->add_option("--max-n", max_n, "Largest symmetric degree")->check(CLI::Range(2, 6));
  probe_cmd->add_option("--max-r", max_r, "Periods reported for a witness")
      ->check(CLI::Range(1u, 1000u));

  auto* alex = app.add_subcommand("alexander", "Alexander polynomial of the HNN data");
  alex->add_option("--knot", knot, "Catalog name or knot file")->required();

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return exit_input;
  }

  try {
    auto const sys = resolve_knot(knot);
    if (*alex) {
      std::cout << format_polynomial(alexander_poly(sys)) << "\n";
      return 0;
    }
    if (*probe_cmd) {
      auto const verdict = probe_knot(sys, max_n, max_r, edge_cap_from_env(default_probe_edge_cap));
      std::cout << "knot " << sys.name << "\n";
      write_probe(verdict, std::cout);
      return 0;
    }
    auto const G = resolve_group(group);
    auto const cap = edge_cap_from_env(default_edge_cap);
    auto const raw = build_graph(sys, G, cap);
    auto const graph = prune(raw);
    std::cout << "knot " << sys.name << ", group " << G.name() << "\n";
    if (*build) {
      std::cout << "before pruning: vertices " << raw.num_vertices() << ", edges "
                << raw.num_edges() << "\n";
      std::cout << "after pruning: vertices " << graph.num_vertices() << ", edges "
                << graph.num_edges() << "\n";
      if (!dot_path.empty()) {
        export_dot(graph, dot_path);
      }
      if (!csv_path.empty()) {
        export_csv(graph, csv_path);
      }
      return 0;
    }
    auto const rep = analyze(graph, max_r, tol);
    write_report(rep, std::cout);
    if (machine) {
      std::cout << "--- machine\n";
      write_machine_block(rep, std::cout);
    }
    return 0;
  } catch (CapExceeded const& e) {
    std::cerr << "repshift: " << e.what() << "\n";
    return exit_cap;
  } catch (InputError const& e) {
    std::cerr << "repshift: " << e.what() << "\n";
    return exit_input;
  } catch (Error const& e) {
    std::cerr << "repshift: " << e.what() << "\n";
    return exit_input;
  }
}
