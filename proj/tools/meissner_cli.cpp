// meissner: command line front end.
//
// Exit status: 0 success, 2 invalid input body, 1 internal error, 64 usage.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "meissner/ball_polytope.hpp"
#include "meissner/error.hpp"
#include "meissner/generators.hpp"
#include "meissner/mc_oracle.hpp"
#include "meissner/mesh.hpp"
#include "meissner/optimizer.hpp"
#include "meissner/spherical.hpp"

namespace {

using namespace meissner;
namespace sph = meissner::spherical;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitValidation = 2;
constexpr int kExitUsage = 64;

constexpr const char* kCsvSchemas = R"(CSV schemas:
  analyze --csv      row,index,x,y,x_dual,y_dual,theta,theta_dual,phi,phi_dual,alpha,f
                     row is "pair" for dual pairs; (x, y) is the retained edge.
                     Summary rows "area", "volume", "reuleaux_area" carry the value
                     in the f column and leave the others empty.
  enumerate          index,bits,area,is_min
  mc-check           samples,seed,hits,volume_estimate,std_error,closed_form,z_score
  pyramid, search    run,feasible,value,area,above_tetrahedron,iterations,residual
  f-table --csv      x,y,f,f_swapped,df_dx
Bits strings list pair 0 first; 1 smooths the second edge of the pair.

Environment:
  MEISSNER_TOL       unit-distance tolerance (default 1e-9))";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double tolerance() {
  const char* env = std::getenv("MEISSNER_TOL");
  if (env == nullptr || *env == '\0') return kDefaultTol;
  char* end = nullptr;
  const double tol = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(tol > 0.0) || tol >= 0.1) {
    throw UsageError(fmt::format("MEISSNER_TOL must be a small positive number, got '{}'", env));
  }
  return tol;
}

SmoothingChoice parse_smoothing(const std::string& spec, std::size_t pair_count,
                                std::span<const DualEdgePair> pairs) {
  if (spec == "optimal") return optimal_smoothing(pairs);
  const std::string prefix = "bits:";
  if (spec.rfind(prefix, 0) != 0) throw UsageError("--smoothing takes 'optimal' or 'bits:<01...>'");
  const std::string digits = spec.substr(prefix.size());
  if (digits.size() != pair_count) {
    throw UsageError(fmt::format("--smoothing needs {} bits, got {}", pair_count, digits.size()));
  }
  SmoothingChoice choice;
  for (char c : digits) {
    if (c != '0' && c != '1') throw UsageError("--smoothing bits must be 0 or 1");
    choice.bits.push_back(c == '1');
  }
  return choice;
}

std::string bits_string(const SmoothingChoice& choice) {
  std::string s;
  for (bool b : choice.bits) s += b ? '1' : '0';
  return s;
}

MeissnerPolyhedron load_polyhedron(const std::string& file, const std::string& smoothing) {
  const auto vs = load_vertex_file(file, tolerance());
  const auto g = build_diameter_graph(vs);
  const auto pairs = find_dual_pairs(g, vs);
  return make_meissner(vs, parse_smoothing(smoothing, pairs.size(), pairs));
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  return out;
}

int cmd_validate(const std::string& file) {
  const auto vs = load_vertex_file(file, tolerance());
  const auto g = build_diameter_graph(vs);
  const auto pairs = find_dual_pairs(g, vs);
  fmt::print("valid extremal set: m = {}, diameters = {}, dual pairs = {}, max distance = {:.15f}\n",
             vs.size(), vs.diameter_count(), pairs.size(), vs.max_distance());
  return kExitOk;
}

int cmd_analyze(const std::string& file, const std::string& smoothing, const std::string& csv) {
  const auto m = load_polyhedron(file, smoothing);
  const double area = meissner_area(m);
  const double volume = meissner_volume(m);
  const double reuleaux = reuleaux_area(m.pairs());

  fmt::print("smoothing {}\n", bits_string(m.choice()));
  fmt::print("{:>4} {:>9} {:>9} {:>14} {:>14} {:>14} {:>14} {:>14} {:>14}\n", "pair", "retained",
             "smoothed", "theta", "theta_dual", "phi", "phi_dual", "alpha", "f");
  std::vector<std::string> rows;
  for (std::size_t i = 0; i < m.pairs().size(); ++i) {
    const Edge& r = m.retained_edge(i);
    const Edge& s = m.smoothed_edge(i);
    const auto l = m.lengths(i);
    const double phi = sph::dihedral_angle(l);
    const double phi_dual = sph::dihedral_angle(l.swapped());
    const double alpha = sph::wedge_angle(l);
    const double f = sph::f_pair(l);
    fmt::print("{:>4} {:>9} {:>9} {:>14.10f} {:>14.10f} {:>14.10f} {:>14.10f} {:>14.10f} {:>14.10f}\n",
               i, fmt::format("{}-{}", r.a, r.b), fmt::format("{}-{}", s.a, s.b), l.theta(),
               l.theta_dual(), phi, phi_dual, alpha, f);
    rows.push_back(fmt::format("pair,{},{},{},{},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}",
                               i, r.a, r.b, s.a, s.b, l.theta(), l.theta_dual(), phi, phi_dual,
                               alpha, f));
  }
  fmt::print("area          {:.12f}\n", area);
  fmt::print("volume        {:.12f}\n", volume);
  fmt::print("reuleaux_area {:.12f}\n", reuleaux);

  if (!csv.empty()) {
    auto out = open_output(csv);
    out << "row,index,x,y,x_dual,y_dual,theta,theta_dual,phi,phi_dual,alpha,f\n";
    for (const auto& row : rows) out << row << '\n';
    out << fmt::format("area,,,,,,,,,,,{:.17g}\n", area);
    out << fmt::format("volume,,,,,,,,,,,{:.17g}\n", volume);
    out << fmt::format("reuleaux_area,,,,,,,,,,,{:.17g}\n", reuleaux);
  }
  return kExitOk;
}

int cmd_enumerate(const std::string& file) {
  const auto vs = load_vertex_file(file, tolerance());
  const auto g = build_diameter_graph(vs);
  const auto pairs = find_dual_pairs(g, vs);
  const auto table = enumerate_smoothings(pairs);
  double best = table.front().area;
  for (const auto& e : table) best = std::min(best, e.area);
  fmt::print("index,bits,area,is_min\n");
  for (std::size_t i = 0; i < table.size(); ++i) {
    fmt::print("{},{},{:.17g},{}\n", i, bits_string(table[i].choice), table[i].area,
               table[i].area <= best + 1e-12 ? 1 : 0);
  }
  return kExitOk;
}

int cmd_mc_check(const std::string& file, const std::string& smoothing, std::int64_t samples,
                 std::uint64_t seed, unsigned threads) {
  const auto m = load_polyhedron(file, smoothing);
  const auto r = mc_volume(meissner_system(m), samples, seed, threads);
  const double closed = meissner_volume(m);
  const double z = r.std_error > 0.0 ? (r.volume_estimate - closed) / r.std_error : 0.0;
  fmt::print("samples,seed,hits,volume_estimate,std_error,closed_form,z_score\n");
  fmt::print("{},{},{},{:.17g},{:.17g},{:.17g},{:.6f}\n", r.samples, r.seed, r.hits,
             r.volume_estimate, r.std_error, closed, z);
  return kExitOk;
}

int cmd_gen(const std::string& what, const std::string& out) {
  std::optional<VertexSet> vs;
  if (what == "tetra") {
    vs = regular_tetrahedron();
  } else if (what.rfind("pyramid:", 0) == 0) {
    int k = 0;
    try {
      std::size_t used = 0;
      k = std::stoi(what.substr(8), &used);
      if (used != what.size() - 8) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw UsageError("expected pyramid:<k> with an integer k");
    }
    if (k < 1) throw UsageError("pyramid:<k> needs k >= 1");
    vs = regular_pyramid(k);
  } else {
    throw UsageError("gen takes 'tetra' or 'pyramid:<k>'");
  }
  if (out.empty()) {
    write_vertex_set(std::cout, *vs);
  } else {
    save_vertex_file(*vs, out);
  }
  return kExitOk;
}

void print_report(const OptimizationReport& r) {
  fmt::print("best_value            {:.12f}\n", r.best_value);
  fmt::print("best_area             {:.12f}\n", r.best_area);
  fmt::print("best_volume           {:.12f}\n", r.best_volume);
  fmt::print("tetrahedron_area      {:.12f}\n", tetrahedron_area());
  fmt::print("constraint_residual   {:.3e}\n", r.constraint_residual);
  fmt::print("max_distance          {:.15f}\n", r.max_distance);
  fmt::print("iterations            {}\n", r.iterations);
  fmt::print("converged             {}\n", r.converged ? "yes" : "no");
  fmt::print("all_above_tetrahedron {}\n", r.all_above_tetrahedron ? "yes" : "no");
}

void write_runs(const OptimizationReport& r, const std::string& csv) {
  if (csv.empty()) return;
  auto out = open_output(csv);
  out << "run,feasible,value,area,above_tetrahedron,iterations,residual\n";
  for (std::size_t i = 0; i < r.runs.size(); ++i) {
    const auto& run = r.runs[i];
    out << fmt::format("{},{},{:.17g},{:.17g},{},{},{:.3e}\n", i, run.feasible ? 1 : 0, run.value,
                       run.area, run.area_at_least_tetrahedron ? 1 : 0, run.iterations,
                       run.constraint_residual);
  }
}

int cmd_pyramid(int n, int restarts, std::uint64_t seed, unsigned threads, const std::string& csv) {
  OptimizerSettings settings;
  settings.threads = threads;
  const auto r = optimize_pyramid(n, restarts, seed, settings);
  fmt::print("pyramid n = {}, restarts = {}, seed = {}\n", n, restarts, seed);
  print_report(r);
  write_runs(r, csv);
  return kExitOk;
}

int cmd_search(const std::string& file, int restarts, std::uint64_t seed, unsigned threads,
               const std::string& csv, const std::string& out) {
  const auto vs = load_vertex_file(file, tolerance());
  OptimizerSettings settings;
  settings.threads = threads;
  const auto r = optimize_meissner(make_problem(vs), restarts, seed, settings);
  fmt::print("search m = {}, restarts = {}, seed = {}\n", vs.size(), restarts, seed);
  print_report(r);
  write_runs(r, csv);
  if (!out.empty()) {
    auto f = open_output(out);
    f << r.best_points.size() << '\n';
    for (const auto& p : r.best_points) {
      f << fmt::format("{:.17g} {:.17g} {:.17g}\n", p.x(), p.y(), p.z());
    }
  }
  return kExitOk;
}

int cmd_f_table(int grid, const std::string& csv) {
  if (grid < 3) throw UsageError("--grid must be at least 3");
  const double h = sph::kMaxEdgeAngle / (grid - 1);
  std::vector<double> f(static_cast<std::size_t>(grid * grid));
  auto at = [&](int i, int j) -> double& { return f[static_cast<std::size_t>(i * grid + j)]; };
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) at(i, j) = sph::f_pair(sph::PairLengths(i * h, j * h));
  }
  bool mono_x = true, mono_y = true, convex_x = true, convex_y = true, swap = true;
  constexpr double slack = 1e-12;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      if (i > 0) mono_x = mono_x && at(i, j) >= at(i - 1, j) - slack;
      if (j > 0) mono_y = mono_y && at(i, j) >= at(i, j - 1) - slack;
      if (i > 0 && i + 1 < grid) {
        convex_x = convex_x && at(i + 1, j) - 2 * at(i, j) + at(i - 1, j) >= -slack;
      }
      if (j > 0 && j + 1 < grid) {
        convex_y = convex_y && at(i, j + 1) - 2 * at(i, j) + at(i, j - 1) >= -slack;
      }
      if (i <= j) swap = swap && at(i, j) >= at(j, i) - slack;
    }
  }
  if (!csv.empty()) {
    auto out = open_output(csv);
    out << "x,y,f,f_swapped,df_dx\n";
    for (int i = 0; i < grid; ++i) {
      for (int j = 0; j < grid; ++j) {
        std::string d;
        try {
          d = fmt::format("{:.17g}", sph::f_partial_x(i * h, j * h));
        } catch (const Error&) {
          d = "nan";
        }
        out << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{}\n", i * h, j * h, at(i, j), at(j, i),
                           d);
      }
    }
  }
  auto verdict = [](bool ok) { return ok ? "PASS" : "FAIL"; };
  fmt::print("grid {}x{} over [0, pi/3]^2\n", grid, grid);
  fmt::print("increasing_in_x  {}\n", verdict(mono_x));
  fmt::print("increasing_in_y  {}\n", verdict(mono_y));
  fmt::print("convex_in_x      {}\n", verdict(convex_x));
  fmt::print("convex_in_y      {}\n", verdict(convex_y));
  fmt::print("swap_inequality  {}\n", verdict(swap));
  return kExitOk;
}

int cmd_mesh(const std::string& file, const std::string& smoothing, int refine,
             const std::string& out, const std::string& format, bool reuleaux) {
  if (refine < 1 || refine > 10) throw UsageError("--refine must lie in [1, 10]");
  if (format != "obj" && format != "ply") throw UsageError("--format takes obj or ply");
  const auto m = load_polyhedron(file, smoothing);
  const auto mesh = reuleaux ? tessellate_reuleaux(m.vertices(), m.graph(), m.pairs(), refine)
                             : tessellate(m, refine);
  const double exact = reuleaux ? reuleaux_area(m.pairs()) : meissner_area(m);
  const double area = mesh_area(mesh);
  const auto topo = analyze_topology(mesh);
  write_mesh(mesh, out, format == "obj" ? MeshFormat::Obj : MeshFormat::Ply);
  fmt::print("wrote {} ({} vertices, {} triangles)\n", out, mesh.vertices.size(), mesh.faces.size());
  fmt::print("mesh_area       {:.12f}\n", area);
  fmt::print("closed_form     {:.12f}\n", exact);
  fmt::print("relative_error  {:.3e}\n", std::abs(area - exact) / exact);
  fmt::print("euler           {}\n", topo.euler_characteristic);
  fmt::print("watertight      {}\n", topo.closed && topo.oriented ? "yes" : "no");
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reuleaux and Meissner polyhedra: closed forms, Monte Carlo checks, search, meshes"};
  app.footer(kCsvSchemas);
  app.require_subcommand(1);
  app.fallthrough();

  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker cap (0 = all cores); never changes results");

  std::string file, smoothing = "optimal", csv, out, format = "obj", what;
  std::int64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  int restarts = 20, n = 5, grid = 200, refine = 4;
  bool reuleaux = false;

  auto* validate = app.add_subcommand("validate", "Check that a vertex file is an extremal set");
  validate->add_option("file", file, "Vertex file")->required();

  auto* analyze = app.add_subcommand("analyze", "Per-pair table, area and volume");
  analyze->add_option("file", file, "Vertex file")->required();
  analyze->add_option("--smoothing", smoothing, "optimal or bits:<01...>");
  analyze->add_option("--csv", csv, "Write the table as CSV");

  auto* enumerate = app.add_subcommand("enumerate", "Area of every smoothing choice (CSV)");
  enumerate->add_option("file", file, "Vertex file")->required();

  auto* mc = app.add_subcommand("mc-check", "Monte Carlo volume against the closed form (CSV)");
  mc->add_option("file", file, "Vertex file")->required();
  mc->add_option("--samples", samples, "Sample count (>= 10000)");
  mc->add_option("--seed", seed, "Seed");
  mc->add_option("--smoothing", smoothing, "optimal or bits:<01...>");

  auto* gen = app.add_subcommand("gen", "Write a canonical vertex set");
  gen->add_option("kind", what, "tetra or pyramid:<k>")->required();
  gen->add_option("--out", out, "Output file (default stdout)");

  auto* pyramid = app.add_subcommand("pyramid", "Maximize the pyramid objective");
  pyramid->add_option("--n", n, "Odd base size");
  pyramid->add_option("--restarts", restarts, "Number of restarts");
  pyramid->add_option("--seed", seed, "Seed");
  pyramid->add_option("--csv", csv, "Write per-run CSV");

  auto* search = app.add_subcommand("search", "Minimize the area at fixed combinatorics");
  search->add_option("file", file, "Vertex file giving combinatorics and start")->required();
  search->add_option("--restarts", restarts, "Number of restarts");
  search->add_option("--seed", seed, "Seed");
  search->add_option("--csv", csv, "Write per-run CSV");
  search->add_option("--out", out, "Write the best configuration");

  auto* ftable = app.add_subcommand("f-table", "Grid of f with property verdicts");
  ftable->add_option("--grid", grid, "Points per axis");
  ftable->add_option("--csv", csv, "Write the grid as CSV");

  auto* mesh = app.add_subcommand("mesh", "Triangulate the surface");
  mesh->add_option("file", file, "Vertex file")->required();
  mesh->add_option("--refine", refine, "Refinement level r; boundaries get 2^r segments");
  mesh->add_option("--out", out, "Output mesh")->required();
  mesh->add_option("--format", format, "obj or ply");
  mesh->add_option("--smoothing", smoothing, "optimal or bits:<01...>");
  mesh->add_flag("--reuleaux", reuleaux, "Mesh B(X) instead of the Meissner body");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(file);
    if (*analyze) return cmd_analyze(file, smoothing, csv);
    if (*enumerate) return cmd_enumerate(file);
    if (*mc) return cmd_mc_check(file, smoothing, samples, seed, threads);
    if (*gen) return cmd_gen(what, out);
    if (*pyramid) return cmd_pyramid(n, restarts, seed, threads, csv);
    if (*search) return cmd_search(file, restarts, seed, threads, csv, out);
    if (*ftable) return cmd_f_table(grid, csv);
    if (*mesh) return cmd_mesh(file, smoothing, refine, out, format, reuleaux);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (is_validation_error(e.kind())) return kExitValidation;
    if (e.kind() == ErrorKind::InvalidArgument) return kExitUsage;
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}
