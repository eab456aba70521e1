#include "stokes43/field_io.hpp"
#include "stokes43/harness.hpp"
#include "stokes43/mesh_io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using namespace stokes43;

Triangulation load_mesh(const std::string& spec, bool plain_corners) {
  if (spec.rfind("crisscross:", 0) == 0) {
    const int n = std::stoi(spec.substr(11));
    return generate_crisscross(n, !plain_corners);
  }
  return read_mesh_file(spec);
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream os(p);
  if (!os) throw std::invalid_argument("cannot open output file " + p.string());
  return os;
}

int run(int argc, char** argv) {
  CLI::App app{"Stokes solver: divergence-free quartic velocity from a C1 quintic stream "
               "function, with local cubic pressure recovery"};
  app.require_subcommand(1);

  std::string mesh_spec, out_dir, case_name = "trig", levels_str;
  bool plain_corners = false, vtu = false;
  double theta = -1;

  CLI::App* solve = app.add_subcommand("solve", "solve one mesh and export the fields");
  solve->add_option("--mesh", mesh_spec, "crisscross:N or a mesh file path")->required();
  solve->add_flag("--plain-corners", plain_corners, "crisscross without singular corner cells");
  solve->add_option("--theta", theta, "nearly-singular threshold (default: mesh min angle)");
  solve->add_option("--out", out_dir, "output directory")->required();
  solve->add_flag("--vtu", vtu, "also write a lattice-sampled VTU file");

  CLI::App* conv = app.add_subcommand("convergence", "error table over a level sequence");
  conv->add_option("--levels", levels_str, "comma-separated cells-per-side values")->required();
  conv->add_option("--case", case_name, "manufactured case name");
  conv->add_option("--out", out_dir, "output directory")->required();

  CLI::App* classify = app.add_subcommand("classify", "vertex taxonomy of a mesh");
  classify->add_option("--mesh", mesh_spec, "crisscross:N or a mesh file path")->required();
  classify->add_flag("--plain-corners", plain_corners, "crisscross without singular corner cells");
  classify->add_option("--theta", theta, "nearly-singular threshold (default: mesh min angle)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (solve->parsed()) {
    const Triangulation T = load_mesh(mesh_spec, plain_corners);
    if (theta < 0) theta = T.min_angle();
    const auto classes = classify_vertices(T, theta);
    const ManufacturedCase c = manufactured_case(case_name);
    const ArgyrisDofMap dofmap = build_dof_map(T);
    const AnalyticLoad load(T, c.f);
    const StreamField stream = solve_velocity(T, dofmap, assemble(T, dofmap, load));
    const VelocityField u_h = velocity_field(stream);
    RecoveryDiagnostics diag;
    const PressureField p_h = recover_pressure(T, classes, u_h, load, &diag);
    const auto [ev, ep] = error_norms(T, c, u_h, p_h);

    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    {
      auto os = open_out(dir / "velocity.txt");
      write_velocity_field(os, u_h);
    }
    {
      auto os = open_out(dir / "pressure.txt");
      write_pressure_field(os, p_h);
    }
    if (vtu) {
      auto os = open_out(dir / "fields.vtu");
      write_vtu(os, T, u_h, p_h);
    }
    std::cout << "triangles " << T.n_triangles() << "  stream dofs " << dofmap.n_free
              << "  vel H1 err " << ev << "  prs L2 err " << ep << "  cycle audit "
              << diag.max_cycle_error << "\n";
    return 0;
  }

  if (conv->parsed()) {
    std::vector<int> levels;
    for (size_t pos = 0; pos < levels_str.size();) {
      const size_t comma = levels_str.find(',', pos);
      const std::string tok = levels_str.substr(pos, comma == std::string::npos ? comma : comma - pos);
      levels.push_back(std::stoi(tok));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    const auto rows = convergence_study(levels, case_name);
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    auto os = open_out(dir / "convergence.csv");
    write_convergence_csv(os, rows);
    write_convergence_csv(std::cout, rows);
    return 0;
  }

  // classify
  const Triangulation T = load_mesh(mesh_spec, plain_corners);
  if (theta < 0) theta = T.min_angle();
  const auto classes = classify_vertices(T, theta);
  int counts[3] = {0, 0, 0};
  for (const auto& c : classes) counts[static_cast<int>(c.cls)]++;
  std::cout << "vertices " << T.n_vertices() << "  regular " << counts[0] << "  nearly-singular "
            << counts[1] << "  dead-corner " << counts[2] << "\n";
  const ValidationReport report = validate(T, classes);
  if (!report.admissible()) {
    std::cerr << "mesh inadmissible: " << report.triangles_with_two_corners.size()
              << " triangle(s) touch two domain corners\n";
    return 3;
  }
  if (!report.consistent()) {
    std::cerr << "inconsistent taxonomy: " << report.singular_pair_edges.size()
              << " edge(s) join two nearly singular vertices\n";
    return 4;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const stokes43::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 3;
  } catch (const stokes43::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  } catch (const stokes43::MeshError& e) {
    std::cerr << "mesh error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
