// Command-line front end: scenario runs, convergence sweeps, boundary
// condition comparisons, basis dumps and a quick self-check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stdgt/config.hpp"
#include "stdgt/csv.hpp"
#include "stdgt/diagnostics.hpp"
#include "stdgt/parallel.hpp"
#include "stdgt/scenarios.hpp"

namespace fs = std::filesystem;
using namespace stdgt;

namespace {

// ---------------------------------------------------------------------------
// Config plumbing: every flag maps onto a config entry, so the command line
// and the file share one parser and one validator.

struct CommonOpts {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;

  void attach(CLI::App* cmd) {
    // --h takes the short help name, so keep only the long form here.
    cmd->set_help_flag("--help", "print this help message and exit");
    cmd->add_option("--config", config_path, "configuration file");
    bind(cmd, "--scenario", "run.scenario",
         "plane-wave | cylindrical | cylindrical-ref");
    bind(cmd, "--p", "run.p", "basis order, 0..5");
    bind(cmd, "--h", "run.h", "element size; must divide the domain");
    bind(cmd, "--tau", "run.tau", "slab length; 0 means h/2");
    bind(cmd, "--T", "run.T", "final time, a multiple of tau");
    bind(cmd, "--bc", "boundary.bc",
         "outflow condition: transparent | sm | pec | pmc | pec-exact");
    bind(cmd, "--left", "boundary.left", "override one side");
    bind(cmd, "--right", "boundary.right", "override one side");
    bind(cmd, "--bottom", "boundary.bottom", "override one side");
    bind(cmd, "--top", "boundary.top", "override one side");
    bind(cmd, "--beta-inflow", "boundary.beta_inflow", "inflow penalty weight");
    bind(cmd, "--adapt", "basis.adapt", "scenario-adapted fans: true | false");
    bind(cmd, "--theta0", "basis.theta0", "fan rotation when adapt = false");
    bind(cmd, "--epsilon", "material.epsilon", "permittivity");
    bind(cmd, "--mu", "material.mu", "permeability");
    bind(cmd, "--out", "run.out", "output directory");
    bind(cmd, "--threads", "run.threads", "worker threads; 0 = hardware");
    bind(cmd, "--solver", "run.solver", "auto | direct | iterative");
    bind(cmd, "--quad-degree", "run.quad_degree", "override quadrature degree");
    bind(cmd, "--snapshot-every", "run.snapshot_every",
         "field snapshot every k-th slab");
    bind(cmd, "--raster", "run.raster", "snapshot grid resolution");
    bind(cmd, "--checkpoint", "run.checkpoint", "off | text | binary");
    bind(cmd, "--dump-matrix", "run.dump_matrix", "write the slab matrix");
    bind(cmd, "--h-list", "convergence.h", "comma-separated sweep sizes");
    bind(cmd, "--p-list", "convergence.p", "comma-separated sweep orders");
  }

  RunConfig resolve() const {
    RunConfig config =
        config_path.empty() ? RunConfig{} : parse_config_file(config_path);
    for (const auto& [key, value] : overrides) {
      apply_config_entry(config, key, value);
    }
    config.validate();
    return config;
  }

 private:
  void bind(CLI::App* cmd, const std::string& flag, std::string key,
            const std::string& desc) {
    cmd->add_option_function<std::string>(
        flag,
        [this, key](const std::string& value) {
          overrides.emplace_back(key, value);
        },
        desc);
  }
};

// ---------------------------------------------------------------------------
// Scenario wiring.

int grid_divisions(double length, double h, const char* axis) {
  const int n = static_cast<int>(std::lround(length / h));
  if (n < 1 || std::abs(n * h - length) > 1e-9 * length) {
    throw std::invalid_argument(std::string("h = ") + std::to_string(h) +
                                " does not divide the domain " + axis +
                                "-extent " + std::to_string(length));
  }
  return n;
}

Domain2D scenario_domain(const RunConfig& config) {
  if (config.scenario == "plane-wave") return plane_wave::domain();
  if (config.scenario == "cylindrical") return cylindrical::domain();
  return cylindrical::reference_domain();
}

DirectionPolicy scenario_policy(const RunConfig& config) {
  DirectionPolicy policy;
  if (!config.adapt) {
    policy.kind = DirectionPolicy::Kind::Fixed;
    policy.theta0 = config.theta0;
  } else if (config.scenario == "plane-wave") {
    policy.kind = DirectionPolicy::Kind::Fixed;
    policy.theta0 = plane_wave::theta_star();
  } else {
    policy.kind = DirectionPolicy::Kind::Radial;
  }
  return policy;
}

BoundarySpec named_spec(const std::string& name, const RunConfig& config) {
  if (name == "transparent") return Transparent{};
  if (name == "sm") return SilverMueller{};
  if (name == "pec") return PECLike{0.0, nullptr};
  if (name == "pmc") return PMCLike{0.0, nullptr};
  if (name == "pec-exact") return plane_wave::exact_trace();
  throw std::invalid_argument("unknown boundary condition '" + name + "'");
  (void)config;
}

BoundarySpecMap scenario_specs(const RunConfig& config) {
  BoundarySpecMap specs;
  const bool pulse = config.scenario == "plane-wave";
  for (BoundaryTag tag : {BoundaryTag::Left, BoundaryTag::Right,
                          BoundaryTag::Bottom, BoundaryTag::Top}) {
    const std::string side(to_string(tag));
    const auto it = config.bc_per_tag.find(side);
    if (it != config.bc_per_tag.end()) {
      specs.emplace(tag, named_spec(it->second, config));
    } else if (pulse &&
               (tag == BoundaryTag::Top || tag == BoundaryTag::Right)) {
      // The pulse enters through these sides; feed it in.
      specs.emplace(tag, plane_wave::inflow(tag, config.beta_inflow));
    } else {
      specs.emplace(tag, named_spec(config.bc, config));
    }
  }
  return specs;
}

InitialData scenario_initial(const RunConfig& config) {
  if (config.scenario == "plane-wave") return plane_wave::initial();
  return cylindrical::initial();
}

struct Setup {
  Mesh mesh;
  std::vector<TrefftzBasis> bases;
  BoundarySpecMap specs;
  InitialData initial;
  double tau = 0.0;
  int threads = 1;
};

Setup make_setup(const RunConfig& config) {
  const Domain2D domain = scenario_domain(config);
  const int nx = grid_divisions(domain.width(), config.h, "x");
  const int ny = grid_divisions(domain.height(), config.h, "y");
  Setup setup{build_uniform_mesh(domain, nx, ny), {}, {}, {}, 0.0, 1};
  setup.tau = config.tau > 0.0 ? config.tau : config.h / 2.0;
  setup.threads = resolve_thread_count(config.threads);
  const Material material(config.epsilon, config.mu);
  setup.bases = build_all_bases(setup.mesh, setup.tau, config.p, material,
                                scenario_policy(config));
  setup.specs = scenario_specs(config);
  setup.initial = scenario_initial(config);
  return setup;
}

RunParams make_params(const RunConfig& config, const Setup& setup) {
  RunParams params;
  params.T = config.T;
  params.tau = setup.tau;
  params.quad_degree = config.quad_degree;
  params.threads = setup.threads;
  if (config.solver == "direct") {
    params.solver.mode = SolverOptions::Mode::Direct;
  } else if (config.solver == "iterative") {
    params.solver.mode = SolverOptions::Mode::Iterative;
  }
  return params;
}

std::string slab_name(const char* stem, int index, const char* ext) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s_%04d.%s", stem, index, ext);
  return buf;
}

// Energy of explicit initial fields over an element subset.
double windowed_initial_energy(const Mesh& mesh,
                               const std::vector<TrefftzBasis>& bases,
                               const std::vector<int>& subset,
                               const InitialData& data, int points_per_axis) {
  double energy = 0.0;
  for (int e : subset) {
    const double eps = bases[e].material.epsilon();
    const double mu = bases[e].material.mu();
    for (const auto& q :
         element_rule(mesh.elements()[e], 2 * points_per_axis - 2)) {
      const Vec3 r(q.x, q.y, 0.0);
      const Vec3 e0 = data.E0 ? data.E0(r) : Vec3::Zero();
      const Vec3 h0 = data.H0 ? data.H0(r) : Vec3::Zero();
      energy += 0.5 * q.w * (eps * e0.squaredNorm() + mu * h0.squaredNorm());
    }
  }
  return energy;
}

// ---------------------------------------------------------------------------
// run: one scenario march with the full diagnostics set.

int run_command(const RunConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  const Setup setup = make_setup(config);
  const DofMap dofs = make_dof_map(setup.bases);
  fs::create_directories(config.out);

  const int quad_degree = config.quad_degree > 0
                              ? config.quad_degree
                              : default_quadrature_degree(setup.bases);
  const int init_points = std::max(config.p + 2, 10);

  RunParams params = make_params(config, setup);
  const bool snapshots = config.snapshot_every > 0;
  const bool checkpoints = config.checkpoint != "off";
  if (snapshots) fs::create_directories(fs::path(config.out) / "snapshots");
  if (checkpoints) fs::create_directories(fs::path(config.out) / "checkpoints");
  params.observer = [&](const SlabSolution& slab, const StepRecord&) {
    if (snapshots && slab.index % config.snapshot_every == 0) {
      const auto path = fs::path(config.out) / "snapshots" /
                        slab_name("snap", slab.index, "csv");
      write_snapshot_csv(path.string(), setup.mesh, setup.bases,
                         slab.coefficients, slab.interval.tau(), config.raster);
    }
    if (checkpoints) {
      const bool binary = config.checkpoint == "binary";
      const auto path = fs::path(config.out) / "checkpoints" /
                        slab_name("slab", slab.index, binary ? "bin" : "txt");
      write_checkpoint(path.string(), slab.coefficients, binary);
    }
  };

  const RunResult result =
      run(setup.mesh, setup.bases, setup.specs, setup.initial, params);

  const auto records = energy_audit(setup.mesh, setup.bases, setup.specs,
                                    result, setup.initial, quad_degree,
                                    init_points);
  write_energy_csv((fs::path(config.out) / "energy.csv").string(), records);
  write_residuals_csv((fs::path(config.out) / "residuals.csv").string(),
                      result.steps);
  const auto monitor = boundary_dissipation_by_tag(
      setup.mesh, setup.bases, setup.specs, result, quad_degree);
  write_monitor_csv((fs::path(config.out) / "monitor.csv").string(), monitor);

  double error = -1.0;
  if (config.scenario == "plane-wave") {
    error = l2_spacetime_error(setup.mesh, setup.bases, result, plane_wave::Ez);
    write_errors_csv((fs::path(config.out) / "errors.csv").string(),
                     {{config.p, config.h, setup.tau, error}});
  }

  if (config.scenario == "cylindrical-ref") {
    // Energy restricted to the truncated-domain window, for comparing a
    // reference run against absorbing-boundary runs on the small domain.
    const auto window =
        cylindrical::elements_inside(setup.mesh, cylindrical::domain());
    std::vector<std::vector<double>> rows;
    rows.push_back({0.0, 0.0,
                    windowed_initial_energy(setup.mesh, setup.bases, window,
                                            setup.initial, init_points)});
    for (const auto& slab : result.slabs) {
      rows.push_back({double(slab.index), slab.interval.t_end,
                      discrete_energy(setup.mesh, setup.bases,
                                      slab.coefficients, slab.interval.tau(),
                                      quad_degree, &window)});
    }
    write_csv((fs::path(config.out) / "energy_window.csv").string(),
              "energy_window", {"slab", "t", "energy"}, rows);
  }

  if (config.dump_matrix) {
    const auto A = assemble_system_matrix(setup.mesh, setup.bases, setup.specs,
                                          setup.tau, quad_degree,
                                          setup.threads);
    std::ofstream os(fs::path(config.out) / "system_matrix.txt");
    A.write_coordinate(os);
  }

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  std::printf("scenario      %s\n", config.scenario.c_str());
  std::printf("mesh          %zu elements, h = %g\n",
              setup.mesh.elements().size(), config.h);
  std::printf("basis         p = %d, %d unknowns\n", config.p, dofs.total());
  std::printf("march         %zu slabs, tau = %g, T = %g\n",
              result.slabs.size(), setup.tau, config.T);
  std::printf("solver        %s\n", result.iterative_path
                                        ? "iterative (gmres, block jacobi)"
                                        : "direct (sparse lu)");
  if (!records.empty()) {
    std::printf("energy        %.12g -> %.12g\n", records.front().energy,
                records.back().energy);
  }
  if (error >= 0.0) std::printf("l2 error      %.12g\n", error);
  std::printf("wall time     %.2f s\n", seconds);
  std::printf("outputs       %s\n", config.out.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// convergence: h-refinement sweep against the analytic pulse.

int convergence_command(const RunConfig& base) {
  if (base.scenario != "plane-wave") {
    throw std::invalid_argument(
        "convergence needs the plane-wave scenario (it has the exact field)");
  }
  const std::vector<int> p_list =
      base.p_list.empty() ? std::vector<int>{1, 2} : base.p_list;
  const std::vector<double> h_list =
      base.h_list.empty() ? std::vector<double>{1.0, 0.5, 0.25} : base.h_list;

  fs::create_directories(base.out);
  std::vector<ErrorSample> samples;
  std::vector<std::pair<int, double>> rates;
  std::printf("%4s %8s %8s %14s %10s\n", "p", "h", "tau", "l2 error", "rate");
  for (int p : p_list) {
    std::vector<std::pair<double, double>> h_error;
    double last_error = 0.0, last_h = 0.0;
    for (double h : h_list) {
      RunConfig config = base;
      config.p = p;
      config.h = h;
      config.tau = base.tau > 0.0 ? base.tau : 0.0;  // 0 resolves to h/2
      const Setup setup = make_setup(config);
      const RunResult result = run(setup.mesh, setup.bases, setup.specs,
                                   setup.initial, make_params(config, setup));
      const double error =
          l2_spacetime_error(setup.mesh, setup.bases, result, plane_wave::Ez);
      samples.push_back({p, h, setup.tau, error});
      h_error.emplace_back(h, error);
      if (last_h > 0.0) {
        std::printf("%4d %8g %8g %14.6e %10.3f\n", p, h, setup.tau, error,
                    std::log(last_error / error) / std::log(last_h / h));
      } else {
        std::printf("%4d %8g %8g %14.6e %10s\n", p, h, setup.tau, error, "-");
      }
      last_error = error;
      last_h = h;
    }
    if (h_error.size() >= 2) {
      const double rate = convergence_rate(h_error);
      rates.emplace_back(p, rate);
      std::printf("     fitted rate for p = %d: %.3f (expect about %d)\n", p,
                  rate, p + 1);
    }
  }
  write_errors_csv((fs::path(base.out) / "errors.csv").string(), samples);
  write_rates_csv((fs::path(base.out) / "rates.csv").string(), rates);
  std::printf("outputs       %s\n", base.out.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// compare-bc: outflow treatments against each other across orders.

int compare_bc_command(const RunConfig& base) {
  if (base.scenario != "plane-wave") {
    throw std::invalid_argument("compare-bc needs the plane-wave scenario");
  }
  const std::vector<int> p_list =
      base.p_list.empty() ? std::vector<int>{1, 2, 3, 4} : base.p_list;

  struct Variant {
    const char* label;
    const char* bc;
    bool adapt;
  };
  const std::vector<Variant> variants = {
      {"sm", "sm", true},
      {"transparent", "transparent", false},
      {"transparent-adapted", "transparent", true},
      {"pec-exact", "pec-exact", true},
  };

  fs::create_directories(base.out);
  std::vector<std::vector<double>> rows;
  std::printf("%4s", "p");
  for (const auto& v : variants) std::printf(" %20s", v.label);
  std::printf("\n");
  for (int p : p_list) {
    std::vector<double> row{double(p)};
    std::printf("%4d", p);
    for (const auto& v : variants) {
      RunConfig config = base;
      config.p = p;
      config.bc = v.bc;
      config.adapt = v.adapt;
      const Setup setup = make_setup(config);
      const RunResult result = run(setup.mesh, setup.bases, setup.specs,
                                   setup.initial, make_params(config, setup));
      const double error =
          l2_spacetime_error(setup.mesh, setup.bases, result, plane_wave::Ez);
      row.push_back(error);
      std::printf(" %20.6e", error);
      std::fflush(stdout);
    }
    std::printf("\n");
    rows.push_back(row);
  }
  write_csv((fs::path(base.out) / "compare_bc.csv").string(), "compare_bc",
            {"p", "sm", "transparent", "transparent_adapted", "pec_exact"},
            rows);
  std::printf("outputs       %s\n", base.out.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// dump-basis: direction fans for inspection and plotting.

int dump_basis_command(int p, double theta0, bool three_d,
                       const std::string& out) {
  TrefftzBasis basis;
  if (three_d) {
    basis = build_element_basis_3d(Box3{}, 1.0, p, Material(1.0, 1.0));
  } else {
    Element element;
    element.center = {0.5, 0.5};
    element.half = {0.5, 0.5};
    basis = build_element_basis(element, 1.0, p, Material(1.0, 1.0), theta0);
  }
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out.empty()) {
    file.open(out);
    if (!file) throw std::runtime_error("cannot open '" + out + "'");
    os = &file;
  }
  os->precision(17);
  *os << "# stdgt csv v1 basis\n";
  *os << "index,order,dx,dy,dz,ex,ey,ez,hx,hy,hz\n";
  for (int j = 0; j < basis.size(); ++j) {
    const BasisFunction& f = basis.functions[j];
    const Vec3 d = f.order == 0 ? Vec3::Zero() : f.triple.d;
    Vec3 e, h;
    if (f.order == 0) {
      e = f.constant.head<3>();
      h = f.constant.tail<3>();
    } else {
      e = f.triple.e;
      h = f.triple.h;
    }
    *os << j << ',' << f.order << ',' << d.x() << ',' << d.y() << ',' << d.z()
        << ',' << e.x() << ',' << e.y() << ',' << e.z() << ',' << h.x() << ','
        << h.y() << ',' << h.z() << '\n';
  }
  std::fprintf(stderr, "%d functions of order <= %d (%s)\n", basis.size(), p,
               three_d ? "3d" : "quasi-2d tm");
  return 0;
}

// ---------------------------------------------------------------------------
// check: fast end-to-end invariants, one line each.

int check_command() {
  int failures = 0;
  auto report = [&](const char* label, bool ok, double measured) {
    std::printf("%s  %-55s (%.3e)\n", ok ? "PASS" : "FAIL", label, measured);
    if (!ok) ++failures;
  };

  {  // Gauss rule integrates high-degree monomials.
    const QuadRule1D& rule = gauss_legendre(5);
    double integral = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
      integral += rule.weights[i] * std::pow(rule.nodes[i], 8);
    }
    const double err = std::abs(integral - 2.0 / 9.0);
    report("quadrature: degree-9 rule integrates x^8 exactly", err < 1e-14,
           err);
  }

  {  // Every basis function solves the field equations.
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Element element;
    element.center = {0.3, -0.2};
    element.half = {0.6, 0.4};
    double worst = 0.0;
    for (const Material material :
         {Material(1.0, 1.0), Material(2.0, 0.5), Material(1.0, 4.0)}) {
      const auto basis = build_element_basis(element, 0.7, 3, material, 0.4);
      for (const auto& f : basis.functions) {
        for (int trial = 0; trial < 5; ++trial) {
          const Vec3 r(element.center[0] + element.half[0] * uni(rng),
                       element.center[1] + element.half[1] * uni(rng), 0.0);
          worst = std::max(
              worst, maxwell_residual(f, r, 0.35 * (1 + uni(rng)))
                         .cwiseAbs()
                         .maxCoeff());
        }
      }
    }
    report("basis: functions satisfy the field equations", worst < 1e-12,
           worst);
  }

  {  // The fans span the full polynomial solution space.
    Element element;
    element.center = {0.0, 0.0};
    element.half = {0.5, 0.5};
    const auto basis =
        build_element_basis(element, 0.5, 2, Material(1.0, 1.0), 0.2);
    const int rank = gram_rank(basis, element, 0.5);
    report("basis: gram rank equals the space dimension",
           rank == trefftz_dim_2d(2), double(rank));
  }

  {  // Constant-field face coupling has a closed form.
    const Mesh mesh = build_uniform_mesh({0.0, 2.0, 0.0, 1.0}, 2, 1);
    std::vector<TrefftzBasis> bases;
    for (const auto& e : mesh.elements()) {
      bases.push_back(build_element_basis(e, 0.5, 0, Material(1.0, 1.0), 0.0));
    }
    BoundarySpecMap specs;
    for (auto tag : {BoundaryTag::Left, BoundaryTag::Right, BoundaryTag::Bottom,
                     BoundaryTag::Top}) {
      specs.emplace(tag, Transparent{});
    }
    const auto A = assemble_system_matrix(mesh, bases, specs, 0.5, 3);
    Eigen::Matrix3d face = Eigen::Matrix3d::Zero();
    face(0, 2) = face(2, 0) = 0.25;
    const double err = (*A.find_block(0, 1) + face).norm();
    report("assembly: two-element coupling matches the closed form",
           err < 1e-14, err);
  }

  {  // The energy identity closes on a short absorbing run.
    const Mesh mesh = build_uniform_mesh(cylindrical::domain(), 4, 4);
    DirectionPolicy policy;
    policy.kind = DirectionPolicy::Kind::Radial;
    const auto bases =
        build_all_bases(mesh, 0.5, 2, Material(1.0, 1.0), policy);
    BoundarySpecMap specs;
    for (auto tag : {BoundaryTag::Left, BoundaryTag::Right, BoundaryTag::Bottom,
                     BoundaryTag::Top}) {
      specs.emplace(tag, SilverMueller{});
    }
    RunParams params;
    params.T = 1.0;
    params.tau = 0.5;
    const RunResult result =
        run(mesh, bases, specs, cylindrical::initial(), params);
    const auto records =
        energy_audit(mesh, bases, specs, result, cylindrical::initial(),
                     default_quadrature_degree(bases), 10);
    double worst = 0.0;
    for (const auto& rec : records) {
      worst = std::max(worst, std::abs(rec.identity_residual) /
                                  std::max(1.0, rec.energy));
    }
    report("march: energy identity closes on an absorbing run", worst < 1e-10,
           worst);
  }

  {  // Inflow data is consistent with the exact pulse trace.
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    double worst = 0.0;
    for (BoundaryTag tag : {BoundaryTag::Top, BoundaryTag::Right}) {
      const BoundarySpec spec = plane_wave::inflow(tag, 1.0);
      const Vec3 n = tag_normal(tag);
      for (int trial = 0; trial < 10; ++trial) {
        const Vec3 r = tag == BoundaryTag::Top
                           ? Vec3(5.0 + 4.0 * uni(rng), 10.0, 0.0)
                           : Vec3(10.0, 5.0 + 4.0 * uni(rng), 0.0);
        const double t = 12.0 * (1.0 + uni(rng));
        TraceSample w;
        w.E = plane_wave::E(r, t);
        w.H = plane_wave::H(r, t);
        TraceSample v;
        v.E = Vec3(uni(rng), uni(rng), uni(rng));
        v.H = Vec3(uni(rng), uni(rng), uni(rng));
        const double b = boundary_bilinear_density(spec, w, v, n, 1.0);
        const double rv = boundary_linear_density(spec, v, n, r, t);
        worst = std::max(worst, std::abs(b - rv));
      }
    }
    report("scenario: inflow data reproduces the pulse trace", worst < 1e-12,
           worst);
  }

  std::printf("%d of 6 checks failed\n", failures);
  return failures;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"space-time Trefftz solver for the quasi-2d TM field equations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "stdgt 1.0.0");

  CommonOpts run_opts;
  CLI::App* cmd_run = app.add_subcommand("run", "march one scenario");
  run_opts.attach(cmd_run);

  CommonOpts conv_opts;
  CLI::App* cmd_conv =
      app.add_subcommand("convergence", "h-refinement sweep, analytic pulse");
  conv_opts.attach(cmd_conv);

  CommonOpts cmp_opts;
  CLI::App* cmd_cmp =
      app.add_subcommand("compare-bc", "outflow boundary condition study");
  cmp_opts.attach(cmd_cmp);

  int dump_p = 2;
  double dump_theta0 = 0.0;
  bool dump_3d = false;
  std::string dump_out;
  CLI::App* cmd_dump =
      app.add_subcommand("dump-basis", "print one element's direction fans");
  cmd_dump->add_option("--p", dump_p, "basis order");
  cmd_dump->add_option("--theta0", dump_theta0, "fan rotation");
  cmd_dump->add_flag("--three-d", dump_3d, "full 3d fans");
  cmd_dump->add_option("--out", dump_out, "write to a file instead of stdout");

  CLI::App* cmd_check =
      app.add_subcommand("check", "run the built-in invariant checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_run->parsed()) return run_command(run_opts.resolve());
    if (cmd_conv->parsed()) return convergence_command(conv_opts.resolve());
    if (cmd_cmp->parsed()) return compare_bc_command(cmp_opts.resolve());
    if (cmd_dump->parsed()) {
      return dump_basis_command(dump_p, dump_theta0, dump_3d, dump_out);
    }
    if (cmd_check->parsed()) return check_command();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
