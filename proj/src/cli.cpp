#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "cmaxent/errors.hpp"
#include "cmaxent/harness.hpp"
#include "cmaxent/io.hpp"

namespace cmaxent {

namespace {

using io::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::map<std::string, MeasureId> kMeasures = {
    {"point_mass", MeasureId::PointMass}, {"gaussians", MeasureId::Gaussians}, {"rectangular", MeasureId::Rectangular}};
const std::map<std::string, ConditioningVariant> kVariants = {
    {"shifted_log", ConditioningVariant::ShiftedLog}, {"mercator", ConditioningVariant::MercatorM1}};
const std::map<std::string, Mode> kModes = {
    {"conditioned", Mode::Conditioned}, {"unconditioned", Mode::Unconditioned}, {"both", Mode::Both}};
const std::map<std::string, GradientMode> kGradients = {
    {"analytic", GradientMode::Analytic}, {"fd", GradientMode::FiniteDifference}};

struct MeasureArgs {
  std::string name;
  double location = 1.0;
  std::string spec;
};

struct SolveArgs {
  double tol = SolveOptions{}.objective_tol;
  std::size_t max_iter = SolveOptions{}.max_iterations;
  std::size_t quadrature = 0;
  GradientMode gradient = GradientMode::Analytic;

  SolveOptions options() const {
    SolveOptions o;
    o.objective_tol = tol;
    o.max_iterations = max_iter;
    o.quadrature_size = quadrature;
    o.gradient_mode = gradient;
    return o;
  }
};

struct CondArgs {
  double shift = 0.0;
  ConditioningVariant variant = ConditioningVariant::ShiftedLog;
  ConditioningOptions options() const { return {shift, variant}; }
};

void add_measure(CLI::App* cmd, MeasureArgs& m) {
  auto* measure = cmd->add_option("--measure", m.name, "Benchmark measure")
                      ->check(CLI::IsMember(kMeasures));
  cmd->add_option("--a", m.location, "Atom location of point_mass");
  auto* spec = cmd->add_option("--spec", m.spec, "MeasureSpec JSON file")->check(CLI::ExistingFile);
  measure->excludes(spec);
}

void add_solve(CLI::App* cmd, SolveArgs& s) {
  cmd->add_option("--tol", s.tol, "Objective tolerance");
  cmd->add_option("--max-iter", s.max_iter, "Iteration cap");
  cmd->add_option("--quadrature", s.quadrature, "Solver quadrature nodes (0 = automatic)");
  cmd->add_option("--gradient", s.gradient, "analytic or fd")
      ->transform(CLI::CheckedTransformer(kGradients));
}

void add_conditioning(CLI::App* cmd, CondArgs& c) {
  cmd->add_option("--M", c.shift, "Conditioning shift M >= 0");
  cmd->add_option("--variant", c.variant, "shifted_log or mercator")
      ->transform(CLI::CheckedTransformer(kVariants));
}

void emit(const json& j, const std::string& out) {
  if (out.empty())
    std::cout << j.dump(2) << '\n';
  else
    io::write_json(out, j);
}

TrigMomentSequence measure_moments(const MeasureArgs& m, std::size_t K, std::size_t grid) {
  if (!m.name.empty()) return density_and_moments({kMeasures.at(m.name), m.location}, K, grid).moments;
  if (m.spec.empty()) throw UsageError("one of --measure or --spec is required");
  return moments_of_measure(io::measure_spec_from_json(io::read_json(m.spec)), K, grid);
}

ExperimentConfig experiment_config(const MeasureArgs* m, std::size_t K, const CondArgs& c,
                                   const SolveArgs& s, Mode mode, std::size_t grid,
                                   std::size_t extended, bool plots, const std::string& out) {
  ExperimentConfig config;
  if (m) {
    if (!m->name.empty())
      config.measure = NamedMeasure{kMeasures.at(m->name), m->location};
    else if (!m->spec.empty())
      config.spec_path = m->spec;
    else
      throw UsageError("one of --measure or --spec is required");
  }
  config.K = K;
  config.conditioning = c.options();
  config.solve = s.options();
  config.mode = mode;
  config.pointwise_grid = grid;
  config.extended_orders = extended;
  config.emit_plots = plots;
  config.output_dir = out;
  return config;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Reconstruct measures on the circle from trigonometric moments"};
  app.require_subcommand(1);

  MeasureArgs measure;
  SolveArgs solve_args;
  CondArgs cond;
  std::size_t K = 20, grid = 0, extended = 20;
  std::string in, out;
  double tau0 = 0.0;
  Mode mode = Mode::Both;
  bool plots = false;

  auto* moments = app.add_subcommand("moments", "Moments of a benchmark measure or MeasureSpec");
  add_measure(moments, measure);
  moments->add_option("-K", K, "Number of moments")->check(CLI::PositiveNumber);
  moments->add_option("--grid", grid, "Quadrature nodes for densities (0 = automatic)");
  moments->add_option("-o", out, "Output JSON (default stdout)");

  auto* condition = app.add_subcommand("condition", "Phase moments of a moment file");
  condition->add_option("--in", in, "Moment JSON")->required()->check(CLI::ExistingFile);
  add_conditioning(condition, cond);
  condition->add_option("-o", out, "Output JSON (default stdout)");

  auto* uncondition = app.add_subcommand("uncondition", "Moments from a phase moment file");
  uncondition->add_option("--in", in, "Phase moment JSON")->required()->check(CLI::ExistingFile);
  uncondition->add_option("--tau0", tau0, "tau(0) of the original measure")->required();
  add_conditioning(uncondition, cond);
  uncondition->add_option("-o", out, "Output JSON (default stdout)");

  auto* maxent = app.add_subcommand("maxent", "Fit the maximum-entropy ansatz to a moment file");
  maxent->add_option("--in", in, "Moment JSON")->required()->check(CLI::ExistingFile);
  add_solve(maxent, solve_args);
  maxent->add_option("-o", out, "Model JSON (default stdout together with diagnostics)");

  auto* invert = app.add_subcommand("invert", "Density from a phase model");
  invert->add_option("--in", in, "Phase model JSON")->required()->check(CLI::ExistingFile);
  invert->add_option("--tau0", tau0, "tau(0) of the original measure")->required();
  invert->add_option("--M", cond.shift, "Conditioning shift M >= 0");
  invert->add_option("--grid", grid, "Evaluation grid (0 = 4096)");
  invert->add_option("-o", out, "CSV of theta,mu on the evaluation grid");

  auto* pipeline = app.add_subcommand("pipeline", "Run and report one experiment");
  add_measure(pipeline, measure);
  auto* experiment = app.add_subcommand("experiment", "Run all benchmark measures");
  for (auto* cmd : {pipeline, experiment}) {
    cmd->add_option("-K", K, "Number of moments")->check(CLI::PositiveNumber);
    add_conditioning(cmd, cond);
    add_solve(cmd, solve_args);
    cmd->add_option("--mode", mode, "conditioned, unconditioned or both")
        ->transform(CLI::CheckedTransformer(kModes));
    cmd->add_option("--grid", grid, "Pointwise comparison grid (0 = 2048)");
    cmd->add_option("--extended", extended, "Moment orders compared beyond K");
    cmd->add_flag("--emit-plots", plots, "Write SVG plots");
    cmd->add_option("-o", out, "Report directory")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*moments) {
      emit(io::moments_to_json(measure_moments(measure, K, grid)), out);
    } else if (*condition) {
      emit(io::moments_to_json(condition_moments(io::moments_from_json(io::read_json(in)), cond.options())), out);
    } else if (*uncondition) {
      emit(io::moments_to_json(
               uncondition_moments(io::moments_from_json(io::read_json(in)), tau0, cond.options())),
           out);
    } else if (*maxent) {
      const auto result = solve(io::moments_from_json(io::read_json(in)), solve_args.options());
      const auto diag = io::diagnostics_to_json(result.diagnostics);
      if (out.empty()) {
        std::cout << json{{"model", io::model_to_json(result.model)}, {"diagnostics", diag}}.dump(2) << '\n';
      } else {
        io::write_json(out, io::model_to_json(result.model));
        std::cout << diag.dump(2) << '\n';
      }
    } else if (*invert) {
      InversionOptions inv;
      if (grid) inv.evaluation_grid = grid;
      const auto model = io::model_from_json(io::read_json(in));
      const auto density = invert_phase(model_series(model, inv), tau0, cond.shift, inv);
      std::cout << json{{"coefficient_count", density.coefficient_count},
                        {"resolved", density.resolved},
                        {"min_value", density.min_value},
                        {"has_negative_values", density.has_negative_values()}}
                       .dump(2)
                << '\n';
      if (!out.empty()) {
        const PeriodicGrid nodes(inv.evaluation_grid);
        const auto values = synthesize(density.series, nodes);
        std::vector<std::vector<std::string>> rows;
        for (std::size_t j = 0; j < nodes.size(); ++j)
          rows.push_back({io::format_number(nodes.node(j)), io::format_number(values[j])});
        io::write_csv(out, {"theta", "mu"}, rows);
      }
    } else if (*pipeline) {
      const auto config = experiment_config(&measure, K, cond, solve_args, mode, grid ? grid : 2048,
                                            extended, plots, out);
      const auto report = run_experiment(config);
      write_report(report, config.output_dir, plots);
      write_summary({report}, config.output_dir);
    } else if (*experiment) {
      const auto config = experiment_config(nullptr, K, cond, solve_args, mode, grid ? grid : 2048,
                                            extended, plots, out);
      const auto reports = run_benchmark(config);
      for (const auto& r : reports) write_report(r, config.output_dir / r.measure, plots);
      write_summary(reports, config.output_dir);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace cmaxent
