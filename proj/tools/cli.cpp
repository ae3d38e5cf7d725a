#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "plasmon/error.hpp"
#include "plasmon/metrology.hpp"
#include "plasmon/records.hpp"
#include "run_config.hpp"
#include "validation.hpp"

namespace plasmon::cli {

namespace {

struct Context {
  RunConfig cfg;
  std::ostream& out;
  std::ostream& err;
};

void emit(const Context& ctx, const RecordTable& table) {
  if (ctx.cfg.out == "-") {
    write_records(ctx.out, table, ctx.cfg.format);
    return;
  }
  std::ofstream file(ctx.cfg.out, std::ios::binary);
  if (!file) throw ConfigError(fmt::format("cannot write output file '{}'", ctx.cfg.out));
  write_records(file, table, ctx.cfg.format);
}

std::vector<std::string> or_default(const std::vector<std::string>& v, std::vector<std::string> fallback) {
  return v.empty() ? fallback : v;
}
std::vector<double> or_default(const std::vector<double>& v, std::vector<double> fallback) {
  return v.empty() ? fallback : v;
}

InflectionSearch search_of(const RunConfig& cfg) {
  return {Interval{cfg.n_grid.min, cfg.n_grid.max}, cfg.tol_n, cfg.h, cfg.scan_points};
}

int cmd_reflectance(Context& ctx) {
  const auto thetas = ctx.cfg.theta_grid.points();
  if (ctx.cfg.n_analyte.empty()) throw ConfigError("no analyte index given");
  RecordTable table{{"theta_deg", "n_analyte", "reflectance"}, {}};
  for (double n : ctx.cfg.n_analyte) {
    const auto stack = ctx.cfg.stack(n);
    for (double theta : thetas) table.add({theta, n, reflectance(stack, IncidenceGeometry{theta})});
    if (thetas.size() >= 3) {
      try {
        const double res =
            resonance_angle(stack, {ctx.cfg.theta_grid.min, ctx.cfg.theta_grid.max}, ctx.cfg.tol_deg);
        ctx.err << fmt::format("n_analyte={}: resonance at {:.6f} deg\n", n, res);
      } catch (const NoInteriorExtremumError& e) {
        ctx.err << fmt::format("n_analyte={}: no interior resonance ({})\n", n, e.what());
      }
    }
  }
  emit(ctx, table);
  return kExitOk;
}

int cmd_index_sweep(Context& ctx) {
  const auto grid = ctx.cfg.n_grid.points();
  const auto stack = ctx.cfg.stack(grid.front());
  const IncidenceGeometry geom{ctx.cfg.theta_deg};
  geom.validate();
  RecordTable table{{"n_analyte", "reflectance", "sensitivity"}, {}};
  for (double n : grid) {
    const auto s = stack.with_analyte(n);
    s.validate();
    table.add({n, reflectance(s, geom), sensitivity(stack, geom, n, ctx.cfg.h)});
  }
  emit(ctx, table);
  return kExitOk;
}

int cmd_inflection(Context& ctx) {
  const auto thetas = ctx.cfg.theta_grid.points();
  const auto stack = ctx.cfg.stack(ctx.cfg.n_grid.min);
  const auto search = search_of(ctx.cfg);
  RecordTable table{{"theta_deg", "n_inf"}, {}};
  for (double theta : thetas) {
    try {
      table.add({theta, inflection_index(stack, IncidenceGeometry{theta}, search.n_range, search.tol, search.h,
                                         search.scan_points)});
    } catch (const NoInteriorExtremumError& e) {
      ctx.err << fmt::format("theta={}: skipped, {}\n", theta, e.what());
    }
  }
  emit(ctx, table);
  return kExitOk;
}

int cmd_ratio(Context& ctx) {
  const auto grid = ctx.cfg.n_grid.points();
  const auto stack = ctx.cfg.stack(grid.front());
  const IncidenceGeometry geom{ctx.cfg.theta_deg};
  geom.validate();
  if (ctx.cfg.explicit_efficiencies() && !ctx.cfg.explicit_efficiencies()->is_balanced()) {
    throw ConfigError("the ratio command needs balanced efficiencies; use --eta");
  }
  std::vector<double> etas = or_default(ctx.cfg.etas, {1.0});
  if (const auto eff = ctx.cfg.explicit_efficiencies()) etas = {eff->eta_a};

  RecordTable table{{"n_analyte", "R", "state", "N", "eta"}, {}};
  for (const auto& family : or_default(ctx.cfg.states, {"twin-fock", "tmsv"})) {
    for (double photons : or_default(ctx.cfg.photons, {1.0, 2.0, 5.0, 10.0})) {
      const auto stats = statistics(make_state(family, photons, ctx.cfg.truncation_tolerance));
      for (double eta : etas) {
        for (const auto& point : sweep_ratio(stack, geom, grid, stats, eta)) {
          if (!point.ratio) {
            ctx.err << fmt::format("{} N={} eta={} n={}: {}\n", family, photons, eta, point.n_analyte, point.error);
            continue;
          }
          table.add({point.n_analyte, *point.ratio, family, photons, eta});
        }
      }
    }
  }
  emit(ctx, table);
  return kExitOk;
}

int cmd_precision(Context& ctx) {
  const auto thetas = ctx.cfg.theta_grid.points();
  const auto stack = ctx.cfg.stack(ctx.cfg.n_grid.min);
  std::vector<ChannelEfficiencies> channels;
  if (const auto eff = ctx.cfg.explicit_efficiencies()) {
    channels.push_back(*eff);
  } else {
    for (double eta : or_default(ctx.cfg.etas, {1.0})) channels.push_back(ChannelEfficiencies::balanced(eta));
  }

  RecordTable table{{"theta_deg", "n_inf", "state", "N", "eta", "delta_n", "slope", "noise"}, {}};
  for (double photons : or_default(ctx.cfg.photons, {1.0, 2.0})) {
    std::vector<NamedState> states;
    for (const auto& family : or_default(ctx.cfg.states, {"coherent", "twin-fock", "tmsv"})) {
      states.push_back({family, statistics(make_state(family, photons, ctx.cfg.truncation_tolerance))});
    }
    for (const auto& eff : channels) {
      const auto sweep = sweep_precision_vs_angle(stack, thetas, states, eff, search_of(ctx.cfg));
      for (const auto& skipped : sweep.skipped) {
        ctx.err << fmt::format("theta={}: skipped, {}\n", skipped.theta_deg, skipped.reason);
      }
      for (const auto& row : sweep.rows) {
        const Cell eta_cell = row.efficiencies.is_balanced()
                                  ? Cell{row.efficiencies.eta_a}
                                  : Cell{fmt::format("{}/{}", row.efficiencies.eta_a, row.efficiencies.eta_b)};
        table.add({row.theta_deg, row.n_inf, row.state, photons, eta_cell, row.delta_n, row.slope, row.noise});
      }
    }
  }
  emit(ctx, table);
  return kExitOk;
}

int cmd_validate(Context& ctx) {
  const auto stack = ctx.cfg.stack(ctx.cfg.n_analyte.empty() ? ctx.cfg.n_grid.min : ctx.cfg.n_analyte.front());
  ValidationOptions options{ctx.cfg.truncation_tolerance, ctx.cfg.inject_fault ? 1e-3 : 0.0};
  const auto checks = run_validation(stack, options);

  std::ofstream file;
  std::ostream* sink = &ctx.out;
  if (ctx.cfg.out != "-") {
    file.open(ctx.cfg.out);
    if (!file) throw ConfigError(fmt::format("cannot write report '{}'", ctx.cfg.out));
    sink = &file;
  }
  print_report(*sink, checks);
  const bool ok = std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
  *sink << (ok ? "validation passed\n" : "validation FAILED\n");
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum-enhanced intensity SPR sensor simulator", "plasmon"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  RunConfig flags;
  std::string format = "csv";
  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> overrides;
  const auto add = [&](const std::string& name, auto& target, auto member, const std::string& help) {
    auto* opt = app.add_option(name, target, help);
    overrides.emplace_back(opt, [&target, member](RunConfig& c) { c.*member = target; });
    return opt;
  };

  app.add_option("--config", config_path, "flat JSON config file; flags override its values");
  add("--out", flags.out, &RunConfig::out, "output path, '-' for stdout");
  app.add_option("--format", format, "csv | json");
  add("--dispersion", flags.dispersion, &RunConfig::dispersion, "metal n,k table (CSV)");
  add("--metal-model", flags.metal_model, &RunConfig::metal_model, "table | drude-lorentz");
  add("--n-prism", flags.n_prism, &RunConfig::n_prism, "prism refractive index");
  add("--thickness", flags.thickness_nm, &RunConfig::thickness_nm, "metal film thickness, nm");
  add("--wavelength", flags.wavelength_nm, &RunConfig::wavelength_nm, "vacuum wavelength, nm");
  add("--theta", flags.theta_deg, &RunConfig::theta_deg, "incidence angle, degrees");
  auto* theta_min = app.add_option("--theta-min", flags.theta_grid.min, "angle grid start, degrees");
  auto* theta_max = app.add_option("--theta-max", flags.theta_grid.max, "angle grid end, degrees");
  auto* theta_steps = app.add_option("--theta-steps", flags.theta_grid.steps, "angle grid points");
  auto* n_min = app.add_option("--n-min", flags.n_grid.min, "analyte index grid start");
  auto* n_max = app.add_option("--n-max", flags.n_grid.max, "analyte index grid end");
  auto* n_steps = app.add_option("--n-steps", flags.n_grid.steps, "analyte index grid points");
  add("--n-analyte", flags.n_analyte, &RunConfig::n_analyte, "analyte indices (reflectance)")->delimiter(',');
  add("--state", flags.states, &RunConfig::states, "coherent | twin-fock | tmsv | noon | squeezed-product")
      ->delimiter(',');
  add("--photons", flags.photons, &RunConfig::photons, "mean photon number per mode")->delimiter(',');
  add("--eta", flags.etas, &RunConfig::etas, "balanced channel efficiency")->delimiter(',');
  auto* eta_a = app.add_option("--eta-a", "mode-a efficiency (with --eta-b)");
  auto* eta_b = app.add_option("--eta-b", "mode-b efficiency (with --eta-a)");
  add("--step", flags.h, &RunConfig::h, "finite-difference step, RIU");
  add("--scan-points", flags.scan_points, &RunConfig::scan_points, "coarse scan points for extremum search");
  add("--truncation-tol", flags.truncation_tolerance, &RunConfig::truncation_tolerance,
      "Fock truncation tolerance");
  bool inject_fault = false;
  app.add_flag("--inject-fault", inject_fault, "validate: perturb the ratio denominator by 1e-3");

  using Command = int (*)(Context&);
  const std::map<std::string, std::pair<std::string, Command>> commands{
      {"reflectance", {"reflectance vs angle for each analyte index", cmd_reflectance}},
      {"index-sweep", {"reflectance and sensitivity vs analyte index", cmd_index_sweep}},
      {"inflection", {"most sensitive analyte index vs angle", cmd_inflection}},
      {"ratio", {"precision ratio over coherent light vs analyte index", cmd_ratio}},
      {"precision", {"estimation precision at the inflection point vs angle", cmd_precision}},
      {"validate", {"brute-force cross-checks of every closed form", cmd_validate}},
  };
  for (const auto& [name, entry] : commands) app.add_subcommand(name, entry.first);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    Context ctx{RunConfig{}, out, err};
    if (!config_path.empty()) ctx.cfg.merge_file(config_path);
    for (const auto& [opt, apply] : overrides) {
      if (opt->count() > 0) apply(ctx.cfg);
    }
    if (theta_min->count()) ctx.cfg.theta_grid.min = flags.theta_grid.min;
    if (theta_max->count()) ctx.cfg.theta_grid.max = flags.theta_grid.max;
    if (theta_steps->count()) ctx.cfg.theta_grid.steps = flags.theta_grid.steps;
    if (n_min->count()) ctx.cfg.n_grid.min = flags.n_grid.min;
    if (n_max->count()) ctx.cfg.n_grid.max = flags.n_grid.max;
    if (n_steps->count()) ctx.cfg.n_grid.steps = flags.n_grid.steps;
    if (eta_a->count()) ctx.cfg.eta_a = eta_a->as<double>();
    if (eta_b->count()) ctx.cfg.eta_b = eta_b->as<double>();
    if (app.get_option("--format")->count()) ctx.cfg.format = parse_format(format);
    if (inject_fault) ctx.cfg.inject_fault = true;

    const auto selected = app.get_subcommands().front()->get_name();
    return commands.at(selected).second(ctx);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace plasmon::cli
