// Copyright 2026 the stark-shell authors.
// SPDX-License-Identifier: Apache-2.0
//
// Command line front end. Exit codes: 0 success, 2 configuration/usage
// error, 3 numerical failure (partial results are still written).
#include <cstdio>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include "starkshell/run.hpp"
#include "starkshell/version.hpp"

namespace {

using starkshell::ResultRecord;
using starkshell::RunConfig;

void print_record(const ResultRecord& rec) {
  std::cout << rec.config.command << ": status = " << rec.status << "\n";
  for (const std::string& note : rec.notes) std::cout << "note: " << note << "\n";
  for (const auto& [key, val] : rec.scalars)
    std::cout << key << " = " << starkshell::format_double(val) << "\n";
  if (!rec.columns.empty()) {
    std::cout << "\n";
    for (const std::string& colname : rec.columns)
      std::cout << std::setw(11) << colname << " ";
    std::cout << "\n";
    const size_t cap = 40;
    for (size_t i = 0; i < rec.rows.size() && i < cap; ++i) {
      for (double v : rec.rows[i])
        std::cout << std::setw(11) << std::setprecision(5) << v << " ";
      std::cout << "\n";
    }
    if (rec.rows.size() > cap)
      std::cout << "... " << rec.rows.size() - cap << " more rows\n";
  }
  if (!rec.config.output_path.empty()) {
    if (rec.config.format == "both")
      std::cout << "wrote " << rec.config.output_path << ".csv and .json\n";
    else
      std::cout << "wrote " << rec.config.output_path << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"delta-shell Stark spectra: bound states, shifts, resonances"};
  app.set_version_flag("--version", starkshell::kVersion);
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from an INI/TOML file");

  RunConfig cfg;
  std::string f_grid;
  std::string grid_scale = "log";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--a", cfg.params.a, "shell radius (delta position in 1D)");
    sub->add_option("--alpha", cfg.params.alpha, "coupling strength");
    sub->add_option("--output,-o", cfg.output_path, "output file path");
    sub->add_option("--format", cfg.format, "csv | json | both")
        ->check(CLI::IsMember({"csv", "json", "both"}));
    return sub;
  };
  auto add_field = [&](CLI::App* sub) {
    sub->add_option("--f", cfg.params.F, "field strength");
    return sub;
  };
  auto add_contour = [&](CLI::App* sub) {
    sub->add_option("--L-max", cfg.numerics.L_max, "angular truncation");
    sub->add_option("--theta", cfg.numerics.theta, "contour angle in (-pi/3, 0)");
    sub->add_option("--n-sigma", cfg.numerics.n_sigma, "leg-A node count");
    sub->add_option("--n-s", cfg.numerics.n_s, "leg-B nodes per panel");
    sub->add_option("--L-pad", cfg.numerics.L_pad, "internal Legendre padding");
    sub->add_option("--lambda0", cfg.numerics.lambda0, "bend scale a^2/(2 lambda0)");
    return sub;
  };
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed-re", cfg.numerics.seed_re, "Newton seed, real part");
    sub->add_option("--seed-im", cfg.numerics.seed_im, "Newton seed, imaginary part");
    return sub;
  };

  CLI::App* bound = add_common(app.add_subcommand(
      "bound-states", "negative-energy spectrum of the shell interaction"));
  bound->add_option("--ell-max", cfg.numerics.ell_max, "largest partial wave");

  CLI::App* shift = add_common(app.add_subcommand(
      "stark-shift", "second-order field shift of the s-wave bound state"));
  shift->add_option("--nodes-inner", cfg.numerics.nodes_inner, "radial nodes per panel");
  shift->add_option("--nodes-outer", cfg.numerics.nodes_outer, "outer radial nodes");
  shift->add_option("--r-cut-multiplier", cfg.numerics.r_cut_multiplier,
                    "radial truncation R = a + mult/kappa");

  CLI::App* res1 = add_field(add_common(app.add_subcommand(
      "resonance-1d", "resonance trajectory of the line model (Airy kernel)")));
  res1->add_option("--f-grid", f_grid, "field sweep start:stop:count");
  res1->add_option("--grid-scale", grid_scale, "log | linear")
      ->check(CLI::IsMember({"log", "linear"}));
  res1->add_flag("--fit", cfg.numerics.fit, "fit log Gamma = logC + b log F - c/F");
  add_seed(res1);

  CLI::App* dscan = add_field(add_common(app.add_subcommand(
      "det-scan-3d", "|det_3| of the boundary operator over a z box")));
  add_contour(dscan);
  dscan->add_option("--re-min", cfg.numerics.re_min, "box lower Re z");
  dscan->add_option("--re-max", cfg.numerics.re_max, "box upper Re z");
  dscan->add_option("--im-min", cfg.numerics.im_min, "box lower Im z");
  dscan->add_option("--im-max", cfg.numerics.im_max, "box upper Im z");
  dscan->add_option("--n-re", cfg.numerics.n_re, "grid points along Re z");
  dscan->add_option("--n-im", cfg.numerics.n_im, "grid points along Im z");

  CLI::App* res3 = add_field(add_common(app.add_subcommand(
      "resonance-3d", "resonance of the shell in a field, det_3 Newton")));
  add_contour(res3);
  add_seed(res3);

  CLI::App* wfit = add_common(
      app.add_subcommand("width-fit", "refit a stored trajectory (JSON input)"));
  wfit->add_option("--input", cfg.input_path, "result JSON with F and width columns");

  add_common(app.add_subcommand("validate",
                                "internal identity checks and convention audit"));

  CLI::App* plot = add_common(app.add_subcommand(
      "emit-plotdata", "project a stored result onto plot-ready columns"));
  plot->add_option("--input", cfg.input_path, "result JSON to project");
  plot->add_option("--kind", cfg.plot_kind, "trajectory | width-loglog | det-heatmap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  for (const char* name : {"bound-states", "stark-shift", "resonance-1d", "det-scan-3d",
                           "resonance-3d", "width-fit", "validate", "emit-plotdata"})
    if (app.got_subcommand(name)) cfg.command = name;

  if (!f_grid.empty()) {
    double start = 0.0, stop = 0.0;
    int count = 0;
    if (std::sscanf(f_grid.c_str(), "%lf:%lf:%d", &start, &stop, &count) != 3) {
      std::cerr << "configuration error: --f-grid expects start:stop:count, got '"
                << f_grid << "'\n";
      return 2;
    }
    cfg.sweep.start = start;
    cfg.sweep.stop = stop;
    cfg.sweep.count = count;
  }
  cfg.sweep.log_scale = grid_scale == "log";
  cfg.numerics.seed_set = res1->count("--seed-re") || res1->count("--seed-im") ||
                          res3->count("--seed-re") || res3->count("--seed-im");

  try {
    ResultRecord rec = starkshell::run(cfg);
    print_record(rec);
    starkshell::write_record(rec);
    return rec.status == "ok" ? 0 : 3;
  } catch (const std::domain_error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
