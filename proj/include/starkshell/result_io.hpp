// Copyright 2026 the stark-shell authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "starkshell/types.hpp"
#include "starkshell/version.hpp"

namespace starkshell {

struct SweepSpec {
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
  bool log_scale = true;
  std::vector<double> values() const;
};

// Every knob a command reads; defaults reproduce the documented runs.
struct NumericsConfig {
  int ell_max = 8;
  int L_max = 6;
  double theta = -0.75;
  double theta_alt = -0.55;
  int nodes_inner = 48;
  int nodes_outer = 48;
  double r_cut_multiplier = 24.0;
  int n_sigma = 48;
  int n_s = 48;
  int L_pad = 14;
  double lambda0 = 6.0;
  double seed_re = 0.0;
  double seed_im = 0.0;
  bool seed_set = false;
  double re_min = -1.6;
  double re_max = -0.4;
  double im_min = -0.5;
  double im_max = 0.1;
  int n_re = 41;
  int n_im = 41;
  bool fit = false;
};

struct RunConfig {
  std::string command;
  ShellParams params;
  SweepSpec sweep;
  NumericsConfig numerics;
  std::string output_path;
  std::string format = "csv";  // csv | json | both
  std::string input_path;      // width-fit / emit-plotdata re-ingest source
  std::string plot_kind;       // trajectory | width-loglog | det-heatmap
};

// Uniform container every command returns: a column table plus named scalars.
struct ResultRecord {
  int schema_version = kSchemaVersion;
  RunConfig config;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, double>> scalars;  // insertion order kept
  std::vector<std::string> notes;
  std::string status = "ok";
};

// shortest round-trip decimal (%.17g)
std::string format_double(double v);

// CSV with a '#' comment header echoing schema, command, configuration and
// scalars. Contains nothing run-dependent: a rerun is byte-identical.
std::string to_csv(const ResultRecord& rec);

// JSON document; its provenance block carries tool version and a timestamp.
std::string to_json(const ResultRecord& rec);

// Inverse of to_json for the fields downstream commands consume
// (command, params, columns, rows, scalars, notes, status).
ResultRecord from_json(const std::string& text);

// write to <path>.tmp then rename, so readers never see partial output
void write_file_atomic(const std::string& path, const std::string& content);

// Dispatch on config.format; "both" writes <output>.csv and <output>.json,
// otherwise output_path is taken literally.
void write_record(const ResultRecord& rec);

}  // namespace starkshell
