// Copyright 2026 the stark-shell authors.
// SPDX-License-Identifier: Apache-2.0
#include "starkshell/result_io.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace starkshell {

std::vector<double> SweepSpec::values() const {
  if (count < 1) throw std::domain_error("sweep: count >= 1 required");
  if (count == 1) return {start};
  if (log_scale && !(start > 0.0 && stop > 0.0))
    throw std::domain_error("sweep: log spacing needs positive endpoints");
  std::vector<double> v(count);
  if (log_scale) {
    double la = std::log(start), lb = std::log(stop);
    for (int i = 0; i < count; ++i)
      v[i] = std::exp(la + (lb - la) * i / double(count - 1));
  } else {
    for (int i = 0; i < count; ++i)
      v[i] = start + (stop - start) * i / double(count - 1);
  }
  return v;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string sweep_echo(const SweepSpec& s) {
  std::ostringstream os;
  os << format_double(s.start) << ":" << format_double(s.stop) << ":" << s.count
     << (s.log_scale ? " log" : " linear");
  return os.str();
}

std::string timestamp_utc() {
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

}  // namespace

std::string to_csv(const ResultRecord& rec) {
  const RunConfig& c = rec.config;
  const NumericsConfig& n = c.numerics;
  std::ostringstream os;
  os << "# stark-shell result, schema_version = " << rec.schema_version << "\n";
  os << "# command = " << c.command << "\n";
  os << "# a = " << format_double(c.params.a) << " alpha = " << format_double(c.params.alpha)
     << " F = " << format_double(c.params.F) << "\n";
  if (c.sweep.count > 0) os << "# sweep = " << sweep_echo(c.sweep) << "\n";
  os << "# ell_max = " << n.ell_max << " L_max = " << n.L_max
     << " theta = " << format_double(n.theta) << " L_pad = " << n.L_pad
     << " lambda0 = " << format_double(n.lambda0) << "\n";
  os << "# nodes = " << n.nodes_inner << "/" << n.nodes_outer << " r_cut_multiplier = "
     << format_double(n.r_cut_multiplier) << " n_sigma = " << n.n_sigma
     << " n_s = " << n.n_s << "\n";
  if (n.seed_set)
    os << "# seed = " << format_double(n.seed_re) << " " << format_double(n.seed_im) << "\n";
  os << "# status = " << rec.status << "\n";
  for (const std::string& note : rec.notes) os << "# note: " << note << "\n";
  for (const auto& [key, val] : rec.scalars)
    os << "# scalar " << key << " = " << format_double(val) << "\n";
  for (size_t j = 0; j < rec.columns.size(); ++j)
    os << rec.columns[j] << (j + 1 < rec.columns.size() ? "," : "");
  os << "\n";
  for (const std::vector<double>& row : rec.rows) {
    for (size_t j = 0; j < row.size(); ++j)
      os << format_double(row[j]) << (j + 1 < row.size() ? "," : "");
    os << "\n";
  }
  return os.str();
}

std::string to_json(const ResultRecord& rec) {
  using json = nlohmann::ordered_json;
  const RunConfig& c = rec.config;
  const NumericsConfig& n = c.numerics;
  json doc;
  doc["schema_version"] = rec.schema_version;
  doc["provenance"] = {{"tool", "stark_shell"},
                       {"version", kVersion},
                       {"timestamp", timestamp_utc()},
                       {"status", rec.status}};
  doc["command"] = c.command;
  doc["params"] = {{"a", c.params.a}, {"alpha", c.params.alpha}, {"F", c.params.F}};
  json cfg;
  cfg["sweep"] = {{"start", c.sweep.start},
                  {"stop", c.sweep.stop},
                  {"count", c.sweep.count},
                  {"log_scale", c.sweep.log_scale}};
  cfg["ell_max"] = n.ell_max;
  cfg["L_max"] = n.L_max;
  cfg["theta"] = n.theta;
  cfg["theta_alt"] = n.theta_alt;
  cfg["nodes_inner"] = n.nodes_inner;
  cfg["nodes_outer"] = n.nodes_outer;
  cfg["r_cut_multiplier"] = n.r_cut_multiplier;
  cfg["n_sigma"] = n.n_sigma;
  cfg["n_s"] = n.n_s;
  cfg["L_pad"] = n.L_pad;
  cfg["lambda0"] = n.lambda0;
  if (n.seed_set) cfg["seed"] = {{"re", n.seed_re}, {"im", n.seed_im}};
  cfg["scan_box"] = {{"re_min", n.re_min},
                     {"re_max", n.re_max},
                     {"im_min", n.im_min},
                     {"im_max", n.im_max},
                     {"n_re", n.n_re},
                     {"n_im", n.n_im}};
  doc["config"] = cfg;
  doc["columns"] = rec.columns;
  doc["rows"] = rec.rows;
  json sc = json::object();
  for (const auto& [key, val] : rec.scalars) sc[key] = val;
  doc["scalars"] = sc;
  doc["notes"] = rec.notes;
  doc["status"] = rec.status;
  return doc.dump(2) + "\n";
}

ResultRecord from_json(const std::string& text) {
  using json = nlohmann::ordered_json;
  json doc = json::parse(text);
  ResultRecord rec;
  rec.schema_version = doc.value("schema_version", 0);
  if (rec.schema_version != kSchemaVersion)
    throw std::invalid_argument("unsupported schema_version " +
                                std::to_string(rec.schema_version));
  rec.config.command = doc.value("command", "");
  if (doc.contains("params")) {
    const json& p = doc["params"];
    rec.config.params.a = p.value("a", 1.0);
    rec.config.params.alpha = p.value("alpha", -1.0);
    rec.config.params.F = p.value("F", 0.0);
  }
  if (doc.contains("columns"))
    rec.columns = doc["columns"].get<std::vector<std::string>>();
  if (doc.contains("rows"))
    rec.rows = doc["rows"].get<std::vector<std::vector<double>>>();
  if (doc.contains("scalars"))
    for (const auto& [key, val] : doc["scalars"].items())
      rec.scalars.emplace_back(key, val.get<double>());
  if (doc.contains("notes")) rec.notes = doc["notes"].get<std::vector<std::string>>();
  rec.status = doc.value("status", "ok");
  return rec;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
    out << content;
    if (!out) throw std::runtime_error("write failed on " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("rename " + tmp + " -> " + path + " failed");
}

void write_record(const ResultRecord& rec) {
  const std::string& path = rec.config.output_path;
  if (path.empty()) return;
  const std::string& fmt = rec.config.format;
  if (fmt == "csv") {
    write_file_atomic(path, to_csv(rec));
  } else if (fmt == "json") {
    write_file_atomic(path, to_json(rec));
  } else if (fmt == "both") {
    write_file_atomic(path + ".csv", to_csv(rec));
    write_file_atomic(path + ".json", to_json(rec));
  } else {
    throw std::invalid_argument("unknown output format '" + fmt + "'");
  }
}

}  // namespace starkshell
