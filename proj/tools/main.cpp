// Command-line front end. Talks to the library exclusively through the C
// API in transgauss/transgauss.h; configuration, validation and report
// formatting live here.

#include <transgauss/transgauss.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GeometryFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

[[noreturn]] void config_fail(const std::string& msg) {
  throw ConfigError(msg);
}

void check_status(tg_status status, const char* what) {
  if (status != TG_OK) {
    throw GeometryFailure(std::string(what) + ": " + tg_status_name(status) +
                          " (" + tg_last_error_message() + ")");
  }
}

// Library failures triggered by bad user parameters count as invalid input.
void check_construction(tg_status status, const char* what) {
  if (status != TG_OK) {
    config_fail(std::string(what) + ": " + tg_status_name(status) + " (" +
                tg_last_error_message() + ")");
  }
}

struct Structure {
  tg_structure* ptr = nullptr;
  ~Structure() { tg_structure_free(ptr); }
};

struct Immersion {
  tg_immersion* ptr = nullptr;
  ~Immersion() { tg_immersion_free(ptr); }
};

struct Grid {
  tg_grid* ptr = nullptr;
  ~Grid() { tg_grid_free(ptr); }
};

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { tg_string_free(ptr); }
  json parse() const { return json::parse(std::string(ptr ? ptr : "null")); }
};

struct Config {
  std::string family = "geodesic_sphere";
  int n = 2;
  double r = 0.5;
  double rho = 0.5;
  double amplitude = 0.05;
  int frequency = 3;
  std::vector<double> surface_base;

  std::string kind = "parallel";
  std::vector<double> structure_base;

  std::vector<int> nodes;

  double h_fd = 1e-4;
  double delta = 1e-6;
  double margin = 1e-3;
  double gb_tolerance = 1e-4;
  std::string convention = "enclosing";

  std::string format = "json";
  std::string path;

  json resolved;
};

void reject_unknown_keys(const json& obj, const char* where,
                         const std::vector<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const std::string& key : allowed) {
      if (it.key() == key) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      config_fail(std::string("unknown key '") + it.key() + "' in " + where);
    }
  }
}

double require_number(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) {
    config_fail(std::string("'") + key + "' must be a number");
  }
  return obj[key].get<double>();
}

int require_int(const json& obj, const char* key, int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer()) {
    config_fail(std::string("'") + key + "' must be an integer");
  }
  return obj[key].get<int>();
}

std::string require_string(const json& obj, const char* key,
                           const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_string()) {
    config_fail(std::string("'") + key + "' must be a string");
  }
  return obj[key].get<std::string>();
}

std::vector<double> require_point(const json& obj, const char* key, int dim) {
  if (!obj.contains(key)) return {};
  if (!obj[key].is_array()) {
    config_fail(std::string("'") + key + "' must be an array of numbers");
  }
  std::vector<double> out;
  for (const json& x : obj[key]) {
    if (!x.is_number()) {
      config_fail(std::string("'") + key + "' must contain numbers only");
    }
    out.push_back(x.get<double>());
  }
  if (static_cast<int>(out.size()) != dim) {
    config_fail(std::string("'") + key + "' must have length " +
                std::to_string(dim));
  }
  return out;
}

std::vector<double> north_pole(int dim) {
  std::vector<double> p(dim, 0.0);
  p[dim - 1] = 1.0;
  return p;
}

Config parse_config(const json& doc) {
  if (!doc.is_object()) config_fail("config root must be a JSON object");
  reject_unknown_keys(doc, "config",
                      {"surface", "structure", "grid", "numerics", "output"});
  Config cfg;

  const json surface = doc.value("surface", json::object());
  if (!surface.is_object()) config_fail("'surface' must be an object");
  cfg.family = require_string(surface, "family", cfg.family);
  if (cfg.family == "clifford") {
    reject_unknown_keys(surface, "surface", {"family", "n", "r"});
    cfg.n = require_int(surface, "n", 2);
    cfg.r = require_number(surface, "r", cfg.r);
  } else if (cfg.family == "geodesic_sphere") {
    reject_unknown_keys(surface, "surface", {"family", "n", "rho",
                                             "base_point"});
    cfg.n = require_int(surface, "n", 2);
    cfg.rho = require_number(surface, "rho", cfg.rho);
    cfg.surface_base = require_point(surface, "base_point", cfg.n + 2);
  } else if (cfg.family == "perturbed_sphere") {
    reject_unknown_keys(
        surface, "surface",
        {"family", "n", "rho", "base_point", "amplitude", "frequency"});
    cfg.n = require_int(surface, "n", 2);
    cfg.rho = require_number(surface, "rho", cfg.rho);
    cfg.amplitude = require_number(surface, "amplitude", cfg.amplitude);
    cfg.frequency = require_int(surface, "frequency", cfg.frequency);
    cfg.surface_base = require_point(surface, "base_point", cfg.n + 2);
  } else {
    config_fail("surface.family must be clifford | geodesic_sphere | "
                "perturbed_sphere");
  }
  if (cfg.n < 2) config_fail("surface.n must be >= 2");
  if (cfg.surface_base.empty()) cfg.surface_base = north_pole(cfg.n + 2);

  const json structure = doc.value("structure", json::object());
  if (!structure.is_object()) config_fail("'structure' must be an object");
  reject_unknown_keys(structure, "structure", {"kind", "base_point"});
  cfg.kind = require_string(structure, "kind", cfg.kind);
  if (cfg.kind != "parallel" && cfg.kind != "frame" &&
      cfg.kind != "quaternion") {
    config_fail("structure.kind must be parallel | frame | quaternion");
  }
  if (cfg.kind == "quaternion") {
    if (structure.contains("base_point")) {
      config_fail("structure.base_point is not accepted for the quaternion "
                  "structure");
    }
    if (cfg.n != 2) {
      config_fail("the quaternion structure lives on S^3 (surface.n = 2)");
    }
  } else {
    cfg.structure_base = require_point(structure, "base_point", cfg.n + 2);
    if (cfg.structure_base.empty()) cfg.structure_base = cfg.surface_base;
  }

  const json grid = doc.value("grid", json::object());
  if (!grid.is_object()) config_fail("'grid' must be an object");
  reject_unknown_keys(grid, "grid", {"nodes", "rule"});
  if (grid.contains("nodes")) {
    if (grid["nodes"].is_number_integer()) {
      cfg.nodes.assign(cfg.n, grid["nodes"].get<int>());
    } else if (grid["nodes"].is_array()) {
      for (const json& x : grid["nodes"]) {
        if (!x.is_number_integer()) {
          config_fail("grid.nodes must contain integers");
        }
        cfg.nodes.push_back(x.get<int>());
      }
      if (static_cast<int>(cfg.nodes.size()) != cfg.n) {
        config_fail("grid.nodes must list one count per chart axis");
      }
    } else {
      config_fail("grid.nodes must be an integer or an integer array");
    }
  } else {
    cfg.nodes.assign(cfg.n, 64);
  }
  for (int count : cfg.nodes) {
    if (count < 2) config_fail("grid.nodes entries must be >= 2");
  }
  const std::string rule = require_string(grid, "rule", "auto");
  if (rule != "auto") {
    config_fail("grid.rule supports only 'auto' (periodic axes use the "
                "trapezoid rule, the rest Gauss-Legendre)");
  }

  const json numerics = doc.value("numerics", json::object());
  if (!numerics.is_object()) config_fail("'numerics' must be an object");
  reject_unknown_keys(
      numerics, "numerics",
      {"h_fd", "delta", "margin", "radius_convention", "gb_tolerance"});
  cfg.h_fd = require_number(numerics, "h_fd", cfg.h_fd);
  cfg.delta = require_number(numerics, "delta", cfg.delta);
  cfg.margin = require_number(numerics, "margin", cfg.margin);
  cfg.gb_tolerance = require_number(numerics, "gb_tolerance",
                                    cfg.gb_tolerance);
  cfg.convention =
      require_string(numerics, "radius_convention", cfg.convention);
  if (cfg.convention != "enclosing" && cfg.convention != "lemma") {
    config_fail("numerics.radius_convention must be enclosing | lemma");
  }
  if (!(cfg.h_fd > 0.0)) config_fail("numerics.h_fd must be > 0");
  if (!(cfg.delta >= 0.0)) config_fail("numerics.delta must be >= 0");
  if (!(cfg.margin > 0.0)) config_fail("numerics.margin must be > 0");
  if (!(cfg.gb_tolerance > 0.0)) config_fail("numerics.gb_tolerance must be > 0");

  const json output = doc.value("output", json::object());
  if (!output.is_object()) config_fail("'output' must be an object");
  reject_unknown_keys(output, "output", {"format", "path"});
  cfg.format = require_string(output, "format", cfg.format);
  if (cfg.format != "json" && cfg.format != "csv") {
    config_fail("output.format must be json | csv");
  }
  cfg.path = require_string(output, "path", cfg.path);
  return cfg;
}

json resolved_config(const Config& cfg) {
  json surface{{"family", cfg.family}, {"n", cfg.n}};
  if (cfg.family == "clifford") {
    surface["r"] = cfg.r;
  } else {
    surface["rho"] = cfg.rho;
    surface["base_point"] = cfg.surface_base;
    if (cfg.family == "perturbed_sphere") {
      surface["amplitude"] = cfg.amplitude;
      surface["frequency"] = cfg.frequency;
    }
  }
  json structure{{"kind", cfg.kind}};
  if (cfg.kind != "quaternion") structure["base_point"] = cfg.structure_base;
  return json{{"surface", surface},
              {"structure", structure},
              {"grid", {{"nodes", cfg.nodes}, {"rule", "auto"}}},
              {"numerics",
               {{"h_fd", cfg.h_fd},
                {"delta", cfg.delta},
                {"margin", cfg.margin},
                {"radius_convention", cfg.convention},
                {"gb_tolerance", cfg.gb_tolerance}}},
              {"output", {{"format", cfg.format}, {"path", cfg.path}}}};
}

Immersion make_surface(const Config& cfg) {
  Immersion imm;
  const int dim = cfg.n + 2;
  if (cfg.family == "clifford") {
    check_construction(tg_immersion_create_clifford(cfg.n, cfg.r, &imm.ptr),
                       "surface");
  } else if (cfg.family == "geodesic_sphere") {
    check_construction(
        tg_immersion_create_geodesic_sphere(dim, cfg.surface_base.data(),
                                            cfg.rho, &imm.ptr),
        "surface");
  } else {
    check_construction(
        tg_immersion_create_perturbed_sphere(dim, cfg.surface_base.data(),
                                             cfg.rho, cfg.amplitude,
                                             cfg.frequency, &imm.ptr),
        "surface");
  }
  return imm;
}

Structure make_structure(const Config& cfg) {
  Structure st;
  const int dim = cfg.n + 2;
  if (cfg.kind == "parallel") {
    check_construction(
        tg_structure_create_parallel(dim, cfg.structure_base.data(), &st.ptr),
        "structure");
  } else if (cfg.kind == "frame") {
    check_construction(tg_structure_create_transported_frame(
                           dim, cfg.structure_base.data(), &st.ptr),
                       "structure");
  } else {
    check_construction(tg_structure_create_quaternion(&st.ptr), "structure");
  }
  return st;
}

Grid make_grid(const Config& cfg, const Immersion& imm) {
  Grid grid;
  check_construction(tg_grid_create(imm.ptr, cfg.nodes.data(), &grid.ptr),
                     "grid");
  return grid;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) config_fail("cannot open output path '" + path + "'");
  out << text;
}

// Prints the document and mirrors it to output.path when set.
void emit_report(const json& doc, const Config& cfg) {
  const std::string text = doc.dump(2) + "\n";
  std::cout << text;
  if (!cfg.path.empty()) write_file(cfg.path, text);
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

int cmd_report(const Config& cfg) {
  Immersion imm = make_surface(cfg);
  Structure st = make_structure(cfg);
  Grid grid = make_grid(cfg, imm);
  const int n = cfg.n;
  const int count = tg_grid_node_count(grid.ptr);

  std::vector<std::string> columns;
  for (int i = 0; i < n; ++i) columns.push_back("u" + std::to_string(i + 1));
  for (int i = 0; i < n; ++i) {
    columns.push_back("lambda_" + std::to_string(i + 1));
  }
  columns.insert(columns.end(),
                 {"c", "kappa_gamma", "gk", "prop_residual"});

  std::vector<std::vector<double>> rows;
  rows.reserve(count);
  std::vector<double> u(n), lambda(n);
  for (int k = 0; k < count; ++k) {
    double weight = 0.0;
    check_status(tg_grid_node(grid.ptr, k, u.data(), &weight), "grid node");
    tg_curvature_data data{};
    check_status(tg_curvature_eval(st.ptr, imm.ptr, u.data(), cfg.h_fd,
                                   lambda.data(), &data),
                 "curvature sample");
    std::vector<double> row;
    row.insert(row.end(), u.begin(), u.end());
    row.insert(row.end(), lambda.begin(), lambda.end());
    row.insert(row.end(), {data.c, data.kappa_gamma, data.gauss_kronecker,
                           data.prop_residual});
    rows.push_back(std::move(row));
  }

  json summary_fields = json::object();
  for (size_t col = 0; col < columns.size(); ++col) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& row : rows) {
      lo = std::min(lo, row[col]);
      hi = std::max(hi, row[col]);
    }
    summary_fields[columns[col]] = {{"min", lo}, {"max", hi}};
  }

  json doc{{"command", "report"},
           {"config", cfg.resolved},
           {"rows", static_cast<int>(rows.size())},
           {"summary", summary_fields}};

  if (cfg.format == "csv") {
    std::string csv;
    for (size_t col = 0; col < columns.size(); ++col) {
      csv += (col ? "," : "") + columns[col];
    }
    csv += "\n";
    for (const auto& row : rows) {
      for (size_t col = 0; col < row.size(); ++col) {
        if (col) csv += ",";
        csv += format_double(row[col]);
      }
      csv += "\n";
    }
    const std::string path = cfg.path.empty() ? "report.csv" : cfg.path;
    write_file(path, csv);
    doc["csv_path"] = path;
    std::cout << doc.dump(2) << "\n";
  } else {
    json table = json::array();
    for (const auto& row : rows) {
      json entry = json::object();
      for (size_t col = 0; col < row.size(); ++col) {
        entry[columns[col]] = row[col];
      }
      table.push_back(std::move(entry));
    }
    doc["table"] = std::move(table);
    emit_report(doc, cfg);
  }
  return 0;
}

int cmd_gauss_bonnet(const Config& cfg) {
  if (cfg.n % 2 != 0) {
    config_fail("the curvature integral requires even surface dimension");
  }
  Immersion imm = make_surface(cfg);
  Structure st = make_structure(cfg);
  Grid grid = make_grid(cfg, imm);

  tg_gauss_bonnet_data data{};
  check_status(tg_gauss_bonnet(st.ptr, imm.ptr, grid.ptr, cfg.h_fd, &data),
               "curvature integral");

  // Seed the preimage count with the Gauss-map direction at the first node.
  std::vector<double> u(cfg.n), target(cfg.n + 1);
  double weight = 0.0;
  check_status(tg_grid_node(grid.ptr, 0, u.data(), &weight), "grid node");
  check_status(tg_gauss_map(st.ptr, imm.ptr, u.data(), target.data()),
               "gauss map");
  int degree = 0;
  check_status(tg_degree_by_preimage(st.ptr, imm.ptr, grid.ptr, target.data(),
                                     cfg.h_fd, 5, &degree),
               "degree by preimage");

  const int degree_rounded = static_cast<int>(std::lround(data.degree_estimate));
  const bool pass =
      data.residual < cfg.gb_tolerance && degree_rounded == degree;
  json doc{{"command", "gauss-bonnet"},
           {"config", cfg.resolved},
           {"integral", data.integral},
           {"target", data.target},
           {"residual", data.residual},
           {"tolerance", cfg.gb_tolerance},
           {"euler_characteristic", data.euler_char},
           {"degree_integral", data.degree_estimate},
           {"degree_preimage", degree},
           {"degrees_agree", degree_rounded == degree},
           {"pass", pass}};
  emit_report(doc, cfg);
  return pass ? 0 : 1;
}

int cmd_certify(const Config& cfg) {
  Immersion imm = make_surface(cfg);
  Grid grid = make_grid(cfg, imm);

  json verdicts = json::object();
  int primary_certified = 0;
  for (int convention = 0; convention < 2; ++convention) {
    OwnedString report;
    int certified = 0;
    check_status(tg_certify_sphere(imm.ptr, grid.ptr, cfg.delta, convention,
                                   &certified, &report.ptr),
                 "certificate");
    const char* name = convention == 0 ? "enclosing" : "lemma";
    verdicts[name] = report.parse();
    if ((convention == 0) == (cfg.convention == "enclosing")) {
      primary_certified = certified;
    }
  }

  json doc{{"command", "certify"},
           {"config", cfg.resolved},
           {"primary_convention", cfg.convention},
           {"certified", primary_certified == 1},
           {"verdicts", verdicts}};
  emit_report(doc, cfg);
  return primary_certified == 1 ? 0 : 1;
}

int cmd_counterexample(const Config& cfg, double epsilon) {
  const double limit = std::sqrt(2.0) - 1.0;
  if (!(epsilon > 0.0 && epsilon < limit)) {
    config_fail("epsilon must lie in (0, sqrt(2) - 1)");
  }
  OwnedString report;
  int ok = 0;
  check_status(tg_counterexample_family(epsilon, cfg.n, cfg.nodes[0], &ok,
                                        &report.ptr),
               "counterexample family");
  json doc{{"command", "counterexample"},
           {"config", cfg.resolved},
           {"epsilon", epsilon},
           {"result", report.parse()},
           {"pass", ok == 1}};
  emit_report(doc, cfg);
  return ok == 1 ? 0 : 1;
}

int cmd_xia(const Config& cfg) {
  Immersion imm = make_surface(cfg);
  Grid grid = make_grid(cfg, imm);
  OwnedString report;
  int certified = 0;
  check_status(tg_xia_certify(imm.ptr, grid.ptr, cfg.margin, cfg.delta,
                              &certified, &report.ptr),
               "hemisphere pipeline");
  json doc{{"command", "xia"},
           {"config", cfg.resolved},
           {"certified", certified == 1},
           {"result", report.parse()}};
  emit_report(doc, cfg);
  return certified == 1 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Translational Gauss maps, curvature integrals and rigidity "
               "certificates for hypersurfaces of the round sphere"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_override;
  std::string convention_override;
  int grid_override = 0;
  double epsilon = 0.2;

  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--out", out_override, "output path override");
  app.add_option("--grid", grid_override, "nodes per chart axis override");
  app.add_option("--convention", convention_override,
                 "radius convention override (enclosing | lemma)");

  CLI::App* sub_report = app.add_subcommand("report", "per-node curvature table");
  CLI::App* sub_gb =
      app.add_subcommand("gauss-bonnet", "curvature integral identity check");
  CLI::App* sub_certify =
      app.add_subcommand("certify", "sphere-diffeomorphism certificate");
  CLI::App* sub_counter = app.add_subcommand(
      "counterexample", "pinched non-spherical family check");
  sub_counter->add_option("--epsilon", epsilon, "pinch factor")->required();
  CLI::App* sub_xia =
      app.add_subcommand("xia", "hemisphere shrink certificate pipeline");

  CLI11_PARSE(app, argc, argv);

  try {
    json doc = json::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) config_fail("cannot read config file '" + config_path + "'");
      try {
        in >> doc;
      } catch (const json::parse_error& e) {
        config_fail(std::string("config is not valid JSON: ") + e.what());
      }
    }
    Config cfg = parse_config(doc);
    if (grid_override > 0) cfg.nodes.assign(cfg.n, grid_override);
    if (!out_override.empty()) cfg.path = out_override;
    if (!convention_override.empty()) {
      if (convention_override != "enclosing" &&
          convention_override != "lemma") {
        config_fail("--convention must be enclosing | lemma");
      }
      cfg.convention = convention_override;
    }
    cfg.resolved = resolved_config(cfg);

    if (sub_report->parsed()) return cmd_report(cfg);
    if (sub_gb->parsed()) return cmd_gauss_bonnet(cfg);
    if (sub_certify->parsed()) return cmd_certify(cfg);
    if (sub_counter->parsed()) return cmd_counterexample(cfg, epsilon);
    if (sub_xia->parsed()) return cmd_xia(cfg);
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const GeometryFailure& e) {
    std::cerr << "geometry error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
