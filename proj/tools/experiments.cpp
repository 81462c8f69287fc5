#include "experiments.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "sglab/error.hpp"
#include "studies.hpp"

namespace sglab::cli {

namespace {

using Kind = ParamSpec::Kind;

constexpr const char* kTwoPi = "6.283185307179586";

const std::vector<ParamSpec> kCommon = {
    {"seed", "12345", Kind::Integer, "seed for randomized checks"},
    {"out", "", Kind::Text, "output directory"},
};

const std::map<std::string, std::vector<ParamSpec>>& schemas() {
  static const std::map<std::string, std::vector<ParamSpec>> table = {
      {"logrep",
       {{"family", "random", Kind::Text, "identity | rotation | random | modulated"},
        {"dim", "6", Kind::Integer, "largest random dimension"},
        {"count", "20", Kind::Integer, "number of random families"},
        {"kappa", "1", Kind::Number, "real part of the shift"},
        {"kappa_im", "0", Kind::Number, "imaginary part of the shift"},
        {"h", "1e-4", Kind::Number, "difference step"},
        {"t", "0.5", Kind::Number, "evaluation point"},
        {"s", "0", Kind::Number, "base point"},
        {"L", "1", Kind::Number, "half width of the parameter interval"},
        {"richardson", "0", Kind::Integer, "1 enables Richardson extrapolation"},
        {"coefficient", "sin:1", Kind::Text, "coefficient of the modulated family"}}},
      {"colehopf",
       {{"mu", "1", Kind::Number, "viscosity parameter"},
        {"n", "256", Kind::Integer, "interior grid nodes"},
        {"dt", "auto", Kind::Text, "time step (auto = dx)"},
        {"t_end", "0.5", Kind::Number, "final time"},
        {"L", "8", Kind::Number, "half width of the domain"},
        {"n_cross", "512", Kind::Integer, "grid nodes for the cross-solver check"},
        {"tol_constant", "10", Kind::Number, "C in C (dx^2 + dt^2)"}}},
      {"xevolve",
       {{"mu", "1", Kind::Number, "viscosity parameter"},
        {"n", "128", Kind::Integer, "time samples per period"},
        {"period", kTwoPi, Kind::Number, "time window"},
        {"L", "1", Kind::Number, "half width in x"},
        {"lambda_re", "1", Kind::Number, "resolvent point, real part"},
        {"lambda_im", "0.5", Kind::Number, "resolvent point, imaginary part"},
        {"count", "100", Kind::Integer, "random resolvent points"}}},
      {"subordinate",
       {{"mu", "1", Kind::Number, "viscosity parameter"},
        {"x", "1", Kind::Number, "subordination time"},
        {"x2", "0.5", Kind::Number, "second time for the semigroup law"},
        {"n", "128", Kind::Integer, "time samples per period"},
        {"period", kTwoPi, Kind::Number, "time window"}}},
      {"identities",
       {{"nt", "21", Kind::Integer, "lattice points in t"},
        {"nx", "21", Kind::Integer, "lattice points in x"}}},
      {"suite", {}},
  };
  return table;
}

std::string normalize_key(std::string key) {
  std::replace(key.begin(), key.end(), '-', '_');
  return key;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::optional<double> parse_number(const std::string& s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

const ParamSpec* find_spec(const std::string& subcommand, const std::string& key) {
  for (const auto& spec : kCommon)
    if (spec.key == key) return &spec;
  for (const auto& spec : schema(subcommand))
    if (spec.key == key) return &spec;
  return nullptr;
}

void validate(const std::string& subcommand, const std::string& key, const std::string& value) {
  const auto* spec = find_spec(subcommand, key);
  if (!spec) throw DomainError("config", key, "unknown key for '" + subcommand + "'");
  if (spec->kind == Kind::Text) return;
  const auto v = parse_number(value);
  if (!v || !std::isfinite(*v)) throw DomainError("config", key, "not a finite number: " + value);
  if (spec->kind == Kind::Integer && *v != std::floor(*v))
    throw DomainError("config", key, "not an integer: " + value);
}

std::string file_safe(const std::string& name) {
  std::string out = name;
  for (char& c : out)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '_'))
      c = '_';
  return out;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw DomainError("write_outputs", "out", "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

/// Flattens several reports into one with "<report>/<key>" entries.
VerificationReport combine(const std::string& name, const std::string& digest,
                           const std::vector<VerificationReport>& reports) {
  VerificationReport all;
  all.name = name;
  all.inputs_digest = digest;
  for (const auto& r : reports) {
    for (const auto& [k, v] : r.residuals) all.residuals[r.name + "/" + k] = v;
    for (const auto& [k, v] : r.tolerances) all.tolerances[r.name + "/" + k] = v;
    for (const auto& [k, v] : r.floors) all.floors[r.name + "/" + k] = v;
    all.wall_time_s += r.wall_time_s;
  }
  all.evaluate();
  all.pass = all.pass && std::all_of(reports.begin(), reports.end(),
                                     [](const VerificationReport& r) { return r.pass; });
  return all;
}

void print_summary(const std::string& prefix, const RunResult& result) {
  for (const auto& r : result.reports)
    std::cout << (r.pass ? "PASS  " : "FAIL  ") << prefix << r.name << '\n';
}

int exit_code_of(const RunResult& r) { return r.pass() ? kPass : kCheckFailed; }

template <class F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumericalError;
  }
}

int run_sweep(const Params& base, const std::string& sweep, const std::filesystem::path& dir) {
  const auto eq = sweep.find('=');
  if (eq == std::string::npos) throw DomainError("sweep", "sweep", "expected KEY=v1,v2,...");
  const std::string key = normalize_key(trim(sweep.substr(0, eq)));
  const auto* spec = find_spec(base.subcommand(), key);
  if (!spec || spec->kind == Kind::Text || key == "seed")
    throw DomainError("sweep", key, "not a numeric parameter of '" + base.subcommand() + "'");

  std::vector<std::pair<double, std::string>> points;
  std::stringstream list(sweep.substr(eq + 1));
  for (std::string item; std::getline(list, item, ',');) {
    item = trim(item);
    validate(base.subcommand(), key, item);
    points.emplace_back(*parse_number(item), item);
  }
  if (points.empty()) throw DomainError("sweep", key, "no values given");
  std::stable_sort(points.begin(), points.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  struct Point {
    std::string value;
    std::string status;
    bool pass = false;
    std::map<std::string, double> residuals;
  };
  std::vector<Point> rows;
  std::set<std::string> columns;
  std::vector<VerificationReport> all_reports;
  for (const auto& [_, value] : points) {
    Point row{value, "ok", false, {}};
    try {
      const auto result = execute(base.with(key, value));
      row.pass = result.pass();
      for (const auto& r : result.reports) {
        for (const auto& [k, v] : r.residuals) {
          row.residuals[r.name + "/" + k] = v;
          columns.insert(r.name + "/" + k);
        }
        auto tagged = r;
        tagged.name = key + "=" + value + "/" + r.name;
        all_reports.push_back(std::move(tagged));
      }
      if (!row.pass) row.status = "check_failed";
    } catch (const ConfigError& e) {
      row.status = "config_error";
      std::cerr << key << "=" << value << ": " << e.what() << '\n';
    } catch (const NumericalError& e) {
      row.status = "numerical_error";
      std::cerr << key << "=" << value << ": " << e.what() << '\n';
    }
    std::cout << (row.pass ? "PASS  " : "FAIL  ") << key << "=" << value << " (" << row.status
              << ")\n";
    rows.push_back(std::move(row));
  }

  std::vector<std::string> header = {key, "pass", "status"};
  header.insert(header.end(), columns.begin(), columns.end());
  CsvTable table(header);
  for (const auto& row : rows) {
    std::vector<std::string> cells = {row.value, row.pass ? "1" : "0", row.status};
    for (const auto& c : columns) {
      const auto it = row.residuals.find(c);
      cells.push_back(it == row.residuals.end() ? "nan" : format_double(it->second));
    }
    table.add_row(cells);
  }
  table.write(dir / ("sweep_" + key + ".csv"));

  auto summary = combine("sweep_" + key, inputs_digest(base.with("sweep", sweep).values()),
                         all_reports);
  const bool all_pass = std::all_of(rows.begin(), rows.end(), [](const Point& p) { return p.pass; });
  summary.pass = all_pass;
  write_json(dir / "report.json", to_json(summary));
  return all_pass ? kPass : kCheckFailed;
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {"logrep", "colehopf", "xevolve",
                                                 "subordinate", "identities", "suite"};
  return names;
}

const std::vector<ParamSpec>& schema(const std::string& subcommand) {
  const auto it = schemas().find(subcommand);
  if (it == schemas().end()) throw DomainError("config", "subcommand", "unknown: " + subcommand);
  return it->second;
}

Params::Params(std::string subcommand, std::map<std::string, std::string> values)
    : subcommand_(std::move(subcommand)), values_(std::move(values)) {}

double Params::number(const std::string& key) const {
  const auto v = parse_number(text(key));
  if (!v) throw DomainError("config", key, "not a number: " + text(key));
  return *v;
}

long Params::integer(const std::string& key) const { return std::lround(number(key)); }

const std::string& Params::text(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw DomainError("config", key, "missing parameter");
  return it->second;
}

std::uint64_t Params::seed() const {
  const double s = number("seed");
  if (s < 0) throw DomainError("config", "seed", "seed must be non-negative");
  return static_cast<std::uint64_t>(s);
}

Params Params::with(const std::string& key, const std::string& value) const {
  auto copy = values_;
  copy[key] = value;
  return Params(subcommand_, std::move(copy));
}

std::map<std::string, std::string> parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("config", "config", "cannot read " + path.string());
  std::map<std::string, std::string> out;
  std::string line;
  for (int number = 1; std::getline(in, line); ++number) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DomainError("config", "config",
                        path.string() + ":" + std::to_string(number) + ": expected key = value");
    const std::string key = normalize_key(trim(line.substr(0, eq)));
    if (key.empty())
      throw DomainError("config", "config", path.string() + ":" + std::to_string(number) + ": empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

Params resolve(const RunConfig& config) {
  const auto& specs = schema(config.subcommand);
  std::map<std::string, std::string> values;
  for (const auto& spec : kCommon) values[spec.key] = spec.default_value;
  for (const auto& spec : specs) values[spec.key] = spec.default_value;

  auto apply = [&](const std::map<std::string, std::string>& layer) {
    for (const auto& [raw, value] : layer) {
      const auto key = normalize_key(raw);
      validate(config.subcommand, key, value);
      values[key] = value;
    }
  };
  if (config.config_file) apply(parse_config_file(*config.config_file));
  apply(config.overrides);
  return Params(config.subcommand, std::move(values));
}

std::filesystem::path output_dir(const Params& params) {
  if (const auto& out = params.text("out"); !out.empty()) return out;
  if (const char* env = std::getenv("SEMIGROUP_LAB_OUT"); env && *env) return env;
  return "semigroup-lab-out";
}

bool RunResult::pass() const {
  return std::all_of(reports.begin(), reports.end(),
                     [](const VerificationReport& r) { return r.pass; });
}

RunResult execute(const Params& params) {
  const auto& s = params.subcommand();
  RunResult result;
  if (s == "logrep") result = run_logrep(params);
  else if (s == "colehopf") result = run_colehopf(params);
  else if (s == "xevolve") result = run_xevolve(params);
  else if (s == "subordinate") result = run_subordinate(params);
  else if (s == "identities") result = run_identities(params);
  else throw DomainError("execute", "subcommand", "not a single experiment: " + s);
  const auto digest = inputs_digest(params.values());
  for (auto& r : result.reports) r.inputs_digest = digest;
  return result;
}

void write_outputs(const Params& params, const RunResult& result,
                   const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& r : result.reports)
    write_json(dir / "reports" / (file_safe(r.name) + ".json"), to_json(r));
  for (const auto& [path, table] : result.tables) table.write(dir / path);
  write_json(dir / "report.json",
             to_json(combine(params.subcommand(), inputs_digest(params.values()), result.reports)));
}

int run(const RunConfig& config) {
  return guarded([&]() -> int {
    const Params params = resolve(config);
    const auto dir = output_dir(params);

    if (config.sweep) {
      if (params.subcommand() == "suite")
        throw DomainError("sweep", "sweep", "suite does not take --sweep");
      return run_sweep(params, *config.sweep, dir);
    }

    if (params.subcommand() != "suite") {
      const auto result = execute(params);
      write_outputs(params, result, dir);
      print_summary("", result);
      return exit_code_of(result);
    }

    const auto start = std::chrono::steady_clock::now();
    std::vector<VerificationReport> all;
    for (const auto& name : subcommands()) {
      if (name == "suite") continue;
      RunConfig sub{name, {{"seed", params.text("seed")}}, std::nullopt, std::nullopt};
      const Params sub_params = resolve(sub);
      const auto result = execute(sub_params);
      write_outputs(sub_params, result, dir / name);
      print_summary(name + ": ", result);
      for (auto r : result.reports) {
        r.name = name + "/" + r.name;
        all.push_back(std::move(r));
      }
    }
    auto summary = combine("suite", inputs_digest(params.values()), all);
    summary.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_json(dir / "report.json", to_json(summary));
    const auto passed = std::count_if(all.begin(), all.end(),
                                      [](const VerificationReport& r) { return r.pass; });
    std::cout << passed << "/" << all.size() << " reports passed; outputs in " << dir.string()
              << '\n';
    return summary.pass ? kPass : kCheckFailed;
  });
}

}  // namespace sglab::cli
