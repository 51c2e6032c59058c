#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include <fracbv/boxdim.hpp>
#include <fracbv/catalog.hpp>
#include <fracbv/fracint.hpp>
#include <fracbv/grid.hpp>
#include <fracbv/serialize.hpp>
#include <fracbv/variation.hpp>
#include <fracbv/verify.hpp>
#include <fracbv/version.hpp>

namespace {

using fracbv::format_real;
using fracbv::ordered_json;

// Exit codes: 0 success, 1 verification failure, 2 usage or configuration
// error, 3 numeric failure.
constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct FnSpec {
  std::string raw;
  std::string name;
  fracbv::ParamMap params;
};

// "name" or "name:key=value,key=value"; values are decimal reals.
FnSpec parse_function_spec(const std::string& s) {
  FnSpec out;
  out.raw = s;
  const auto colon = s.find(':');
  out.name = s.substr(0, colon);
  if (out.name.empty())
    throw std::invalid_argument("--function: missing function name");
  if (colon == std::string::npos) return out;
  std::string rest = s.substr(colon + 1);
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    const auto comma = rest.find(',', pos);
    const std::string tok =
        rest.substr(pos, comma == std::string::npos ? std::string::npos
                                                    : comma - pos);
    const auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::invalid_argument("--function: expected key=value, got '" +
                                  tok + "'");
    const std::string key = tok.substr(0, eq);
    const std::string val = tok.substr(eq + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(val, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("--function: bad numeric value '" + val +
                                  "'");
    }
    if (used != val.size())
      throw std::invalid_argument("--function: bad numeric value '" + val +
                                  "'");
    if (!out.params.emplace(key, v).second)
      throw std::invalid_argument("--function: duplicate parameter '" + key +
                                  "'");
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

int write_text(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return kExitOk;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file '" << path << "'\n";
    return kExitUsage;
  }
  out << content;
  out.close();
  if (!out.good()) {
    std::cerr << "error: failed writing '" << path << "'\n";
    return kExitUsage;
  }
  return kExitOk;
}

struct CommonOpts {
  std::string function;
  double a = 0.0;
  double b = 1.0;
  long n = 1024;
  std::string output;
  std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--function", c.function,
                  "catalog function, e.g. sin_recip or power:beta=0.5")
      ->required();
  cmd->add_option("--a", c.a, "left endpoint")->capture_default_str();
  cmd->add_option("--b", c.b, "right endpoint")->capture_default_str();
  cmd->add_option("--n", c.n, "number of grid subintervals")
      ->capture_default_str();
  cmd->add_option("--output", c.output, "output file (default: stdout)");
  cmd->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

void add_profile_opts(CLI::App* cmd, fracbv::ProfileParams& pp,
                      fracbv::ProfileThresholds& th) {
  cmd->add_option("--base-delta", pp.base_delta,
                  "first window half-width")->capture_default_str();
  cmd->add_option("--levels", pp.levels, "profile levels")
      ->capture_default_str();
  cmd->add_option("--n-per-level", pp.n_per_level,
                  "subintervals at the first level")->capture_default_str();
  cmd->add_option("--rho", th.rho, "growth ratio voting unbounded")
      ->capture_default_str();
  cmd->add_option("--m", th.m, "consecutive votes required")
      ->capture_default_str();
  cmd->add_option("--floor-mult", th.floor_mult,
                  "TV floor as a multiple of sup|f|")->capture_default_str();
  cmd->add_option("--bounded-ceiling", th.bounded_ceiling,
                  "growth ratio voting bounded")->capture_default_str();
}

ordered_json base_config_json(const char* command, const CommonOpts& c,
                              const fracbv::FunctionHandle& f) {
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : f.params()) params[k] = v;
  return ordered_json{{"command", command},
                      {"function", ordered_json{{"name", f.name()},
                                                {"params", params}}},
                      {"a", c.a},
                      {"b", c.b},
                      {"n", c.n},
                      {"format", c.format}};
}

int cmd_integrate(const CommonOpts& c, double alpha) {
  const FnSpec spec = parse_function_spec(c.function);
  const fracbv::FunctionHandle f =
      fracbv::catalog_lookup(spec.name, spec.params, c.a, c.b);
  const fracbv::Grid grid = fracbv::make_grid(c.a, c.b, c.n);
  const fracbv::SampledFunction fs = fracbv::sample(f, grid);
  const fracbv::SampledFunction img =
      fracbv::rl_integral(fs, fracbv::FracOrder{alpha});

  if (c.format == "csv") {
    std::string out = "x,f,integral\n";
    for (long i = 0; i <= grid.n; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      out += format_real(grid.node(i)) + "," + format_real(fs.values[ui]) +
             "," + format_real(img.values[ui]) + "\n";
    }
    return write_text(c.output, out);
  }
  ordered_json config = base_config_json("integrate", c, f);
  config["alpha"] = alpha;
  std::vector<double> xs(static_cast<std::size_t>(grid.n) + 1);
  for (long i = 0; i <= grid.n; ++i)
    xs[static_cast<std::size_t>(i)] = grid.node(i);
  ordered_json results{
      {"x", xs}, {"f", fs.values}, {"integral", img.values}};
  return write_text(c.output,
                    fracbv::json_envelope(std::move(config), std::move(results))
                            .dump(2) +
                        "\n");
}

int cmd_variation(const CommonOpts& c) {
  const FnSpec spec = parse_function_spec(c.function);
  const fracbv::FunctionHandle f =
      fracbv::catalog_lookup(spec.name, spec.params, c.a, c.b);
  const fracbv::Grid grid = fracbv::make_grid(c.a, c.b, c.n);
  const fracbv::SampledFunction fs = fracbv::sample(f, grid);
  const fracbv::JordanPair jp = fracbv::jordan_decompose(fs);

  std::vector<double> running(fs.values.size());
  fracbv::NeumaierSum acc;
  running[0] = 0.0;
  for (std::size_t i = 1; i < fs.values.size(); ++i) {
    acc.add(std::abs(fs.values[i] - fs.values[i - 1]));
    running[i] = acc.value();
  }
  const double tv = running.back();
  const double bv = std::abs(fs.values[0]) + tv;

  if (c.format == "csv") {
    std::string out = "x,f,rising,falling,running_tv\n";
    for (long i = 0; i <= grid.n; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      out += format_real(grid.node(i)) + "," + format_real(fs.values[ui]) +
             "," + format_real(jp.rising.values[ui]) + "," +
             format_real(jp.falling.values[ui]) + "," +
             format_real(running[ui]) + "\n";
    }
    return write_text(c.output, out);
  }
  ordered_json config = base_config_json("variation", c, f);
  std::vector<double> xs(static_cast<std::size_t>(grid.n) + 1);
  for (long i = 0; i <= grid.n; ++i)
    xs[static_cast<std::size_t>(i)] = grid.node(i);
  ordered_json results{{"tv", tv},
                       {"bv_norm", bv},
                       {"x", xs},
                       {"f", fs.values},
                       {"rising", jp.rising.values},
                       {"falling", jp.falling.values},
                       {"running_tv", running}};
  return write_text(c.output,
                    fracbv::json_envelope(std::move(config), std::move(results))
                            .dump(2) +
                        "\n");
}

int cmd_detect_uvp(const CommonOpts& c, long stride,
                   const fracbv::ProfileParams& pp,
                   const fracbv::ProfileThresholds& th) {
  const FnSpec spec = parse_function_spec(c.function);
  const fracbv::FunctionHandle f =
      fracbv::catalog_lookup(spec.name, spec.params, c.a, c.b);
  const fracbv::Grid grid = fracbv::make_grid(c.a, c.b, c.n);
  const fracbv::UvpScanResult scan =
      fracbv::detect_uvp(f, grid, stride, pp, th);

  std::cerr << scan.candidates.size() << " candidates: "
            << scan.unbounded.size() << " unbounded, "
            << scan.inconclusive.size() << " inconclusive\n";

  if (c.format == "csv") {
    std::string out = "x0,classification,tv_last,ratio_last\n";
    for (const auto& rep : scan.reports) {
      out += format_real(rep.center) + "," +
             fracbv::to_string(rep.classification) + "," +
             format_real(rep.levels.back().tv) + "," +
             format_real(rep.growth_ratios.back()) + "\n";
    }
    return write_text(c.output, out);
  }
  ordered_json config = base_config_json("detect-uvp", c, f);
  config["stride"] = stride;
  config["profile"] = pp;
  config["thresholds"] = th;
  ordered_json results = scan;
  return write_text(c.output,
                    fracbv::json_envelope(std::move(config), std::move(results))
                            .dump(2) +
                        "\n");
}

int cmd_boxdim(const CommonOpts& c, int j_min, int j_max, int drop,
               const std::vector<double>& alpha_opt) {
  const FnSpec spec = parse_function_spec(c.function);
  const fracbv::FunctionHandle f =
      fracbv::catalog_lookup(spec.name, spec.params, c.a, c.b);
  const fracbv::Grid grid = fracbv::make_grid(c.a, c.b, c.n);
  fracbv::SampledFunction target = fracbv::sample(f, grid);
  if (alpha_opt.size() > 1)
    throw std::invalid_argument("boxdim: give at most one --alpha");
  if (!alpha_opt.empty())
    target = fracbv::rl_integral(target, fracbv::FracOrder{alpha_opt[0]});
  const fracbv::BoxDimEstimate est =
      fracbv::box_dimension(target, j_min, j_max, drop);

  {
    char line[160];
    std::snprintf(line, sizeof line,
                  "slope %.6f  intercept %.6f  r^2 %.6f  (%zu levels, %d "
                  "coarsest dropped)\n",
                  est.slope, est.intercept, est.r_squared, est.levels.size(),
                  est.dropped);
    std::cerr << line;
  }

  if (c.format == "csv") {
    std::string out = "j,delta,count\n";
    for (const auto& lev : est.levels)
      out += std::to_string(lev.j) + "," + format_real(lev.delta) + "," +
             std::to_string(lev.count) + "\n";
    return write_text(c.output, out);
  }
  ordered_json config = base_config_json("boxdim", c, f);
  config["j_min"] = j_min;
  config["j_max"] = j_max;
  config["drop_coarsest"] = drop;
  config["alpha"] =
      alpha_opt.empty() ? ordered_json(nullptr) : ordered_json(alpha_opt[0]);
  ordered_json results = est;
  return write_text(c.output,
                    fracbv::json_envelope(std::move(config), std::move(results))
                            .dump(2) +
                        "\n");
}

int cmd_verify(const fracbv::SuiteConfig& cfg, const std::string& output,
               const std::string& format) {
  if (format != "json")
    throw std::invalid_argument("verify: only --format json is supported");
  const fracbv::VerificationReport rep = fracbv::run_suite(cfg);

  for (const auto& run : rep.runs) {
    char line[256];
    std::snprintf(line, sizeof line, "%-22s %s", run.theorem_id.c_str(),
                  fracbv::to_string(run.verdict));
    std::cerr << line;
    for (const auto& note : run.notes) std::cerr << "  [" << note << "]";
    std::cerr << "\n";
  }
  std::cerr << (rep.all_pass ? "all rows pass\n" : "SOME ROWS DID NOT PASS\n");

  ordered_json config = rep.config;
  config["command"] = "verify";
  const int rc = write_text(
      output,
      fracbv::json_envelope(std::move(config), ordered_json(rep)).dump(2) +
          "\n");
  if (rc != kExitOk) return rc;
  return rep.all_pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riemann-Liouville fractional integration and bounded-"
               "variation analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", fracbv::kVersion);
  // CLI11 only applies config files held by the app that parses them, so the
  // flag lives at the top level; keys go in [subcommand] sections.
  app.set_config("--config", "",
                 "key=value file with [subcommand] sections");
  app.allow_config_extras(CLI::config_extras_mode::error);

  CommonOpts ci, cv, cu, cb;
  double alpha = 0.5;
  CLI::App* integrate =
      app.add_subcommand("integrate", "fractional integral of a catalog function");
  add_common(integrate, ci);
  integrate->add_option("--alpha", alpha, "integration order")->required();

  CLI::App* variation =
      app.add_subcommand("variation", "monotone decomposition and running TV");
  add_common(variation, cv);

  fracbv::ProfileParams pp;
  fracbv::ProfileThresholds th;
  long stride = 1;
  CLI::App* detect = app.add_subcommand(
      "detect-uvp", "scan for points of unbounded variation");
  add_common(detect, cu);
  detect->add_option("--stride", stride, "candidate grid stride")
      ->capture_default_str();
  add_profile_opts(detect, pp, th);

  int j_min = 4, j_max = 11, drop = 2;
  std::vector<double> alpha_opt;
  CLI::App* boxdim =
      app.add_subcommand("boxdim", "box-counting dimension of the graph");
  add_common(boxdim, cb);
  boxdim->add_option("--j-min", j_min, "coarsest dyadic level")
      ->capture_default_str();
  boxdim->add_option("--j-max", j_max, "finest dyadic level")
      ->capture_default_str();
  boxdim->add_option("--drop-coarsest", drop,
                     "levels excluded from the fit")->capture_default_str();
  boxdim->add_option("--alpha", alpha_opt,
                     "measure the integral image at this order instead");

  fracbv::SuiteConfig sc;
  std::string verify_output, verify_format = "json";
  CLI::App* verify =
      app.add_subcommand("verify", "run the full property-check suite");
  verify->add_option("--seed", sc.seed, "suite seed")->capture_default_str();
  verify->add_option("--alpha", sc.alphas,
                     "orders exercised by the suite (repeatable)");
  verify->add_option("--n-small", sc.n_small, "")->capture_default_str();
  verify->add_option("--n-mid", sc.n_mid, "")->capture_default_str();
  verify->add_option("--n-big", sc.n_big, "")->capture_default_str();
  verify->add_option("--n-dim", sc.n_dim, "")->capture_default_str();
  verify->add_option("--n-cal", sc.n_cal, "")->capture_default_str();
  verify->add_option("--bound-trials", sc.bound_trials, "")
      ->capture_default_str();
  verify->add_option("--monotone-trials", sc.monotone_trials, "")
      ->capture_default_str();
  verify->add_flag("--dim-calibration,!--no-dim-calibration",
                   sc.run_dim_calibration,
                   "run the known-dimension calibration fixture");
  verify->add_option("--uvp-candidates", sc.uvp_candidates, "")
      ->capture_default_str();
  verify->add_option("--output", verify_output, "report file (default: stdout)");
  verify->add_option("--format", verify_format, "report format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  add_profile_opts(verify, sc.profile, sc.thresholds);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (integrate->parsed()) return cmd_integrate(ci, alpha);
    if (variation->parsed()) return cmd_variation(cv);
    if (detect->parsed()) return cmd_detect_uvp(cu, stride, pp, th);
    if (boxdim->parsed()) return cmd_boxdim(cb, j_min, j_max, drop, alpha_opt);
    if (verify->parsed()) return cmd_verify(sc, verify_output, verify_format);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}
