#include "asymm/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <limits>
#include <sstream>
#include <utility>

#include "CLI11.hpp"

#include "asymm/experiments.hpp"
#include "asymm/io.hpp"
#include "asymm/measures.hpp"

namespace asymm::cli {

namespace {

std::string format_value(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", v);
  return buffer;
}

int parse_int(const std::string& text, const std::string& context) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ParseError(context + ": expected an integer, got '" + text + "'");
  return value;
}

double parse_double(const std::string& text, const std::string& context) {
  char* end = nullptr;
  double value = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || text.empty())
    throw ParseError(context + ": expected a number, got '" + text + "'");
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  parts.push_back(current);
  return parts;
}

Matrix pick_generator(const Representation& r, std::string name,
                      const std::string& measure) {
  if (r.kind() == GroupKind::Finite)
    throw ParseError("measure '" + measure +
                     "' needs a Lie-group representation (u1:... or su2:...)");
  if (name.empty()) name = (r.kind() == GroupKind::U1) ? "n" : "z";
  if (r.kind() == GroupKind::U1) {
    if (name == "n") return r.generators()[0];
    throw ParseError("--generator for u1 groups must be 'n', got '" + name + "'");
  }
  if (name == "x") return r.axis_generator(Eigen::Vector3d::UnitX());
  if (name == "y") return r.axis_generator(Eigen::Vector3d::UnitY());
  if (name == "z") return r.axis_generator(Eigen::Vector3d::UnitZ());
  throw ParseError("--generator for su2 groups must be x, y, or z, got '" +
                   name + "'");
}

GroupDensity parse_density(const Representation& r, const std::string& spec) {
  auto colon = spec.find(':');
  std::string head = spec.substr(0, colon);
  int resolution = 8;
  if (colon != std::string::npos)
    resolution = parse_int(spec.substr(colon + 1), "--density resolution");
  if (head == "uniform") return uniform_density(r, resolution);
  if (head == "z-axis") return subgroup_density_z_axis(r, resolution);
  throw ParseError("--density must be uniform[:res] or z-axis[:res], got '" +
                   spec + "'");
}

struct MeasureOptions {
  std::string state_path;
  std::string state2_path;
  std::string group_spec;
  std::string measure;
  std::string generator;
  std::string density = "uniform";
  std::string element;
  std::string out_path;
  double s = 0.5;
  bool s_given = false;
  int k_max = 4;
  std::uint64_t seed = 0;
};

struct ReproduceOptions {
  std::string id;
  std::string out_path;
  std::uint64_t seed = 0;
};

struct CheckOptions {
  std::string channel_path;
  std::string group_spec;
  std::string group_out_spec;
  std::string out_path;
  double tol = 1e-8;
  std::uint64_t seed = 0;
};

Representation require_group(const MeasureOptions& opt) {
  if (opt.group_spec.empty())
    throw ParseError("measure '" + opt.measure + "' requires --group");
  return parse_group_spec(opt.group_spec);
}

GroupElement require_element(const Representation& r, const MeasureOptions& opt) {
  if (opt.element.empty())
    throw ParseError("measure '" + opt.measure + "' requires --element");
  return parse_element_spec(r, opt.element);
}

double require_order(const MeasureOptions& opt) {
  if (!opt.s_given)
    throw ParseError("measure '" + opt.measure + "' requires --s");
  return opt.s;
}

int run_measure(const MeasureOptions& opt, const std::string& command,
                std::ostream& out, std::ostream& err) {
  DensityOperator rho = load_state_file(opt.state_path);

  MeasureResult result;
  result.name = opt.measure;
  result.inputs_digest = digest_matrix(rho.matrix());
  if (!opt.group_spec.empty()) result.parameters["group"] = opt.group_spec;
  std::string stdout_line;
  nlohmann::json extra_values;

  if (opt.measure == "holevo") {
    Representation r = require_group(opt);
    GroupDensity p = parse_density(r, opt.density);
    result.parameters["density"] = opt.density;
    result.value = holevo_asymmetry(rho, r, p);
  } else if (opt.measure == "commutator") {
    Representation r = require_group(opt);
    Matrix l = pick_generator(r, opt.generator, opt.measure);
    result.parameters["generator"] =
        opt.generator.empty() ? (r.kind() == GroupKind::U1 ? "n" : "z")
                              : opt.generator;
    result.value = commutator_asymmetry(rho, l);
  } else if (opt.measure == "trace-distance") {
    Representation r = require_group(opt);
    GroupElement g = require_element(r, opt);
    result.parameters["element"] = element_label(r, g);
    result.value = trace_distance_asymmetry(rho, r, g);
  } else if (opt.measure == "renyi") {
    double s = require_order(opt);
    result.parameters["s"] = format_value(s);
    DensityOperator other = [&] {
      if (!opt.state2_path.empty()) return load_state_file(opt.state2_path);
      Representation r = require_group(opt);
      GroupElement g = require_element(r, opt);
      result.parameters["element"] = element_label(r, g);
      Matrix u = r.unitary(g);
      return DensityOperator(u * rho.matrix() * u.adjoint());
    }();
    result.inputs_digest += "+" + digest_matrix(other.matrix());
    double value = renyi_divergence(rho, other, s);
    if (std::isinf(value)) {
      result.infinite = true;
    } else {
      result.value = value;
    }
  } else if (opt.measure == "skew") {
    double s = require_order(opt);
    if (s > 1.0)
      err << "warning: skew order s > 1: nonnegativity is only guaranteed on "
             "full-support states\n";
    Representation r = require_group(opt);
    Matrix l = pick_generator(r, opt.generator, opt.measure);
    result.parameters["s"] = format_value(s);
    result.parameters["generator"] =
        opt.generator.empty() ? (r.kind() == GroupKind::U1 ? "n" : "z")
                              : opt.generator;
    result.value = skew_information(rho, l, s);
  } else if (opt.measure == "cramer-rao") {
    Representation r = require_group(opt);
    Matrix l = pick_generator(r, opt.generator, opt.measure);
    result.parameters["generator"] =
        opt.generator.empty() ? (r.kind() == GroupKind::U1 ? "n" : "z")
                              : opt.generator;
    try {
      result.value = cramer_rao_bound_value(rho, l);
    } catch (const ZeroAsymmetry&) {
      result.infinite = true;
    }
  } else if (opt.measure == "char") {
    Representation r = require_group(opt);
    GroupElement g = require_element(r, opt);
    result.parameters["element"] = element_label(r, g);
    Complex chi = characteristic_function(rho, r, {g})[0];
    result.value = std::abs(chi);
    result.parameters["re"] = format_value(chi.real());
    result.parameters["im"] = format_value(chi.imag());
    stdout_line = format_value(chi.real()) + " " + format_value(chi.imag());
  } else if (opt.measure == "moments") {
    Representation r = require_group(opt);
    Matrix l = pick_generator(r, opt.generator, opt.measure);
    result.parameters["generator"] =
        opt.generator.empty() ? (r.kind() == GroupKind::U1 ? "n" : "z")
                              : opt.generator;
    result.parameters["k_max"] = std::to_string(opt.k_max);
    RealVector moments = noether_moments(rho, l, opt.k_max);
    extra_values = nlohmann::json::array();
    std::string line;
    for (Eigen::Index k = 0; k < moments.size(); ++k) {
      extra_values.push_back(json_number(moments[k]));
      if (k > 0) line += " ";
      line += format_value(moments[k]);
    }
    result.value = moments[0];
    stdout_line = line;
  } else {
    throw ParseError("unknown measure '" + opt.measure +
                     "' (expected holevo, commutator, trace-distance, renyi, "
                     "skew, cramer-rao, char, or moments)");
  }

  if (stdout_line.empty())
    stdout_line = result.infinite ? "inf" : format_value(result.value);
  out << stdout_line << "\n";

  if (!opt.out_path.empty()) {
    nlohmann::json payload = measure_result_to_json(result);
    if (!extra_values.is_null()) payload["values"] = extra_values;
    write_report_atomic(opt.out_path,
                        report_envelope(command, opt.seed, std::move(payload)));
  }
  return kExitOk;
}

ExperimentReport dispatch_experiment(const std::string& id, std::uint64_t seed) {
  std::vector<std::string> parts = split(id, ':');
  if (parts[0] == "spin-example" && parts.size() == 1) {
    ExperimentReport report = spin_example_report();
    report.seed = seed;
    return report;
  }
  if (parts[0] == "interconversion" && parts.size() == 1) {
    ExperimentReport report = interconversion_demo();
    report.seed = seed;
    return report;
  }
  if (parts[0] == "triviality" && parts.size() == 2)
    return triviality_demo(parse_int(parts[1], "triviality order"), seed);
  if (parts[0] == "amplifier" && parts.size() == 2)
    return amplifier_bound_check(parse_int(parts[1], "amplifier trials"), seed);
  if (parts[0] == "monotonicity" && parts.size() == 4)
    return monotonicity_suite(parts[1], parts[2],
                              parse_int(parts[3], "monotonicity trials"), seed);
  throw ParseError(
      "unknown experiment id '" + id +
      "' (expected spin-example, triviality:N, amplifier:T, "
      "monotonicity:<instance>:<measure>:<T>, or interconversion)");
}

int run_reproduce(const ReproduceOptions& opt, const std::string& command,
                  std::ostream& out, std::ostream& err) {
  ExperimentReport report = dispatch_experiment(opt.id, opt.seed);
  for (const CheckRecord& check : report.checks) {
    out << (check.pass ? "ok   " : "FAIL ") << check.description << ": actual="
        << format_value(check.actual);
    if (check.relation != "info")
      out << " expected(" << check.relation << ")=" << format_value(check.expected)
          << " tol=" << format_value(check.tolerance);
    out << "\n";
  }
  out << "overall: " << (report.overall_pass ? "pass" : "fail") << "\n";
  if (!opt.out_path.empty())
    write_report_atomic(opt.out_path,
                        report_envelope(command, opt.seed,
                                        experiment_report_to_json(report)));
  if (!report.overall_pass) {
    err << "experiment '" << opt.id << "' failed\n";
    return kExitNumerical;
  }
  return kExitOk;
}

int run_check_channel(const CheckOptions& opt, const std::string& command,
                      std::ostream& out, std::ostream& err) {
  KrausChannel channel = load_channel_file(opt.channel_path);
  Representation r_in = parse_group_spec(opt.group_spec);
  Representation r_out = opt.group_out_spec.empty()
                             ? parse_group_spec(opt.group_spec)
                             : parse_group_spec(opt.group_out_spec);
  CovarianceReport report = is_symmetric_channel(channel, r_in, r_out, opt.tol);
  out << "deviation=" << format_value(report.max_deviation)
      << " tol=" << format_value(opt.tol)
      << " verdict=" << (report.symmetric ? "symmetric" : "not-symmetric")
      << "\n";
  if (!opt.out_path.empty()) {
    nlohmann::json payload{{"name", "check-channel"},
                           {"symmetric", report.symmetric},
                           {"max_deviation", json_number(report.max_deviation)},
                           {"tol", json_number(opt.tol)},
                           {"group", opt.group_spec}};
    if (!opt.group_out_spec.empty()) payload["group_out"] = opt.group_out_spec;
    write_report_atomic(opt.out_path,
                        report_envelope(command, opt.seed, std::move(payload)));
  }
  if (!report.symmetric) {
    err << "channel is not symmetric within tolerance\n";
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace

Representation parse_group_spec(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos || colon + 1 == spec.size())
    throw ParseError("group spec '" + spec +
                     "' must look like kind:params (z_n:8, regular:8, "
                     "u1:0,1,2, su2:0.5, su2_trivial:2, file:path, "
                     "tensor:a*b)");
  std::string head = spec.substr(0, colon);
  std::string rest = spec.substr(colon + 1);

  if (head == "tensor") {
    std::vector<std::string> parts = split(rest, '*');
    if (parts.size() < 2)
      throw ParseError("tensor spec needs at least two factors: '" + spec + "'");
    Representation rep = parse_group_spec(parts[0]);
    for (size_t k = 1; k < parts.size(); ++k)
      rep = tensor_representation(rep, parse_group_spec(parts[k]));
    return rep;
  }
  if (head == "z_n") {
    int n = parse_int(rest, "z_n order");
    if (n < 1) throw ParseError("z_n order must be positive");
    std::vector<int> spectrum(n);
    for (int k = 0; k < n; ++k) spectrum[k] = k;
    return cyclic_phase_representation(cyclic_group(n), spectrum);
  }
  if (head == "regular") {
    int n = parse_int(rest, "regular order");
    if (n < 1) throw ParseError("regular order must be positive");
    return left_regular_representation(cyclic_group(n));
  }
  if (head == "u1") {
    std::vector<int> spectrum;
    for (const std::string& part : split(rest, ','))
      spectrum.push_back(parse_int(part, "u1 spectrum entry"));
    return u1_number_representation(spectrum);
  }
  if (head == "su2") return spin_j_representation(parse_double(rest, "su2 spin"));
  if (head == "su2_trivial") {
    int d = parse_int(rest, "su2_trivial dimension");
    if (d < 1) throw ParseError("su2_trivial dimension must be positive");
    return trivial_representation(GroupKind::SU2, d);
  }
  if (head == "file")
    return left_regular_representation(load_group_file(rest));
  throw ParseError("unknown group spec kind '" + head + "'");
}

GroupElement parse_element_spec(const Representation& r, const std::string& spec) {
  switch (r.kind()) {
    case GroupKind::Finite: {
      int index = parse_int(spec, "--element");
      if (index < 0 || index >= r.group().order())
        throw ParseError("--element index " + spec + " outside group of order " +
                         std::to_string(r.group().order()));
      return GroupElement::finite(index);
    }
    case GroupKind::U1:
      return GroupElement::phase(parse_double(spec, "--element"));
    case GroupKind::SU2: {
      auto colon = spec.find(':');
      if (colon == std::string::npos)
        throw ParseError("--element for su2 must be axis:theta (z:0.7 or "
                         "0.6,0,0.8:1.2), got '" + spec + "'");
      std::string axis_part = spec.substr(0, colon);
      double theta = parse_double(spec.substr(colon + 1), "--element angle");
      Eigen::Vector3d axis;
      if (axis_part == "x") axis = Eigen::Vector3d::UnitX();
      else if (axis_part == "y") axis = Eigen::Vector3d::UnitY();
      else if (axis_part == "z") axis = Eigen::Vector3d::UnitZ();
      else {
        std::vector<std::string> comps = split(axis_part, ',');
        if (comps.size() != 3)
          throw ParseError("--element axis must be x, y, z, or nx,ny,nz");
        axis = Eigen::Vector3d(parse_double(comps[0], "--element axis"),
                               parse_double(comps[1], "--element axis"),
                               parse_double(comps[2], "--element axis"));
        if (axis.norm() < 1e-14)
          throw ParseError("--element axis must be nonzero");
      }
      return GroupElement::rotation(axis, theta);
    }
  }
  throw ParseError("unsupported representation kind");
}

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  std::string command = "asymm";
  for (const std::string& a : args) command += " " + a;

  CLI::App app{"asymmetry measures and covariant channels"};
  app.require_subcommand(1);

  MeasureOptions measure_opt;
  CLI::App* measure_cmd = app.add_subcommand(
      "measure", "evaluate an asymmetry measure on a state file");
  measure_cmd->add_option("--state", measure_opt.state_path, "state JSON file")
      ->required();
  measure_cmd->add_option("--state2", measure_opt.state2_path,
                          "second state file (renyi)");
  measure_cmd->add_option("--group", measure_opt.group_spec, "group spec");
  CLI::Option* measure_name =
      measure_cmd->add_option("--measure", measure_opt.measure,
                              "holevo | commutator | trace-distance | renyi | "
                              "skew | cramer-rao | char | moments");
  measure_name->required();
  CLI::Option* s_opt =
      measure_cmd->add_option("--s", measure_opt.s, "order for renyi/skew");
  measure_cmd->add_option("--generator", measure_opt.generator,
                          "generator name: x, y, z (su2) or n (u1)");
  measure_cmd->add_option("--density", measure_opt.density,
                          "uniform[:res] | z-axis[:res]");
  measure_cmd->add_option("--element", measure_opt.element, "group element spec");
  measure_cmd->add_option("--k-max", measure_opt.k_max, "highest moment order");
  measure_cmd->add_option("--out", measure_opt.out_path, "report file path");
  measure_cmd->add_option("--seed", measure_opt.seed, "seed echoed in reports");

  ReproduceOptions reproduce_opt;
  CLI::App* reproduce_cmd =
      app.add_subcommand("reproduce", "run a named demonstration");
  reproduce_cmd
      ->add_option("id", reproduce_opt.id,
                   "spin-example | triviality:N | amplifier:T | "
                   "monotonicity:<instance>:<measure>:<T> | interconversion")
      ->required();
  reproduce_cmd->add_option("--seed", reproduce_opt.seed, "base random seed");
  reproduce_cmd->add_option("--out", reproduce_opt.out_path, "report file path");

  CheckOptions check_opt;
  CLI::App* check_cmd = app.add_subcommand(
      "check-channel", "verify a channel file is covariant for a group");
  check_cmd->add_option("--channel", check_opt.channel_path, "channel JSON file")
      ->required();
  check_cmd->add_option("--group", check_opt.group_spec, "group spec")->required();
  check_cmd->add_option("--group-out", check_opt.group_out_spec,
                        "output-side group spec (defaults to --group)");
  check_cmd->add_option("--tol", check_opt.tol, "covariance tolerance");
  check_cmd->add_option("--out", check_opt.out_path, "report file path");
  check_cmd->add_option("--seed", check_opt.seed, "seed echoed in reports");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(measure_cmd)) {
      measure_opt.s_given = s_opt->count() > 0;
      return run_measure(measure_opt, command, out, err);
    }
    if (app.got_subcommand(reproduce_cmd))
      return run_reproduce(reproduce_opt, command, out, err);
    return run_check_channel(check_opt, command, out, err);
  } catch (const NumericalConsistency& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace asymm::cli
