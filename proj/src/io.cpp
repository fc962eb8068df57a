#include "asymm/io.hpp"

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>

namespace asymm {

namespace {

nlohmann::json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("invalid JSON in " + path.string() + ": " + e.what());
  }
}

double number_field(const nlohmann::json& j, const std::string& context) {
  if (!j.is_number()) throw ParseError(context + ": expected a number");
  return j.get<double>();
}

std::string format_sig(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.11e", v);
  return buffer;
}

}  // namespace

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty())
    throw ParseError("matrix: expected a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array() || j[0].empty())
    throw ParseError("matrix: rows must be nonempty arrays");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j[i];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw ParseError("matrix: row " + std::to_string(i) +
                       " has inconsistent length");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& entry = row[c];
      if (!entry.is_array() || entry.size() != 2)
        throw ParseError("matrix: entries must be [re, im] pairs");
      m(i, c) = Complex(number_field(entry[0], "matrix entry"),
                        number_field(entry[1], "matrix entry"));
    }
  }
  return m;
}

nlohmann::json state_to_json(const DensityOperator& rho,
                             const std::string& label) {
  nlohmann::json j{{"dim", rho.dim()}, {"matrix", matrix_to_json(rho.matrix())}};
  if (!label.empty()) j["label"] = label;
  return j;
}

DensityOperator state_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("matrix"))
    throw ParseError("state: expected an object with a \"matrix\" field");
  Matrix m = matrix_from_json(j["matrix"]);
  if (j.contains("dim") &&
      j["dim"].get<Eigen::Index>() != m.rows())
    throw ParseError("state: declared dim " + j["dim"].dump() +
                     " does not match the matrix");
  return validate_state(m);
}

DensityOperator load_state_file(const std::filesystem::path& path) {
  return state_from_json(load_json_file(path));
}

nlohmann::json channel_to_json(const KrausChannel& e) {
  nlohmann::json kraus = nlohmann::json::array();
  for (const Matrix& k : e.kraus_ops()) kraus.push_back(matrix_to_json(k));
  return {{"input_dim", e.input_dim()},
          {"output_dim", e.output_dim()},
          {"kraus", std::move(kraus)}};
}

KrausChannel channel_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kraus") || !j["kraus"].is_array() ||
      j["kraus"].empty())
    throw ParseError("channel: expected an object with a nonempty \"kraus\" array");
  std::vector<Matrix> kraus;
  for (const auto& k : j["kraus"]) kraus.push_back(matrix_from_json(k));
  if (j.contains("input_dim") &&
      j["input_dim"].get<Eigen::Index>() != kraus[0].cols())
    throw ParseError("channel: declared input_dim does not match the Kraus shape");
  if (j.contains("output_dim") &&
      j["output_dim"].get<Eigen::Index>() != kraus[0].rows())
    throw ParseError("channel: declared output_dim does not match the Kraus shape");
  return KrausChannel(std::move(kraus));
}

KrausChannel load_channel_file(const std::filesystem::path& path) {
  return channel_from_json(load_json_file(path));
}

nlohmann::json group_to_json(const FiniteGroup& g) {
  return {{"order", g.order()},
          {"labels", g.labels()},
          {"table", g.table()},
          {"identity", g.identity()}};
}

FiniteGroup group_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("table") || !j.contains("identity"))
    throw ParseError("group: expected an object with \"table\" and \"identity\"");
  std::vector<std::vector<int>> table;
  try {
    table = j["table"].get<std::vector<std::vector<int>>>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError("group: \"table\" must be a nested integer array");
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    try {
      labels = j["labels"].get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception&) {
      throw ParseError("group: \"labels\" must be an array of strings");
    }
  } else {
    for (size_t k = 0; k < table.size(); ++k) labels.push_back(std::to_string(k));
  }
  if (!j["identity"].is_number_integer())
    throw ParseError("group: \"identity\" must be an integer index");
  return FiniteGroup(std::move(labels), std::move(table), j["identity"].get<int>());
}

FiniteGroup load_group_file(const std::filesystem::path& path) {
  return group_from_json(load_json_file(path));
}

double round_sig(double v) {
  if (v == 0.0 || !std::isfinite(v)) return v;
  return std::strtod(format_sig(v).c_str(), nullptr);
}

nlohmann::json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round_sig(v);
}

std::string digest_matrix(const Matrix& m) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  auto mix = [&hash](const std::string& text) {
    for (unsigned char c : text) {
      hash ^= c;
      hash *= 0x100000001b3ull;
    }
  };
  mix(std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ":");
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      mix(format_sig(m(i, j).real()) + "," + format_sig(m(i, j).imag()) + ";");
  char buffer[20];
  std::snprintf(buffer, sizeof(buffer), "%016" PRIx64, hash);
  return buffer;
}

nlohmann::json measure_result_to_json(const MeasureResult& r) {
  nlohmann::json parameters = nlohmann::json::object();
  for (const auto& [key, value] : r.parameters) parameters[key] = value;
  return {{"name", r.name},
          {"value", r.infinite ? nlohmann::json(nullptr) : json_number(r.value)},
          {"infinite", r.infinite},
          {"inputs_digest", r.inputs_digest},
          {"parameters", std::move(parameters)},
          {"negativity_guard", json_number(r.negativity_guard)}};
}

nlohmann::json experiment_report_to_json(const ExperimentReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckRecord& c : r.checks)
    checks.push_back({{"description", c.description},
                      {"expected", json_number(c.expected)},
                      {"actual", json_number(c.actual)},
                      {"tolerance", json_number(c.tolerance)},
                      {"relation", c.relation},
                      {"pass", c.pass}});
  return {{"name", r.name},
          {"seed", r.seed},
          {"overall_pass", r.overall_pass},
          {"checks", std::move(checks)}};
}

nlohmann::json report_envelope(const std::string& command, std::uint64_t seed,
                               nlohmann::json payload) {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char stamp[32];
  std::tm utc{};
  gmtime_r(&t, &utc);
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return {{"tool", "asymm"},
          {"version", "0.1.0"},
          {"command", command},
          {"seed", seed},
          {"timestamp", stamp},
          {"payload", std::move(payload)}};
}

void write_report_atomic(const std::filesystem::path& path,
                         const nlohmann::json& report) {
  std::filesystem::path temp = path;
  temp += ".tmp";
  {
    std::ofstream out(temp);
    if (!out) throw ParseError("cannot write report file: " + temp.string());
    out << report.dump(2) << "\n";
    if (!out) throw ParseError("failed while writing report file: " + temp.string());
  }
  std::filesystem::rename(temp, path);
}

}  // namespace asymm
