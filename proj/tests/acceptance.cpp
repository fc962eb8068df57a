// Acceptance suite for the asymmetry toolkit. Each numbered criterion prints
// one PASS/FAIL line with its key figures and timing; the process exits
// nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "asymm/cli.hpp"
#include "asymm/experiments.hpp"
#include "asymm/groups.hpp"
#include "asymm/io.hpp"
#include "asymm/measures.hpp"
#include "asymm/quantum.hpp"
#include "asymm/sampling.hpp"

using namespace asymm;
namespace fs = std::filesystem;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

int failures = 0;

void report(int number, bool pass, const std::string& what, double elapsed) {
  std::printf("%s: (%d) %s [%.2f s]\n", pass ? "PASS" : "FAIL", number,
              what.c_str(), elapsed);
  if (!pass) ++failures;
}

double variance_of(const DensityOperator& rho, const Matrix& l) {
  double first = (rho.matrix() * l).trace().real();
  double second = (rho.matrix() * l * l).trace().real();
  return second - first * first;
}

Matrix support_power(const Matrix& h, double p) {
  HermitianEig eig = hermitian_eig(h);
  RealVector powered(eig.eigenvalues.size());
  for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k)
    powered(k) =
        eig.eigenvalues(k) > 1e-12 ? std::pow(eig.eigenvalues(k), p) : 0.0;
  return eig.eigenvectors * powered.asDiagonal().toDenseMatrix().cast<Complex>() *
         eig.eigenvectors.adjoint();
}

// Central second difference of tr(rho^s exp(i t L) rho^(1-s) exp(-i t L));
// minus half the curvature recovers the skew information.
double skew_probe(const DensityOperator& rho, const Matrix& l, double s,
                  double theta) {
  Matrix a = support_power(rho.matrix(), s);
  Matrix b = support_power(rho.matrix(), 1.0 - s);
  auto g = [&](double t) {
    Matrix u = unitary_from_generator(l, -t);
    return (a * u * b * u.adjoint()).trace().real();
  };
  double curvature = (g(theta) - 2.0 * g(0.0) + g(-theta)) / (theta * theta);
  return -curvature / 2.0;
}

void criterion_spin_example() {
  auto start = std::chrono::steady_clock::now();
  ExperimentReport r = spin_example_report();
  double elapsed = seconds_since(start);
  std::ostringstream what;
  what << "spin pair demonstration: " << r.checks.size()
       << " checks, moments matched, entropy and commutator gaps of one bit";
  report(1, r.overall_pass && elapsed < 1.0, what.str(), elapsed);
}

void criterion_triviality() {
  auto start = std::chrono::steady_clock::now();
  bool pass = true;
  for (int n = 2; n <= 12; ++n) {
    ExperimentReport r = triviality_demo(n, 42);
    pass = pass && r.overall_pass;
  }
  double elapsed = seconds_since(start);
  report(2, pass && elapsed < 5.0,
         "characteristic function unchanged by twirling while the entropy gap "
         "is log2(n), encoder covariant, cyclic orders 2..12",
         elapsed);
}

void criterion_monotonicity() {
  auto start = std::chrono::steady_clock::now();
  bool pass = true;
  int suites = 0;
  for (const auto& [instance, measure] : monotonicity_registry()) {
    ExperimentReport r = monotonicity_suite(instance, measure, 100, 42);
    pass = pass && r.overall_pass;
    ++suites;
  }
  double elapsed = seconds_since(start);
  std::ostringstream what;
  what << "monotonicity under random covariant channels: " << suites
       << " suites x 100 trials, violations bounded by 1e-8";
  report(3, pass && suites == 14 && elapsed < 60.0, what.str(), elapsed);
}

void criterion_pure_reductions() {
  auto start = std::chrono::steady_clock::now();
  struct Instance {
    const char* name;
    Representation rep;
  };
  std::vector<Instance> instances;
  instances.push_back({"u1", u1_number_representation({0, 1, 2, 3})});
  Representation half = spin_j_representation(0.5);
  instances.push_back({"su2", tensor_representation(half, half)});

  const std::vector<double> orders = {0.25, 0.5, 0.75};
  double worst_reduction = 0.0;
  double worst_probe = 0.0;
  bool pass = true;

  for (const Instance& inst : instances) {
    Matrix l = inst.rep.kind() == GroupKind::U1
                   ? inst.rep.generators()[0]
                   : inst.rep.generators()[2];
    Eigen::Index dim = inst.rep.dim();

    for (int t = 0; t < 100; ++t) {
      std::mt19937_64 rng(trial_seed(42, static_cast<std::uint64_t>(t)));
      DensityOperator psi = random_pure_state(dim, rng);
      double var = variance_of(psi, l);

      double commutator = commutator_asymmetry(psi, l);
      double expected = 2.0 * std::sqrt(std::max(0.0, var));
      double rel = std::abs(commutator - expected) / std::max(expected, 1e-12);
      worst_reduction = std::max(worst_reduction, rel);
      pass = pass && rel <= 1e-8;

      for (double s : orders) {
        double skew = skew_information(psi, l, s);
        double srel = std::abs(skew - var) / std::max(var, 1e-12);
        worst_reduction = std::max(worst_reduction, srel);
        pass = pass && srel <= 1e-8;
      }
    }

    // Curvature probe on pure and full-support mixed states.
    for (int t = 0; t < 10; ++t) {
      std::mt19937_64 rng(trial_seed(77, static_cast<std::uint64_t>(t)));
      DensityOperator psi = random_pure_state(dim, rng);
      DensityOperator raw = random_density_operator(dim, rng);
      Matrix mixed = 0.9 * raw.matrix() +
                     0.1 * Matrix::Identity(dim, dim) / static_cast<double>(dim);
      for (const DensityOperator& rho : {psi, DensityOperator(mixed)}) {
        for (double s : orders) {
          double direct = skew_information(rho, l, s);
          double probe = skew_probe(rho, l, s, 1e-3);
          double rel = std::abs(direct - probe) / std::max(direct, 1e-12);
          worst_probe = std::max(worst_probe, rel);
          pass = pass && rel <= 1e-4;
        }
      }
    }
  }

  double elapsed = seconds_since(start);
  std::ostringstream what;
  what << "pure-state reductions (commutator = 2 sqrt(var), skew = var, worst "
       << "rel " << worst_reduction << ") and curvature probe (worst rel "
       << worst_probe << ")";
  report(4, pass, what.str(), elapsed);
}

void criterion_amplifier() {
  auto start = std::chrono::steady_clock::now();
  ExperimentReport r = amplifier_bound_check(100, 42);
  double elapsed = seconds_since(start);
  report(5, r.overall_pass,
         "entropy difference bound over 100 random covariant channels and the "
         "one-bit twirl entropy of 20 random spin-1/2 states",
         elapsed);
}

void criterion_small_angle() {
  auto start = std::chrono::steady_clock::now();
  Representation rep = u1_number_representation({0, 1, 2, 3});
  const Matrix& n = rep.generators()[0];

  bool pass = true;
  double measured_c = 0.0;
  double worst_fraction = 0.0;
  for (int t = 0; t < 50; ++t) {
    std::mt19937_64 rng(trial_seed(42, static_cast<std::uint64_t>(t)));
    DensityOperator rho = random_density_operator(4, rng);
    double f_l = commutator_asymmetry(rho, n);
    for (double theta : {1e-2, 1e-3}) {
      double ratio =
          trace_distance_asymmetry(rho, rep, GroupElement::phase(theta)) /
          theta;
      double gap = std::abs(ratio - f_l);
      measured_c = std::max(measured_c, gap / theta);
      if (theta == 1e-3) {
        double fraction = gap / std::max(f_l, 1e-12);
        worst_fraction = std::max(worst_fraction, fraction);
        pass = pass && fraction <= 0.05;
      }
    }
  }
  pass = pass && std::isfinite(measured_c);

  double elapsed = seconds_since(start);
  std::ostringstream what;
  what << "small-angle law |F(theta)/theta - F_L| <= C theta, measured C = "
       << measured_c << ", worst first-order fraction "
       << worst_fraction << " at theta = 1e-3";
  report(6, pass, what.str(), elapsed);
}

void criterion_determinism() {
  auto start = std::chrono::steady_clock::now();
  fs::path dir = fs::temp_directory_path() / "asymm_acceptance";
  fs::create_directories(dir);

  std::vector<std::string> ids = {"spin-example", "triviality:8",
                                  "amplifier:25", "interconversion"};
  for (const auto& [instance, measure] : monotonicity_registry())
    ids.push_back("monotonicity:" + instance + ":" + measure + ":10");

  bool pass = true;
  for (const std::string& id : ids) {
    std::vector<std::string> payloads;
    for (int run = 0; run < 2; ++run) {
      fs::path out_path =
          dir / ("det_" + std::to_string(payloads.size()) + ".json");
      std::ostringstream out, err;
      int code = cli::run({"reproduce", id, "--seed", "42", "--out",
                           out_path.string()},
                          out, err);
      if (code != cli::kExitOk) {
        std::printf("  determinism run failed for %s (exit %d)\n", id.c_str(),
                    code);
        pass = false;
        break;
      }
      std::ifstream f(out_path);
      nlohmann::json report_json = nlohmann::json::parse(f);
      payloads.push_back(report_json["payload"].dump());
    }
    if (payloads.size() == 2 && payloads[0] != payloads[1]) {
      std::printf("  payload mismatch for %s\n", id.c_str());
      pass = false;
    }
  }

  double elapsed = seconds_since(start);
  std::ostringstream what;
  what << "byte-identical report payloads across repeated runs of "
       << ids.size() << " reproduce commands at seed 42";
  report(7, pass, what.str(), elapsed);
}

}  // namespace

int main() {
  auto start = std::chrono::steady_clock::now();
  try {
    criterion_spin_example();
    criterion_triviality();
    criterion_monotonicity();
    criterion_pure_reductions();
    criterion_amplifier();
    criterion_small_angle();
    criterion_determinism();
  } catch (const std::exception& e) {
    std::printf("FAIL: unexpected exception: %s\n", e.what());
    return 1;
  }
  std::printf("acceptance: %d/7 criteria passed [%.2f s total]\n",
              7 - failures, seconds_since(start));
  return failures == 0 ? 0 : 1;
}
