#include "asymm/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <utility>

#include "asymm/sampling.hpp"

namespace asymm {

namespace {

constexpr double kPi = std::numbers::pi;

Matrix basis_projector(Eigen::Index dim, Eigen::Index k) {
  Matrix m = Matrix::Zero(dim, dim);
  m(k, k) = 1.0;
  return m;
}

DensityOperator pure_from_vector(const Vector& psi) {
  Vector normalized = psi / psi.norm();
  return DensityOperator(normalized * normalized.adjoint());
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// One registered instance of the monotonicity protocol: a system
// representation, a small symmetric ancilla to dilate with, and the fixed
// parameters each measure uses on this instance.
struct GroupInstance {
  Representation system;
  Representation ancilla;
  GroupDensity uniform;
  Matrix generator;          // z-axis (or number) generator of the system rep
  GroupElement fixed_element;  // element used by trace-distance
  bool has_generator;
};

GroupInstance make_instance(const std::string& id) {
  if (id == "z8") {
    FiniteGroup z8 = cyclic_group(8);
    Representation system = left_regular_representation(z8);
    Representation ancilla = cyclic_phase_representation(z8, {0, 1, 2, 3});
    GroupDensity uniform = uniform_density(system, 1);
    return GroupInstance{std::move(system), std::move(ancilla),
                         std::move(uniform), Matrix(),
                         GroupElement::finite(1), false};
  }
  if (id == "u1") {
    Representation system = u1_number_representation({0, 1, 2, 3});
    Representation ancilla = u1_number_representation({0, 1});
    GroupDensity uniform = uniform_density(system, 4);
    Matrix number = system.generators()[0];
    return GroupInstance{std::move(system), std::move(ancilla),
                         std::move(uniform), std::move(number),
                         GroupElement::phase(0.7), true};
  }
  if (id == "su2") {
    Representation half = spin_j_representation(0.5);
    Representation system = tensor_representation(half, half);
    Representation ancilla = tensor_representation(half, half);
    GroupDensity uniform = uniform_density(system, 4);
    Matrix jz = system.axis_generator(Eigen::Vector3d::UnitZ());
    return GroupInstance{
        std::move(system), std::move(ancilla), std::move(uniform),
        std::move(jz),
        GroupElement::rotation(Eigen::Vector3d::UnitZ(), 0.7), true};
  }
  throw UnknownInstance("monotonicity: unknown group instance '" + id + "'");
}

// Commutants of the joint (system (x) ancilla) and ancilla representations are
// seed-independent and expensive for the largest instance, so they are built
// once per process.
struct InstanceCommutants {
  std::shared_ptr<const Commutant> joint;
  std::shared_ptr<const Commutant> ancilla;
};

InstanceCommutants instance_commutants(const std::string& id,
                                       const GroupInstance& instance) {
  static std::map<std::string, InstanceCommutants> cache;
  auto found = cache.find(id);
  if (found != cache.end()) return found->second;
  InstanceCommutants built{
      std::make_shared<Commutant>(
          tensor_representation(instance.system, instance.ancilla)),
      std::make_shared<Commutant>(instance.ancilla)};
  cache.emplace(id, built);
  return built;
}

std::function<double(const DensityOperator&)> measure_evaluator(
    const std::string& measure, const GroupInstance& instance) {
  if (measure == "holevo")
    return [&](const DensityOperator& rho) {
      return holevo_asymmetry(rho, instance.system, instance.uniform);
    };
  if (measure == "trace-distance")
    return [&](const DensityOperator& rho) {
      return trace_distance_asymmetry(rho, instance.system,
                                      instance.fixed_element);
    };
  if (!instance.has_generator)
    throw UnknownInstance("monotonicity: measure '" + measure +
                          "' is not registered for this instance");
  if (measure == "commutator")
    return [&](const DensityOperator& rho) {
      return commutator_asymmetry(rho, instance.generator);
    };
  if (measure == "skew25")
    return [&](const DensityOperator& rho) {
      return skew_information(rho, instance.generator, 0.25);
    };
  if (measure == "skew50")
    return [&](const DensityOperator& rho) {
      return skew_information(rho, instance.generator, 0.5);
    };
  if (measure == "skew75")
    return [&](const DensityOperator& rho) {
      return skew_information(rho, instance.generator, 0.75);
    };
  throw UnknownInstance("monotonicity: unknown measure '" + measure + "'");
}

std::vector<GroupElement> interconversion_elements(const Representation& r) {
  std::vector<GroupElement> elements;
  switch (r.kind()) {
    case GroupKind::Finite:
      for (int g = 0; g < r.group().order(); ++g)
        elements.push_back(GroupElement::finite(g));
      break;
    case GroupKind::U1:
      for (int k = 0; k < 64; ++k)
        elements.push_back(GroupElement::phase(2.0 * kPi * k / 64.0));
      break;
    case GroupKind::SU2: {
      std::mt19937_64 rng(20240817u);
      std::uniform_real_distribution<double> unit(-1.0, 1.0);
      std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
      while (elements.size() < 64) {
        Eigen::Vector3d axis(unit(rng), unit(rng), unit(rng));
        if (axis.norm() < 1e-3) continue;
        elements.push_back(GroupElement::rotation(axis, angle(rng)));
      }
      break;
    }
  }
  return elements;
}

// Composable index triples (i, j, k) with element_k = element_i * element_j,
// used to test whether a ratio of characteristic functions is a character.
std::vector<std::array<int, 3>> composition_triples(const Representation& r,
                                                    int n_elements) {
  std::vector<std::array<int, 3>> triples;
  if (r.kind() == GroupKind::Finite) {
    for (int i = 0; i < n_elements; ++i)
      for (int j = 0; j < n_elements; ++j)
        triples.push_back({i, j, r.group().multiply(i, j)});
  } else if (r.kind() == GroupKind::U1) {
    for (int i = 0; i < n_elements; ++i)
      for (int j = 0; j < n_elements; ++j)
        triples.push_back({i, j, (i + j) % n_elements});
  }
  // SU(2) has no nontrivial one-dimensional character, so no triples: the
  // phase-relaxed verdict coincides with the strict one.
  return triples;
}

}  // namespace

CheckRecord& ExperimentReport::add(CheckRecord record) {
  if (record.relation == "abs")
    record.pass = std::abs(record.actual - record.expected) <= record.tolerance;
  else if (record.relation == "ge")
    record.pass = record.actual >= record.expected - record.tolerance;
  else if (record.relation == "le")
    record.pass = record.actual <= record.expected + record.tolerance;
  else if (record.relation == "info")
    record.pass = true;
  else
    throw Error("experiment check: unknown relation '" + record.relation + "'");
  overall_pass = overall_pass && record.pass;
  checks.push_back(std::move(record));
  return checks.back();
}

ExperimentReport spin_example_report() {
  ExperimentReport report;
  report.name = "spin-example";

  Representation spin = spin_j_representation(0.5);
  Representation reference = trivial_representation(GroupKind::SU2, 2);
  Representation rep = tensor_representation(spin, reference);

  Vector up(2), down(2), plus_x(2), minus_x(2);
  up << 1, 0;
  down << 0, 1;
  plus_x << M_SQRT1_2, M_SQRT1_2;
  minus_x << M_SQRT1_2, -M_SQRT1_2;

  auto tagged_mixture = [&](const Vector& first, const Vector& second) {
    Matrix m = 0.5 * kron(first * first.adjoint(), basis_projector(2, 0)) +
               0.5 * kron(second * second.adjoint(), basis_projector(2, 1));
    return DensityOperator(m);
  };
  DensityOperator rho = tagged_mixture(up, down);
  DensityOperator sigma = tagged_mixture(plus_x, minus_x);

  const Eigen::Vector3d axes[3] = {Eigen::Vector3d::UnitX(),
                                   Eigen::Vector3d::UnitY(),
                                   Eigen::Vector3d::UnitZ()};
  const char* axis_names[3] = {"x", "y", "z"};
  for (int a = 0; a < 3; ++a) {
    Matrix l = rep.axis_generator(axes[a]);
    RealVector m_rho = noether_moments(rho, l, 4);
    RealVector m_sigma = noether_moments(sigma, l, 4);
    report.add({std::string("generator moments k=1..4 agree, axis ") +
                    axis_names[a],
                0.0, (m_rho - m_sigma).cwiseAbs().maxCoeff(), 1e-10});
  }

  GroupDensity z_axis = subgroup_density_z_axis(rep, 8);
  report.add({"entropy gain of z-axis twirling, invariant state", 0.0,
              holevo_asymmetry(rho, rep, z_axis), 1e-9});
  report.add({"entropy gain of z-axis twirling, coherent state", 1.0,
              holevo_asymmetry(sigma, rep, z_axis), 1e-9});

  Matrix jz = rep.axis_generator(Eigen::Vector3d::UnitZ());
  report.add({"commutator asymmetry with J_z, invariant state", 0.0,
              commutator_asymmetry(rho, jz), 1e-9});
  report.add({"commutator asymmetry with J_z, coherent state", 1.0,
              commutator_asymmetry(sigma, jz), 1e-9});

  Matrix quarter_turn =
      kron(unitary_from_generator(spin.generators()[1], kPi / 2.0),
           Matrix::Identity(2, 2));
  report.add({"quarter turn about y maps the invariant state to the coherent one",
              0.0,
              trace_norm(quarter_turn * rho.matrix() * quarter_turn.adjoint() -
                         sigma.matrix()),
              1e-10});

  double commute_defect = 0.0;
  for (int a = 0; a < 3; ++a) {
    Matrix l = rep.axis_generator(axes[a]);
    commute_defect =
        std::max(commute_defect, max_abs(quarter_turn * l - l * quarter_turn));
  }
  report.add({"mapping unitary commutation defect with rotation generators "
              "(nonzero: the map is not symmetric)",
              0.0, commute_defect, 0.0, "info"});
  return report;
}

ExperimentReport triviality_demo(int n, std::uint64_t seed) {
  if (n < 2 || n > 12)
    throw InvalidGroup("triviality_demo: group order must lie in [2, 12], got " +
                       std::to_string(n));
  ExperimentReport report;
  report.name = "triviality:" + std::to_string(n);
  report.seed = seed;

  FiniteGroup group = cyclic_group(n);
  Representation regular = left_regular_representation(group);
  DensityOperator identity_state(basis_projector(n, group.identity()));
  GroupDensity uniform = uniform_density(regular, 1);
  DensityOperator twirled = twirl(identity_state, regular, uniform);

  std::vector<GroupElement> all;
  for (int g = 0; g < n; ++g) all.push_back(GroupElement::finite(g));
  std::vector<Complex> chi_state =
      characteristic_function(identity_state, regular, all);
  std::vector<Complex> chi_twirled =
      characteristic_function(twirled, regular, all);
  double chi_dev = 0.0;
  for (int g = 0; g < n; ++g)
    chi_dev = std::max(chi_dev, std::abs(chi_state[g] - chi_twirled[g]));
  report.add({"characteristic function unchanged by twirling", 0.0, chi_dev,
              1e-10});

  report.add({"entropy gain of uniform twirling is log2(n)", std::log2(n),
              holevo_asymmetry(identity_state, regular, uniform), 1e-9});

  std::mt19937_64 rng(trial_seed(seed, 0));
  std::vector<int> spectrum(n);
  for (int k = 0; k < n; ++k) spectrum[k] = k;
  Representation target = cyclic_phase_representation(group, spectrum);
  DensityOperator rho_target = random_density_operator(n, rng);
  KrausChannel encoder = encoder_channel(group, regular, target, rho_target);

  Matrix reconstructed = encoder.apply_matrix(identity_state.matrix());
  report.add({"encoder deposits the target state on the identity input", 0.0,
              max_abs(reconstructed - rho_target.matrix()), 1e-9});
  CovarianceReport covariance = is_symmetric_channel(encoder, regular, target, 1e-9);
  report.add({"encoder covariance deviation", 0.0, covariance.max_deviation,
              1e-9});
  report.add({"encoder output trace on a basis-state input (unit prefactor "
              "convention; a 1/n prefactor would make this 1/n)",
              1.0, reconstructed.trace().real(), 1e-9});
  return report;
}

ExperimentReport amplifier_bound_check(int trials, std::uint64_t seed) {
  if (trials < 1)
    throw InvalidOrder("amplifier_bound_check: trials must be positive");
  ExperimentReport report;
  report.name = "amplifier:" + std::to_string(trials);
  report.seed = seed;

  GroupInstance instance = make_instance("u1");
  InstanceCommutants commutants = instance_commutants("u1", instance);

  double worst_margin = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(trial_seed(seed, 2 * t));
    DensityOperator rho = random_density_operator(instance.system.dim(), rng);
    SymmetricDilation dilation = random_symmetric_dilation(
        instance.system, instance.ancilla, *commutants.joint,
        *commutants.ancilla, trial_seed(seed, 2 * t + 1));
    KrausChannel channel = symmetric_dilation_channel(dilation);
    DensityOperator sigma = apply_channel(channel, rho);

    double entropy_change = von_neumann_entropy(sigma.matrix()) -
                            von_neumann_entropy(rho.matrix());
    double twirled_change =
        von_neumann_entropy(
            twirl(sigma, instance.system, instance.uniform).matrix()) -
        von_neumann_entropy(
            twirl(rho, instance.system, instance.uniform).matrix());
    worst_margin = std::min(worst_margin, entropy_change - twirled_change);
  }
  report.add({"entropy change upper-bounds the twirled entropy change "
              "(worst margin over trials)",
              0.0, worst_margin, 1e-8, "ge"});

  Representation half = spin_j_representation(0.5);
  Commutant half_commutant(half);
  double worst_entropy_dev = 0.0;
  for (int t = 0; t < 20; ++t) {
    std::mt19937_64 rng(trial_seed(seed ^ 0x5eed5eedull, t));
    DensityOperator rho = random_density_operator(2, rng);
    double entropy =
        von_neumann_entropy(half_commutant.project(rho.matrix()));
    worst_entropy_dev = std::max(worst_entropy_dev, std::abs(entropy - 1.0));
  }
  report.add({"isotropic twirl of any spin-1/2 state has one bit of entropy "
              "(worst deviation over 20 states)",
              0.0, worst_entropy_dev, 1e-9});
  return report;
}

ExperimentReport monotonicity_suite(const std::string& instance_id,
                                    const std::string& measure, int trials,
                                    std::uint64_t seed) {
  if (trials < 1)
    throw InvalidOrder("monotonicity_suite: trials must be positive");
  auto registry = monotonicity_registry();
  if (std::find(registry.begin(), registry.end(),
                std::make_pair(instance_id, measure)) == registry.end())
    throw UnknownInstance("monotonicity: combination '" + instance_id + ":" +
                          measure + "' is not registered");

  ExperimentReport report;
  report.name = "monotonicity:" + instance_id + ":" + measure + ":" +
                std::to_string(trials);
  report.seed = seed;

  GroupInstance instance = make_instance(instance_id);
  InstanceCommutants commutants = instance_commutants(instance_id, instance);
  auto evaluate = measure_evaluator(measure, instance);

  double worst_violation = -std::numeric_limits<double>::infinity();
  double largest_input_value = 0.0;
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(trial_seed(seed, 2 * t));
    DensityOperator rho = random_density_operator(instance.system.dim(), rng);
    SymmetricDilation dilation = random_symmetric_dilation(
        instance.system, instance.ancilla, *commutants.joint,
        *commutants.ancilla, trial_seed(seed, 2 * t + 1));
    KrausChannel channel = symmetric_dilation_channel(dilation);
    DensityOperator sigma = apply_channel(channel, rho);

    double before = evaluate(rho);
    double after = evaluate(sigma);
    worst_violation = std::max(worst_violation, after - before);
    largest_input_value = std::max(largest_input_value, before);
  }
  report.add({"worst monotonicity violation (value after minus value before)",
              0.0, worst_violation, 1e-8, "le"});
  report.add({"largest input measure value over the trials", 0.0,
              largest_input_value, 0.0, "info"});
  return report;
}

std::vector<std::pair<std::string, std::string>> monotonicity_registry() {
  return {
      {"z8", "holevo"},  {"z8", "trace-distance"},
      {"u1", "holevo"},  {"u1", "commutator"}, {"u1", "trace-distance"},
      {"u1", "skew25"},  {"u1", "skew50"},     {"u1", "skew75"},
      {"su2", "holevo"}, {"su2", "commutator"}, {"su2", "trace-distance"},
      {"su2", "skew25"}, {"su2", "skew50"},    {"su2", "skew75"},
  };
}

InterconversionResult pure_state_interconversion(const DensityOperator& psi1,
                                                 const DensityOperator& psi2,
                                                 const Representation& r,
                                                 double tol) {
  for (const DensityOperator* state : {&psi1, &psi2}) {
    HermitianEig eig = hermitian_eig(state->matrix());
    if (eig.eigenvalues[eig.eigenvalues.size() - 1] < 1.0 - 1e-9)
      throw NotPure("pure_state_interconversion: largest eigenvalue " +
                    std::to_string(eig.eigenvalues[eig.eigenvalues.size() - 1]));
  }

  std::vector<GroupElement> elements = interconversion_elements(r);
  std::vector<Complex> chi1 = characteristic_function(psi1, r, elements);
  std::vector<Complex> chi2 = characteristic_function(psi2, r, elements);
  const int n = static_cast<int>(elements.size());

  InterconversionResult result;
  for (int i = 0; i < n; ++i)
    result.max_deviation_strict =
        std::max(result.max_deviation_strict, std::abs(chi1[i] - chi2[i]));
  result.equal_strict = result.max_deviation_strict <= tol;

  if (r.kind() == GroupKind::SU2) {
    result.equal_up_to_phase = result.equal_strict;
    result.max_deviation_phase = result.max_deviation_strict;
    return result;
  }

  double moduli_dev = 0.0;
  for (int i = 0; i < n; ++i)
    moduli_dev =
        std::max(moduli_dev, std::abs(std::abs(chi1[i]) - std::abs(chi2[i])));

  // Where chi1 is comfortably nonzero the ratio chi2/chi1 is well defined;
  // equality up to a symmetry action requires that ratio to be a character
  // (multiplicative over group composition).
  constexpr double kRatioCutoff = 1e-6;
  std::vector<Complex> ratio(n);
  std::vector<bool> defined(n, false);
  for (int i = 0; i < n; ++i)
    if (std::abs(chi1[i]) > kRatioCutoff) {
      ratio[i] = chi2[i] / chi1[i];
      defined[i] = true;
    }
  double character_dev = 0.0;
  for (const auto& triple : composition_triples(r, n)) {
    if (!defined[triple[0]] || !defined[triple[1]] || !defined[triple[2]])
      continue;
    character_dev = std::max(
        character_dev,
        std::abs(ratio[triple[2]] - ratio[triple[0]] * ratio[triple[1]]));
  }
  result.max_deviation_phase = std::max(moduli_dev, character_dev);
  result.equal_up_to_phase = result.max_deviation_phase <= tol;
  return result;
}

ExperimentReport interconversion_demo() {
  ExperimentReport report;
  report.name = "interconversion";

  Representation rep = u1_number_representation({0, 1, 2});
  Vector base(3), shifted_gap(3), shifted_one(3);
  base << 1, 1, 0;
  shifted_gap << 1, 0, 1;
  shifted_one << 0, 1, 1;
  DensityOperator psi_base = pure_from_vector(base);
  DensityOperator psi_phase =
      pure_from_vector((std::exp(Complex(0.0, 0.3)) * base).eval());
  DensityOperator psi_gap = pure_from_vector(shifted_gap);
  DensityOperator psi_shift = pure_from_vector(shifted_one);

  const double tol = 1e-9;
  auto record = [&](const std::string& label, const DensityOperator& other,
                    bool expect_strict, bool expect_phase) {
    InterconversionResult r = pure_state_interconversion(psi_base, other, rep, tol);
    report.add({label + ": strict characteristic-function equality",
                expect_strict ? 1.0 : 0.0, r.equal_strict ? 1.0 : 0.0, 0.0});
    report.add({label + ": equality up to a phase character",
                expect_phase ? 1.0 : 0.0, r.equal_up_to_phase ? 1.0 : 0.0, 0.0});
    report.add({label + ": strict deviation", 0.0, r.max_deviation_strict, 0.0,
                "info"});
    report.add({label + ": phase-relaxed deviation", 0.0, r.max_deviation_phase,
                0.0, "info"});
  };
  record("global phase on the same state", psi_phase, true, true);
  record("coherence across a doubled gap", psi_gap, false, false);
  record("spectrum shifted by one step", psi_shift, false, true);
  return report;
}

}  // namespace asymm
