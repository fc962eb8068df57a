#include "asymm/groups.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

namespace asymm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kUnitaryTol = 1e-10;
constexpr double kHomomorphismTol = 1e-9;
constexpr double kGeneratorHermitianTol = 1e-12;

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

void require_unitary(const Matrix& u, double tol, const std::string& where) {
  Matrix gram = u.adjoint() * u;
  gram -= Matrix::Identity(u.rows(), u.cols());
  if (max_abs(gram) > tol)
    throw InvalidRepresentation(where + ": matrix is not unitary within " +
                                std::to_string(tol));
}

// Integer width of a Hermitian operator's spectrum, rounded: the largest
// eigenvalue difference that shows up as a coherence frequency under
// conjugation.
int spectral_spread(const Matrix& generator) {
  if (generator.rows() == 0) return 0;
  HermitianEig eig = hermitian_eig(generator);
  double spread = eig.eigenvalues[eig.eigenvalues.size() - 1] - eig.eigenvalues[0];
  return static_cast<int>(std::lround(spread));
}

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * z * p1 - k * p2) / (k + 1.0);
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      double step = p0 / dp;
      z -= step;
      if (std::abs(step) < 1e-15) break;
    }
    nodes[i] = -z;
    nodes[n - 1 - i] = z;
    double w = 2.0 / ((1.0 - z * z) * dp * dp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

// Unit quaternion (w, v) <-> exp(-i theta axis.J) with w = cos(theta/2),
// v = sin(theta/2) axis; the product law mirrors composition in SU(2).
struct Quaternion {
  double w;
  Eigen::Vector3d v;
};

Quaternion quaternion_from_axis_angle(const Eigen::Vector3d& axis, double theta) {
  return {std::cos(theta / 2.0), std::sin(theta / 2.0) * axis.normalized()};
}

Quaternion quaternion_multiply(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.v.dot(b.v), a.w * b.v + b.w * a.v + a.v.cross(b.v)};
}

GroupElement axis_angle_from_quaternion(const Quaternion& q) {
  double norm_v = q.v.norm();
  double theta = 2.0 * std::atan2(norm_v, q.w);
  if (norm_v < 1e-14) return GroupElement::rotation(Eigen::Vector3d::UnitZ(), theta);
  return GroupElement::rotation(q.v / norm_v, theta);
}

}  // namespace

FiniteGroup::FiniteGroup(std::vector<std::string> labels,
                         std::vector<std::vector<int>> table, int identity)
    : labels_(std::move(labels)), table_(std::move(table)), identity_(identity) {
  const int n = static_cast<int>(table_.size());
  if (n == 0) throw InvalidGroup("group: empty multiplication table");
  if (static_cast<int>(labels_.size()) != n)
    throw InvalidGroup("group: " + std::to_string(labels_.size()) +
                       " labels for order " + std::to_string(n));
  if (identity_ < 0 || identity_ >= n)
    throw InvalidGroup("group: identity index out of range");

  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n)
      throw InvalidGroup("group: multiplication table is not square");
    for (int v : row)
      if (v < 0 || v >= n)
        throw InvalidGroup("group: table entry out of range");
  }

  // Latin square: each row and each column is a permutation.
  for (int a = 0; a < n; ++a) {
    std::vector<bool> row_seen(n, false), col_seen(n, false);
    for (int b = 0; b < n; ++b) {
      if (row_seen[table_[a][b]])
        throw InvalidGroup("group: row " + std::to_string(a) +
                           " repeats an element");
      row_seen[table_[a][b]] = true;
      if (col_seen[table_[b][a]])
        throw InvalidGroup("group: column " + std::to_string(a) +
                           " repeats an element");
      col_seen[table_[b][a]] = true;
    }
  }

  for (int g = 0; g < n; ++g)
    if (table_[identity_][g] != g || table_[g][identity_] != g)
      throw InvalidGroup("group: element " + std::to_string(identity_) +
                         " is not a two-sided identity");

  if (n <= 16) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
            throw InvalidGroup("group: associativity fails on (" +
                               std::to_string(a) + ", " + std::to_string(b) +
                               ", " + std::to_string(c) + ")");
  }

  inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (table_[a][b] == identity_) {
        inverse_[a] = b;
        break;
      }
    if (inverse_[a] < 0 || table_[inverse_[a]][a] != identity_)
      throw InvalidGroup("group: element " + std::to_string(a) +
                         " lacks a two-sided inverse");
  }
}

int FiniteGroup::multiply(int a, int b) const {
  if (a < 0 || a >= order() || b < 0 || b >= order())
    throw InvalidGroup("group: element index out of range");
  return table_[a][b];
}

int FiniteGroup::inverse(int a) const {
  if (a < 0 || a >= order())
    throw InvalidGroup("group: element index out of range");
  return inverse_[a];
}

const std::string& FiniteGroup::label(int g) const {
  if (g < 0 || g >= order())
    throw InvalidGroup("group: element index out of range");
  return labels_[g];
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order(); ++a)
    for (int b = a + 1; b < order(); ++b)
      if (table_[a][b] != table_[b][a]) return false;
  return true;
}

bool FiniteGroup::same_structure(const FiniteGroup& other) const {
  return identity_ == other.identity_ && table_ == other.table_;
}

FiniteGroup cyclic_group(int n) {
  if (n <= 0) throw InvalidGroup("cyclic_group: order must be positive");
  std::vector<std::string> labels(n);
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    labels[a] = std::to_string(a);
    for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  }
  return FiniteGroup(std::move(labels), std::move(table), 0);
}

GroupElement GroupElement::finite(int index) {
  GroupElement g;
  g.index = index;
  return g;
}

GroupElement GroupElement::phase(double phi) {
  GroupElement g;
  g.angle = phi;
  return g;
}

GroupElement GroupElement::rotation(const Eigen::Vector3d& axis, double theta) {
  double norm = axis.norm();
  if (norm < 1e-14)
    throw InvalidRepresentation("rotation: axis must be nonzero");
  GroupElement g;
  g.axis = axis / norm;
  g.angle = theta;
  return g;
}

Representation Representation::finite(FiniteGroup group,
                                      std::vector<Matrix> unitaries) {
  const int n = group.order();
  if (static_cast<int>(unitaries.size()) != n)
    throw InvalidRepresentation("finite representation: expected " +
                                std::to_string(n) + " unitaries, got " +
                                std::to_string(unitaries.size()));
  Eigen::Index d = unitaries[0].rows();
  if (d <= 0) throw InvalidRepresentation("finite representation: empty carrier");
  for (int g = 0; g < n; ++g) {
    if (unitaries[g].rows() != d || unitaries[g].cols() != d)
      throw InvalidRepresentation("finite representation: inconsistent dimensions");
    require_finite(unitaries[g], "finite representation");
    require_unitary(unitaries[g], kUnitaryTol, "finite representation");
  }
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      Matrix defect = unitaries[g] * unitaries[h] - unitaries[group.multiply(g, h)];
      if (max_abs(defect) > kHomomorphismTol)
        throw InvalidRepresentation(
            "finite representation: homomorphism fails on (" +
            std::to_string(g) + ", " + std::to_string(h) + ")");
    }

  Representation r;
  r.kind_ = GroupKind::Finite;
  r.dim_ = d;
  r.group_ = std::make_shared<FiniteGroup>(std::move(group));
  r.unitaries_ = std::move(unitaries);
  return r;
}

Representation Representation::u1(Matrix number_op) {
  require_finite(number_op, "u1 representation");
  require_hermitian(number_op, kGeneratorHermitianTol, "u1 representation");
  Representation r;
  r.kind_ = GroupKind::U1;
  r.dim_ = number_op.rows();
  r.generators_.push_back(std::move(number_op));
  return r;
}

Representation Representation::su2(Matrix jx, Matrix jy, Matrix jz) {
  Eigen::Index d = jx.rows();
  for (const Matrix* j : {&jx, &jy, &jz}) {
    require_finite(*j, "su2 representation");
    require_hermitian(*j, kGeneratorHermitianTol, "su2 representation");
    if (j->rows() != d)
      throw InvalidRepresentation("su2 representation: generator dimensions differ");
  }
  Representation r;
  r.kind_ = GroupKind::SU2;
  r.dim_ = d;
  r.generators_ = {std::move(jx), std::move(jy), std::move(jz)};
  return r;
}

Matrix Representation::unitary(const GroupElement& g) const {
  switch (kind_) {
    case GroupKind::Finite:
      return element_unitary(g.index);
    case GroupKind::U1:
      // exp(i phi N)
      return unitary_from_generator(generators_[0], -g.angle);
    case GroupKind::SU2:
      return unitary_from_generator(axis_generator(g.axis), g.angle);
  }
  throw Error("representation: unknown kind");
}

GroupElement Representation::identity_element() const {
  switch (kind_) {
    case GroupKind::Finite:
      return GroupElement::finite(group_->identity());
    case GroupKind::U1:
      return GroupElement::phase(0.0);
    case GroupKind::SU2:
      return GroupElement::rotation(Eigen::Vector3d::UnitZ(), 0.0);
  }
  throw Error("representation: unknown kind");
}

const FiniteGroup& Representation::group() const {
  if (kind_ != GroupKind::Finite)
    throw GroupMismatch("representation: no finite group attached");
  return *group_;
}

const Matrix& Representation::element_unitary(int index) const {
  if (kind_ != GroupKind::Finite)
    throw GroupMismatch("representation: element unitaries exist for finite groups only");
  if (index < 0 || index >= static_cast<int>(unitaries_.size()))
    throw InvalidGroup("representation: element index out of range");
  return unitaries_[index];
}

const std::vector<Matrix>& Representation::generators() const {
  if (kind_ == GroupKind::Finite)
    throw GroupMismatch("representation: finite groups have no generators");
  return generators_;
}

Matrix Representation::axis_generator(const Eigen::Vector3d& axis) const {
  if (kind_ == GroupKind::U1) return generators_[0];
  if (kind_ != GroupKind::SU2)
    throw GroupMismatch("representation: finite groups have no generators");
  Eigen::Vector3d n = axis;
  double norm = n.norm();
  if (norm < 1e-14)
    throw InvalidRepresentation("axis_generator: axis must be nonzero");
  n /= norm;
  return n.x() * generators_[0] + n.y() * generators_[1] + n.z() * generators_[2];
}

Representation left_regular_representation(const FiniteGroup& g) {
  const int n = g.order();
  std::vector<Matrix> unitaries(n);
  for (int a = 0; a < n; ++a) {
    Matrix u = Matrix::Zero(n, n);
    for (int h = 0; h < n; ++h) u(g.multiply(a, h), h) = 1.0;
    unitaries[a] = std::move(u);
  }
  return Representation::finite(g, std::move(unitaries));
}

Representation right_regular_representation(const FiniteGroup& g) {
  const int n = g.order();
  std::vector<Matrix> unitaries(n);
  for (int a = 0; a < n; ++a) {
    Matrix u = Matrix::Zero(n, n);
    for (int h = 0; h < n; ++h) u(g.multiply(h, g.inverse(a)), h) = 1.0;
    unitaries[a] = std::move(u);
  }
  return Representation::finite(g, std::move(unitaries));
}

Representation spin_j_representation(double j) {
  double two_j = 2.0 * j;
  if (j < 0.0 || std::abs(two_j - std::lround(two_j)) > 1e-9)
    throw InvalidSpin("spin_j_representation: 2j must be a nonnegative integer, got j = " +
                      std::to_string(j));
  const Eigen::Index d = static_cast<Eigen::Index>(std::lround(two_j)) + 1;

  Matrix jz = Matrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) jz(k, k) = j - static_cast<double>(k);

  Matrix jplus = Matrix::Zero(d, d);
  for (Eigen::Index k = 1; k < d; ++k) {
    double m = j - static_cast<double>(k);  // raise from m to m+1
    jplus(k - 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  Matrix jminus = jplus.adjoint();
  Matrix jx = (jplus + jminus) * 0.5;
  Matrix jy = (jplus - jminus) * Complex(0.0, -0.5);
  return Representation::su2(std::move(jx), std::move(jy), std::move(jz));
}

Representation u1_number_representation(const std::vector<int>& spectrum) {
  if (spectrum.empty())
    throw InvalidRepresentation("u1_number_representation: empty spectrum");
  Matrix n = Matrix::Zero(spectrum.size(), spectrum.size());
  for (size_t k = 0; k < spectrum.size(); ++k) n(k, k) = spectrum[k];
  return Representation::u1(std::move(n));
}

Representation cyclic_phase_representation(const FiniteGroup& zn,
                                           const std::vector<int>& spectrum) {
  const int n = zn.order();
  if (!zn.same_structure(cyclic_group(n)))
    throw GroupMismatch("cyclic_phase_representation: group is not cyclic in standard form");
  if (spectrum.empty())
    throw InvalidRepresentation("cyclic_phase_representation: empty spectrum");
  const Eigen::Index d = static_cast<Eigen::Index>(spectrum.size());
  std::vector<Matrix> unitaries(n);
  for (int k = 0; k < n; ++k) {
    Matrix u = Matrix::Zero(d, d);
    for (Eigen::Index m = 0; m < d; ++m)
      u(m, m) = std::exp(Complex(0.0, 2.0 * kPi * k * spectrum[m] / n));
    unitaries[k] = std::move(u);
  }
  return Representation::finite(zn, std::move(unitaries));
}

Representation trivial_representation(const FiniteGroup& g, Eigen::Index dim) {
  std::vector<Matrix> unitaries(g.order(), Matrix::Identity(dim, dim));
  return Representation::finite(g, std::move(unitaries));
}

Representation trivial_representation(GroupKind kind, Eigen::Index dim) {
  Matrix zero = Matrix::Zero(dim, dim);
  switch (kind) {
    case GroupKind::U1:
      return Representation::u1(zero);
    case GroupKind::SU2:
      return Representation::su2(zero, zero, zero);
    case GroupKind::Finite:
      throw GroupMismatch("trivial_representation: finite kind needs a group");
  }
  throw Error("trivial_representation: unknown kind");
}

Representation tensor_representation(const Representation& r1,
                                     const Representation& r2) {
  if (r1.kind() != r2.kind())
    throw GroupMismatch("tensor_representation: representations of different groups");
  switch (r1.kind()) {
    case GroupKind::Finite: {
      if (!r1.group().same_structure(r2.group()))
        throw GroupMismatch("tensor_representation: finite groups differ");
      const int n = r1.group().order();
      std::vector<Matrix> unitaries(n);
      for (int g = 0; g < n; ++g)
        unitaries[g] = kron(r1.element_unitary(g), r2.element_unitary(g));
      return Representation::finite(r1.group(), std::move(unitaries));
    }
    case GroupKind::U1: {
      Matrix i1 = Matrix::Identity(r1.dim(), r1.dim());
      Matrix i2 = Matrix::Identity(r2.dim(), r2.dim());
      return Representation::u1(kron(r1.generators()[0], i2) +
                                kron(i1, r2.generators()[0]));
    }
    case GroupKind::SU2: {
      Matrix i1 = Matrix::Identity(r1.dim(), r1.dim());
      Matrix i2 = Matrix::Identity(r2.dim(), r2.dim());
      std::vector<Matrix> gens(3);
      for (int k = 0; k < 3; ++k)
        gens[k] = kron(r1.generators()[k], i2) + kron(i1, r2.generators()[k]);
      return Representation::su2(std::move(gens[0]), std::move(gens[1]),
                                 std::move(gens[2]));
    }
  }
  throw Error("tensor_representation: unknown kind");
}

GroupElement compose_elements(const Representation& r, const GroupElement& g1,
                              const GroupElement& g2) {
  switch (r.kind()) {
    case GroupKind::Finite:
      return GroupElement::finite(r.group().multiply(g1.index, g2.index));
    case GroupKind::U1:
      return GroupElement::phase(std::fmod(g1.angle + g2.angle, 2.0 * kPi));
    case GroupKind::SU2: {
      Quaternion q = quaternion_multiply(
          quaternion_from_axis_angle(g1.axis, g1.angle),
          quaternion_from_axis_angle(g2.axis, g2.angle));
      return axis_angle_from_quaternion(q);
    }
  }
  throw Error("compose_elements: unknown kind");
}

std::string element_label(const Representation& r, const GroupElement& g) {
  std::ostringstream out;
  switch (r.kind()) {
    case GroupKind::Finite:
      out << r.group().label(g.index);
      break;
    case GroupKind::U1:
      out << "phi=" << g.angle;
      break;
    case GroupKind::SU2:
      out << "axis=(" << g.axis.x() << "," << g.axis.y() << "," << g.axis.z()
          << "),theta=" << g.angle;
      break;
  }
  return out.str();
}

GroupDensity::GroupDensity(std::string id, std::vector<Node> nodes)
    : id_(std::move(id)), nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw InvalidDensity("group density: empty support");
  double sum = 0.0;
  for (const Node& node : nodes_) {
    if (!(node.weight >= 0.0))
      throw InvalidDensity("group density: negative weight");
    sum += node.weight;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw InvalidDensity("group density: weights sum to " + std::to_string(sum));
}

GroupDensity uniform_density(const Representation& r, int resolution) {
  if (resolution < 1)
    throw InvalidDensity("uniform_density: resolution must be at least 1");
  std::vector<GroupDensity::Node> nodes;
  switch (r.kind()) {
    case GroupKind::Finite: {
      const int n = r.group().order();
      for (int g = 0; g < n; ++g)
        nodes.push_back({GroupElement::finite(g), 1.0 / n});
      return GroupDensity("uniform", std::move(nodes));
    }
    case GroupKind::U1: {
      int m = std::max(resolution, spectral_spread(r.generators()[0]) + 1);
      for (int k = 0; k < m; ++k)
        nodes.push_back({GroupElement::phase(2.0 * kPi * k / m), 1.0 / m});
      return GroupDensity("uniform", std::move(nodes));
    }
    case GroupKind::SU2: {
      int spread = spectral_spread(r.generators()[2]);
      int m = std::max(resolution, spread + 1);
      int n_beta = std::max((resolution + 1) / 2, spread + 1);
      std::vector<double> x, w;
      gauss_legendre(n_beta, x, w);
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < n_beta; ++b)
          for (int c = 0; c < m; ++c) {
            double alpha = 2.0 * kPi * a / m;
            double beta = std::acos(x[b]);
            double gamma = 2.0 * kPi * c / m;
            Quaternion q = quaternion_multiply(
                quaternion_from_axis_angle(Eigen::Vector3d::UnitZ(), alpha),
                quaternion_multiply(
                    quaternion_from_axis_angle(Eigen::Vector3d::UnitY(), beta),
                    quaternion_from_axis_angle(Eigen::Vector3d::UnitZ(), gamma)));
            double weight = (w[b] / 2.0) / (static_cast<double>(m) * m);
            nodes.push_back({axis_angle_from_quaternion(q), weight});
          }
      return GroupDensity("uniform", std::move(nodes));
    }
  }
  throw Error("uniform_density: unknown kind");
}

GroupDensity subgroup_density_z_axis(const Representation& r, int resolution) {
  if (r.kind() != GroupKind::SU2)
    throw GroupMismatch("subgroup_density_z_axis: representation has no J_z generator");
  if (resolution < 1)
    throw InvalidDensity("subgroup_density_z_axis: resolution must be at least 1");
  int m = std::max(resolution, spectral_spread(r.generators()[2]) + 1);
  std::vector<GroupDensity::Node> nodes;
  for (int k = 0; k < m; ++k)
    nodes.push_back(
        {GroupElement::rotation(Eigen::Vector3d::UnitZ(), 2.0 * kPi * k / m),
         1.0 / m});
  return GroupDensity("z-axis", std::move(nodes));
}

}  // namespace asymm
