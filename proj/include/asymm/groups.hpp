#pragma once

#include <memory>
#include <string>
#include <vector>

#include "asymm/linalg.hpp"

namespace asymm {

// Finite group given by its multiplication table. Construction validates the
// table: every row and column is a permutation, the identity behaves as one,
// inverses are two-sided, and associativity is checked exhaustively for
// order <= 16 (larger tables are accepted with the Latin-square, identity and
// inverse checks only).
class FiniteGroup {
 public:
  FiniteGroup(std::vector<std::string> labels,
              std::vector<std::vector<int>> table, int identity);

  int order() const { return static_cast<int>(table_.size()); }
  int multiply(int a, int b) const;
  int inverse(int a) const;
  int identity() const { return identity_; }
  const std::string& label(int g) const;
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::vector<int>>& table() const { return table_; }
  bool is_abelian() const;

  // True when the two groups have identical tables and identity; labels are
  // ignored.
  bool same_structure(const FiniteGroup& other) const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  int identity_;
};

FiniteGroup cyclic_group(int n);

enum class GroupKind { Finite, U1, SU2 };

// One group element, interpreted according to the representation kind:
// finite groups use `index`, U(1) uses `angle` as the phase, SU(2) uses
// `axis`/`angle` as an axis-angle rotation.
struct GroupElement {
  int index = 0;
  double angle = 0.0;
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();

  static GroupElement finite(int index);
  static GroupElement phase(double phi);
  static GroupElement rotation(const Eigen::Vector3d& axis, double theta);
};

// Unitary representation of a finite group, of U(1), or of SU(2).
//
// Finite representations store one unitary per element and validate
// unitarity (1e-10) and the homomorphism property (1e-9) exhaustively at
// construction. Lie representations store Hermitian generators (U(1): the
// number operator N with element map phi -> exp(i phi N); SU(2): J_x, J_y,
// J_z with element map (axis, theta) -> exp(-i theta axis.J)).
class Representation {
 public:
  static Representation finite(FiniteGroup group, std::vector<Matrix> unitaries);
  static Representation u1(Matrix number_op);
  static Representation su2(Matrix jx, Matrix jy, Matrix jz);

  GroupKind kind() const { return kind_; }
  Eigen::Index dim() const { return dim_; }

  Matrix unitary(const GroupElement& g) const;
  GroupElement identity_element() const;

  const FiniteGroup& group() const;             // finite only
  const Matrix& element_unitary(int index) const;  // finite only

  // Lie only. U(1): {N}; SU(2): {J_x, J_y, J_z}.
  const std::vector<Matrix>& generators() const;
  // SU(2): axis.J for a unit axis; U(1): N regardless of axis.
  Matrix axis_generator(const Eigen::Vector3d& axis) const;

 private:
  Representation() = default;

  GroupKind kind_ = GroupKind::Finite;
  Eigen::Index dim_ = 0;
  std::shared_ptr<const FiniteGroup> group_;
  std::vector<Matrix> unitaries_;
  std::vector<Matrix> generators_;
};

Representation left_regular_representation(const FiniteGroup& g);
Representation right_regular_representation(const FiniteGroup& g);

// Spin-j representation of SU(2); 2j must be a nonnegative integer. J_z is
// diagonal with eigenvalues j, j-1, ..., -j.
Representation spin_j_representation(double j);

// U(1) representation with diagonal number operator N = diag(spectrum).
Representation u1_number_representation(const std::vector<int>& spectrum);

// Character representation of a cyclic group: element k acts as
// diag(exp(2 pi i k m / n)) over the integer spectrum entries m.
Representation cyclic_phase_representation(const FiniteGroup& zn,
                                           const std::vector<int>& spectrum);

// Representation acting as the identity on a dim-dimensional space.
Representation trivial_representation(const FiniteGroup& g, Eigen::Index dim);
Representation trivial_representation(GroupKind kind, Eigen::Index dim);

// Tensor product of two representations of the same group: element map
// g -> U1(g) (x) U2(g); Lie generators L1 (x) I + I (x) L2.
Representation tensor_representation(const Representation& r1,
                                     const Representation& r2);

// Composition g1 * g2 in the group underlying `r` (table lookup, phase
// addition, or quaternion product respectively).
GroupElement compose_elements(const Representation& r, const GroupElement& g1,
                              const GroupElement& g2);

std::string element_label(const Representation& r, const GroupElement& g);

// Probability density with finite support on the group: a list of weighted
// elements. Weights are nonnegative and sum to 1 within 1e-12.
class GroupDensity {
 public:
  struct Node {
    GroupElement element;
    double weight;
  };

  GroupDensity(std::string id, std::vector<Node> nodes);

  const std::string& id() const { return id_; }
  const std::vector<Node>& nodes() const { return nodes_; }

 private:
  std::string id_;
  std::vector<Node> nodes_;
};

// Uniform (Haar) density. Finite groups: all elements at weight 1/|G|.
// U(1): a uniform phase grid whose size is at least `resolution` and at least
// the minimal exact size spread(N)+1, which averages every coherence
// exp(i phi (n-m)) to zero exactly. SU(2): an Euler-angle product rule
// (uniform alpha/gamma grids, Gauss-Legendre in cos beta) sized from the J_z
// spectral spread so that twirling with it reproduces the Haar average
// exactly.
GroupDensity uniform_density(const Representation& r, int resolution);

// Uniform density over the subgroup of rotations about the z axis of an SU(2)
// representation; exact for twirling once the grid exceeds the J_z spectral
// spread.
GroupDensity subgroup_density_z_axis(const Representation& r, int resolution);

}  // namespace asymm
