#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

namespace weylp {

/// Generalized Cartan matrix with the data the relation verifier needs.
struct CartanData {
  static constexpr int kInfinite = -1;

  std::string name;
  Eigen::MatrixXi a;
  /// Orientation matrix; empty when the realization does not use one.
  Eigen::MatrixXi u;
  /// rotation[i] is the image of node i under the diagram rotation; empty if none.
  std::vector<int> rotation;

  int size() const { return static_cast<int>(a.rows()); }
  /// m_ij from a_ij*a_ji: 0,1,2,3 give 2,3,4,6; 4 or more gives kInfinite. m_ii = 1.
  int coxeter(int i, int j) const;
  Eigen::MatrixXi coxeter_matrix() const;
  bool has_rotation() const { return !rotation.empty(); }

  /// Throws std::invalid_argument naming the violated axiom.
  void validate() const;

  /// Affine A^(1)_l, l >= 1, with the cyclic orientation u_{i,i+1} = 1 and rotation i -> i+1.
  static CartanData affine_A(int l);
  /// Affine D^(1)_4 with node 2 at the centre.
  static CartanData affine_D4();
};

}  // namespace weylp
