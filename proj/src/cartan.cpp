#include "weylp/cartan.hpp"

#include <stdexcept>

namespace weylp {

int CartanData::coxeter(int i, int j) const {
  if (i == j) return 1;
  switch (a(i, j) * a(j, i)) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
    default: return kInfinite;
  }
}

Eigen::MatrixXi CartanData::coxeter_matrix() const {
  Eigen::MatrixXi m(size(), size());
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j) m(i, j) = coxeter(i, j);
  return m;
}

void CartanData::validate() const {
  const int n = size();
  if (a.cols() != n) throw std::invalid_argument(name + ": Cartan matrix is not square");
  for (int i = 0; i < n; ++i) {
    if (a(i, i) != 2) throw std::invalid_argument(name + ": a_ii != 2 at i=" + std::to_string(i));
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (a(i, j) > 0) throw std::invalid_argument(name + ": positive off-diagonal entry");
      if ((a(i, j) == 0) != (a(j, i) == 0))
        throw std::invalid_argument(name + ": a_ij = 0 but a_ji != 0");
    }
  }
  if (u.size() != 0) {
    if (u.rows() != n || u.cols() != n) throw std::invalid_argument(name + ": orientation matrix has wrong shape");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (u(i, j) != -u(j, i)) throw std::invalid_argument(name + ": orientation matrix not antisymmetric");
  }
  if (!rotation.empty()) {
    if (static_cast<int>(rotation.size()) != n) throw std::invalid_argument(name + ": rotation has wrong length");
    std::vector<bool> seen(n, false);
    for (int i = 0; i < n; ++i) {
      int r = rotation[i];
      if (r < 0 || r >= n || seen[r]) throw std::invalid_argument(name + ": rotation is not a permutation");
      seen[r] = true;
      for (int j = 0; j < n; ++j)
        if (a(rotation[i], rotation[j]) != a(i, j))
          throw std::invalid_argument(name + ": rotation is not a diagram automorphism");
    }
  }
}

CartanData CartanData::affine_A(int l) {
  if (l < 1) throw std::invalid_argument("affine A needs l >= 1");
  const int n = l + 1;
  CartanData c;
  c.name = "A" + std::to_string(l) + "^(1)";
  c.a = Eigen::MatrixXi::Zero(n, n);
  c.u = Eigen::MatrixXi::Zero(n, n);
  for (int i = 0; i < n; ++i) c.a(i, i) = 2;
  if (l == 1) {
    c.a(0, 1) = c.a(1, 0) = -2;
  } else {
    for (int i = 0; i < n; ++i) {
      int j = (i + 1) % n;
      c.a(i, j) = c.a(j, i) = -1;
      c.u(i, j) = 1;
      c.u(j, i) = -1;
    }
  }
  for (int i = 0; i < n; ++i) c.rotation.push_back((i + 1) % n);
  c.validate();
  return c;
}

CartanData CartanData::affine_D4() {
  CartanData c;
  c.name = "D4^(1)";
  c.a = Eigen::MatrixXi::Zero(5, 5);
  for (int i = 0; i < 5; ++i) c.a(i, i) = 2;
  for (int i : {0, 1, 3, 4}) c.a(i, 2) = c.a(2, i) = -1;
  c.validate();
  return c;
}

}  // namespace weylp
