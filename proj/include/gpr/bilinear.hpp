#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gpr/types.hpp"

namespace gpr {

/// Real bilinear map L(x, y) = (x^T B_1 y, ..., x^T B_N y) of size (p, q, N).
struct BilinearForm {
  std::vector<Eigen::MatrixXd> mats;
  int p = 0, q = 0;

  int count() const { return static_cast<int>(mats.size()); }
  Eigen::VectorXd operator()(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
};

/// The symmetric bilinear form of a real ensemble; its nonsingularity is
/// equivalent to the ensemble's phase retrieval property.
BilinearForm bilinear_from_ensemble(const RealEnsemble& e);

enum class NormedAlgebra { Complex2, Quaternion, Octonion };

const char* to_string(NormedAlgebra a);
NormedAlgebra algebra_from_string(const std::string& name);

/// Multiplication form of the complex numbers, quaternions or octonions:
/// sizes (2,2,2), (4,4,4), (8,8,8), satisfying |L(x,y)| = |x||y| exactly.
/// Built by Cayley-Dickson doubling with the convention
/// (a,b)(c,d) = (ac - d*b, da + bc*); conjugation negates every basis
/// coordinate except the first.
BilinearForm normed_form(NormedAlgebra algebra);

/// Coordinates of the product of two algebra elements (dimension 1, 2, 4
/// or 8), same doubling convention as normed_form.
Eigen::VectorXd cayley_dickson_product(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Seeded Gaussian form with prescribed ranks 1 <= r_j <= min(p, q);
/// matrices are scaled to unit Frobenius norm.
BilinearForm generic_bilinear(int p, int q, int n, const std::vector<int>& ranks,
                              std::uint64_t seed);

}  // namespace gpr
