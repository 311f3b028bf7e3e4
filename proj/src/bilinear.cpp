#include "gpr/bilinear.hpp"

#include "gpr/rng.hpp"

namespace gpr {

Eigen::VectorXd BilinearForm::operator()(const Eigen::VectorXd& x,
                                         const Eigen::VectorXd& y) const {
  if (x.size() != p || y.size() != q) throw InputError("BilinearForm: shape mismatch");
  Eigen::VectorXd out(count());
  for (int j = 0; j < count(); ++j) out[j] = x.dot(mats[static_cast<size_t>(j)] * y);
  return out;
}

BilinearForm bilinear_from_ensemble(const RealEnsemble& e) {
  BilinearForm form;
  form.p = form.q = static_cast<int>(e.dim());
  form.mats.reserve(static_cast<size_t>(e.size()));
  for (const auto& a : e.matrices()) form.mats.push_back(a.mat());
  return form;
}

const char* to_string(NormedAlgebra a) {
  switch (a) {
    case NormedAlgebra::Complex2: return "complex";
    case NormedAlgebra::Quaternion: return "quaternion";
    case NormedAlgebra::Octonion: return "octonion";
  }
  return "?";
}

NormedAlgebra algebra_from_string(const std::string& name) {
  if (name == "complex") return NormedAlgebra::Complex2;
  if (name == "quaternion") return NormedAlgebra::Quaternion;
  if (name == "octonion") return NormedAlgebra::Octonion;
  throw InputError("unknown algebra: " + name);
}

namespace {

Eigen::VectorXd cd_conj(const Eigen::VectorXd& a) {
  Eigen::VectorXd c = -a;
  c[0] = a[0];
  return c;
}

// (a1, a2)(b1, b2) = (a1 b1 - b2* a2, b2 a1 + a2 b1*)
Eigen::VectorXd cd_mult(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const Eigen::Index n = a.size();
  if (n == 1) return Eigen::VectorXd::Constant(1, a[0] * b[0]);
  const Eigen::Index h = n / 2;
  const Eigen::VectorXd a1 = a.head(h), a2 = a.tail(h);
  const Eigen::VectorXd b1 = b.head(h), b2 = b.tail(h);
  Eigen::VectorXd out(n);
  out.head(h) = cd_mult(a1, b1) - cd_mult(cd_conj(b2), a2);
  out.tail(h) = cd_mult(b2, a1) + cd_mult(a2, cd_conj(b1));
  return out;
}

}  // namespace

Eigen::VectorXd cayley_dickson_product(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const Eigen::Index n = a.size();
  if (n != b.size() || (n != 1 && n != 2 && n != 4 && n != 8))
    throw InputError("cayley_dickson_product: dimension must be 1, 2, 4 or 8 and equal");
  return cd_mult(a, b);
}

BilinearForm normed_form(NormedAlgebra algebra) {
  int n = 2;
  if (algebra == NormedAlgebra::Quaternion) n = 4;
  if (algebra == NormedAlgebra::Octonion) n = 8;
  BilinearForm form;
  form.p = form.q = n;
  form.mats.assign(static_cast<size_t>(n), Eigen::MatrixXd::Zero(n, n));
  // B_k(i, j) = k-th coordinate of e_i e_j, so that x^T B_k y is the k-th
  // coordinate of the product x y.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Eigen::VectorXd prod =
          cd_mult(Eigen::VectorXd::Unit(n, i), Eigen::VectorXd::Unit(n, j));
      for (int k = 0; k < n; ++k) form.mats[static_cast<size_t>(k)](i, j) = prod[k];
    }
  return form;
}

BilinearForm generic_bilinear(int p, int q, int n, const std::vector<int>& ranks,
                              std::uint64_t seed) {
  if (p < 1 || q < 1 || n < 1) throw InputError("generic_bilinear: need p, q, N >= 1");
  if (static_cast<int>(ranks.size()) != n)
    throw InputError("generic_bilinear: rank list length must equal N");
  for (int r : ranks)
    if (r < 1 || r > std::min(p, q))
      throw InputError("generic_bilinear: ranks must lie in [1, min(p, q)]");
  BilinearForm form;
  form.p = p;
  form.q = q;
  form.mats.reserve(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    CounterRng rng = CounterRng::substream(seed, static_cast<std::uint64_t>(j));
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(p, q);
    for (int i = 0; i < ranks[static_cast<size_t>(j)]; ++i) {
      Eigen::VectorXd u(p), v(q);
      for (int k = 0; k < p; ++k) u[k] = rng.next_gaussian();
      for (int k = 0; k < q; ++k) v[k] = rng.next_gaussian();
      b += u * v.transpose();
    }
    form.mats.push_back(b / b.norm());
  }
  return form;
}

}  // namespace gpr
