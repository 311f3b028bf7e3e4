#include "gpr/certify.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "gpr/bounds.hpp"
#include "gpr/core.hpp"
#include "gpr/herm_coords.hpp"
#include "gpr/kernels.hpp"
#include "gpr/rng.hpp"

namespace gpr {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::CertifiedPR: return "CertifiedPR";
    case Verdict::CertifiedNotPR: return "CertifiedNotPR";
    case Verdict::LikelyPR: return "LikelyPR";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

const char* to_string(DecidedBy d) {
  switch (d) {
    case DecidedBy::Bounds: return "bounds";
    case DecidedBy::NullspaceExact: return "nullspace_exact";
    case DecidedBy::Witness: return "witness";
    case DecidedBy::Randomized: return "randomized";
  }
  return "?";
}

template <class S>
NullspaceT<S> trace_nullspace(const EnsembleT<S>& e, double rel_tol) {
  const Eigen::Index d = e.dim();
  const Eigen::Index m = herm_coord_dim(field_of<S>, d);
  Eigen::MatrixXd constraints(e.size(), m);
  for (int j = 0; j < e.size(); ++j) constraints.row(j) = herm_to_coords(e.matrix(j));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(constraints, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv[0] : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (smax > 0.0 && sv[i] > rel_tol * smax) ++rank;
  NullspaceT<S> out;
  out.basis.reserve(static_cast<size_t>(m - rank));
  for (Eigen::Index i = rank; i < m; ++i)
    out.basis.push_back(coords_to_herm<S>(svd.matrixV().col(i), d));
  return out;
}

template <class S>
EigenSignClass classify_eigen_signs(const Mat<S>& q, double rel_tol) {
  Eigen::SelfAdjointEigenSolver<Mat<S>> es(q, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = es.eigenvalues();
  const double lmax = ev.cwiseAbs().maxCoeff();
  if (lmax <= 0.0) throw InputError("classify_eigen_signs: zero matrix");
  int pos = 0, neg = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i]) <= rel_tol * lmax) continue;
    (ev[i] > 0 ? pos : neg)++;
  }
  const int nonzero = pos + neg;
  if (nonzero >= 3) return EigenSignClass::RankGe3;
  if (nonzero == 2 && (pos == 2 || neg == 2)) return EigenSignClass::DefiniteRank2OrLess;
  return EigenSignClass::IndefiniteOrRank1;
}

template <class S>
WitnessT<S> witness_from_nullspace(const Mat<S>& q, double rel_tol) {
  Eigen::SelfAdjointEigenSolver<Mat<S>> es(q);
  const Eigen::VectorXd ev = es.eigenvalues();
  const double lmax = ev.cwiseAbs().maxCoeff();
  if (lmax <= 0.0) throw InputError("witness_from_nullspace: zero matrix");
  std::vector<Eigen::Index> nonzero;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (std::abs(ev[i]) > rel_tol * lmax) nonzero.push_back(i);
  WitnessT<S> w;
  if (nonzero.size() == 1) {
    // Q = +-xx^*: x collides with the zero signal.
    const Eigen::Index i = nonzero.front();
    w.x = std::sqrt(std::abs(ev[i])) * es.eigenvectors().col(i);
    w.y = Vec<S>::Zero(q.rows());
    return w;
  }
  if (nonzero.size() == 2) {
    Eigen::Index ip = nonzero[0], in = nonzero[1];
    if (ev[ip] < ev[in]) std::swap(ip, in);
    if (ev[ip] > 0.0 && ev[in] < 0.0) {
      w.x = std::sqrt(ev[ip]) * es.eigenvectors().col(ip);
      w.y = std::sqrt(-ev[in]) * es.eigenvectors().col(in);
      return w;
    }
  }
  throw InputError("witness_from_nullspace: matrix is not in the witness class");
}

template <class S>
Eigen::MatrixXd measurement_jacobian(const EnsembleT<S>& e, const Vec<S>& x) {
  if (x.size() != e.dim()) throw InputError("measurement_jacobian: dimension mismatch");
  const auto pack = kernels::PackedQuadMap::from(e);
  Eigen::VectorXd xs;
  if constexpr (field_of<S> == Field::Real)
    xs = x;
  else
    xs = stack_real(x);
  return 2.0 * kernels::matvec_columns(pack, xs).transpose();
}

template <class S>
Eigen::VectorXd jacobian_singular_values(const EnsembleT<S>& e, const Vec<S>& x) {
  if (x.norm() <= 0.0) throw InputError("jacobian_singular_values: zero signal");
  const Vec<S> xhat = x / x.norm();
  const Eigen::MatrixXd jac = measurement_jacobian(e, xhat);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
  Eigen::VectorXd padded = Eigen::VectorXd::Zero(jac.cols());
  padded.head(svd.singularValues().size()) = svd.singularValues();
  return padded;
}

template <class S>
double jacobian_min_sv(const EnsembleT<S>& e, const Vec<S>& x) {
  const Eigen::VectorXd sv = jacobian_singular_values(e, x);
  if constexpr (field_of<S> == Field::Real)
    return sv[sv.size() - 1];  // sigma_d
  else
    return sv[sv.size() - 2];  // sigma_{2d-1}; sigma_{2d} is the phase direction
}

template <class S>
bool verify_witness(const EnsembleT<S>& e, const Vec<S>& x, const Vec<S>& y, double tol) {
  const Measurements mx = measure(e, x);
  const Measurements my = measure(e, y);
  const double gap = (mx - my).template lpNorm<Eigen::Infinity>();
  if (gap > tol * std::max(1.0, mx.template lpNorm<Eigen::Infinity>())) return false;
  const double sep = quotient_distance<S>(x, y);
  return sep >= 1e-3 * (x.norm() + y.norm() + 1.0);
}

// ---------------------------------------------------------------------------
// Collision search machinery. All arithmetic runs on the stacked real
// parameterization through the kernel pack; the two halves of z are the
// stacked coordinates of x and y.
// ---------------------------------------------------------------------------

namespace {

double stacked_qdist(Field f, const Eigen::VectorXd& xs, const Eigen::VectorXd& ys) {
  if (f == Field::Real) return std::min((xs - ys).norm(), (xs + ys).norm());
  const Eigen::Index d = xs.size() / 2;
  const double re = xs.dot(ys);
  const double im = xs.head(d).dot(ys.tail(d)) - xs.tail(d).dot(ys.head(d));
  const double s = std::hypot(re, im);
  return std::sqrt(std::max(0.0, xs.squaredNorm() + ys.squaredNorm() - 2.0 * s));
}

// Gradient of the quotient distance in stacked coordinates; false when
// the distance is (numerically) zero and no direction is defined.
bool stacked_qdist_grad(Field f, const Eigen::VectorXd& xs, const Eigen::VectorXd& ys,
                        Eigen::VectorXd* gx, Eigen::VectorXd* gy) {
  const double qd = stacked_qdist(f, xs, ys);
  if (qd <= 1e-12) return false;
  if (f == Field::Real) {
    if ((xs - ys).norm() <= (xs + ys).norm()) {
      *gx = (xs - ys) / qd;
      *gy = -*gx;
    } else {
      *gx = (xs + ys) / qd;
      *gy = *gx;
    }
    return true;
  }
  const Eigen::Index d = xs.size() / 2;
  const double re = xs.dot(ys);
  const double im = xs.head(d).dot(ys.tail(d)) - xs.tail(d).dot(ys.head(d));
  const double s = std::hypot(re, im);
  Eigen::VectorXd ds_dx = Eigen::VectorXd::Zero(2 * d), ds_dy = Eigen::VectorXd::Zero(2 * d);
  if (s > 1e-14) {
    Eigen::VectorXd dim_dx(2 * d), dim_dy(2 * d);
    dim_dx.head(d) = ys.tail(d);
    dim_dx.tail(d) = -ys.head(d);
    dim_dy.head(d) = -xs.tail(d);
    dim_dy.tail(d) = xs.head(d);
    ds_dx = (re * ys + im * dim_dx) / s;
    ds_dy = (re * xs + im * dim_dy) / s;
  }
  *gx = (xs - ds_dx) / qd;
  *gy = (ys - ds_dy) / qd;
  return true;
}

struct PairCandidate {
  Eigen::VectorXd xs, ys;
  double rel_resid = std::numeric_limits<double>::infinity();
  double qdist = 0.0;
};

constexpr double kSeparationMargin = 0.1;  // soft floor on the quotient distance

// Residual vector: N measurement gaps, one scale-gauge row pinning
// |x|^2 + |y|^2 = 2, and a hinge keeping the pair off the phase orbit.
void collision_residual(Field f, const kernels::PackedQuadMap& pack,
                        const Eigen::VectorXd& z, Eigen::VectorXd* r) {
  const int D = pack.dim;
  const Eigen::VectorXd xs = z.head(D), ys = z.tail(D);
  Eigen::VectorXd qx(pack.count), qy(pack.count);
  kernels::quadratic_forms(pack, xs.data(), qx.data());
  kernels::quadratic_forms(pack, ys.data(), qy.data());
  r->resize(pack.count + 2);
  r->head(pack.count) = qx - qy;
  (*r)[pack.count] = xs.squaredNorm() + ys.squaredNorm() - 2.0;
  (*r)[pack.count + 1] = std::max(0.0, kSeparationMargin - stacked_qdist(f, xs, ys));
}

PairCandidate gn_collision_from(Field f, const kernels::PackedQuadMap& pack,
                                Eigen::VectorXd z, int max_iters) {
  const int D = pack.dim;
  const int n = pack.count;
  Eigen::VectorXd r;
  collision_residual(f, pack, z, &r);
  double cost = r.squaredNorm();
  double mu = 1e-3;
  Eigen::MatrixXd jac(n + 2, 2 * D);
  for (int iter = 0; iter < max_iters; ++iter) {
    const Eigen::VectorXd xs = z.head(D), ys = z.tail(D);
    jac.setZero();
    jac.block(0, 0, n, D) = 2.0 * kernels::matvec_columns(pack, xs).transpose();
    jac.block(0, D, n, D) = -2.0 * kernels::matvec_columns(pack, ys).transpose();
    jac.row(n).head(D) = 2.0 * xs.transpose();
    jac.row(n).tail(D) = 2.0 * ys.transpose();
    if (r[n + 1] > 0.0) {
      Eigen::VectorXd gx, gy;
      if (stacked_qdist_grad(f, xs, ys, &gx, &gy)) {
        jac.row(n + 1).head(D) = -gx.transpose();
        jac.row(n + 1).tail(D) = -gy.transpose();
      }
    }
    const Eigen::VectorXd grad = jac.transpose() * r;
    if (grad.norm() <= 1e-15 * std::max(1.0, cost)) break;
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    bool accepted = false;
    for (int tries = 0; tries < 10; ++tries) {
      Eigen::MatrixXd damped = jtj;
      damped.diagonal().array() += mu;
      const Eigen::VectorXd step = damped.ldlt().solve(-grad);
      const Eigen::VectorXd z_new = z + step;
      Eigen::VectorXd r_new;
      collision_residual(f, pack, z_new, &r_new);
      const double cost_new = r_new.squaredNorm();
      if (cost_new < cost) {
        z = z_new;
        r = r_new;
        cost = cost_new;
        mu = std::max(1e-12, mu * 0.5);
        accepted = true;
        break;
      }
      mu *= 4.0;
    }
    if (!accepted) break;
    if (cost <= 1e-30) break;
  }
  PairCandidate out;
  out.xs = z.head(D);
  out.ys = z.tail(D);
  Eigen::VectorXd qx(n), qy(n);
  kernels::quadratic_forms(pack, out.xs.data(), qx.data());
  kernels::quadratic_forms(pack, out.ys.data(), qy.data());
  out.rel_resid = (qx - qy).norm() / std::max(1.0, qx.norm());
  out.qdist = stacked_qdist(f, out.xs, out.ys);
  return out;
}

Eigen::VectorXd random_unit(CounterRng& rng, Eigen::Index n) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.next_gaussian();
  const double norm = v.norm();
  return norm > 0 ? Eigen::VectorXd(v / norm) : Eigen::VectorXd::Unit(n, 0);
}

template <class S>
Vec<S> unstack(const Eigen::VectorXd& xs) {
  if constexpr (field_of<S> == Field::Real)
    return xs;
  else
    return unstack_real(xs);
}

template <class S>
Eigen::VectorXd stack(const Vec<S>& x) {
  if constexpr (field_of<S> == Field::Real)
    return x;
  else
    return stack_real(x);
}

constexpr std::uint64_t kCollisionTag = 0xc0111de0u;
constexpr std::uint64_t kNullQTag = 0x9011aduL;
constexpr std::uint64_t kSampleTag = 0x5a3b1eduL;

}  // namespace

template <class S>
std::optional<CollisionT<S>> collision_search(const EnsembleT<S>& e, int restarts,
                                              std::uint64_t seed, const CertifyConfig& cfg,
                                              double* best_seen) {
  if (restarts < 1) throw InputError("collision_search: need restarts >= 1");
  const auto pack = kernels::PackedQuadMap::from(e);
  constexpr Field f = field_of<S>;
  PairCandidate best;
  for (int r = 0; r < restarts; ++r) {
    CounterRng rng = CounterRng::substream(seed ^ kCollisionTag, static_cast<std::uint64_t>(r));
    Eigen::VectorXd z(2 * pack.dim);
    z.head(pack.dim) = random_unit(rng, pack.dim);
    z.tail(pack.dim) = random_unit(rng, pack.dim);
    PairCandidate cand = gn_collision_from(f, pack, z, cfg.search_iters);
    const bool better = cand.rel_resid < best.rel_resid;
    if (better) best = cand;
  }
  if (best_seen != nullptr) *best_seen = best.rel_resid;
  if (best.rel_resid <= cfg.collision_tol && best.qdist >= 1e-3) {
    CollisionT<S> out;
    out.x = unstack<S>(best.xs);
    out.y = unstack<S>(best.ys);
    out.residual = best.rel_resid;
    return out;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Null-space coefficient search: look for a rank-<=2 element with a
// rank-one or indefinite spectrum inside span{Q_1..Q_m}. Descends the
// tail eigenvalue mass (d >= 3) or the determinant (d = 2) over the unit
// coefficient sphere, then classifies and extracts a collision pair.
// ---------------------------------------------------------------------------

namespace {

template <class S>
Mat<S> combine(const std::vector<Mat<S>>& basis, const Eigen::VectorXd& c) {
  Mat<S> q = Mat<S>::Zero(basis[0].rows(), basis[0].cols());
  for (size_t i = 0; i < basis.size(); ++i) q += c[static_cast<Eigen::Index>(i)] * basis[i];
  return q;
}

// Objective and gradient on the coefficient sphere. For d >= 3 the
// objective is the squared eigenvalue mass beyond the top two (by
// magnitude); for d = 2 it is lambda_1 * lambda_2, negative exactly on
// the indefinite cone.
template <class S>
double witness_objective(const std::vector<Mat<S>>& basis, const Eigen::VectorXd& c,
                         Eigen::VectorXd* grad) {
  const Mat<S> q = combine(basis, c);
  Eigen::SelfAdjointEigenSolver<Mat<S>> es(q);
  const Eigen::VectorXd ev = es.eigenvalues();
  const Eigen::Index d = ev.size();
  const size_t m = basis.size();
  if (grad != nullptr) grad->setZero(static_cast<Eigen::Index>(m));
  auto pair_direction = [&](Eigen::Index k) {
    // d lambda_k / d c_i = v_k^* Q_i v_k
    Eigen::VectorXd dir(static_cast<Eigen::Index>(m));
    const Vec<S> v = es.eigenvectors().col(k);
    for (size_t i = 0; i < m; ++i)
      dir[static_cast<Eigen::Index>(i)] = std::real(v.dot(basis[i] * v));
    return dir;
  };
  if (d == 2) {
    const double value = ev[0] * ev[1];
    if (grad != nullptr) *grad = ev[1] * pair_direction(0) + ev[0] * pair_direction(1);
    return value;
  }
  std::vector<Eigen::Index> order(static_cast<size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) order[static_cast<size_t>(i)] = i;
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index a, Eigen::Index b) { return std::abs(ev[a]) > std::abs(ev[b]); });
  double value = 0.0;
  for (size_t k = 2; k < order.size(); ++k) {
    const Eigen::Index idx = order[k];
    value += ev[idx] * ev[idx];
    if (grad != nullptr) *grad += 2.0 * ev[idx] * pair_direction(idx);
  }
  return value;
}

template <class S>
std::optional<WitnessT<S>> extract_and_polish(const EnsembleT<S>& original, const Mat<S>& q,
                                              const kernels::PackedQuadMap& pack,
                                              const CertifyConfig& cfg) {
  WitnessT<S> w;
  try {
    w = witness_from_nullspace(q, cfg.eigen_rel_tol);
  } catch (const InputError&) {
    return std::nullopt;
  }
  if (verify_witness(original, w.x, w.y, cfg.witness_tol)) return w;
  // The raw eigen-extraction can carry the tail mass of Q; polish the
  // pair through the collision Gauss-Newton before giving up on it.
  Eigen::VectorXd z(2 * pack.dim);
  z.head(pack.dim) = stack<S>(w.x);
  z.tail(pack.dim) = stack<S>(w.y);
  const double energy = z.squaredNorm();
  if (energy > 0) z *= std::sqrt(2.0 / energy);
  const PairCandidate cand =
      gn_collision_from(field_of<S>, pack, z, cfg.search_iters);
  WitnessT<S> polished{unstack<S>(cand.xs), unstack<S>(cand.ys)};
  if (verify_witness(original, polished.x, polished.y, cfg.witness_tol)) return polished;
  return std::nullopt;
}

template <class S>
std::optional<WitnessT<S>> nullspace_witness_search(const EnsembleT<S>& original,
                                                    const NullspaceT<S>& ns,
                                                    const kernels::PackedQuadMap& pack,
                                                    const CertifyConfig& cfg) {
  const int m = ns.dim();
  if (m == 0) return std::nullopt;
  const Eigen::Index d = ns.basis[0].rows();
  for (int restart = 0; restart < cfg.restarts; ++restart) {
    CounterRng rng =
        CounterRng::substream(cfg.seed ^ kNullQTag, static_cast<std::uint64_t>(restart));
    Eigen::VectorXd c = random_unit(rng, m);
    double value = witness_objective(ns.basis, c, nullptr);
    double step = 0.5;
    for (int iter = 0; iter < cfg.search_iters && step > 1e-9; ++iter) {
      Eigen::VectorXd grad;
      value = witness_objective(ns.basis, c, &grad);
      // Project out the radial component; the objective is homogeneous.
      grad -= grad.dot(c) * c;
      if (grad.norm() <= 1e-14) break;
      const Eigen::VectorXd c_try = (c - step * grad).normalized();
      if (witness_objective<S>(ns.basis, c_try, nullptr) < value) {
        c = c_try;
        step *= 1.3;
      } else {
        step *= 0.5;
      }
      if (d == 2 && value < -1e-6) break;  // already safely indefinite
    }
    const Mat<S> q = combine(ns.basis, c);
    EigenSignClass cls;
    try {
      cls = classify_eigen_signs(q, cfg.eigen_rel_tol);
    } catch (const InputError&) {
      continue;
    }
    if (cls != EigenSignClass::IndefiniteOrRank1) continue;
    if (auto w = extract_and_polish(original, q, pack, cfg)) return w;
  }
  return std::nullopt;
}

}  // namespace

template <class S>
CertificateT<S> certify_pr(const EnsembleT<S>& e, const CertifyConfig& cfg) {
  CertificateT<S> cert;
  cert.seed = cfg.seed;
  const int n = e.size();
  const int d = static_cast<int>(e.dim());

  // Thresholded quantities are computed on a copy normalized by the
  // largest Frobenius norm, so the verdict is scale invariant.
  double scale = 0.0;
  for (const auto& a : e.matrices()) scale = std::max(scale, a.mat().norm());
  const EnsembleT<S> en = scale > 0.0 ? e.scaled(1.0 / scale) : e;

  if (cfg.use_bounds_layer && d >= 2) {
    const BoundsReport rep = measurement_bounds(field_of<S>, d);
    if (const auto lb = rep.certified_lower(); lb && n < *lb) {
      cert.verdict = Verdict::CertifiedNotPR;
      cert.decided_by = DecidedBy::Bounds;
      cert.witness_absent = true;  // existence is guaranteed, none is constructed
      return cert;
    }
  }

  const NullspaceT<S> ns = trace_nullspace(en, cfg.null_rel_tol);
  if (ns.dim() == 0) {
    cert.verdict = Verdict::CertifiedPR;
    cert.decided_by = DecidedBy::NullspaceExact;
    return cert;
  }
  if (ns.dim() == 1) {
    const Mat<S>& q = ns.basis[0];
    cert.nullspace_generator = q;
    const EigenSignClass cls = classify_eigen_signs(q, cfg.eigen_rel_tol);
    if (cls != EigenSignClass::IndefiniteOrRank1) {
      // The quantifier runs over rank <= 2 only, so a definite pair or a
      // rank >= 3 generator certifies the property exactly.
      cert.verdict = Verdict::CertifiedPR;
      cert.decided_by = DecidedBy::NullspaceExact;
      return cert;
    }
    const WitnessT<S> w = witness_from_nullspace(q, cfg.eigen_rel_tol);
    if (verify_witness(e, w.x, w.y, cfg.witness_tol)) {
      cert.verdict = Verdict::CertifiedNotPR;
      cert.decided_by = DecidedBy::Witness;
      cert.witness = w;
      return cert;
    }
    // Marginal numerics: fall through to the randomized layer.
  }

  cert.evidence.restarts = cfg.restarts;
  const auto pack = kernels::PackedQuadMap::from(en);

  if (auto w = nullspace_witness_search(e, ns, pack, cfg)) {
    cert.verdict = Verdict::CertifiedNotPR;
    cert.decided_by = DecidedBy::Witness;
    cert.witness = *w;
    return cert;
  }

  double best_seen = std::numeric_limits<double>::infinity();
  const auto col = collision_search(en, cfg.restarts, cfg.seed, cfg, &best_seen);
  cert.evidence.collision_best = best_seen;
  if (col && verify_witness(e, col->x, col->y, cfg.witness_tol)) {
    cert.verdict = Verdict::CertifiedNotPR;
    cert.decided_by = DecidedBy::Witness;
    cert.witness = WitnessT<S>{col->x, col->y};
    return cert;
  }

  double min_sigma = std::numeric_limits<double>::infinity();
  const Eigen::Index rank_index = field_of<S> == Field::Real ? d - 1 : 2 * d - 2;
  for (int i = 0; i < cfg.sphere_samples; ++i) {
    CounterRng rng = CounterRng::substream(cfg.seed ^ kSampleTag, static_cast<std::uint64_t>(i));
    const Eigen::VectorXd xs = random_unit(rng, pack.dim);
    const Eigen::MatrixXd jac = 2.0 * kernels::matvec_columns(pack, xs).transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
    Eigen::VectorXd padded = Eigen::VectorXd::Zero(pack.dim);
    padded.head(svd.singularValues().size()) = svd.singularValues();
    min_sigma = std::min(min_sigma, padded[rank_index]);
  }
  cert.evidence.min_sigma_jacobian = min_sigma;
  cert.decided_by = DecidedBy::Randomized;
  cert.verdict =
      min_sigma > cfg.jacobian_evidence_tol ? Verdict::LikelyPR : Verdict::Inconclusive;
  return cert;
}

AnyCertificate certify_pr_any(const AnyEnsemble& e, const CertifyConfig& cfg) {
  return std::visit([&](const auto& v) -> AnyCertificate { return certify_pr(v, cfg); }, e);
}

NonsingularityResult bilinear_nonsingularity(const std::vector<Eigen::MatrixXd>& mats,
                                             int restarts, std::uint64_t seed) {
  if (mats.empty()) throw InputError("bilinear_nonsingularity: need at least one matrix");
  if (restarts < 1) throw InputError("bilinear_nonsingularity: need restarts >= 1");
  const Eigen::Index p = mats.front().rows();
  const Eigen::Index q = mats.front().cols();
  for (const auto& b : mats)
    if (b.rows() != p || b.cols() != q)
      throw InputError("bilinear_nonsingularity: inconsistent shapes");
  const int n = static_cast<int>(mats.size());

  // Verdicts are computed on unit-Frobenius copies so they are scale free.
  std::vector<Eigen::MatrixXd> bs(mats.begin(), mats.end());
  for (auto& b : bs) {
    const double f = b.norm();
    if (f > 0) b /= f;
  }

  NonsingularityResult out;
  out.restarts = restarts;
  auto residual = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    Eigen::VectorXd r(n);
    for (int j = 0; j < n; ++j) r[j] = x.dot(bs[static_cast<size_t>(j)] * y);
    return r;
  };

  for (int restart = 0; restart < restarts; ++restart) {
    CounterRng rng = CounterRng::substream(seed, static_cast<std::uint64_t>(restart));
    Eigen::VectorXd x = random_unit(rng, p), y = random_unit(rng, q);
    Eigen::VectorXd r = residual(x, y);
    double cost = r.squaredNorm();
    double mu = 1e-3;
    for (int iter = 0; iter < 120; ++iter) {
      Eigen::MatrixXd jac(n, p + q);
      for (int j = 0; j < n; ++j) {
        jac.row(j).head(p) = (bs[static_cast<size_t>(j)] * y).transpose();
        jac.row(j).tail(q) = (bs[static_cast<size_t>(j)].transpose() * x).transpose();
      }
      const Eigen::VectorXd grad = jac.transpose() * r;
      if (grad.norm() <= 1e-16) break;
      const Eigen::MatrixXd jtj = jac.transpose() * jac;
      bool accepted = false;
      for (int tries = 0; tries < 10; ++tries) {
        Eigen::MatrixXd damped = jtj;
        damped.diagonal().array() += mu;
        const Eigen::VectorXd step = damped.ldlt().solve(-grad);
        Eigen::VectorXd x_new = x + step.head(p);
        Eigen::VectorXd y_new = y + step.tail(q);
        const double nx = x_new.norm(), ny = y_new.norm();
        if (nx <= 1e-12 || ny <= 1e-12) {
          mu *= 4.0;
          continue;
        }
        x_new /= nx;
        y_new /= ny;
        const Eigen::VectorXd r_new = residual(x_new, y_new);
        if (r_new.squaredNorm() < cost) {
          x = x_new;
          y = y_new;
          r = r_new;
          cost = r.squaredNorm();
          mu = std::max(1e-12, mu * 0.5);
          accepted = true;
          break;
        }
        mu *= 4.0;
      }
      if (!accepted || cost <= 1e-32) break;
    }
    const double found = std::sqrt(cost);
    if (found < out.min_residual) {
      out.min_residual = found;
      out.x = x;
      out.y = y;
    }
    if (found <= 1e-14) break;  // converged to an exact zero
  }

  if (out.min_residual <= 1e-10) {
    // Re-verify by direct evaluation before claiming singularity.
    double direct = 0.0;
    for (const auto& b : bs) direct = std::max(direct, std::abs(out.x.dot(b * out.y)));
    out.singular = direct <= 1e-9;
  }
  return out;
}

// Explicit instantiations for the two fields.
template NullspaceT<double> trace_nullspace(const RealEnsemble&, double);
template NullspaceT<Complex> trace_nullspace(const CplxEnsemble&, double);
template EigenSignClass classify_eigen_signs(const RealMat&, double);
template EigenSignClass classify_eigen_signs(const CplxMat&, double);
template WitnessT<double> witness_from_nullspace(const RealMat&, double);
template WitnessT<Complex> witness_from_nullspace(const CplxMat&, double);
template Eigen::MatrixXd measurement_jacobian(const RealEnsemble&, const RealVec&);
template Eigen::MatrixXd measurement_jacobian(const CplxEnsemble&, const CplxVec&);
template Eigen::VectorXd jacobian_singular_values(const RealEnsemble&, const RealVec&);
template Eigen::VectorXd jacobian_singular_values(const CplxEnsemble&, const CplxVec&);
template double jacobian_min_sv(const RealEnsemble&, const RealVec&);
template double jacobian_min_sv(const CplxEnsemble&, const CplxVec&);
template bool verify_witness(const RealEnsemble&, const RealVec&, const RealVec&, double);
template bool verify_witness(const CplxEnsemble&, const CplxVec&, const CplxVec&, double);
template std::optional<CollisionT<double>> collision_search(const RealEnsemble&, int,
                                                            std::uint64_t,
                                                            const CertifyConfig&, double*);
template std::optional<CollisionT<Complex>> collision_search(const CplxEnsemble&, int,
                                                             std::uint64_t,
                                                             const CertifyConfig&, double*);
template CertificateT<double> certify_pr(const RealEnsemble&, const CertifyConfig&);
template CertificateT<Complex> certify_pr(const CplxEnsemble&, const CertifyConfig&);

}  // namespace gpr
