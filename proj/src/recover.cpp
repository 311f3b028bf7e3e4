#include "gpr/recover.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "gpr/core.hpp"
#include "gpr/herm_coords.hpp"
#include "gpr/kernels.hpp"
#include "gpr/rng.hpp"

namespace gpr {

template <class S>
Hermitian<S> lift_solve(const EnsembleT<S>& e, const Measurements& b) {
  if (b.size() != e.size()) throw InputError("lift_solve: measurement count mismatch");
  const Eigen::Index d = e.dim();
  const Eigen::Index m = herm_coord_dim(field_of<S>, d);
  Eigen::MatrixXd constraints(e.size(), m);
  for (int j = 0; j < e.size(); ++j) constraints.row(j) = herm_to_coords(e.matrix(j));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(constraints, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-12);
  // SVD least squares zeroes the null directions, i.e. picks the
  // minimum-norm minimizer; the chart is a trace isometry, so minimum
  // coordinate norm is minimum Frobenius norm.
  const Eigen::VectorXd coords = svd.solve(b);
  return Hermitian<S>(coords_to_herm<S>(coords, d));
}

template <class S>
SpectralInit<S> spectral_init(const Hermitian<S>& q) {
  Eigen::SelfAdjointEigenSolver<Mat<S>> es(q.mat());
  const Eigen::VectorXd ev = es.eigenvalues();  // ascending
  const Eigen::Index top = ev.size() - 1;
  SpectralInit<S> out;
  const double lead = ev[top];
  if (lead <= 1e-12 * std::max(1e-300, q.mat().norm())) {
    out.x0 = Vec<S>::Zero(q.dim());
    out.degenerate = true;
    return out;
  }
  out.x0 = std::sqrt(lead) * es.eigenvectors().col(top);
  double second = 0.0;
  for (Eigen::Index i = 0; i < top; ++i) second = std::max(second, std::abs(ev[i]));
  out.rank_gap = second / lead;
  return out;
}

template <class S>
RecoveryReportT<S> refine(const EnsembleT<S>& e, const Measurements& b, const Vec<S>& x0,
                          const RecoveryConfig& cfg, std::vector<double>* residual_trace) {
  if (b.size() != e.size()) throw InputError("refine: measurement count mismatch");
  if (x0.size() != e.dim()) throw InputError("refine: start dimension mismatch");
  const auto pack = kernels::PackedQuadMap::from(e);
  const int n = pack.count;
  const double bscale = std::max(1.0, b.norm());

  Eigen::VectorXd xs;
  if constexpr (field_of<S> == Field::Real)
    xs = x0;
  else
    xs = stack_real(x0);

  auto residual = [&](const Eigen::VectorXd& z) {
    Eigen::VectorXd r(n);
    kernels::quadratic_forms(pack, z.data(), r.data());
    r -= b;
    return r;
  };

  Eigen::VectorXd r = residual(xs);
  double rnorm = r.norm();
  if (residual_trace != nullptr) residual_trace->push_back(rnorm / bscale);
  double mu = cfg.damping_init;
  int iters = 0;
  for (; iters < cfg.max_gn_iters && rnorm / bscale > cfg.gn_tol; ++iters) {
    const Eigen::MatrixXd jac = 2.0 * kernels::matvec_columns(pack, xs).transpose();
    const Eigen::VectorXd grad = jac.transpose() * r;
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    bool accepted = false;
    for (int tries = 0; tries < 12; ++tries) {
      Eigen::MatrixXd damped = jtj;
      damped.diagonal().array() += mu;
      const Eigen::VectorXd step = damped.ldlt().solve(-grad);
      const Eigen::VectorXd xs_new = xs + step;
      const Eigen::VectorXd r_new = residual(xs_new);
      if (r_new.norm() < rnorm) {
        xs = xs_new;
        r = r_new;
        rnorm = r.norm();
        mu = std::max(1e-14, mu * cfg.damping_down);
        accepted = true;
        break;
      }
      mu *= cfg.damping_up;
    }
    if (residual_trace != nullptr && accepted) residual_trace->push_back(rnorm / bscale);
    if (!accepted) break;
  }

  RecoveryReportT<S> rep;
  if constexpr (field_of<S> == Field::Real)
    rep.estimate = xs;
  else
    rep.estimate = unstack_real(xs);
  rep.residual = rnorm / bscale;
  rep.iterations = iters;
  rep.converged = rep.residual <= cfg.gn_tol;
  return rep;
}

template <class S>
RecoveryReportT<S> recover(const EnsembleT<S>& e, const Measurements& b,
                           const RecoveryConfig& cfg) {
  const Hermitian<S> lifted = lift_solve(e, b);
  const SpectralInit<S> init = spectral_init(lifted);

  if (init.degenerate && b.cwiseAbs().maxCoeff() <= 1e-14) {
    // Nothing to recover: the zero signal reproduces b.
    RecoveryReportT<S> rep;
    rep.estimate = Vec<S>::Zero(e.dim());
    rep.residual = b.norm() / std::max(1.0, b.norm());
    rep.lifted_rank_gap = init.rank_gap;
    rep.converged = rep.residual <= cfg.gn_tol;
    return rep;
  }

  std::optional<RecoveryReportT<S>> best;
  if (!init.degenerate) {
    best = refine(e, b, init.x0, cfg);
    best->lifted_rank_gap = init.rank_gap;
  }

  if (!best || !best->converged) {
    // The min-norm lift is only a coarse initializer when the lifted
    // system is underdetermined; retry from seeded random starts and keep
    // the best by (residual, start index).
    const double amplitude = std::sqrt(std::max(b.cwiseAbs().maxCoeff(), 1e-8));
    for (int s = 0; s < cfg.random_retries; ++s) {
      CounterRng rng = CounterRng::substream(cfg.seed, static_cast<std::uint64_t>(s));
      Vec<S> start(e.dim());
      for (Eigen::Index i = 0; i < start.size(); ++i) {
        if constexpr (field_of<S> == Field::Real)
          start[i] = rng.next_gaussian();
        else
          start[i] = Complex(rng.next_gaussian(), rng.next_gaussian());
      }
      start *= amplitude / start.norm();
      RecoveryReportT<S> rep = refine(e, b, start, cfg);
      rep.lifted_rank_gap = init.rank_gap;
      if (!best || rep.residual < best->residual) best = rep;
      if (best->converged) break;
    }
  }
  return *best;
}

AnyRecoveryReport recover_any(const AnyEnsemble& e, const Measurements& b,
                              const RecoveryConfig& cfg) {
  return std::visit([&](const auto& v) -> AnyRecoveryReport { return recover(v, b, cfg); }, e);
}

template Hermitian<double> lift_solve(const RealEnsemble&, const Measurements&);
template Hermitian<Complex> lift_solve(const CplxEnsemble&, const Measurements&);
template SpectralInit<double> spectral_init(const RealHermitian&);
template SpectralInit<Complex> spectral_init(const CplxHermitian&);
template RecoveryReportT<double> refine(const RealEnsemble&, const Measurements&,
                                        const RealVec&, const RecoveryConfig&,
                                        std::vector<double>*);
template RecoveryReportT<Complex> refine(const CplxEnsemble&, const Measurements&,
                                         const CplxVec&, const RecoveryConfig&,
                                         std::vector<double>*);
template RecoveryReportT<double> recover(const RealEnsemble&, const Measurements&,
                                         const RecoveryConfig&);
template RecoveryReportT<Complex> recover(const CplxEnsemble&, const Measurements&,
                                          const RecoveryConfig&);

}  // namespace gpr
