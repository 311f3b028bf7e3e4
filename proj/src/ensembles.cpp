#include "gpr/ensembles.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include "gpr/rng.hpp"

namespace gpr {

const char* to_string(GenKind kind) {
  switch (kind) {
    case GenKind::GenericRank: return "generic_rank";
    case GenKind::PsdRank: return "psd_rank";
    case GenKind::Projection: return "projection";
    case GenKind::FrameRank1: return "frame_rank1";
  }
  return "?";
}

GenKind gen_kind_from_string(const std::string& name) {
  if (name == "generic_rank") return GenKind::GenericRank;
  if (name == "psd_rank") return GenKind::PsdRank;
  if (name == "projection") return GenKind::Projection;
  if (name == "frame_rank1") return GenKind::FrameRank1;
  throw InputError("unknown ensemble kind: " + name);
}

GenSpec GenSpec::uniform_rank(int d, int n, Field field, GenKind kind, int rank,
                              std::uint64_t seed) {
  GenSpec s;
  s.d = d;
  s.n = n;
  s.field = field;
  s.kind = kind;
  s.ranks.assign(static_cast<size_t>(n), rank);
  s.seed = seed;
  return s;
}

namespace {

void validate(const GenSpec& spec) {
  if (spec.d < 1) throw InputError("gen: dimension must be positive");
  if (spec.n < 1) throw InputError("gen: need at least one matrix");
  if (static_cast<int>(spec.ranks.size()) != spec.n)
    throw InputError("gen: rank list length must equal n");
  for (int r : spec.ranks) {
    if (r < 1 || r > spec.d) throw InputError("gen: ranks must lie in [1, d]");
    if (spec.kind == GenKind::Projection && r > spec.d - 1)
      throw InputError("gen: projection ranks must lie in [1, d-1]");
    if (spec.kind == GenKind::FrameRank1 && r != 1)
      throw InputError("gen: frame_rank1 requires rank 1");
  }
}

template <class S>
Vec<S> gaussian_vector(CounterRng& rng, int d) {
  Vec<S> v(d);
  for (int i = 0; i < d; ++i) {
    if constexpr (field_of<S> == Field::Real) {
      v[i] = rng.next_gaussian();
    } else {
      constexpr double inv_rt2 = 0.7071067811865475244;
      v[i] = Complex(rng.next_gaussian() * inv_rt2, rng.next_gaussian() * inv_rt2);
    }
  }
  return v;
}

/// Numerical rank must be clean: after Frobenius normalization the r-th
/// singular value stays above 1e-8 and the (r+1)-th below 1e-10.
template <class S>
bool rank_is_clean(const Mat<S>& a, int r) {
  const double f = a.norm();
  if (!(f > 0.0)) return false;
  Eigen::JacobiSVD<Mat<S>> svd((a / f).eval());
  const auto& sv = svd.singularValues();
  if (r > sv.size()) return false;
  if (sv[r - 1] <= 1e-8) return false;
  if (r < sv.size() && sv[r] >= 1e-10) return false;
  return true;
}

template <class S>
Mat<S> draw_matrix(const GenSpec& spec, int j) {
  CounterRng rng = CounterRng::substream(spec.seed, static_cast<std::uint64_t>(j));
  const int d = spec.d;
  const int r = spec.ranks[static_cast<size_t>(j)];
  // A failed rank check (measure-zero event) redraws from the same
  // substream so generation stays a pure function of the spec.
  for (int attempt = 0; attempt < 64; ++attempt) {
    Mat<S> a;
    switch (spec.kind) {
      case GenKind::FrameRank1: {
        const Vec<S> f = gaussian_vector<S>(rng, d);
        a = f * f.adjoint();
        break;
      }
      case GenKind::GenericRank:
      case GenKind::PsdRank: {
        a = Mat<S>::Zero(d, d);
        for (int i = 0; i < r; ++i) {
          const Vec<S> v = gaussian_vector<S>(rng, d);
          double s = std::abs(rng.next_gaussian());
          if (spec.kind == GenKind::GenericRank && rng.next_double() < 0.5) s = -s;
          a += s * (v * v.adjoint());
        }
        break;
      }
      case GenKind::Projection: {
        // Haar-uniform range subspace: orthonormalize a Gaussian d x r
        // block and return U U^*.
        Mat<S> g(d, r);
        for (int c = 0; c < r; ++c) g.col(c) = gaussian_vector<S>(rng, d);
        Eigen::HouseholderQR<Mat<S>> qr(g);
        Mat<S> u = Mat<S>(qr.householderQ()).leftCols(r);
        a = u * u.adjoint();
        break;
      }
    }
    a = 0.5 * (a + Mat<S>(a.adjoint()));
    if (!rank_is_clean(a, r)) continue;
    if (spec.kind != GenKind::Projection) a /= a.norm();
    return a;
  }
  throw std::runtime_error("gen: could not draw a matrix with a clean numerical rank");
}

template <class S>
EnsembleT<S> generate_impl(const GenSpec& spec) {
  validate(spec);
  std::vector<Hermitian<S>> mats;
  mats.reserve(static_cast<size_t>(spec.n));
  for (int j = 0; j < spec.n; ++j) mats.emplace_back(draw_matrix<S>(spec, j));
  EnsembleMeta meta;
  meta.ranks = spec.ranks;
  meta.projectors = spec.kind == GenKind::Projection;
  return EnsembleT<S>(std::move(mats), std::move(meta));
}

}  // namespace

RealEnsemble generate_real(const GenSpec& spec) {
  if (spec.field != Field::Real) throw InputError("generate_real: spec is complex");
  return generate_impl<double>(spec);
}

CplxEnsemble generate_complex(const GenSpec& spec) {
  if (spec.field != Field::Complex) throw InputError("generate_complex: spec is real");
  return generate_impl<Complex>(spec);
}

AnyEnsemble generate(const GenSpec& spec) {
  if (spec.field == Field::Real) return generate_real(spec);
  return generate_complex(spec);
}

CplxEnsemble mc2_ensemble() {
  CplxMat a1(2, 2), a2(2, 2), a3(2, 2);
  a1 << Complex(-1, 0), Complex(-1, 0), Complex(-1, 0), Complex(1, 0);
  a2 << Complex(-1, 0), Complex(-2, -1), Complex(-2, 1), Complex(2, 0);
  a3 << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0);
  std::vector<CplxHermitian> mats;
  mats.emplace_back(std::move(a1));
  mats.emplace_back(std::move(a2));
  mats.emplace_back(std::move(a3));
  return CplxEnsemble(std::move(mats));
}

RealEnsemble squaring_pair_ensemble() {
  RealMat a1(2, 2), a2(2, 2);
  a1 << 1, 0, 0, -1;
  a2 << 0, 1, 1, 0;
  std::vector<RealHermitian> mats;
  mats.emplace_back(std::move(a1));
  mats.emplace_back(std::move(a2));
  return RealEnsemble(std::move(mats));
}

RealEnsemble squaring_triple_ensemble() {
  RealMat id = RealMat::Identity(2, 2);
  RealEnsemble pair = squaring_pair_ensemble();
  std::vector<RealHermitian> mats;
  mats.emplace_back(std::move(id));
  mats.push_back(pair.matrices()[0]);
  mats.push_back(pair.matrices()[1]);
  return RealEnsemble(std::move(mats));
}

}  // namespace gpr
