#pragma once

#include "azumaya/matalg/algebra.hpp"

#include <numeric>
#include <string>
#include <vector>

namespace azumaya::invariants {

using matalg::Complex;
using matalg::ComplexMatrix;
using matalg::StarHom;
using matalg::UnitaryMatrix;

/// Consecutive samples must be closer than this in projective operator-norm
/// distance; coarser loops are rejected rather than guessed.
inline constexpr double kMaxSampleStep = 0.5;

/// Minimum |tr(s*·v)|/size accepted when phase-aligning consecutive samples.
inline constexpr double kMinAlignment = 0.5;

/// An element of ℤ/k.
struct LoopClass {
  std::int64_t modulus = 1;
  std::int64_t value = 0;

  friend bool operator==(const LoopClass&, const LoopClass&) = default;
};

inline LoopClass make_class(std::int64_t modulus, std::int64_t raw) {
  std::int64_t v = raw % modulus;
  return {modulus, v < 0 ? v + modulus : v};
}

/// A sampled loop over the equator of S², either in PU(k) (unitary
/// representatives modulo phase) or in the frame space of unital
/// embeddings M_k → M_{kl}. Samples include both endpoints.
class ClutchingLoop {
public:
  enum class Variant { Unitary, Embedding };

  static ClutchingLoop unitary(std::vector<ComplexMatrix> samples, const ToleranceConfig& cfg = {}) {
    ClutchingLoop loop;
    loop.variant_ = Variant::Unitary;
    if (samples.size() < 2) throw InputError("loop: need at least two samples");
    loop.k_ = static_cast<int>(samples.front().rows());
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (samples[i].rows() != loop.k_ || samples[i].cols() != loop.k_)
        throw InputError("loop: sample " + std::to_string(i) + " has wrong size");
      double r = matalg::unitarity_residual(samples[i]);
      if (!(r <= cfg.abs_tol))
        throw InputError("loop: sample " + std::to_string(i) + " is not unitary, residual " +
                         std::to_string(r));
    }
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
      double d = matalg::projective_distance(samples[i + 1], samples[i]);
      if (!(d < kMaxSampleStep))
        throw InputError("loop: sampling too coarse between samples " + std::to_string(i) +
                         " and " + std::to_string(i + 1) + " (distance " + std::to_string(d) + ")");
    }
    auto closure = matalg::projective_compare(samples.back(), samples.front(), cfg);
    if (!closure.equal)
      throw InputError("loop: endpoints are not projectively equal (residual " +
                       std::to_string(closure.residual) + ")");
    loop.unitaries_ = std::move(samples);
    return loop;
  }

  static ClutchingLoop embedding(std::vector<StarHom> samples, const ToleranceConfig& cfg = {}) {
    ClutchingLoop loop;
    loop.variant_ = Variant::Embedding;
    if (samples.size() < 2) throw InputError("loop: need at least two samples");
    loop.k_ = samples.front().k();
    loop.n_ = samples.front().n();
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (samples[i].k() != loop.k_ || samples[i].n() != loop.n_)
        throw InputError("loop: sample " + std::to_string(i) + " has wrong shape");
      auto rep = matalg::verify_star_hom(samples[i], cfg);
      if (!rep.pass)
        throw InputError("loop: sample " + std::to_string(i) + " is not a *-homomorphism (" +
                         rep.worst_relation + ")");
    }
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
      double d = 0.0;
      for (std::size_t u = 0; u < samples[i].units().size(); ++u)
        d = std::max(d, matalg::operator_norm(samples[i + 1].units()[u] - samples[i].units()[u]));
      if (!(d < kMaxSampleStep))
        throw InputError("loop: sampling too coarse between samples " + std::to_string(i) +
                         " and " + std::to_string(i + 1) + " (distance " + std::to_string(d) + ")");
    }
    double closure = matalg::unit_distance(samples.back(), samples.front());
    if (!(closure <= cfg.abs_tol))
      throw InputError("loop: endpoints differ (residual " + std::to_string(closure) + ")");
    loop.embeddings_ = std::move(samples);
    return loop;
  }

  Variant variant() const { return variant_; }
  int k() const { return k_; }
  /// Ambient size of the embedding variant.
  int n() const { return n_; }
  std::size_t size() const {
    return variant_ == Variant::Unitary ? unitaries_.size() : embeddings_.size();
  }
  const std::vector<ComplexMatrix>& unitaries() const { return unitaries_; }
  const std::vector<StarHom>& embeddings() const { return embeddings_; }

private:
  Variant variant_ = Variant::Unitary;
  int k_ = 0;
  int n_ = 0;
  std::vector<ComplexMatrix> unitaries_;
  std::vector<StarHom> embeddings_;
};

/// Continuation lift of a PU(k) loop to SU(k).
///
/// s_0 = su_normalize(sample_0); each later sample is phase-aligned to
/// maximise Re tr(s_i*·s_{i+1}) and pushed into SU(k) with the root of its
/// determinant nearest 1. The endpoint satisfies s_N = e^{2πim/k}·s_0 and
/// the class is m mod k. With this orientation the projected loop
/// diag(e^{2πit}, 1, …, 1) has class k−1, i.e. minus its determinant
/// winding.
inline LoopClass pu_loop_class(const ClutchingLoop& loop, const ToleranceConfig& cfg) {
  if (loop.variant() != ClutchingLoop::Variant::Unitary)
    throw InputError("pu_loop_class: expects a loop of unitaries");
  const int k = loop.k();
  const auto& samples = loop.unitaries();
  ComplexMatrix s0 = matalg::su_normalize(UnitaryMatrix::trusted(samples.front())).matrix();
  ComplexMatrix s = s0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    Complex tr = (s.adjoint() * samples[i]).trace();
    if (!(std::abs(tr) / k >= kMinAlignment))
      throw InputError("pu_loop_class: sampling too coarse at sample " + std::to_string(i));
    ComplexMatrix v = std::polar(1.0, -std::arg(tr)) * samples[i];
    s = matalg::su_normalize(UnitaryMatrix::trusted(v)).matrix();
  }
  Complex zeta = (s0.adjoint() * s).trace() / static_cast<double>(k);
  double turns = std::arg(zeta) * k / matalg::kTwoPi;
  double rounded = std::round(turns);
  if (!(std::abs(turns - rounded) < 0.25) || !(std::abs(std::abs(zeta) - 1.0) < 1e-6))
    throw NumericalError("pu_loop_class: endpoint is not a k-th root of unity times the start");
  return make_class(k, static_cast<std::int64_t>(rounded));
}

inline std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  std::int64_t t = 0, nt = 1, r = m, nr = ((a % m) + m) % m;
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::tie(t, nt) = std::make_tuple(nt, t - q * nt);
    std::tie(r, nr) = std::make_tuple(nr, r - q * nr);
  }
  if (r != 1) throw InputError("mod_inverse: not invertible");
  return t < 0 ? t + m : t;
}

/// ℤ/k class of a loop of embeddings φ_t: M_k → M_{kl}, gcd(k, l) = 1.
///
/// Transport: u_0 = I and u_i ∈ SU(kl) with φ_i = Ad(u_i)∘φ_0, obtained from
/// noether_skolem and then aligned to u_{i−1} by the best unitary of the
/// commutant of φ_0 (so the path is continuous). At the end u_N commutes with
/// φ_0, i.e. u_N = V(I_k⊗v)V* in φ_0's multiplicity coordinates, and
/// det v = e^{2πij/k}. Closing the path inside I_k⊗U(l) changes the
/// determinant winding by multiples of k, so j is the image of the loop in
/// π₁ ≅ ℤ/k. The class reported is j·l⁻¹ mod k, the normalization under which
/// Ad(g_t⊗I)∘ι₀ has the same class as the PU loop g.
inline LoopClass frame_loop_class(const ClutchingLoop& loop, const ToleranceConfig& cfg) {
  if (loop.variant() != ClutchingLoop::Variant::Embedding)
    throw InputError("frame_loop_class: expects a loop of embeddings");
  const auto& samples = loop.embeddings();
  const int k = loop.k();
  const int n = loop.n();
  const int l = n / k;
  if (std::gcd(k, l) != 1)
    throw InputError("frame_loop_class: requires gcd(k, l) = 1, got k=" + std::to_string(k) +
                     ", l=" + std::to_string(l));
  if (k == 1) return {1, 0};

  const StarHom& phi0 = samples.front();
  const ComplexMatrix v0 = matalg::decompose_hom(phi0, cfg).isometry.matrix();

  // Partial trace over the M_k factor of V0*·X·V0.
  auto commutant_block = [&](const ComplexMatrix& x) {
    ComplexMatrix m = v0.adjoint() * x * v0;
    ComplexMatrix a = ComplexMatrix::Zero(l, l);
    for (int b = 0; b < k; ++b) a += m.block(b * l, b * l, l, l);
    return a;
  };

  ComplexMatrix u = matalg::identity(n);
  for (std::size_t i = 1; i < samples.size(); ++i) {
    auto ns = matalg::noether_skolem(phi0, samples[i], cfg.with_seed(derive_seed(cfg.rng_seed, i)));
    const ComplexMatrix& w = ns.unitary.matrix();
    // Best c in the commutant of φ_0: maximise Re tr(u*·w·c).
    ComplexMatrix a = commutant_block(u.adjoint() * w);
    Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    ComplexMatrix x = svd.matrixV() * svd.matrixU().adjoint();
    ComplexMatrix next = w * v0 * matalg::kron(matalg::identity(k), x) * v0.adjoint();
    Complex tr = (u.adjoint() * next).trace();
    if (!(std::abs(tr) / n >= kMinAlignment))
      throw InputError("frame_loop_class: sampling too coarse at sample " + std::to_string(i));
    u = matalg::su_normalize(UnitaryMatrix::trusted(next)).matrix();
    double res = matalg::conjugation_residual(phi0, samples[i], u);
    if (!(res <= 10.0 * cfg.abs_tol))
      throw NumericalError("frame_loop_class: transport residual " + std::to_string(res) +
                           " at sample " + std::to_string(i));
  }

  ComplexMatrix v = commutant_block(u) / static_cast<double>(k);
  Complex det = v.determinant();
  double turns = std::arg(det) * k / matalg::kTwoPi;
  double rounded = std::round(turns);
  if (!(std::abs(turns - rounded) < 0.25) || !(std::abs(std::abs(det) - 1.0) < 1e-6))
    throw NumericalError("frame_loop_class: transport endpoint does not close in the commutant");
  std::int64_t j = static_cast<std::int64_t>(rounded);
  return make_class(k, j * mod_inverse(l, k));
}

/// Class of either loop variant, and whether the clutched bundle over S²
/// admits a central embedding into a trivial bundle (class 0).
struct Embeddability {
  bool embeddable = false;
  LoopClass loop_class;
};

inline Embeddability s2_embeddability(const ClutchingLoop& loop, const ToleranceConfig& cfg) {
  LoopClass c = loop.variant() == ClutchingLoop::Variant::Unitary ? pu_loop_class(loop, cfg)
                                                                  : frame_loop_class(loop, cfg);
  return {c.value == 0, c};
}

// Loop algebra ------------------------------------------------------------

inline ClutchingLoop reversed(const ClutchingLoop& loop, const ToleranceConfig& cfg = {}) {
  if (loop.variant() == ClutchingLoop::Variant::Unitary) {
    std::vector<ComplexMatrix> s(loop.unitaries().rbegin(), loop.unitaries().rend());
    return ClutchingLoop::unitary(std::move(s), cfg);
  }
  std::vector<StarHom> s(loop.embeddings().rbegin(), loop.embeddings().rend());
  return ClutchingLoop::embedding(std::move(s), cfg);
}

/// a followed by b; a's last sample must match b's first.
inline ClutchingLoop concatenate(const ClutchingLoop& a, const ClutchingLoop& b,
                                 const ToleranceConfig& cfg = {}) {
  if (a.variant() != b.variant()) throw InputError("concatenate: loop variants differ");
  if (a.variant() == ClutchingLoop::Variant::Unitary) {
    if (!matalg::projective_compare(a.unitaries().back(), b.unitaries().front(), cfg).equal)
      throw InputError("concatenate: loops do not share a basepoint");
    std::vector<ComplexMatrix> s = a.unitaries();
    s.insert(s.end(), b.unitaries().begin() + 1, b.unitaries().end());
    return ClutchingLoop::unitary(std::move(s), cfg);
  }
  if (!(matalg::unit_distance(a.embeddings().back(), b.embeddings().front()) <= cfg.abs_tol))
    throw InputError("concatenate: loops do not share a basepoint");
  std::vector<StarHom> s = a.embeddings();
  s.insert(s.end(), b.embeddings().begin() + 1, b.embeddings().end());
  return ClutchingLoop::embedding(std::move(s), cfg);
}

inline ClutchingLoop power(const ClutchingLoop& a, int times, const ToleranceConfig& cfg = {}) {
  if (times < 1) throw InputError("power: exponent must be >= 1");
  ClutchingLoop out = a;
  for (int i = 1; i < times; ++i) out = concatenate(out, a, cfg);
  return out;
}

/// Starts the loop at sample r instead of 0.
inline ClutchingLoop rotated(const ClutchingLoop& loop, std::size_t r, const ToleranceConfig& cfg = {}) {
  const std::size_t last = loop.size() - 1;
  r %= last;
  if (loop.variant() == ClutchingLoop::Variant::Unitary) {
    const auto& u = loop.unitaries();
    std::vector<ComplexMatrix> s(u.begin() + static_cast<std::ptrdiff_t>(r), u.end() - 1);
    s.insert(s.end(), u.begin(), u.begin() + static_cast<std::ptrdiff_t>(r) + 1);
    return ClutchingLoop::unitary(std::move(s), cfg);
  }
  const auto& u = loop.embeddings();
  std::vector<StarHom> s(u.begin() + static_cast<std::ptrdiff_t>(r), u.end() - 1);
  s.insert(s.end(), u.begin(), u.begin() + static_cast<std::ptrdiff_t>(r) + 1);
  return ClutchingLoop::embedding(std::move(s), cfg);
}

/// Resamples a unitary loop to `count` samples by piecewise geodesic
/// interpolation in PU(k).
inline ClutchingLoop resample(const ClutchingLoop& loop, std::size_t count,
                              const ToleranceConfig& cfg = {}) {
  if (loop.variant() != ClutchingLoop::Variant::Unitary)
    throw InputError("resample: expects a loop of unitaries");
  if (count < 2) throw InputError("resample: need at least two samples");
  const auto& u = loop.unitaries();
  const double segments = static_cast<double>(u.size() - 1);
  std::vector<ComplexMatrix> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    double pos = segments * static_cast<double>(j) / static_cast<double>(count - 1);
    auto i = static_cast<std::size_t>(std::floor(pos));
    if (i >= u.size() - 1) {
      out.push_back(u.back());
      continue;
    }
    double frac = pos - static_cast<double>(i);
    ComplexMatrix step = u[i].adjoint() * u[i + 1];
    step *= std::polar(1.0, -std::arg(step.trace()));
    ComplexMatrix h = matalg::unitary_log(UnitaryMatrix::trusted(step));
    out.push_back(u[i] * matalg::exp_i_hermitian(frac * h).matrix());
  }
  return ClutchingLoop::unitary(std::move(out), cfg);
}

/// Pointwise Kronecker product f_t⊗g_t; loops of different lengths are
/// first resampled to the longer one.
inline ClutchingLoop tensor_loops(const ClutchingLoop& f, const ClutchingLoop& g,
                                  const ToleranceConfig& cfg = {}) {
  if (f.variant() != ClutchingLoop::Variant::Unitary || g.variant() != ClutchingLoop::Variant::Unitary)
    throw InputError("tensor_loops: expects loops of unitaries");
  const std::size_t count = std::max(f.size(), g.size());
  ClutchingLoop fr = f.size() == count ? f : resample(f, count, cfg);
  ClutchingLoop gr = g.size() == count ? g : resample(g, count, cfg);
  std::vector<ComplexMatrix> s;
  s.reserve(count);
  for (std::size_t i = 0; i < count; ++i) s.push_back(matalg::kron(fr.unitaries()[i], gr.unitaries()[i]));
  return ClutchingLoop::unitary(std::move(s), cfg);
}

// Loop builders ------------------------------------------------------------

/// diag(e^{2πi·w_1·t}, …, e^{2πi·w_k·t}) for t = i/segments, i = 0..segments.
inline ClutchingLoop diagonal_phase_loop(const std::vector<int>& windings, std::size_t segments) {
  const auto k = static_cast<Eigen::Index>(windings.size());
  std::vector<ComplexMatrix> s;
  for (std::size_t i = 0; i <= segments; ++i) {
    double t = static_cast<double>(i) / static_cast<double>(segments);
    ComplexMatrix d = ComplexMatrix::Zero(k, k);
    for (Eigen::Index j = 0; j < k; ++j)
      d(j, j) = std::polar(1.0, matalg::kTwoPi * windings[static_cast<std::size_t>(j)] * t);
    s.push_back(d);
  }
  return ClutchingLoop::unitary(std::move(s));
}

/// The projection of diag(e^{2πit}, 1, …, 1) to PU(k).
inline ClutchingLoop generator_loop(int k, std::size_t segments) {
  std::vector<int> w(static_cast<std::size_t>(k), 0);
  w[0] = 1;
  return diagonal_phase_loop(w, segments);
}

inline ClutchingLoop constant_loop(const ComplexMatrix& u, std::size_t segments) {
  return ClutchingLoop::unitary(std::vector<ComplexMatrix>(segments + 1, u));
}

/// W·diag(e^{2πi·w_j·t})·W*·exp(i·sin(2πt)·H)·e^{iθ_t}: a Haar-conjugated
/// diagonal loop times a contractible wiggle, with an independent random
/// global phase per sample. Determinant winding Σ w_j.
inline ClutchingLoop random_loop(const std::vector<int>& windings, std::size_t segments,
                                 std::uint64_t seed, double wiggle = 0.4) {
  const auto k = static_cast<Eigen::Index>(windings.size());
  Rng rng(seed);
  ComplexMatrix w = matalg::haar_unitary(k, rng).matrix();
  ComplexMatrix h = matalg::random_hermitian(k, rng);
  h *= wiggle / std::max(1e-12, matalg::operator_norm(h));
  std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
  std::vector<ComplexMatrix> s;
  for (std::size_t i = 0; i <= segments; ++i) {
    double t = static_cast<double>(i) / static_cast<double>(segments);
    ComplexMatrix d = ComplexMatrix::Zero(k, k);
    for (Eigen::Index j = 0; j < k; ++j)
      d(j, j) = std::polar(1.0, matalg::kTwoPi * windings[static_cast<std::size_t>(j)] * t);
    ComplexMatrix wig = matalg::exp_i_hermitian(std::sin(matalg::kTwoPi * t) * h).matrix();
    s.push_back(std::polar(1.0, phase(rng)) * w * d * w.adjoint() * wig);
  }
  return ClutchingLoop::unitary(std::move(s));
}

/// t ↦ Ad(W·(g_t⊗I_l))∘ι₀ with ι₀ the standard embedding.
inline ClutchingLoop embedding_loop(const ClutchingLoop& g, int l,
                                    const ComplexMatrix& frame = ComplexMatrix(),
                                    const ToleranceConfig& cfg = {}) {
  if (g.variant() != ClutchingLoop::Variant::Unitary)
    throw InputError("embedding_loop: expects a loop of unitaries");
  const int k = g.k();
  const StarHom base = matalg::standard_embedding(k, l);
  const ComplexMatrix w = frame.size() == 0 ? matalg::identity(k * l) : frame;
  std::vector<StarHom> s;
  s.reserve(g.size());
  for (const auto& u : g.unitaries()) s.push_back(base.conjugated(w * matalg::kron(u, matalg::identity(l))));
  return ClutchingLoop::embedding(std::move(s), cfg);
}

} // namespace azumaya::invariants
