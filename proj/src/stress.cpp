#include "emt/stress.hpp"

#include <cmath>
#include <sstream>

namespace emt {

void EnergyConfig::validate() const {
  if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("exponent p must exceed 1");
  if (n < 2 || n > kMaxDim) throw std::invalid_argument("dimension n must lie in [2, 6]");
  if (k < 0 || k > n) throw std::invalid_argument("form degree k must lie in [0, n]");
}

void EnergyConfig::require_standing_assumption() const {
  validate();
  if (!(n > k * p)) {
    std::ostringstream os;
    os << "standing assumption violated: dimension n must exceed kp (n = " << n << ", kp = " << k * p << ")";
    throw std::invalid_argument(os.str());
  }
}

EnergyConfig make_config(double p, int k, int n) {
  EnergyConfig cfg{p, k, n};
  cfg.validate();
  return cfg;
}

void require_matching(const EnergyConfig& cfg, const ModelSpace& space, const BundleForm& psi) {
  cfg.validate();
  if (cfg.n != space.dim()) throw ShapeError("config dimension differs from the space");
  if (cfg.k != psi.degree()) throw ShapeError("config degree differs from the form degree");
  if (psi.dim() != space.dim()) throw ShapeError("form dimension differs from the space");
}

Mat TensorJet::values() const {
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = (*this)(i, j).value();
  return m;
}

Jet energy_density(const EnergyConfig& cfg, const PointGeometry& geo, const FormJet& psi) {
  const Jet n2 = squared_norm(geo, psi);
  if (n2.value() == 0.0) return Jet::constant(geo.n, 0.0);
  return pow(n2, 0.5 * cfg.p) / cfg.p;
}

double energy_density(const EnergyConfig& cfg, const ModelSpace& space, const BundleForm& psi, const ChartPoint& x) {
  require_matching(cfg, space, psi);
  const FormValue v = psi.value(x);
  const double n2 = inner_product(space, x, v, v);
  return std::pow(n2, 0.5 * cfg.p) / cfg.p;
}

TensorJet stress_tensor_jet(const EnergyConfig& cfg, const PointGeometry& geo, const FormJet& psi) {
  const int n = geo.n;
  TensorJet t(n);
  const Jet n2 = squared_norm(geo, psi);
  if (n2.value() == 0.0) {
    if (cfg.p < 2.0) throw SingularWeightError("stress tensor with p < 2 at a zero of psi, point " + format_point(geo.x));
    return t;
  }
  const Jet w = cfg.p == 2.0 ? Jet::constant(n, 1.0) : pow(n2, 0.5 * (cfg.p - 2.0));
  const Jet e = w * n2 / cfg.p;
  const FormJet hat = orthonormal_components(geo, psi);
  const Jet inv_s2 = reciprocal(geo.scale * geo.scale);

  std::vector<FormJet> contracted;
  if (psi.degree > 0)
    for (int a = 0; a < n; ++a) contracted.push_back(interior_axis(a, hat));
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      Jet v = Jet::constant(n, 0.0);
      if (psi.degree > 0) v = w * frame_dot(contracted[a], contracted[b]);
      if (a == b) v -= e;
      v = v * inv_s2;
      t(a, b) = v;
      t(b, a) = v;
    }
  return t;
}

Mat stress_tensor(const EnergyConfig& cfg, const ModelSpace& space, const BundleForm& psi, const ChartPoint& x) {
  require_matching(cfg, space, psi);
  const PointGeometry geo = point_geometry(space, x);
  return stress_tensor_jet(cfg, geo, psi.jet(x)).values();
}

double metric_trace(const ModelSpace& space, const ChartPoint& x, const Mat& t) {
  const double s = space.frame_scale(x);
  return s * s * t.trace();
}

double tensor_inner(const ModelSpace& space, const ChartPoint& x, const Mat& a, const Mat& b) {
  const double s2 = space.frame_scale(x) * space.frame_scale(x);
  return s2 * s2 * (a.array() * b.array()).sum();
}

double metric_variation_residual(const EnergyConfig& cfg, const ModelSpace& space, const BundleForm& psi,
                                 const ChartPoint& x, const Mat& h, double step) {
  require_matching(cfg, space, psi);
  const int n = space.dim();
  if (h.rows() != n || h.cols() != n) throw ShapeError("perturbation must be n x n");
  const Mat hs = 0.5 * (h + h.transpose());
  const MetricJet metric = metric_jet(space, x);
  const FormValue v = psi.value(x);

  auto weighted_energy = [&](double t) {
    const Mat gt = metric.g + t * hs;
    Eigen::LLT<Eigen::MatrixXd> llt(gt);
    if (llt.info() != Eigen::Success) throw PreconditionError("perturbed metric g + t h is not positive definite", x, t);
    const Mat gt_inv = gt.inverse();
    const double n2 = inner_product(gt_inv, v, v);
    const double e = n2 > 0.0 ? std::pow(n2, 0.5 * cfg.p) / cfg.p : 0.0;
    return e * std::sqrt(gt.determinant());
  };
  auto central = [&](double tau) { return (weighted_energy(tau) - weighted_energy(-tau)) / (2.0 * tau); };
  const double derivative = (4.0 * central(0.5 * step) - central(step)) / 3.0;

  const Mat t = stress_tensor(cfg, space, psi, x);
  const double predicted = -0.5 * tensor_inner(space, x, t, hs) * std::sqrt(metric.g.determinant());
  return std::abs(derivative - predicted);
}

Vec covariant_divergence(const PointGeometry& geo, const TensorJet& s) {
  const int n = geo.n;
  Vec out = Vec::Zero(n);
  for (int j = 0; j < n; ++j) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        const double gik = geo.inverse(i, k).value();
        if (gik == 0.0) continue;
        double term = s(k, j).grad(i);
        for (int l = 0; l < n; ++l)
          term -= geo.christoffel(l, i, k).value() * s(l, j).value() + geo.christoffel(l, i, j).value() * s(k, l).value();
        sum += gik * term;
      }
    out[j] = sum;
  }
  return out;
}

Vec div_stress_direct(const EnergyConfig& cfg, const ModelSpace& space, const BundleForm& psi, const ChartPoint& x) {
  require_matching(cfg, space, psi);
  const PointGeometry geo = point_geometry(space, x);
  return covariant_divergence(geo, stress_tensor_jet(cfg, geo, psi.jet(x)));
}

Vec div_stress_identity(const EnergyConfig& cfg, const PointGeometry& geo, std::span<const Jet> conn,
                        const FormJet& psi) {
  const int n = geo.n;
  const int k = psi.degree;
  Vec out = Vec::Zero(n);
  const double n2 = squared_norm(geo, psi).value();
  if (n2 == 0.0) {
    if (cfg.p < 2.0) throw SingularWeightError("stress divergence with p < 2 at a zero of psi, point " + format_point(geo.x));
    return out;
  }
  const double w = cfg.p == 2.0 ? 1.0 : std::pow(n2, 0.5 * (cfg.p - 2.0));
  const double s = geo.scale.value();
  const FormValue hat = values_of(orthonormal_components(geo, psi));

  FormValue delta_hat;
  if (k > 0) {
    delta_hat = values_of(codifferential(geo, conn, weighted_form(geo, psi, cfg.p)));
    delta_hat *= std::pow(s, k - 1);
  }
  FormValue d_hat;
  if (k < n) {
    d_hat = values_of(exterior_covariant_derivative(geo, conn, psi));
    d_hat *= std::pow(s, k + 1);
  }
  for (int j = 0; j < n; ++j) {
    double c = 0.0;
    if (k > 0) c += frame_dot(delta_hat, interior_axis(j, hat));
    if (k < n) c += w * frame_dot(interior_axis(j, d_hat), hat);
    out[j] = -c / s;
  }
  return out;
}

Vec div_stress_identity(const EnergyConfig& cfg, const ModelSpace& space, const ConnectionField& conn,
                        const BundleForm& psi, const ChartPoint& x) {
  require_matching(cfg, space, psi);
  require_compatible(space, conn, psi);
  const PointGeometry geo = point_geometry(space, x);
  const std::vector<Jet> a = conn.is_trivial() ? std::vector<Jet>{} : conn.jets(x);
  return div_stress_identity(cfg, geo, a, psi.jet(x));
}

double covector_norm(const ModelSpace& space, const ChartPoint& x, const Vec& v) {
  return space.frame_scale(x) * v.norm();
}

TensorJet SymTensorField::jet(const ChartPoint& x) const {
  space_.require_in_domain(x);
  const int n = space_.dim();
  TensorJet raw(n);
  const auto xs = coordinate_jets(x);
  fn_(xs, raw.c);
  TensorJet out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = i == j ? raw(i, j) : (raw(i, j) + raw(j, i)) * 0.5;
  return out;
}

std::vector<Jet> VectorField::jet(const ChartPoint& x) const {
  space_.require_in_domain(x);
  std::vector<Jet> out(static_cast<std::size_t>(space_.dim()), Jet::constant(space_.dim(), 0.0));
  const auto xs = coordinate_jets(x);
  fn_(xs, out);
  return out;
}

double contraction_divergence_residual(const ModelSpace& space, const SymTensorField& s, const VectorField& X,
                                       const ChartPoint& x) {
  const int n = space.dim();
  const PointGeometry geo = point_geometry(space, x);
  const TensorJet S = s.jet(x);
  const std::vector<Jet> v = X.jet(x);

  // Covector (i_X S)_j = X^i S_ij and its divergence g^ij (d_i w_j - Gamma^l_ij w_l).
  std::vector<Jet> w(static_cast<std::size_t>(n), Jet::constant(n, 0.0));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) w[j] += v[i] * S(i, j);
  // Lowered X_j = g_jk X^k.
  std::vector<Jet> flat(static_cast<std::size_t>(n), Jet::constant(n, 0.0));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) flat[j] += geo.metric(j, k) * v[k];

  double lhs = 0.0;
  double pairing = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double dw = w[j].grad(i);
      double dflat = flat[j].grad(i);
      for (int l = 0; l < n; ++l) {
        const double gam = geo.christoffel(l, i, j).value();
        dw -= gam * w[l].value();
        dflat -= gam * flat[l].value();
      }
      lhs += geo.inverse(i, j).value() * dw;
      // <S, nabla X^flat>_g = g^ia g^jb S_ab (nabla X^flat)_ij.
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) pairing += geo.inverse(i, a).value() * geo.inverse(j, b).value() * S(a, b).value() * dflat;
    }
  const Vec div_s = covariant_divergence(geo, S);
  double contracted = 0.0;
  for (int j = 0; j < n; ++j) contracted += v[j].value() * div_s[j];
  return std::abs(lhs - pairing - contracted);
}

}  // namespace emt
