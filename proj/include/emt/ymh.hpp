#pragma once

// Yang-Mills-Higgs data: a compact Lie algebra acting on a representation
// space, gauge potentials, curvature, the Higgs pairing and the YMH energy,
// stress tensor, equations and stress divergence.

#include <functional>
#include <span>
#include <vector>

#include "emt/calculus.hpp"
#include "emt/stress.hpp"

namespace emt {

/// Real Lie algebra in an orthonormal basis X_a with [X_b, X_c] = f^a_bc X_a.
struct LieAlgebra {
  int dim = 0;
  std::vector<double> f;  // f^a_bc at [(a * dim + b) * dim + c]

  double structure(int a, int b, int c) const { return f[static_cast<std::size_t>((a * dim + b) * dim + c)]; }

  /// so(3) with f^a_bc = epsilon_abc.
  static LieAlgebra so3();
  /// so(2), one generator, abelian.
  static LieAlgebra so2();
};

/// Infinitesimal action rho'(X_a) on V; each matrix skew-symmetric.
struct LieAlgebraAction {
  LieAlgebra algebra;
  int dim_v = 0;
  std::vector<Mat> rho;

  /// so(3) on R^3, (rho'(X_a))_bc = -epsilon_abc, i.e. rho'(X_a) v = e_a x v.
  static LieAlgebraAction so3_defining();
  /// so(2) on R^2, rho'(X_1) = [[0, -1], [1, 0]].
  static LieAlgebraAction so2_plane();

  /// Throws if a matrix is not skew or the bracket is not represented.
  void validate(double tol = 1e-12) const;
};

/// Gauge potential A = A^c_i dx^i X_c; the component map writes the jet of
/// A^c_i to out[i * dim_g + c].
class GaugePotential {
 public:
  using JetFn = std::function<void(std::span<const Jet>, std::span<Jet>)>;

  GaugePotential(ModelSpace space, LieAlgebra algebra, JetFn fn);
  template <class F>
  static GaugePotential from_generic(const ModelSpace& space, const LieAlgebra& algebra, F f) {
    return GaugePotential(space, algebra, [f](std::span<const Jet> x, std::span<Jet> out) { f(x, out); });
  }
  static GaugePotential zero(const ModelSpace& space, const LieAlgebra& algebra);

  const ModelSpace& space() const { return space_; }
  const LieAlgebra& algebra() const { return algebra_; }
  bool is_zero() const { return !fn_; }
  std::vector<Jet> jets(const ChartPoint& x) const;

  /// ad(A_i) on the adjoint bundle, (ad A_i)_ab = A^c_i f^a_cb.
  ConnectionField adjoint_connection() const;
  /// rho'(A_i) on the representation bundle.
  ConnectionField representation_connection(const LieAlgebraAction& action) const;

 private:
  ModelSpace space_;
  LieAlgebra algebra_;
  JetFn fn_;
};

/// F^a_ij = d_i A^a_j - d_j A^a_i + f^a_bc A^b_i A^c_j from coefficient jets.
FormJet curvature_jet(const LieAlgebra& algebra, int n, std::span<const Jet> a);
FormValue curvature_from_connection(const ModelSpace& space, const GaugePotential& A, const ChartPoint& x);
/// The curvature as an adjoint-valued 2-form field (values and first
/// partials exact).
BundleForm curvature_form(const GaugePotential& A);

/// Potential W with its first two derivatives in closed form.
struct Potential {
  std::function<double(double)> w;
  std::function<double(double)> dw;
  std::function<double(double)> d2w;

  /// W(s) = (s - 1)^2 / 4.
  static Potential quartic();
  Jet operator()(const Jet& s) const { return s.compose(w(s.value()), dw(s.value()), d2w(s.value())); }
};

/// (e1 (.) e2)^a_I = <rho'(X_a) e1, (e2)_I>.
FormValue odot(const LieAlgebraAction& action, const Vec& e1, const FormValue& e2);
FormJet odot(const LieAlgebraAction& action, std::span<const Jet> e1, const FormJet& e2);

/// A gauge potential with its curvature form F (adjoint-valued 2-form), a
/// Higgs section u (V-valued 0-form) and a potential.
struct YmhPair {
  ModelSpace space;
  LieAlgebraAction action;
  GaugePotential A;
  BundleForm F;
  BundleForm u;
  Potential W;
};

/// Uses curvature_form(A) for F.
YmhPair make_ymh_pair(const LieAlgebraAction& action, const GaugePotential& A, const BundleForm& u,
                      const Potential& W = Potential::quartic());
void require_consistent(const YmhPair& pair);

/// All pointwise YMH quantities at x.
struct YmhPoint {
  PointGeometry geo;
  std::vector<Jet> ad;   // adjoint connection jets
  std::vector<Jet> rep;  // representation connection jets
  FormJet F;
  FormJet u;
  FormJet du;            // d^{nabla0} u
  Jet u2;                // |u|^2
};

YmhPoint ymh_point(const YmhPair& pair, const ChartPoint& x);

Jet ymh_density_jet(const YmhPair& pair, const YmhPoint& pt);
double ymh_density(const YmhPair& pair, const ChartPoint& x);

/// T = sum (<i_a F, i_b F> + <nabla_a u, nabla_b u>) w^a w^b - e g.
TensorJet ymh_stress_jet(const YmhPair& pair, const YmhPoint& pt);
Mat ymh_stress(const YmhPair& pair, const ChartPoint& x);

/// Norms of delta F + u (.) du and delta du + 2 W'(|u|^2) u.
struct YmheResidual {
  double gauge = 0.0;
  double higgs = 0.0;
};

YmheResidual ymhe_residual(const YmhPair& pair, const ChartPoint& x);

/// Covariant divergence of the YMH stress tensor by both routes.
struct DivergenceRoutes {
  Vec direct;
  Vec identity;
};

DivergenceRoutes ymh_div_stress(const YmhPair& pair, const YmhPoint& pt);
DivergenceRoutes ymh_div_stress(const YmhPair& pair, const ChartPoint& x);

}  // namespace emt
