#include "isoembed/operators.hpp"

#include <functional>
#include <stdexcept>

#include "isoembed/spectral.hpp"

namespace isoembed {

namespace {

void check_frame_field(const Frame& frame, const VecField& v, const char* op) {
  if (frame.grid() != v.grid()) throw std::invalid_argument(std::string(op) + ": grids differ");
  if (frame.ambient_dim() != v.ambient_dim())
    throw std::invalid_argument(std::string(op) + ": ambient dims differ");
}

// Sum over components of a_c * b_c as a plain value array.
ArrayXr dot_values(const VecField& a, const VecField& b) {
  ArrayXr acc = a.component(0).values() * b.component(0).values();
  for (int c = 1; c < a.ambient_dim(); ++c)
    acc += a.component(c).values() * b.component(c).values();
  return acc;
}

// Lifts per-point coefficient vectors through the frame columns:
// out(x) = E(x) * solve(Gram(x), rhs(x)).
VecField span_lift(const Frame& frame, const std::function<void(Index, VectorXr&)>& fill_rhs) {
  const GridSpec& g = frame.grid();
  const int N = frame.ambient_dim();
  const int d = frame.num_columns();
  std::vector<ArrayXr> out(size_t(N), ArrayXr(g.num_points()));
  VectorXr rhs(d);
  for (Index p = 0; p < g.num_points(); ++p) {
    fill_rhs(p, rhs);
    const VectorXr c = frame.span_solve(p, rhs);
    const VectorXr y = frame.point_matrix(p) * c;
    for (int comp = 0; comp < N; ++comp) out[size_t(comp)][p] = y[comp];
  }
  std::vector<ScalarField> comps;
  comps.reserve(size_t(N));
  for (auto& v : out) comps.push_back(ScalarField::from_values(g, std::move(v)));
  return VecField(std::move(comps));
}

}  // namespace

LoweredQ::LoweredQ(int dim, std::vector<ScalarField> qi, std::vector<ScalarField> qij)
    : dim_(dim), qi_(std::move(qi)), qij_(std::move(qij)) {
  if (int(qi_.size()) != dim_ || int(qij_.size()) != dim_ * (dim_ + 1) / 2)
    throw std::invalid_argument("LoweredQ: wrong component count");
}

SymTensorField apply_l0(const Frame& frame, const VecField& v) {
  check_frame_field(frame, v, "apply_l0");
  const int n = frame.dim();
  std::vector<ScalarField> uv;  // u_i . v
  uv.reserve(size_t(n));
  for (int i = 0; i < n; ++i) uv.push_back(dot(frame.first(i), v));
  std::vector<ScalarField> comps;
  comps.reserve(size_t(n * (n + 1) / 2));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      comps.push_back(partial(uv[size_t(j)], i) + partial(uv[size_t(i)], j) -
                      2.0 * dot(frame.second(i, j), v));
  return SymTensorField(n, std::move(comps));
}

VecField apply_m0(const Frame& frame, const SymTensorField& h) {
  if (frame.grid() != h.grid()) throw std::invalid_argument("apply_m0: grids differ");
  if (frame.dim() != h.dim()) throw std::invalid_argument("apply_m0: tensor dim mismatch");
  const int n = frame.dim();
  // Constraint rows follow the frame column order: first-derivative rows are
  // zero, second-derivative rows carry -h_ij/2.
  return span_lift(frame, [&](Index p, VectorXr& rhs) {
    rhs.head(n).setZero();
    for (int idx = 0; idx < h.num_components(); ++idx)
      rhs[n + idx] = -Real(0.5) * h.component_flat(idx).values()[p];
  });
}

LoweredQ q_lower(const VecField& v, const VecField& w) {
  if (v.grid() != w.grid()) throw std::invalid_argument("q_lower: grids differ");
  if (v.ambient_dim() != w.ambient_dim())
    throw std::invalid_argument("q_lower: ambient dims differ");
  const GridSpec& g = v.grid();
  const int n = g.dim();
  const bool same = &v == &w;

  const VecField hv = helmholtz(v);
  const VecField hw = same ? hv : helmholtz(w);
  std::vector<VecField> dv, dw, ddv, ddw;
  for (int i = 0; i < n; ++i) dv.push_back(partial(v, i));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) ddv.push_back(partial(dv[size_t(i)], j));
  if (same) {
    dw = dv;
    ddw = ddv;
  } else {
    for (int i = 0; i < n; ++i) dw.push_back(partial(w, i));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) ddw.push_back(partial(dw[size_t(i)], j));
  }
  auto dd = [&](const std::vector<VecField>& t, int i, int j) -> const VecField& {
    return t[size_t(SymTensorField::pair_index(i, j, n))];
  };

  std::vector<ScalarField> qi;
  qi.reserve(size_t(n));
  for (int i = 0; i < n; ++i) {
    ArrayXr integrand =
        Real(0.5) * (dot_values(hv, dw[size_t(i)]) + dot_values(hw, dv[size_t(i)]));
    qi.push_back(inv_helmholtz(ScalarField::from_values(g, std::move(integrand))));
  }

  std::vector<ScalarField> qij;
  qij.reserve(size_t(n * (n + 1) / 2));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      ArrayXr integrand = ArrayXr::Zero(g.num_points());
      for (int k = 0; k < n; ++k)
        integrand += dot_values(dd(ddv, i, k), dd(ddw, j, k)) +
                     dot_values(dd(ddw, i, k), dd(ddv, j, k));
      integrand += Real(0.5) * (dot_values(dv[size_t(i)], dw[size_t(j)]) +
                                dot_values(dw[size_t(i)], dv[size_t(j)]));
      integrand -= dot_values(hv, dd(ddw, i, j)) + dot_values(hw, dd(ddv, i, j));
      qij.push_back(inv_helmholtz(ScalarField::from_values(g, std::move(integrand))));
    }
  return LoweredQ(n, std::move(qi), std::move(qij));
}

VecField apply_q0(const Frame& frame, const VecField& v, const VecField& w) {
  return detail::apply_q0_signed(frame, v, w, Real(-1), Real(0.5));
}

Real splitting_residual(const VecField& v) {
  const int n = v.grid().dim();
  const LoweredQ q = q_lower(v, v);
  std::vector<VecField> dv;
  for (int i = 0; i < n; ++i) dv.push_back(partial(v, i));
  Real worst = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const ScalarField gap = dot(dv[size_t(i)], dv[size_t(j)]) - partial(q.q(j), i) -
                              partial(q.q(i), j) - q.q(i, j);
      worst = std::max(worst, norm_c(gap, 0));
    }
  return worst;
}

Real composite_residual(const Frame& frame, const VecField& v) {
  return detail::composite_residual_signed(frame, v, Real(-1), Real(0.5));
}

namespace detail {

VecField apply_q0_signed(const Frame& frame, const VecField& v, const VecField& w,
                         Real qi_coeff, Real qij_coeff) {
  check_frame_field(frame, v, "apply_q0");
  check_frame_field(frame, w, "apply_q0");
  const int n = frame.dim();
  const LoweredQ q = q_lower(v, w);
  return span_lift(frame, [&](Index p, VectorXr& rhs) {
    for (int i = 0; i < n; ++i) rhs[i] = qi_coeff * q.q(i).values()[p];
    for (int i = 0, idx = 0; i < n; ++i)
      for (int j = i; j < n; ++j, ++idx) rhs[n + idx] = qij_coeff * q.q(i, j).values()[p];
  });
}

Real composite_residual_signed(const Frame& frame, const VecField& v, Real qi_coeff,
                               Real qij_coeff) {
  check_frame_field(frame, v, "composite_residual");
  const int n = frame.dim();
  std::vector<VecField> dv;
  for (int i = 0; i < n; ++i) dv.push_back(partial(v, i));
  std::vector<ScalarField> products;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) products.push_back(dot(dv[size_t(i)], dv[size_t(j)]));
  const SymTensorField quadratic_form =
      apply_l0(frame, v) + SymTensorField(n, std::move(products));
  const SymTensorField via_lift =
      apply_l0(frame, v - apply_q0_signed(frame, v, v, qi_coeff, qij_coeff));
  return norm_c(quadratic_form - via_lift, 0);
}

}  // namespace detail

}  // namespace isoembed
