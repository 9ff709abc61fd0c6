#include "amoeba/dynamics.hpp"

#include <cmath>
#include <numeric>

#include "amoeba/error.hpp"

namespace amoeba {

namespace {

double inner_response(const VariantConfig& cfg, double x) noexcept {
  return cfg.element_c.inner_step ? step_function(x - kInnerSigmoid.theta) : sigmoid(kInnerSigmoid, x);
}

double outer_response(const VariantConfig& cfg, double arg) noexcept {
  return cfg.element_c.outer_step ? step_function(arg - kOuterSigmoid.theta) : sigmoid(kOuterSigmoid, arg);
}

double contraction(const VariantConfig& cfg, double x, double delta_out) noexcept {
  const double shape = cfg.element_c.constant_contraction ? 1.0 : sigmoid(kContractionSigmoid, x);
  return 2.0 * delta_out * shape;
}

// Writes sum_{U,l} W_{Vk,Ul} s_Ul into `out`, where s = INNER(X). With the cost tensor's
// block structure this splits into a row term (same city, other steps), a column term
// (same step, other cities) and a distance term over the two cyclic neighbour steps.
void fill_argument(const Matrix& x, const ParamSet& params, const TspInstance& inst, const VariantConfig& cfg,
                   Matrix& inner, Matrix& neighbours, Matrix& out) {
  const std::size_t n = x.size();
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t k = 0; k < n; ++k) inner(v, k) = inner_response(cfg, x(v, k));
  }

  std::vector<double> row_sum(n, 0.0);
  std::vector<double> col_sum(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t k = 0; k < n; ++k) {
      row_sum[v] += inner(v, k);
      col_sum[k] += inner(v, k);
    }
  }

  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t prev = (k + n - 1) % n;
      const std::size_t next = (k + 1) % n;
      neighbours(u, k) = inner(u, prev) + inner(u, next);
    }
  }

  const Matrix& dist = inst.distances();
  std::vector<double> acc(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (std::size_t u = 0; u < n; ++u) {
      if (u == v) continue;
      const double d = dist(v, u);
      const auto nb = neighbours.row(u);
      for (std::size_t k = 0; k < n; ++k) acc[k] += d * nb[k];
    }
    for (std::size_t k = 0; k < n; ++k) {
      const double s = inner(v, k);
      out(v, k) = -params.lambda * (row_sum[v] - s) - params.mu * (col_sum[k] - s) - params.nu * acc[k];
    }
  }
}

}  // namespace

void validate(const VariantConfig& cfg) {
  if (cfg.element_b.kind == ElongationRule::Kind::kScaleI && !(cfg.element_b.factor > 0.0)) {
    throw ConfigError("elongation scale factor must be positive");
  }
  if (!(cfg.normal_sd > 0.0)) throw ConfigError("normal fluctuation sd must be positive");
}

double sigmoid(SigmoidParams p, double x) noexcept { return 1.0 / (1.0 + std::exp(-p.gamma * (x - p.theta))); }

Matrix illumination_argument(const Matrix& x, const ParamSet& params, const TspInstance& inst,
                             const VariantConfig& cfg) {
  const std::size_t n = x.size();
  Matrix inner(n), neighbours(n), out(n);
  fill_argument(x, params, inst, cfg, inner, neighbours, out);
  return out;
}

Matrix compute_l(const Matrix& x, const ParamSet& params, const TspInstance& inst, const VariantConfig& cfg) {
  Matrix l = illumination_argument(x, params, inst, cfg);
  for (double& value : l.flat()) value = 1.0 - outer_response(cfg, value);
  return l;
}

std::size_t count_non_illuminated(const Matrix& l) noexcept {
  std::size_t off = 0;
  for (double value : l.flat()) off += is_illuminated(value) ? 0 : 1;
  return off;
}

Matrix compute_o(const Matrix& x, const Matrix& l, const VariantConfig& cfg, double delta_out) {
  Matrix o(x.size(), 0.0);
  const auto xs = x.flat();
  const auto ls = l.flat();
  auto os = o.flat();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (is_illuminated(ls[i])) os[i] = contraction(cfg, xs[i], delta_out);
  }
  return o;
}

Elongation compute_i_and_s(double total_o, double stock_prev, std::size_t l_off, std::size_t n,
                           const VariantConfig& cfg, double delta_in) {
  const double leak = cfg.element_b.kind == ElongationRule::Kind::kZeroDeltaIn ? 0.0 : delta_in;
  if (l_off == 0) return {0.0, stock_prev + leak + total_o};
  const std::size_t denom = cfg.element_b.kind == ElongationRule::Kind::kDenomN ? n : l_off;
  return {(leak + total_o + stock_prev) / static_cast<double>(denom), 0.0};
}

Elongation compute_i_and_s(const Matrix& o, double stock_prev, std::size_t l_off, std::size_t n,
                           const VariantConfig& cfg, double delta_in) {
  const auto flat = o.flat();
  const double total = std::accumulate(flat.begin(), flat.end(), 0.0);
  return compute_i_and_s(total, stock_prev, l_off, n, cfg, delta_in);
}

void sample_fluctuations(const VariantConfig& cfg, double delta, Rng& rng, Matrix& out) {
  switch (cfg.element_a) {
    case Fluctuation::kZero:
      out.fill(0.0);
      return;
    case Fluctuation::kUniform: {
      std::uniform_real_distribution<double> dist(-delta, delta);
      for (double& v : out.flat()) v = dist(rng);
      return;
    }
    case Fluctuation::kNormal: {
      std::normal_distribution<double> dist(0.0, cfg.normal_sd);
      for (double& v : out.flat()) v = dist(rng);
      return;
    }
  }
}

Matrix sample_fluctuations(const VariantConfig& cfg, double delta, std::size_t n, Rng& rng) {
  Matrix out(n, 0.0);
  sample_fluctuations(cfg, delta, rng, out);
  return out;
}

Stepper::Stepper(const TspInstance& inst, const ParamSet& params, const VariantConfig& cfg)
    : inst_(inst),
      params_(params),
      cfg_(cfg),
      inner_(inst.n()),
      neighbours_(inst.n()),
      contraction_(inst.n(), 0.0),
      xi_(inst.n(), 0.0) {
  diag_.l = Matrix(inst.n());
}

const StepDiagnostics& Stepper::advance(AmoebaState& state, Rng& rng) {
  const std::size_t n = inst_.n();
  Matrix& l = diag_.l;
  fill_argument(state.x, params_, inst_, cfg_, inner_, neighbours_, l);
  for (double& value : l.flat()) value = 1.0 - outer_response(cfg_, value);

  const auto ls = l.flat();
  auto xs = state.x.flat();
  auto os = contraction_.flat();
  std::size_t l_off = 0;
  double total_o = 0.0;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    if (is_illuminated(ls[i])) {
      os[i] = contraction(cfg_, xs[i], params_.delta_out);
      total_o += os[i];
    } else {
      os[i] = 0.0;
      ++l_off;
    }
  }

  const Elongation el = compute_i_and_s(total_o, state.stock, l_off, n, cfg_, params_.delta_in);
  const double applied_i =
      cfg_.element_b.kind == ElongationRule::Kind::kScaleI ? cfg_.element_b.factor * el.i_value : el.i_value;

  sample_fluctuations(cfg_, params_.delta, rng, xi_);
  const auto xis = xi_.flat();

  double delta_sum = 0.0;
  double total_xi = 0.0;
  double sum_x = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double change =
        is_illuminated(ls[i]) ? xis[i] - os[i] : applied_i + xis[i];
    xs[i] += change;
    delta_sum += change;
    total_xi += xis[i];
    sum_x += xs[i];
  }

  diag_.l_off = l_off;
  diag_.total_o = total_o;
  diag_.total_xi = total_xi;
  diag_.delta_sum_x = delta_sum;
  diag_.elongation = el.i_value;
  diag_.stock_before = state.stock;
  diag_.stock_after = el.stock_next;
  diag_.sum_x = sum_x;

  state.stock = el.stock_next;
  ++state.t;
  return diag_;
}

std::pair<AmoebaState, StepDiagnostics> step(const AmoebaState& state, const TspInstance& inst,
                                             const ParamSet& params, const VariantConfig& cfg, Rng& rng) {
  Stepper stepper(inst, params, cfg);
  AmoebaState next = state;
  StepDiagnostics diag = stepper.advance(next, rng);
  return {std::move(next), std::move(diag)};
}

double conservation_residual(const StepDiagnostics& diag, double delta_in) noexcept {
  return diag.delta_sum_x - diag.total_xi - delta_in;
}

}  // namespace amoeba
