#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>

#include "amoeba/instance.hpp"
#include "amoeba/matrix.hpp"

namespace amoeba {

using Rng = std::mt19937_64;

/// Element A: distribution of the per-lane fluctuation.
enum class Fluctuation { kUniform, kZero, kNormal };

/// Element B: how the elongation budget is formed and applied.
struct ElongationRule {
  enum class Kind { kOriginal, kScaleI, kZeroDeltaIn, kDenomN };
  Kind kind = Kind::kOriginal;
  double factor = 1.0;  // only read for kScaleI

  static ElongationRule original() { return {}; }
  static ElongationRule scale_i(double f) { return {Kind::kScaleI, f}; }
  static ElongationRule zero_delta_in() { return {Kind::kZeroDeltaIn, 1.0}; }
  static ElongationRule denom_n() { return {Kind::kDenomN, 1.0}; }

  friend bool operator==(const ElongationRule&, const ElongationRule&) = default;
};

/// Element C: independent replacements of the three sigmoids.
struct SigmoidSwitches {
  bool constant_contraction = false;  // O = 2 delta_out regardless of X
  bool outer_step = false;            // theta(x + 0.5) in the illumination rule
  bool inner_step = false;            // theta(x - 0.6) in the illumination rule

  friend bool operator==(const SigmoidSwitches&, const SigmoidSwitches&) = default;
};

struct VariantConfig {
  Fluctuation element_a = Fluctuation::kUniform;
  ElongationRule element_b;
  SigmoidSwitches element_c;
  double normal_sd = 0.003;

  friend bool operator==(const VariantConfig&, const VariantConfig&) = default;
};

/// Throws ConfigError on a non-positive scale factor or normal_sd.
void validate(const VariantConfig& cfg);

struct SigmoidParams {
  double gamma;
  double theta;
};

inline constexpr SigmoidParams kOuterSigmoid{1000.0, -0.5};
inline constexpr SigmoidParams kInnerSigmoid{35.0, 0.6};
inline constexpr SigmoidParams kContractionSigmoid{20.0, 0.6};

/// 1 / (1 + exp(-gamma (x - theta))).
double sigmoid(SigmoidParams p, double x) noexcept;

/// Heaviside step with step(0) = 1.
inline double step_function(double x) noexcept { return x >= 0.0 ? 1.0 : 0.0; }

/// A lane contracts when its illumination value is strictly above one half.
inline bool is_illuminated(double l) noexcept { return l > 0.5; }

struct AmoebaState {
  Matrix x;        // branch lengths, unbounded
  double stock = 0.0;
  std::uint64_t t = 0;

  /// All lanes empty, empty stock, t = 0.
  static AmoebaState initial(std::size_t n) { return {Matrix(n, 0.0), 0.0, 0}; }
};

struct StepDiagnostics {
  Matrix l;                  // illumination values of this step
  std::size_t l_off = 0;     // lanes with L <= 0.5
  double total_o = 0.0;      // sum of contractions
  double total_xi = 0.0;     // sum of fluctuations
  double delta_sum_x = 0.0;  // sum over lanes of X(t+1) - X(t)
  double elongation = 0.0;   // per-lane I before any element-B scaling
  double stock_before = 0.0;
  double stock_after = 0.0;
  double sum_x = 0.0;        // sum of X(t+1)
};

/// Argument of the outer sigmoid for every lane: sum_{U,l} W_{Vk,Ul} INNER(X_Ul).
/// Uses the block structure of the cost tensor, O(n^3).
Matrix illumination_argument(const Matrix& x, const ParamSet& params, const TspInstance& inst,
                             const VariantConfig& cfg);

/// L_Vk = 1 - OUTER(argument).
Matrix compute_l(const Matrix& x, const ParamSet& params, const TspInstance& inst, const VariantConfig& cfg);

std::size_t count_non_illuminated(const Matrix& l) noexcept;

/// Contraction per lane: 2 delta_out sigma_{20,0.6}(X) (or 2 delta_out) when illuminated, else 0.
Matrix compute_o(const Matrix& x, const Matrix& l, const VariantConfig& cfg, double delta_out);

struct Elongation {
  double i_value = 0.0;     // elongation shared by every non-illuminated lane
  double stock_next = 0.0;
};

Elongation compute_i_and_s(double total_o, double stock_prev, std::size_t l_off, std::size_t n,
                           const VariantConfig& cfg, double delta_in);
Elongation compute_i_and_s(const Matrix& o, double stock_prev, std::size_t l_off, std::size_t n,
                           const VariantConfig& cfg, double delta_in);

/// Fills `out` with one fresh draw per lane.
void sample_fluctuations(const VariantConfig& cfg, double delta, Rng& rng, Matrix& out);
Matrix sample_fluctuations(const VariantConfig& cfg, double delta, std::size_t n, Rng& rng);

/// Advances states in place with reusable scratch buffers. Keeps a reference to the
/// instance, which must outlive it; parameters and config are copied.
class Stepper {
 public:
  Stepper(const TspInstance& inst, const ParamSet& params, const VariantConfig& cfg);
  Stepper(TspInstance&&, const ParamSet&, const VariantConfig&) = delete;

  /// One synchronous update X(t) -> X(t+1). The returned reference is overwritten
  /// by the next call.
  const StepDiagnostics& advance(AmoebaState& state, Rng& rng);

 private:
  const TspInstance& inst_;
  ParamSet params_;
  VariantConfig cfg_;
  Matrix inner_;
  Matrix neighbours_;
  Matrix contraction_;
  Matrix xi_;
  StepDiagnostics diag_;
};

/// Functional form of one step.
std::pair<AmoebaState, StepDiagnostics> step(const AmoebaState& state, const TspInstance& inst,
                                             const ParamSet& params, const VariantConfig& cfg, Rng& rng);

/// delta_sum_x - total_xi - delta_in. Zero under the original element B whenever
/// l_off > 0 and the stock was empty.
double conservation_residual(const StepDiagnostics& diag, double delta_in) noexcept;

}  // namespace amoeba
