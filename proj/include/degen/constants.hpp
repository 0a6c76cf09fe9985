#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace degen {

/// Root gamma >= 1 of gamma^-1 + ... + gamma^-(r+1) = 1.
///
/// The roots approach 2 from below faster than double spacing allows, so the
/// distance to 2 is carried separately: deficit = 2 - gamma, which the
/// defining equation turns into gamma^-(r+1).
struct GammaRoot {
  double value = 1.0;
  double deficit = 1.0;
};

GammaRoot solve_gamma(std::size_t r);

/// sum_{i=1}^{r+1} gamma^-i - 1.
double gamma_residual(double gamma, std::size_t r);

/// The free parameters of the sampler. lambda and c sit extremely close to 4
/// and 2 in useful settings, so they are stored as excesses over those values.
struct Parameters {
  std::size_t d = 1;
  double lambda_excess = 0.0;  // lambda - 4
  double kappa = 0.0;
  double c_excess = 0.0;  // c - 2

  double lambda() const { return 4.0 + lambda_excess; }
  double c() const { return 2.0 + c_excess; }
  /// kappa - 2 lambda, computed without cancellation.
  double kappa_margin() const { return (kappa - 8.0) - 2.0 * lambda_excess; }
};

/// Throws std::invalid_argument unless d >= 1, lambda > 4, kappa > 2 lambda
/// and c > 2.
void validate(const Parameters& p);

/// ceil(kappa * d), with kappa * d snapped to an integer when it is within
/// rounding of one (kappa = 49/6, d = 6 gives 49).
std::size_t neighbour_limit(const Parameters& p);

/// Fraction of vertices that must be decided before the finishing rule:
/// (c d kappa / (kappa - 2 lambda) + 1)^-1.
double compute_alpha(const Parameters& p);

/// Per-vertex cost of the three branching rules, stored as deficits below 2.
struct BranchCosts {
  double dense_edge = 0.0;  // 2 - sqrt(3 lambda / (lambda - 1))
  double greedy = 0.0;      // 2 - gamma(ceil(kappa d) - 1)
  double heavy = 0.0;       // 2 - c / (c - 1)

  /// 2 - M where M is the largest of the three costs.
  double worst_deficit() const;
  double worst() const { return 2.0 - worst_deficit(); }
};

BranchCosts compute_branch_costs(const Parameters& p);

/// Success base 2 - epsilon = M^alpha * 2^(1 - alpha).
struct SuccessBase {
  double epsilon = 0.0;
  BranchCosts costs;

  double value() const { return 2.0 - epsilon; }
  /// ln(2 - epsilon), accurate even when epsilon is below double spacing at 2.
  double log_value() const;
};

SuccessBase compute_base(const Parameters& p, double alpha);

/// Validated constants plus everything derived from them.
class Constants {
 public:
  explicit Constants(const Parameters& p);

  const Parameters& parameters() const { return params_; }
  std::size_t d() const { return params_.d; }
  double lambda() const { return params_.lambda(); }
  double kappa() const { return params_.kappa; }
  double c() const { return params_.c(); }
  double alpha() const { return alpha_; }
  const SuccessBase& base() const { return base_; }
  double epsilon() const { return base_.epsilon; }

  /// Largest neighbour count r for which the greedy rule fires.
  std::size_t max_neighbours() const { return gamma_table_.size() - 1; }
  const GammaRoot& gamma(std::size_t r) const { return gamma_table_.at(r); }
  std::span<const GammaRoot> gamma_table() const { return gamma_table_; }
  /// Greedy-rule decision probabilities (gamma^-1, ..., gamma^-(r+1)) for
  /// gamma = gamma(r), divided by their floating-point sum.
  std::span<const double> greedy_law(std::size_t r) const { return greedy_law_.at(r); }

  /// (2 - epsilon)^n.
  double base_power(std::size_t n) const;
  /// (2 - epsilon)^-n, the per-run lower bound on emitting a fixed maximal set.
  double success_lower_bound(std::size_t n) const;

 private:
  Parameters params_;
  double alpha_;
  std::vector<GammaRoot> gamma_table_;
  std::vector<std::vector<double>> greedy_law_;
  SuccessBase base_;
};

/// One printed row of the reference constants table.
struct PublishedRow {
  std::size_t d;
  std::string_view lambda_text;
  double lambda_excess;
  double kappa_numerator;
  double kappa_denominator;
  std::string_view c_text;
  double c_excess;
  double alpha;
  double alpha_unit;  // one unit in the last printed place
  std::string_view base_text;
  double epsilon;  // 2 - printed base
  double epsilon_unit;
};

std::span<const PublishedRow> published_rows();

/// Reference constants for 1 <= d <= 6; derived values are cross-checked
/// against the printed row. Throws std::out_of_range for other d.
Constants defaults(std::size_t d);

/// kappa = 8 + 1/d and (lambda, c) chosen numerically to minimize the base.
/// Supports 1 <= d <= 120; beyond that epsilon underflows and
/// std::domain_error is thrown.
Constants tune(std::size_t d);

inline constexpr std::size_t kMaxTunableD = 120;

}  // namespace degen
