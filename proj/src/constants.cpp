#include "degen/constants.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace degen {

double gamma_residual(double gamma, std::size_t r) {
  const double inv = 1.0 / gamma;
  double term = 1.0;
  double sum = 0.0;
  for (std::size_t i = 0; i <= r; ++i) {
    term *= inv;
    sum += term;
  }
  return sum - 1.0;
}

GammaRoot solve_gamma(std::size_t r) {
  if (r == 0) {
    return {1.0, 1.0};
  }
  // The residual is strictly decreasing on [1, 2]: positive at 1, equal to
  // -2^-(r+1) at 2.
  double lo = 1.0;
  double hi = 2.0;
  while (true) {
    const double mid = lo + (hi - lo) / 2.0;
    if (mid <= lo || mid >= hi) {
      break;
    }
    if (gamma_residual(mid, r) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double gamma =
      std::abs(gamma_residual(lo, r)) < std::abs(gamma_residual(hi, r)) ? lo : hi;
  const double deficit = std::exp(-static_cast<double>(r + 1) * std::log(gamma));
  return {gamma, deficit};
}

void validate(const Parameters& p) {
  if (p.d < 1) {
    throw std::invalid_argument("d must be at least 1");
  }
  if (!std::isfinite(p.lambda_excess) || !std::isfinite(p.kappa) || !std::isfinite(p.c_excess)) {
    throw std::invalid_argument("constants must be finite");
  }
  if (!(p.lambda_excess > 0.0)) {
    throw std::invalid_argument("lambda must exceed 4");
  }
  if (!(p.kappa_margin() > 0.0)) {
    throw std::invalid_argument("kappa must exceed 2 * lambda");
  }
  if (!(p.c_excess > 0.0)) {
    throw std::invalid_argument("c must exceed 2");
  }
}

std::size_t neighbour_limit(const Parameters& p) {
  const double product = p.kappa * static_cast<double>(p.d);
  const double nearest = std::round(product);
  if (std::abs(product - nearest) <= 1e-9 * std::max(1.0, product)) {
    return static_cast<std::size_t>(nearest);
  }
  return static_cast<std::size_t>(std::ceil(product));
}

double compute_alpha(const Parameters& p) {
  validate(p);
  const double d = static_cast<double>(p.d);
  return 1.0 / (p.c() * d * p.kappa / p.kappa_margin() + 1.0);
}

double BranchCosts::worst_deficit() const { return std::min({dense_edge, greedy, heavy}); }

namespace {

double dense_edge_deficit(double lambda_excess) {
  // 3 lambda / (lambda - 1) = 4 - t with t = (lambda - 4) / (lambda - 1).
  const double t = lambda_excess / (3.0 + lambda_excess);
  return t / (2.0 + std::sqrt(4.0 - t));
}

double heavy_deficit(double c_excess) { return c_excess / (1.0 + c_excess); }

double epsilon_from(double alpha, double worst_deficit) {
  // 2 - (2 - mu)^alpha * 2^(1 - alpha) = -2 expm1(alpha log1p(-mu / 2)).
  return -2.0 * std::expm1(alpha * std::log1p(-worst_deficit / 2.0));
}

}  // namespace

BranchCosts compute_branch_costs(const Parameters& p) {
  validate(p);
  return {dense_edge_deficit(p.lambda_excess), solve_gamma(neighbour_limit(p) - 1).deficit,
          heavy_deficit(p.c_excess)};
}

double SuccessBase::log_value() const { return std::log(2.0) + std::log1p(-epsilon / 2.0); }

SuccessBase compute_base(const Parameters& p, double alpha) {
  validate(p);
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1)");
  }
  SuccessBase out;
  out.costs = compute_branch_costs(p);
  out.epsilon = epsilon_from(alpha, out.costs.worst_deficit());
  return out;
}

Constants::Constants(const Parameters& p) : params_(p), alpha_(compute_alpha(p)) {
  const std::size_t limit = neighbour_limit(p);
  gamma_table_.reserve(limit);
  for (std::size_t r = 0; r < limit; ++r) {
    gamma_table_.push_back(solve_gamma(r));
    std::vector<double> law(r + 1);
    double term = 1.0;
    double total = 0.0;
    for (auto& w : law) {
      term /= gamma_table_.back().value;
      w = term;
      total += term;
    }
    for (auto& w : law) {
      w /= total;
    }
    greedy_law_.push_back(std::move(law));
  }
  base_ = compute_base(p, alpha_);
  if (!(base_.epsilon > 0.0)) {
    throw std::domain_error("success base is not representably below 2 for d = " +
                            std::to_string(p.d));
  }
}

// 2^n and the correction (1 - epsilon/2)^n are kept apart so that an
// epsilon below double spacing still yields exact powers of two.
double Constants::base_power(std::size_t n) const {
  const double nn = static_cast<double>(n);
  return std::ldexp(std::exp(nn * std::log1p(-base_.epsilon / 2.0)), static_cast<int>(n));
}

double Constants::success_lower_bound(std::size_t n) const {
  const double nn = static_cast<double>(n);
  return std::ldexp(std::exp(-nn * std::log1p(-base_.epsilon / 2.0)), -static_cast<int>(n));
}

namespace {

constexpr std::array<PublishedRow, 6> kPublished{{
    {1, "4.0238224", 0.0238224, 9, 1, "2.00197442", 0.00197442, 0.050203, 1e-6, "1.99991", 9e-5,
     1e-5},
    {2, "4.00009156", 0.00009156, 17, 2, "2.00000763", 0.00000763, 0.01449, 1e-5, "1.9999999",
     1e-7, 1e-7},
    {3, "4.000000357628", 3.57628e-7, 25, 3, "2.0000000298", 2.98e-8, 0.0066225, 1e-7,
     "1.9999999999", 1e-10, 1e-10},
    {4, "4.000000001397", 1.397e-9, 33, 4, "2.0000000001164", 1.164e-10, 0.0037736, 1e-7,
     "1.9999999999996", 4e-13, 1e-13},
    {5, "4.000000000005457", 5.457e-12, 41, 5, "2.0000000000004548", 4.548e-13, 0.0024331, 1e-7,
     "1.999999999999999", 1e-15, 1e-15},
    {6, "4.000000000000021316", 2.1316e-14, 49, 6, "2.0000000000000017833", 1.7833e-15,
     0.0016978, 1e-7, "1.999999999999999997", 3e-18, 1e-18},
}};

// Printed values are rounded; allow one unit in the last place plus rounding
// slack of the comparison itself.
bool within_unit(double value, double printed, double unit) {
  return std::abs(value - printed) <= unit * (1.0 + 1e-9);
}

}  // namespace

std::span<const PublishedRow> published_rows() { return kPublished; }

Constants defaults(std::size_t d) {
  if (d < 1 || d > kPublished.size()) {
    throw std::out_of_range("reference constants exist only for 1 <= d <= 6; use tune()");
  }
  const PublishedRow& row = kPublished[d - 1];
  Constants consts(Parameters{d, row.lambda_excess, row.kappa_numerator / row.kappa_denominator,
                              row.c_excess});
  if (!within_unit(consts.alpha(), row.alpha, row.alpha_unit) ||
      !within_unit(consts.epsilon(), row.epsilon, row.epsilon_unit)) {
    throw std::logic_error("recomputed constants disagree with the reference row for d = " +
                           std::to_string(d));
  }
  return consts;
}

namespace {

template <typename F>
double ternary_argmax(F&& f, double lo, double hi, int iterations) {
  for (int i = 0; i < iterations; ++i) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (f(m1) < f(m2)) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  return lo + (hi - lo) / 2.0;
}

}  // namespace

Constants tune(std::size_t d) {
  if (d < 1 || d > kMaxTunableD) {
    throw std::domain_error("tune supports 1 <= d <= " + std::to_string(kMaxTunableD));
  }
  Parameters p{d, 0.0, 8.0 + 1.0 / static_cast<double>(d), 0.0};
  const double greedy = solve_gamma(neighbour_limit(p) - 1).deficit;

  auto epsilon_at = [&](double log_lambda_excess, double log_c_excess) {
    Parameters q = p;
    q.lambda_excess = std::exp(log_lambda_excess);
    q.c_excess = std::exp(log_c_excess);
    const double alpha = 1.0 / (q.c() * static_cast<double>(d) * q.kappa / q.kappa_margin() + 1.0);
    const double mu =
        std::min({dense_edge_deficit(q.lambda_excess), greedy, heavy_deficit(q.c_excess)});
    return epsilon_from(alpha, mu);
  };

  // lambda - 4 < (kappa - 8) / 2 keeps kappa > 2 lambda.
  const double lambda_lo = std::log(1e-300);
  const double lambda_hi = std::log(0.5 * (p.kappa - 8.0) * (1.0 - 1e-9));
  const double c_lo = std::log(1e-300);
  const double c_hi = 0.0;
  constexpr int kIterations = 120;

  auto best_lambda_for = [&](double log_c) {
    return ternary_argmax([&](double x) { return epsilon_at(x, log_c); }, lambda_lo, lambda_hi,
                          kIterations);
  };
  const double log_c = ternary_argmax(
      [&](double y) { return epsilon_at(best_lambda_for(y), y); }, c_lo, c_hi, kIterations);
  p.lambda_excess = std::exp(best_lambda_for(log_c));
  p.c_excess = std::exp(log_c);
  return Constants(p);
}

}  // namespace degen
