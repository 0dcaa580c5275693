#include "bosekin/collision.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bosekin/manifolds.hpp"
#include "bosekin/threading.hpp"

namespace bosekin {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

// Panel boundaries on (0, hi) halving toward 0, like the grid itself.
std::vector<double> geometric_boundaries(double hi, int panels) {
  std::vector<double> b(panels + 1);
  b[0] = 0.0;
  for (int j = 1; j <= panels; ++j) b[j] = hi * std::ldexp(1.0, -(panels - j));
  return b;
}

}  // namespace

CollisionOperator::CollisionOperator(std::shared_ptr<const RadialGrid> grid,
                                     const PhysicalParams& params, CollisionConfig config)
    : grid_(std::move(grid)), params_(params), config_(config) {
  if (!grid_) throw std::invalid_argument("CollisionOperator: null grid");
  if (config_.surface_panels <= 0) config_.surface_panels = grid_->panels;
  lam12_ = params_.lambda1 * params_.n_c;
  build_tables();
}

void CollisionOperator::build_tables() {
  const int n = grid_->size();
  node_energy_.resize(n);
  for (int i = 0; i < n; ++i) node_energy_[i] = energy(grid_->nodes[i], params_);
  const double e_cap = energy(grid_->u_max, params_);
  const double e_cut = energy(params_.p0, params_);

  // Mirrors EnergyInterpolant::interval_of_energy so cached indices stay valid.
  auto interval_of = [&](double e) -> int32_t {
    if (e <= node_energy_.front()) return -1;
    if (e >= node_energy_.back()) return n - 1;
    const auto it = std::upper_bound(node_energy_.begin(), node_energy_.end(), e);
    return static_cast<int32_t>(it - node_energy_.begin()) - 1;
  };

  n0_ = config_.surface_panels * config_.surface_nodes;
  n1_ = n0_;
  s0_.assign(static_cast<size_t>(n) * n0_, SurfaceSample{0.0, 0.0, 0.0, -1, -1});
  s1_.assign(static_cast<size_t>(n) * n1_, SurfaceSample{0.0, 0.0, 0.0, -1, -1});

  std::vector<std::vector<ColumnSample>> columns(n);
  parallel_for(n, config_.threads, [&](int i) {
    const double p1 = grid_->nodes[i];
    const double e1 = node_energy_[i];

    if (lam12_ > 0.0) {
      std::vector<double> x, w;
      for (double hi : {p1, grid_->u_max}) {
        const bool splitting = (hi == p1);
        x.clear();
        w.clear();
        const std::vector<double> bounds = geometric_boundaries(hi, config_.surface_panels);
        for (int b = 0; b + 1 < static_cast<int>(bounds.size()); ++b) {
          gauss_points_on(bounds[b], bounds[b + 1], config_.surface_nodes, x, w);
        }
        for (int q = 0; q < n0_; ++q) {
          const double u = x[q];
          const double e_u = energy(u, params_);
          SurfaceSample sample;
          sample.e_a = e_u;
          sample.iv_a = interval_of(e_u);
          if (splitting) {
            const double r = s0_partner(p1, u, params_);
            sample.e_b = e1 - e_u;
            sample.coef =
                lam12_ * k12(p1, r, u, params_) * s0_weight(p1, u, params_) * w[q];
          } else {
            const double s = s1_partner(p1, u, params_);
            sample.e_b = e1 + e_u;
            sample.coef =
                2.0 * lam12_ * k12(s, p1, u, params_) * s1_weight(p1, u, params_) * w[q];
          }
          sample.iv_b = interval_of(sample.e_b);
          (splitting ? s0_ : s1_)[static_cast<size_t>(i) * n0_ + q] = sample;
        }
      }
    }

    if (params_.kappa3 > 0.0 && p1 >= params_.p0) {
      std::vector<ColumnSample>& out = columns[i];
      std::vector<double> cuts;
      for (int j = 0; j < n; ++j) {
        const double p2 = grid_->nodes[j];
        if (p2 < params_.p0) continue;
        const double e_sum = e1 + node_energy_[j];
        const double lo = std::max(e_cut, e_sum - e_cap);
        const double hi = std::min(e_sum - e_cut, e_cap);
        if (!(hi > lo)) continue;

        // Exact endpoints plus the kink locations of the min factor:
        // p3 = p4, p3 = min(p1,p2), p4 = min(p1,p2).
        const double m12 = std::min(p1, p2);
        const double e_m12 = energy(m12, params_);
        cuts.assign({lo, hi});
        for (double c : {0.5 * e_sum, e_m12, e_sum - e_m12}) {
          if (c > lo && c < hi) cuts.push_back(c);
        }
        std::sort(cuts.begin(), cuts.end());

        const double pref = params_.kappa3 * p2 / p1 * grid_->weights[j];
        for (size_t seg = 0; seg + 1 < cuts.size(); ++seg) {
          const double width = cuts[seg + 1] - cuts[seg];
          const int panels = std::max(
              1, static_cast<int>(std::lround(config_.c22_panels * width / (hi - lo))));
          std::vector<double> x, w;
          for (int pnl = 0; pnl < panels; ++pnl) {
            gauss_points_on(cuts[seg] + width * pnl / panels,
                            cuts[seg] + width * (pnl + 1) / panels, config_.c22_nodes, x,
                            w);
          }
          for (size_t q = 0; q < x.size(); ++q) {
            const double e3 = x[q];
            const double e4 = e_sum - e3;
            const double p3 = inverse_energy(e3, params_);
            const double p4 = inverse_energy(e4, params_);
            const double kern = k22(p1, p2, p3, p4, params_);
            if (kern == 0.0) continue;
            ColumnSample sample;
            sample.coef = pref * kern * std::min(std::min(p1, p2), std::min(p3, p4)) *
                          momentum_over_energy_derivative(p3, params_) *
                          momentum_over_energy_derivative(p4, params_) * w[q];
            sample.e3 = e3;
            sample.e4 = e4;
            sample.iv3 = interval_of(e3);
            sample.iv4 = interval_of(e4);
            out.push_back(sample);
          }
        }
        out.push_back(ColumnSample{0.0, 0.0, 0.0, -2, static_cast<int32_t>(j)});
      }
    }
  });

  // Flatten the per-i sample streams into one CSR layout over (i, j) pairs.
  // A sentinel (iv3 = -2, iv4 = j) closes each j-column inside the streams;
  // columns skipped during the build simply get zero length.
  t22_.clear();
  t22_offset_.assign(static_cast<size_t>(n) * n + 1, 0);
  size_t pos = 0;
  for (int i = 0; i < n; ++i) {
    size_t begin = 0;
    int j_cursor = 0;
    for (size_t k = 0; k < columns[i].size(); ++k) {
      if (columns[i][k].iv3 != -2) continue;
      const int j = columns[i][k].iv4;
      while (j_cursor <= j) {
        t22_offset_[static_cast<size_t>(i) * n + j_cursor] = static_cast<int64_t>(pos);
        ++j_cursor;
      }
      for (size_t s = begin; s < k; ++s) t22_.push_back(columns[i][s]);
      pos += k - begin;
      begin = k + 1;
    }
    while (j_cursor < n) {
      t22_offset_[static_cast<size_t>(i) * n + j_cursor] = static_cast<int64_t>(pos);
      ++j_cursor;
    }
  }
  t22_offset_[static_cast<size_t>(n) * n] = static_cast<int64_t>(pos);
}

void CollisionOperator::eval(const DistributionState& state, CollisionRates* rates,
                             std::vector<double>* c221, std::vector<double>* c222) const {
  if (state.grid != grid_) {
    throw std::invalid_argument("CollisionOperator: state built on a different grid");
  }
  const int n = grid_->size();
  const EnergyInterpolant interp(state, params_);
  const std::vector<double>& f = state.values;

  if (rates) {
    rates->c12.assign(n, 0.0);
    rates->c22.assign(n, 0.0);
    rates->q.assign(n, 0.0);
    rates->c12_gain.assign(n, 0.0);
    rates->c12_minus.assign(n, 0.0);
    rates->c22_gain.assign(n, 0.0);
    rates->c22_minus.assign(n, 0.0);
    rates->q_minus.assign(n, 0.0);
  }
  if (c221) c221->assign(n, 0.0);
  if (c222) c222->assign(n, 0.0);

  parallel_for(n, config_.threads, [&](int i) {
    const double f1 = f[i];

    double c12_gain = 0.0, c12_minus = 0.0;
    if (lam12_ > 0.0 && rates) {
      const size_t base = static_cast<size_t>(i) * n0_;
      for (int q = 0; q < n0_; ++q) {
        const SurfaceSample& s = s0_[base + q];
        const double fu = interp.at_energy_in_interval(s.e_a, s.iv_a);
        const double fr = interp.at_energy_in_interval(s.e_b, s.iv_b);
        c12_gain += s.coef * fr * fu;
        c12_minus += s.coef * (fr + fu + 1.0);
      }
      for (int q = 0; q < n1_; ++q) {
        const SurfaceSample& s = s1_[base + q];
        const double fu = interp.at_energy_in_interval(s.e_a, s.iv_a);
        const double fs = interp.at_energy_in_interval(s.e_b, s.iv_b);
        c12_gain += s.coef * fs * (f1 + fu + 1.0);
        c12_minus += s.coef * fu;
      }
    }

    double c22_gain = 0.0, c22_minus = 0.0, acc221 = 0.0, acc222 = 0.0;
    if (!t22_.empty()) {
      for (int j = 0; j < n; ++j) {
        const double f2 = f[j];
        const int64_t lo = t22_offset_[static_cast<size_t>(i) * n + j];
        const int64_t hi = t22_offset_[static_cast<size_t>(i) * n + j + 1];
        double g = 0.0, m = 0.0, a1 = 0.0, a2 = 0.0;
        for (int64_t k = lo; k < hi; ++k) {
          const ColumnSample& s = t22_[k];
          const double f3 = interp.at_energy_in_interval(s.e3, s.iv3);
          const double f4 = interp.at_energy_in_interval(s.e4, s.iv4);
          const double prod34 = f3 * f4;
          if (rates) {
            g += s.coef * prod34;
            m += s.coef * (1.0 + f3 + f4);
          }
          if (c221) a1 += s.coef * (prod34 - f1 * f2);
          if (c222) a2 += s.coef * (prod34 * (f1 + f2) - f1 * f2 * (f3 + f4));
        }
        if (rates) {
          c22_gain += g * (1.0 + f1 + f2);
          c22_minus += m * f2;
        }
        acc221 += a1;
        acc222 += a2;
      }
    }

    if (rates) {
      rates->c12_gain[i] = c12_gain;
      rates->c12_minus[i] = c12_minus;
      rates->c22_gain[i] = c22_gain;
      rates->c22_minus[i] = c22_minus;
      rates->c12[i] = c12_gain - f1 * c12_minus;
      rates->c22[i] = c22_gain - f1 * c22_minus;
      rates->q[i] = rates->c12[i] + rates->c22[i];
      rates->q_minus[i] = c12_minus + c22_minus;
      if (!std::isfinite(rates->q[i])) {
        throw std::runtime_error("collision rate non-finite at node " + std::to_string(i));
      }
    }
    if (c221) (*c221)[i] = acc221;
    if (c222) (*c222)[i] = acc222;
  });
}

CollisionRates CollisionOperator::apply(const DistributionState& state) const {
  CollisionRates rates;
  eval(state, &rates, nullptr, nullptr);
  return rates;
}

std::vector<double> CollisionOperator::c12_apply(const DistributionState& state) const {
  return apply(state).c12;
}

std::vector<double> CollisionOperator::c22_apply(const DistributionState& state) const {
  return apply(state).c22;
}

std::vector<double> CollisionOperator::c221_apply(const DistributionState& state) const {
  std::vector<double> out;
  eval(state, nullptr, &out, nullptr);
  return out;
}

std::vector<double> CollisionOperator::c222_apply(const DistributionState& state) const {
  std::vector<double> out;
  eval(state, nullptr, nullptr, &out);
  return out;
}

std::vector<double> CollisionOperator::channel(const DistributionState& state,
                                               CollisionChannel which) const {
  switch (which) {
    case CollisionChannel::C12:
      return c12_apply(state);
    case CollisionChannel::C22:
      return c22_apply(state);
    case CollisionChannel::Q:
      return apply(state).q;
    case CollisionChannel::C221:
      return c221_apply(state);
    case CollisionChannel::C222:
      return c222_apply(state);
  }
  throw std::logic_error("unknown collision channel");
}

double CollisionOperator::weak_form(std::span<const double> rate,
                                    std::span<const double> phi) const {
  const int n = grid_->size();
  if (static_cast<int>(rate.size()) != n || static_cast<int>(phi.size()) != n) {
    throw std::invalid_argument("weak_form: size mismatch");
  }
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = grid_->nodes[i];
    sum += grid_->weights[i] * u * u * rate[i] * phi[i];
  }
  return kFourPi * sum;
}

double CollisionOperator::weak_form(const DistributionState& state,
                                    std::span<const double> phi,
                                    CollisionChannel which) const {
  return weak_form(channel(state, which), phi);
}

}  // namespace bosekin
