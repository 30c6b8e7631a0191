#include "hetdp/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <thread>

#include "hetdp/bounds.hpp"
#include "hetdp/stable_sum.hpp"
#include "hetdp/weights.hpp"

namespace hetdp {

namespace {

// Stream ids: trial t draws data from 2t and mechanism noise from 2t+1.
// Profile generation lives far away in stream space so a shared seed never
// collides with trial streams.
constexpr std::uint64_t kGenEpsStream = 0x67656e2d65707300ull;

// Marsaglia-Tsang, boosted for shape < 1.
double gamma_sample(double shape, NoiseSource& ns) {
  if (shape < 1.0) {
    const double u = ns.uniform_open();
    return gamma_sample(shape + 1.0, ns) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / (3.0 * std::sqrt(d));
  for (;;) {
    const double x = ns.normal();
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = ns.uniform_open();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double beta_sample(double alpha, double beta, NoiseSource& ns) {
  const double a = gamma_sample(alpha, ns);
  const double b = gamma_sample(beta, ns);
  return a / (a + b);
}

}  // namespace

double dist_mean(const Distribution& d) {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BetaDist>) {
          return v.alpha / (v.alpha + v.beta) - 0.5;
        } else if constexpr (std::is_same_v<T, BernoulliPair>) {
          return v.delta / 2.0;
        } else {
          return v.c;
        }
      },
      d);
}

double dist_variance(const Distribution& d) {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BetaDist>) {
          const double s = v.alpha + v.beta;
          return v.alpha * v.beta / (s * s * (s + 1.0));
        } else if constexpr (std::is_same_v<T, BernoulliPair>) {
          return 0.25 - v.delta * v.delta / 4.0;
        } else {
          return 0.0;
        }
      },
      d);
}

std::string dist_name(const Distribution& d) {
  char buf[64];
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BetaDist>) {
          std::snprintf(buf, sizeof(buf), "beta(%g,%g)", v.alpha, v.beta);
        } else if constexpr (std::is_same_v<T, BernoulliPair>) {
          std::snprintf(buf, sizeof(buf), "bernoulli(%g)", v.delta);
        } else {
          std::snprintf(buf, sizeof(buf), "point(%g)", v.c);
        }
      },
      d);
  return buf;
}

Distribution parse_distribution(const std::string& text) {
  double a = 0.0;
  double b = 0.0;
  if (std::sscanf(text.c_str(), "beta(%lf,%lf)", &a, &b) == 2) {
    if (!(a > 0.0) || !(b > 0.0)) {
      throw InvalidDistribution("beta shapes must be positive: " + text);
    }
    return BetaDist{a, b};
  }
  if (std::sscanf(text.c_str(), "bernoulli(%lf)", &a) == 1) {
    if (!(a >= -1.0 && a <= 1.0)) {
      throw InvalidDistribution("bernoulli bias must lie in [-1, 1]: " + text);
    }
    return BernoulliPair{a};
  }
  if (std::sscanf(text.c_str(), "point(%lf)", &a) == 1) {
    if (!(a >= -0.5 && a <= 0.5)) {
      throw InvalidDistribution("point mass must lie in [-0.5, 0.5]: " + text);
    }
    return PointMass{a};
  }
  throw InvalidDistribution("cannot parse distribution: " + text);
}

const char* regime_name(EpsRegime r) {
  return r == EpsRegime::low ? "low" : "high";
}

PrivacyProfile gen_eps(EpsRegime regime, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw EmptyProfile();
  const double lo = regime == EpsRegime::low ? -3.0 : -4.0;
  const double hi = regime == EpsRegime::low ? -2.0 : 2.0;
  NoiseSource ns(seed, kGenEpsStream);
  PrivacyProfile p;
  p.eps.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    p.eps[i] = std::exp(ns.uniform(lo, hi));
  }
  return p;
}

Dataset sample_data(const Distribution& dist, std::size_t n, NoiseSource& ns) {
  Dataset d;
  d.x.resize(n);
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BetaDist>) {
          for (std::size_t i = 0; i < n; ++i) {
            d.x[i] = beta_sample(v.alpha, v.beta, ns) - 0.5;
          }
        } else if constexpr (std::is_same_v<T, BernoulliPair>) {
          const double p_plus = (1.0 + v.delta) / 2.0;
          for (std::size_t i = 0; i < n; ++i) {
            d.x[i] = ns.uniform01() < p_plus ? 0.5 : -0.5;
          }
        } else {
          if (!(v.c >= -0.5 && v.c <= 0.5)) {
            throw InvalidDistribution("point mass outside [-0.5, 0.5]");
          }
          std::fill(d.x.begin(), d.x.end(), v.c);
        }
      },
      dist);
  return d;
}

SimulationReport run_mse(const SimulationConfig& cfg, unsigned threads) {
  if (cfg.trials == 0) throw Error("trials must be >= 1");
  std::vector<Method> methods = cfg.methods;
  if (methods.empty()) {
    methods = {Method::adpm, Method::uni, Method::sm, Method::ldpe,
               Method::prop};
  }

  const SortedProfile sp = sort_profile(cfg.profile);
  const WeightAllocation alloc = compute_weights(sp);
  const double mu = dist_mean(cfg.dist);
  const std::size_t n = sp.n();
  const std::size_t trials = cfg.trials;

  // one squared error per (method, trial); filled in parallel, reduced
  // sequentially so the report does not depend on the thread count
  std::vector<std::vector<double>> sq(methods.size());
  for (auto& col : sq) col.resize(trials);

  auto run_range = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t t = lo; t < hi; ++t) {
      NoiseSource data_ns(cfg.seed, 2 * static_cast<std::uint64_t>(t));
      const Dataset data = sample_data(cfg.dist, n, data_ns);
      // every method gets its own copy of the same noise stream, so methods
      // that reduce to the same estimator release the same value
      const NoiseSource noise_ns(cfg.seed,
                                 2 * static_cast<std::uint64_t>(t) + 1);
      for (std::size_t m = 0; m < methods.size(); ++m) {
        double value = 0.0;
        switch (methods[m]) {
          case Method::adpm:
            value = adpm_estimate(alloc, data, noise_ns, cfg.clip).value;
            break;
          case Method::uni:
            value = uni_estimate(sp, data, noise_ns).value;
            break;
          case Method::sm:
            value = sm_estimate(sp, data, noise_ns).value;
            break;
          case Method::ldpe:
            value = ldpe_estimate(sp, data, noise_ns).value;
            break;
          case Method::prop:
            value = prop_estimate(sp, data, noise_ns).value;
            break;
        }
        const double err = value - mu;
        sq[m][t] = err * err;
      }
    }
  };

  unsigned nthreads = threads != 0 ? threads : std::thread::hardware_concurrency();
  if (nthreads == 0) nthreads = 1;
  nthreads = static_cast<unsigned>(
      std::min<std::size_t>(nthreads, trials));

  if (nthreads <= 1) {
    run_range(0, trials);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(nthreads);
    const std::size_t chunk = (trials + nthreads - 1) / nthreads;
    for (unsigned w = 0; w < nthreads; ++w) {
      const std::size_t lo = static_cast<std::size_t>(w) * chunk;
      const std::size_t hi = std::min(trials, lo + chunk);
      pool.emplace_back([&, w, lo, hi] {
        try {
          run_range(lo, hi);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  SimulationReport rep;
  rep.trials = trials;
  rep.true_mean = mu;
  double w2 = 0.0;
  for (double wi : alloc.w) w2 += wi * wi;
  rep.predicted_adpm_mse =
      dist_variance(cfg.dist) * w2 + 2.0 * alloc.eta * alloc.eta;
  rep.worst_case_bound = upper_bound_mse(alloc);

  for (std::size_t m = 0; m < methods.size(); ++m) {
    CompensatedSum acc;
    for (double v : sq[m]) acc.add(v);
    const double mse = acc.value() / static_cast<double>(trials);
    CompensatedSum var_acc;
    for (double v : sq[m]) {
      const double d = v - mse;
      var_acc.add(d * d);
    }
    const double sd =
        trials > 1 ? std::sqrt(var_acc.value() / static_cast<double>(trials - 1))
                   : 0.0;
    MethodStats st;
    st.method = methods[m];
    st.mse = mse;
    st.ln_mse = std::log(mse);
    st.mc_stderr = sd / std::sqrt(static_cast<double>(trials));
    rep.per_method.push_back(st);
  }
  return rep;
}

std::vector<TraceRow> trace_r(const SortedProfile& sp) {
  const WeightAllocation alloc = compute_weights(sp);
  std::vector<TraceRow> rows(sp.n());
  for (std::size_t i = 0; i < sp.n(); ++i) {
    rows[i] = TraceRow{i + 1, sp.eps_sorted[i], alloc.r[i]};
  }
  return rows;
}

std::vector<ScatterPoint> scatter_fh(std::size_t num_sequences,
                                     std::uint64_t seed) {
  std::vector<ScatterPoint> points;
  points.reserve(num_sequences);
  std::vector<double> eps;
  for (std::size_t k = 0; k < num_sequences; ++k) {
    NoiseSource ns(seed, k);
    const std::size_t n = 2 + static_cast<std::size_t>(ns.next_u64() % 199);
    eps.clear();
    double e = std::exp(ns.uniform(-4.0, 2.0));
    eps.push_back(e);
    double l1 = e;
    double l2 = e * e;
    for (std::size_t i = 1; i < n; ++i) {
      const double threshold = (l2 + 8.0) / l1;
      // The draw tends toward the threshold (the gap shrinks e-fold per
      // step), so cap it a hair below: recomputing the threshold later must
      // never see a tie, or the sequence would register as saturated.
      const double cap = threshold * (1.0 - 1e-9);
      double next = e + ns.uniform01() * (threshold - e);
      if (next > cap) next = cap;
      if (next < e) next = e;
      e = next;
      eps.push_back(e);
      l1 += e;
      l2 += e * e;
    }
    const double f = (l2 + 8.0) / (4.0 * l1 * l1);
    const auto [h, p] = lower_bound_h(std::span<const double>(eps));
    (void)p;
    points.push_back(ScatterPoint{std::log(f), std::log(h)});
  }
  return points;
}

}  // namespace hetdp
