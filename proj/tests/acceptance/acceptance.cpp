// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "isoppp/analytic.hpp"
#include "isoppp/applications.hpp"
#include "isoppp/bounds.hpp"
#include "isoppp/error.hpp"
#include "isoppp/mcsim.hpp"
#include "isoppp/numerics.hpp"
#include "isoppp/outage.hpp"
#include "oracle.hpp"

#ifdef ISOPPP_HAVE_CLI
#include "cli.hpp"
#endif

using namespace isoppp;
using oracle::kPi;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (!ok) detail << "; ";
      else detail.str("");
      ok = false;
      detail << what;
    }
  }
};

ChannelModel channel(double alpha, double c, FadingLaw fading = FadingLaw::rayleigh()) {
  return ChannelModel{alpha, c, std::move(fading)};
}

LinkConfig link(double lambda, double y0, double d, double beta, std::optional<double> eta = {}) {
  LinkConfig l;
  l.lambda_scale = lambda;
  l.y0_norm = y0;
  l.distance = d;
  l.beta = beta;
  l.eta_db = eta;
  return l;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

int failures = 0;

void criterion(int id, const char* name, const std::function<void(Check&)>& body) {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.ok = false;
    c.detail.str("");
    c.detail << "exception: " << e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!c.ok) ++failures;
  std::printf("%s %2d %s (%.2f s): %s\n", c.ok ? "PASS" : "FAIL", id, name, secs, c.detail.str().c_str());
  std::fflush(stdout);
}

void stationary_mean(Check& c) {
  double worst = 0;
  for (double cc : {0.25, 1.0, 4.0}) {
    const double v = interference_driving_a4(constant_shape(1), 0.0, cc).value;
    worst = std::max(worst, rel(v, kPi * kPi / (2 * std::sqrt(cc))));
  }
  c.detail << "max rel err " << fmt(worst);
  c.require(worst <= 1e-8, "rel err " + fmt(worst));
}

void stationary_laplace(Check& c) {
  double worst = 0;
  for (double s : {0.1, 1.0, 10.0}) {
    const double v = laplace_transform(constant_shape(1), channel(4, 0), 1e-3, 0.0, s);
    worst = std::max(worst, rel(v, std::exp(-1e-3 * kPi * kPi * std::sqrt(s) / 2)));
  }
  c.detail << "max rel err " << fmt(worst);
  c.require(worst <= 1e-8, "rel err " + fmt(worst));
}

void arctan_derivative(Check& c) {
  const double grid[] = {0.5, 1.0, 2.0, 5.0};
  double worst = 0;
  for (double r : grid)
    for (double cc : grid)
      for (double y : grid) {
        const double h = 1e-5 * r;
        const double lhs = kPi / (2 * std::sqrt(cc)) *
                           (arctan_kernel(r + h, cc, y) - arctan_kernel(r - h, cc, y)) / (2 * h);
        const double rhs = oracle::quad(
            [=](double phi) {
              const double q = r * r + y * y - 2 * r * y * std::cos(phi);
              return 2 * r / (cc + q * q);
            },
            0, kPi);
        worst = std::max(worst, rel(lhs, rhs));
      }
  const double lo = std::abs(arctan_kernel(1e-9, 1, 3) + kPi / 2);
  const double hi = std::abs(arctan_kernel(1e9, 1, 3) - kPi / 2);
  c.detail << "max rel err " << fmt(worst) << ", limit errs " << fmt(lo) << " " << fmt(hi);
  c.require(worst <= 1e-6, "derivative rel err " + fmt(worst));
  c.require(lo <= 1e-4 && hi <= 1e-4, "limits off");
}

void mc_mean(Check& c) {
  SimConfig cfg;
  cfg.trials = 100000;
  cfg.seed = 2024;
  double worst = 0;
  for (const ShapeFunction& s : {scattered_shape(100), power_tail_shape(2, 1)})
    for (double alpha : {2.0, 4.0})
      for (double y0 : {0.0, 50.0}) {
        // About ten nodes per length_scale^2, so that nodes close to the
        // receiver are sampled often enough for the standard error to be
        // meaningful.
        const double lambda = 10 / (s.length_scale() * s.length_scale());
        const double ref = mean_interference(s, channel(alpha, 1), lambda, y0).value;
        const SimOutcome o = simulate(s, channel(alpha, 1), link(lambda, y0, 10, 1), {}, cfg);
        const double dev = std::abs(o.mean.value - ref) / (3 * o.mean.std_error + o.truncation_bias_bound);
        worst = std::max(worst, dev);
        c.require(dev <= 1, s.name() + " alpha=" + fmt(alpha) + " y0=" + fmt(y0) + " off by " + fmt(dev));
      }
  if (c.ok) c.detail << "worst |mc - analytic| / (3 se + bias) = " << fmt(worst);
}

void finite_network_outage(Check& c) {
  const ShapeFunction a = finite_network_shape(500, 800);
  std::vector<double> p2, p4;
  for (double y0 = 0; y0 <= 1500; y0 += 5) {
    p2.push_back(outage_exact(a, channel(2, 1), link(1e-3, y0, 10, 0.5)));
    p4.push_back(outage_exact(a, channel(4, 1), link(1e-3, y0, 10, 0.5)));
  }
  bool mono = true, order = true;
  for (std::size_t i = 1; i < p2.size(); ++i) mono = mono && p2[i] <= p2[i - 1] + 1e-12 && p4[i] <= p4[i - 1] + 1e-12;
  for (std::size_t i = 0; 5.0 * i < 800; ++i) order = order && p2[i] >= p4[i];
  c.require(mono, "(a) not monotone");
  c.require(order, "(b) alpha=2 below alpha=4 inside the network");

  const double floor = -std::expm1(-0.5 / 10.0);
  const double n2 = outage_exact(a, channel(2, 1), link(1e-3, 1500, 10, 0.5, 10.0));
  const double n4 = outage_exact(a, channel(4, 1), link(1e-3, 1500, 10, 0.5, 10.0));
  c.require(std::abs(n4 - floor) <= 1e-3, "(c) alpha=4 at 1500: " + fmt(n4) + " vs " + fmt(floor));
  c.require(std::abs(n2 - floor) <= 1e-3, "(c) alpha=2 at 1500: " + fmt(n2) + " vs noise floor " + fmt(floor));

  SimConfig cfg;
  cfg.trials = 20000;
  cfg.seed = 77;
  SimRequest req;
  req.outage = true;
  int spot_fail = 0;
  for (double alpha : {2.0, 4.0})
    for (double y0 : {0.0, 300.0, 600.0, 800.0, 1000.0}) {
      const LinkConfig l = link(1e-3, y0, 10, 0.5);
      const SimOutcome o = simulate(a, channel(alpha, 1), l, req, cfg);
      const double ref = outage_exact(a, channel(alpha, 1), l);
      const double slack = 3 * o.outage->std_error + 0.5 * (1 + std::pow(10.0, alpha)) * o.truncation_bias_bound;
      if (std::abs(o.outage->value - ref) > slack) ++spot_fail;
    }
  c.require(spot_fail == 0, "(d) " + std::to_string(spot_fail) + " of 10 MC spot checks outside 3 se");
  if (c.ok) c.detail << "noise-floor gaps " << fmt(std::abs(n2 - floor)) << " / " << fmt(std::abs(n4 - floor));
}

void log_divergence_checks(Check& c) {
  double zero = 0, gap = 0;
  const ShapeFunction a = finite_network_shape(500, 800);
  const ShapeFunction d = carrier_sense_shape(1e-5, 4);
  for (int i = 0; i < 20; ++i) {
    const double y0 = 50.0 * i;
    zero = std::max(zero, std::abs(log_divergence(constant_shape(1), channel(4, 0), link(1e-3, y0, 10, 1))));
    for (const ShapeFunction* s : {&a, &d}) {
      const LinkConfig l = link(1e-3, y0, 10, 1);
      const double g = log_divergence(*s, channel(4, 0), l);
      gap = std::max(gap, std::abs(g - log_divergence_from_outages(*s, channel(4, 0), l)) / std::max(1.0, std::abs(g)));
    }
  }
  c.detail << "max |gamma| stationary " << fmt(zero) << ", closed-form gap " << fmt(gap);
  c.require(zero <= 1e-9, "stationary gamma " + fmt(zero));
  c.require(gap <= 1e-9, "closed form vs definition " + fmt(gap));
}

void bound_sandwich(Check& c) {
  struct Case {
    std::string label;
    ShapeFunction shape;
    double lambda, y0, tol_fraction;
  };
  const std::vector<Case> cases{
      {"C", scattered_shape(1.0), 1.0, 3.0, 1e-3},
      {"D", carrier_sense_shape(1e-5, 4), 1e-3, 5.0, 1e-2},
  };
  const double theta = 0.1;
  int checked = 0;
  for (const Case& k : cases)
    for (bool unit : {false, true}) {
      const ChannelModel ch = channel(4, 1, unit ? FadingLaw::unit() : FadingLaw::rayleigh());
      const double mean = mean_interference(k.shape, ch, k.lambda, k.y0).value;
      std::vector<double> zs;
      for (int i = 0; i < 10; ++i) zs.push_back(mean * std::pow(10.0, -1.0 + 2.0 * i / 9));
      SimRequest req;
      for (double z : zs) {
        req.tail_levels.push_back(z);
        req.tail_levels.push_back((1 - theta) * z);
      }
      SimConfig cfg;
      cfg.trials = 20000;
      cfg.seed = 31;
      cfg.truncation_tol_fraction = k.tol_fraction;
      const SimOutcome o = simulate(k.shape, ch, link(k.lambda, k.y0, 10, 1), req, cfg);
      for (std::size_t i = 0; i < zs.size(); ++i) {
        const double z = zs[i];
        const Estimate& at = o.tail[2 * i].second;
        const Estimate& below = o.tail[2 * i + 1].second;
        const double lo = lower_tail_bound(k.shape, ch, k.lambda, k.y0, z);
        const double hi = markov_upper_tail(k.shape, ch, k.lambda, k.y0, z);
        // Nodes beyond the truncation radius add at most theta z with
        // probability >= 1 - bias / (theta z).
        const double far = o.truncation_bias_bound / (theta * z);
        c.require(lo <= below.value + 3 * below.std_error + far,
                  k.label + (unit ? " unit" : " rayleigh") + " lower bound above MC at z=" + fmt(z));
        c.require(at.value - 3 * at.std_error <= hi,
                  k.label + (unit ? " unit" : " rayleigh") + " MC above Markov at z=" + fmt(z));
        ++checked;
      }
    }
  const FadingLaw step = FadingLaw::custom([](RandomEngine&) { return 1.0; },
                                           [](double x) { return x <= 1.0 ? 1.0 : 0.0; });
  const ShapeFunction sc = scattered_shape(1.0);
  double gap = 0;
  for (double z : {0.01, 0.05, 0.1, 0.5}) {
    const double u = lower_tail_bound(sc, channel(4, 1, FadingLaw::unit()), 1.0, 3.0, z);
    const double g = lower_tail_bound(sc, channel(4, 1, step), 1.0, 3.0, z);
    gap = std::max(gap, rel(g, u));
  }
  c.require(gap <= 1e-12, "step fading differs from the closed form by " + fmt(gap));
  if (c.ok) c.detail << checked << " z levels sandwiched, step-fading gap " << fmt(gap);
}

void sparse_dense(Check& c) {
  const ShapeFunction p = power_tail_shape(1.5, 1);
  const ChannelModel ch = channel(2, 1);
  const double n3 = expected_count(p, 1e-3, 1e3), n5 = expected_count(p, 1e-3, 1e5);
  const double m3 = truncated_mean(p, ch, 1e-3, 0.0, 1e3), m5 = truncated_mean(p, ch, 1e-3, 0.0, 1e5);
  c.require(n5 / n3 >= 3, "count ratio " + fmt(n5 / n3));
  c.require(rel(m5, m3) <= 0.01, "power-tail mean moved " + fmt(rel(m5, m3)));

  const ShapeFunction l = log_tail_shape(1.0);
  const double l3 = truncated_mean(l, ch, 1e-3, 0.0, 1e3), l6 = truncated_mean(l, ch, 1e-3, 0.0, 1e6);
  c.require(l6 / l3 >= 1.5, "log-tail mean ratio " + fmt(l6 / l3));
  const double lt = laplace_transform(l, ch, 1e-3, 0.0, 1.0);
  c.require(lt == 0.0, "log-tail Laplace transform " + fmt(lt));
  const auto v = classify_finiteness(l, ch);
  c.require(!v.mean_interference_finite && v.interference_as_finite == Tristate::No, "log-tail verdict");
  if (c.ok)
    c.detail << "count x" << fmt(n5 / n3) << ", mean change " << fmt(rel(m5, m3)) << ", log-tail mean x"
             << fmt(l6 / l3);
}

void fhds(Check& c) {
  const ShapeFunction s = scattered_shape(100);
  const double d = 10, beta = 0.5;
  c.require(fh_ds_gain(s, d, beta, 1.0).ratio == 1.0, "ratio at M=1 is not 1");
  const double a2 = interference_driving_a2(s, 0.0, beta * d * d).value;
  const double slope = kPi * s.at_origin() / a2;
  const double ms[] = {4, 16, 64, 256};
  double worst = 0;
  for (int i = 0; i + 1 < 4; ++i) {
    const double r0 = fh_ds_gain(s, d, beta, ms[i]).ratio, r1 = fh_ds_gain(s, d, beta, ms[i + 1]).ratio;
    const double got = (r1 - r0) / std::log(ms[i + 1] / ms[i]);
    worst = std::max(worst, rel(got, slope));
  }
  c.detail << "slope " << fmt(slope) << ", worst rel dev " << fmt(worst);
  c.require(worst <= 0.1, "slope off by " + fmt(worst));
}

void csma(Check& c) {
  const double lambda = 1e-3, delta = 1e-5;
  std::vector<double> peaks;
  for (double beta : {0.1, 1.0, 10.0}) {
    double best = -1, best_d = 0, first = 0, last = 0;
    std::vector<double> ds;
    for (double d = 0.01; d <= 1000; d *= 1.05) ds.push_back(d);
    for (double d : ds) {
      const double v = csma_accuracy_loss(lambda, 4, delta, d, beta);
      if (d == ds.front()) first = v;
      last = v;
      if (v > best) best = v, best_d = d;
    }
    const double at_small = csma_accuracy_loss(lambda, 4, delta, 0.01, beta);
    const double at_large = csma_accuracy_loss(lambda, 4, delta, 1000, beta);
    c.require(best > first && best > last, "no interior maximum for beta=" + fmt(beta));
    c.require(at_small <= 1e-3, "delta(0.01) = " + fmt(at_small) + " for beta=" + fmt(beta));
    c.require(at_large <= 1e-2, "delta(1000) = " + fmt(at_large) + " for beta=" + fmt(beta));
    peaks.push_back(best);
    c.detail << "beta=" << fmt(beta) << " peak " << fmt(best) << " at d=" << fmt(best_d) << "; ";
  }
  c.require(peaks[0] > peaks[1] && peaks[1] > peaks[2], "peaks not decreasing in beta");
}

void capacity_round_trip(Check& c) {
  const ShapeFunction s = scattered_shape(100);
  double worst = 0;
  for (double alpha : {2.0, 4.0})
    for (double eps : {0.01, 0.1, 0.5}) {
      LinkConfig l = link(1e-3, 50, 10, 1);
      l.lambda_scale = capacity_intensity(s, channel(alpha, 0), l, eps);
      worst = std::max(worst, std::abs(outage_exact(s, channel(alpha, 0), l) - eps));
    }
  c.detail << "max |P_o - eps| " << fmt(worst);
  c.require(worst <= 1e-9, "round trip off by " + fmt(worst));
}

void reproducibility(Check& c) {
  SimConfig cfg;
  cfg.trials = 20000;
  cfg.seed = 123;
  SimRequest req;
  req.outage = true;
  req.tail_levels = {1e-6};
  req.laplace_points = {1e4};
  const ShapeFunction s = scattered_shape(100);
  const SimOutcome a = simulate(s, channel(4, 1), link(1e-3, 50, 10, 1), req, cfg);
  const SimOutcome b = simulate(s, channel(4, 1), link(1e-3, 50, 10, 1), req, cfg);
  c.require(a == b, "SimOutcome differs");
#ifdef ISOPPP_HAVE_CLI
  auto csv = [] {
    std::ostringstream out, err;
    cli::run({"simulate", "--shape", "C", "--alpha", "4", "--y0", "50", "--trials", "20000", "--seed", "123",
              "--outage", "--tail", "--z", "1e-6", "--laplace", "--s", "1e4"},
             out, err);
    return out.str();
  };
  const std::string x = csv(), y = csv();
  c.require(!x.empty() && x == y, "CSV differs");
  c.detail << "SimOutcome and CSV identical";
#else
  c.detail << "SimOutcome identical (CLI not built)";
#endif
}

}  // namespace

int main() {
  criterion(1, "stationary mean recovery", stationary_mean);
  criterion(2, "stationary Laplace recovery", stationary_laplace);
  criterion(3, "arctan kernel derivative oracle", arctan_derivative);
  criterion(4, "MC vs analytic mean", mc_mean);
  criterion(5, "finite-network outage curves", finite_network_outage);
  criterion(6, "log-divergence zero case and consistency", log_divergence_checks);
  criterion(7, "tail bound sandwich", bound_sandwich);
  criterion(8, "sparse/dense transition witness", sparse_dense);
  criterion(9, "FH/DS gain scaling", fhds);
  criterion(10, "CSMA accuracy loss profile", csma);
  criterion(11, "capacity round trip", capacity_round_trip);
  criterion(12, "reproducibility", reproducibility);
  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
