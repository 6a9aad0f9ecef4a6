#include "eval/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/special_functions/beta.hpp>

#include "common/errors.hpp"

namespace testrec::eval {

StatsRow summarize(std::string population, std::span<const double> values) {
  if (values.empty()) throw NoPairs("no values for population '" + population + "'");
  StatsRow row;
  row.population = std::move(population);
  row.count = values.size();
  const double n = static_cast<double>(values.size());
  row.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - row.mean) * (v - row.mean);
  row.std = std::sqrt(ss / n);
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  row.min = *lo;
  row.max = *hi;
  // Rounding can push the mean a hair outside [min, max] for constant samples.
  row.mean = std::clamp(row.mean, row.min, row.max);
  return row;
}

double percent_below(std::span<const double> values, double threshold) {
  if (values.empty()) return 0.0;
  const auto below =
      std::count_if(values.begin(), values.end(), [=](double v) { return v < threshold; });
  return 100.0 * static_cast<double>(below) / static_cast<double>(values.size());
}

namespace {

struct Moments {
  double n;
  double mean;
  double var;  // unbiased
};

Moments moments(std::span<const double> x) {
  const double n = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return {n, mean, ss / (n - 1.0)};
}

}  // namespace

TTestResult t_test(std::span<const double> a, std::span<const double> b, double alpha) {
  if (a.size() < 2 || b.size() < 2)
    throw DegenerateSample("t-test needs at least 2 values per sample");
  const Moments ma = moments(a);
  const Moments mb = moments(b);
  const double sa = ma.var / ma.n;
  const double sb = mb.var / mb.n;
  if (sa + sb == 0.0) throw DegenerateSample("t-test samples both have zero variance");

  TTestResult r;
  r.t = (ma.mean - mb.mean) / std::sqrt(sa + sb);
  r.df = (sa + sb) * (sa + sb) / (sa * sa / (ma.n - 1.0) + sb * sb / (mb.n - 1.0));
  // P(|T| > t) = I_{df/(df+t^2)}(df/2, 1/2)
  const double x = r.df / (r.df + r.t * r.t);
  r.p = x >= 1.0 ? 1.0 : boost::math::ibeta(r.df / 2.0, 0.5, x);
  r.significant = r.p < alpha;
  return r;
}

}  // namespace testrec::eval
