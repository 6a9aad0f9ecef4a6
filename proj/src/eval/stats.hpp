#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace testrec::eval {

// Count/Mean/Std./Max./Min. of one population. std uses divisor n.
struct StatsRow {
  std::string population;
  std::size_t count = 0;
  double mean = 0.0;
  double std = 0.0;
  double max = 0.0;
  double min = 0.0;
};

// Throws NoPairs on an empty sample.
StatsRow summarize(std::string population, std::span<const double> values);

// Percentage of values strictly below `threshold`, in [0, 100]. Empty
// samples give 0.
double percent_below(std::span<const double> values, double threshold);

struct TTestResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;  // two-sided
  bool significant = false;  // p < alpha
};

// Welch's unequal-variance t-test. Throws DegenerateSample when a sample
// has fewer than 2 values or both have zero variance.
TTestResult t_test(std::span<const double> a, std::span<const double> b, double alpha = 0.05);

}  // namespace testrec::eval
