#pragma once

// Welch p-values frozen from ttest_oracle.py (numerical integration of the
// t density at 50 digits).

#include <vector>

namespace testrec::oracle {

struct TTestFixture {
  const char* name;
  std::vector<double> a;
  std::vector<double> b;
  double t;
  double df;
  double p;
};

inline const std::vector<TTestFixture>& ttest_fixtures() {
  static const std::vector<TTestFixture> fixtures = {
      {"small",
       {0.48, 0.52, 0.61, 0.39, 0.55, 0.47},
       {0.35, 0.29, 0.41, 0.33, 0.38},
       4.0909202449810376246,
       8.3847410436791449904,
       0.0031510651953289846981},
      {"unequal",
       {1.2, 2.4, 1.9, 3.1, 2.2, 2.8, 1.7, 2.5, 3.0, 2.1},
       {0.4, 3.9, 1.1},
       0.45127494705008431729,
       2.1262280321595145295,
       0.69366993811017330637},
      {"close",
       {10.1, 9.8, 10.3, 10.0, 9.9, 10.2, 10.4},
       {10.0, 10.1, 9.7, 10.2, 9.9, 10.3, 9.8, 10.1},
       0.80472174850131471755,
       12.474310350790229057,
       0.43604974548500531175},
  };
  return fixtures;
}

}  // namespace testrec::oracle
