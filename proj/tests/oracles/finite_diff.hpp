#pragma once

// Central finite differences over every scalar of ModelParams.

#include <algorithm>
#include <cmath>
#include <span>

#include "model/network.hpp"

namespace testrec::oracle {

inline double relative_error(double analytic, double numeric) {
  return std::abs(analytic - numeric) /
         std::max({std::abs(analytic), std::abs(numeric), 1e-7});
}

// Largest relative error between grad() and central differences with step h.
inline double max_gradient_error(model::ModelParams params,
                                 std::span<const model::EncodedContext> bag,
                                 std::uint32_t label, double h = 1e-5) {
  const model::ModelParams g = model::grad(params, bag, label);
  double worst = 0.0;
  auto probe = [&](double* x, double analytic) {
    const double saved = *x;
    *x = saved + h;
    const double up = model::loss(params, bag, label);
    *x = saved - h;
    const double down = model::loss(params, bag, label);
    *x = saved;
    worst = std::max(worst, relative_error(analytic, (up - down) / (2 * h)));
  };
  auto sweep = [&](auto& p, const auto& gp) {
    for (Eigen::Index i = 0; i < p.size(); ++i) probe(p.data() + i, gp.data()[i]);
  };
  sweep(params.value_embeddings, g.value_embeddings);
  sweep(params.path_embeddings, g.path_embeddings);
  sweep(params.combine, g.combine);
  sweep(params.attention, g.attention);
  sweep(params.label_embeddings, g.label_embeddings);
  return worst;
}

}  // namespace testrec::oracle
