#pragma once
/**
 * @file experiments.hpp
 * @brief Scripted numeric reproductions producing row tables and verdicts.
 */

#include <cstdint>
#include <vector>

#include "qhkit/maps.hpp"
#include "qhkit/metrics.hpp"
#include "qhkit/report.hpp"

namespace qhkit {

/// Slit disk, x' = (1/2, t), y' = (1/2, -t): j', k_upper', log(1 + 1/t), ratio.
ExperimentResult run_example1(const std::vector<double>& t_values, int level = kDefaultLevel);

/// Straight tube of length m√2 against its zigzag image; j_D closed form and the
/// bound j_D' <= log(1 + K/r), K = 2 M̂ diam(box).
ExperimentResult run_example2(const std::vector<int>& m_values, double r = 0.05, double bend = 1.5707963267948966,
                              std::uint64_t seed = 7, const ZigzagLayout& layout = {});

/// Quasihyperbolic length of [x, y] inside B(x, d(x)) against (1/(1-s)) log(1 + |x-y|/d(x)).
ExperimentResult run_lemma1(std::size_t trials, const std::vector<double>& s_values, std::uint64_t seed = 1,
                            double tol = 1e-8);

/// ĉ and ĉ' for the ball, a punctured ball and the slit disk at levels level-1 and level.
ExperimentResult run_uniformity(int level = kDefaultLevel, std::uint64_t seed = 3, std::size_t pairs = 24);

}  // namespace qhkit
