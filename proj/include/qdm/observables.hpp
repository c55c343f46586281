#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qdm/dynamics.hpp"
#include "qdm/models.hpp"

namespace qdm {

enum class Collector { Detector, System };

std::string_view to_string(Collector collector) noexcept;

// Collector current I = sum_c sigma_cc * Gamma_R^(c) over the states whose
// collector-adjacent well is occupied.
struct CurrentSpec {
  struct Term {
    std::string label;
    double width;
  };
  std::vector<Term> terms;
  Collector collector = Collector::System;

  // Labels must exist in space, be unique, and carry non-negative widths.
  void validate(const StateSpace& space) const;
};

// Standard collector specs for each model.
CurrentSpec system_current(const SingleDotDetectorParams& p);
CurrentSpec detector_current(const SingleDotDetectorParams& p);
CurrentSpec system_current(const DoubleDotParams& p);  // bare double dot
CurrentSpec reduced_system_current(const DoubleDotParams& p);
CurrentSpec system_current(const DoubleDotDetectorParams& p);
CurrentSpec detector_current(const DoubleDotDetectorParams& p);

double current(const DensityVector& state, const CurrentSpec& spec);

// Q(t) = int_0^t I dt by the trapezoid rule; Q(times.front()) = 0.
std::vector<double> accumulated_charge(const Trajectory& traj, const CurrentSpec& spec);

// |s_pair(t)| at every grid point.
std::vector<double> coherence_envelope(const Trajectory& traj, const CoherencePair& pair);

}  // namespace qdm
