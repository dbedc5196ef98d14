#pragma once

#include <cstdint>
#include <nlohmann/json_fwd.hpp>

#include "lassornet/cohort.hpp"

namespace lassornet {

// Generator for desk-scale cohorts shaped like the longitudinal study
// designs: a fixed sampling grid per person, a person-level phase offset
// (the DLMO time), rhythmic genes that follow that offset, and pure-noise
// filler genes.
struct SynthSpec {
  std::size_t people = 30;
  std::size_t samples_per_person = 8;
  std::size_t genes = 200;
  std::size_t rhythmic_genes = 40;
  double amplitude_min = 0.8;
  double amplitude_max = 1.2;
  double noise_sd = 0.3;
  double dlmo_min = 20.0;  // hours; the range may wrap past midnight
  double dlmo_max = 26.0;
  double zt_start = 0.0;
  double zt_interval = 4.0;

  static SynthSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

// Rhythmic gene k for person i:  a_k * sin(pi (zt + Z_i) / 12 + phi_k) + eps.
// Remaining genes are pure noise.  Z_i is drawn uniformly from the DLMO
// range and recorded as the person's ground-truth DLMO.  Bit-reproducible
// for a fixed (spec, seed).
RawCohort synth_cohort(const SynthSpec& spec, std::uint64_t seed);

}  // namespace lassornet
