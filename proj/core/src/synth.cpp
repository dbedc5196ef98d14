#include "lassornet/synth.hpp"

#include <cmath>
#include <nlohmann/json.hpp>

#include "lassornet/rng.hpp"

namespace lassornet {

namespace {
constexpr std::uint64_t kSynthStream = 23;

void validate(const SynthSpec& spec) {
  if (spec.people == 0) throw BadSpecError("synth: people must be positive");
  if (spec.samples_per_person == 0) throw BadSpecError("synth: samples_per_person must be positive");
  if (spec.genes == 0) throw BadSpecError("synth: genes must be positive");
  if (spec.rhythmic_genes > spec.genes) {
    throw BadSpecError("synth: rhythmic_genes exceeds genes");
  }
  if (spec.amplitude_min < 0.0 || spec.amplitude_max < spec.amplitude_min) {
    throw BadSpecError("synth: bad amplitude range");
  }
  if (spec.noise_sd < 0.0) throw BadSpecError("synth: noise_sd must be nonnegative");
  if (spec.dlmo_max < spec.dlmo_min) throw BadSpecError("synth: bad dlmo range");
  if (spec.zt_interval <= 0.0) throw BadSpecError("synth: zt_interval must be positive");
}

std::string padded(const char* prefix, std::size_t index, std::size_t count) {
  std::size_t width = 1;
  for (std::size_t c = count; c >= 10; c /= 10) ++width;
  std::string digits = std::to_string(index);
  while (digits.size() < width) digits.insert(digits.begin(), '0');
  return prefix + digits;
}

}  // namespace

SynthSpec SynthSpec::from_json(const nlohmann::json& j) {
  SynthSpec spec;
  spec.people = j.value("people", spec.people);
  spec.samples_per_person = j.value("samples_per_person", spec.samples_per_person);
  spec.genes = j.value("genes", spec.genes);
  spec.rhythmic_genes = j.value("rhythmic_genes", spec.rhythmic_genes);
  spec.amplitude_min = j.value("amplitude_min", spec.amplitude_min);
  spec.amplitude_max = j.value("amplitude_max", spec.amplitude_max);
  spec.noise_sd = j.value("noise_sd", spec.noise_sd);
  spec.dlmo_min = j.value("dlmo_min", spec.dlmo_min);
  spec.dlmo_max = j.value("dlmo_max", spec.dlmo_max);
  spec.zt_start = j.value("zt_start", spec.zt_start);
  spec.zt_interval = j.value("zt_interval", spec.zt_interval);
  return spec;
}

nlohmann::json SynthSpec::to_json() const {
  return nlohmann::json{{"people", people},
                        {"samples_per_person", samples_per_person},
                        {"genes", genes},
                        {"rhythmic_genes", rhythmic_genes},
                        {"amplitude_min", amplitude_min},
                        {"amplitude_max", amplitude_max},
                        {"noise_sd", noise_sd},
                        {"dlmo_min", dlmo_min},
                        {"dlmo_max", dlmo_max},
                        {"zt_start", zt_start},
                        {"zt_interval", zt_interval}};
}

RawCohort synth_cohort(const SynthSpec& spec, std::uint64_t seed) {
  validate(spec);
  Rng rng(derive_seed(seed, kSynthStream));

  // gene parameters first, then people; fixed order keeps the output
  // bit-reproducible
  std::vector<double> amplitude(spec.rhythmic_genes);
  std::vector<double> phase(spec.rhythmic_genes);
  for (std::size_t k = 0; k < spec.rhythmic_genes; ++k) {
    amplitude[k] = rng.uniform(spec.amplitude_min, spec.amplitude_max);
    phase[k] = rng.uniform(0.0, 2.0 * kPi);
  }

  RawCohort cohort;
  cohort.gene_ids.reserve(spec.genes);
  for (std::size_t k = 0; k < spec.genes; ++k) {
    cohort.gene_ids.push_back(padded("gene_", k, spec.genes));
  }

  cohort.people.reserve(spec.people);
  for (std::size_t i = 0; i < spec.people; ++i) {
    PersonRecord person;
    person.person_id = padded("person_", i, spec.people);
    const double z = rng.uniform(spec.dlmo_min, spec.dlmo_max);
    person.dlmo = CircTime(z);
    person.samples.reserve(spec.samples_per_person);
    for (std::size_t j = 0; j < spec.samples_per_person; ++j) {
      const double zt = spec.zt_start + static_cast<double>(j) * spec.zt_interval;
      Sample sample;
      sample.zt = CircTime(zt);
      sample.expression.resize(static_cast<Eigen::Index>(spec.genes));
      const double ict = zt + z;
      for (std::size_t k = 0; k < spec.genes; ++k) {
        double value = 0.0;
        if (k < spec.rhythmic_genes) {
          value = amplitude[k] * std::sin(kPi * ict / 12.0 + phase[k]);
        }
        if (spec.noise_sd > 0.0) value += rng.normal(0.0, spec.noise_sd);
        sample.expression[static_cast<Eigen::Index>(k)] = value;
      }
      person.samples.push_back(std::move(sample));
    }
    cohort.people.push_back(std::move(person));
  }
  return cohort;
}

}  // namespace lassornet
