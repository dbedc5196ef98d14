#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lassornet/circular_time.hpp"
#include "lassornet/errors.hpp"

namespace lassornet {

struct Sample {
  CircTime zt;
  Eigen::VectorXd expression;  // one value per gene, cohort gene order
};

struct PersonRecord {
  std::string person_id;
  std::vector<Sample> samples;  // collection order
  std::optional<CircTime> dlmo;
};

struct RawCohort {
  std::vector<PersonRecord> people;
  std::vector<std::string> gene_ids;
  std::size_t total_samples() const;
};

struct GeneStats {
  Eigen::VectorXd mean;
  Eigen::VectorXd stdev;  // population (divide-by-n) standard deviation
};

struct NormalizedCohort {
  std::vector<PersonRecord> people;
  std::vector<std::string> gene_ids;       // genes surviving the filter
  GeneStats stats;                         // the statistics applied
  std::vector<std::string> removed_genes;  // zero variance or missing values
  std::size_t total_samples() const;
};

struct SplitCohort {
  NormalizedCohort train;
  NormalizedCohort validation;
  NormalizedCohort test;
};

enum class NormalizationScope {
  kTrainOnly,   // statistics from the training people, applied everywhere
  kFullCohort,  // statistics over every person and sample
};

// long_csv format: header `person_id,sample_index,zt,dlmo,gene_id,value`,
// one row per (sample, gene), `dlmo` empty when unknown, '.' decimal
// separator.  Lines starting with '#' are metadata comments and skipped.
RawCohort load_cohort(const std::string& path);
RawCohort load_cohort(std::istream& in);
void save_cohort(const RawCohort& cohort, const std::string& path,
                 const std::string& metadata_comment = {});
void save_cohort(const RawCohort& cohort, std::ostream& out,
                 const std::string& metadata_comment = {});

// Z-score per gene.  Without explicit stats they are computed over every
// person and sample of this cohort.  Genes with a missing value here or a
// zero standard deviation in the stats are removed (and recorded).
NormalizedCohort normalize(const RawCohort& cohort,
                           const std::optional<GeneStats>& stats = std::nullopt);

// Deterministic person-level partition: floor(0.4 M) people to train,
// floor(0.3 M) each to validation and test, leftovers to validation
// first, then test, then train.
std::array<std::vector<std::size_t>, 3> partition_people(std::size_t count,
                                                         std::uint64_t seed);

// Person-level 0.4/0.3/0.3 split of an already-normalized cohort.
SplitCohort split(const NormalizedCohort& cohort, std::uint64_t seed);

// Split straight from raw data.  kTrainOnly computes the Z-score
// statistics on the training people only (the default, no leakage);
// kFullCohort reproduces the whole-cohort statistics.  Either way the
// removed-gene set is the union over all splits, applied consistently.
SplitCohort split_raw(const RawCohort& cohort, std::uint64_t seed,
                      NormalizationScope scope = NormalizationScope::kTrainOnly);

}  // namespace lassornet
