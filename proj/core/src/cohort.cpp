#include "lassornet/cohort.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "lassornet/rng.hpp"

namespace lassornet {

namespace {

constexpr std::uint64_t kSplitStream = 11;

const char* kHeader = "person_id,sample_index,zt,dlmo,gene_id,value";

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

double parse_double(const std::string& text, std::size_t line_no, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line_no) + ": bad " + what + " '" + text + "'");
  }
}

long parse_long(const std::string& text, std::size_t line_no, const char* what) {
  try {
    std::size_t used = 0;
    const long v = std::stol(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line_no) + ": bad " + what + " '" + text + "'");
  }
}

struct SampleBuilder {
  double zt = 0.0;
  std::string dlmo_text;
  std::map<std::string, double> values;
  bool zt_set = false;
};

Eigen::VectorXd column_of(const std::vector<const Sample*>& samples, Eigen::Index gene) {
  Eigen::VectorXd col(static_cast<Eigen::Index>(samples.size()));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    col[static_cast<Eigen::Index>(i)] = samples[i]->expression[gene];
  }
  return col;
}

std::vector<const Sample*> all_samples(const std::vector<PersonRecord>& people) {
  std::vector<const Sample*> flat;
  for (const auto& person : people) {
    for (const auto& sample : person.samples) flat.push_back(&sample);
  }
  return flat;
}

NormalizedCohort apply_stats(const RawCohort& cohort, const GeneStats& stats,
                             const std::vector<bool>& keep) {
  NormalizedCohort out;
  std::vector<Eigen::Index> kept;
  for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(cohort.gene_ids.size()); ++k) {
    if (keep[static_cast<std::size_t>(k)]) {
      kept.push_back(k);
      out.gene_ids.push_back(cohort.gene_ids[static_cast<std::size_t>(k)]);
    } else {
      out.removed_genes.push_back(cohort.gene_ids[static_cast<std::size_t>(k)]);
    }
  }
  if (kept.empty()) {
    throw AllGenesRemovedError("normalize: every gene was removed");
  }
  out.stats.mean.resize(static_cast<Eigen::Index>(kept.size()));
  out.stats.stdev.resize(static_cast<Eigen::Index>(kept.size()));
  for (std::size_t i = 0; i < kept.size(); ++i) {
    out.stats.mean[static_cast<Eigen::Index>(i)] = stats.mean[kept[i]];
    out.stats.stdev[static_cast<Eigen::Index>(i)] = stats.stdev[kept[i]];
  }
  out.people.reserve(cohort.people.size());
  for (const auto& person : cohort.people) {
    PersonRecord rec;
    rec.person_id = person.person_id;
    rec.dlmo = person.dlmo;
    rec.samples.reserve(person.samples.size());
    for (const auto& sample : person.samples) {
      Sample ns;
      ns.zt = sample.zt;
      ns.expression.resize(static_cast<Eigen::Index>(kept.size()));
      for (std::size_t i = 0; i < kept.size(); ++i) {
        const Eigen::Index k = kept[i];
        ns.expression[static_cast<Eigen::Index>(i)] =
            (sample.expression[k] - stats.mean[k]) / stats.stdev[k];
      }
      rec.samples.push_back(std::move(ns));
    }
    out.people.push_back(std::move(rec));
  }
  return out;
}

GeneStats compute_stats(const std::vector<const Sample*>& samples, Eigen::Index genes) {
  GeneStats stats;
  stats.mean = Eigen::VectorXd::Zero(genes);
  stats.stdev = Eigen::VectorXd::Zero(genes);
  const double n = static_cast<double>(samples.size());
  for (Eigen::Index k = 0; k < genes; ++k) {
    const Eigen::VectorXd col = column_of(samples, k);
    const double mean = col.sum() / n;
    stats.mean[k] = mean;
    stats.stdev[k] = std::sqrt((col.array() - mean).square().sum() / n);
  }
  return stats;
}

RawCohort subset_people(const RawCohort& cohort, const std::vector<std::size_t>& idx) {
  RawCohort out;
  out.gene_ids = cohort.gene_ids;
  for (const std::size_t i : idx) out.people.push_back(cohort.people[i]);
  return out;
}

}  // namespace

std::size_t RawCohort::total_samples() const {
  std::size_t n = 0;
  for (const auto& person : people) n += person.samples.size();
  return n;
}

std::size_t NormalizedCohort::total_samples() const {
  std::size_t n = 0;
  for (const auto& person : people) n += person.samples.size();
  return n;
}

RawCohort load_cohort(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open cohort file '" + path + "'");
  return load_cohort(in);
}

RawCohort load_cohort(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::string header;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    header = line;
    break;
  }
  if (header.empty()) throw ParseError("empty cohort file");
  if (header != kHeader) {
    throw ParseError("bad header, expected '" + std::string(kHeader) + "'");
  }

  // person order and gene order follow first appearance
  std::vector<std::string> person_order;
  std::map<std::string, std::map<long, SampleBuilder>> people;
  std::vector<std::string> gene_order;
  std::map<std::string, Eigen::Index> gene_index;

  bool any_row = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_fields(line);
    if (fields.size() != 6) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 6 columns, got " +
                       std::to_string(fields.size()));
    }
    any_row = true;
    const std::string& person_id = fields[0];
    if (person_id.empty()) {
      throw ParseError("line " + std::to_string(line_no) + ": empty person_id");
    }
    const long sample_index = parse_long(fields[1], line_no, "sample_index");
    const double zt = parse_double(fields[2], line_no, "zt");
    const std::string& dlmo_text = fields[3];
    const std::string& gene_id = fields[4];
    if (gene_id.empty()) {
      throw ParseError("line " + std::to_string(line_no) + ": empty gene_id");
    }
    const double value =
        fields[5].empty() ? std::nan("") : parse_double(fields[5], line_no, "value");

    if (people.find(person_id) == people.end()) person_order.push_back(person_id);
    if (gene_index.find(gene_id) == gene_index.end()) {
      gene_index[gene_id] = static_cast<Eigen::Index>(gene_order.size());
      gene_order.push_back(gene_id);
    }

    SampleBuilder& builder = people[person_id][sample_index];
    if (!builder.zt_set) {
      builder.zt = zt;
      builder.dlmo_text = dlmo_text;
      builder.zt_set = true;
    } else {
      if (builder.zt != zt) {
        throw ParseError("line " + std::to_string(line_no) + ": zt differs across rows of " +
                         person_id + " sample " + std::to_string(sample_index));
      }
      if (builder.dlmo_text != dlmo_text) {
        throw ParseError("line " + std::to_string(line_no) + ": dlmo differs across rows of " +
                         person_id + " sample " + std::to_string(sample_index));
      }
    }
    if (!builder.values.emplace(gene_id, value).second) {
      throw DuplicateSampleError("duplicate row for person " + person_id + " sample " +
                                 std::to_string(sample_index) + " gene " + gene_id);
    }
  }
  if (!any_row) throw ParseError("cohort file has a header but no rows");

  RawCohort cohort;
  cohort.gene_ids = gene_order;
  for (const auto& person_id : person_order) {
    PersonRecord rec;
    rec.person_id = person_id;
    std::optional<double> dlmo_value;
    for (const auto& [sample_index, builder] : people[person_id]) {
      if (builder.values.size() != gene_order.size()) {
        throw InconsistentGenesError("person " + person_id + " sample " +
                                     std::to_string(sample_index) + " has " +
                                     std::to_string(builder.values.size()) + " genes, expected " +
                                     std::to_string(gene_order.size()));
      }
      Sample sample;
      sample.zt = CircTime(builder.zt);
      sample.expression.resize(static_cast<Eigen::Index>(gene_order.size()));
      for (const auto& [gene_id, value] : builder.values) {
        sample.expression[gene_index[gene_id]] = value;
      }
      if (!builder.dlmo_text.empty()) {
        const double d = parse_double(builder.dlmo_text, 0, "dlmo");
        if (dlmo_value && *dlmo_value != d) {
          throw ParseError("person " + person_id + " has conflicting dlmo values");
        }
        dlmo_value = d;
      }
      rec.samples.push_back(std::move(sample));
    }
    if (dlmo_value) rec.dlmo = CircTime(*dlmo_value);
    cohort.people.push_back(std::move(rec));
  }
  return cohort;
}

void save_cohort(const RawCohort& cohort, const std::string& path,
                 const std::string& metadata_comment) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  save_cohort(cohort, out, metadata_comment);
}

void save_cohort(const RawCohort& cohort, std::ostream& out,
                 const std::string& metadata_comment) {
  if (!metadata_comment.empty()) out << "# " << metadata_comment << "\n";
  out << kHeader << "\n";
  out.precision(17);
  for (const auto& person : cohort.people) {
    for (std::size_t j = 0; j < person.samples.size(); ++j) {
      const auto& sample = person.samples[j];
      for (std::size_t k = 0; k < cohort.gene_ids.size(); ++k) {
        out << person.person_id << ',' << j << ',' << sample.zt.hours() << ',';
        if (person.dlmo) out << person.dlmo->hours();
        out << ',' << cohort.gene_ids[k] << ','
            << sample.expression[static_cast<Eigen::Index>(k)] << "\n";
      }
    }
  }
}

NormalizedCohort normalize(const RawCohort& cohort, const std::optional<GeneStats>& stats) {
  const Eigen::Index genes = static_cast<Eigen::Index>(cohort.gene_ids.size());
  const auto flat = all_samples(cohort.people);
  if (flat.empty()) throw EmptyInputError("normalize: cohort has no samples");

  GeneStats use;
  if (stats) {
    if (stats->mean.size() != genes || stats->stdev.size() != genes) {
      throw DimensionMismatchError("normalize: stats length does not match gene count");
    }
    use = *stats;
  } else {
    use = compute_stats(flat, genes);
  }

  std::vector<bool> keep(static_cast<std::size_t>(genes), true);
  for (Eigen::Index k = 0; k < genes; ++k) {
    const Eigen::VectorXd col = column_of(flat, k);
    const bool missing = !col.allFinite();
    if (missing || use.stdev[k] == 0.0 || !std::isfinite(use.stdev[k]) ||
        !std::isfinite(use.mean[k])) {
      keep[static_cast<std::size_t>(k)] = false;
    }
  }
  return apply_stats(cohort, use, keep);
}

std::array<std::vector<std::size_t>, 3> partition_people(std::size_t count, std::uint64_t seed) {
  if (count < 3) throw TooFewPeopleError("split: need at least 3 people");
  std::vector<std::size_t> order(count);
  for (std::size_t i = 0; i < count; ++i) order[i] = i;
  Rng rng(derive_seed(seed, kSplitStream));
  rng.shuffle(order);

  std::size_t n_train = static_cast<std::size_t>(std::floor(0.4 * static_cast<double>(count)));
  std::size_t n_val = static_cast<std::size_t>(std::floor(0.3 * static_cast<double>(count)));
  std::size_t n_test = static_cast<std::size_t>(std::floor(0.3 * static_cast<double>(count)));
  std::size_t leftover = count - n_train - n_val - n_test;
  // leftovers: validation first, then test, then train
  while (leftover > 0) {
    ++n_val;
    --leftover;
    if (leftover > 0) {
      ++n_test;
      --leftover;
    }
    if (leftover > 0) {
      ++n_train;
      --leftover;
    }
  }

  std::array<std::vector<std::size_t>, 3> parts;
  parts[0].assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  parts[1].assign(order.begin() + static_cast<std::ptrdiff_t>(n_train),
                  order.begin() + static_cast<std::ptrdiff_t>(n_train + n_val));
  parts[2].assign(order.begin() + static_cast<std::ptrdiff_t>(n_train + n_val), order.end());
  for (auto& part : parts) std::sort(part.begin(), part.end());
  return parts;
}

namespace {

NormalizedCohort take_people(const NormalizedCohort& cohort, const std::vector<std::size_t>& idx) {
  NormalizedCohort out;
  out.gene_ids = cohort.gene_ids;
  out.stats = cohort.stats;
  out.removed_genes = cohort.removed_genes;
  for (const std::size_t i : idx) out.people.push_back(cohort.people[i]);
  return out;
}

}  // namespace

SplitCohort split(const NormalizedCohort& cohort, std::uint64_t seed) {
  const auto parts = partition_people(cohort.people.size(), seed);
  return {take_people(cohort, parts[0]), take_people(cohort, parts[1]),
          take_people(cohort, parts[2])};
}

SplitCohort split_raw(const RawCohort& cohort, std::uint64_t seed, NormalizationScope scope) {
  if (scope == NormalizationScope::kFullCohort) {
    return split(normalize(cohort), seed);
  }
  const auto parts = partition_people(cohort.people.size(), seed);

  // remove genes with a missing value anywhere, plus zero-variance genes
  // on the training people, so every split keeps the same gene set
  const Eigen::Index genes = static_cast<Eigen::Index>(cohort.gene_ids.size());
  const auto train_raw = subset_people(cohort, parts[0]);
  const auto train_flat = all_samples(train_raw.people);
  if (train_flat.empty()) throw EmptyInputError("split: training part has no samples");
  const GeneStats train_stats = compute_stats(train_flat, genes);

  const auto full_flat = all_samples(cohort.people);
  std::vector<bool> keep(static_cast<std::size_t>(genes), true);
  for (Eigen::Index k = 0; k < genes; ++k) {
    const bool missing = !column_of(full_flat, k).allFinite();
    if (missing || train_stats.stdev[k] == 0.0) keep[static_cast<std::size_t>(k)] = false;
  }

  NormalizedCohort normalized = apply_stats(cohort, train_stats, keep);
  return {take_people(normalized, parts[0]), take_people(normalized, parts[1]),
          take_people(normalized, parts[2])};
}

}  // namespace lassornet
