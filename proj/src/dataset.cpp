#include "wavescale/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>

#include "wavescale/csv.hpp"
#include "wavescale/errors.hpp"

namespace wavescale {

namespace fs = std::filesystem;

void SpectraDataset::validate() const {
  const std::size_t n = samples();
  if (labels.size() != n || sample_ids.size() != n)
    throw IngestionError("dataset has " + std::to_string(n) + " spectra but " +
                         std::to_string(labels.size()) + " labels and " +
                         std::to_string(sample_ids.size()) + " ids");
  if (!mz_values.empty() && mz_values.size() != bins())
    throw IngestionError("dataset has " + std::to_string(bins()) + " bins but " +
                         std::to_string(mz_values.size()) + " m/z values");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] != kCase && labels[i] != kControl)
      throw IngestionError("sample '" + sample_ids[i] + "' has label " +
                           std::to_string(labels[i]) + " (expected 0 or 1)");
    if (!seen.insert(sample_ids[i]).second)
      throw IngestionError("duplicate sample id '" + sample_ids[i] + "'");
  }
}

int parse_label(std::string_view text, const std::string& context) {
  std::string s = trim(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "case" || s == "1") return kCase;
  if (s == "control" || s == "0") return kControl;
  throw IngestionError(context + ": unknown label '" + std::string(text) +
                       "' (expected case or control)");
}

std::string_view label_name(int label) { return label == kCase ? "case" : "control"; }

namespace {

std::string where(const CsvTable& table, std::size_t row) {
  return table.source.string() + ":" + std::to_string(table.line_numbers[row]);
}

struct Spectra {
  std::vector<std::string> ids;
  std::vector<double> mz;
  RowMatrix intensities;
};

Spectra read_matrix(const fs::path& path) {
  const auto table = read_csv(path);
  if (table.header.size() < 2)
    throw IngestionError(path.string() + ": header needs an m/z column and at least one sample id");
  Spectra out;
  out.ids.assign(table.header.begin() + 1, table.header.end());
  const auto samples = static_cast<Eigen::Index>(out.ids.size());
  const auto bins = static_cast<Eigen::Index>(table.rows.size());
  out.intensities.resize(samples, bins);
  out.mz.resize(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (row.size() != table.header.size())
      throw IngestionError(where(table, r) + ": expected " + std::to_string(table.header.size()) +
                           " fields, found " + std::to_string(row.size()));
    out.mz[r] = parse_double(row[0], where(table, r));
    for (Eigen::Index s = 0; s < samples; ++s)
      out.intensities(s, static_cast<Eigen::Index>(r)) =
          parse_double(row[static_cast<std::size_t>(s) + 1],
                       where(table, r) + " sample '" + out.ids[static_cast<std::size_t>(s)] + "'");
  }
  return out;
}

Spectra read_directory(const fs::path& dir) {
  const auto manifest = read_csv(dir / "manifest.csv");
  if (manifest.header.size() < 2 || manifest.header[0] != "sample_id" || manifest.header[1] != "file")
    throw IngestionError((dir / "manifest.csv").string() + ": header must be sample_id,file");
  Spectra out;
  std::vector<std::vector<double>> columns;
  for (std::size_t r = 0; r < manifest.rows.size(); ++r) {
    const auto& row = manifest.rows[r];
    if (row.size() < 2) throw IngestionError(where(manifest, r) + ": expected sample_id,file");
    const auto file = dir / row[1];
    const auto table = read_csv(file);
    std::vector<double> mz, values;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      if (table.rows[i].size() != 2)
        throw IngestionError(where(table, i) + ": expected two fields (m/z, intensity)");
      mz.push_back(parse_double(table.rows[i][0], where(table, i)));
      values.push_back(parse_double(table.rows[i][1], where(table, i)));
    }
    if (out.ids.empty()) {
      out.mz = mz;
    } else if (mz != out.mz) {
      throw IngestionError(file.string() + ": m/z grid differs from the first sample's");
    }
    out.ids.push_back(row[0]);
    columns.push_back(std::move(values));
  }
  out.intensities.resize(static_cast<Eigen::Index>(columns.size()),
                         static_cast<Eigen::Index>(out.mz.size()));
  for (std::size_t s = 0; s < columns.size(); ++s)
    for (std::size_t b = 0; b < out.mz.size(); ++b)
      out.intensities(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(b)) = columns[s][b];
  return out;
}

}  // namespace

SpectraDataset load_dataset(const fs::path& data, const fs::path& labels) {
  if (!fs::exists(data)) throw IngestionError("dataset path does not exist: " + data.string());
  if (!fs::exists(labels)) throw IngestionError("labels file does not exist: " + labels.string());
  Spectra spectra = fs::is_directory(data) ? read_directory(data) : read_matrix(data);

  const auto label_table = read_csv(labels);
  if (label_table.header.size() < 2)
    throw IngestionError(labels.string() + ": header must be sample_id,label");
  std::map<std::string, int> label_of;
  for (std::size_t r = 0; r < label_table.rows.size(); ++r) {
    const auto& row = label_table.rows[r];
    if (row.size() < 2) throw IngestionError(where(label_table, r) + ": expected sample_id,label");
    const int label = parse_label(row[1], where(label_table, r) + " sample '" + row[0] + "'");
    if (!label_of.emplace(row[0], label).second)
      throw IngestionError(where(label_table, r) + ": duplicate label for sample '" + row[0] + "'");
  }

  SpectraDataset out;
  out.sample_ids = spectra.ids;
  out.mz_values = std::move(spectra.mz);
  out.intensities = std::move(spectra.intensities);
  for (const auto& id : out.sample_ids) {
    const auto it = label_of.find(id);
    if (it == label_of.end())
      throw IngestionError(labels.string() + ": no label for sample '" + id + "'");
    out.labels.push_back(it->second);
    label_of.erase(it);
  }
  if (!label_of.empty())
    throw IngestionError(labels.string() + ": label for unknown sample '" + label_of.begin()->first +
                         "'");
  out.validate();
  return out;
}

void write_matrix_csv(const SpectraDataset& dataset, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IngestionError("cannot write " + path.string());
  out << "mz";
  for (const auto& id : dataset.sample_ids) out << ',' << id;
  out << '\n';
  for (std::size_t b = 0; b < dataset.bins(); ++b) {
    out << (dataset.mz_values.empty() ? format_number(static_cast<double>(b + 1))
                                      : format_number(dataset.mz_values[b]));
    for (std::size_t s = 0; s < dataset.samples(); ++s)
      out << ',' << format_number(dataset.intensities(static_cast<Eigen::Index>(s),
                                                      static_cast<Eigen::Index>(b)));
    out << '\n';
  }
}

void write_labels_csv(const SpectraDataset& dataset, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IngestionError("cannot write " + path.string());
  out << "sample_id,label\n";
  for (std::size_t s = 0; s < dataset.samples(); ++s)
    out << dataset.sample_ids[s] << ',' << label_name(dataset.labels[s]) << '\n';
}

void write_sample_directory(const SpectraDataset& dataset, const fs::path& dir) {
  fs::create_directories(dir);
  std::ofstream manifest(dir / "manifest.csv");
  if (!manifest) throw IngestionError("cannot write " + (dir / "manifest.csv").string());
  manifest << "sample_id,file\n";
  for (std::size_t s = 0; s < dataset.samples(); ++s) {
    const std::string file = dataset.sample_ids[s] + ".csv";
    manifest << dataset.sample_ids[s] << ',' << file << '\n';
    std::ofstream out(dir / file);
    out << "M/Z,Intensity\n";
    for (std::size_t b = 0; b < dataset.bins(); ++b) {
      out << (dataset.mz_values.empty() ? format_number(static_cast<double>(b + 1))
                                        : format_number(dataset.mz_values[b]))
          << ','
          << format_number(dataset.intensities(static_cast<Eigen::Index>(s),
                                               static_cast<Eigen::Index>(b)))
          << '\n';
    }
  }
}

SpectraDataset select_rows(const SpectraDataset& dataset, std::span<const std::size_t> rows) {
  SpectraDataset out;
  out.mz_values = dataset.mz_values;
  out.intensities.resize(static_cast<Eigen::Index>(rows.size()), dataset.intensities.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.intensities.row(static_cast<Eigen::Index>(i)) =
        dataset.intensities.row(static_cast<Eigen::Index>(rows[i]));
    out.labels.push_back(dataset.labels[rows[i]]);
    out.sample_ids.push_back(dataset.sample_ids[rows[i]]);
  }
  return out;
}

}  // namespace wavescale
