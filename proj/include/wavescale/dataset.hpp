#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wavescale/types.hpp"

namespace wavescale {

/// Spectra stored one sample per row.
struct SpectraDataset {
  RowMatrix intensities;           // samples x bins
  std::vector<double> mz_values;   // length bins, or empty when unknown
  std::vector<int> labels;         // kCase / kControl
  std::vector<std::string> sample_ids;

  std::size_t samples() const { return static_cast<std::size_t>(intensities.rows()); }
  std::size_t bins() const { return static_cast<std::size_t>(intensities.cols()); }

  /// Throws IngestionError on inconsistent sizes, labels outside {0,1} or
  /// duplicate sample ids.
  void validate() const;
};

/// Accepts "case"/"control" (any case) or "1"/"0".
int parse_label(std::string_view text, const std::string& context);
std::string_view label_name(int label);

/// Loads spectra plus labels.
///
/// `data` is either
///  - a matrix CSV: header `<mz column name>,<id_1>,...,<id_S>`, then one row
///    per m/z bin holding the m/z value followed by one intensity per sample; or
///  - a directory holding `manifest.csv` (header `sample_id,file`) and one
///    two-column CSV (m/z, intensity, with header) per sample. All samples
///    must share the same m/z grid.
/// `labels` is a CSV with header `sample_id,label`. Every sample must have
/// exactly one label and every labelled id must exist.
SpectraDataset load_dataset(const std::filesystem::path& data,
                            const std::filesystem::path& labels);

void write_matrix_csv(const SpectraDataset& dataset, const std::filesystem::path& path);
void write_labels_csv(const SpectraDataset& dataset, const std::filesystem::path& path);
/// Per-sample directory layout (manifest.csv plus one file per sample).
void write_sample_directory(const SpectraDataset& dataset, const std::filesystem::path& dir);

SpectraDataset select_rows(const SpectraDataset& dataset, std::span<const std::size_t> rows);

}  // namespace wavescale
