#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gbod {

enum class AttrKind { nominal, numerical };

/// Tabular data with mixed nominal/numerical feature columns and an optional
/// binary outlier label per row. Nominal cells are interned category ids;
/// the id -> original token mapping is kept per column.
struct MixedDataset {
    std::vector<std::string> feature_names;
    std::vector<AttrKind> feature_kinds;
    // column-major; nominal columns hold category ids (0, 1, ...) as doubles
    std::vector<std::vector<double>> columns;
    // per nominal column: id -> token (empty for numerical columns)
    std::vector<std::vector<std::string>> categories;
    // 1 = outlier, 0 = inlier; empty when the file carries no label column
    std::vector<int> labels;
    bool normalized = false;

    int n_samples() const { return columns.empty() ? 0 : static_cast<int>(columns[0].size()); }
    int n_features() const { return static_cast<int>(columns.size()); }
    bool has_labels() const { return !labels.empty(); }
    double value(int row, int attr) const { return columns[attr][row]; }
};

enum class InjectionKind { local, global, group };

struct InjectionSpec {
    InjectionKind kind = InjectionKind::local;
    double ratio = 0.1;            // in (0,1); ceil(ratio*n) rows are appended
    std::uint64_t seed = 0;
    double scale_alpha = 5.0;
};

/// Schema sidecar: one "column-name,kind" line per column with kind in
/// {nominal, numerical, label, ignore}.
struct SchemaEntry {
    std::string name;
    std::string kind;
};

std::vector<SchemaEntry> load_schema(const std::string& path);

/// Parses a CSV (header row, comma separator) under the sidecar schema.
/// Numerical cells must be finite reals; the label column, if any, must hold
/// 0/1. Errors carry the offending row/column.
MixedDataset load_dataset(const std::string& csv_path, const std::vector<SchemaEntry>& schema);
MixedDataset load_dataset(const std::string& csv_path, const std::string& schema_path);

/// Min-max scales every numerical column to [0,1]; constant columns map to
/// all zeros; nominal columns pass through. No-op on already-normalized data.
MixedDataset normalize(const MixedDataset& ds);

/// Appends ceil(ratio*n) synthetic outlier rows to the (normalized,
/// all-numerical) dataset. Original rows keep label 0, appended rows get 1.
/// Deterministic for a fixed spec.
MixedDataset inject_outliers(const MixedDataset& ds, const InjectionSpec& spec);

/// Writes the dataset back out in the input CSV dialect with a trailing
/// "label" column (1 = outlier).
void write_dataset_csv(const MixedDataset& ds, const std::string& path);

namespace csv {
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};
Table read(const std::string& path);
}  // namespace csv

}  // namespace gbod
