#include "gbod/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "gbod/util.hpp"

namespace gbod {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

namespace csv {

Table read(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    Table t;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() && in.peek() == EOF) break;
        auto cells = split_line(line);
        if (first) {
            t.header = cells;
            first = false;
        } else {
            t.rows.push_back(cells);
        }
    }
    if (first) throw std::runtime_error("empty file: " + path);
    return t;
}

}  // namespace csv

std::vector<SchemaEntry> load_schema(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open schema file: " + path);
    std::vector<SchemaEntry> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        auto comma = s.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("schema line " + std::to_string(lineno) +
                                     ": expected \"name,kind\"");
        SchemaEntry e{trim(s.substr(0, comma)), trim(s.substr(comma + 1))};
        if (e.kind != "nominal" && e.kind != "numerical" && e.kind != "label" && e.kind != "ignore")
            throw std::runtime_error("schema line " + std::to_string(lineno) + ": unknown kind \"" +
                                     e.kind + "\"");
        entries.push_back(std::move(e));
    }
    return entries;
}

MixedDataset load_dataset(const std::string& csv_path, const std::vector<SchemaEntry>& schema) {
    csv::Table table = csv::read(csv_path);
    if (table.rows.empty()) throw std::runtime_error(csv_path + ": no samples");

    // map header columns to schema kinds
    std::vector<std::string> kinds(table.header.size());
    int label_col = -1;
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        const std::string& name = table.header[c];
        auto it = std::find_if(schema.begin(), schema.end(),
                               [&](const SchemaEntry& e) { return e.name == name; });
        if (it == schema.end())
            throw std::runtime_error(csv_path + ": column \"" + name + "\" missing from schema");
        kinds[c] = it->kind;
        if (it->kind == "label") {
            if (label_col >= 0)
                throw std::runtime_error(csv_path + ": duplicate label columns \"" +
                                         table.header[label_col] + "\" and \"" + name + "\"");
            label_col = static_cast<int>(c);
        }
    }

    MixedDataset ds;
    std::vector<int> feature_cols;
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        if (kinds[c] == "nominal" || kinds[c] == "numerical") {
            feature_cols.push_back(static_cast<int>(c));
            ds.feature_names.push_back(table.header[c]);
            ds.feature_kinds.push_back(kinds[c] == "nominal" ? AttrKind::nominal
                                                             : AttrKind::numerical);
        }
    }
    if (feature_cols.empty()) throw std::runtime_error(csv_path + ": no feature columns");

    ds.columns.assign(feature_cols.size(), {});
    ds.categories.assign(feature_cols.size(), {});
    std::vector<std::map<std::string, int>> interned(feature_cols.size());

    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        if (row.size() != table.header.size())
            throw std::runtime_error(csv_path + ": row " + std::to_string(r + 2) + " has " +
                                     std::to_string(row.size()) + " cells, expected " +
                                     std::to_string(table.header.size()));
        for (std::size_t f = 0; f < feature_cols.size(); ++f) {
            const std::string& cell = row[feature_cols[f]];
            if (ds.feature_kinds[f] == AttrKind::numerical) {
                double v;
                try {
                    std::size_t pos;
                    v = std::stod(cell, &pos);
                    if (pos != cell.size()) throw std::invalid_argument(cell);
                } catch (const std::exception&) {
                    throw std::runtime_error(csv_path + ": row " + std::to_string(r + 2) +
                                             ", column \"" + ds.feature_names[f] +
                                             "\": cannot parse \"" + cell + "\" as a number");
                }
                if (!std::isfinite(v))
                    throw std::runtime_error(csv_path + ": row " + std::to_string(r + 2) +
                                             ", column \"" + ds.feature_names[f] +
                                             "\": non-finite value");
                ds.columns[f].push_back(v);
            } else {
                auto [it, inserted] =
                    interned[f].try_emplace(cell, static_cast<int>(ds.categories[f].size()));
                if (inserted) ds.categories[f].push_back(cell);
                ds.columns[f].push_back(static_cast<double>(it->second));
            }
        }
        if (label_col >= 0) {
            const std::string& cell = row[label_col];
            if (cell != "0" && cell != "1")
                throw std::runtime_error(csv_path + ": row " + std::to_string(r + 2) +
                                         ": label must be 0 or 1, got \"" + cell + "\"");
            ds.labels.push_back(cell == "1" ? 1 : 0);
        }
    }
    return ds;
}

MixedDataset load_dataset(const std::string& csv_path, const std::string& schema_path) {
    return load_dataset(csv_path, load_schema(schema_path));
}

MixedDataset normalize(const MixedDataset& ds) {
    if (ds.normalized) return ds;
    MixedDataset out = ds;
    for (int a = 0; a < out.n_features(); ++a) {
        if (out.feature_kinds[a] != AttrKind::numerical) continue;
        auto& col = out.columns[a];
        auto [lo_it, hi_it] = std::minmax_element(col.begin(), col.end());
        double lo = *lo_it, hi = *hi_it;
        if (hi == lo) {
            std::fill(col.begin(), col.end(), 0.0);
        } else {
            for (double& v : col) v = (v - lo) / (hi - lo);
        }
    }
    out.normalized = true;
    return out;
}

MixedDataset inject_outliers(const MixedDataset& ds, const InjectionSpec& spec) {
    if (!ds.normalized) throw std::invalid_argument("inject_outliers: dataset must be normalized");
    if (!(spec.ratio > 0.0 && spec.ratio < 1.0))
        throw std::invalid_argument("inject_outliers: ratio must be in (0,1)");
    for (int a = 0; a < ds.n_features(); ++a)
        if (ds.feature_kinds[a] != AttrKind::numerical)
            throw std::invalid_argument("inject_outliers: nominal feature \"" +
                                        ds.feature_names[a] + "\" not supported");

    const int n = ds.n_samples();
    const int d = ds.n_features();
    const long k = ceil_index(spec.ratio * n);

    std::vector<double> mean(d), var(d), lo(d), hi(d);
    for (int a = 0; a < d; ++a) {
        const auto& col = ds.columns[a];
        double m = 0.0;
        for (double v : col) m += v;
        m /= n;
        double ss = 0.0;
        for (double v : col) ss += (v - m) * (v - m);
        mean[a] = m;
        var[a] = ss / n;
        auto [lo_it, hi_it] = std::minmax_element(col.begin(), col.end());
        lo[a] = *lo_it;
        hi[a] = *hi_it;
    }

    // hand-rolled variates on top of mt19937_64 so injections are
    // reproducible across standard-library implementations
    std::mt19937_64 engine(spec.seed);
    auto unit = [&engine]() { return (engine() >> 11) * 0x1.0p-53; };
    auto gauss = [&]() {
        double u1 = unit(), u2 = unit();
        while (u1 <= 0.0) u1 = unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    };
    const double alpha = spec.scale_alpha;

    std::vector<std::vector<double>> rows;
    rows.reserve(k);
    switch (spec.kind) {
        case InjectionKind::local:
            // per-feature Gaussian fit with covariance scaled by alpha^2
            for (long i = 0; i < k; ++i) {
                std::vector<double> row(d);
                for (int a = 0; a < d; ++a)
                    row[a] = mean[a] + std::sqrt(var[a]) * alpha * gauss();
                rows.push_back(std::move(row));
            }
            break;
        case InjectionKind::global: {
            // per-feature uniform over the range expanded by 10%; points that
            // land entirely inside the empirical range are redrawn
            bool escapable = false;
            for (int a = 0; a < d; ++a) escapable = escapable || hi[a] > lo[a];
            if (!escapable)
                throw std::invalid_argument("inject_outliers: all features constant");
            for (long i = 0; i < k; ++i) {
                std::vector<double> row(d);
                bool outside = false;
                for (int attempt = 0; attempt < 10000 && !outside; ++attempt) {
                    for (int a = 0; a < d; ++a) {
                        double margin = 0.05 * (hi[a] - lo[a]);
                        row[a] = lo[a] - margin + (hi[a] - lo[a] + 2 * margin) * unit();
                        if (row[a] < lo[a] || row[a] > hi[a]) outside = true;
                    }
                }
                if (!outside) {
                    for (int a = 0; a < d; ++a)
                        if (hi[a] > lo[a]) {
                            row[a] = hi[a] + 0.05 * (hi[a] - lo[a]);
                            break;
                        }
                }
                rows.push_back(std::move(row));
            }
            break;
        }
        case InjectionKind::group: {
            // tight Gaussian cluster at mean + alpha * pooled std in a random
            // unit direction, covariance shrunk by 1/alpha^2
            double pooled = 0.0;
            for (int a = 0; a < d; ++a) pooled += var[a];
            pooled = std::sqrt(pooled / d);
            std::vector<double> dir(d);
            double norm = 0.0;
            while (norm < 1e-12) {
                norm = 0.0;
                for (int a = 0; a < d; ++a) {
                    dir[a] = gauss();
                    norm += dir[a] * dir[a];
                }
                norm = std::sqrt(norm);
            }
            for (int a = 0; a < d; ++a) dir[a] /= norm;
            for (long i = 0; i < k; ++i) {
                std::vector<double> row(d);
                for (int a = 0; a < d; ++a)
                    row[a] = mean[a] + alpha * pooled * dir[a] +
                             std::sqrt(var[a]) / alpha * gauss();
                rows.push_back(std::move(row));
            }
            break;
        }
    }

    MixedDataset out = ds;
    out.labels.assign(n, 0);
    for (const auto& row : rows) {
        for (int a = 0; a < d; ++a) out.columns[a].push_back(row[a]);
        out.labels.push_back(1);
    }
    out.normalized = false;  // injected values may fall outside [0,1]
    return out;
}

void write_dataset_csv(const MixedDataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    for (int a = 0; a < ds.n_features(); ++a) out << ds.feature_names[a] << ',';
    out << "label\n";
    char buf[40];
    for (int i = 0; i < ds.n_samples(); ++i) {
        for (int a = 0; a < ds.n_features(); ++a) {
            if (ds.feature_kinds[a] == AttrKind::nominal) {
                out << ds.categories[a][static_cast<int>(ds.columns[a][i])];
            } else {
                std::snprintf(buf, sizeof buf, "%.17g", ds.columns[a][i]);
                out << buf;
            }
            out << ',';
        }
        out << (ds.has_labels() ? ds.labels[i] : 0) << '\n';
    }
}

}  // namespace gbod
