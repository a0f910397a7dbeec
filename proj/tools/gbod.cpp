// Command-line front end: detect | views | inject | eval | stats.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gbod/dataset.hpp"
#include "gbod/evaluation.hpp"
#include "gbod/fusion.hpp"
#include "gbod/granular_ball.hpp"
#include "gbod/util.hpp"

namespace {

using namespace gbod;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

MixedDataset load_with_optional_schema(const std::string& input, const std::string& schema_path) {
    if (!schema_path.empty()) return load_dataset(input, schema_path);
    // default schema: every column numerical, a column named "label" is the label
    csv::Table t = csv::read(input);
    std::vector<SchemaEntry> schema;
    for (const auto& name : t.header)
        schema.push_back({name, name == "label" ? "label" : "numerical"});
    return load_dataset(input, schema);
}

int cmd_detect(const std::string& input, const std::string& schema_path, double delta,
               double lambda, double contamination, double tw_delta, double c_minus,
               std::uint64_t seed, bool invert_ratio, const std::string& scores_path,
               const std::string& report_path, const std::string& views_dump) {
    auto t0 = std::chrono::steady_clock::now();
    MixedDataset raw = load_with_optional_schema(input, schema_path);
    MixedDataset ds = normalize(raw);

    PipelineConfig cfg;
    cfg.delta = delta;
    cfg.lambda = lambda;
    cfg.contamination = contamination;
    cfg.delta_tw = tw_delta;
    cfg.c_minus = c_minus;
    cfg.seed = seed;
    cfg.invert_cost_ratio = invert_ratio;
    PipelineResult res = run_pipeline(ds, cfg);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();

    {
        std::ofstream out(scores_path);
        if (!out) throw std::runtime_error("cannot write file: " + scores_path);
        out << "id,fused,final,region\n";
        std::vector<std::string> region(ds.n_samples(), "BND");
        for (int i : res.fusion.pos) region[i] = "POS";
        for (int i : res.fusion.neg) region[i] = "NEG";
        for (int i = 0; i < ds.n_samples(); ++i)
            out << i << ',' << fmt(res.fusion.fused[i]) << ',' << fmt(res.final_probability[i])
                << ',' << region[i] << '\n';
    }
    if (!views_dump.empty()) dump_views(res.hierarchy, ds, views_dump);
    {
        std::ofstream out(report_path);
        if (!out) throw std::runtime_error("cannot write file: " + report_path);
        out << "input: " << input << '\n';
        out << "samples: " << ds.n_samples() << '\n';
        out << "features: " << ds.n_features() << '\n';
        out << "delta: " << fmt6(delta) << '\n';
        out << "lambda: " << fmt6(lambda) << '\n';
        out << "contamination: " << fmt6(contamination) << '\n';
        out << "tw_delta: " << fmt6(tw_delta) << '\n';
        out << "c_minus: " << fmt6(c_minus) << '\n';
        out << "seed: " << seed << '\n';
        out << "views: " << res.hierarchy.views.size() << '\n';
        std::ostringstream nus;
        for (std::size_t k = 0; k < res.fusion.per_view.size(); ++k) {
            if (k) nus << ' ';
            nus << fmt6(res.fusion.per_view[k].view_weight);
        }
        out << "view_weights: " << nus.str() << '\n';
        out << "alpha: " << fmt(res.fusion.alpha) << '\n';
        out << "beta: " << fmt(res.fusion.beta) << '\n';
        out << "pos: " << res.fusion.pos.size() << '\n';
        out << "bnd: " << res.fusion.bnd.size() << '\n';
        out << "neg: " << res.fusion.neg.size() << '\n';
        out << "refiner: " << (res.svm_used ? "svm" : "fused-fallback") << '\n';
        if (ds.has_labels())
            out << "auroc: " << fmt6(eval::auroc(res.final_probability, ds.labels)) << '\n';
        out << "wall_ms: " << ms << '\n';
        for (const auto& w : res.warnings) out << "warning: " << w << '\n';
    }
    return 0;
}

int cmd_views(const std::string& input, const std::string& schema_path, double delta,
              const std::string& out_path) {
    MixedDataset ds = normalize(load_with_optional_schema(input, schema_path));
    ViewHierarchy h = generate_views(ds, delta);
    dump_views(h, ds, out_path);
    std::cout << "views: " << h.views.size() << '\n';
    std::cout << "balls:";
    for (const auto& v : h.views) std::cout << ' ' << v.balls.size();
    std::cout << '\n';
    return 0;
}

int cmd_inject(const std::string& input, const std::string& schema_path, const std::string& kind,
               double ratio, std::uint64_t seed, double scale_alpha, bool inliers_only,
               const std::string& output) {
    MixedDataset ds = load_with_optional_schema(input, schema_path);
    if (inliers_only && ds.has_labels()) {
        MixedDataset pool;
        pool.feature_names = ds.feature_names;
        pool.feature_kinds = ds.feature_kinds;
        pool.categories = ds.categories;
        pool.columns.resize(ds.n_features());
        for (int i = 0; i < ds.n_samples(); ++i) {
            if (ds.labels[i]) continue;
            for (int a = 0; a < ds.n_features(); ++a)
                pool.columns[a].push_back(ds.columns[a][i]);
        }
        ds = std::move(pool);
    } else {
        ds.labels.clear();
    }
    ds = normalize(ds);

    InjectionSpec spec;
    if (kind == "local")
        spec.kind = InjectionKind::local;
    else if (kind == "global")
        spec.kind = InjectionKind::global;
    else if (kind == "group")
        spec.kind = InjectionKind::group;
    else
        throw CLI::ValidationError("--kind", "must be one of local|global|group");
    spec.ratio = ratio;
    spec.seed = seed;
    spec.scale_alpha = scale_alpha;
    write_dataset_csv(inject_outliers(ds, spec), output);
    return 0;
}

std::vector<double> parse_grid(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

int cmd_eval(const std::string& scores_path, const std::string& labels_path,
             const std::string& score_col, const std::string& label_col,
             const std::string& t_grid, const std::string& report_path,
             const std::string& roc_path) {
    auto column = [](const csv::Table& t, const std::string& name,
                     const std::string& path) -> std::vector<std::string> {
        auto it = std::find(t.header.begin(), t.header.end(), name);
        if (it == t.header.end())
            throw std::runtime_error(path + ": no column named \"" + name + "\"");
        std::size_t c = it - t.header.begin();
        std::vector<std::string> out;
        for (const auto& row : t.rows) out.push_back(row.at(c));
        return out;
    };
    csv::Table st = csv::read(scores_path);
    csv::Table lt = csv::read(labels_path);
    std::vector<double> probs;
    for (const auto& cell : column(st, score_col, scores_path)) probs.push_back(std::stod(cell));
    std::vector<int> labels;
    for (const auto& cell : column(lt, label_col, labels_path))
        labels.push_back(cell == "1" ? 1 : 0);
    if (probs.size() != labels.size())
        throw std::runtime_error("score and label files disagree on row count");

    std::vector<double> grid = parse_grid(t_grid);
    double a = eval::auroc(probs, labels);
    std::ofstream out(report_path);
    if (!out) throw std::runtime_error("cannot write file: " + report_path);
    out << "auroc: " << fmt6(a) << '\n';
    for (double t : grid) {
        auto [prec, rec] = eval::precision_recall(probs, labels, t);
        out << "t: " << fmt6(t) << " precision: " << fmt6(prec) << " recall: " << fmt6(rec)
            << '\n';
    }
    if (!roc_path.empty()) {
        std::ofstream roc(roc_path);
        if (!roc) throw std::runtime_error("cannot write file: " + roc_path);
        roc << "fpr\ttpr\n";
        for (auto [fpr, tpr] : eval::roc_points(probs, labels))
            roc << fmt(fpr) << '\t' << fmt(tpr) << '\n';
    }
    std::cout << "auroc: " << fmt6(a) << '\n';
    return 0;
}

int cmd_stats(const std::string& table_path, double q_phi, const std::string& cells,
              int n_datasets) {
    csv::Table t = csv::read(table_path);
    // a leading non-numeric column holds dataset names
    bool named_rows = false;
    if (!t.rows.empty()) {
        try {
            std::size_t pos;
            (void)std::stod(t.rows[0][0], &pos);
            named_rows = pos != t.rows[0][0].size();
        } catch (const std::exception&) {
            named_rows = true;
        }
    }
    const std::size_t first_col = named_rows ? 1 : 0;
    std::vector<std::vector<double>> values;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        std::vector<double> row;
        for (std::size_t c = first_col; c < t.rows[r].size(); ++c) {
            try {
                row.push_back(std::stod(t.rows[r][c]));
            } catch (const std::exception&) {
                throw std::runtime_error(table_path + ": row " + std::to_string(r + 2) +
                                         ", column " + std::to_string(c + 1) +
                                         ": not a number: \"" + t.rows[r][c] + "\"");
            }
        }
        values.push_back(std::move(row));
    }
    if (values.empty()) throw std::runtime_error(table_path + ": no data rows");

    double chi2, f;
    int m = static_cast<int>(values[0].size());
    int n;
    if (cells == "avgrank") {
        if (values.size() != 1)
            throw std::runtime_error("--cells avgrank expects exactly one data row");
        if (n_datasets < 2) throw std::runtime_error("--cells avgrank requires --datasets");
        n = n_datasets;
        std::tie(chi2, f) = eval::friedman_from_mean_ranks(values[0], n_datasets);
    } else {
        eval::RankTable rt;
        rt.ranks = values;
        if (cells == "auroc")
            for (auto& row : rt.ranks) row = eval::ranks_descending(row);
        else if (cells != "rank")
            throw CLI::ValidationError("--cells", "must be one of rank|auroc|avgrank");
        n = static_cast<int>(rt.ranks.size());
        std::tie(chi2, f) = eval::friedman_statistic(rt);
    }
    std::cout << "methods: " << m << '\n';
    std::cout << "datasets: " << n << '\n';
    std::cout << "tau_chi2: " << fmt6(chi2) << '\n';
    std::cout << "tau_f: " << fmt6(f) << '\n';
    std::cout << "cd: " << fmt6(eval::nemenyi_cd(m, n, q_phi)) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-scale granular-ball outlier detection"};
    app.require_subcommand(1);

    // detect
    std::string input, schema_path, scores_path = "scores.csv", report_path = "report.txt";
    std::string views_dump;
    double delta = 1.0, lambda = 1.0, contamination = 0.1, tw_delta = 0.7, c_minus = 1.0;
    std::uint64_t seed = 0;
    bool invert_ratio = false;
    auto* detect = app.add_subcommand("detect", "run the full detection pipeline");
    detect->add_option("--input", input, "input CSV")->required();
    detect->add_option("--schema", schema_path, "schema sidecar (default: all columns numerical)");
    detect->add_option("--delta", delta, "similarity threshold parameter")->required();
    detect->add_option("--lambda", lambda, "density weighting strength")->required();
    detect->add_option("--contamination", contamination, "assumed outlier proportion t")
        ->required();
    detect->add_option("--tw-delta", tw_delta, "three-way band parameter")->capture_default_str();
    detect->add_option("--c-minus", c_minus, "base SVM penalty")->capture_default_str();
    detect->add_option("--seed", seed, "run seed (recorded in the report)")->capture_default_str();
    detect->add_flag("--invert-cost-ratio", invert_ratio, "swap the C+/C- penalty ratio");
    detect->add_option("--scores", scores_path, "per-sample output CSV")->capture_default_str();
    detect->add_option("--report", report_path, "run report path")->capture_default_str();
    detect->add_option("--views-dump", views_dump, "optional view hierarchy dump");

    // views
    std::string views_out = "views.tsv";
    auto* views = app.add_subcommand("views", "generate and dump the multi-scale views");
    views->add_option("--input", input, "input CSV")->required();
    views->add_option("--schema", schema_path, "schema sidecar");
    views->add_option("--delta", delta, "similarity threshold parameter")->required();
    views->add_option("--out", views_out, "output dump path")->capture_default_str();

    // inject
    std::string kind = "local", inject_out = "injected.csv";
    double ratio = 0.1, scale_alpha = 5.0;
    bool inliers_only = false;
    auto* inject = app.add_subcommand("inject", "append synthetic outliers to a dataset");
    inject->add_option("--input", input, "input CSV")->required();
    inject->add_option("--schema", schema_path, "schema sidecar");
    inject->add_option("--kind", kind, "local|global|group")->required();
    inject->add_option("--ratio", ratio, "injected fraction of the pool size")->required();
    inject->add_option("--seed", seed, "RNG seed")->capture_default_str();
    inject->add_option("--scale-alpha", scale_alpha, "injection scale parameter")->capture_default_str();
    inject->add_flag("--inliers-only", inliers_only, "drop labeled outliers before injecting");
    inject->add_option("--output", inject_out, "output CSV")->capture_default_str();

    // eval
    std::string labels_path, score_col = "final", label_col = "label", roc_path;
    std::string t_grid =
        "0.05,0.10,0.15,0.20,0.25,0.30,0.35,0.40,0.45,0.50,"
        "0.55,0.60,0.65,0.70,0.75,0.80,0.85,0.90,0.95,0.99";
    std::string eval_report = "eval.txt";
    auto* evalc = app.add_subcommand("eval", "precision/recall/AUROC of a score file");
    evalc->add_option("--scores", scores_path, "CSV with a score column")->required();
    evalc->add_option("--labels", labels_path, "CSV with a 0/1 label column")->required();
    evalc->add_option("--score-column", score_col, "score column name")->capture_default_str();
    evalc->add_option("--label-column", label_col, "label column name")->capture_default_str();
    evalc->add_option("--t-grid", t_grid, "comma-separated contamination grid")->capture_default_str();
    evalc->add_option("--report", eval_report, "report path")->capture_default_str();
    evalc->add_option("--roc", roc_path, "optional ROC points TSV");

    // stats
    std::string table_path, cells = "rank";
    double q_phi = 3.2680;
    int n_datasets = 0;
    auto* stats = app.add_subcommand("stats", "Friedman / Nemenyi statistics of a rank table");
    stats->add_option("--table", table_path, "CSV: rows=datasets, columns=methods")->required();
    stats->add_option("--q", q_phi, "Tukey critical value q_phi")->capture_default_str();
    stats->add_option("--cells", cells, "rank|auroc|avgrank")->capture_default_str();
    stats->add_option("--datasets", n_datasets, "dataset count for --cells avgrank");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*detect)
            return cmd_detect(input, schema_path, delta, lambda, contamination, tw_delta, c_minus,
                              seed, invert_ratio, scores_path, report_path, views_dump);
        if (*views) return cmd_views(input, schema_path, delta, views_out);
        if (*inject)
            return cmd_inject(input, schema_path, kind, ratio, seed, scale_alpha, inliers_only,
                              inject_out);
        if (*evalc)
            return cmd_eval(scores_path, labels_path, score_col, label_col, t_grid, eval_report,
                            roc_path);
        if (*stats) return cmd_stats(table_path, q_phi, cells, n_datasets);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
