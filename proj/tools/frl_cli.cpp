// frl: mine antecedents, train falling / softly falling rule lists, evaluate
// them, and cross-check the pruning bounds against exhaustive enumeration.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "frl/antecedent.hpp"
#include "frl/bounds.hpp"
#include "frl/dataset.hpp"
#include "frl/errors.hpp"
#include "frl/eval.hpp"
#include "frl/model_io.hpp"
#include "frl/oracle.hpp"
#include "frl/rulelist.hpp"
#include "frl/search.hpp"

using namespace frl;

namespace {

constexpr int kUsage = 1;
constexpr int kData = 2;
constexpr int kViolation = 3;

struct DataOptions {
    std::string path, label_col, positive_value;
    std::size_t bins = 4;
    double split = 0;  // 0: no split
    std::uint64_t seed = 42;
};

struct MiningOptions {
    std::size_t max_preds = 2;
    std::string min_support = "0.10";
    std::string antecedents_path;
    bool serial = false;
};

struct SearchOptions {
    std::string w = "1", c = "0", c1 = "0.5";
    std::size_t iters = 3000;
    double lambda = 0.5, p_term = 0.05;
    bool verify = false;
};

struct Loaded {
    BinaryDataset train;
    std::optional<BinaryDataset> test;
};

void add_data_options(CLI::App* app, DataOptions& o, bool with_split) {
    app->add_option("--data", o.path, "CSV file")->required();
    app->add_option("--label-col", o.label_col, "label column name")->required();
    app->add_option("--positive-value", o.positive_value, "label value of the positive class")->required();
    app->add_option("--bins", o.bins, "quantile bins per numeric column")->capture_default_str();
    if (with_split) app->add_option("--split", o.split, "train fraction; the rest is held out");
    app->add_option("--seed", o.seed, "seed for splitting and search")->capture_default_str();
}

void add_mining_options(CLI::App* app, MiningOptions& o, bool allow_file) {
    app->add_option("--max-preds", o.max_preds, "predicates per antecedent (1 or 2)")->capture_default_str();
    app->add_option("--min-support", o.min_support, "minimum support fraction within either class")
        ->capture_default_str();
    if (allow_file) app->add_option("--antecedents", o.antecedents_path, "antecedent JSON from `mine`");
    app->add_flag("--serial", o.serial, "disable OpenMP kernels");
}

void add_search_options(CLI::App* app, SearchOptions& o, bool soft) {
    app->add_option("--w", o.w, "positive-class weight")->capture_default_str();
    app->add_option("--c", o.c, "cost per rule")->capture_default_str();
    if (soft) app->add_option("--c1", o.c1, "monotonicity penalty")->capture_default_str();
    app->add_option("--iters", o.iters, "search iterations")->capture_default_str();
    app->add_option("--lambda", o.lambda, "curiosity mixing weight")->capture_default_str();
    app->add_option("--p-term", o.p_term, "per-level stop probability")->capture_default_str();
    app->add_flag("--verify", o.verify, "re-check every admitted candidate");
}

Loaded load(const DataOptions& o) {
    if (o.bins < 2) throw std::invalid_argument("--bins must be at least 2");
    RawDataset raw = load_csv(o.path, CsvOptions{o.label_col, o.positive_value});
    if (raw.dropped_rows > 0)
        std::cerr << "warning: dropped " << raw.dropped_rows << " rows with missing numeric values\n";
    if (o.split == 0) return Loaded{binarize(raw, o.bins), std::nullopt};
    auto [train_rows, test_rows] = split_rows(raw.n_rows, o.split, o.seed);
    const RawDataset train_raw = raw.select_rows(train_rows);
    const BinningSchema schema = fit_binning(train_raw, o.bins);
    return Loaded{apply_binning(train_raw, schema), apply_binning(raw.select_rows(test_rows), schema)};
}

AntecedentSet antecedents_for(const BinaryDataset& data, const MiningOptions& o) {
    if (!o.antecedents_path.empty())
        return antecedents_from_json(nlohmann::json::parse(read_text_file(o.antecedents_path)), data);
    return mine(data, o.max_preds, Rational::parse(o.min_support), !o.serial);
}

SearchConfig config_for(const SearchOptions& s, const MiningOptions& m, std::uint64_t seed, bool soft) {
    SearchConfig cfg;
    cfg.params.w = Rational::parse(s.w);
    cfg.params.C = Rational::parse(s.c);
    cfg.params.C1 = soft ? Rational::parse(s.c1) : Rational(0);
    cfg.iterations = s.iters;
    cfg.seed = seed;
    cfg.lambda = s.lambda;
    cfg.p_terminate = s.p_term;
    cfg.parallel_kernels = !m.serial;
    cfg.verify_candidates = s.verify;
    cfg.validate();
    return cfg;
}

void print_report(std::ostream& out, const EvalReport& r) {
    out << "tp " << r.tp << "  fp " << r.fp << "  tn " << r.tn << "  fn " << r.fn << '\n'
        << "tpr " << r.tpr << "  fpr " << r.fpr << '\n'
        << "weighted loss " << r.weighted_loss.to_double() << " (w=" << r.w.str() << ", tau=" << r.tau.str() << ")\n";
}

int cmd_mine(const DataOptions& d, const MiningOptions& m, const std::string& out_path) {
    const Loaded data = load(d);
    const AntecedentSet a = mine(data.train, m.max_preds, Rational::parse(m.min_support), !m.serial);
    const std::string text = antecedents_to_json(a, data.train).dump(2) + "\n";
    if (out_path.empty()) std::cout << text;
    else write_text_file(out_path, text);
    std::cerr << a.m() << " antecedents from " << data.train.num_predicates() << " predicates, n="
              << data.train.n() << '\n';
    return 0;
}

int cmd_train(const DataOptions& d, const MiningOptions& m, const SearchOptions& s, bool soft,
              const std::string& out_path, const std::string& trace_path, const std::string& candidates_path) {
    const Loaded data = load(d);
    const AntecedentSet a = antecedents_for(data.train, m);
    const SearchConfig cfg = config_for(s, m, d.seed, soft);
    const SearchResult result = soft ? run_soft_frl(data.train, a, cfg) : run_frl(data.train, a, cfg);

    Model model = make_model(result.best, data.train, cfg.params, result.best_objective);
    model.label_column = d.label_col;
    model.positive_value = d.positive_value;
    if (!out_path.empty()) save_model(model, out_path);
    if (!trace_path.empty()) {
        std::ostringstream os;
        write_trace_csv(os, result.trace);
        write_text_file(trace_path, os.str());
    }
    if (!candidates_path.empty()) {
        std::ostringstream os;
        write_candidates_csv(os, result.trace);
        write_text_file(candidates_path, os.str());
    }

    std::cout << render_rulelist(result.best, model.predicate_names());
    std::cout << (soft ? "soft objective " : "objective ") << result.best_objective.to_double() << "  ("
              << result.best_objective.str() << "), " << a.m() << " antecedents, n=" << data.train.n() << '\n';
    if (data.test) {
        std::cout << "held-out:\n";
        print_report(std::cout, evaluate(result.best, *data.test, cfg.params.w));
    }
    return 0;
}

int cmd_eval(const std::string& model_path, DataOptions d, const std::string& w_text, const std::string& part,
             const std::string& out_path) {
    const Model model = load_model(model_path);
    if (d.label_col.empty()) d.label_col = model.label_column;
    if (d.positive_value.empty()) d.positive_value = model.positive_value;
    RawDataset raw = load_csv(d.path, CsvOptions{d.label_col, d.positive_value});
    if (d.split != 0) {
        auto [train_rows, test_rows] = split_rows(raw.n_rows, d.split, d.seed);
        if (part == "train") raw = raw.select_rows(train_rows);
        else if (part == "test") raw = raw.select_rows(test_rows);
        else if (part != "all") throw std::invalid_argument("--part must be train, test or all");
    }
    const BinaryDataset data = apply_binning(raw, model.schema);
    const RuleList list = bind_model(model, data);
    const Rational w = w_text.empty() ? model.params.w : Rational::parse(w_text);
    const EvalReport r = evaluate(list, data, w);
    print_report(std::cout, r);
    if (!out_path.empty()) {
        std::ostringstream os;
        os << "tp,fp,tn,fn,tpr,fpr,weighted_loss,w,tau\n"
           << r.tp << ',' << r.fp << ',' << r.tn << ',' << r.fn << ',' << r.tpr << ',' << r.fpr << ','
           << r.weighted_loss.to_double() << ',' << r.w.to_double() << ',' << r.tau.to_double() << '\n';
        write_text_file(out_path, os.str());
    }
    return 0;
}

int cmd_roc(DataOptions d, const MiningOptions& m, const SearchOptions& s, const std::string& grid,
            const std::string& out_path) {
    if (d.split == 0) d.split = 0.8;
    const Loaded data = load(d);
    const AntecedentSet a = antecedents_for(data.train, m);
    std::vector<Rational> ws;
    std::stringstream ss(grid);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) ws.push_back(Rational::parse(item));
    const auto points = roc_sweep(data.train, *data.test, a, ws, config_for(s, m, d.seed, true));
    std::ostringstream os;
    write_roc_csv(os, points);
    if (out_path.empty()) std::cout << os.str();
    else write_text_file(out_path, os.str());
    return 0;
}

struct OracleCheckOptions {
    std::size_t max_antecedents = 12, max_len = 4, trials = 200, rows = 60;
    std::uint64_t seed = 1;
};

void print_reproducer(const Instance& inst, const std::vector<std::size_t>& prefix, const ObjectiveParams& p,
                      const char* which, const BoundReport& r) {
    std::cout << "VIOLATION (" << which << " bound): bound " << r.bound.str() << " > enumerated "
              << (r.enumerated_min ? r.enumerated_min->str() : "none") << '\n'
              << "w=" << p.w.str() << " C=" << p.C.str() << " C1=" << p.C1.str() << '\n'
              << "prefix:";
    for (auto l : prefix) std::cout << ' ' << inst.antecedents[l].name(inst.data);
    std::cout << "\nantecedents:";
    for (const auto& a : inst.antecedents) std::cout << ' ' << a.name(inst.data);
    std::cout << "\ndataset:\n";
    write_instance_csv(std::cout, inst.data);
}

int cmd_oracle_check(const OracleCheckOptions& o) {
    check_oracle_guard(o.max_antecedents, o.max_len);
    Rng rng(o.seed);
    const Rational ws[] = {1, 3, 7};
    const Rational cs[] = {0, Rational(1, 100), Rational(1, 20)};
    const Rational c1s[] = {Rational(1, 10), Rational(1, 2), 2};
    std::size_t hard_checked = 0, soft_checked = 0;
    for (std::size_t t = 0; t < o.trials; ++t) {
        Instance inst = random_instance(rng.next(), {o.rows, 2 + rng.below(o.max_antecedents - 1)});
        ObjectiveParams p{ws[rng.below(3)], cs[rng.below(3)], c1s[rng.below(3)]};
        const std::size_t plen = rng.below(std::min<std::size_t>(o.max_len, 2) + 1);

        const auto falling = random_prefix(inst.data, inst.antecedents, rng, plen, true);
        PrefixState st = PrefixState::empty(inst.data);
        for (auto l : falling) st = st.extend(inst.data, inst.antecedents, l, p);
        if (is_feasible(bound_inputs(st, p, ObjectiveKind::hard))) {
            const auto r = verify_prefix_bound(falling, inst.data, inst.antecedents, p, ObjectiveKind::hard, o.max_len);
            ++hard_checked;
            if (!r.sound) {
                print_reproducer(inst, falling, p, "hard", r);
                return kViolation;
            }
        }
        const auto any = random_prefix(inst.data, inst.antecedents, rng, plen, false);
        const auto r = verify_prefix_bound(any, inst.data, inst.antecedents, p, ObjectiveKind::soft, o.max_len);
        ++soft_checked;
        if (!r.sound) {
            print_reproducer(inst, any, p, "soft", r);
            return kViolation;
        }
    }
    std::cout << "ok: " << hard_checked << " hard and " << soft_checked << " soft prefixes, no violations\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Falling rule lists: mining, training, evaluation"};
    app.require_subcommand(1);

    DataOptions data;
    MiningOptions mining;
    SearchOptions search;
    std::string out, trace, candidates, model_path, w_text, part = "test", grid = "1,3,5,7,9,11,13,15,17,19",
                                                              outcome = "success";
    OracleCheckOptions oc;

    auto* mine_cmd = app.add_subcommand("mine", "mine frequent antecedents");
    add_data_options(mine_cmd, data, true);
    add_mining_options(mine_cmd, mining, false);
    mine_cmd->add_option("--out", out, "output JSON (default stdout)");

    CLI::App* train_cmds[2];
    for (int soft = 0; soft < 2; ++soft) {
        auto* cmd = app.add_subcommand(soft ? "train-softfrl" : "train-frl",
                                       soft ? "learn a softly falling rule list" : "learn a falling rule list");
        add_data_options(cmd, data, true);
        add_mining_options(cmd, mining, true);
        add_search_options(cmd, search, soft);
        cmd->add_option("--out", out, "model JSON");
        cmd->add_option("--trace", trace, "objective trace CSV");
        cmd->add_option("--candidates-trace", candidates, "per-level candidate counts CSV");
        train_cmds[soft] = cmd;
    }

    auto* eval_cmd = app.add_subcommand("eval", "evaluate a model on a CSV");
    eval_cmd->add_option("--model", model_path, "model JSON")->required();
    eval_cmd->add_option("--data", data.path, "CSV file")->required();
    eval_cmd->add_option("--label-col", data.label_col, "label column (default: from the model)");
    eval_cmd->add_option("--positive-value", data.positive_value, "positive label (default: from the model)");
    eval_cmd->add_option("--split", data.split, "recreate a train/test split");
    eval_cmd->add_option("--seed", data.seed, "split seed")->capture_default_str();
    eval_cmd->add_option("--part", part, "train, test or all")->capture_default_str();
    eval_cmd->add_option("--w", w_text, "weight (default: the model's)");
    eval_cmd->add_option("--out", out, "metrics CSV");

    auto* roc_cmd = app.add_subcommand("roc-sweep", "train at each w and report held-out TPR/FPR");
    add_data_options(roc_cmd, data, true);
    add_mining_options(roc_cmd, mining, true);
    add_search_options(roc_cmd, search, true);
    roc_cmd->add_option("--w-grid", grid, "comma-separated weights")->capture_default_str();
    roc_cmd->add_option("--out", out, "output CSV (default stdout)");

    auto* oracle_cmd = app.add_subcommand("oracle-check", "compare the prefix bounds with exhaustive enumeration");
    oracle_cmd->add_option("--max-antecedents", oc.max_antecedents)->capture_default_str();
    oracle_cmd->add_option("--max-len", oc.max_len)->capture_default_str();
    oracle_cmd->add_option("--trials", oc.trials)->capture_default_str();
    oracle_cmd->add_option("--rows", oc.rows)->capture_default_str();
    oracle_cmd->add_option("--seed", oc.seed)->capture_default_str();

    auto* render_cmd = app.add_subcommand("render", "print a model as an IF/ELSE table");
    render_cmd->add_option("--model", model_path, "model JSON")->required();
    render_cmd->add_option("--outcome", outcome, "outcome word in the table")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }

    try {
        if (*mine_cmd) return cmd_mine(data, mining, out);
        if (*train_cmds[0]) return cmd_train(data, mining, search, false, out, trace, candidates);
        if (*train_cmds[1]) return cmd_train(data, mining, search, true, out, trace, candidates);
        if (*eval_cmd) return cmd_eval(model_path, data, w_text, part, out);
        if (*roc_cmd) return cmd_roc(data, mining, search, grid, out);
        if (*oracle_cmd) return cmd_oracle_check(oc);
        if (*render_cmd) {
            const Model m = load_model(model_path);
            std::cout << render_rulelist(m.list, m.predicate_names(), outcome);
            return 0;
        }
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kData;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kData;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
