// sentigraph: user-level topical sentiment prediction over a superimposed
// heterogeneous social graph. Subcommands cover the whole pipeline:
// generate -> pagerank -> estimate/train -> infer -> evaluate, plus a
// one-shot `pipeline` driven by a config file.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sentigraph/sentigraph.hpp"

namespace sg = sentigraph;
namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

// Every run leaves a manifest next to its outputs. The manifest records the
// run, it is not itself a data output (its duration field varies run to run).
void write_manifest(const std::string& command, const ordered_json& config,
                    const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs, const Timer& timer,
                    const std::string& path) {
    ordered_json j;
    j["tool"] = "sentigraph";
    j["version"] = kVersion;
    j["command"] = command;
    j["config"] = config;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    j["duration_ms"] = timer.ms();
    std::ofstream out(path);
    if (!out) throw sg::IoError("cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
}

std::string manifest_path(const std::string& out_path) { return out_path + ".manifest.json"; }

struct GenerateOpts {
    sg::SynthConfig config;
    std::vector<std::string> link_specs;
    std::string out = "graph.json";
    std::string truth_out;
    std::string config_out;
};

void apply_link_specs(sg::SynthConfig& config, const std::vector<std::string>& specs) {
    if (specs.empty()) {
        // default family: homophilous mutual-follow links only
        config.link_probs[static_cast<int>(sg::LinkType::MutualFollow)] = {0.10, 0.01};
        return;
    }
    for (const std::string& s : specs) {
        auto c1 = s.find(':');
        auto c2 = s.find(':', c1 == std::string::npos ? s.size() : c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw sg::InvalidConfig("--link expects TYPE:intra:inter, got " + s);
        auto g = sg::link_type_from_name(s.substr(0, c1));
        if (!g) throw sg::InvalidConfig("unknown link type in --link " + s);
        auto& lp = config.link_probs[static_cast<int>(*g)];
        lp.intra = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
        lp.inter = std::stod(s.substr(c2 + 1));
    }
}

int cmd_generate(const GenerateOpts& opts_in) {
    Timer timer;
    GenerateOpts opts = opts_in;
    apply_link_specs(opts.config, opts.link_specs);
    opts.config.validate();
    sg::Rng rng(opts.config.rng_seed);
    sg::SynthResult result = sg::generate(opts.config, rng);
    sg::save_graph(result.graph, opts.out);
    std::vector<std::string> outputs{opts.out};
    if (!opts.truth_out.empty()) {
        sg::save_truth_tsv(result.truth, opts.truth_out);
        outputs.push_back(opts.truth_out);
    }
    if (!opts.config_out.empty()) {
        std::ofstream cf(opts.config_out);
        cf << sg::synth_config_to_json(opts.config).dump(2) << "\n";
        outputs.push_back(opts.config_out);
    }
    write_manifest("generate", sg::synth_config_to_json(opts.config), {}, outputs, timer,
                   manifest_path(opts.out));
    std::cout << "generated " << result.graph.num_users() << " users, "
              << result.graph.num_tweets() << " tweets, " << result.graph.num_typed_edges()
              << " typed edges -> " << opts.out << "\n";
    return 0;
}

struct PagerankOpts {
    std::string graph_path;
    std::string out = "influence.tsv";
    double damping = 0.85;
    double tol = 1e-12;
    int max_iter = 1000;
    std::string normalize = "mean_one";
};

int cmd_pagerank(const PagerankOpts& opts) {
    Timer timer;
    sg::HeterogeneousGraph graph = sg::load_graph(opts.graph_path);
    sg::InfluenceScores inf =
        sg::compute_pagerank(sg::user_user_subgraph(graph), opts.damping, opts.tol, opts.max_iter);
    if (opts.normalize == "mean_one")
        inf = sg::normalize_influence(std::move(inf), sg::InfluenceNormalization::MeanOne);
    else if (opts.normalize != "raw")
        throw sg::InvalidConfig("--normalize must be raw or mean_one");
    sg::save_influence_tsv(inf, graph, opts.out);
    ordered_json cfg{{"damping", opts.damping}, {"tol", opts.tol},
                     {"max_iter", opts.max_iter}, {"normalize", opts.normalize}};
    write_manifest("pagerank", cfg, {opts.graph_path}, {opts.out}, timer, manifest_path(opts.out));
    std::cout << "pagerank over " << graph.num_users() << " users ("
              << (inf.converged ? "converged" : "NOT converged") << " in " << inf.iterations
              << " iterations) -> " << opts.out << "\n";
    return 0;
}

int cmd_estimate(const std::string& graph_path, const std::string& out) {
    Timer timer;
    sg::HeterogeneousGraph graph = sg::load_graph(graph_path);
    sg::ModelParams params = sg::direct_estimate(graph);
    sg::save_params(params, out);
    write_manifest("estimate", ordered_json::object(), {graph_path}, {out}, timer,
                   manifest_path(out));
    std::cout << "estimated parameters from labeled edges -> " << out << "\n";
    return 0;
}

struct TrainOpts {
    std::string graph_path;
    std::string influence_path;
    std::string out = "params.json";
    std::string report_out;
    std::string trace_out;
    sg::SampleRankConfig config;
};

int cmd_train(const TrainOpts& opts) {
    Timer timer;
    opts.config.validate();
    sg::HeterogeneousGraph graph = sg::load_graph(opts.graph_path);
    sg::InfluenceScores inf = opts.influence_path.empty()
                                  ? sg::influence_for(graph)
                                  : sg::load_influence_tsv(opts.influence_path, graph);
    sg::SampleRankConfig config = opts.config;
    config.keep_trace = !opts.trace_out.empty();
    sg::Rng rng(config.rng_seed);
    sg::TrainResult result = sg::samplerank_train(graph, inf, config, rng);
    sg::save_params(result.params, opts.out);
    std::vector<std::string> outputs{opts.out};
    if (!opts.report_out.empty()) {
        std::ofstream rf(opts.report_out);
        rf << sg::train_report_to_json(result.report).dump(2) << "\n";
        outputs.push_back(opts.report_out);
    }
    if (!opts.trace_out.empty()) {
        sg::save_trace_csv(result.report, opts.trace_out);
        outputs.push_back(opts.trace_out);
    }
    ordered_json cfg{{"max_steps", config.max_steps},
                     {"learning_rate", config.learning_rate},
                     {"convergence_patience", config.convergence_patience},
                     {"rng_seed", config.rng_seed}};
    write_manifest("train", cfg, {opts.graph_path, opts.influence_path}, outputs, timer,
                   manifest_path(opts.out));
    std::cout << "samplerank: " << result.report.steps_taken << " steps, "
              << result.report.parameter_update_count << " updates, perf "
              << result.report.initial_perf << " -> " << result.report.final_perf << " ("
              << (result.report.converged ? "converged" : "step limit") << ") -> " << opts.out
              << "\n";
    return 0;
}

struct InferOpts {
    std::string graph_path;
    std::string params_path;
    std::string influence_path;
    std::string out_marginals = "marginals.tsv";
    std::string out_predictions = "predictions.tsv";
    std::string out_holdout;
    double holdout_fraction = 0.5;
    std::uint64_t seed = 0;
    int ensemble = 1;
    sg::LbpConfig lbp;
};

int cmd_infer(const InferOpts& opts) {
    Timer timer;
    if (opts.ensemble < 1 || opts.ensemble % 2 == 0)
        throw sg::InvalidConfig("--ensemble must be odd");
    sg::HeterogeneousGraph graph = sg::load_graph(opts.graph_path);
    sg::ModelParams params = sg::load_params(opts.params_path);
    sg::InfluenceScores inf = opts.influence_path.empty()
                                  ? sg::influence_for(graph)
                                  : sg::load_influence_tsv(opts.influence_path, graph);

    sg::Rng rng(opts.seed);
    sg::HoldoutSplit split = sg::split_seeds(graph, opts.holdout_fraction, rng);
    sg::HeterogeneousGraph view = sg::mask_heldout(graph, split.heldout_seeds);

    std::vector<sg::Labeling> run_labels;
    sg::InferOutput last;
    for (int r = 0; r < opts.ensemble; ++r) {
        last = sg::infer_labels(view, params, inf, opts.lbp);
        run_labels.push_back(last.labels);
    }
    sg::Labeling final_labels =
        opts.ensemble == 1 ? run_labels.front() : sg::majority_vote_ensemble(run_labels);

    sg::save_marginals_tsv(last.marginals, last.fg, view, opts.out_marginals);
    sg::save_predictions_tsv(final_labels, view, opts.out_predictions);
    std::vector<std::string> outputs{opts.out_marginals, opts.out_predictions};
    if (!opts.out_holdout.empty()) {
        std::ofstream hf(opts.out_holdout);
        for (const std::string& id : split.heldout_seeds) hf << id << "\n";
        outputs.push_back(opts.out_holdout);
    }
    ordered_json cfg{{"holdout_fraction", opts.holdout_fraction},
                     {"seed", opts.seed},
                     {"ensemble", opts.ensemble},
                     {"lbp_max_iterations", opts.lbp.max_iterations},
                     {"lbp_tolerance", opts.lbp.tolerance},
                     {"lbp_damping", opts.lbp.damping}};
    write_manifest("infer", cfg, {opts.graph_path, opts.params_path, opts.influence_path},
                   outputs, timer, manifest_path(opts.out_predictions));
    std::cout << "inferred labels for " << view.num_users() << " users (lbp "
              << (last.marginals.converged ? "converged" : "NOT converged") << " in "
              << last.marginals.iterations << " iterations) -> " << opts.out_predictions << "\n";
    return 0;
}

struct EvaluateOpts {
    std::string predictions_path;
    std::string truth_path;
    std::string eval_set_path;
    std::string out;
};

int cmd_evaluate(const EvaluateOpts& opts) {
    Timer timer;
    sg::IdLabelMap pred = sg::load_predictions_tsv(opts.predictions_path);
    sg::IdLabelMap truth = sg::load_truth_tsv(opts.truth_path);
    std::set<std::string> eval_set;
    if (!opts.eval_set_path.empty()) {
        std::ifstream in(opts.eval_set_path);
        if (!in) throw sg::IoError("cannot open " + opts.eval_set_path);
        std::string line;
        while (std::getline(in, line))
            if (!line.empty()) eval_set.insert(line);
    } else {
        for (const auto& [id, _] : truth)
            if (pred.count(id)) eval_set.insert(id);
        if (eval_set.empty()) throw sg::MissingPrediction("no ids shared by predictions and truth");
    }
    sg::EvalReport report = sg::evaluate(pred, truth, eval_set);
    ordered_json j = sg::report_to_json(report);
    if (!opts.out.empty()) {
        std::ofstream out(opts.out);
        if (!out) throw sg::IoError("cannot open " + opts.out + " for writing");
        out << j.dump(2) << "\n";
        write_manifest("evaluate", ordered_json::object(),
                       {opts.predictions_path, opts.truth_path}, {opts.out}, timer,
                       manifest_path(opts.out));
    }
    std::cout << "population  " << report.population << "\n"
              << "accuracy    " << report.accuracy << "\n"
              << "f1_pos      " << report.f1_pos << "\n"
              << "f1_neg      " << report.f1_neg << "\n"
              << "macro_f1    " << report.macro_f1 << "\n";
    return 0;
}

struct PipelineOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::string method; // overrides config when set
    std::uint64_t seed = static_cast<std::uint64_t>(-1); // overrides when set
};

int cmd_pipeline(const PipelineOpts& opts) {
    Timer timer;
    std::ifstream cf(opts.config_path);
    if (!cf) throw sg::IoError("cannot open " + opts.config_path);
    nlohmann::json cj;
    cf >> cj;

    sg::SynthConfig synth = sg::synth_config_from_json(cj.value("generate", nlohmann::json::object()));
    if (opts.seed != static_cast<std::uint64_t>(-1)) synth.rng_seed = opts.seed;
    std::string method = cj.value("method", std::string("direct"));
    if (!opts.method.empty()) method = opts.method;
    const double holdout_fraction = cj.value("holdout_fraction", 0.5);
    const double damping = cj.value("damping", 0.85);

    sg::SampleRankConfig sr;
    if (cj.contains("samplerank")) {
        const auto& sj = cj.at("samplerank");
        sr.max_steps = sj.value("max_steps", sr.max_steps);
        sr.learning_rate = sj.value("learning_rate", sr.learning_rate);
        sr.convergence_patience = sj.value("convergence_patience", sr.convergence_patience);
        sr.ensemble_runs = sj.value("ensemble_runs", sr.ensemble_runs);
    }
    sr.rng_seed = synth.rng_seed;
    sr.validate();

    fs::create_directories(opts.out_dir);
    auto path = [&](const char* name) { return (fs::path(opts.out_dir) / name).string(); };

    std::cout << "[1/5] generate\n";
    sg::Rng rng(synth.rng_seed);
    sg::SynthResult data = sg::generate(synth, rng);
    sg::save_graph(data.graph, path("graph.json"));
    sg::save_truth_tsv(data.truth, path("truth.tsv"));

    std::cout << "[2/5] pagerank\n";
    sg::InfluenceScores inf = sg::influence_for(data.graph, damping);
    sg::save_influence_tsv(inf, data.graph, path("influence.tsv"));

    sg::Rng split_rng = rng.fork(1);
    sg::HoldoutSplit split = sg::split_seeds(data.graph, holdout_fraction, split_rng);
    sg::HeterogeneousGraph view = sg::mask_heldout(data.graph, split.heldout_seeds);
    {
        std::ofstream hf(path("holdout.txt"));
        for (const std::string& id : split.heldout_seeds) hf << id << "\n";
    }

    sg::Labeling final_labels;
    if (method == "direct") {
        std::cout << "[3/5] estimate (direct)\n";
        sg::ModelParams params = sg::direct_estimate(view);
        sg::save_params(params, path("params.json"));
        std::cout << "[4/5] infer\n";
        final_labels = sg::infer_labels(view, params, inf).labels;
    } else if (method == "samplerank") {
        std::cout << "[3/5] train (samplerank, " << sr.ensemble_runs << " runs)\n";
        std::vector<sg::Labeling> run_labels;
        for (int r = 0; r < sr.ensemble_runs; ++r) {
            sg::SampleRankConfig run_cfg = sr;
            run_cfg.rng_seed = sr.rng_seed + static_cast<std::uint64_t>(r) * 7919 + 1;
            sg::Rng run_rng(run_cfg.rng_seed);
            sg::TrainResult trained = sg::samplerank_train(view, inf, run_cfg, run_rng);
            if (r == 0) {
                sg::save_params(trained.params, path("params.json"));
                std::ofstream rf(path("train_report.json"));
                rf << sg::train_report_to_json(trained.report).dump(2) << "\n";
            }
            run_labels.push_back(sg::infer_labels(view, trained.params, inf).labels);
        }
        std::cout << "[4/5] infer (majority vote)\n";
        final_labels = sg::majority_vote_ensemble(run_labels);
    } else {
        throw sg::InvalidConfig("method must be direct or samplerank");
    }
    sg::save_predictions_tsv(final_labels, view, path("predictions.tsv"));

    std::cout << "[5/5] evaluate\n";
    sg::EvalReport report =
        sg::evaluate(sg::user_predictions(view, final_labels), data.truth, split.heldout_seeds);
    {
        std::ofstream rf(path("report.json"));
        rf << sg::report_to_json(report).dump(2) << "\n";
    }

    ordered_json cfg;
    cfg["generate"] = sg::synth_config_to_json(synth);
    cfg["method"] = method;
    cfg["holdout_fraction"] = holdout_fraction;
    cfg["damping"] = damping;
    write_manifest("pipeline", cfg, {opts.config_path},
                   {path("graph.json"), path("truth.tsv"), path("influence.tsv"),
                    path("params.json"), path("predictions.tsv"), path("report.json")},
                   timer, path("manifest.json"));

    std::cout << "held-out accuracy " << report.accuracy << ", macro_f1 " << report.macro_f1
              << " over " << report.population << " users\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"user-level topical sentiment over heterogeneous social graphs"};
    app.require_subcommand(1);

    GenerateOpts gen;
    auto* c_gen = app.add_subcommand("generate", "generate a synthetic graph with planted communities");
    c_gen->add_option("--users", gen.config.n_users, "number of users");
    c_gen->add_option("--positive-fraction", gen.config.positive_fraction, "planted positive fraction");
    c_gen->add_option("--link", gen.link_specs,
                      "TYPE:intra:inter edge probabilities (repeatable); default mutual_follow:0.10:0.01");
    c_gen->add_option("--tweets-mean", gen.config.tweets_per_user_mean, "mean tweets per user");
    c_gen->add_option("--noise", gen.config.tweet_noise, "tweet label flip probability");
    c_gen->add_option("--seed-fraction", gen.config.seed_fraction, "revealed seed fraction per class");
    c_gen->add_option("--hub-skew", gen.config.influence_skew, "hub in-link boost (0 = off)");
    c_gen->add_option("--seed", gen.config.rng_seed, "rng seed");
    c_gen->add_option("--topic", gen.config.topic, "topic tag");
    c_gen->add_option("--out", gen.out, "output graph JSON");
    c_gen->add_option("--truth-out", gen.truth_out, "output truth TSV");
    c_gen->add_option("--config-out", gen.config_out, "echo resolved config JSON");

    PagerankOpts pr;
    auto* c_pr = app.add_subcommand("pagerank", "compute user influence scores");
    c_pr->add_option("--graph", pr.graph_path, "input graph JSON")->required();
    c_pr->add_option("--out", pr.out, "output influence TSV");
    c_pr->add_option("--damping", pr.damping, "damping factor");
    c_pr->add_option("--tol", pr.tol, "L1 convergence tolerance");
    c_pr->add_option("--max-iter", pr.max_iter, "iteration cap");
    c_pr->add_option("--normalize", pr.normalize, "raw or mean_one");

    std::string est_graph, est_out = "params.json";
    auto* c_est = app.add_subcommand("estimate", "direct parameter estimation from labeled edges");
    c_est->add_option("--graph", est_graph, "input graph JSON")->required();
    c_est->add_option("--out", est_out, "output params JSON");

    TrainOpts tr;
    auto* c_tr = app.add_subcommand("train", "learn parameters with samplerank");
    c_tr->add_option("--graph", tr.graph_path, "input graph JSON")->required();
    c_tr->add_option("--influence", tr.influence_path, "influence TSV (computed when omitted)");
    c_tr->add_option("--out", tr.out, "output params JSON");
    c_tr->add_option("--report-out", tr.report_out, "training report JSON");
    c_tr->add_option("--trace-out", tr.trace_out, "per-step perf trace CSV");
    c_tr->add_option("--steps", tr.config.max_steps, "maximum steps");
    c_tr->add_option("--eta", tr.config.learning_rate, "learning rate");
    c_tr->add_option("--patience", tr.config.convergence_patience, "steps without update before stop");
    c_tr->add_option("--seed", tr.config.rng_seed, "rng seed");

    InferOpts inf;
    auto* c_inf = app.add_subcommand("infer", "loopy belief propagation inference");
    c_inf->add_option("--graph", inf.graph_path, "input graph JSON")->required();
    c_inf->add_option("--params", inf.params_path, "model params JSON")->required();
    c_inf->add_option("--influence", inf.influence_path, "influence TSV (computed when omitted)");
    c_inf->add_option("--out-marginals", inf.out_marginals, "output marginals TSV");
    c_inf->add_option("--out-predictions", inf.out_predictions, "output predictions TSV");
    c_inf->add_option("--out-holdout", inf.out_holdout, "held-out seed ids, one per line");
    c_inf->add_option("--holdout-fraction", inf.holdout_fraction, "seed fraction held out of evidence");
    c_inf->add_option("--seed", inf.seed, "rng seed for the holdout split");
    c_inf->add_option("--ensemble", inf.ensemble, "odd number of runs to majority-vote");
    c_inf->add_option("--lbp-max-iter", inf.lbp.max_iterations, "LBP iteration cap");
    c_inf->add_option("--lbp-tol", inf.lbp.tolerance, "LBP message tolerance");
    c_inf->add_option("--lbp-damping", inf.lbp.damping, "LBP message damping");

    EvaluateOpts ev;
    auto* c_ev = app.add_subcommand("evaluate", "score predictions against ground truth");
    c_ev->add_option("--predictions", ev.predictions_path, "predictions TSV")->required();
    c_ev->add_option("--truth", ev.truth_path, "truth TSV")->required();
    c_ev->add_option("--eval-set", ev.eval_set_path, "restrict to ids listed in this file");
    c_ev->add_option("--out", ev.out, "report JSON");

    PipelineOpts pl;
    auto* c_pl = app.add_subcommand("pipeline", "run generate/pagerank/estimate/infer/evaluate end to end");
    c_pl->add_option("--config", pl.config_path, "pipeline config JSON")->required();
    c_pl->add_option("--out-dir", pl.out_dir, "output directory");
    c_pl->add_option("--method", pl.method, "direct or samplerank (overrides config)");
    c_pl->add_option("--seed", pl.seed, "rng seed (overrides config)");

    try {
        app.parse(argc, argv);
        if (*c_gen) return cmd_generate(gen);
        if (*c_pr) return cmd_pagerank(pr);
        if (*c_est) return cmd_estimate(est_graph, est_out);
        if (*c_tr) return cmd_train(tr);
        if (*c_inf) return cmd_infer(inf);
        if (*c_ev) return cmd_evaluate(ev);
        if (*c_pl) return cmd_pipeline(pl);
    } catch (const CLI::ParseError& e) {
        // keep the contract to {0,1,2}: help is success, bad usage is validation
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const sg::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
