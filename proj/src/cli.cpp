#include "ttr/cli.hpp"

#include <charconv>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ttr/experiment.hpp"
#include "ttr/io.hpp"
#include "ttr/recommend.hpp"

namespace ttr {

namespace {

double parse_number_token(const std::string& token, const std::string& what) {
    double value = 0.0;
    const auto result = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || result.ec != std::errc() ||
        result.ptr != token.data() + token.size())
        throw InvalidInputError(what + ": expected a number, got '" + token + "'");
    return value;
}

// --weights accepts "linear", "affine:C,D", or "table:w1,w2,...".
WeightFunction parse_weight_spec(const std::string& spec) {
    if (spec == "linear") return WeightFunction::linear();
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    if (colon != std::string::npos && head == "affine") {
        const std::string rest = spec.substr(colon + 1);
        const auto comma = rest.find(',');
        if (comma == std::string::npos)
            throw InvalidInputError("--weights affine form is affine:C,D");
        return WeightFunction::affine(
            parse_number_token(rest.substr(0, comma), "--weights affine c"),
            parse_number_token(rest.substr(comma + 1), "--weights affine d"));
    }
    if (colon != std::string::npos && head == "table") {
        std::string rest = spec.substr(colon + 1);
        std::vector<double> values;
        std::size_t start = 0;
        while (start <= rest.size()) {
            const auto comma = rest.find(',', start);
            const std::string token =
                rest.substr(start, comma == std::string::npos ? std::string::npos
                                                              : comma - start);
            values.push_back(parse_number_token(token, "--weights table entry"));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        Eigen::VectorXd table(values.size());
        for (std::size_t i = 0; i < values.size(); ++i)
            table[static_cast<Eigen::Index>(i)] = values[i];
        return WeightFunction::table(std::move(table));
    }
    throw InvalidInputError("--weights must be linear, affine:C,D, or table:w1,w2,...");
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    write_text_file(out_path, content);
}

LinearOrder exact_order_for_model(const PreferenceModel& model) {
    switch (model.kind()) {
        case ModelKind::PlackettLuceMixture:
            if (model.num_components() == 1)
                return exact_optimal_order(model.pl_component(0));
            break;
        case ModelKind::MallowsMixture:
            if (model.num_components() == 1)
                return exact_optimal_order(model.mallows_component(0));
            break;
        case ModelKind::UniformProfile:
            return exact_optimal_order(model.profile());
    }
    throw InvalidInputError(
        "solver 'exact' covers single-component mixtures and profiles of at most two "
        "orders; use --solver brute, borda, or local");
}

struct RecommendArgs {
    std::string model_path;
    std::string solver = "exact";
    std::string weights = "linear";
    std::string out_path;
    std::uint64_t seed = 0;
    int samples = 0;
    int brute_cap = kDefaultBruteForceCap;
};

int run_recommend(const RecommendArgs& args) {
    const PreferenceModel model = load_model(args.model_path);
    const PairwiseMarginalMatrix M = pairwise_marginals(model);
    const WeightFunction w = parse_weight_spec(args.weights);

    LinearOrder order = [&]() {
        if (args.solver == "exact") return exact_order_for_model(model);
        if (args.solver == "brute") return brute_force_optimum(M, args.brute_cap).order;
        if (args.solver == "borda") return borda_order(M);
        return local_search_refine(borda_order(M), M);  // "local"
    }();

    nlohmann::json doc;
    doc["order"] = order.items();
    doc["solver"] = args.solver;
    doc["objective_linear"] = expected_time_linear(order, M);
    if (w.kind() != WeightFunction::Kind::Linear) {
        const bool exact_path = args.solver == "exact" || args.solver == "brute";
        doc["weights"] = args.weights;
        doc["guarantee"] =
            (exact_path ? 1.0 : 5.0) * closeness_to_linear(w, model.size());
    }
    if (args.samples > 0) {
        RandomSource rng(args.seed);
        const MonteCarloEstimate estimate =
            estimate_expected_time(order, model, w, args.samples, rng);
        doc["estimated_time"] = {{"estimate", estimate.estimate},
                                 {"std_error", estimate.std_error},
                                 {"samples", args.samples},
                                 {"seed", args.seed}};
    }
    emit(args.out_path, doc.dump(2) + "\n");
    return 0;
}

int run_marginals(const std::string& model_path, const std::string& out_path) {
    const PreferenceModel model = load_model(model_path);
    emit(out_path, marginals_to_csv(pairwise_marginals(model)));
    return 0;
}

int run_simulate(const std::string& config_path, const std::string& out_path,
                 const std::optional<std::uint64_t>& seed_override) {
    ExperimentConfig config = load_experiment_config(config_path);
    if (seed_override) config.seed = *seed_override;
    const std::vector<PollRecord> records = run_experiment(config);
    const std::string csv = records_to_csv(records, strategy_name(config.strategy));
    emit(out_path, csv);
    if (!out_path.empty()) {
        // The record CSV went to a file; summarize per-poll averages here.
        const std::vector<double> averages = per_poll_average_time(records, config.polls);
        std::string summary = "poll,avg_time\n";
        for (int poll = 1; poll <= config.polls; ++poll)
            summary += std::to_string(poll) + "," + format_double(averages[poll - 1]) + "\n";
        std::cout << summary;
    }
    return 0;
}

int run_hard_instance(const std::string& profile_path, const std::string& out_path) {
    const std::vector<LinearOrder> profile = load_profile(profile_path);
    const PreferenceModel model = kemeny_hard_instance(profile);
    emit(out_path, model_to_json(model).dump(2) + "\n");
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"ranking recommendations that minimize expected drag-and-drop sorting time"};
    app.require_subcommand(1);

    RecommendArgs rec;
    CLI::App* recommend =
        app.add_subcommand("recommend", "compute a recommended order for a model");
    recommend->add_option("--model", rec.model_path, "model JSON file")->required();
    recommend->add_option("--solver", rec.solver, "solver: exact, borda, brute, or local")
        ->check(CLI::IsMember({"exact", "borda", "brute", "local"}));
    recommend->add_option("--weights", rec.weights,
                          "weight function: linear, affine:C,D, or table:w1,w2,...");
    recommend->add_option("--samples", rec.samples,
                          "Monte Carlo samples for the expected-time estimate");
    recommend->add_option("--seed", rec.seed, "random seed for the estimate");
    recommend->add_option("--brute-cap", rec.brute_cap, "largest m the brute solver accepts");
    recommend->add_option("--out", rec.out_path, "write JSON here instead of stdout");

    std::string marginals_model, marginals_out;
    CLI::App* marginals =
        app.add_subcommand("marginals", "dump a model's pairwise marginal matrix as CSV");
    marginals->add_option("--model", marginals_model, "model JSON file")->required();
    marginals->add_option("--out", marginals_out, "write CSV here instead of stdout");

    std::string simulate_config, simulate_out;
    std::optional<std::uint64_t> simulate_seed;
    CLI::App* simulate =
        app.add_subcommand("simulate", "run a multi-user polling experiment, emit CSV records");
    simulate->add_option("--config", simulate_config, "experiment config JSON file")->required();
    simulate->add_option("--out", simulate_out, "write record CSV here instead of stdout");
    simulate->add_option("--seed", simulate_seed, "override the config's seed");

    std::string hard_profile, hard_out;
    CLI::App* hard = app.add_subcommand(
        "hard-instance", "build the Kemeny-embedding Plackett-Luce mixture for a profile");
    hard->add_option("--profile", hard_profile, "profile text file")->required();
    hard->add_option("--out", hard_out, "write model JSON here instead of stdout");

    try {
        std::vector<std::string> argv_storage;
        argv_storage.reserve(args.size() + 1);
        argv_storage.push_back("ttr");
        argv_storage.insert(argv_storage.end(), args.begin(), args.end());
        std::vector<const char*> argv;
        argv.reserve(argv_storage.size());
        for (const std::string& s : argv_storage) argv.push_back(s.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());

        if (recommend->parsed()) return run_recommend(rec);
        if (marginals->parsed()) return run_marginals(marginals_model, marginals_out);
        if (simulate->parsed()) return run_simulate(simulate_config, simulate_out, simulate_seed);
        if (hard->parsed()) return run_hard_instance(hard_profile, hard_out);
        throw InvalidInputError("no subcommand given");
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints help or the error message
        return code == 0 ? 0 : 1;
    } catch (const ResourceLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace ttr
