#include <doctest.h>

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ttr/cli.hpp"
#include "ttr/experiment.hpp"
#include "ttr/io.hpp"
#include "ttr/linear_order.hpp"
#include "ttr/models.hpp"
#include "ttr/recommend.hpp"

using nlohmann::json;
using ttr::LinearOrder;

namespace {

// The CLI prints to the real streams; keep test logs clean by swallowing
// them for the duration of a call.
struct StreamCapture {
    std::ostringstream out_buffer;
    std::ostringstream err_buffer;
    std::streambuf* old_out;
    std::streambuf* old_err;

    StreamCapture()
        : old_out(std::cout.rdbuf(out_buffer.rdbuf())),
          old_err(std::cerr.rdbuf(err_buffer.rdbuf())) {}
    ~StreamCapture() {
        std::cout.rdbuf(old_out);
        std::cerr.rdbuf(old_err);
    }
};

int run_quiet(const std::vector<std::string>& args, std::string* out = nullptr,
              std::string* err = nullptr) {
    StreamCapture capture;
    const int code = ttr::run_cli(args);
    if (out) *out = capture.out_buffer.str();
    if (err) *err = capture.err_buffer.str();
    return code;
}

std::string temp_file(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("ttr_cli_test_" + name)).string();
}

std::string write_mallows_model(const std::string& name) {
    const std::string path = temp_file(name);
    ttr::write_text_file(path,
                         R"({"type": "mallows",
                             "components": [{"weight": 1.0,
                                             "reference": [2, 0, 1],
                                             "phi": 0.5}]})");
    return path;
}

}  // namespace

TEST_CASE("recommend writes a solution document") {
    const std::string model_path = write_mallows_model("rec_model.json");
    const std::string out_path = temp_file("rec_out.json");

    CHECK(run_quiet({"recommend", "--model", model_path, "--out", out_path}) == 0);
    const json doc = json::parse(ttr::read_text_file(out_path));
    CHECK(doc.at("order") == json::array({2, 0, 1}));
    CHECK(doc.at("solver") == "exact");
    CHECK_FALSE(doc.contains("guarantee"));
    CHECK_FALSE(doc.contains("estimated_time"));

    const ttr::PreferenceModel model = ttr::load_model(model_path);
    const double objective =
        ttr::expected_time_linear(LinearOrder({2, 0, 1}), pairwise_marginals(model));
    CHECK(doc.at("objective_linear").get<double>() == doctest::Approx(objective));

    std::filesystem::remove(model_path);
    std::filesystem::remove(out_path);
}

TEST_CASE("recommend solver variants agree on a single mallows model") {
    const std::string model_path = write_mallows_model("solver_model.json");
    const std::string out_path = temp_file("solver_out.json");
    for (const std::string solver : {"exact", "brute", "borda", "local"}) {
        CHECK(run_quiet({"recommend", "--model", model_path, "--solver", solver, "--out",
                         out_path}) == 0);
        const json doc = json::parse(ttr::read_text_file(out_path));
        CHECK(doc.at("order") == json::array({2, 0, 1}));
        CHECK(doc.at("solver") == solver);
    }
    std::filesystem::remove(model_path);
    std::filesystem::remove(out_path);
}

TEST_CASE("recommend reports weight guarantees and estimates") {
    const std::string model_path = write_mallows_model("weights_model.json");
    const std::string out_path = temp_file("weights_out.json");

    CHECK(run_quiet({"recommend", "--model", model_path, "--weights", "affine:2,0", "--out",
                     out_path}) == 0);
    json doc = json::parse(ttr::read_text_file(out_path));
    CHECK(doc.at("weights") == "affine:2,0");
    CHECK(doc.at("guarantee").get<double>() == doctest::Approx(1.0));

    // The approximate path certifies five times the closeness factor.
    CHECK(run_quiet({"recommend", "--model", model_path, "--weights", "table:1,3", "--solver",
                     "borda", "--out", out_path}) == 0);
    doc = json::parse(ttr::read_text_file(out_path));
    CHECK(doc.at("guarantee").get<double>() == doctest::Approx(5.0 * 1.5));

    CHECK(run_quiet({"recommend", "--model", model_path, "--weights", "table:1,2", "--samples",
                     "200", "--seed", "11", "--out", out_path}) == 0);
    doc = json::parse(ttr::read_text_file(out_path));
    CHECK(doc.at("estimated_time").at("samples") == 200);
    CHECK(doc.at("estimated_time").at("seed") == 11);
    CHECK(doc.at("estimated_time").at("estimate").get<double>() >= 0.0);

    // Same seed, same bytes.
    const std::string repeat_path = temp_file("weights_out_repeat.json");
    CHECK(run_quiet({"recommend", "--model", model_path, "--weights", "table:1,2", "--samples",
                     "200", "--seed", "11", "--out", repeat_path}) == 0);
    CHECK(ttr::read_text_file(repeat_path) == ttr::read_text_file(out_path));

    std::filesystem::remove(model_path);
    std::filesystem::remove(out_path);
    std::filesystem::remove(repeat_path);
}

TEST_CASE("marginals dumps the exact matrix") {
    const std::string model_path = write_mallows_model("marg_model.json");
    const std::string out_path = temp_file("marg_out.csv");
    CHECK(run_quiet({"marginals", "--model", model_path, "--out", out_path}) == 0);
    const ttr::PreferenceModel model = ttr::load_model(model_path);
    CHECK(ttr::read_text_file(out_path) == ttr::marginals_to_csv(pairwise_marginals(model)));
    std::filesystem::remove(model_path);
    std::filesystem::remove(out_path);
}

TEST_CASE("simulate emits records and a poll summary") {
    const std::string config_path = temp_file("sim_config.json");
    ttr::write_text_file(config_path, R"({
        "m": 4, "users": 2, "polls": 3, "seed": 21, "strategy": "random",
        "target": {"kind": "mallows", "phi": 0.5}
    })");
    const std::string out_path = temp_file("sim_out.csv");

    std::string stdout_text;
    CHECK(run_quiet({"simulate", "--config", config_path, "--out", out_path}, &stdout_text) ==
          0);
    CHECK(stdout_text.rfind("poll,avg_time\n", 0) == 0);

    const ttr::ExperimentConfig config = ttr::load_experiment_config(config_path);
    const std::string expected =
        ttr::records_to_csv(ttr::run_experiment(config), ttr::strategy_name(config.strategy));
    CHECK(ttr::read_text_file(out_path) == expected);
    CHECK(expected.rfind("user,poll,strategy,time,dkt,moves\n", 0) == 0);

    // Seed override changes the run but stays reproducible.
    const std::string override_path = temp_file("sim_out_override.csv");
    CHECK(run_quiet({"simulate", "--config", config_path, "--seed", "99", "--out",
                     override_path}) == 0);
    CHECK(ttr::read_text_file(override_path) != expected);
    ttr::ExperimentConfig reseeded = config;
    reseeded.seed = 99;
    CHECK(ttr::read_text_file(override_path) ==
          ttr::records_to_csv(ttr::run_experiment(reseeded),
                              ttr::strategy_name(reseeded.strategy)));

    std::filesystem::remove(config_path);
    std::filesystem::remove(out_path);
    std::filesystem::remove(override_path);
}

TEST_CASE("hard-instance builds the kemeny embedding") {
    const std::string profile_path = temp_file("hard_profile.txt");
    ttr::write_text_file(profile_path, "3 2\n0,1,2\n2,1,0\n");
    const std::string out_path = temp_file("hard_out.json");

    CHECK(run_quiet({"hard-instance", "--profile", profile_path, "--out", out_path}) == 0);
    const json doc = json::parse(ttr::read_text_file(out_path));
    CHECK(doc.at("type") == "plackett-luce");
    CHECK(doc.at("components").size() == 2);

    const ttr::PreferenceModel expected =
        ttr::kemeny_hard_instance({LinearOrder({0, 1, 2}), LinearOrder({2, 1, 0})});
    CHECK(doc == ttr::model_to_json(expected));

    std::filesystem::remove(profile_path);
    std::filesystem::remove(out_path);
}

TEST_CASE("exit codes distinguish failure classes") {
    std::string err;

    // 0: help requested.
    CHECK(run_quiet({"--help"}) == 0);
    CHECK(run_quiet({"recommend", "--help"}) == 0);

    // 1: argument and validation problems.
    CHECK(run_quiet({}) == 1);
    CHECK(run_quiet({"unknown-subcommand"}) == 1);
    CHECK(run_quiet({"recommend"}) == 1);  // --model is required
    const std::string model_path = write_mallows_model("exit_model.json");
    CHECK(run_quiet({"recommend", "--model", model_path, "--solver", "psychic"}) == 1);
    CHECK(run_quiet({"recommend", "--model", model_path, "--weights", "bogus"}, nullptr,
                    &err) == 1);
    CHECK(err.find("--weights") != std::string::npos);
    CHECK(run_quiet({"recommend", "--model", model_path, "--weights", "affine:2"}) == 1);
    CHECK(run_quiet({"recommend", "--model", model_path, "--weights", "table:1,,2"}) == 1);

    const std::string mixture_path = temp_file("exit_mixture.json");
    ttr::write_text_file(mixture_path, R"({
        "type": "plackett-luce",
        "components": [{"weight": 0.5, "theta": [1, 2, 3]},
                       {"weight": 0.5, "theta": [3, 2, 1]}]
    })");
    CHECK(run_quiet({"recommend", "--model", mixture_path, "--solver", "exact"}, nullptr,
                    &err) == 1);
    CHECK(err.find("single-component") != std::string::npos);

    const std::string bad_json_path = temp_file("exit_bad.json");
    ttr::write_text_file(bad_json_path, "{ nope");
    CHECK(run_quiet({"recommend", "--model", bad_json_path}) == 1);

    // 2: resource limits.
    const std::string wide_path = temp_file("exit_wide.json");
    ttr::write_text_file(wide_path, R"({
        "type": "uniform",
        "profile": [[0, 1, 2, 3, 4, 5, 6, 7, 8, 9]]
    })");
    CHECK(run_quiet({"recommend", "--model", wide_path, "--solver", "brute"}, nullptr, &err) ==
          2);
    CHECK(err.find("exceeds cap") != std::string::npos);
    CHECK(run_quiet({"recommend", "--model", wide_path, "--solver", "brute", "--brute-cap",
                     "10", "--out", temp_file("exit_wide_out.json")}) == 0);

    // 3: missing files.
    CHECK(run_quiet({"recommend", "--model", temp_file("no_such_model.json")}) == 3);
    CHECK(run_quiet({"simulate", "--config", temp_file("no_such_config.json")}) == 3);
    CHECK(run_quiet({"hard-instance", "--profile", temp_file("no_such_profile.txt")}) == 3);

    std::filesystem::remove(model_path);
    std::filesystem::remove(mixture_path);
    std::filesystem::remove(bad_json_path);
    std::filesystem::remove(wide_path);
    std::filesystem::remove(temp_file("exit_wide_out.json"));
}
