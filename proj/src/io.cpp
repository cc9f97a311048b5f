#include "ttr/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ttr {

using nlohmann::json;

std::string format_double(double value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

bool is_skippable(const std::string& line) {
    const std::string t = trim(line);
    return t.empty() || t.front() == '#';
}

int parse_int_token(const std::string& token, const std::string& origin, int line_no,
                    const char* what) {
    const std::string t = trim(token);
    int value = 0;
    const auto result = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || result.ec != std::errc() || result.ptr != t.data() + t.size())
        throw ParseError(origin, line_no,
                         std::string("expected ") + what + ", got '" + t + "'");
    return value;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string token;
    std::istringstream in(line);
    while (std::getline(in, token, sep)) out.push_back(token);
    if (!line.empty() && line.back() == sep) out.push_back("");
    return out;
}

}  // namespace

std::vector<LinearOrder> parse_profile(std::istream& in, const std::string& origin) {
    std::string line;
    int line_no = 0;
    int m = 0;
    int n = 0;
    bool header_seen = false;
    std::vector<LinearOrder> profile;

    while (std::getline(in, line)) {
        ++line_no;
        if (is_skippable(line)) continue;

        if (!header_seen) {
            std::istringstream header(trim(line));
            std::string m_token, n_token, extra;
            header >> m_token >> n_token;
            if (header >> extra)
                throw ParseError(origin, line_no, "header must be exactly 'm n'");
            if (m_token.empty() || n_token.empty())
                throw ParseError(origin, line_no, "header must be exactly 'm n'");
            m = parse_int_token(m_token, origin, line_no, "alternative count m");
            n = parse_int_token(n_token, origin, line_no, "order count n");
            if (m < 1) throw ParseError(origin, line_no, "m must be >= 1");
            if (n < 1) throw ParseError(origin, line_no, "n must be >= 1");
            header_seen = true;
            continue;
        }

        if (static_cast<int>(profile.size()) == n)
            throw ParseError(origin, line_no, "unexpected content after " +
                                                  std::to_string(n) + " orders");

        const std::vector<std::string> tokens = split(trim(line), ',');
        if (static_cast<int>(tokens.size()) != m)
            throw ParseError(origin, line_no,
                             "expected " + std::to_string(m) + " items, got " +
                                 std::to_string(tokens.size()));
        std::vector<Alternative> items;
        items.reserve(m);
        for (const std::string& token : tokens)
            items.push_back(parse_int_token(token, origin, line_no, "alternative id"));
        try {
            profile.emplace_back(std::move(items));
        } catch (const InvalidInputError& e) {
            throw ParseError(origin, line_no, e.what());
        }
    }

    if (!header_seen) throw ParseError(origin, line_no + 1, "missing 'm n' header");
    if (static_cast<int>(profile.size()) != n)
        throw ParseError(origin, line_no + 1,
                         "expected " + std::to_string(n) + " orders, found " +
                             std::to_string(profile.size()));
    return profile;
}

std::vector<LinearOrder> load_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open profile file: " + path);
    return parse_profile(in, path);
}

std::string profile_to_text(const std::vector<LinearOrder>& profile) {
    if (profile.empty()) throw InvalidInputError("profile_to_text: empty profile");
    std::string out = std::to_string(profile.front().size()) + " " +
                      std::to_string(profile.size()) + "\n";
    for (const LinearOrder& order : profile) out += to_string(order) + "\n";
    return out;
}

void write_profile(const std::string& path, const std::vector<LinearOrder>& profile) {
    write_text_file(path, profile_to_text(profile));
}

std::string records_to_csv(const std::vector<PollRecord>& records,
                           const std::string& strategy_label) {
    std::string out = "user,poll,strategy,time,dkt,moves\n";
    for (const PollRecord& record : records) {
        out += std::to_string(record.user);
        out += ',';
        out += std::to_string(record.poll);
        out += ',';
        out += strategy_label;
        out += ',';
        out += format_double(record.time);
        out += ',';
        out += std::to_string(record.dkt);
        out += ',';
        out += std::to_string(record.moves);
        out += '\n';
    }
    return out;
}

void write_records(const std::string& path, const std::vector<PollRecord>& records,
                   const std::string& strategy_label) {
    write_text_file(path, records_to_csv(records, strategy_label));
}

std::string marginals_to_csv(const PairwiseMarginalMatrix& M) {
    std::string out;
    for (int i = 0; i < M.size(); ++i) {
        for (int j = 0; j < M.size(); ++j) {
            if (j > 0) out += ',';
            out += format_double(M.at(i, j));
        }
        out += '\n';
    }
    return out;
}

namespace {

const json& require_field(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key))
        throw InvalidInputError(where + ": missing field '" + key + "'");
    return obj.at(key);
}

double as_number(const json& value, const std::string& where) {
    if (!value.is_number())
        throw InvalidInputError(where + ": expected a number");
    return value.get<double>();
}

int as_int(const json& value, const std::string& where) {
    if (!value.is_number_integer())
        throw InvalidInputError(where + ": expected an integer");
    return value.get<int>();
}

std::uint64_t as_seed(const json& value, const std::string& where) {
    if (value.is_number_unsigned()) return value.get<std::uint64_t>();
    if (value.is_number_integer() && value.get<long long>() >= 0)
        return static_cast<std::uint64_t>(value.get<long long>());
    throw InvalidInputError(where + ": expected a nonnegative integer seed");
}

Eigen::VectorXd as_vector(const json& value, const std::string& where) {
    if (!value.is_array() || value.empty())
        throw InvalidInputError(where + ": expected a non-empty array of numbers");
    Eigen::VectorXd out(value.size());
    for (std::size_t i = 0; i < value.size(); ++i)
        out[static_cast<Eigen::Index>(i)] =
            as_number(value[i], where + "[" + std::to_string(i) + "]");
    return out;
}

LinearOrder as_order(const json& value, const std::string& where) {
    if (!value.is_array() || value.empty())
        throw InvalidInputError(where + ": expected a non-empty array of item ids");
    std::vector<Alternative> items;
    items.reserve(value.size());
    for (std::size_t i = 0; i < value.size(); ++i)
        items.push_back(as_int(value[i], where + "[" + std::to_string(i) + "]"));
    try {
        return LinearOrder(std::move(items));
    } catch (const InvalidInputError& e) {
        throw InvalidInputError(where + ": " + e.what());
    }
}

PreferenceModel parse_pl_model(const json& doc, const std::string& where) {
    const json& components = require_field(doc, "components", where);
    if (!components.is_array() || components.empty())
        throw InvalidInputError(where + ".components: expected a non-empty array");
    Eigen::VectorXd gamma(components.size());
    std::vector<PlackettLuceParams> params;
    params.reserve(components.size());
    for (std::size_t i = 0; i < components.size(); ++i) {
        const std::string cw = where + ".components[" + std::to_string(i) + "]";
        const json& component = components[i];
        gamma[static_cast<Eigen::Index>(i)] =
            as_number(require_field(component, "weight", cw), cw + ".weight");
        const bool has_theta = component.is_object() && component.contains("theta");
        const bool has_log = component.is_object() && component.contains("log_theta");
        if (has_theta == has_log)
            throw InvalidInputError(cw + ": provide exactly one of 'theta' or 'log_theta'");
        try {
            if (has_theta)
                params.emplace_back(as_vector(component.at("theta"), cw + ".theta"));
            else
                params.push_back(PlackettLuceParams::from_log_theta(
                    as_vector(component.at("log_theta"), cw + ".log_theta")));
        } catch (const InvalidInputError& e) {
            throw InvalidInputError(cw + ": " + e.what());
        }
    }
    return PreferenceModel::plackett_luce_mixture(gamma, std::move(params));
}

PreferenceModel parse_mallows_model(const json& doc, const std::string& where) {
    const json& components = require_field(doc, "components", where);
    if (!components.is_array() || components.empty())
        throw InvalidInputError(where + ".components: expected a non-empty array");
    Eigen::VectorXd gamma(components.size());
    std::vector<MallowsParams> params;
    params.reserve(components.size());
    for (std::size_t i = 0; i < components.size(); ++i) {
        const std::string cw = where + ".components[" + std::to_string(i) + "]";
        const json& component = components[i];
        gamma[static_cast<Eigen::Index>(i)] =
            as_number(require_field(component, "weight", cw), cw + ".weight");
        LinearOrder reference =
            as_order(require_field(component, "reference", cw), cw + ".reference");
        const double phi = as_number(require_field(component, "phi", cw), cw + ".phi");
        try {
            params.emplace_back(std::move(reference), phi);
        } catch (const InvalidInputError& e) {
            throw InvalidInputError(cw + ": " + e.what());
        }
    }
    return PreferenceModel::mallows_mixture(gamma, std::move(params));
}

PreferenceModel parse_uniform_model(const json& doc, const std::string& where) {
    const json& entries = require_field(doc, "profile", where);
    if (!entries.is_array() || entries.empty())
        throw InvalidInputError(where + ".profile: expected a non-empty array of orders");
    std::vector<LinearOrder> profile;
    profile.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i)
        profile.push_back(as_order(entries[i], where + ".profile[" + std::to_string(i) + "]"));
    return PreferenceModel::uniform(std::move(profile));
}

}  // namespace

PreferenceModel parse_model(const json& doc, const std::string& origin) {
    const std::string where = origin + ": model";
    const json& type = require_field(doc, "type", where);
    if (!type.is_string()) throw InvalidInputError(where + ".type: expected a string");
    const std::string kind = type.get<std::string>();
    if (kind == "plackett-luce") return parse_pl_model(doc, where);
    if (kind == "mallows") return parse_mallows_model(doc, where);
    if (kind == "uniform") return parse_uniform_model(doc, where);
    throw InvalidInputError(where + ".type: unknown model type '" + kind +
                            "' (expected plackett-luce, mallows, or uniform)");
}

PreferenceModel load_model(const std::string& path) {
    const std::string text = read_text_file(path);
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidInputError(path + ": " + e.what());
    }
    return parse_model(doc, path);
}

json model_to_json(const PreferenceModel& model) {
    json doc;
    doc["m"] = model.size();
    switch (model.kind()) {
        case ModelKind::PlackettLuceMixture: {
            doc["type"] = "plackett-luce";
            json components = json::array();
            for (int l = 0; l < model.num_components(); ++l) {
                json component;
                component["weight"] = model.weights()[l];
                const Eigen::VectorXd& lt = model.pl_component(l).log_theta();
                component["log_theta"] = std::vector<double>(lt.data(), lt.data() + lt.size());
                components.push_back(std::move(component));
            }
            doc["components"] = std::move(components);
            break;
        }
        case ModelKind::MallowsMixture: {
            doc["type"] = "mallows";
            json components = json::array();
            for (int l = 0; l < model.num_components(); ++l) {
                const MallowsParams& params = model.mallows_component(l);
                json component;
                component["weight"] = model.weights()[l];
                component["reference"] = params.reference().items();
                component["phi"] = params.phi();
                components.push_back(std::move(component));
            }
            doc["components"] = std::move(components);
            break;
        }
        case ModelKind::UniformProfile: {
            doc["type"] = "uniform";
            json profile = json::array();
            for (const LinearOrder& order : model.profile()) profile.push_back(order.items());
            doc["profile"] = std::move(profile);
            break;
        }
    }
    return doc;
}

ExperimentConfig parse_experiment_config(const json& doc, const std::string& origin) {
    const std::string where = origin + ": config";
    if (!doc.is_object()) throw InvalidInputError(where + ": expected a JSON object");

    ExperimentConfig config;
    config.m = as_int(require_field(doc, "m", where), where + ".m");
    config.users = as_int(require_field(doc, "users", where), where + ".users");
    config.polls = as_int(require_field(doc, "polls", where), where + ".polls");
    config.seed = as_seed(require_field(doc, "seed", where), where + ".seed");
    config.ground_truth_seed = doc.contains("ground_truth_seed")
                                   ? as_seed(doc.at("ground_truth_seed"),
                                             where + ".ground_truth_seed")
                                   : config.seed;

    const json& strategy = require_field(doc, "strategy", where);
    if (!strategy.is_string())
        throw InvalidInputError(where + ".strategy: expected a string");
    const std::string strategy_text = strategy.get<std::string>();
    if (strategy_text == "random") {
        config.strategy = RecommendationStrategy::Random;
    } else if (strategy_text == "adaptive_borda") {
        config.strategy = RecommendationStrategy::AdaptiveBorda;
    } else if (strategy_text == "exact") {
        config.strategy = RecommendationStrategy::Exact;
    } else if (strategy_text == "brute_force") {
        config.strategy = RecommendationStrategy::BruteForce;
    } else {
        throw InvalidInputError(where + ".strategy: unknown strategy '" + strategy_text +
                                "' (expected random, adaptive_borda, exact, or brute_force)");
    }

    if (doc.contains("noise_std"))
        config.noise_std = as_number(doc.at("noise_std"), where + ".noise_std");
    if (doc.contains("redraw_noise_each_poll")) {
        const json& flag = doc.at("redraw_noise_each_poll");
        if (!flag.is_boolean())
            throw InvalidInputError(where + ".redraw_noise_each_poll: expected a boolean");
        config.redraw_noise_each_poll = flag.get<bool>();
    }
    if (doc.contains("brute_force_cap"))
        config.brute_force_cap = as_int(doc.at("brute_force_cap"), where + ".brute_force_cap");
    if (doc.contains("mc_samples"))
        config.mc_samples = as_int(doc.at("mc_samples"), where + ".mc_samples");

    if (doc.contains("weights")) {
        const json& weights = doc.at("weights");
        const std::string ww = where + ".weights";
        const json& kind = require_field(weights, "kind", ww);
        if (!kind.is_string()) throw InvalidInputError(ww + ".kind: expected a string");
        const std::string kind_text = kind.get<std::string>();
        try {
            if (kind_text == "linear") {
                config.user_weights = WeightFunction::linear();
            } else if (kind_text == "affine") {
                config.user_weights =
                    WeightFunction::affine(as_number(require_field(weights, "c", ww), ww + ".c"),
                                           as_number(require_field(weights, "d", ww), ww + ".d"));
            } else if (kind_text == "table") {
                config.user_weights = WeightFunction::table(
                    as_vector(require_field(weights, "values", ww), ww + ".values"));
            } else {
                throw InvalidInputError(ww + ".kind: unknown kind '" + kind_text +
                                        "' (expected linear, affine, or table)");
            }
        } catch (const InvalidInputError& e) {
            const std::string message = e.what();
            if (message.rfind(ww, 0) == 0) throw;
            throw InvalidInputError(ww + ": " + message);
        }
    }

    if (doc.contains("target")) {
        const json& target = doc.at("target");
        const std::string tw = where + ".target";
        const json& kind = require_field(target, "kind", tw);
        if (!kind.is_string()) throw InvalidInputError(tw + ".kind: expected a string");
        const std::string kind_text = kind.get<std::string>();
        if (kind_text == "fixed_truth") {
            config.target.kind = TargetSpec::Kind::FixedTruth;
        } else if (kind_text == "mallows") {
            config.target.kind = TargetSpec::Kind::MallowsAroundTruth;
            config.target.phi = as_number(require_field(target, "phi", tw), tw + ".phi");
        } else if (kind_text == "model") {
            config.target.kind = TargetSpec::Kind::ExplicitModel;
            config.target.model = parse_model(require_field(target, "model", tw), origin);
        } else {
            throw InvalidInputError(tw + ".kind: unknown kind '" + kind_text +
                                    "' (expected fixed_truth, mallows, or model)");
        }
    }

    validate(config);
    return config;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    const std::string text = read_text_file(path);
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidInputError(path + ": " + e.what());
    }
    return parse_experiment_config(doc, path);
}

const char* strategy_name(RecommendationStrategy strategy) {
    switch (strategy) {
        case RecommendationStrategy::Random:
            return "random";
        case RecommendationStrategy::AdaptiveBorda:
            return "adaptive_borda";
        case RecommendationStrategy::Exact:
            return "exact";
        case RecommendationStrategy::BruteForce:
            return "brute_force";
    }
    throw InvalidInputError("strategy_name: corrupt strategy");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError("failed reading file: " + path);
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open file for writing: " + path);
    out << content;
    out.flush();
    if (!out) throw IoError("failed writing file: " + path);
}

}  // namespace ttr
