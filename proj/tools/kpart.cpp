#include "kpart/io.hpp"
#include "kpart/oracle.hpp"
#include "kpart/problems.hpp"
#include "kpart/random_graphs.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <iostream>
#include <limits>
#include <sstream>
#include <variant>

using namespace kpart;
using nlohmann::json;

namespace {

enum class Exit
{
    Ok = 0,
    ConfigError = 1,
    Undefined = 2,
};

/// The problem has no answer on this input (odd order, k < 1, ...).
struct UndefinedInput : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct RunConfig
{
    std::string problem;
    std::string input;
    std::string mode = "dense";
    std::string infants = "auto";
    std::uint64_t seed = 1;
    std::uint64_t budget_cells = std::uint64_t{1} << 26;
    std::size_t max_sets = std::size_t{1} << 22;
    std::optional<int> k;
    std::optional<double> nu, mu, a, c;
    bool json_output = false;
    bool verbose = false;
    bool certificate = false;
};

using Answer = std::variant<std::monostate, bool, Natural>;

struct Outcome
{
    Answer answer;
    std::optional<std::vector<int>> coloring;
    DriverStats stats;
    bool have_stats = false;
};

std::string answer_text(const Answer & a)
{
    if (std::holds_alternative<std::monostate>(a))
        return "none";
    if (auto b = std::get_if<bool>(&a))
        return *b ? "true" : "false";
    return std::get<Natural>(a).str();
}

json answer_json(const Answer & a)
{
    if (std::holds_alternative<std::monostate>(a))
        return nullptr;
    if (auto b = std::get_if<bool>(&a))
        return *b;
    const Natural & v = std::get<Natural>(a);
    if (v <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(v);
    return v.str();
}

DriverOptions driver_options(const RunConfig & cfg)
{
    DriverOptions o;
    o.engine.space = cfg.mode == "polyspace" ? SpaceMode::Polyspace : SpaceMode::Dense;
    o.engine.dense_budget_cells = cfg.budget_cells;
    o.engine.max_provider_sets = cfg.max_sets;
    if (cfg.infants == "none")
        o.infants = InfantStrategy::None;
    else if (cfg.infants == "scattered")
        o.infants = InfantStrategy::Scattered;
    else if (cfg.infants == "auto")
        o.infants = InfantStrategy::CoreConstruction;
    else
        throw InvalidInput("an infant file is only accepted by 'solve instance'");
    if (cfg.nu || cfg.mu || cfg.a || cfg.c) {
        CoreParams p;
        p.nu = cfg.nu.value_or(p.nu);
        p.mu = cfg.mu.value_or(p.mu);
        p.a = cfg.a.value_or(p.a);
        p.c = cfg.c.value_or(p.c);
        o.core_override = p;
    }
    if (cfg.verbose)
        o.progress = [](const std::string & line) { std::cerr << line << '\n'; };
    return o;
}

Answer optional_weight(const std::optional<Weight> & w)
{
    if (! w)
        return std::monostate{};
    return Natural(*w);
}

Outcome run_graph_problem(const RunConfig & cfg, bool use_oracle)
{
    Graph g = io::read_graph_file(cfg.input);
    Outcome out;
    const std::string & p = cfg.problem;
    if (use_oracle) {
        if (p == "chromatic")
            out.answer = Natural(oracle::brute_chromatic(g));
        else if (p == "domatic") {
            if (cfg.k) {
                if (*cfg.k < 1)
                    throw UndefinedInput("domatic decision needs k >= 1");
                out.answer = oracle::brute_domatic(g, *cfg.k);
            } else {
                int best = g.n() == 0 ? 0 : 1;
                for (int k = 2; k <= g.min_degree() + 1 && oracle::brute_domatic(g, k); ++k)
                    best = k;
                out.answer = Natural(best);
            }
        } else if (p == "hamcycle")
            out.answer = oracle::brute_hamcycle(g);
        else if (p == "tsp")
            out.answer = optional_weight(oracle::brute_tsp(g));
        else if (p == "matchings") {
            if (g.n() % 2 != 0)
                throw UndefinedInput("perfect matchings need an even vertex count");
            out.answer = oracle::brute_count_pm(g);
        }
        return out;
    }

    DriverOptions opts = driver_options(cfg);
    out.have_stats = true;
    DriverStats * st = &out.stats;
    if (p == "chromatic") {
        int chi = chromatic_number(g, opts, st);
        out.answer = Natural(chi);
        if (cfg.certificate)
            out.coloring = find_coloring(g, chi, opts);
    } else if (p == "domatic") {
        if (cfg.k) {
            if (*cfg.k < 1)
                throw UndefinedInput("domatic decision needs k >= 1");
            out.answer = domatic_decision(g, *cfg.k, opts, st);
        } else {
            out.answer = Natural(domatic_number(g, opts, st));
        }
    } else if (p == "hamcycle") {
        out.answer = hamiltonian_cycle(g, opts, st);
    } else if (p == "tsp") {
        out.answer = optional_weight(tsp(g, opts, st));
    } else if (p == "matchings") {
        if (g.n() % 2 != 0)
            throw UndefinedInput("perfect matchings need an even vertex count");
        out.answer = count_perfect_matchings(g, opts, st);
    }
    return out;
}

Answer instance_answer(Objective objective, bool feasible, const Natural & count, std::optional<Weight> w)
{
    switch (objective) {
    case Objective::Decision:
        return feasible;
    case Objective::Count:
        return count;
    case Objective::MinWeight:
        return optional_weight(w);
    }
    return feasible;
}

Outcome run_instance(const RunConfig & cfg, bool use_oracle)
{
    PartitionInstance inst = io::read_instance_file(cfg.input);
    Outcome out;
    if (use_oracle) {
        auto b = oracle::brute_partition(inst);
        out.answer = instance_answer(inst.objective, b.feasible, b.count, b.min_weight);
        return out;
    }
    EngineConfig engine;
    engine.space = cfg.mode == "polyspace" ? SpaceMode::Polyspace : SpaceMode::Dense;
    engine.dense_budget_cells = cfg.budget_cells;
    engine.max_provider_sets = cfg.max_sets;
    std::optional<InfantSystem> sys;
    if (cfg.infants == "scattered")
        throw InvalidInput("explicit instances take 'auto', 'none' or an infant file");
    if (cfg.infants != "auto" && cfg.infants != "none")
        sys = io::read_infant_system_file(cfg.infants);
    if (sys && inst.structure == Structure::Cover)
        throw InvalidInput("infant systems apply to partition instances only");
    if (sys) {
        auto report = validate_infant_system(inst, *sys);
        if (! report.valid())
            throw InvalidInput("infant system invalid: " + report.violations.front().message);
    }
    auto a = solve(inst, sys, engine);
    out.have_stats = true;
    out.stats.record(a, sys.has_value());
    out.answer = instance_answer(inst.objective, a.feasible, a.count, a.min_weight);
    return out;
}

json stats_json(const DriverStats & s)
{
    return json{{"guesses", s.guesses}, {"engine_calls", s.engine_calls}, {"infant_solves", s.infant_solves},
        {"fallbacks", s.fallbacks}, {"max_packed_domain", s.max_packed_domain}, {"engine_paths", s.engine_paths}};
}

void emit(const RunConfig & cfg, const Outcome & out)
{
    if (cfg.json_output) {
        json j{{"problem", cfg.problem}, {"answer", answer_json(out.answer)}, {"mode", cfg.mode}};
        if (out.have_stats)
            j["stats"] = stats_json(out.stats);
        if (out.coloring)
            j["coloring"] = *out.coloring;
        std::cout << j.dump() << '\n';
        return;
    }
    std::cout << cfg.problem << ' ' << answer_text(out.answer) << '\n';
    if (out.coloring) {
        std::cout << "coloring";
        for (int c : *out.coloring)
            std::cout << ' ' << c;
        std::cout << '\n';
    }
    if (out.have_stats) {
        const auto & s = out.stats;
        std::cerr << "stats guesses=" << s.guesses << " engine_calls=" << s.engine_calls
                  << " infant_solves=" << s.infant_solves << " fallbacks=" << s.fallbacks
                  << " max_packed_domain=" << s.max_packed_domain;
        for (const auto & [path, n] : s.engine_paths)
            std::cerr << ' ' << path << '=' << n;
        std::cerr << '\n';
    }
}

void add_engine_flags(CLI::App * cmd, RunConfig & cfg)
{
    cmd->add_option("--mode", cfg.mode, "engine space mode")->check(CLI::IsMember({"dense", "polyspace"}));
    cmd->add_option("--infants", cfg.infants, "auto, none, scattered, or an infant-system JSON file");
    cmd->add_option("--budget-cells", cfg.budget_cells, "largest packed domain multiplied densely")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-sets", cfg.max_sets, "largest number of sets per family")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", cfg.seed, "random seed (solves are deterministic)");
    cmd->add_option("--nu", cfg.nu, "core-pair parameter override")->check(CLI::PositiveNumber);
    cmd->add_option("--mu", cfg.mu, "core-pair parameter override")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--a", cfg.a, "core-pair parameter override")->check(CLI::NonNegativeNumber);
    cmd->add_option("--c", cfg.c, "core-pair parameter override")->check(CLI::PositiveNumber);
    cmd->add_option("--k", cfg.k, "decision version with k parts (domatic)");
    cmd->add_flag("--json", cfg.json_output, "print the answer and stats as one JSON object");
    cmd->add_flag("-v,--verbose", cfg.verbose, "guess-loop progress on standard error");
}

int generate(const std::string & kind, int n, double p, int d, long long max_weight, std::uint64_t seed)
{
    Rng rng(seed);
    Graph g = kind == "er" ? erdos_renyi(n, p, rng) : random_regular(n, d, rng);
    if (max_weight > 0)
        g = with_random_weights(g, 1, max_weight, rng);
    io::write_graph(std::cout, g);
    return 0;
}

}

int main(int argc, char ** argv)
{
    CLI::App app{"Exact set partition and covering with infant encodings"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto * solve_cmd = app.add_subcommand("solve", "solve a graph problem or an explicit instance");
    solve_cmd->add_option("problem", cfg.problem, "chromatic | domatic | hamcycle | tsp | instance")
        ->required()
        ->check(CLI::IsMember({"chromatic", "domatic", "hamcycle", "tsp", "instance"}));
    solve_cmd->add_option("input", cfg.input, "graph file or instance JSON")->required();
    add_engine_flags(solve_cmd, cfg);
    solve_cmd->add_flag("--certificate", cfg.certificate, "also print an optimal coloring (chromatic)");

    auto * count_cmd = app.add_subcommand("count", "count perfect matchings");
    count_cmd->add_option("problem", cfg.problem, "matchings")->required()->check(CLI::IsMember({"matchings"}));
    count_cmd->add_option("input", cfg.input, "graph file")->required();
    add_engine_flags(count_cmd, cfg);

    auto * oracle_cmd = app.add_subcommand("oracle", "brute-force reference answer");
    oracle_cmd->add_option("problem", cfg.problem, "chromatic | domatic | hamcycle | tsp | matchings | instance")
        ->required()
        ->check(CLI::IsMember({"chromatic", "domatic", "hamcycle", "tsp", "matchings", "instance"}));
    oracle_cmd->add_option("input", cfg.input, "graph file or instance JSON")->required();
    oracle_cmd->add_option("--k", cfg.k, "decision version with k parts (domatic)");
    oracle_cmd->add_flag("--json", cfg.json_output, "print the answer as one JSON object");

    std::string kind;
    int gen_n = 8, gen_d = 3;
    double gen_p = 0.5;
    long long gen_w = 0;
    auto * gen_cmd = app.add_subcommand("gen", "write a random graph in the text format");
    gen_cmd->add_option("kind", kind, "er | regular")->required()->check(CLI::IsMember({"er", "regular"}));
    gen_cmd->add_option("--n", gen_n, "vertex count")->check(CLI::NonNegativeNumber);
    gen_cmd->add_option("--p", gen_p, "edge probability (er)")->check(CLI::Range(0.0, 1.0));
    gen_cmd->add_option("--d", gen_d, "degree (regular)")->check(CLI::NonNegativeNumber);
    gen_cmd->add_option("--max-weight", gen_w, "draw edge weights from 1..max-weight")->check(CLI::NonNegativeNumber);
    gen_cmd->add_option("--seed", cfg.seed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError & e) {
        int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(Exit::ConfigError);
    }

    try {
        if (*gen_cmd)
            return generate(kind, gen_n, gen_p, gen_d, gen_w, cfg.seed);
        bool use_oracle = static_cast<bool>(*oracle_cmd);
        Outcome out = cfg.problem == "instance" ? run_instance(cfg, use_oracle) : run_graph_problem(cfg, use_oracle);
        emit(cfg, out);
        return static_cast<int>(Exit::Ok);
    } catch (const UndefinedInput & e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(Exit::Undefined);
    } catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(Exit::ConfigError);
    }
}
