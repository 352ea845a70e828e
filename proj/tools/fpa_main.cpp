#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fpa/benchmarks.hpp"
#include "fpa/json_io.hpp"
#include "fpa/nonstationarity.hpp"
#include "fpa/sim.hpp"

namespace {

namespace fs = std::filesystem;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("FPA_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw std::invalid_argument("FPA_SEED must be an unsigned integer");
        }
    }
    return 1;
}

std::string out_path(const std::string& dir, const std::string& name) {
    fs::create_directories(dir);
    return (fs::path(dir) / name).string();
}

int run_simulate(const std::string& config, std::uint64_t seed, const std::string& out_dir) {
    const fpa::InstanceDocument doc = fpa::load_instance(config);
    const fpa::BudgetPlan plan =
        doc.plan ? *doc.plan : fpa::uniform_plan(doc.instance.params);
    const double eta = 1.0 / std::sqrt(static_cast<double>(doc.instance.params.T));
    const fpa::EpisodeResult episode = fpa::run_episode(doc.instance, plan, eta, 0.0, seed);
    const std::string path = out_path(out_dir, "trajectory.csv");
    fpa::write_trajectory_csv(episode, path);
    std::cout << "episode reward " << episode.total_reward << ", spend " << episode.total_spend
              << " (budget " << doc.instance.params.B << ")\n"
              << "trajectory written to " << path << "\n";
    return 0;
}

// Optional experiment config document: {"knobs": [...], "horizon": N,
// "reps": K, "threads": n}. Explicit command-line flags win.
fpa::ExperimentConfig experiment_config_from(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open experiment config: " + path);
    fpa::ExperimentConfig cfg;
    try {
        const nlohmann::json j = nlohmann::json::parse(in);
        if (j.contains("knobs")) cfg.knobs = j.at("knobs").get<std::vector<double>>();
        if (j.contains("horizon")) cfg.horizon = j.at("horizon").get<int>();
        if (j.contains("reps")) cfg.reps = j.at("reps").get<int>();
        if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("bad experiment config: ") + e.what());
    }
    return cfg;
}

int run_experiment_cmd(int kind, std::uint64_t seed, int reps, bool reps_given,
                       const std::string& config, const std::string& out_dir, bool svg) {
    fpa::ExperimentConfig cfg;
    if (!config.empty()) cfg = experiment_config_from(config);
    cfg.kind = kind;
    cfg.seed = seed;
    if (reps_given || config.empty()) cfg.reps = reps;
    const fpa::ExperimentReport report = fpa::run_experiment(cfg);
    const std::string name = "experiment" + std::to_string(kind);
    const std::string csv = out_path(out_dir, name + ".csv");
    fpa::write_csv(report, csv);
    std::cout << "wrote " << csv << "\n";
    if (svg) {
        const std::string pic = out_path(out_dir, name + ".svg");
        fpa::write_svg(report, pic);
        std::cout << "wrote " << pic << "\n";
    }
    return 0;
}

int run_benchmark(const std::string& config, const std::string& out_dir) {
    const fpa::InstanceDocument doc = fpa::load_instance(config);
    const fpa::LagrangianSolution sol = fpa::solve_mu_star(doc.instance);
    const std::string id = fs::path(config).stem().string();

    const std::string path = out_path(out_dir, "benchmark.csv");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "instance-id,benchmark-kind,value,mu_star,slack\n";
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%s,lagrangian_dual,%.12g,%.12g,%.12g\n", id.c_str(),
                  sol.v_lr, sol.mu_star, sol.slack);
    out << buf;
    if (doc.plan) {
        const double plan_value = fpa::plan_benchmark(doc.instance, *doc.plan);
        std::snprintf(buf, sizeof(buf), "%s,plan,%.12g,,\n", id.c_str(), plan_value);
        out << buf;
        if (doc.plan->eps) {
            const double relaxed = fpa::relaxed_plan_benchmark(doc.instance, *doc.plan,
                                                               *doc.plan->eps,
                                                               doc.instance.params.B);
            std::snprintf(buf, sizeof(buf), "%s,relaxed_plan,%.12g,,\n", id.c_str(), relaxed);
            out << buf;
        }
    }
    std::cout << "mu* = " << sol.mu_star << ", dual value = " << sol.v_lr << ", slack = "
              << sol.slack << "\nwrote " << path << "\n";
    return 0;
}

int run_lowerbound(int prop, int horizon, double knob, std::uint64_t seed, int reps,
                   const std::string& out_dir) {
    const fpa::LowerBoundReport report = fpa::lower_bound_check(prop, horizon, knob, reps, seed);
    std::cout << "scenario pair, prop " << report.prop << ", T=" << report.T
              << ", knob=" << report.knob << "\n"
              << "  offline optima: " << report.closed_form_first << " / "
              << report.closed_form_second << "\n"
              << "  oracle (T=" << report.oracle_T << ", knob=" << report.oracle_knob
              << "): " << report.oracle_first << " / " << report.oracle_second
              << " vs closed " << report.oracle_closed_first << " / "
              << report.oracle_closed_second << "\n";
    std::cout << "  policy mean:    " << report.alg_mean_first << " / "
              << report.alg_mean_second << "\n"
              << "  realized regret " << report.closed_form_first - report.alg_mean_first
              << " / " << report.closed_form_second - report.alg_mean_second << "\n";
    const std::string path = out_path(out_dir, "lowerbound.csv");
    fpa::write_lower_bound_csv(report, path);
    std::cout << "wrote " << path << "\n";
    return 0;
}

// Quick invariant sweep: dual bound, budget feasibility, alternate-system
// dominance and overspend telescoping, and determinism. Exit 3 on violation.
int run_selftest(std::uint64_t seed) {
    using namespace fpa;
    int failures = 0;
    auto check = [&](bool ok, const std::string& name) {
        std::cout << (ok ? "[ok]   " : "[FAIL] ") << name << "\n";
        if (!ok) ++failures;
    };

    AuctionParams params{1.0, 2.0, 40, 8.0};
    Instance inst;
    inst.params = params;
    inst.competitor = UniformDist{1.0, 2.0};
    for (int t = 0; t < params.T; ++t) inst.values.push_back(UniformDist{1.0, 2.0});
    const BudgetPlan plan = uniform_plan(params);
    const double bound = params.dual_bound();

    bool mu_ok = true, budget_ok = true, dominance_ok = true, telescope_ok = true;
    for (int rep = 0; rep < 300; ++rep) {
        SplitMix64 rng(substream(seed, 90, static_cast<std::uint64_t>(rep)));
        const double eta = rng.next_in(0.05, 1.0);
        const double mu1 = rng.next_in(0.0, bound);
        const std::uint64_t ep_seed = substream(seed, 91, static_cast<std::uint64_t>(rep));
        const std::vector<ArrivalSample> arrivals = sample_arrivals(inst, ep_seed);

        DualBidder bidder(params, plan, eta, mu1);
        double total = 0.0, spend = 0.0;
        for (const ArrivalSample& ar : arrivals) {
            const double x = bidder.bid(ar.v);
            const StepRecord rec = bidder.observe(x, ar.m);
            total += rec.reward;
            spend += rec.payment;
            if (rec.mu_after > bound) mu_ok = false;
            if (bidder.budget_left() < 0.0) budget_ok = false;
        }
        if (spend > params.B) budget_ok = false;

        const AlternateRun alt = run_alternate(params, plan, eta, mu1, arrivals);
        if (alt.penalized_total > total + 1e-12) dominance_ok = false;
        if (alt.total_spend - params.B > bound / eta + 1e-9) telescope_ok = false;
    }
    check(mu_ok, "dual variable stays within b/a + b");
    check(budget_ok, "spend never exceeds the budget");
    check(dominance_ok, "penalized alternate total <= gated total per path");
    check(telescope_ok, "alternate overspend <= (b/a + b)/eta");

    const EpisodeResult e1 = run_episode(inst, plan, 0.1, 0.0, seed);
    const EpisodeResult e2 = run_episode(inst, plan, 0.1, 0.0, seed);
    check(e1.total_reward == e2.total_reward && e1.total_spend == e2.total_spend,
          "episodes are deterministic per seed");

    std::cout << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
    return failures == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Budget-constrained first-price auction bidding simulator"};
    app.require_subcommand(1);

    std::string config;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    bool seed_given = false;
    int reps = 200;
    bool svg = false;
    int kind = 1;
    int prop = 1;
    int horizon = 200;
    double knob = 20.0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "RNG seed (default from FPA_SEED or 1)")
            ->each([&](const std::string&) { seed_given = true; });
        cmd->add_option("--reps", reps, "Monte-Carlo repetitions");
        cmd->add_option("--out", out_dir, "output directory");
    };

    CLI::App* sim = app.add_subcommand("simulate", "run one episode on a JSON instance");
    sim->add_option("--config", config, "instance JSON")->required();
    add_common(sim);

    CLI::App* exp = app.add_subcommand("experiment", "run a sweep and emit CSV");
    exp->add_option("--kind", kind, "experiment kind (1, 2 or 3)")
        ->required()
        ->check(CLI::Range(1, 3));
    exp->add_flag("--svg", svg, "also emit an SVG chart");
    exp->add_option("--config", config, "optional JSON with knobs/horizon/reps");
    add_common(exp);

    CLI::App* bench = app.add_subcommand("benchmark", "dual and plan benchmarks of an instance");
    bench->add_option("--config", config, "instance JSON")->required();
    add_common(bench);

    CLI::App* lb = app.add_subcommand("lowerbound", "worst-case scenario pair diagnostics");
    lb->add_option("--prop", prop, "scenario family (1 or 2)")->required()->check(CLI::Range(1, 2));
    lb->add_option("--horizon", horizon, "horizon T (divisible by 4)");
    lb->add_option("--knob", knob, "deviation knob (W for prop 1, V for prop 2)");
    add_common(lb);

    CLI::App* st = app.add_subcommand("selftest", "run built-in invariant checks");
    add_common(st);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (!seed_given) seed = default_seed();
        if (sim->parsed()) return run_simulate(config, seed, out_dir);
        if (exp->parsed())
            return run_experiment_cmd(kind, seed, reps, exp->count("--reps") > 0, config,
                                      out_dir, svg);
        if (bench->parsed()) return run_benchmark(config, out_dir);
        if (lb->parsed()) return run_lowerbound(prop, horizon, knob, seed, reps, out_dir);
        if (st->parsed()) return run_selftest(seed);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
