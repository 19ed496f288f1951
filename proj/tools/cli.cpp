#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "bai/bai.h"
#include "csv.hpp"

namespace bai_cli {
namespace {

using json = nlohmann::json;

struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(bai_status s) {
    if (s != BAI_OK) throw CliError(std::string(bai_status_string(s)) + ": " + bai_last_error());
}

struct InstanceDeleter {
    void operator()(bai_instance* p) const { bai_instance_destroy(p); }
};
struct ExperimentDeleter {
    void operator()(bai_experiment* p) const { bai_experiment_destroy(p); }
};
struct RecordsDeleter {
    void operator()(bai_records* p) const { bai_records_destroy(p); }
};
using InstancePtr = std::unique_ptr<bai_instance, InstanceDeleter>;
using ExperimentPtr = std::unique_ptr<bai_experiment, ExperimentDeleter>;
using RecordsPtr = std::unique_ptr<bai_records, RecordsDeleter>;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

double to_double(const std::string& s) {
    const std::string t = trim(s);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || *end != '\0' || !std::isfinite(v)) throw CliError("bad number '" + s + "'");
    return v;
}

std::uint64_t to_u64(double v, const std::string& what) {
    if (!(v >= 0.0) || v != std::floor(v) || v > 1.8e19)
        throw CliError(what + " must be a non-negative integer");
    return static_cast<std::uint64_t>(v);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& p : split(text, ',')) out.push_back(to_double(p));
    if (out.empty()) throw CliError("empty list");
    return out;
}

// ---- enum names ----

bai_family parse_family(const std::string& s) {
    if (s == "gaussian") return BAI_FAMILY_GAUSSIAN;
    if (s == "bernoulli") return BAI_FAMILY_BERNOULLI;
    if (s == "exponential") return BAI_FAMILY_EXPONENTIAL;
    throw CliError("unknown family '" + s + "' (gaussian, bernoulli, exponential)");
}

bai_algorithm parse_algorithm(const std::string& s) {
    if (s == "elimination") return BAI_ALG_ELIMINATION;
    if (s == "alpha-elimination") return BAI_ALG_ALPHA_ELIMINATION;
    if (s == "sglrt") return BAI_ALG_SGLRT;
    if (s == "sprt") return BAI_ALG_SPRT;
    if (s == "static") return BAI_ALG_STATIC;
    throw CliError("unknown algorithm '" + s + "'");
}

bai_rate parse_rate_name(const std::string& s) {
    bai_rate r;
    if (bai_rate_parse(s.c_str(), &r) != BAI_OK)
        throw CliError("unknown rate '" + s + "' (robbins, iterated-log, alpha-elim, sglrt, loglog, plain)");
    return r;
}

bai_allocation parse_allocation(const std::string& s) {
    if (s == "uniform") return BAI_ALLOC_UNIFORM;
    if (s == "optimal") return BAI_ALLOC_OPTIMAL;
    throw CliError("unknown allocation '" + s + "' (uniform, optimal)");
}

bai_sprt_statistic parse_statistic(const std::string& s) {
    if (s == "exact-llr") return BAI_SPRT_EXACT_LLR;
    if (s == "unscaled") return BAI_SPRT_UNSCALED;
    throw CliError("unknown SPRT statistic '" + s + "' (exact-llr, unscaled)");
}

// ---- experiments ----

struct InstanceSpec {
    std::string id;
    bai_family family = BAI_FAMILY_GAUSSIAN;
    std::vector<double> means;
    std::vector<double> variances;
    std::size_t m = 1;
};

struct Experiment {
    InstanceSpec instance;
    bai_algorithm algorithm = BAI_ALG_ELIMINATION;
    std::optional<bai_rate> rate;
    std::optional<double> alpha;
    std::optional<std::uint64_t> tau_max;
    bai_sprt_statistic statistic = BAI_SPRT_EXACT_LLR;
    bai_allocation allocation = BAI_ALLOC_UNIFORM;
    std::vector<double> deltas;
    std::vector<std::uint64_t> budgets;
    std::uint64_t replications = 10000;
    std::uint64_t seed = 0;
    unsigned workers = 0;
};

std::string default_id(const std::vector<double>& means) {
    std::string id;
    for (std::size_t i = 0; i < means.size(); ++i) {
        if (i) id += '/';
        id += format_double(means[i]);
    }
    return id;
}

InstancePtr make_instance(const InstanceSpec& spec) {
    std::vector<double> variances = spec.variances;
    if (spec.family == BAI_FAMILY_GAUSSIAN) {
        if (variances.empty()) throw CliError("gaussian instances need --variances");
        if (variances.size() == 1) variances.assign(spec.means.size(), variances[0]);
        if (variances.size() != spec.means.size())
            throw CliError("--variances must match --means in length");
    }
    bai_instance* raw = nullptr;
    check(bai_instance_create(spec.family, spec.means.data(),
                              variances.empty() ? nullptr : variances.data(), spec.means.size(),
                              spec.m, &raw));
    return InstancePtr(raw);
}

std::vector<CsvRecord> run_experiment(const Experiment& e, std::ostream& err,
                                      std::set<std::string>& warned) {
    const auto instance = make_instance(e.instance);
    bai_experiment* raw = nullptr;
    const std::string id = e.instance.id.empty() ? default_id(e.instance.means) : e.instance.id;
    check(bai_experiment_create(instance.get(), id.c_str(), e.algorithm, &raw));
    ExperimentPtr exp(raw);
    if (e.rate) check(bai_experiment_set_rate(exp.get(), *e.rate));
    if (e.alpha) check(bai_experiment_set_alpha(exp.get(), *e.alpha));
    if (e.tau_max) check(bai_experiment_set_tau_max(exp.get(), *e.tau_max));
    check(bai_experiment_set_sprt_statistic(exp.get(), e.statistic));
    check(bai_experiment_set_allocation(exp.get(), e.allocation));
    check(bai_experiment_set_deltas(exp.get(), e.deltas.data(), e.deltas.size()));
    check(bai_experiment_set_budgets(exp.get(), e.budgets.data(), e.budgets.size()));
    check(bai_experiment_set_replications(exp.get(), e.replications));
    check(bai_experiment_set_seed(exp.get(), e.seed));
    check(bai_experiment_set_workers(exp.get(), e.workers));
    check(bai_experiment_validate(exp.get()));

    if (e.algorithm != BAI_ALG_STATIC && e.algorithm != BAI_ALG_SPRT) {
        bai_rate rate = e.rate.value_or(e.algorithm == BAI_ALG_ALPHA_ELIMINATION ? BAI_RATE_ALPHA_ELIM
                                        : e.algorithm == BAI_ALG_SGLRT          ? BAI_RATE_SGLRT
                                                                                : BAI_RATE_ROBBINS);
        for (double d : e.deltas)
            if (const char* w = bai_rate_warning(rate, d); w && warned.insert(w).second)
                err << "warning: " << w << '\n';
    }

    bai_records* recs_raw = nullptr;
    check(bai_experiment_run(exp.get(), &recs_raw));
    RecordsPtr recs(recs_raw);
    std::vector<CsvRecord> rows;
    for (std::size_t i = 0; i < bai_records_size(recs.get()); ++i) {
        bai_record r;
        check(bai_records_get(recs.get(), i, &r));
        rows.push_back(from_c(r));
    }
    return rows;
}

// ---- config file ----

// Values from an optional JSON config; flags given on the command line win.
struct Settings {
    std::optional<std::string> instance_id;
    std::optional<std::string> family;
    std::optional<std::vector<double>> means;
    std::optional<std::vector<double>> variances;
    std::optional<std::size_t> m;
    std::optional<std::string> algorithm;
    std::optional<std::string> rate;
    std::optional<double> alpha;
    std::optional<std::uint64_t> tau_max;
    std::optional<std::string> sprt_statistic;
    std::optional<std::string> allocation;
    std::optional<std::vector<double>> deltas;
    std::optional<std::vector<std::uint64_t>> budgets;
    std::optional<std::uint64_t> replications;
    std::optional<std::uint64_t> master_seed;
    std::optional<unsigned> workers;
};

void reject_unknown(const json& obj, const std::set<std::string>& keys, const std::string& where) {
    for (const auto& [k, v] : obj.items())
        if (!keys.count(k)) throw CliError("unknown key '" + k + "' in " + where);
}

std::vector<double> json_reals(const json& v, const std::string& key) {
    if (v.is_string()) return parse_real_grid(v.get<std::string>());
    if (!v.is_array()) throw CliError("'" + key + "' must be an array or a grid string");
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) throw CliError("'" + key + "' must contain numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

std::uint64_t json_u64(const json& v, const std::string& key) {
    if (!v.is_number()) throw CliError("'" + key + "' must be a number");
    return to_u64(v.get<double>(), key);
}

std::string json_string(const json& v, const std::string& key) {
    if (!v.is_string()) throw CliError("'" + key + "' must be a string");
    return v.get<std::string>();
}

Settings load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError("cannot open config file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw CliError("invalid JSON in '" + path + "': " + e.what());
    }
    if (!j.is_object()) throw CliError("config must be a JSON object");
    reject_unknown(j, {"instance_id", "instance", "algorithm", "deltas", "budgets", "replications",
                       "master_seed", "workers"},
                   "config");
    Settings s;
    if (j.contains("instance_id")) s.instance_id = json_string(j["instance_id"], "instance_id");
    if (j.contains("instance")) {
        const auto& inst = j["instance"];
        if (!inst.is_object()) throw CliError("'instance' must be an object");
        reject_unknown(inst, {"family", "means", "variances", "m"}, "instance");
        if (inst.contains("family")) s.family = json_string(inst["family"], "family");
        if (inst.contains("means")) s.means = json_reals(inst["means"], "means");
        if (inst.contains("variances")) s.variances = json_reals(inst["variances"], "variances");
        if (inst.contains("m")) s.m = json_u64(inst["m"], "m");
    }
    if (j.contains("algorithm")) {
        const auto& alg = j["algorithm"];
        if (!alg.is_object()) throw CliError("'algorithm' must be an object");
        reject_unknown(alg, {"kind", "rate", "alpha", "tau_max", "sprt_statistic", "allocation"},
                       "algorithm");
        if (alg.contains("kind")) s.algorithm = json_string(alg["kind"], "kind");
        if (alg.contains("rate")) s.rate = json_string(alg["rate"], "rate");
        if (alg.contains("alpha")) {
            if (!alg["alpha"].is_number()) throw CliError("'alpha' must be a number");
            s.alpha = alg["alpha"].get<double>();
        }
        if (alg.contains("tau_max")) s.tau_max = json_u64(alg["tau_max"], "tau_max");
        if (alg.contains("sprt_statistic"))
            s.sprt_statistic = json_string(alg["sprt_statistic"], "sprt_statistic");
        if (alg.contains("allocation")) s.allocation = json_string(alg["allocation"], "allocation");
    }
    if (j.contains("deltas")) s.deltas = json_reals(j["deltas"], "deltas");
    if (j.contains("budgets")) {
        const auto& b = j["budgets"];
        if (b.is_string()) {
            s.budgets = parse_budget_grid(b.get<std::string>());
        } else {
            std::vector<std::uint64_t> out;
            for (double v : json_reals(b, "budgets")) out.push_back(to_u64(v, "budgets"));
            s.budgets = out;
        }
    }
    if (j.contains("replications")) s.replications = json_u64(j["replications"], "replications");
    if (j.contains("master_seed")) s.master_seed = json_u64(j["master_seed"], "master_seed");
    if (j.contains("workers"))
        s.workers = static_cast<unsigned>(json_u64(j["workers"], "workers"));
    return s;
}

// ---- command-line plumbing ----

struct InstanceFlags {
    std::string family = "gaussian";
    std::string means;
    std::string variances;
    std::size_t m = 1;
    std::string id;
    CLI::Option* family_opt = nullptr;
    CLI::Option* means_opt = nullptr;
    CLI::Option* variances_opt = nullptr;
    CLI::Option* m_opt = nullptr;
    CLI::Option* id_opt = nullptr;

    void attach(CLI::App* app) {
        family_opt = app->add_option("--family", family, "gaussian, bernoulli or exponential");
        means_opt = app->add_option("--means", means, "comma-separated arm means");
        variances_opt =
            app->add_option("--variances", variances, "comma-separated variances (gaussian)");
        m_opt = app->add_option("--m", m, "size of the best set");
        id_opt = app->add_option("--instance-id", id, "label for the instance column");
    }

    InstanceSpec resolve(const Settings& cfg) const {
        InstanceSpec spec;
        spec.family = parse_family(family_opt->count() ? family : cfg.family.value_or(family));
        if (means_opt->count())
            spec.means = parse_list(means);
        else if (cfg.means)
            spec.means = *cfg.means;
        else
            throw CliError("--means is required");
        if (variances_opt->count())
            spec.variances = parse_list(variances);
        else if (cfg.variances)
            spec.variances = *cfg.variances;
        spec.m = m_opt->count() ? m : cfg.m.value_or(m);
        spec.id = id_opt->count() ? id : cfg.instance_id.value_or("");
        return spec;
    }
};

struct RunFlags {
    std::uint64_t reps = 10000;
    std::uint64_t seed = 0;
    unsigned workers = 0;
    std::string out_path;
    CLI::Option* reps_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* workers_opt = nullptr;

    void attach(CLI::App* app) {
        reps_opt = app->add_option("--reps", reps, "Monte Carlo replications per grid cell");
        seed_opt = app->add_option("--seed", seed, "master seed");
        workers_opt = app->add_option("--workers", workers, "worker threads (0 = all cores)");
        app->add_option("--out", out_path, "output CSV file (default: stdout)");
    }
};

unsigned env_workers() {
    if (const char* env = std::getenv("BAI_WORKERS"); env && *env)
        return static_cast<unsigned>(to_u64(to_double(env), "BAI_WORKERS"));
    return 0;
}

unsigned resolve_workers(const RunFlags& f, const Settings& cfg) {
    if (f.workers_opt->count()) return f.workers;
    if (cfg.workers) return *cfg.workers;
    return env_workers();
}

void emit(const std::vector<CsvRecord>& rows, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        write_csv(out, rows);
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw CliError("cannot write '" + path + "'");
    write_csv(file, rows);
    if (!file) throw CliError("write to '" + path + "' failed");
}

std::vector<Experiment> figure_preset(const std::string& target, std::uint64_t reps,
                                      std::uint64_t seed, unsigned workers) {
    const std::vector<double> deltas = {0.1, 0.05, 0.02, 0.01, 0.005, 0.002, 0.001};
    std::vector<Experiment> out;
    auto add = [&](const InstanceSpec& inst, bai_algorithm alg, std::optional<bai_rate> rate,
                   bai_allocation alloc, std::vector<std::uint64_t> budgets) {
        Experiment e;
        e.instance = inst;
        e.algorithm = alg;
        e.rate = rate;
        e.allocation = alloc;
        if (alg == BAI_ALG_STATIC)
            e.budgets = std::move(budgets);
        else
            e.deltas = deltas;
        e.replications = reps;
        e.seed = seed;
        e.workers = workers;
        out.push_back(std::move(e));
    };
    if (target == "fig3-easy" || target == "fig3-hard") {
        const bool easy = target == "fig3-easy";
        const InstanceSpec inst{easy ? "easy" : "hard", BAI_FAMILY_GAUSSIAN,
                                {easy ? 0.5 : 0.01, 0.0}, {0.25, 0.25}, 1};
        for (auto r : {BAI_RATE_ROBBINS, BAI_RATE_LOGLOG, BAI_RATE_PLAIN})
            add(inst, BAI_ALG_ELIMINATION, r, BAI_ALLOC_UNIFORM, {});
        add(inst, BAI_ALG_SPRT, std::nullopt, BAI_ALLOC_UNIFORM, {});
        add(inst, BAI_ALG_STATIC, std::nullopt, BAI_ALLOC_UNIFORM,
            easy ? parse_budget_grid("4:80:4") : parse_budget_grid("2000:40000:2000"));
    } else if (target == "fig4-left" || target == "fig4-right") {
        const bool left = target == "fig4-left";
        const InstanceSpec inst{left ? "0.2-0.1" : "0.51-0.5", BAI_FAMILY_BERNOULLI,
                                {left ? 0.2 : 0.51, left ? 0.1 : 0.5}, {}, 1};
        for (auto alg : {BAI_ALG_SGLRT, BAI_ALG_ELIMINATION})
            for (auto r : {BAI_RATE_PLAIN, BAI_RATE_LOGLOG})
                add(inst, alg, r, BAI_ALLOC_UNIFORM, {});
        const auto budgets =
            left ? parse_budget_grid("50:1000:50") : parse_budget_grid("1000:20000:1000");
        add(inst, BAI_ALG_STATIC, std::nullopt, BAI_ALLOC_UNIFORM, budgets);
        add(inst, BAI_ALG_STATIC, std::nullopt, BAI_ALLOC_OPTIMAL, budgets);
    } else {
        throw CliError("unknown figure '" + target + "'");
    }
    return out;
}

int dispatch(CLI::App& app, int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
    app.require_subcommand(1);

    // complexity
    auto* cx = app.add_subcommand("complexity", "two-armed complexity report");
    InstanceFlags cx_inst;
    cx_inst.attach(cx);

    // bound
    auto* bd = app.add_subcommand("bound", "lower bounds for an instance");
    InstanceFlags bd_inst;
    bd_inst.attach(bd);
    double bd_delta = 0.1, bd_eps = 0.0;
    std::uint64_t bd_budget = 0;
    auto* bd_delta_opt = bd->add_option("--delta", bd_delta, "confidence level");
    auto* bd_eps_opt = bd->add_option("--epsilon", bd_eps, "relaxation (bernoulli)");
    auto* bd_budget_opt = bd->add_option("--budget", bd_budget, "fixed budget");

    // simulate-fc
    auto* fc = app.add_subcommand("simulate-fc", "fixed-confidence Monte Carlo experiment");
    InstanceFlags fc_inst;
    fc_inst.attach(fc);
    RunFlags fc_run;
    fc_run.attach(fc);
    std::string fc_alg = "elimination", fc_rate, fc_stat = "exact-llr", fc_deltas, fc_config;
    double fc_alpha = 0.5;
    std::uint64_t fc_tau_max = 0;
    auto* fc_alg_opt = fc->add_option("--algorithm", fc_alg, "elimination, alpha-elimination, sglrt, sprt");
    auto* fc_rate_opt = fc->add_option("--rate", fc_rate, "exploration rate");
    auto* fc_alpha_opt = fc->add_option("--alpha", fc_alpha, "sampling fraction of arm 1");
    auto* fc_tau_opt = fc->add_option("--tau-max", fc_tau_max, "per-run sample cap");
    auto* fc_stat_opt = fc->add_option("--sprt-statistic", fc_stat, "exact-llr or unscaled");
    auto* fc_deltas_opt = fc->add_option("--deltas", fc_deltas, "delta grid");
    fc->add_option("--config", fc_config, "JSON config file");

    // simulate-fb
    auto* fb = app.add_subcommand("simulate-fb", "fixed-budget Monte Carlo experiment");
    InstanceFlags fb_inst;
    fb_inst.attach(fb);
    RunFlags fb_run;
    fb_run.attach(fb);
    std::string fb_alloc = "uniform", fb_budgets, fb_config;
    auto* fb_alloc_opt = fb->add_option("--alloc", fb_alloc, "uniform or optimal");
    auto* fb_budgets_opt = fb->add_option("--budgets", fb_budgets, "budget grid");
    fb->add_option("--config", fb_config, "JSON config file");

    // lil-check
    auto* lil = app.add_subcommand("lil-check", "deviation bound vs simulated crossing frequency");
    double lil_sigma = 1.0;
    std::string lil_x = "3,5", lil_beta = "1.5,2";
    std::uint64_t lil_horizon = 10000, lil_paths = 10000, lil_seed = 0;
    unsigned lil_workers = 0;
    lil->add_option("--sigma", lil_sigma, "increment standard deviation");
    lil->add_option("--x", lil_x, "comma-separated x values");
    lil->add_option("--beta", lil_beta, "comma-separated beta values");
    lil->add_option("--horizon", lil_horizon, "path length T");
    lil->add_option("--paths", lil_paths, "number of paths N");
    lil->add_option("--seed", lil_seed, "master seed");
    auto* lil_workers_opt = lil->add_option("--workers", lil_workers, "worker threads");

    // reproduce-figure
    auto* fig = app.add_subcommand("reproduce-figure", "preset experiment grids");
    std::string fig_target;
    fig->add_option("target", fig_target, "fig3-easy, fig3-hard, fig4-left or fig4-right")
        ->required()
        ->check(CLI::IsMember({"fig3-easy", "fig3-hard", "fig4-left", "fig4-right"}));
    RunFlags fig_run;
    fig_run.attach(fig);

    app.parse(argc, argv);

    if (cx->parsed()) {
        const auto spec = cx_inst.resolve({});
        const auto inst = make_instance(spec);
        bai_complexity r;
        check(bai_complexity_report(inst.get(), &r));
        out << "instance,family,c_star_fc,i_star_fc,c_star_fb,i_star_fb,theta_star_reversed,"
               "theta_star_chernoff,kappa_c_lower,kappa_b\n";
        out << quote_field(spec.id.empty() ? default_id(spec.means) : spec.id) << ','
            << cx_inst.family << ',' << format_double(r.c_star_fc) << ','
            << format_double(r.i_star_fc) << ',' << format_double(r.c_star_fb) << ','
            << format_double(r.i_star_fb) << ',' << format_double(r.theta_star_reversed) << ','
            << format_double(r.theta_star_chernoff) << ',' << format_double(r.kappa_c_lower) << ','
            << format_double(r.kappa_b) << '\n';
        return 0;
    }

    if (bd->parsed()) {
        const auto spec = bd_inst.resolve({});
        const auto inst = make_instance(spec);
        std::vector<std::pair<std::string, double>> rows;
        bai_gap_profile g;
        check(bai_gap_profile_compute(inst.get(), &g));
        rows.emplace_back("h", g.h);
        rows.emplace_back("h2", g.h2);
        if (g.has_h_prime) rows.emplace_back("h_prime", g.h_prime);
        if (g.has_gaussian) {
            rows.emplace_back("h_plus", g.h_plus);
            rows.emplace_back("h_minus", g.h_minus);
            rows.emplace_back("h_gauss", g.h_gauss);
            rows.emplace_back("h_tilde", g.h_tilde);
        }
        if (bd_delta_opt->count() || !bd_budget_opt->count()) {
            double v;
            check(bai_fc_lower_bound(inst.get(), bd_delta, &v));
            rows.emplace_back("fc_lower_bound", v);
            if (spec.means.size() == 2) {
                double general, uniform;
                check(bai_fc_two_armed_bounds(inst.get(), bd_delta, &general, &uniform));
                rows.emplace_back("fc_two_armed_general", general);
                rows.emplace_back("fc_two_armed_uniform", uniform);
            }
            if (bd_eps_opt->count()) {
                check(bai_fc_lower_bound_eps(inst.get(), bd_eps, bd_delta, &v));
                rows.emplace_back("fc_lower_bound_eps", v);
            }
        }
        if (bd_budget_opt->count()) {
            double general, m1;
            int has_m1;
            check(bai_fb_error_lower_bounds(inst.get(), bd_budget, &general, &has_m1, &m1));
            if (has_m1) rows.emplace_back("fb_error_lower_bound_m1", m1);
            rows.emplace_back("fb_error_lower_bound", general);
        }
        out << "quantity,value\n";
        for (const auto& [k, v] : rows) out << k << ',' << format_double(v) << '\n';
        return 0;
    }

    if (fc->parsed() || fb->parsed()) {
        const bool is_fc = fc->parsed();
        const Settings cfg = is_fc ? (fc_config.empty() ? Settings{} : load_config(fc_config))
                                   : (fb_config.empty() ? Settings{} : load_config(fb_config));
        const InstanceFlags& inst_flags = is_fc ? fc_inst : fb_inst;
        const RunFlags& run = is_fc ? fc_run : fb_run;
        Experiment e;
        e.instance = inst_flags.resolve(cfg);
        e.replications = run.reps_opt->count() ? run.reps : cfg.replications.value_or(run.reps);
        e.seed = run.seed_opt->count() ? run.seed : cfg.master_seed.value_or(run.seed);
        e.workers = resolve_workers(run, cfg);
        if (is_fc) {
            e.algorithm = parse_algorithm(fc_alg_opt->count() ? fc_alg : cfg.algorithm.value_or(fc_alg));
            if (e.algorithm == BAI_ALG_STATIC) throw CliError("static is a fixed-budget algorithm");
            if (fc_rate_opt->count())
                e.rate = parse_rate_name(fc_rate);
            else if (cfg.rate)
                e.rate = parse_rate_name(*cfg.rate);
            if (fc_alpha_opt->count())
                e.alpha = fc_alpha;
            else if (cfg.alpha)
                e.alpha = cfg.alpha;
            if (fc_tau_opt->count())
                e.tau_max = fc_tau_max;
            else if (cfg.tau_max)
                e.tau_max = cfg.tau_max;
            e.statistic = parse_statistic(fc_stat_opt->count() ? fc_stat
                                                               : cfg.sprt_statistic.value_or(fc_stat));
            if (fc_deltas_opt->count())
                e.deltas = parse_real_grid(fc_deltas);
            else if (cfg.deltas)
                e.deltas = *cfg.deltas;
            else
                throw CliError("--deltas is required");
        } else {
            if (cfg.algorithm && *cfg.algorithm != "static")
                throw CliError("simulate-fb runs the static algorithm only");
            e.algorithm = BAI_ALG_STATIC;
            e.allocation = parse_allocation(fb_alloc_opt->count() ? fb_alloc
                                                                  : cfg.allocation.value_or(fb_alloc));
            if (fb_budgets_opt->count())
                e.budgets = parse_budget_grid(fb_budgets);
            else if (cfg.budgets)
                e.budgets = *cfg.budgets;
            else
                throw CliError("--budgets is required");
        }
        std::set<std::string> warned;
        const auto rows = run_experiment(e, err, warned);
        emit(rows, run.out_path, out);
        return 0;
    }

    if (lil->parsed()) {
        const unsigned workers = lil_workers_opt->count() ? lil_workers : env_workers();
        out << "sigma,x,beta,horizon,paths,bound,crossings,frequency,standard_error,within_bound\n";
        for (double x : parse_list(lil_x)) {
            for (double beta : parse_list(lil_beta)) {
                double bound;
                check(bai_deviation_bound(x, beta, &bound));
                bai_lil_crossing c;
                check(bai_lil_crossing_run(lil_sigma, x, beta, lil_horizon, lil_paths, lil_seed,
                                           workers, &c));
                const bool ok = c.frequency <= bound + 3.0 * c.standard_error;
                out << format_double(lil_sigma) << ',' << format_double(x) << ','
                    << format_double(beta) << ',' << lil_horizon << ',' << lil_paths << ','
                    << format_double(bound) << ',' << c.crossings << ','
                    << format_double(c.frequency) << ',' << format_double(c.standard_error) << ','
                    << (ok ? 1 : 0) << '\n';
            }
        }
        return 0;
    }

    if (fig->parsed()) {
        const auto experiments =
            figure_preset(fig_target, fig_run.reps, fig_run.seed, resolve_workers(fig_run, {}));
        std::vector<CsvRecord> rows;
        std::set<std::string> warned;
        for (const auto& e : experiments) {
            auto part = run_experiment(e, err, warned);
            rows.insert(rows.end(), part.begin(), part.end());
        }
        emit(rows, fig_run.out_path, out);
        return 0;
    }
    return 0;
}

std::string single_line(std::string s) {
    for (char& c : s)
        if (c == '\n' || c == '\r') c = ' ';
    return s;
}

}  // namespace

std::vector<double> parse_real_grid(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() == 1) return parse_list(text);
    if (parts.size() != 3) throw CliError("grid must be a list or start:stop:step");
    const double start = to_double(parts[0]);
    const double stop = to_double(parts[1]);
    const double step = to_double(parts[2]);
    if (!(step > 0.0) || stop < start) throw CliError("grid needs step > 0 and stop >= start");
    const auto n = static_cast<std::uint64_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (n > 10'000'000) throw CliError("grid too large");
    std::vector<double> out;
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
}

std::vector<std::uint64_t> parse_budget_grid(const std::string& text) {
    std::vector<std::uint64_t> out;
    for (double v : parse_real_grid(text)) out.push_back(to_u64(v, "budget"));
    return out;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Best-arm identification: complexities, bounds and Monte Carlo experiments",
                 "bai"};
    try {
        return dispatch(app, argc, argv, out, err);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        err << "error: " << single_line(e.what()) << '\n';
    } catch (const std::exception& e) {
        err << "error: " << single_line(e.what()) << '\n';
    }
    return 2;
}

}  // namespace bai_cli
