// inspectruin: batch evaluation of bankruptcy probabilities of a Levy
// surplus process observed at renewal inspection epochs. Subcommands cover
// the surplus transform, the decay asymptotics, importance-sampling
// simulation, two-moment fitting of inspection laws, and the figure
// campaigns that compare all of them.

#include <CLI11.hpp>
#include <json.hpp>

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "inspectruin/asymptotics.hpp"
#include "inspectruin/inspection.hpp"
#include "inspectruin/levy_model.hpp"
#include "inspectruin/montecarlo.hpp"
#include "inspectruin/phasefit.hpp"
#include "inspectruin/transforms.hpp"

using json = nlohmann::json;
using namespace inspectruin;

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> parse_range(const std::string& text) {
    std::vector<double> out;
    const auto sep1 = text.find(':');
    if (sep1 == std::string::npos) {
        out.push_back(std::stod(text));
        return out;
    }
    const auto sep2 = text.find(':', sep1 + 1);
    if (sep2 == std::string::npos)
        throw std::invalid_argument("range must be VALUE or START:STOP:STEP: " + text);
    const double start = std::stod(text.substr(0, sep1));
    const double stop = std::stod(text.substr(sep1 + 1, sep2 - sep1 - 1));
    const double step = std::stod(text.substr(sep2 + 1));
    if (!(step > 0.0)) throw std::invalid_argument("range step must be positive: " + text);
    for (double v = start; v <= stop + 1e-12 * step; v += step) out.push_back(v);
    if (out.empty()) throw std::invalid_argument("empty range: " + text);
    return out;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

LevyModel parse_model(const std::string& text) {
    const auto v = parse_list(text);
    if (v.size() != 4)
        throw std::invalid_argument("--model needs sigma2,r,lambda,mu; got: " + text);
    return LevyModel{v[0], v[1], v[2], v[3]};
}

InspectionLaw parse_inspection(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("--inspection needs FAMILY:PARAMS; got: " + text);
    const std::string family = text.substr(0, colon);
    const auto v = parse_list(text.substr(colon + 1));
    InspectionLaw law;
    if (family == "exponential" || family == "exp") {
        if (v.size() != 1) throw std::invalid_argument("exponential takes one rate");
        law = Exponential{v[0]};
    } else if (family == "hyperexp") {
        if (v.size() < 4 || v.size() % 2 != 0)
            throw std::invalid_argument("hyperexp takes p_1..p_d,w_1..w_d");
        const std::size_t d = v.size() / 2;
        law = Hyperexponential{{v.begin(), v.begin() + d}, {v.begin() + d, v.end()}};
    } else if (family == "erlang") {
        if (v.size() != 2) throw std::invalid_argument("erlang takes k,omega");
        law = Erlang{static_cast<int>(v[0]), v[1]};
    } else if (family == "hypererlang") {
        if (v.size() < 5 || v.size() % 2 == 0)
            throw std::invalid_argument("hypererlang takes k_1..k_d,p_1..p_d,omega");
        const std::size_t d = v.size() / 2;
        std::vector<int> k;
        for (std::size_t i = 0; i < d; ++i) k.push_back(static_cast<int>(v[i]));
        law = HyperErlang{k, {v.begin() + d, v.begin() + 2 * d}, v.back()};
    } else if (family == "lognormal") {
        if (v.size() != 2) throw std::invalid_argument("lognormal takes mean,variance");
        law = Lognormal{v[0], v[1]};
    } else {
        throw std::invalid_argument("unknown inspection family: " + family);
    }
    validate(law);
    return law;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    std::uint64_t x = seed ^ (a * 0x9e3779b97f4a7c15ULL) ^ (b * 0xbf58476d1ce4e5b9ULL) ^
                      (c * 0x94d049bb133111ebULL);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    return x;
}

struct CsvWriter {
    std::ofstream out;
    CsvWriter(const std::filesystem::path& path, const json& spec,
              const std::vector<std::string>& columns) {
        out.open(path, std::ios::binary);  // binary keeps \n byte-exact
        if (!out) throw std::runtime_error("cannot open output file " + path.string());
        out << "# inspectruin " << spec.dump() << "\n";
        for (std::size_t i = 0; i < columns.size(); ++i)
            out << (i ? "," : "") << columns[i];
        out << "\n";
    }
    void row(const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << fmt(values[i]);
        out << "\n";
    }
    void row_mixed(const std::vector<std::string>& values) {
        for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << values[i];
        out << "\n";
    }
};

// Resolved options shared by the subcommands; flags override config values.
struct Options {
    std::string model_text = "0.02,1.2,2,2";
    std::string inspection_text;
    std::string alpha_text = "0.4";
    std::string beta_text = "0.25";
    std::string omega_text;  // optional rate sweep
    std::string u_text = "10:40:10";
    std::string variance_text = "0.25:3.0:0.25";
    std::string mean_text = "1.0";
    std::string mode = "is";
    std::string out_dir = ".";
    std::int64_t runs = 10000;
    std::uint64_t seed = 1;
    int figure = 3;
    bool paper_scale = false;
};

// Replaces a single-rate family's rate for sweeps over omega.
InspectionLaw with_omega(const InspectionLaw& law, double w) {
    if (const auto* e = std::get_if<Exponential>(&law)) {
        (void)e;
        return Exponential{w};
    }
    if (const auto* er = std::get_if<Erlang>(&law)) return Erlang{er->k, w};
    if (const auto* hel = std::get_if<HyperErlang>(&law)) return HyperErlang{hel->k, hel->p, w};
    throw std::invalid_argument("--omega sweeps need a single-rate inspection family");
}

void apply_config(Options& opt, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file " + path);
    json cfg = json::parse(in);
    const auto set_str = [&](const char* key, std::string& target) {
        if (cfg.contains(key)) target = cfg[key].get<std::string>();
    };
    set_str("model", opt.model_text);
    set_str("inspection", opt.inspection_text);
    set_str("alpha", opt.alpha_text);
    set_str("beta", opt.beta_text);
    set_str("u", opt.u_text);
    set_str("variance", opt.variance_text);
    set_str("mean", opt.mean_text);
    set_str("mode", opt.mode);
    set_str("out", opt.out_dir);
    if (cfg.contains("runs")) opt.runs = cfg["runs"].get<std::int64_t>();
    if (cfg.contains("seed")) opt.seed = cfg["seed"].get<std::uint64_t>();
    if (cfg.contains("figure")) opt.figure = cfg["figure"].get<int>();
    if (cfg.contains("paper_scale")) opt.paper_scale = cfg["paper_scale"].get<bool>();
}

json resolved_spec(const std::string& command, const Options& opt) {
    json spec;
    spec["command"] = command;
    spec["model"] = opt.model_text;
    if (!opt.inspection_text.empty()) spec["inspection"] = opt.inspection_text;
    spec["alpha"] = opt.alpha_text;
    spec["beta"] = opt.beta_text;
    if (!opt.omega_text.empty()) spec["omega"] = opt.omega_text;
    spec["u"] = opt.u_text;
    spec["variance"] = opt.variance_text;
    spec["mean"] = opt.mean_text;
    spec["mode"] = opt.mode;
    spec["runs"] = opt.runs;
    spec["seed"] = opt.seed;
    spec["figure"] = opt.figure;
    spec["paper_scale"] = opt.paper_scale;
    return spec;
}

int cmd_transform(const Options& opt) {
    const LevyModel model = parse_model(opt.model_text);
    model.validate();
    const InspectionLaw law = parse_inspection(opt.inspection_text);
    const auto alphas = parse_range(opt.alpha_text);
    const auto betas = parse_range(opt.beta_text);
    const auto spec = resolved_spec("transform", opt);
    CsvWriter csv(std::filesystem::path(opt.out_dir) / ("transform_" + family_name(law) + ".csv"),
                  spec, {"omega_scale", "alpha", "beta", "pi", "rho", "condition"});
    const std::vector<double> omegas =
        opt.omega_text.empty() ? std::vector<double>{0.0} : parse_range(opt.omega_text);
    for (double w : omegas)
        for (double a : alphas)
            for (double b : betas) {
                const auto ev =
                    pi_transform(model, a, b, opt.omega_text.empty() ? law : with_omega(law, w));
                csv.row({w, a, b, ev.value, ev.rho, ev.condition});
            }
    return 0;
}

int cmd_gamma(const Options& opt) {
    const LevyModel model = parse_model(opt.model_text);
    model.validate();
    const InspectionLaw law = parse_inspection(opt.inspection_text);
    const auto spec = resolved_spec("gamma", opt);
    CsvWriter csv(std::filesystem::path(opt.out_dir) / ("gamma_" + family_name(law) + ".csv"),
                  spec, {"omega_scale", "theta_star", "gamma", "condition"});
    const std::vector<double> omegas =
        opt.omega_text.empty() ? std::vector<double>{0.0} : parse_range(opt.omega_text);
    for (double w : omegas) {
        const auto res =
            gamma_asymptotics(model, opt.omega_text.empty() ? law : with_omega(law, w));
        csv.row({w, res.theta_star, res.gamma, res.condition});
    }
    return 0;
}

int cmd_simulate(const Options& opt) {
    const LevyModel model = parse_model(opt.model_text);
    model.validate();
    const InspectionLaw law = parse_inspection(opt.inspection_text);
    const auto spec = resolved_spec("simulate", opt);
    const auto out_path =
        std::filesystem::path(opt.out_dir) / ("simulate_" + family_name(law) + ".csv");
    if (opt.mode == "is") {
        CsvWriter csv(out_path, spec,
                      {"u", "p_hat", "std_err", "gamma_u", "gamma_u_se", "max_weight", "runs"});
        for (double u : parse_range(opt.u_text)) {
            SimConfig cfg{model, law, u, opt.runs, opt.seed};
            const auto est = is_bankruptcy(cfg);
            csv.row({u, est.p_hat, est.std_err, est.gamma_u, est.gamma_u_se, est.max_weight,
                     static_cast<double>(est.runs)});
        }
    } else if (opt.mode == "crude") {
        const double alpha = parse_range(opt.alpha_text).front();
        const double beta = parse_range(opt.beta_text).front();
        CsvWriter csv(out_path, spec,
                      {"alpha", "beta", "alpha_pi_hat", "std_err", "capped_paths", "runs"});
        SimConfig cfg{model, law, 0.0, opt.runs, opt.seed};
        const auto est = crude_killed(cfg, alpha, beta);
        csv.row({alpha, beta, est.p_hat, est.std_err, static_cast<double>(est.capped_paths),
                 static_cast<double>(est.runs)});
    } else {
        throw std::invalid_argument("--mode must be is or crude");
    }
    return 0;
}

int cmd_fit(const Options& opt) {
    const double mean_v = parse_range(opt.mean_text).front();
    const auto variances = parse_range(opt.variance_text);
    const auto spec = resolved_spec("fit", opt);
    CsvWriter csv(std::filesystem::path(opt.out_dir) / "fit.csv", spec,
                  {"mean", "variance", "branch", "parameters"});
    for (double v : variances) {
        const auto fit = fit_two_moment(mean_v, v);
        csv.row_mixed({fmt(mean_v), fmt(v), family_name(fit.result),
                       "\"" + describe(fit.result) + "\""});
    }
    return 0;
}

void write_plot_script(const std::filesystem::path& dir, int figure,
                       const std::vector<std::string>& files) {
    std::ofstream gp(dir / ("figure" + std::to_string(figure) + ".gp"), std::ios::binary);
    gp << "set datafile separator ','\n"
       << "set key top right\n"
       << "set xlabel 'variance of the inter-inspection time'\n"
       << "set ylabel 'scaled bankruptcy probability'\n"
       << "plot \\\n";
    for (std::size_t i = 0; i < files.size(); ++i) {
        gp << "  '" << files[i] << "' using 1:2 with linespoints title '" << files[i] << "'";
        gp << (i + 1 < files.size() ? ", \\\n" : "\n");
    }
}

int cmd_figure(const Options& opt_in) {
    Options opt = opt_in;
    if (opt.paper_scale) {
        opt.variance_text = "0.02:3.0:0.02";
        if (opt.runs == 10000) opt.runs = 100000;
    }
    if (opt.figure < 1 || opt.figure > 3)
        throw std::invalid_argument("--figure must be 1, 2 or 3");
    const LevyModel model = parse_model(opt.model_text);
    model.validate();
    const auto variances = parse_range(opt.variance_text);
    const auto us = parse_range(opt.u_text);
    const auto spec = resolved_spec("figure", opt);
    const std::filesystem::path dir(opt.out_dir);
    std::vector<std::string> files;
    json manifest;

    try {
        if (opt.figure == 3) {
            const std::string name = "figure3_fitted_uinf.csv";
            CsvWriter csv(dir / name, spec, {"variance", "gamma", "theta_star", "branch"});
            files.push_back(name);
            for (std::size_t vi = 0; vi < variances.size(); ++vi) {
                const auto fit = fit_two_moment(1.0, variances[vi]);
                const auto res = gamma_asymptotics(model, fit.result);
                csv.row_mixed({fmt(variances[vi]), fmt(res.gamma), fmt(res.theta_star),
                               family_name(fit.result)});
                manifest["completed"].push_back(variances[vi]);
            }
        } else {
            for (std::size_t ui = 0; ui < us.size(); ++ui) {
                std::ostringstream name;
                name << "figure" << opt.figure << "_"
                     << (opt.figure == 1 ? "lognormal" : "fitted") << "_u" << us[ui] << ".csv";
                CsvWriter csv(dir / name.str(), spec,
                              {"variance", "gamma_u", "gamma_u_se", "p_hat", "std_err", "runs"});
                files.push_back(name.str());
                for (std::size_t vi = 0; vi < variances.size(); ++vi) {
                    InspectionLaw law = Lognormal{1.0, variances[vi]};
                    if (opt.figure == 2) law = fit_two_moment(1.0, variances[vi]).result;
                    SimConfig cfg{model, law, us[ui], opt.runs,
                                  mix_seed(opt.seed, opt.figure, ui, vi)};
                    const auto est = is_bankruptcy(cfg);
                    csv.row({variances[vi], est.gamma_u, est.gamma_u_se, est.p_hat, est.std_err,
                             static_cast<double>(est.runs)});
                    manifest["completed"].push_back({us[ui], variances[vi]});
                }
            }
        }
    } catch (const std::exception& e) {
        manifest["error"] = e.what();
        std::ofstream mf(dir / ("figure" + std::to_string(opt.figure) + "_failure.json"));
        mf << manifest.dump(2) << "\n";
        throw;
    }
    write_plot_script(dir, opt.figure, files);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bankruptcy probabilities under renewal inspection"};
    app.require_subcommand(1);

    Options opt;
    std::string config_path;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file; flags override its values");
        sub->add_option("--model", opt.model_text, "sigma2,r,lambda,mu");
        sub->add_option("--out", opt.out_dir, "output directory");
        sub->add_option("--seed", opt.seed, "random seed");
        sub->add_option("--runs", opt.runs, "simulation runs per point");
    };

    auto* transform = app.add_subcommand("transform", "evaluate the surplus transform on a grid");
    add_common(transform);
    transform->add_option("--inspection", opt.inspection_text, "family:params")->required();
    transform->add_option("--alpha", opt.alpha_text, "value or start:stop:step");
    transform->add_option("--beta", opt.beta_text, "value or start:stop:step");
    transform->add_option("--omega", opt.omega_text, "optional rate sweep for single-rate families");

    auto* gamma = app.add_subcommand("gamma", "decay rate and prefactor");
    add_common(gamma);
    gamma->add_option("--inspection", opt.inspection_text, "family:params")->required();
    gamma->add_option("--omega", opt.omega_text, "optional rate sweep for single-rate families");

    auto* simulate = app.add_subcommand("simulate", "importance-sampling or crude estimation");
    add_common(simulate);
    simulate->add_option("--inspection", opt.inspection_text, "family:params")->required();
    simulate->add_option("--u", opt.u_text, "initial surplus value or range");
    simulate->add_option("--mode", opt.mode, "is | crude");
    simulate->add_option("--alpha", opt.alpha_text, "crude mode: surplus transform argument");
    simulate->add_option("--beta", opt.beta_text, "crude mode: horizon rate");

    auto* fit = app.add_subcommand("fit", "two-moment phase-type fit");
    add_common(fit);
    fit->add_option("--mean", opt.mean_text, "target mean");
    fit->add_option("--variance", opt.variance_text, "target variance value or range");

    auto* figure = app.add_subcommand("figure", "variance-sweep comparison curves");
    add_common(figure);
    figure->add_option("--figure", opt.figure, "1: lognormal IS, 2: fitted IS, 3: numeric limit");
    figure->add_option("--u", opt.u_text, "initial surplus values");
    figure->add_option("--variance", opt.variance_text, "variance grid");
    figure->add_flag("--paper-scale", opt.paper_scale, "full-resolution grid and run counts");

    // Parse once to pick up --config, apply it, then reparse so explicit
    // flags win over config values.
    try {
        app.parse(argc, argv);
        if (!config_path.empty()) {
            apply_config(opt, config_path);
            app.clear();
            app.parse(argc, argv);
        }
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << json{{"type", "spec"}, {"error", e.what()}}.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << json{{"type", "spec"}, {"error", e.what()}}.dump() << "\n";
        return 2;
    }

    try {
        if (transform->parsed()) return cmd_transform(opt);
        if (gamma->parsed()) return cmd_gamma(opt);
        if (simulate->parsed()) return cmd_simulate(opt);
        if (fit->parsed()) return cmd_fit(opt);
        if (figure->parsed()) return cmd_figure(opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << json{{"type", "spec"}, {"error", e.what()}}.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << json{{"type", "numerical"}, {"error", e.what()}}.dump() << "\n";
        return 3;
    }
    return 0;
}
