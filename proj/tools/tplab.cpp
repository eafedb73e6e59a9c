// tplab: covariance curves, path sampling, estimation and validation suites.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tplab/tplab.hpp"

namespace fs = std::filesystem;
using tplab::io::json;

namespace {

enum Exit { kOk = 0, kValidationFailed = 1, kUsage = 2, kNumerical = 3 };

struct Settings {
    std::string config;
    std::string process = "tfbm";
    double alpha = 1.25;
    double beta = 1.0;
    double lambda = 1.0;
    std::string mixture;
    std::string profile;
    double t0 = 0.0;
    double dt = 0.01;
    std::size_t n = 256;
    std::size_t paths = 1;
    std::uint64_t seed = 42;
    std::string suite = "all";
    std::string out;
    bool figure1 = false;
    std::optional<double> s;
    std::string method = "cholesky";
    std::string input;
    std::string estimator = "hurst";
    std::vector<std::size_t> lag;
    double t = 1.0;
    std::vector<double> tau;
    std::vector<std::string> tol;
};

// Keys that are not echoed: they locate files rather than define the run.
bool echo_excluded(const std::string& key) { return key == "config" || key == "out" || key == "help"; }

std::string strip_dashes(const std::string& name) {
    auto p = name.find_first_not_of('-');
    return p == std::string::npos ? name : name.substr(p);
}

/// Finds --config FILE or --config=FILE before the full parse.
std::string prescan_config(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--config" && i + 1 < argc) {
            return argv[i + 1];
        }
        if (a.rfind("--config=", 0) == 0) {
            return a.substr(9);
        }
    }
    return "";
}

/// key=value file, or a JSON report whose "config" echo is replayed.
std::map<std::string, std::string> load_config(const std::string& path) {
    if (path.size() > 5 && path.substr(path.size() - 5) == ".json") {
        std::ifstream in(path);
        if (!in) {
            throw tplab::DomainError("cannot open config file " + path);
        }
        json j = json::parse(in);
        if (!j.contains("config") || !j["config"].is_object()) {
            throw tplab::DomainError(path + ": report has no config echo");
        }
        std::map<std::string, std::string> kv;
        for (const auto& [k, v] : j["config"].items()) {
            kv[k] = v.is_string() ? v.get<std::string>() : v.dump();
        }
        return kv;
    }
    return tplab::io::read_config_file(path);
}

tplab::ProcessDescriptor build_process(const Settings& st) {
    using namespace tplab;
    Family f = parse_family(st.process);
    switch (f) {
        case Family::fou: return ProcessDescriptor::fou({st.alpha, st.lambda});
        case Family::tfbm: return ProcessDescriptor::tfbm({st.alpha, st.lambda});
        case Family::tfgn: return ProcessDescriptor::tfgn({st.alpha, st.lambda});
        case Family::tfbm2: return ProcessDescriptor::tfbm2({st.alpha, st.beta, st.lambda});
        case Family::mixed:
            if (st.mixture.empty()) {
                throw DomainError("--process mixed requires --mixture weight:alpha:lambda;...");
            }
            return ProcessDescriptor::mixed(io::parse_mixture(st.mixture));
        case Family::tmbm:
            if (st.profile.empty()) {
                throw DomainError("--process tmbm requires --profile");
            }
            return ProcessDescriptor::tmbm(HurstProfile::parse(st.profile), st.lambda);
    }
    throw DomainError("unknown process");
}

std::map<std::string, double> parse_tolerances(const std::vector<std::string>& items) {
    std::map<std::string, double> out;
    for (const auto& item : items) {
        auto eq = item.rfind('=');
        if (eq == std::string::npos || eq == 0) {
            throw tplab::DomainError("--tol expects CHECK_ID_PREFIX=VALUE, got '" + item + "'");
        }
        try {
            out[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw tplab::DomainError("--tol value in '" + item + "' is not a number");
        }
    }
    return out;
}

/// Opens DIR/name, or stdout when no directory was given.
class Output {
public:
    Output(const std::string& dir, const std::string& name) {
        if (dir.empty()) {
            return;
        }
        fs::create_directories(dir);
        path_ = (fs::path(dir) / name).string();
        file_.open(path_, std::ios::binary);
        if (!file_) {
            throw tplab::DomainError("cannot write " + path_);
        }
    }
    std::ostream& stream() { return path_.empty() ? std::cout : file_; }
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::ofstream file_;
};

int cmd_cov(const Settings& st) {
    if (st.figure1) {
        Output o(st.out, "figure1.csv");
        tplab::validate::write_figure1_csv(o.stream(), tplab::validate::figure1_curves());
        if (!o.path().empty()) {
            std::cout << "wrote " << o.path() << "\n";
        }
        return kOk;
    }
    auto d = build_process(st);
    tplab::TimeGrid g{st.t0, st.dt, st.n};
    g.validate();
    Output o(st.out, "cov.csv");
    tplab::io::CsvWriter w(o.stream());
    w.header({"t", "value"});
    for (std::size_t i = 0; i < g.n; ++i) {
        const double t = g.at(i);
        double v;
        if (st.s) {
            v = d.covariance(t, *st.s);
        } else if (d.stationary()) {
            v = d.stationary_kernel(t);
        } else {
            v = d.variance(t);
        }
        w.row(std::vector<double>{t, v});
    }
    if (!o.path().empty()) {
        std::cout << "wrote " << o.path() << "\n";
    }
    return kOk;
}

int cmd_sample(const Settings& st) {
    auto d = build_process(st);
    tplab::TimeGrid g{st.t0, st.dt, st.n};
    std::vector<tplab::GaussianPath> paths;
    if (st.method == "spectral") {
        if (d.family != tplab::Family::tfbm) {
            throw tplab::DomainError("--method spectral is available for --process tfbm only");
        }
        paths = tplab::sample_tfbm_spectral_paths(d.single, g, st.seed, st.paths);
    } else {
        paths = tplab::sample_exact(d, g, st.seed, st.paths);
    }
    Output o(st.out, "paths.jsonl");
    tplab::io::write_paths(o.stream(), paths);
    for (const auto& w : paths.front().warnings) {
        std::cerr << "warning: " << w << "\n";
    }
    if (!o.path().empty()) {
        std::cout << "wrote " << paths.size() << " paths to " << o.path() << "\n";
    }
    return kOk;
}

int cmd_estimate(const Settings& st) {
    using namespace tplab;
    if (st.input.empty()) {
        throw DomainError("estimate requires --input PATHS.jsonl");
    }
    std::ifstream in(st.input);
    if (!in) {
        throw DomainError("cannot open " + st.input);
    }
    auto paths = io::read_paths(in);
    if (paths.empty()) {
        throw InsufficientData(st.input + ": no path records");
    }
    VariogramOptions vopt;
    vopt.min_paths = 1;
    auto lags = st.lag.empty() ? default_lags() : st.lag;
    Output o(st.out, st.estimator + ".csv");
    io::CsvWriter w(o.stream());
    if (st.estimator == "variogram") {
        auto v = variogram(paths, lags, vopt);
        w.header({"lag", "gamma_hat", "slope", "slope_std_error"});
        for (std::size_t i = 0; i < v.lags.size(); ++i) {
            w.row(std::vector<double>{v.lags[i], v.gamma_hat[i], v.slope, v.slope_stderr});
        }
    } else if (st.estimator == "hurst" || st.estimator == "fd") {
        auto h = hurst_local(paths, lags, vopt);
        if (h.regime_warning) {
            std::cerr << "warning: " << h.warning << "\n";
        }
        w.header({"quantity", "value", "std_error"});
        if (st.estimator == "hurst") {
            w.row({"h_hat", io::format_number(h.h_hat), io::format_number(h.std_error)});
        } else {
            w.row({"d_hat", io::format_number(2 - h.h_hat), io::format_number(h.std_error)});
        }
    } else if (st.estimator == "plateau") {
        if (st.tau.empty()) {
            throw DomainError("plateau estimator requires --tau");
        }
        auto est = lrd_plateau_empirical(paths, st.t, st.tau, 1);
        w.header({"tau", "r_hat", "std_error"});
        for (const auto& e : est) {
            w.row(std::vector<double>{e.tau, e.r_hat, e.std_error});
        }
    } else if (st.estimator == "windowed") {
        auto est = hurst_windowed(paths, paths.front().process.lambda(), 6, vopt);
        w.header({"t_center", "h_hat", "std_error"});
        std::vector<double> ts, hs;
        for (const auto& e : est) {
            w.row(std::vector<double>{e.t_center, e.h_hat, e.std_error});
            ts.push_back(e.t_center);
            hs.push_back(e.h_hat);
        }
        if (ts.size() >= 2) {
            std::cerr << "trend_slope=" << io::format_number(fit_line(ts, hs).slope) << "\n";
        }
    } else {
        throw DomainError("unknown estimator '" + st.estimator + "' (variogram, hurst, fd, plateau, windowed)");
    }
    if (!o.path().empty()) {
        std::cout << "wrote " << o.path() << "\n";
    }
    return kOk;
}

int cmd_validate(const Settings& st, const json& echo) {
    auto start = std::chrono::steady_clock::now();
    auto report = tplab::validate::run_suite(st.suite, st.seed);
    if (!st.tol.empty()) {
        report.override_tolerances(parse_tolerances(st.tol));
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json j = report.to_json(echo);
    if (st.out.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        fs::create_directories(st.out);
        std::ofstream(fs::path(st.out) / ("report_" + st.suite + ".json"), std::ios::binary) << j.dump(2) << "\n";
        json timing;
        timing["suite"] = st.suite;
        timing["wall_clock_seconds"] = seconds;
        timing["threads"] = tplab::worker_count();
        std::ofstream(fs::path(st.out) / ("report_" + st.suite + ".timing.json"), std::ios::binary)
            << timing.dump(2) << "\n";
    }
    std::cerr << st.suite << ": " << (report.passed() ? "PASS" : "FAIL") << " (" << report.checks().size()
              << " checks, " << report.failures() << " failed, " << seconds << " s)\n";
    for (const auto& c : report.checks()) {
        if (!c.passed) {
            std::cerr << "  failed " << c.id << ": expected " << c.expected << ", actual " << c.actual
                      << ", tolerance " << c.tolerance << (c.note.empty() ? "" : " (" + c.note + ")") << "\n";
        }
    }
    return report.passed() ? kOk : kValidationFailed;
}

}  // namespace

int main(int argc, char** argv) {
    Settings st;
    CLI::App app{"tplab: tempered fractional processes"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    app.add_option("--config", st.config, "key=value file (or a JSON report to replay)");
    app.add_option("--process", st.process, "fou|tfbm|mixed|tfbm2|tmbm|tfgn")
        ->check(CLI::IsMember({"fou", "tfbm", "mixed", "tfbm2", "tmbm", "tfgn"}));
    app.add_option("--alpha", st.alpha, "index alpha");
    app.add_option("--beta", st.beta, "second index beta (tfbm2)");
    app.add_option("--lambda", st.lambda, "tempering parameter");
    app.add_option("--mixture", st.mixture, "weight:alpha:lambda;... (mixed)");
    app.add_option("--profile", st.profile, "alpha(t): constant:A, ramp:A0,A1,T0,T1, saturating:A0,AMP or a CSV file");
    app.add_option("--t0", st.t0, "first grid time");
    app.add_option("--dt", st.dt, "grid step");
    app.add_option("--n", st.n, "grid points");
    app.add_option("--paths", st.paths, "number of paths");
    app.add_option("--seed", st.seed, "master seed");
    app.add_option("--out", st.out, "output directory (stdout if omitted)");
    app.add_option("--tol", st.tol, "CHECK_ID_PREFIX=VALUE tolerance override")->delimiter(';');

    auto* cov = app.add_subcommand("cov", "covariance curve as CSV")->fallthrough();
    app.add_flag("--figure1", st.figure1, "FOU and TFBM curves at s=0.5, lambda=0.5, H=0.75");
    app.add_option("--s", st.s, "second time argument (default: variance, or C(t) if stationary)");

    auto* sample = app.add_subcommand("sample", "Gaussian paths as JSON lines")->fallthrough();
    app.add_option("--method", st.method, "cholesky|spectral")->check(CLI::IsMember({"cholesky", "spectral"}));

    auto* estimate = app.add_subcommand("estimate", "estimators on a path file")->fallthrough();
    app.add_option("--input", st.input, "JSON-lines path file");
    app.add_option("--estimator", st.estimator, "variogram|hurst|fd|plateau|windowed");
    app.add_option("--lag", st.lag, "variogram lags in grid steps")->delimiter(',');
    app.add_option("--t", st.t, "reference time for the plateau estimator");
    app.add_option("--tau", st.tau, "lags (time units) for the plateau estimator")->delimiter(',');

    auto* val = app.add_subcommand("validate", "run a validation suite")->fallthrough();
    app.add_option("--suite", st.suite, "specfun|oracle|identities|scaling|asymptotics|tmbm-equivalence|mc|all");

    // Config values become defaults so explicit flags win.
    try {
        const std::string cfg = prescan_config(argc, argv);
        if (!cfg.empty()) {
            for (const auto& [key, value] : load_config(cfg)) {
                if (key == "command") {
                    continue;
                }
                CLI::Option* opt = nullptr;
                try {
                    opt = app.get_option("--" + key);
                } catch (const CLI::Error&) {
                }
                if (opt == nullptr || echo_excluded(key)) {
                    if (opt == nullptr) {
                        throw tplab::DomainError(cfg + ": unknown key '" + key + "'");
                    }
                    continue;
                }
                if (opt->get_type_size() == 0) {
                    st.figure1 = value == "true" || value == "1";
                } else {
                    opt->default_val(value);
                }
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    // Effective configuration, echoed into reports.
    json echo;
    auto* active = app.get_subcommands().front();
    echo["command"] = active->get_name();
    for (const auto* opt : app.get_options()) {
        const std::string key = strip_dashes(opt->get_name());
        if (key.empty() || echo_excluded(key)) {
            continue;
        }
        if (key == "figure1") {
            echo[key] = st.figure1;
            continue;
        }
        std::string v;
        if (opt->count() == 0) {
            v = opt->get_default_str();
        } else if (opt->get_expected_max() > 1) {
            const std::string sep = key == "tol" ? ";" : ",";
            for (const auto& part : opt->results()) {
                v += (v.empty() ? "" : sep) + part;
            }
        } else {
            v = opt->as<std::string>();
        }
        if (!v.empty() && v != "{}" && v != "[]") {
            echo[key] = v;
        }
    }

    try {
        if (active == cov) {
            return cmd_cov(st);
        }
        if (active == sample) {
            return cmd_sample(st);
        }
        if (active == estimate) {
            return cmd_estimate(st);
        }
        if (active == val) {
            return cmd_validate(st, echo);
        }
    } catch (const tplab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == tplab::ErrorKind::numerical ? kNumerical : kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
