// Copyright 2026 The tomobell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "cli_support.hpp"
#include "tomobell/bell.hpp"
#include "tomobell/error.hpp"
#include "tomobell/portrait.hpp"
#include "tomobell/state_file.hpp"
#include "tomobell/states.hpp"

namespace {

using namespace tomobell;
using cli::fixed12;

enum class LogLevel { kOff, kWarn, kInfo, kDebug };

LogLevel log_level() {
    const char *env = std::getenv("TOMOBELL_LOG");
    if (env == nullptr) return LogLevel::kWarn;
    const std::string v(env);
    if (v == "off" || v == "0") return LogLevel::kOff;
    if (v == "info" || v == "2") return LogLevel::kInfo;
    if (v == "debug" || v == "3") return LogLevel::kDebug;
    return LogLevel::kWarn;
}

void log(LogLevel level, const std::string &msg) {
    static const LogLevel current = log_level();
    if (level > current) return;
    const char *tag = level == LogLevel::kWarn ? "warning" : level == LogLevel::kInfo ? "info" : "debug";
    std::fprintf(stderr, "%s: %s\n", tag, msg.c_str());
}

struct Options {
    std::string state;
    std::string partition = "even-odd";
    std::string alpha1 = "0", alpha2 = "0", beta1 = "0", beta2 = "0";
    int n1 = 0, n2 = 0;
    int n_max = kDefaultNMax;
    double tail_eps = kDefaultTailEps;
    double box = 2.0;
    std::string box_enforce = "off";
    int starts = 64;
    std::uint64_t seed = 42;
    int max_iters = 2000;
    int jobs = 1;
    std::string portrait_mode = "auto";
    std::string format = "plain";
    std::string out;
    std::string preset;
    std::string grid1, grid2;
    bool diagonal = false;
};

std::string complex_str(Complex z) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.12f%+.12fi", z.real() == 0.0 ? 0.0 : z.real(),
                  z.imag() == 0.0 ? 0.0 : z.imag());
    return buf;
}

std::unique_ptr<TomogramSource> load(const Options &o) {
    if (o.state.empty()) throw Error(ErrorCode::ParseError, "--state is required");
    auto src = load_state_file(o.state);
    if (const auto *g = dynamic_cast<const GaussianSource *>(src.get())) {
        const auto nu = symplectic_eigenvalues(g->spec().dispersion());
        if (nu[1] < 0.5 - 1e-9) {
            log(LogLevel::kWarn, "dispersion matrix violates the uncertainty relation (smallest "
                                 "symplectic eigenvalue " + std::to_string(nu[1]) +
                                     " < 1/2); tomogram values may be negative");
        }
    }
    log(LogLevel::kDebug, "state " + src->describe());
    return src;
}

PortraitMode portrait_mode(const Options &o) {
    if (o.portrait_mode == "auto") return PortraitMode::kAuto;
    if (o.portrait_mode == "truncated") return PortraitMode::kTruncated;
    throw Error(ErrorCode::ParseError, "unknown portrait mode '" + o.portrait_mode + "'");
}

void check_format(const Options &o) {
    if (o.format != "plain" && o.format != "csv") {
        throw Error(ErrorCode::ParseError, "unknown format '" + o.format + "'");
    }
}

void check_positive(double v, const char *what) {
    if (!(v > 0.0)) throw Error(ErrorCode::InvalidParameter, std::string(what) + " must be positive");
}

MaximizeConfig maximize_config(const Options &o) {
    check_positive(o.box, "--box");
    if (o.starts < 1) throw Error(ErrorCode::InvalidParameter, "--starts must be >= 1");
    if (o.jobs < 1) throw Error(ErrorCode::InvalidParameter, "--jobs must be >= 1");
    if (o.n_max < 1) throw Error(ErrorCode::InvalidParameter, "--nmax must be >= 1");
    check_positive(o.tail_eps, "--tail-eps");
    MaximizeConfig cfg;
    cfg.box = o.box;
    cfg.starts = o.starts;
    cfg.seed = o.seed;
    cfg.max_iters = o.max_iters;
    cfg.n_max = o.n_max;
    cfg.eps_tail = o.tail_eps;
    cfg.portrait_mode = portrait_mode(o);
    cfg.jobs = o.jobs;
    return cfg;
}

PortraitFn portrait_fn(const TomogramSource &src, const Options &o) {
    if (o.n_max < 1) throw Error(ErrorCode::InvalidParameter, "--nmax must be >= 1");
    check_positive(o.tail_eps, "--tail-eps");
    return make_portrait_fn(src, PartitionScheme::parse(o.partition),
                            {portrait_mode(o), o.n_max, o.tail_eps});
}

class Output {
   public:
    explicit Output(const std::string &path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw Error(ErrorCode::ParseError, "cannot open output file '" + path + "'");
        }
    }
    std::ostream &stream() { return file_.is_open() ? static_cast<std::ostream &>(file_) : std::cout; }

   private:
    std::ofstream file_;
};

int cmd_tomogram(const Options &o) {
    auto src = load(o);
    if (o.n1 < 0 || o.n2 < 0) throw Error(ErrorCode::InvalidParameter, "photon counts must be >= 0");
    const DisplacementPair alpha{cli::parse_complex(o.alpha1), cli::parse_complex(o.alpha2)};
    const double w = src->probability({o.n1, o.n2}, alpha);
    Output out(o.out);
    out.stream() << fixed12(w) << '\n';
    return cli::kExitOk;
}

int cmd_portrait(const Options &o) {
    check_format(o);
    auto src = load(o);
    const DisplacementPair alpha{cli::parse_complex(o.alpha1), cli::parse_complex(o.alpha2)};
    const PortraitVector v = portrait_fn(*src, o)(alpha);
    Output out(o.out);
    auto &s = out.stream();
    if (o.format == "csv") {
        s << "w_pp,w_pm,w_mp,w_mm,tail_deficit\n";
        s << fixed12(v.w[0]) << ',' << fixed12(v.w[1]) << ',' << fixed12(v.w[2]) << ','
          << fixed12(v.w[3]) << ',' << fixed12(v.tail_deficit) << '\n';
    } else {
        const char *names[4] = {"w_pp", "w_pm", "w_mp", "w_mm"};
        for (int i = 0; i < 4; ++i) s << names[i] << ' ' << fixed12(v.w[i]) << '\n';
        s << "tail_deficit " << fixed12(v.tail_deficit) << '\n';
    }
    return cli::kExitOk;
}

void enforce_box(const BellSettings &st, double box) {
    for (double x : st.to_reals()) {
        if (std::abs(x) > box) {
            throw Error(ErrorCode::InvalidParameter,
                        "setting component " + std::to_string(x) + " lies outside the box " +
                            std::to_string(box));
        }
    }
}

int cmd_bell(const Options &o) {
    check_format(o);
    if (o.box_enforce != "off" && o.box_enforce != "strict") {
        throw Error(ErrorCode::ParseError, "--box-enforce must be off or strict");
    }
    auto src = load(o);
    const BellSettings st{cli::parse_complex(o.alpha1), cli::parse_complex(o.alpha2),
                          cli::parse_complex(o.beta1), cli::parse_complex(o.beta2)};
    if (o.box_enforce == "strict") {
        check_positive(o.box, "--box");
        enforce_box(st, o.box);
    }
    const BellMatrix m = bell_matrix(portrait_fn(*src, o), st);
    const double b = bell_number(m);
    const ChshCheck c = chsh_check(b);
    Output out(o.out);
    auto &s = out.stream();
    const char sep = o.format == "csv" ? ',' : ' ';
    if (o.format == "csv") s << "col1,col2,col3,col4\n";
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) s << (j ? std::string(1, sep) : std::string()) << fixed12(m.m[i][j]);
        s << '\n';
    }
    if (o.format == "csv") {
        s << "B," << fixed12(b) << '\n' << "verdict," << verdict_name(c.verdict) << '\n';
    } else {
        s << "B " << fixed12(b) << '\n';
        s << verdict_name(c.verdict) << " margin " << fixed12(c.margin) << '\n';
    }
    return cli::kExitOk;
}

void log_starts(const MaximizeResult &r) {
    int failed = 0;
    for (std::size_t i = 0; i < r.per_start_error.size(); ++i) {
        if (!r.per_start_error[i].empty()) {
            ++failed;
            log(LogLevel::kDebug, "start " + std::to_string(i) + " failed: " + r.per_start_error[i]);
        } else {
            log(LogLevel::kDebug, "start " + std::to_string(i) + " best " + fixed12(r.per_start_best[i]));
        }
    }
    if (failed > 0) {
        log(LogLevel::kInfo, std::to_string(failed) + " of " + std::to_string(r.per_start_error.size()) +
                                 " starts failed");
    }
}

int count_failed(const MaximizeResult &r) {
    return static_cast<int>(std::count_if(r.per_start_error.begin(), r.per_start_error.end(),
                                          [](const std::string &e) { return !e.empty(); }));
}

std::string settings_csv(const BellSettings &s) {
    std::string row;
    for (double x : s.to_reals()) row += ',' + fixed12(x);
    return row;
}

const char *kSettingsHeader =
    "alpha1_re,alpha1_im,alpha2_re,alpha2_im,beta1_re,beta1_im,beta2_re,beta2_im";

int cmd_maximize(const Options &o) {
    check_format(o);
    auto src = load(o);
    const MaximizeConfig cfg = maximize_config(o);
    const MaximizeResult r = maximize_bell(*src, PartitionScheme::parse(o.partition), cfg);
    log_starts(r);
    Output out(o.out);
    auto &s = out.stream();
    if (o.format == "csv") {
        s << "f," << kSettingsHeader << ",evaluations,failed_starts\n";
        s << fixed12(r.f) << settings_csv(r.argmax) << ',' << r.evaluations << ',' << count_failed(r)
          << '\n';
    } else {
        const ChshCheck c = chsh_check(r.f);
        s << "f " << fixed12(r.f) << '\n';
        s << verdict_name(c.verdict) << " margin " << fixed12(c.margin) << '\n';
        s << "alpha1 " << complex_str(r.argmax.alpha1) << '\n';
        s << "alpha2 " << complex_str(r.argmax.alpha2) << '\n';
        s << "beta1 " << complex_str(r.argmax.beta1) << '\n';
        s << "beta2 " << complex_str(r.argmax.beta2) << '\n';
        s << "evaluations " << r.evaluations << '\n';
        s << "failed_starts " << count_failed(r) << '/' << r.per_start_error.size() << '\n';
    }
    return cli::kExitOk;
}

struct Preset {
    std::string partition;
    std::string grid1, grid2;
};

Preset preset_for(const std::string &name) {
    if (name == "cat-zero-nonzero") return {"zero-nonzero", "0.5:1.5:0.5", "0.5:1.5:0.5"};
    if (name == "cat-even-odd") return {"even-odd", "0.5:1.5:0.5", "0.5:1.5:0.5"};
    if (name == "gaussian-family") return {"even-odd", "0.6,0.9,1.2", "0,0.01,0.04,0.07"};
    throw Error(ErrorCode::ParseError, "unknown preset '" + name +
                                           "' (cat-zero-nonzero, cat-even-odd, gaussian-family)");
}

std::unique_ptr<TomogramSource> preset_source(const std::string &name, double p1, double p2) {
    if (name == "gaussian-family") return std::make_unique<GaussianSource>(gaussian_purity_family(p1, p2));
    return std::make_unique<CatSource>(CatState{{p1, 0.0}, {p2, 0.0}});
}

int cmd_scan(const Options &o, const CLI::App &sub) {
    const Preset preset = preset_for(o.preset);
    const std::string partition = sub.count("--partition") ? o.partition : preset.partition;
    const PartitionScheme p = PartitionScheme::parse(partition);
    const auto g1 = cli::parse_grid(o.grid1.empty() ? preset.grid1 : o.grid1);
    const auto g2 = o.diagonal ? g1 : cli::parse_grid(o.grid2.empty() ? preset.grid2 : o.grid2);
    MaximizeConfig cfg = maximize_config(o);
    cfg.jobs = 1;

    std::vector<std::pair<double, double>> points;
    if (o.diagonal) {
        for (double v : g1) points.emplace_back(v, v);
    } else {
        for (double a : g1)
            for (double b : g2) points.emplace_back(a, b);
    }
    std::vector<std::string> rows(points.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < points.size(); i = next++) {
            const auto [a, b] = points[i];
            std::string row = fixed12(a) + ',' + fixed12(b) + ',';
            try {
                const auto src = preset_source(o.preset, a, b);
                const MaximizeResult r = maximize_bell(*src, p, cfg);
                row += fixed12(r.f) + settings_csv(r.argmax) + ',' + std::to_string(r.evaluations) + ',';
                if (const int failed = count_failed(r); failed > 0) {
                    row += "partial:" + std::to_string(failed) + "_starts_failed";
                }
            } catch (const Error &e) {
                row += ",,,,,,,,,," + std::string(error_code_name(e.code()));
            }
            rows[i] = std::move(row);
        }
    };
    const int threads = std::min<int>(o.jobs, static_cast<int>(points.size()));
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto &t : pool) t.join();

    Output out(o.out);
    auto &s = out.stream();
    s << "param1,param2,f," << kSettingsHeader << ",evaluations,error\n";
    for (const auto &row : rows) s << row << '\n';
    return cli::kExitOk;
}

void add_state(CLI::App *app, Options &o) {
    app->add_option("--state", o.state, "JSON state description")->required();
}

void add_partition(CLI::App *app, Options &o) {
    app->add_option("--partition", o.partition, "zero-nonzero | even-odd")->capture_default_str();
}

void add_truncation(CLI::App *app, Options &o) {
    app->add_option("--nmax", o.n_max, "photon-number cutoff")->capture_default_str();
    app->add_option("--tail-eps", o.tail_eps, "largest accepted tail deficit")->capture_default_str();
    app->add_option("--portrait-mode", o.portrait_mode, "auto | truncated")->capture_default_str();
}

void add_maximizer(CLI::App *app, Options &o) {
    app->add_option("--box", o.box, "half-width for Re and Im of every setting")->capture_default_str();
    app->add_option("--starts", o.starts, "number of simplex starts")->capture_default_str();
    app->add_option("--seed", o.seed, "start-point seed")->capture_default_str();
    app->add_option("--max-iters", o.max_iters, "simplex iterations per start")->capture_default_str();
    app->add_option("--jobs", o.jobs, "worker threads")->capture_default_str();
}

int run(int argc, char **argv) {
    Options o;
    CLI::App app{"Photon-number tomograms, qubit portraits and Bell-CHSH tests for two-mode states"};
    app.require_subcommand(1);

    auto *tomo = app.add_subcommand("tomogram", "print w(n1, n2; alpha1, alpha2)");
    add_state(tomo, o);
    tomo->add_option("--n1", o.n1)->required();
    tomo->add_option("--n2", o.n2)->required();
    tomo->add_option("--alpha1", o.alpha1);
    tomo->add_option("--alpha2", o.alpha2);
    tomo->add_option("--out", o.out);

    auto *port = app.add_subcommand("portrait", "print the qubit portrait at one setting pair");
    add_state(port, o);
    add_partition(port, o);
    add_truncation(port, o);
    port->add_option("--alpha1", o.alpha1);
    port->add_option("--alpha2", o.alpha2);
    port->add_option("--format", o.format, "plain | csv");
    port->add_option("--out", o.out);

    auto *bell = app.add_subcommand("bell", "print the Bell matrix, B and the CHSH verdict");
    add_state(bell, o);
    add_partition(bell, o);
    add_truncation(bell, o);
    bell->add_option("--alpha1", o.alpha1);
    bell->add_option("--alpha2", o.alpha2);
    bell->add_option("--beta1", o.beta1);
    bell->add_option("--beta2", o.beta2);
    bell->add_option("--box", o.box)->capture_default_str();
    bell->add_option("--box-enforce", o.box_enforce, "off | strict")->capture_default_str();
    bell->add_option("--format", o.format, "plain | csv");
    bell->add_option("--out", o.out);

    auto *maxi = app.add_subcommand("maximize", "multi-start search for the largest Bell number");
    add_state(maxi, o);
    add_partition(maxi, o);
    add_truncation(maxi, o);
    add_maximizer(maxi, o);
    maxi->add_option("--format", o.format, "plain | csv");
    maxi->add_option("--out", o.out);

    auto *scan = app.add_subcommand("scan", "maximize over a parameter grid and write CSV");
    scan->add_option("--preset", o.preset, "cat-zero-nonzero | cat-even-odd | gaussian-family")->required();
    scan->add_option("--grid1", o.grid1, "start:stop:step or v1,v2,...");
    scan->add_option("--grid2", o.grid2, "start:stop:step or v1,v2,...");
    scan->add_flag("--diagonal", o.diagonal, "use param2 = param1");
    add_partition(scan, o);
    add_truncation(scan, o);
    add_maximizer(scan, o);
    scan->add_option("--out", o.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << cli::format_error("ParseError", e.what()) << '\n';
        return cli::kExitConfig;
    }

    try {
        if (*tomo) return cmd_tomogram(o);
        if (*port) return cmd_portrait(o);
        if (*bell) return cmd_bell(o);
        if (*maxi) return cmd_maximize(o);
        return cmd_scan(o, *scan);
    } catch (const Error &e) {
        std::cerr << cli::format_error(error_code_name(e.code()), cli::strip_code_prefix(e)) << '\n';
        return cli::exit_code_for(e.code());
    } catch (const std::exception &e) {
        std::cerr << cli::format_error("Internal", e.what()) << '\n';
        return cli::kExitNumerical;
    }
}

}  // namespace

int main(int argc, char **argv) { return run(argc, argv); }
