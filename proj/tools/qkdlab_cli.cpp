// Command-line front end: each subcommand reproduces one experiment as a
// deterministic CSV (header row, fixed 12-significant-digit scientific
// notation, '\n' line endings).
//
// Exit codes: 0 ok, 1 usage error, 2 numeric/infeasible.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkdlab/attack.hpp"
#include "qkdlab/channel.hpp"
#include "qkdlab/keyrate.hpp"
#include "qkdlab/strategies.hpp"
#include "qkdlab/sweep.hpp"

namespace {

using namespace qkdlab;

constexpr const char* kSecurityTrailer = "# security=BROKEN (intercept-and-resend)\n";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Args {
    std::string command;
    std::map<std::string, std::string> values;

    bool has(const std::string& key) const { return values.count(key) != 0; }
    std::string str(const std::string& key, const std::string& def) const {
        auto it = values.find(key);
        return it == values.end() ? def : it->second;
    }
    double num(const std::string& key, double def) const {
        auto it = values.find(key);
        if (it == values.end()) return def;
        try {
            std::size_t pos = 0;
            const double v = std::stod(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument(it->second);
            return v;
        } catch (const std::exception&) {
            throw UsageError("invalid number for --" + key + ": " + it->second);
        }
    }
    int integer(const std::string& key, int def) const {
        const double v = num(key, def);
        if (v != static_cast<int>(v)) throw UsageError("--" + key + " must be an integer");
        return static_cast<int>(v);
    }
};

const std::set<std::string> kCommonKeys = {"alpha", "eta-bob", "e-detector", "p-dark",
                                           "mu",    "f-ec",    "out",        "config"};
const std::set<std::string> kGridKeys = {"dmin", "dmax", "points"};

std::map<std::string, std::set<std::string>> command_keys() {
    std::map<std::string, std::set<std::string>> keys;
    auto with = [](std::initializer_list<std::set<std::string>> sets,
                   std::initializer_list<const char*> extra) {
        std::set<std::string> out;
        for (const auto& s : sets) out.insert(s.begin(), s.end());
        for (const char* e : extra) out.insert(e);
        return out;
    };
    keys["curve"] = with({kCommonKeys, kGridKeys}, {"protocol", "mode", "mismatch"});
    keys["suboptimal"] = with({kCommonKeys, kGridKeys}, {});
    keys["strategy1"] = with({kCommonKeys, kGridKeys}, {"bsteps"});
    keys["strategy2"] = with({kCommonKeys, kGridKeys}, {"mismatch", "bsteps"});
    keys["strategy3"] = with({kCommonKeys}, {"mismatch", "delta", "y0", "gamma", "bsteps"});
    keys["match"] = with({kCommonKeys}, {"mismatch", "tol", "length"});
    keys["table2"] = with({kCommonKeys}, {});
    keys["table3"] = with({kCommonKeys}, {});
    keys["fig6"] = with({kCommonKeys, kGridKeys}, {"bsteps"});
    return keys;
}

// One `key=value` per line, '#' comments; flags given on the command
// line take precedence over the file.
void merge_config(Args& args, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const std::size_t last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError("config line " + std::to_string(lineno) + ": expected key=value");
        }
        auto trim = [](std::string s) {
            const std::size_t b = s.find_first_not_of(" \t");
            const std::size_t e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw UsageError("config line " + std::to_string(lineno) + ": empty key");
        }
        args.values.emplace(key, value);  // does not override flags
    }
}

Args parse_args(int argc, char** argv) {
    if (argc < 2) throw UsageError("missing command");
    Args args;
    args.command = argv[1];
    const auto keys = command_keys();
    const auto it = keys.find(args.command);
    if (it == keys.end()) throw UsageError("unknown command: " + args.command);
    for (int i = 2; i < argc; ++i) {
        const std::string flag = argv[i];
        if (flag.rfind("--", 0) != 0) throw UsageError("expected --flag, got: " + flag);
        const std::string key = flag.substr(2);
        if (!it->second.count(key)) {
            throw UsageError("unknown flag for " + args.command + ": " + flag);
        }
        if (i + 1 >= argc) throw UsageError("missing value for " + flag);
        if (!args.values.emplace(key, argv[++i]).second) {
            throw UsageError("duplicate flag: " + flag);
        }
    }
    if (args.has("config")) merge_config(args, args.values.at("config"));
    for (const auto& [key, value] : args.values) {
        if (!it->second.count(key)) {
            throw UsageError("unknown key for " + args.command + ": " + key);
        }
    }
    return args;
}

SystemParams system_params(const Args& args) {
    SystemParams p = SystemParams::table_defaults();
    p.alpha = args.num("alpha", p.alpha);
    p.eta_bob = args.num("eta-bob", p.eta_bob);
    p.e_detector = args.num("e-detector", p.e_detector);
    p.p_dark = args.num("p-dark", p.p_dark);
    p.mu = args.num("mu", p.mu);
    p.f_ec = args.num("f-ec", p.f_ec);
    p.validate();
    return p;
}

std::vector<double> delta_grid(const Args& args) {
    const double dmin = args.num("dmin", 1e-3);
    const double dmax = args.num("dmax", kPi / 2.0);
    const int points = args.integer("points", 200);
    if (points < 1 || dmin <= 0.0 || dmax < dmin) throw UsageError("bad delta grid");
    return linspace(dmin, dmax, points);
}

struct Csv {
    std::ostringstream body;
    bool broken = false;

    explicit Csv(const std::string& header) { body << header << "\n"; }
    void row(std::initializer_list<double> values) {
        bool first = true;
        for (double v : values) {
            if (!first) body << ",";
            body << format_sci(v);
            first = false;
        }
        body << "\n";
    }
    std::string str() const {
        std::string out = body.str();
        if (broken) out += kSecurityTrailer;
        return out;
    }
};

void emit(const Args& args, const Csv& csv) {
    const std::string out = args.str("out", "");
    if (out.empty()) {
        std::cout << csv.str();
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write output file: " + out);
    f << csv.str();
}

Csv run_curve(const Args& args) {
    const std::string proto_s = args.str("protocol", "bb84");
    const std::string mode_s = args.str("mode", "fixed");
    if (proto_s != "bb84" && proto_s != "sarg04") throw UsageError("bad --protocol");
    if (mode_s != "fixed" && mode_s != "optimized") throw UsageError("bad --mode");
    const Protocol proto = proto_s == "bb84" ? Protocol::bb84 : Protocol::sarg04;
    const ResendMode mode =
        mode_s == "fixed" ? ResendMode::fixed_resend : ResendMode::optimized_resend;
    const double mismatch = args.num("mismatch", 1.0);
    if (mismatch <= 0.0 || mismatch > 1.0) throw UsageError("--mismatch must be in (0, 1]");
    CurveOptions copts;
    copts.e_detector = args.num("e-detector", 0.0);
    const std::vector<double> grid = delta_grid(args);
    Csv csv("delta,qber,conclusive_prob,transmittance");
    for (const CurvePoint& p : optimal_curve(proto, mode, mismatch, grid, copts)) {
        csv.row({p.delta, p.qber, p.conclusive_prob, p.transmittance});
    }
    return csv;
}

Csv run_suboptimal(const Args& args) {
    Csv csv("delta,qber");
    for (double d : delta_grid(args)) {
        csv.row({d, suboptimal_qber(d)});
    }
    return csv;
}

Csv run_strategy_sweep(const Args& args, int default_bsteps, bool with_mismatch) {
    const SystemParams p = system_params(args);
    const int bsteps = args.integer("bsteps", default_bsteps);
    const double mismatch = with_mismatch ? args.num("mismatch", 0.08) : 1.0;
    const std::vector<double> grid = delta_grid(args);
    std::vector<LinkObservables> obs(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        obs[i] = with_mismatch ? strategy_two(p, grid[i], mismatch) : strategy_one(p, grid[i]);
    });
    Csv csv("delta,q_signal,e_signal,rate");
    csv.broken = true;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        csv.row({grid[i], obs[i].q_signal, obs[i].e_signal,
                 run_post(obs[i], p.mu, p.f_ec, bsteps).rate});
    }
    return csv;
}

Csv run_strategy3(const Args& args) {
    const SystemParams p = system_params(args);
    StrategyParams sp;
    sp.delta = args.num("delta", 1.31);
    sp.mismatch = args.num("mismatch", 0.04);
    sp.y0 = args.num("y0", 1e-9);
    sp.gamma = args.num("gamma", 0.096);
    sp.mu = p.mu;
    const int bsteps = args.integer("bsteps", 0);
    const LinkObservables obs = strategy_three(p, sp);
    Csv csv("delta,y0,gamma,q_signal,e_signal,rate");
    csv.broken = true;
    csv.row({sp.delta, sp.y0, sp.gamma, obs.q_signal, obs.e_signal,
             run_post(obs, p.mu, p.f_ec, bsteps).rate});
    return csv;
}

Csv run_match(const Args& args) {
    SystemParams p = system_params(args);
    p.length_km = args.num("length", 88.0);
    const double mismatch = args.num("mismatch", 0.04);
    const double tol = args.num("tol", 0.10);
    if (tol <= 0.0 || tol >= 1.0) throw UsageError("--tol must be in (0, 1)");
    const std::optional<MatchResult> m = match_normal(p, mismatch, tol);
    if (!m) throw std::domain_error("match: no attack parameters reproduce normal operation");
    Csv csv("delta,y0,gamma,q_signal,e_signal,rate");
    csv.broken = true;
    csv.row({m->params.delta, m->params.y0, m->params.gamma, m->observables.q_signal,
             m->observables.e_signal, m->rate.rate});
    return csv;
}

Csv run_table2(const Args& args) {
    const SystemParams p = system_params(args);
    Csv csv("mismatch,delta,rate,rate_fake_only");
    csv.broken = true;
    const double rows[3][2] = {{0.0667, 1.02}, {0.04, 1.31}, {0.03, 1.41}};
    for (const auto& [mismatch, delta] : rows) {
        const KeyRate r = run_post(strategy_two(p, delta, mismatch), p.mu, p.f_ec, 0);
        const KeyRate base = run_post(strategy_two(p, kPi / 2.0, mismatch), p.mu, p.f_ec, 0);
        csv.row({mismatch, delta, r.rate, base.rate});
    }
    return csv;
}

Csv run_table3(const Args& args) {
    const SystemParams base = system_params(args);
    Csv csv("distance_km,mismatch,delta,y0,gamma,rate");
    csv.broken = true;
    const double rows[2][5] = {{88.0, 0.04, 1.31, 1e-9, 0.096}, {87.0, 0.03, 1.41, 1.8e-8, 0.1}};
    for (const auto& [distance, mismatch, delta, y0, gamma] : rows) {
        SystemParams p = base;
        p.length_km = distance;
        const StrategyParams sp{delta, mismatch, y0, gamma, p.mu};
        const LinkObservables obs = strategy_three(p, sp);
        csv.row({distance, mismatch, delta, y0, gamma, run_post(obs, p.mu, p.f_ec, 0).rate});
    }
    return csv;
}

void print_usage() {
    std::cerr
        << "usage: qkdlab <command> [--flag value]...\n"
        << "commands:\n"
        << "  curve       minimum attack QBER vs delta (--protocol bb84|sarg04,\n"
        << "              --mode fixed|optimized, --mismatch M, --dmin/--dmax/--points)\n"
        << "  suboptimal  QBER of the explicit rank-one strategy vs delta\n"
        << "  strategy1   phase-remapping attack observables and key rate (--bsteps)\n"
        << "  strategy2   combined attack sweep (--mismatch, --bsteps)\n"
        << "  strategy3   fine-tuned combined attack (--delta --y0 --gamma --mismatch)\n"
        << "  match       search attack parameters mimicking normal operation\n"
        << "              (--length km, --mismatch, --tol)\n"
        << "  table2      combined-attack key rates at the reference operating points\n"
        << "  table3      fine-tuned attack rates at the reference operating points\n"
        << "  fig6        strategy1 sweep with three B steps\n"
        << "common flags: --alpha --eta-bob --e-detector --p-dark --mu --f-ec\n"
        << "              --out FILE --config FILE (key=value lines, '#' comments)\n";
}

}  // namespace

int main(int argc, char** argv) {
    try {
        const Args args = parse_args(argc, argv);
        Csv csv = [&] {
            if (args.command == "curve") return run_curve(args);
            if (args.command == "suboptimal") return run_suboptimal(args);
            if (args.command == "strategy1") return run_strategy_sweep(args, 3, false);
            if (args.command == "strategy2") return run_strategy_sweep(args, 0, true);
            if (args.command == "strategy3") return run_strategy3(args);
            if (args.command == "match") return run_match(args);
            if (args.command == "table2") return run_table2(args);
            if (args.command == "table3") return run_table3(args);
            return run_strategy_sweep(args, 3, false);  // fig6
        }();
        emit(args, csv);
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        print_usage();
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
