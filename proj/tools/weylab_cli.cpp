// weylab: exact Vinogradov-system counts, Weyl-sum box mean values, exponent
// curves and prime-field scans from one command line.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "weylab/acceptance.hpp"
#include "weylab/cache.hpp"
#include "weylab/errors.hpp"
#include "weylab/report.hpp"
#include "weylab/util.hpp"

namespace {

using namespace weylab;

struct GlobalOpts {
    int threads = 0;
    unsigned long long seed = 1;
    std::string out_path;
    std::string format = "json";
    std::string config_path;
    std::string cache_dir;
    long long mem_budget = kDefaultMemBudget;
    std::map<std::string, double> consts;
};

std::string iso_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
    return buf;
}

// One JSON object per line: timestamp, config echo, payload, version tag.
void emit_record(const GlobalOpts& g, const std::string& command, const json& config,
                 const json& payload) {
    json rec{{"timestamp", iso_timestamp()},
             {"command", command},
             {"config", config},
             {"result", payload},
             {"version", "weylab-0.1.0"}};
    std::string line = rec.dump();
    if (!g.out_path.empty()) {
        std::ofstream out(g.out_path, std::ios::app);
        out << line << '\n';
    }
    std::cout << line << std::endl;
}

void emit_text(const GlobalOpts& g, const std::string& text) {
    if (!g.out_path.empty()) {
        std::ofstream out(g.out_path, std::ios::app);
        out << text;
    }
    std::cout << text;
}

std::vector<double> parse_doubles(const std::vector<std::string>& raw) {
    std::vector<double> out;
    for (const auto& s : raw) out.push_back(std::stod(s));
    return out;
}

ArcConstants arc_constants(const GlobalOpts& g) {
    ArcConstants c;
    auto get = [&](const char* name, double dflt) {
        auto it = g.consts.find(name);
        return it == g.consts.end() ? dflt : it->second;
    };
    c.c = get("c", c.c);
    c.C = get("C", c.C);
    c.gamma = get("gamma", c.gamma);
    c.Gamma = get("Gamma", c.Gamma);
    return c;
}

// JSON config files: {"threads": 4, "count": {"s": 2, ...}}. Config values
// act as defaults, so flags given on the command line win.
class JsonConfig : public CLI::Config {
  public:
    std::string to_config(const CLI::App*, bool, bool, std::string) const override {
        return "{}\n";
    }
    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        json j = json::parse(input);
        std::vector<CLI::ConfigItem> out;
        walk(j, {}, out);
        return out;
    }

  private:
    static void walk(const json& j, std::vector<std::string> parents,
                     std::vector<CLI::ConfigItem>& out) {
        for (const auto& [key, value] : j.items()) {
            if (value.is_object()) {
                auto deeper = parents;
                deeper.push_back(key);
                walk(value, deeper, out);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = key;
            if (value.is_array())
                for (const auto& v : value)
                    item.inputs.push_back(v.is_string() ? v.get<std::string>() : v.dump());
            else
                item.inputs.push_back(value.is_string() ? value.get<std::string>()
                                                        : value.dump());
            out.push_back(std::move(item));
        }
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weylab: local mean values of Weyl sums, exactly where possible"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON config file (flags win on conflict)");
    app.allow_config_extras(true);
    app.add_option("--threads", g.threads, "worker thread cap (0 = hardware)");
    app.add_option("--seed", g.seed, "PRNG seed for sampling operations");
    app.add_option("--out", g.out_path, "append records to this file");
    app.add_option("--format", g.format, "json or csv (where applicable)");
    app.add_option("--cache", g.cache_dir, "count cache directory");
    app.add_option("--mem-budget", g.mem_budget, "memory cap in bytes for count tables");
    app.add_option("--const", [&g](const std::vector<std::string>& vals) {
        for (const auto& v : vals) {
            auto eq = v.find('=');
            if (eq == std::string::npos) return false;
            g.consts[v.substr(0, eq)] = std::stod(v.substr(eq + 1));
        }
        return true;
    }, "override a named constant, e.g. --const c=0.125 (repeatable)");

    // count --s --d --N [--h ...|--delta ...]
    auto* count_cmd = app.add_subcommand("count", "exact Vinogradov system counts");
    count_cmd->set_help_flag("--help", "print help");  // frees -h for the --h option
    long long c_s = 2, c_d = 2, c_N = 10;
    std::vector<long long> c_h;
    std::optional<double> c_delta;
    count_cmd->add_option("--s", c_s)->required();
    count_cmd->add_option("--d", c_d)->required();
    count_cmd->add_option("--N", c_N)->required();
    count_cmd->add_option("--h", c_h, "inhomogeneous right-hand side h_1 .. h_d");
    count_cmd->add_option("--delta", [&c_delta](const std::vector<std::string>& v) {
        c_delta = std::stod(v.front());
        return true;
    }, "box side length (counts |sums| <= 1/delta)");

    // bounds --source --s --d [--alpha] [--k] [--tau-max] [--emit]
    auto* bounds_cmd = app.add_subcommand("bounds", "theorem/conjecture exponent curves");
    std::string b_source = "cor3.6", b_s = "2", b_emit = "json";
    long long b_d = 2;
    std::string b_alpha, b_tau_max;
    long long b_k = 0;
    bounds_cmd->add_option("--source", b_source, "curve identifier (see --list)")->required();
    bounds_cmd->add_option("--s", b_s, "s as integer, fraction p/q or decimal");
    bounds_cmd->add_option("--d", b_d);
    bounds_cmd->add_option("--alpha", b_alpha);
    bounds_cmd->add_option("--k", b_k);
    bounds_cmd->add_option("--tau-max", b_tau_max, "emission cap for unbounded claims");
    bounds_cmd->add_option("--emit", b_emit, "json or csv");
    bool b_list = false;
    bounds_cmd->add_flag("--list", b_list, "list known sources");

    // plotdata --figure
    auto* plot_cmd = app.add_subcommand("plotdata", "polylines of figures 3.1-3.3");
    std::string p_figure = "3.1";
    std::string p_emit = "csv";
    plot_cmd->add_option("--figure", p_figure)->required();
    plot_cmd->add_option("--emit", p_emit, "csv or json");

    // integrate --s --d --N --delta [--xi ...] [--mode] [--tol]
    auto* int_cmd = app.add_subcommand("integrate", "box mean value of |S_d|^{2s}");
    double i_s = 2;
    long long i_d = 2, i_N = 8;
    double i_delta = 1.0, i_tol = 1e-2;
    long long i_budget = 1LL << 26;
    std::vector<std::string> i_xi;
    std::string i_mode = "exact-torus";
    int_cmd->add_option("--s", i_s)->required();
    int_cmd->add_option("--d", i_d)->required();
    int_cmd->add_option("--N", i_N)->required();
    int_cmd->add_option("--delta", i_delta)->required();
    int_cmd->add_option("--xi", i_xi, "box corner coordinates (default 0)");
    int_cmd->add_option("--mode", i_mode, "exact-torus, midpoint-grid or qmc");
    int_cmd->add_option("--tol", i_tol);
    int_cmd->add_option("--node-budget", i_budget);

    // kappa --s --d --tau --N-ladder
    auto* kappa_cmd = app.add_subcommand("kappa", "empirical growth exponent fit");
    double k_s = 2, k_tau = 0.0;
    long long k_d = 2;
    std::vector<long long> k_ladder;
    std::string k_variant = "origin";
    std::string k_emit = "json";
    kappa_cmd->add_option("--s", k_s)->required();
    kappa_cmd->add_option("--d", k_d)->required();
    kappa_cmd->add_option("--tau", k_tau)->required();
    kappa_cmd->add_option("--N-ladder", k_ladder)->required();
    kappa_cmd->add_option("--variant", k_variant, "origin, sup or inf");
    kappa_cmd->add_option("--emit", k_emit, "json or csv (ladder rows)");

    // supinf --s --d --N --delta --objective
    auto* sup_cmd = app.add_subcommand("supinf", "search box placement for sup/inf");
    double su_s = 2, su_delta = 0.3;
    long long su_d = 2, su_N = 8, su_budget = 200;
    std::string su_obj = "sup";
    sup_cmd->add_option("--s", su_s)->required();
    sup_cmd->add_option("--d", su_d)->required();
    sup_cmd->add_option("--N", su_N)->required();
    sup_cmd->add_option("--delta", su_delta)->required();
    sup_cmd->add_option("--objective", su_obj, "sup or inf");
    sup_cmd->add_option("--budget", su_budget, "max mean-value evaluations");

    // levelset --d --N --A --delta [--xi|--check]
    auto* level_cmd = app.add_subcommand("levelset", "measure of {|S_d| >= A} in a box");
    long long l_d = 2, l_N = 1024, l_samples = 10000, l_xi_samples = 8;
    double l_A = 32, l_delta = 0.1, l_slack = 0.1;
    std::vector<std::string> l_xi;
    std::string l_sampler = "monte-carlo";
    bool l_check = false;
    level_cmd->add_option("--d", l_d)->required();
    level_cmd->add_option("--N", l_N)->required();
    level_cmd->add_option("--A", l_A)->required();
    level_cmd->add_option("--delta", l_delta)->required();
    level_cmd->add_option("--xi", l_xi);
    level_cmd->add_option("--sampler", l_sampler, "monte-carlo or grid");
    level_cmd->add_option("--samples", l_samples);
    level_cmd->add_flag("--check-bounds", l_check, "compare against the structural envelope");
    level_cmd->add_option("--xi-samples", l_xi_samples);
    level_cmd->add_option("--slack-exponent", l_slack);
    std::string l_dump;
    level_cmd->add_option("--dump-samples", l_dump, "write per-sample |S| values to a CSV");

    // structure --d --N --A --x ...
    auto* struct_cmd = app.add_subcommand("structure", "rational structure of a large sum");
    long long st_N = 4096;
    double st_A = 512;
    std::vector<std::string> st_x;
    long long st_cap = 1000000;
    struct_cmd->add_option("--N", st_N)->required();
    struct_cmd->add_option("--A", st_A)->required();
    struct_cmd->add_option("--x", st_x, "point coordinates")->required();
    struct_cmd->add_option("--modulus-cap", st_cap);

    // witness --s --d --N --delta [--xi] [--k]
    auto* wit_cmd = app.add_subcommand("witness", "constructive lower bound for the mean value");
    long long w_s = 2, w_d = 2, w_N = 2048, w_k = 1;
    double w_delta = 0.1;
    std::vector<std::string> w_xi;
    wit_cmd->add_option("--s", w_s)->required();
    wit_cmd->add_option("--d", w_d)->required();
    wit_cmd->add_option("--N", w_N)->required();
    wit_cmd->add_option("--delta", w_delta)->required();
    wit_cmd->add_option("--xi", w_xi);
    wit_cmd->add_option("--k", w_k);

    // fieldscan --d --p [--gamma] [--kind complete|incomplete]
    auto* field_cmd = app.add_subcommand("fieldscan", "census of rational sums over F_p");
    long long f_d = 2, f_p = 101, f_L = 0, f_samples = 0;
    double f_gamma = 0.5;
    std::string f_kind = "complete";
    field_cmd->add_option("--d", f_d)->required();
    field_cmd->add_option("--p", f_p)->required();
    field_cmd->add_option("--gamma", f_gamma);
    field_cmd->add_option("--L", f_L, "sub-box side (default floor(p^0.8))");
    field_cmd->add_option("--kind", f_kind, "complete or incomplete");
    field_cmd->add_option("--samples", f_samples, "incomplete d>=3: sampled u count");

    // continuity --p --a --b --N [--c]
    auto* cont_cmd = app.add_subcommand("continuity", "Gauss-sum continuity near a/p, b/p");
    long long co_p = 101, co_a = 7, co_b = 13, co_N = 5050, co_samples = 1000;
    double co_c = 0.25;
    cont_cmd->add_option("--p", co_p)->required();
    cont_cmd->add_option("--a", co_a)->required();
    cont_cmd->add_option("--b", co_b)->required();
    cont_cmd->add_option("--N", co_N)->required();
    cont_cmd->add_option("--c", co_c);
    cont_cmd->add_option("--samples", co_samples);

    // curve --p --k --a ... --L [--corner ...]
    auto* mono_cmd = app.add_subcommand("curve", "monomial-curve points in a box, exact count");
    long long m_p = 499, m_k = 2, m_L = 100;
    std::vector<long long> m_a, m_corner;
    mono_cmd->add_option("--p", m_p)->required();
    mono_cmd->add_option("--k", m_k)->required();
    mono_cmd->add_option("--a", m_a)->required();
    mono_cmd->add_option("--L", m_L)->required();
    mono_cmd->add_option("--corner", m_corner);

    // majorarc --d --N [--c] [--samples] [--delta]
    auto* arc_cmd = app.add_subcommand("majorarc", "major-arc witness check");
    long long a_d = 2, a_N = 1000, a_samples = 1000;
    double a_c = 0.05, a_delta = 1.0;
    arc_cmd->add_option("--d", a_d)->required();
    arc_cmd->add_option("--N", a_N)->required();
    arc_cmd->add_option("--c", a_c);
    arc_cmd->add_option("--samples", a_samples);
    arc_cmd->add_option("--delta", a_delta);

    // schrodinger --N --delta [--x0] [--t0] [--t-samples]
    auto* sch_cmd = app.add_subcommand("schrodinger", "probability scan over a short window");
    long long sc_N = 256, sc_tsamples = 64;
    double sc_x0 = 0.0, sc_t0 = 0.0, sc_delta = 0.125;
    sch_cmd->add_option("--N", sc_N)->required();
    sch_cmd->add_option("--delta", sc_delta)->required();
    sch_cmd->add_option("--x0", sc_x0);
    sch_cmd->add_option("--t0", sc_t0);
    sch_cmd->add_option("--t-samples", sc_tsamples);

    // sum --x ... --N : one Weyl sum
    auto* sum_cmd = app.add_subcommand("sum", "evaluate a single Weyl sum");
    std::vector<std::string> su_x;
    long long su2_N = 100;
    sum_cmd->add_option("--x", su_x)->required();
    sum_cmd->add_option("--N", su2_N)->required();

    // verify [--suite fast|full]
    auto* verify_cmd = app.add_subcommand("verify", "run the acceptance criteria");
    std::string v_suite = "full";
    verify_cmd->add_option("--suite", v_suite, "fast or full");

    // hj --j --s --d --N --delta
    auto* hj_cmd = app.add_subcommand("hj", "size of the H_j shift class");
    HjSpec hj;
    hj_cmd->add_option("--j", hj.j)->required();
    hj_cmd->add_option("--s", hj.s)->required();
    hj_cmd->add_option("--d", hj.d)->required();
    hj_cmd->add_option("--N", hj.N)->required();
    hj_cmd->add_option("--delta", hj.delta)->required();

    // partition --s --d --N --delta
    auto* part_cmd = app.add_subcommand("partition", "exact box-count partition check");
    long long pa_s = 2, pa_d = 2, pa_N = 8;
    double pa_delta = 0.2;
    part_cmd->add_option("--s", pa_s)->required();
    part_cmd->add_option("--d", pa_d)->required();
    part_cmd->add_option("--N", pa_N)->required();
    part_cmd->add_option("--delta", pa_delta)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    set_max_threads(g.threads);

    try {
        if (count_cmd->parsed()) {
            if (!c_h.empty() && c_delta)
                throw UsageError("count takes --h or --delta, not both");
            json cfg{{"s", c_s}, {"d", c_d}, {"N", c_N}, {"mem_budget", g.mem_budget}};
            std::optional<CountCache> cache;
            if (!g.cache_dir.empty()) cache.emplace(g.cache_dir);
            CountResult res;
            std::string kind = "J", param;
            if (!c_h.empty()) {
                kind = "Jh";
                param = CountCache::h_param(c_h);
                cfg["h"] = c_h;
            } else if (c_delta) {
                kind = "Jbox";
                param = CountCache::delta_param(*c_delta);
                cfg["delta"] = *c_delta;
            }
            auto hit = cache ? cache->lookup(c_s, c_d, c_N, kind, param) : std::nullopt;
            if (hit) {
                res.s = c_s; res.d = c_d; res.N = c_N; res.count = *hit;
                res.method = "cache";
                if (!c_h.empty()) res.h = c_h;
                if (c_delta) res.delta = *c_delta;
            } else if (!c_h.empty()) {
                res = count_J_inhom(c_s, c_d, c_h, c_N, g.mem_budget);
            } else if (c_delta) {
                res = count_J_box(c_s, c_d, *c_delta, c_N, g.mem_budget);
            } else {
                res = count_J(c_s, c_d, c_N, g.mem_budget);
            }
            if (cache && !hit) cache->store(c_s, c_d, c_N, kind, param, res.count);
            emit_record(g, "count", cfg, to_json(res));
        } else if (bounds_cmd->parsed()) {
            if (b_list) {
                json j = known_sources();
                emit_record(g, "bounds", json{{"list", true}}, j);
                return 0;
            }
            CurveParams params;
            params.s = Rational::parse(b_s);
            params.d = b_d;
            if (!b_alpha.empty()) params.alpha = Rational::parse(b_alpha);
            if (b_k > 0) params.k = b_k;
            if (!b_tau_max.empty()) params.tau_max = Rational::parse(b_tau_max);
            BoundCurve curve = bound_curve(b_source, params);
            json cfg{{"source", b_source}, {"s", b_s}, {"d", b_d}};
            if (b_emit == "csv")
                emit_text(g, curve_csv(curve));
            else
                emit_record(g, "bounds", cfg, to_json(curve));
        } else if (plot_cmd->parsed()) {
            auto curves = figure_polylines(p_figure);
            if (p_emit == "csv") {
                emit_text(g, curves_csv(curves));
            } else {
                json arr = json::array();
                for (const auto& c : curves) arr.push_back(to_json(c));
                emit_record(g, "plotdata", json{{"figure", p_figure}}, arr);
            }
        } else if (int_cmd->parsed()) {
            QuadMode mode = i_mode == "exact-torus"    ? QuadMode::ExactTorus
                            : i_mode == "midpoint-grid" ? QuadMode::MidpointGrid
                            : i_mode == "qmc"           ? QuadMode::Qmc
                                                        : throw UsageError("unknown mode " + i_mode);
            std::vector<double> xi = i_xi.empty()
                                         ? std::vector<double>(static_cast<size_t>(i_d), 0.0)
                                         : parse_doubles(i_xi);
            BoxSpec box(TorusPoint(xi), i_delta);
            auto est = integrate_box(i_s, i_d, WeightSeq::ones(i_N), box, i_N, mode, i_tol,
                                     i_budget);
            json cfg{{"s", i_s}, {"d", i_d}, {"N", i_N}, {"delta", i_delta},
                     {"xi", xi},  {"mode", i_mode}, {"tol", i_tol}};
            emit_record(g, "integrate", cfg, to_json(est));
        } else if (kappa_cmd->parsed()) {
            auto fit = empirical_kappa(k_s, k_d, k_tau, k_ladder, k_variant);
            if (k_emit == "csv") {
                std::ostringstream os;
                os << "N,log_N,log_I,fit\n";
                for (size_t i = 0; i < fit.N_list.size(); ++i) {
                    double lx = std::log(static_cast<double>(fit.N_list[i]));
                    os << fit.N_list[i] << ',' << lx << ',' << fit.log_values[i] << ','
                       << fit.intercept + fit.slope * lx << '\n';
                }
                emit_text(g, os.str());
            } else {
                json cfg{{"s", k_s}, {"d", k_d}, {"tau", k_tau}, {"N_ladder", k_ladder},
                         {"variant", k_variant}};
                emit_record(g, "kappa", cfg, to_json(fit));
            }
        } else if (sup_cmd->parsed()) {
            auto res = sup_inf_search(su_s, su_d, su_N, su_delta, su_obj == "sup", su_budget,
                                      1024, g.seed);
            json cfg{{"s", su_s}, {"d", su_d}, {"N", su_N}, {"delta", su_delta},
                     {"objective", su_obj}, {"budget", su_budget}};
            emit_record(g, "supinf", cfg, to_json(res));
        } else if (level_cmd->parsed()) {
            if (l_check) {
                auto rep = check_levelset_bounds(l_d, l_N, l_A, l_delta, l_xi_samples,
                                                 l_samples, l_slack, g.seed);
                json cfg{{"d", l_d}, {"N", l_N}, {"A", l_A}, {"delta", l_delta},
                         {"xi_samples", l_xi_samples}, {"samples", l_samples}};
                emit_record(g, "levelset-check", cfg, to_json(rep));
            } else {
                std::vector<double> xi = l_xi.empty()
                                             ? std::vector<double>(static_cast<size_t>(l_d), 0.0)
                                             : parse_doubles(l_xi);
                BoxSpec box(TorusPoint(xi), l_delta);
                std::vector<double> abs_values;
                auto est = level_set_measure(l_d, box, l_A, l_N, l_sampler, l_samples, g.seed,
                                             l_dump.empty() ? nullptr : &abs_values);
                if (!l_dump.empty()) {
                    std::ofstream dump(l_dump);
                    dump << "sample,abs_S\n";
                    for (size_t i = 0; i < abs_values.size(); ++i)
                        dump << i << ',' << abs_values[i] << '\n';
                }
                json cfg{{"d", l_d}, {"N", l_N}, {"A", l_A}, {"delta", l_delta}, {"xi", xi},
                         {"sampler", l_sampler}, {"samples", l_samples}};
                emit_record(g, "levelset", cfg, to_json(est));
            }
        } else if (struct_cmd->parsed()) {
            TorusPoint x(parse_doubles(st_x));
            auto det = detect_rational_structure(x, st_N, st_A, st_cap);
            json cfg{{"N", st_N}, {"A", st_A}, {"x", parse_doubles(st_x)}};
            emit_record(g, "structure", cfg, to_json(det));
        } else if (wit_cmd->parsed()) {
            std::vector<double> xi = w_xi.empty()
                                         ? std::vector<double>(static_cast<size_t>(w_d), 0.0)
                                         : parse_doubles(w_xi);
            auto rep = lower_bound_witness(w_s, w_d, w_N, w_delta, TorusPoint(xi), w_k,
                                           arc_constants(g), g.seed);
            json cfg{{"s", w_s}, {"d", w_d}, {"N", w_N}, {"delta", w_delta}, {"xi", xi},
                     {"k", w_k}};
            emit_record(g, "witness", cfg, to_json(rep));
        } else if (field_cmd->parsed()) {
            json cfg{{"d", f_d}, {"p", f_p}, {"kind", f_kind}};
            if (f_kind == "incomplete") {
                auto rep = incomplete_ratio_scan(f_d, f_p, f_samples, g.seed);
                emit_record(g, "fieldscan", cfg, to_json(rep));
            } else {
                cfg["gamma"] = f_gamma;
                auto rep = prime_field_scan(f_d, f_p, f_gamma, f_L, nullptr, g.seed);
                emit_record(g, "fieldscan", cfg, to_json(rep));
            }
        } else if (cont_cmd->parsed()) {
            auto rep = gauss_continuity_check(co_p, co_a, co_b, co_N, co_c, co_samples,
                                              arc_constants(g).C, g.seed);
            json cfg{{"p", co_p}, {"a", co_a}, {"b", co_b}, {"N", co_N}, {"c", co_c}};
            emit_record(g, "continuity", cfg, to_json(rep));
        } else if (mono_cmd->parsed()) {
            std::vector<long long> corner = m_corner;
            if (corner.empty()) corner.assign(static_cast<size_t>(m_k), 0);
            auto rep = monomial_curve_density(m_p, m_k, m_a, m_L, corner);
            json cfg{{"p", m_p}, {"k", m_k}, {"a", m_a}, {"L", m_L}, {"corner", corner}};
            emit_record(g, "curve", cfg, to_json(rep));
        } else if (arc_cmd->parsed()) {
            auto rep = majorarc_witness(a_d, a_N, a_c, a_samples, a_delta, g.seed);
            json cfg{{"d", a_d}, {"N", a_N}, {"c", a_c}, {"samples", a_samples}};
            emit_record(g, "majorarc", cfg, to_json(rep));
        } else if (sch_cmd->parsed()) {
            auto rep = schrodinger_scan(sc_x0, sc_t0, sc_delta, sc_N, sc_tsamples);
            json cfg{{"x0", sc_x0}, {"t0", sc_t0}, {"delta", sc_delta}, {"N", sc_N},
                     {"t_samples", sc_tsamples}};
            emit_record(g, "schrodinger", cfg, to_json(rep));
        } else if (sum_cmd->parsed()) {
            TorusPoint x(parse_doubles(su_x));
            cplx S = weyl_sum(x, su2_N);
            json cfg{{"x", parse_doubles(su_x)}, {"N", su2_N}};
            emit_record(g, "sum", cfg,
                        json{{"re", S.real()}, {"im", S.imag()}, {"abs", std::abs(S)}});
        } else if (hj_cmd->parsed()) {
            json cfg{{"j", hj.j}, {"s", hj.s}, {"d", hj.d}, {"N", hj.N}, {"delta", hj.delta}};
            emit_record(g, "hj", cfg,
                        json{{"count", hj_count(hj)}, {"model", hj_asymptotic(hj)}});
        } else if (part_cmd->parsed()) {
            auto rep = verify_partition(pa_s, pa_d, pa_delta, pa_N, g.mem_budget);
            json cfg{{"s", pa_s}, {"d", pa_d}, {"N", pa_N}, {"delta", pa_delta}};
            emit_record(g, "partition", cfg, to_json(rep));
        } else if (verify_cmd->parsed()) {
            AcceptanceOptions opt;
            opt.fast_only = v_suite == "fast";
            opt.seed = g.seed == 1 ? 20240811 : g.seed;
            auto results = run_acceptance(opt, std::cout);
            bool all_pass = true, hard_fail = false;
            for (const auto& res : results) {
                all_pass &= res.pass;
                if (!res.pass && res.hard) hard_fail = true;
            }
            json arr = json::array();
            for (const auto& res : results)
                arr.push_back(json{{"id", res.id}, {"name", res.name}, {"pass", res.pass},
                                   {"seconds", res.seconds}, {"detail", res.detail}});
            if (!g.out_path.empty()) {
                std::ofstream out(g.out_path, std::ios::app);
                out << arr.dump() << '\n';
            }
            if (hard_fail) return 2;
            return all_pass ? 0 : 2;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const IdentityError& e) {
        std::cerr << "identity failure: " << e.what() << "\n";
        return 2;
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
