// flowlab: exact cocycle / continued-fraction workbench over irrational
// rotations. Subcommands expose the library surface; all numeric output is
// exact (fractions) or explicitly labeled decimal renderings.

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "flowlab/diagnostics.hpp"
#include "flowlab/emit.hpp"
#include "flowlab/flow.hpp"
#include "flowlab/fourier.hpp"
#include "flowlab/ostrowski.hpp"
#include "flowlab/report.hpp"

using namespace flowlab;

namespace {

struct CommonArgs {
    std::string alpha;
    unsigned precision = 256;
    int depth = 12;
};

CFExpansion make_cf(const CommonArgs& c) {
    return cf_expand(ValueSpec::parse(c.alpha), c.precision, c.depth);
}

Rat make_beta(const std::string& text, unsigned bits) {
    return resolve_beta(ValueSpec::parse(text), bits);
}

std::vector<int> parse_schedule(const std::string& spec, int K) {
    std::vector<int> out;
    if (spec == "even") {
        for (int k = 1; k <= K; ++k) out.push_back(2 * k);
        return out;
    }
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stoi(item));
    return out;
}

int run_cf_expand(const CommonArgs& common, bool as_json) {
    CFExpansion cf = make_cf(common);
    if (as_json) {
        std::cout << cf_json(cf).dump(2) << "\n";
        return 0;
    }
    std::cout << "validated_depth " << cf.validated_depth() << "\n";
    std::cout << "quotients";
    for (int n = 1; n <= cf.validated_depth(); ++n) std::cout << " " << cf.quotient(n).get_str();
    std::cout << "\n";
    for (int n = 0; n <= cf.validated_depth(); ++n) {
        std::cout << "q_" << n << " = " << cf.den(n).get_str() << "  p_" << n << " = "
                  << cf.num(n).get_str() << "  ||q_n a|| = "
                  << to_decimal(cf.qn_alpha_dist(n), 20) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact cocycle and continued-fraction workbench"};
    app.require_subcommand(1);

    // ----- cf -----
    auto* cf_cmd = app.add_subcommand("cf", "continued-fraction engine");
    cf_cmd->require_subcommand(1);
    auto* cf_expand_cmd = cf_cmd->add_subcommand("expand", "expand and validate alpha");
    CommonArgs cf_args;
    bool cf_json_flag = false;
    cf_expand_cmd->add_option("--alpha", cf_args.alpha, "named constant, ratio, or quotients")
        ->required();
    cf_expand_cmd->add_option("--precision", cf_args.precision, "approximant bits");
    cf_expand_cmd->add_option("--depth", cf_args.depth, "requested depth");
    cf_expand_cmd->add_flag("--json", cf_json_flag, "JSON output");

    // ----- diag -----
    auto* diag_cmd = app.add_subcommand("diag", "coboundary diagnostics");
    diag_cmd->require_subcommand(1);
    auto* classify_cmd = diag_cmd->add_subcommand("classify", "run the (alpha, beta) classifier");
    CommonArgs dc_args;
    std::string dc_beta;
    bool dc_json = false;
    classify_cmd->add_option("--alpha", dc_args.alpha)->required();
    classify_cmd->add_option("--beta", dc_beta)->required();
    classify_cmd->add_option("--precision", dc_args.precision);
    classify_cmd->add_option("--depth", dc_args.depth);
    classify_cmd->add_flag("--json", dc_json);

    auto* support_cmd = diag_cmd->add_subcommand("support", "case-B support experiment");
    CommonArgs ds_args;
    std::string ds_beta, ds_delta = "1/4";
    int ds_n = 1;
    bool ds_json = false;
    support_cmd->add_option("--alpha", ds_args.alpha)->required();
    support_cmd->add_option("--beta", ds_beta)->required();
    support_cmd->add_option("--n", ds_n, "denominator index")->required();
    support_cmd->add_option("--delta", ds_delta, "delta in (0, 1/2)");
    support_cmd->add_option("--precision", ds_args.precision);
    support_cmd->add_option("--depth", ds_args.depth);
    support_cmd->add_flag("--json", ds_json);

    // ----- ostrowski -----
    auto* ost_cmd = app.add_subcommand("ostrowski", "Ostrowski numeration");
    ost_cmd->require_subcommand(1);
    auto* oexp_cmd = ost_cmd->add_subcommand("expand", "digits of beta in base (q_n alpha)");
    CommonArgs oe_args;
    std::string oe_beta;
    oexp_cmd->add_option("--alpha", oe_args.alpha)->required();
    oexp_cmd->add_option("--beta", oe_beta)->required();
    oexp_cmd->add_option("--precision", oe_args.precision);
    oexp_cmd->add_option("--depth", oe_args.depth);

    auto* osyn_cmd = ost_cmd->add_subcommand("synth", "beta from digits");
    CommonArgs os_args;
    std::string os_digits;
    osyn_cmd->add_option("--alpha", os_args.alpha)->required();
    osyn_cmd->add_option("--digits", os_digits, "comma list b_0,b_1,...")->required();
    osyn_cmd->add_option("--precision", os_args.precision);
    osyn_cmd->add_option("--depth", os_args.depth);

    // ----- fourier -----
    auto* fourier_cmd = app.add_subcommand("fourier", "Fourier-side computations");
    fourier_cmd->require_subcommand(1);
    auto* fnorm_cmd = fourier_cmd->add_subcommand("norm", "ergodic-sum L2 norm via the series");
    CommonArgs fn_args;
    std::string fn_phi = "F";
    long fn_q = 7, fn_trunc = 100000;
    fnorm_cmd->add_option("--alpha", fn_args.alpha)->required();
    fnorm_cmd->add_option("--phi", fn_phi, "F (square wave)");
    fnorm_cmd->add_option("--q", fn_q, "ergodic time")->required();
    fnorm_cmd->add_option("--trunc", fn_trunc, "series truncation");
    fnorm_cmd->add_option("--precision", fn_args.precision);
    fnorm_cmd->add_option("--depth", fn_args.depth);

    auto* fh_cmd = fourier_cmd->add_subcommand("hoelder", "lacunary Hoelder roof");
    CommonArgs fh_args;
    std::string fh_schedule = "even", fh_delta = "1/10", fh_emit;
    int fh_K = 12, fh_samples = 64;
    fh_cmd->add_option("--alpha", fh_args.alpha)->required();
    fh_cmd->add_option("--schedule", fh_schedule, "'even' or comma list of indices");
    fh_cmd->add_option("--delta", fh_delta);
    fh_cmd->add_option("--K", fh_K, "terms kept in F_s and F_1");
    fh_cmd->add_option("--samples", fh_samples, "grid size for sampling");
    fh_cmd->add_option("--emit", fh_emit, "write x,value_lo,value_hi samples CSV");
    fh_cmd->add_option("--precision", fh_args.precision);
    fh_cmd->add_option("--depth", fh_args.depth);

    // ----- run -----
    auto* run_cmd = app.add_subcommand("run", "run a config file, persist the JSON report");
    std::string run_config;
    run_cmd->add_option("--config", run_config, "config file path")->required();

    // ----- figures -----
    auto* fig_cmd = app.add_subcommand("figures", "emit Phi_beta ergodic-sum figure data");
    CommonArgs fig_args;
    std::string fig_beta, fig_powers = "1,7,21", fig_out = ".";
    bool fig_svg = false, fig_decimal = false, fig_exact = false;
    fig_cmd->add_option("--alpha", fig_args.alpha)->required();
    fig_cmd->add_option("--beta", fig_beta)->required();
    fig_cmd->add_option("--powers", fig_powers);
    fig_cmd->add_option("--out", fig_out, "output directory");
    fig_cmd->add_flag("--svg", fig_svg, "also write SVG step plots");
    fig_cmd->add_flag("--exact", fig_exact, "exact fraction CSV rows (the default)");
    fig_cmd->add_flag("--decimal", fig_decimal, "decimal CSV instead of exact fractions");
    fig_cmd->add_option("--precision", fig_args.precision);
    fig_cmd->add_option("--depth", fig_args.depth);

    // ----- rigidity -----
    auto* rig_cmd = app.add_subcommand("rigidity", "rigidity experiment for f_{a,b}");
    CommonArgs rig_args;
    std::string rig_a = "3", rig_b = "1", rig_times = "denominators:1..6", rig_scan;
    bool rig_json = false;
    rig_cmd->add_option("--alpha", rig_args.alpha)->required();
    rig_cmd->add_option("--a", rig_a);
    rig_cmd->add_option("--b", rig_b);
    rig_cmd->add_option("--times", rig_times, "denominators:n0..n1 or comma list");
    rig_cmd->add_option("--scan", rig_scan, "s0..s1 range scan for min L2 norm");
    rig_cmd->add_flag("--json", rig_json);
    rig_cmd->add_option("--precision", rig_args.precision);
    rig_cmd->add_option("--depth", rig_args.depth);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cf_expand_cmd->parsed()) return run_cf_expand(cf_args, cf_json_flag);

        if (classify_cmd->parsed()) {
            CFExpansion cf = make_cf(dc_args);
            Rat beta = make_beta(dc_beta, dc_args.precision);
            auto rep = classify_coboundary(cf, beta);
            if (dc_json) {
                std::cout << diagnosis_json(rep).dump(2) << "\n";
            } else {
                std::cout << verdict_name(rep.verdict) << "\n" << rep.criterion << "\n";
                for (const auto& t : rep.trail) std::cout << "trail: " << t << "\n";
            }
            return rep.verdict == Verdict::Inconclusive ? 2 : 0;
        }

        if (support_cmd->parsed()) {
            CFExpansion cf = make_cf(ds_args);
            Rat beta = make_beta(ds_beta, ds_args.precision);
            auto ex = support_experiment(cf, beta, ds_n, parse_rational(ds_delta));
            Json j;
            j["L"] = ex.L;
            j["time"] = ex.time.get_str();
            j["c_n"] = rational_json(ex.c_n);
            j["hypotheses_hold"] = ex.hypotheses_hold;
            j["measure_ge_1"] = rational_json(ex.measure_ge_1);
            j["lower_bound"] = rational_json(ex.lower_bound);
            if (ds_json) j["distribution"] = distribution_json(ex.distribution);
            std::cout << j.dump(2) << "\n";
            return 0;
        }

        if (oexp_cmd->parsed()) {
            CFExpansion cf = make_cf(oe_args);
            Rat beta = make_beta(oe_beta, oe_args.precision);
            auto e = ostrowski_expand(cf, beta, cf.validated_depth());
            Json j;
            Json digits = Json::array();
            for (const auto& b : e.coefficients) digits.push_back(b.get_str());
            j["coefficients"] = digits;
            j["residual"] = rational_json(e.residual);
            j["digit_bound_ok"] = e.digit_bound_ok;
            auto sums = condition_checks(cf, e.coefficients);
            j["ostro_sum"] = to_fraction(sums.ostro_sum);
            j["lacunarity_sum"] = to_fraction(sums.lacunarity_sum);
            std::cout << j.dump(2) << "\n";
            return 0;
        }

        if (osyn_cmd->parsed()) {
            CFExpansion cf = make_cf(os_args);
            std::vector<Int> digits;
            std::stringstream ss(os_digits);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) digits.push_back(Int(item, 10));
            Rat beta = synth_beta(cf, digits);
            auto sums = condition_checks(cf, digits);
            Json j;
            j["beta"] = rational_json(beta);
            j["ostro_sum"] = to_fraction(sums.ostro_sum);
            j["lacunarity_sum"] = to_fraction(sums.lacunarity_sum);
            std::cout << j.dump(2) << "\n";
            return 0;
        }

        if (fnorm_cmd->parsed()) {
            if (fn_phi != "F") throw FourierError("only the square wave F is wired to the CLI");
            CFExpansion cf = make_cf(fn_args);
            auto sn = series_norm(FourierSeriesSpec::square_wave(), cf, Int(fn_q), fn_trunc);
            Json j;
            j["norm_sq_lo"] = to_fraction(sn.norm_sq_lo);
            j["norm_sq_hi"] = to_fraction(sn.norm_sq_hi);
            j["norm_sq_lo_decimal"] = to_decimal(sn.norm_sq_lo, 16);
            j["norm_sq_hi_decimal"] = to_decimal(sn.norm_sq_hi, 16);
            j["tail_bound"] = to_decimal(sn.tail_bound, 16);
            std::cout << j.dump(2) << "\n";
            return 0;
        }

        if (fh_cmd->parsed()) {
            // the default even schedule reaches index 2K
            if (fh_args.depth < 2 * fh_K + 1) fh_args.depth = 2 * fh_K + 1;
            CFExpansion cf = make_cf(fh_args);
            auto schedule = parse_schedule(fh_schedule, fh_K);
            auto spec = hoelder_build(cf, schedule, parse_rational(fh_delta), fh_K);
            auto mod = hoelder_modulus(spec, cf, fh_samples);
            Json j;
            j["empirical_C"] = mod.decimal;
            j["worst_x"] = to_fraction(mod.worst_x);
            j["worst_h"] = to_fraction(mod.worst_h);
            if (!fh_emit.empty()) {
                std::ostringstream csv;
                csv << "x,value_lo,value_hi\n";
                for (int i = 0; i <= fh_samples; ++i) {
                    Rat x = Rat(i) / Rat(fh_samples);
                    Interval v = hoelder_eval(spec, cf, x);
                    csv << to_decimal(x, 12) << "," << to_decimal(v.lower(), 16) << ","
                        << to_decimal(v.upper(), 16) << "\n";
                }
                write_file(fh_emit, csv.str());
                j["emitted"] = fh_emit;
            }
            std::cout << j.dump(2) << "\n";
            return 0;
        }

        if (run_cmd->parsed()) {
            std::ifstream in(run_config);
            if (!in) {
                std::cerr << "config error: cannot open " << run_config << "\n";
                return 4;
            }
            std::stringstream buf;
            buf << in.rdbuf();
            ExperimentConfig config;
            try {
                config = ExperimentConfig::from_file(ConfigFile::parse(buf.str()));
            } catch (const std::exception& e) {
                std::cerr << "config error: " << e.what() << "\n";
                return 4;
            }
            auto outcome = run_report(config);
            write_report(outcome, config);
            std::cout << config.output_dir << "/" << config.report_name << "\n";
            return outcome.exit_code;
        }

        if (fig_cmd->parsed()) {
            CFExpansion cf = make_cf(fig_args);
            Rat beta = make_beta(fig_beta, fig_args.precision);
            if (fig_decimal && fig_exact) throw ConfigError("--exact and --decimal conflict");
            ExperimentConfig config;
            config.exact_csv = !fig_decimal;
            config.figures_svg = fig_svg;
            std::vector<long> powers;
            std::stringstream ss(fig_powers);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) powers.push_back(std::stol(item));
            auto figs = figure_emit(config, cf, beta, powers, fig_out);
            for (const auto& f : figs.files) std::cout << f << "\n";
            return 0;
        }

        if (rig_cmd->parsed()) {
            CFExpansion cf = make_cf(rig_args);
            auto times = parse_times(rig_times, cf);
            std::optional<std::pair<long, long>> scan;
            if (!rig_scan.empty()) {
                auto dots = rig_scan.find("..");
                if (dots == std::string::npos) throw ConfigError("scan expects s0..s1");
                scan = {std::stol(rig_scan.substr(0, dots)), std::stol(rig_scan.substr(dots + 2))};
            }
            auto rep = rigidity_experiment(parse_rational(rig_a), parse_rational(rig_b), cf,
                                           times, scan);
            Json j;
            j["centered_is_square_wave"] = rep.centered_is_square_wave;
            Json entries = Json::array();
            for (const auto& e : rep.entries) {
                Json en;
                en["time"] = e.time.get_str();
                en["time_alpha_dist"] = to_decimal(e.time_alpha_dist, 20);
                en["l2_norm_sq"] = to_fraction(e.l2_norm_sq);
                en["half_law_checked"] = e.half_law_checked;
                en["even_bound_checked"] = e.even_bound_checked;
                if (rig_json) en["distribution"] = distribution_json(e.distribution);
                entries.push_back(en);
            }
            j["entries"] = entries;
            if (rep.min_norm_sq_on_range) {
                j["min_norm_sq_on_range"] = to_fraction(*rep.min_norm_sq_on_range);
                j["min_norm_argmin"] = rep.min_norm_argmin->get_str();
            }
            std::cout << j.dump(2) << "\n";
            return 0;
        }
    } catch (const StepBudgetError& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
