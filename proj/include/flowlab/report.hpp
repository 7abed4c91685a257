#pragma once

// Experiment configuration and the persisted JSON report. Config files are
// flat key-value text with [section] headers; all numbers are exact fractions
// or named constants, so a config pins its results bit for bit. Reports carry
// the schema tag flowlab-report/1 and are byte-identical across runs of the
// same tool version on the same config.

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "flowlab/continued_fraction.hpp"
#include "flowlab/diagnostics.hpp"
#include "flowlab/emit.hpp"
#include "flowlab/flow.hpp"
#include "flowlab/ostrowski.hpp"

namespace flowlab {

inline constexpr const char* kToolVersion = "flowlab 1.0.0";
inline constexpr const char* kReportSchema = "flowlab-report/1";

using Json = nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigFile {
    // section -> key -> (value, line number)
    std::map<std::string, std::map<std::string, std::pair<std::string, int>>> sections;
    std::vector<std::pair<std::string, std::string>> ordered_entries;  // "section.key" -> value

    static ConfigFile parse(const std::string& text) {
        ConfigFile cfg;
        std::istringstream in(text);
        std::string line, section;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            auto trim = [](std::string s) {
                size_t a = s.find_first_not_of(" \t\r");
                if (a == std::string::npos) return std::string();
                size_t b = s.find_last_not_of(" \t\r");
                return s.substr(a, b - a + 1);
            };
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']')
                    throw ConfigError("line " + std::to_string(lineno) + ": unterminated section");
                section = trim(line.substr(1, line.size() - 2));
                continue;
            }
            auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
            std::string key = trim(line.substr(0, eq));
            std::string value = trim(line.substr(eq + 1));
            if (key.empty())
                throw ConfigError("line " + std::to_string(lineno) + ": empty key");
            cfg.sections[section][key] = {value, lineno};
            cfg.ordered_entries.emplace_back(section + "." + key, value);
        }
        return cfg;
    }

    std::optional<std::string> get(const std::string& section, const std::string& key) const {
        auto s = sections.find(section);
        if (s == sections.end()) return std::nullopt;
        auto k = s->second.find(key);
        if (k == s->second.end()) return std::nullopt;
        return k->second.first;
    }
    std::string require(const std::string& section, const std::string& key) const {
        auto v = get(section, key);
        if (!v) throw ConfigError("missing [" + section + "] " + key);
        return *v;
    }
};

struct ExperimentConfig {
    ValueSpec alpha_spec;
    std::string alpha_text;
    unsigned precision_bits = 256;
    int depth = 12;
    std::optional<ValueSpec> beta_spec;
    std::string beta_text;
    Rat roof_a = Rat(3), roof_b = Rat(1);
    long breakpoint_budget = 10'000'000;
    // tasks
    bool task_classify = false;
    std::vector<std::string> rigidity_times;  // raw specs like denominators:2..8
    std::optional<std::pair<long, long>> rigidity_scan;
    std::vector<long> figure_powers;
    bool figures_svg = false;
    bool exact_csv = true;
    std::string output_dir = ".";
    std::string report_name = "report.json";

    bool mainthm_roof() const { return roof_a - roof_b == 2; }

    static ExperimentConfig from_file(const ConfigFile& cfg) {
        ExperimentConfig ec;
        ec.alpha_text = cfg.require("alpha", "spec");
        ec.alpha_spec = ValueSpec::parse(ec.alpha_text);
        if (auto p = cfg.get("alpha", "precision")) ec.precision_bits = std::stoul(*p);
        if (auto d = cfg.get("alpha", "depth")) ec.depth = std::stoi(*d);
        if (auto b = cfg.get("beta", "spec")) {
            ec.beta_text = *b;
            ec.beta_spec = ValueSpec::parse(*b);
        }
        if (auto a = cfg.get("roof", "a")) ec.roof_a = parse_rational(*a);
        if (auto b = cfg.get("roof", "b")) ec.roof_b = parse_rational(*b);
        if (ec.roof_a <= 0 || ec.roof_b <= 0) throw ConfigError("[roof] a, b must be positive");
        if (auto v = cfg.get("budgets", "breakpoints")) ec.breakpoint_budget = std::stol(*v);
        if (auto c = cfg.get("tasks", "classify")) ec.task_classify = (*c == "true" || *c == "1");
        if (auto t = cfg.get("tasks", "rigidity_times")) ec.rigidity_times.push_back(*t);
        if (auto s = cfg.get("tasks", "rigidity_scan")) {
            auto dots = s->find("..");
            if (dots == std::string::npos) throw ConfigError("rigidity_scan expects s0..s1");
            ec.rigidity_scan = {std::stol(s->substr(0, dots)), std::stol(s->substr(dots + 2))};
        }
        if (auto f = cfg.get("tasks", "figures_powers")) {
            std::stringstream ss(*f);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) ec.figure_powers.push_back(std::stol(item));
        }
        if (auto v = cfg.get("tasks", "figures_svg")) ec.figures_svg = (*v == "true" || *v == "1");
        if (auto o = cfg.get("output", "dir")) ec.output_dir = *o;
        if (auto r = cfg.get("output", "report")) ec.report_name = *r;
        if (auto e = cfg.get("output", "exact")) ec.exact_csv = (*e == "true" || *e == "1");
        return ec;
    }
};

// resolve a beta spec against a continued fraction expansion of alpha
inline Rat resolve_beta(const ValueSpec& spec, unsigned bits) {
    if (auto* n = std::get_if<ValueSpec::Named>(&spec.v)) return named_constant(n->name, bits);
    if (auto* e = std::get_if<ValueSpec::Exact>(&spec.v)) return frac(e->value);
    const auto& q = std::get<ValueSpec::Quotients>(spec.v).a;
    return CFExpansion::from_quotients(q, static_cast<int>(q.size())).approximant();
}

// times spec: "denominators:2..8" or a comma list of integers
inline std::vector<Int> parse_times(const std::string& spec, const CFExpansion& cf) {
    std::vector<Int> out;
    const std::string prefix = "denominators:";
    if (spec.rfind(prefix, 0) == 0) {
        std::string range = spec.substr(prefix.size());
        auto dots = range.find("..");
        if (dots == std::string::npos) throw ConfigError("denominators spec expects n0..n1");
        int n0 = std::stoi(range.substr(0, dots));
        int n1 = std::stoi(range.substr(dots + 2));
        if (n0 < 0 || n1 < n0 || n1 > cf.validated_depth())
            throw ConfigError("denominator range outside validated depth");
        for (int n = n0; n <= n1; ++n) out.push_back(cf.den(n));
        return out;
    }
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(Int(item, 10));
    if (out.empty()) throw ConfigError("empty times spec");
    return out;
}

// ---------------------------------------------------------------------------
// JSON rendering

inline Json rational_json(const Rat& x) {
    Json j;
    j["fraction"] = to_fraction(x);
    j["decimal"] = to_decimal(x, 24);
    return j;
}

inline Json distribution_json(const DistributionTable& t) {
    Json j = Json::array();
    for (const auto& [v, m] : t.entries) {
        Json e;
        e["value"] = to_fraction(v);
        e["measure"] = to_fraction(m);
        j.push_back(e);
    }
    return j;
}

inline Json diagnosis_json(const DiagnosisReport& rep) {
    Json j;
    j["verdict"] = verdict_name(rep.verdict);
    j["criterion"] = rep.criterion;
    Json ev = Json::array();
    for (const auto& e : rep.evidence) {
        Json r;
        r["n"] = e.n;
        r["q_n"] = e.q_n.get_str();
        r["q_parity"] = e.q_odd ? "odd" : "even";
        r["qn_beta_dist"] = rational_json(e.qn_beta_dist);
        r["c_n"] = rational_json(e.c_n);
        r["note"] = e.note;
        ev.push_back(r);
    }
    j["evidence"] = ev;
    j["trail"] = rep.trail;
    j["budget_used"] = rep.budget_used;
    return j;
}

inline Json cf_json(const CFExpansion& cf, bool include_convergents = true) {
    Json j;
    j["precision_bits"] = cf.precision_bits();
    j["validated_depth"] = cf.validated_depth();
    Json quot = Json::array();
    for (int n = 1; n <= cf.validated_depth(); ++n) quot.push_back(cf.quotient(n).get_str());
    j["partial_quotients"] = quot;
    if (include_convergents) {
        Json conv = Json::array();
        for (int n = 0; n <= cf.validated_depth(); ++n) {
            Json c;
            c["n"] = n;
            c["p"] = cf.num(n).get_str();
            c["q"] = cf.den(n).get_str();
            c["decimal"] = to_decimal(rat(cf.num(n), cf.den(n)), 24);
            conv.push_back(c);
        }
        j["convergents"] = conv;
    }
    return j;
}

// ---------------------------------------------------------------------------
// figure emission

struct FigureOutput {
    std::vector<std::string> files;
    std::vector<size_t> discontinuity_counts;
};

// one CSV per power with the exact rows of Phi_beta^(power), a grid CSV of
// the lines A_k = k/q_1, and optional SVG renderings; whenever two powers
// p | P are both requested, the cocycle identity
// Phi^(P) = sum_i Phi^(p)(. + i p alpha) is asserted exactly before writing
inline FigureOutput figure_emit(const ExperimentConfig& config, const CFExpansion& cf,
                                const Rat& beta, const std::vector<long>& powers,
                                const std::string& out_dir) {
    namespace fs = std::filesystem;
    FigureOutput out;
    fs::create_directories(out_dir);
    StepFunction phi = StepFunction::phi_beta(beta);
    std::map<long, StepFunction> sums;
    for (long p : powers)
        sums[p] = phi.ergodic_sum(cf.approximant(), p, config.breakpoint_budget);
    for (long p : powers) {
        for (long small : powers) {
            if (small <= 0 || small >= p || p % small != 0) continue;
            StepFunction recomposed;
            for (long i = 0; i < p / small; ++i)
                recomposed = recomposed +
                             sums[small].rotate(Rat(i) * Rat(small) * cf.approximant());
            if (!(recomposed == sums[p]))
                throw std::logic_error("cocycle identity failed between powers " +
                                       std::to_string(small) + " and " + std::to_string(p));
        }
    }
    for (long p : powers) {
        std::string path = out_dir + "/phi_" + std::to_string(p) + ".csv";
        write_file(path, step_csv(sums[p], config.exact_csv));
        out.files.push_back(path);
        out.discontinuity_counts.push_back(sums[p].discontinuities().size());
        if (config.figures_svg) {
            std::string svg_path = out_dir + "/phi_" + std::to_string(p) + ".svg";
            write_file(svg_path, step_svg(sums[p], cf.den(1)));
            out.files.push_back(svg_path);
        }
    }
    std::string grid_path = out_dir + "/grid.csv";
    write_file(grid_path, grid_csv(cf.den(1)));
    out.files.push_back(grid_path);
    return out;
}

// ---------------------------------------------------------------------------
// run_report: the orchestrating driver

struct RunOutcome {
    Json report;
    int exit_code = 0;  // 0 ok, 2 inconclusive-only, 3 budget exhausted
};

inline RunOutcome run_report(const ExperimentConfig& config) {
    namespace fs = std::filesystem;
    RunOutcome out;
    Json& j = out.report;
    j["schema"] = kReportSchema;
    j["tool"] = kToolVersion;
    Json cfg_echo;
    cfg_echo["alpha"] = config.alpha_text;
    cfg_echo["precision_bits"] = config.precision_bits;
    cfg_echo["depth"] = config.depth;
    cfg_echo["beta"] = config.beta_text;
    cfg_echo["roof_a"] = to_fraction(config.roof_a);
    cfg_echo["roof_b"] = to_fraction(config.roof_b);
    cfg_echo["mainthm_roof"] = config.mainthm_roof();
    j["config"] = cfg_echo;

    CFExpansion cf = cf_expand(config.alpha_spec, config.precision_bits, config.depth);
    j["alpha"] = cf_json(cf, false);

    bool any_inconclusive = false, any_verdict = false, budget_exhausted = false;

    std::optional<Rat> beta;
    if (config.beta_spec) {
        beta = resolve_beta(*config.beta_spec, config.precision_bits);
        j["beta_value"] = rational_json(*beta);
    }

    if (config.task_classify) {
        if (!beta) throw ConfigError("classify task requires [beta] spec");
        ClassifyBudget budget;
        budget.breakpoint_budget = config.breakpoint_budget;
        auto rep = classify_coboundary(cf, *beta, budget);
        j["classify"] = diagnosis_json(rep);
        any_verdict = true;
        if (rep.verdict == Verdict::Inconclusive) any_inconclusive = true;
    }

    if (!config.rigidity_times.empty() || config.rigidity_scan) {
        std::vector<Int> times;
        for (const auto& spec : config.rigidity_times) {
            auto t = parse_times(spec, cf);
            times.insert(times.end(), t.begin(), t.end());
        }
        try {
            auto rep = rigidity_experiment(config.roof_a, config.roof_b, cf, times,
                                           config.rigidity_scan, config.breakpoint_budget);
            Json r;
            r["centered_is_square_wave"] = rep.centered_is_square_wave;
            Json entries = Json::array();
            for (const auto& e : rep.entries) {
                Json en;
                en["time"] = e.time.get_str();
                en["time_alpha_dist"] = rational_json(e.time_alpha_dist);
                en["l2_norm_sq"] = rational_json(e.l2_norm_sq);
                en["distribution"] = distribution_json(e.distribution);
                if (e.denominator_index) en["denominator_index"] = *e.denominator_index;
                en["half_law_checked"] = e.half_law_checked;
                en["even_bound_checked"] = e.even_bound_checked;
                entries.push_back(en);
            }
            r["entries"] = entries;
            if (rep.min_norm_sq_on_range) {
                r["min_norm_sq_on_range"] = rational_json(*rep.min_norm_sq_on_range);
                r["min_norm_argmin"] = rep.min_norm_argmin->get_str();
            }
            j["rigidity"] = r;
            any_verdict = true;
        } catch (const StepBudgetError& e) {
            j["rigidity"] = Json{{"error", e.what()}};
            budget_exhausted = true;
        }
    }

    if (!config.figure_powers.empty()) {
        if (!beta) throw ConfigError("figures task requires [beta] spec");
        try {
            auto figs = figure_emit(config, cf, *beta, config.figure_powers, config.output_dir);
            Json f;
            f["files"] = figs.files;
            f["discontinuity_counts"] = figs.discontinuity_counts;
            j["figures"] = f;
            any_verdict = true;
        } catch (const StepBudgetError& e) {
            j["figures"] = Json{{"error", e.what()}};
            budget_exhausted = true;
        }
    }

    if (budget_exhausted) out.exit_code = 3;
    else if (any_verdict && any_inconclusive &&
             !j.contains("rigidity") && !j.contains("figures"))
        out.exit_code = 2;
    return out;
}

inline void write_report(const RunOutcome& outcome, const ExperimentConfig& config) {
    namespace fs = std::filesystem;
    fs::create_directories(config.output_dir);
    write_file(config.output_dir + "/" + config.report_name, outcome.report.dump(2) + "\n");
}

}  // namespace flowlab
