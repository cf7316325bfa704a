#include "alrates/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "alrates/rate_fit.hpp"
#include "alrates/rng.hpp"

namespace alrates {

using nlohmann::json;

namespace {

json bound_to_json(const BoundConfig& b) {
    return json{{"k_hat", b.k_hat},     {"c_hat", b.c_hat},
                {"k_tilde", b.k_tilde}, {"c_tilde", b.c_tilde},
                {"j_min", b.j_min},     {"prefix_shrink", b.prefix_shrink},
                {"tilde_outer", b.tilde_outer}, {"rademacher_seed", b.rademacher_seed}};
}

BoundConfig bound_from_json(const json& j) {
    BoundConfig b;
    if (j.contains("k_hat")) b.k_hat = j["k_hat"];
    if (j.contains("c_hat")) b.c_hat = j["c_hat"];
    if (j.contains("k_tilde")) b.k_tilde = j["k_tilde"];
    if (j.contains("c_tilde")) b.c_tilde = j["c_tilde"];
    if (j.contains("j_min")) b.j_min = j["j_min"];
    if (j.contains("prefix_shrink")) b.prefix_shrink = j["prefix_shrink"];
    if (j.contains("tilde_outer")) b.tilde_outer = j["tilde_outer"];
    if (j.contains("rademacher_seed")) b.rademacher_seed = j["rademacher_seed"];
    return b;
}

}  // namespace

std::string TraceRecipe::to_json() const {
    json j;
    j["algorithm"] = algorithm;
    if (problem) j["problem"] = json::parse(problem->to_config());
    if (!points.empty()) {
        j["points"] = points;
        j["labels"] = labels;
    }
    j["seed"] = seed;
    j["budget"] = budget;
    j["unlabeled_cap"] = unlabeled_cap;
    j["class"] = class_kind;
    if (class_kind == "threshold_grid" || class_kind == "interval_grid")
        j["grid_size"] = grid_size;
    if (class_kind == "members") j["member_params"] = member_params;
    if (!structure.empty()) j["structure"] = structure;
    j["delta"] = delta;
    j["threshold_rule"] = threshold_rule;
    j["bound"] = bound_to_json(bound);
    j["recompute_growth"] = recompute_growth;
    j["exact_below"] = exact_below;
    j["trace_inferences"] = trace_inferences;
    j["g_scale"] = g_scale;
    j["mass_mode"] = mass_mode;
    return j.dump();
}

TraceRecipe TraceRecipe::from_json(const std::string& text) {
    json j = json::parse(text);
    TraceRecipe r;
    r.algorithm = j.at("algorithm");
    if (j.contains("problem")) r.problem = NoiseProblem::from_config(j["problem"].dump());
    if (j.contains("points")) {
        r.points = j["points"].get<std::vector<double>>();
        r.labels = j["labels"].get<std::vector<int>>();
    }
    r.seed = j.at("seed");
    r.budget = j.at("budget");
    r.unlabeled_cap = j.value("unlabeled_cap", std::uint64_t{1000000});
    r.class_kind = j.value("class", std::string("threshold"));
    r.grid_size = j.value("grid_size", std::uint64_t{4096});
    if (j.contains("member_params"))
        r.member_params = j["member_params"].get<std::vector<double>>();
    if (j.contains("structure")) r.structure = j["structure"].get<std::vector<std::string>>();
    r.delta = j.value("delta", 0.05);
    r.threshold_rule = j.value("threshold_rule", std::string("rademacher"));
    if (j.contains("bound")) r.bound = bound_from_json(j["bound"]);
    r.recompute_growth = j.value("recompute_growth", 1.2);
    r.exact_below = j.value("exact_below", std::uint64_t{64});
    r.trace_inferences = j.value("trace_inferences", false);
    r.g_scale = j.value("g_scale", 1.0);
    r.mass_mode = j.value("mass_mode", std::string("exact"));
    return r;
}

HypothesisClass make_class(const TraceRecipe& r, std::size_t structure_pos) {
    std::string kind = r.class_kind;
    if (!r.structure.empty() && structure_pos < r.structure.size())
        kind = r.structure[structure_pos];
    if (kind == "threshold") return HypothesisClass::thresholds();
    if (kind == "interval") return HypothesisClass::intervals();
    if (kind == "threshold_grid") return HypothesisClass::threshold_grid(r.grid_size);
    if (kind == "interval_grid") return HypothesisClass::interval_grid(r.grid_size);
    if (kind == "members") {
        std::vector<Hypothesis> mem;
        for (double z : r.member_params) mem.push_back(Hypothesis::threshold(z));
        return HypothesisClass::from_members(std::move(mem), 1);
    }
    throw std::invalid_argument("unknown class kind: " + kind);
}

namespace {

LabeledStream make_stream(const TraceRecipe& r) {
    if (!r.points.empty()) {
        PointBuffer xs(1);
        for (double x : r.points) xs.push_back1(x);
        std::vector<Label> ys(r.labels.begin(), r.labels.end());
        return LabeledStream::from_points(std::move(xs), std::move(ys), r.budget);
    }
    if (!r.problem) throw std::invalid_argument("recipe needs a problem or explicit points");
    return LabeledStream(*r.problem, r.seed, r.budget);
}

}  // namespace

AlgoResult execute(const TraceRecipe& r) {
    LabeledStream stream = make_stream(r);
    Marginal marginal = r.problem ? r.problem->marginal : Marginal::uniform01();
    AlgoResult res;
    if (r.algorithm == "cal") {
        HypothesisClass C = make_class(r);
        res = cal(C, stream, r.budget, r.unlabeled_cap, marginal);
    } else if (r.algorithm == "a2") {
        HypothesisClass C = make_class(r);
        A2Options opt;
        opt.delta = r.delta;
        opt.g_scale = r.g_scale;
        opt.mass_mode = r.mass_mode == "mc" ? A2Options::MassMode::monte_carlo
                                            : A2Options::MassMode::exact;
        opt.unlabeled_cap = r.unlabeled_cap;
        res = a2(C, stream, r.budget, opt, marginal);
    } else if (r.algorithm == "dhm") {
        HypothesisClass C = make_class(r);
        DhmOptions opt;
        opt.delta = r.delta;
        opt.threshold_kind = r.threshold_rule == "shatter" ? DhmOptions::Threshold::shatter
                                                           : DhmOptions::Threshold::rademacher;
        opt.bound = r.bound;
        opt.unlabeled_cap = r.unlabeled_cap;
        opt.recompute_growth = r.recompute_growth;
        opt.exact_below = r.exact_below;
        opt.trace_inferences = r.trace_inferences;
        res = dhm(C, stream, r.budget, opt);
    } else if (r.algorithm == "model_select") {
        std::vector<HypothesisClass> owned;
        owned.reserve(r.structure.size());
        for (std::size_t i = 0; i < r.structure.size(); ++i) owned.push_back(make_class(r, i));
        std::vector<const HypothesisClass*> ptrs;
        for (auto& c : owned) ptrs.push_back(&c);
        std::vector<double> probe;
        for (int k = 1; k <= 32; ++k) probe.push_back(k / 33.0);
        NestedStructure st = NestedStructure::verified(ptrs, probe);
        DhmOptions opt;
        opt.delta = r.delta;
        opt.bound = r.bound;
        opt.unlabeled_cap = r.unlabeled_cap;
        opt.recompute_growth = r.recompute_growth;
        opt.exact_below = r.exact_below;
        res = model_select(st, stream, r.budget, opt);
    } else if (r.algorithm == "passive") {
        HypothesisClass C = make_class(r);
        res = passive_erm(C, stream, r.budget);
    } else {
        throw std::invalid_argument("unknown algorithm: " + r.algorithm);
    }
    res.trace.config_json = r.to_json();
    return res;
}

std::string replay_trace(const std::string& trace_text) {
    auto pos = trace_text.find("#config=");
    if (pos == std::string::npos) return "trace has no config header";
    auto eol = trace_text.find('\n', pos);
    std::string cfg = trace_text.substr(pos + 8, eol - pos - 8);
    TraceRecipe recipe = TraceRecipe::from_json(cfg);
    AlgoResult res = execute(recipe);
    std::string again = res.trace.serialize();
    if (again == trace_text) return "";
    // locate the first differing line for the report
    std::istringstream a(trace_text), b(again);
    std::string la, lb;
    std::size_t line = 0;
    while (true) {
        bool ga = static_cast<bool>(std::getline(a, la));
        bool gb = static_cast<bool>(std::getline(b, lb));
        ++line;
        if (!ga && !gb) break;
        if (la != lb || ga != gb)
            return "divergence at line " + std::to_string(line) + ": '" + la + "' vs '" + lb + "'";
    }
    return "traces differ in length";
}

// ---------------------------------------------------------------------------

std::string ExperimentConfig::to_json() const {
    json j;
    j["recipe"] = json::parse(recipe.to_json());
    j["budgets"] = budgets;
    j["trials"] = trials;
    j["base_seed"] = base_seed;
    j["label"] = label;
    if (!output_csv.empty()) j["output_csv"] = output_csv;
    if (!output_report.empty()) j["output_report"] = output_report;
    return j.dump(2);
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
    json j = json::parse(text);
    ExperimentConfig c;
    c.recipe = TraceRecipe::from_json(j.at("recipe").dump());
    c.budgets = j.at("budgets").get<std::vector<std::uint64_t>>();
    c.trials = j.at("trials");
    c.base_seed = j.at("base_seed");
    c.label = j.value("label", c.recipe.algorithm);
    c.output_csv = j.value("output_csv", std::string());
    c.output_report = j.value("output_report", std::string());
    return c;
}

void ExperimentConfig::validate() const {
    if (budgets.empty()) throw std::invalid_argument("config needs at least one budget");
    for (std::size_t i = 0; i + 1 < budgets.size(); ++i)
        if (budgets[i] >= budgets[i + 1])
            throw std::invalid_argument("budget grid must strictly increase");
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
}

namespace {

TrialRecord run_trial(const ExperimentConfig& cfg, double nu, std::uint64_t budget,
                      std::uint64_t trial) {
    TrialRecord rec;
    rec.budget = budget;
    rec.trial = trial;
    rec.seed = trial_seed(cfg.base_seed, budget, trial);
    TraceRecipe r = cfg.recipe;
    r.budget = budget;
    r.seed = rec.seed;
    auto t0 = std::chrono::steady_clock::now();
    try {
        AlgoResult res = execute(r);
        rec.ok = res.ok;
        if (res.ok) rec.excess_error = std::max(r.problem->true_error(res.h) - nu, 0.0);
        rec.labels_used = res.trace.labels_used;
        rec.unlabeled_used = res.trace.unlabeled_used;
    } catch (const std::exception&) {
        rec.ok = false;
    }
    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                      .count();
    return rec;
}

void fill_stats(LearningCurve& curve, const std::vector<std::uint64_t>& budgets) {
    auto quantile = [](std::vector<double>& v, double q) {
        if (v.empty()) return 0.0;
        std::sort(v.begin(), v.end());
        double pos = q * (v.size() - 1);
        std::size_t i = static_cast<std::size_t>(pos);
        double frac = pos - i;
        return i + 1 < v.size() ? v[i] * (1 - frac) + v[i + 1] * frac : v[i];
    };
    for (std::uint64_t b : budgets) {
        std::vector<double> vals;
        for (const auto& r : curve.records)
            if (r.budget == b && r.ok) vals.push_back(r.excess_error);
        BudgetStat st;
        st.budget = b;
        st.ok_count = vals.size();
        std::vector<double> tmp = vals;
        st.median = quantile(tmp, 0.5);
        tmp = vals;
        st.q25 = quantile(tmp, 0.25);
        tmp = vals;
        st.q75 = quantile(tmp, 0.75);
        curve.stats.push_back(st);
    }
}

}  // namespace

LearningCurve run_experiment(const ExperimentConfig& cfg, ExecPolicy policy) {
    cfg.validate();
    if (!cfg.recipe.problem)
        throw std::invalid_argument("experiments need a generative problem");
    LearningCurve curve;
    curve.algorithm_label = cfg.label.empty() ? cfg.recipe.algorithm : cfg.label;

    // class-relative noise rate for the excess-error reference
    HypothesisClass eval_class =
        cfg.recipe.structure.empty()
            ? make_class(cfg.recipe)
            : make_class(cfg.recipe, cfg.recipe.structure.size() - 1);
    double nu = cfg.recipe.problem->class_noise_rate(eval_class);

    std::vector<std::pair<std::uint64_t, std::uint64_t>> jobs;
    for (std::uint64_t b : cfg.budgets)
        for (std::uint64_t t = 0; t < cfg.trials; ++t) jobs.emplace_back(b, t);
    curve.records.resize(jobs.size());

    if (policy == ExecPolicy::serial) {
        for (std::size_t i = 0; i < jobs.size(); ++i)
            curve.records[i] = run_trial(cfg, nu, jobs[i].first, jobs[i].second);
    } else {
        std::int64_t nj = static_cast<std::int64_t>(jobs.size());
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t i = 0; i < nj; ++i)
            curve.records[i] = run_trial(cfg, nu, jobs[i].first, jobs[i].second);
    }
    fill_stats(curve, cfg.budgets);
    return curve;
}

std::string curve_to_csv(const LearningCurve& c) {
    std::string out = "algorithm,n,trial,excess_error,labels_used,unlabeled_used,seed\n";
    char buf[64];
    for (const auto& r : c.records) {
        out += c.algorithm_label;
        out += ',';
        out += std::to_string(r.budget);
        out += ',';
        out += std::to_string(r.trial);
        out += ',';
        if (r.ok) {
            std::snprintf(buf, sizeof buf, "%.17g", r.excess_error);
            out += buf;
        } else {
            out += "failed";
        }
        out += ',';
        out += std::to_string(r.labels_used);
        out += ',';
        out += std::to_string(r.unlabeled_used);
        out += ',';
        out += std::to_string(r.seed);
        out += '\n';
    }
    return out;
}

std::string render_report(const std::vector<LearningCurve>& curves,
                          const std::vector<RateFit>& fits,
                          const std::vector<double>& predicted_slopes) {
    std::ostringstream os;
    os << "algorithm            model        slope     [boot 2.5%, 97.5%]    R^2      predicted\n";
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const LearningCurve& c = curves[i];
        char line[200];
        if (i < fits.size() && fits[i].ok) {
            const RateFit& f = fits[i];
            std::snprintf(line, sizeof line, "%-20s %-12s %+.4f   [%+.4f, %+.4f]   %.4f   %s\n",
                          c.algorithm_label.c_str(),
                          f.model == RateFit::Model::power_law ? "power-law" : "exponential",
                          f.slope, f.boot_lo, f.boot_hi, f.r2,
                          i < predicted_slopes.size() && std::isfinite(predicted_slopes[i])
                              ? (std::string("slope ") + std::to_string(predicted_slopes[i]))
                                    .c_str()
                              : "-");
        } else {
            std::snprintf(line, sizeof line, "%-20s (fit unavailable: %s)\n",
                          c.algorithm_label.c_str(),
                          i < fits.size() ? fits[i].note.c_str() : "not fitted");
        }
        os << line;
        for (const auto& st : c.stats) {
            char row[160];
            std::snprintf(row, sizeof row,
                          "    n=%-8llu median=%.6g  iqr=[%.6g, %.6g]  ok=%llu\n",
                          static_cast<unsigned long long>(st.budget), st.median, st.q25, st.q75,
                          static_cast<unsigned long long>(st.ok_count));
            os << row;
        }
    }
    return os.str();
}

LearningCurve run_and_emit(const ExperimentConfig& cfg, ExecPolicy policy) {
    LearningCurve curve = run_experiment(cfg, policy);
    if (!cfg.output_csv.empty()) {
        std::ofstream f(cfg.output_csv, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + cfg.output_csv);
        f << curve_to_csv(curve);
    }
    if (!cfg.output_report.empty()) {
        RateFit pw = fit_rate(curve, RateFit::Model::power_law);
        RateFit ex = fit_rate(curve, RateFit::Model::exponential);
        std::ofstream f(cfg.output_report, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + cfg.output_report);
        f << render_report({curve, curve}, {pw, ex}, {});
    }
    return curve;
}

}  // namespace alrates
