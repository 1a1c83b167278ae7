#include "dmf/cli.hpp"

#include "dmf/analysis.hpp"
#include "dmf/engine.hpp"
#include "dmf/kernels.hpp"
#include "dmf/plan.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace dmf::cli {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt(const Rational& v) { return fmt(to_double(v)); }

const char* yesno(bool b) { return b ? "yes" : "no"; }

// Search-space guard for the exhaustive commands.
constexpr int kMaxSignAccuracy = 24;
constexpr int kMaxSkipAccuracy = 14;

void check_search_space(const Command& cmd, int accuracy) {
    const int cap = cmd.include_skip ? kMaxSkipAccuracy : kMaxSignAccuracy;
    if (accuracy <= cap || cmd.force) return;
    const int k = accuracy - 1;
    const double vectors = std::pow(cmd.include_skip ? 3.0 : 2.0, k);
    std::ostringstream msg;
    msg << "refusing accuracy " << accuracy << " without --force: "
        << fmt(vectors) << " error vectors of length " << k
        << " would be simulated exhaustively";
    throw UsageError(msg.str());
}

MixSplitPlan load_plan(const Command& cmd) {
    if (cmd.plan_file) {
        std::ifstream in(*cmd.plan_file);
        if (!in) throw std::ios_base::failure("cannot open " + *cmd.plan_file);
        std::ostringstream text;
        text << in.rdbuf();
        return plan_from_json(text.str());
    }
    if (!cmd.target) throw UsageError("--target or --plan-file is required");
    return build_plan(*cmd.target);
}

ErrorVector vector_for(const Command& cmd, const MixSplitPlan& plan) {
    const int length = plan.op_count() - 1;
    if (cmd.vector_text.empty()) return ErrorVector::all_skip(length, cmd.epsilon);
    ErrorVector ev = ErrorVector::parse(cmd.vector_text, cmd.epsilon);
    if (ev.entries.size() != static_cast<std::size_t>(length))
        throw UsageError("--vector must have length " + std::to_string(length) +
                         " (accuracy - 1)");
    return ev;
}

template <class S>
std::optional<S> tolerance_for(const Command& cmd) {
    if (!cmd.tolerance_text) return std::nullopt;
    const Rational tol = parse_decimal(*cmd.tolerance_text);
    if (tol <= 0) throw UsageError("--tolerance must be positive");
    if constexpr (std::is_same_v<S, double>)
        return to_double(tol);
    else
        return tol;
}

void run_plan(const Command& cmd, std::ostream& out) {
    const MixSplitPlan plan = load_plan(cmd);
    if (cmd.format == Format::Dot)
        out << plan_to_dot(plan);
    else
        out << plan_to_json(plan) << "\n";
}

template <class S>
void run_simulate(const Command& cmd, std::ostream& out) {
    const MixSplitPlan plan = load_plan(cmd);
    const ErrorVector ev = vector_for(cmd, plan);
    const auto result = simulate<S>(plan, ev);

    if (cmd.format == Format::Csv) {
        out << "op,cf,total_volume,kept_volume,disposition\n";
        for (const auto& step : result.trace) {
            const char d = step.op_index < plan.op_count()
                               ? disposition_char(ev.entries[step.op_index - 1])
                               : '0';
            out << step.op_index << ',' << fmt(step.post_mix.concentration) << ','
                << fmt(step.post_mix.volume) << ',' << fmt(step.kept.volume) << ','
                << d << "\n";
        }
        return;
    }

    nlohmann::json trace = nlohmann::json::array();
    for (const auto& step : result.trace) {
        const char d = step.op_index < plan.op_count()
                           ? disposition_char(ev.entries[step.op_index - 1])
                           : '0';
        trace.push_back({{"op", step.op_index},
                         {"cf", to_double(step.post_mix.concentration)},
                         {"total_volume", to_double(step.post_mix.volume)},
                         {"kept_volume", to_double(step.kept.volume)},
                         {"disposition", std::string(1, d)}});
    }
    const nlohmann::json j{{"target", plan.target.str()},
                           {"epsilon", ev.epsilon.as<double>()},
                           {"vector", ev.str()},
                           {"produced_cf", to_double(result.produced_cf)},
                           {"cf_error", to_double(result.cf_error)},
                           {"scaled_error", to_double(result.scaled_error)},
                           {"final_volume", to_double(result.final_volume)},
                           {"trace", trace}};
    out << j.dump(2) << "\n";
}

template <class S>
void run_enumerate(const Command& cmd, std::ostream& out, std::ostream& diag) {
    const MixSplitPlan plan = load_plan(cmd);
    std::vector<int> positions = cmd.positions;
    if (positions.empty())
        positions = detail::full_positions(plan.op_count() - 1);
    if (positions.size() == static_cast<std::size_t>(plan.op_count() - 1))
        check_search_space(cmd, plan.target.accuracy);

    const auto rows = enumerate_vectors<S>(plan, cmd.epsilon, positions,
                                           cmd.include_skip, tolerance_for<S>(cmd));
    const double scale = pow2<double>(plan.target.accuracy);

    out << "vector,gray_position,produced_cf_x2n,cf_error_x2n,abs_error_x2n,"
           "within_tolerance\n";
    std::size_t within = 0;
    double max_err = 0.0;
    for (const auto& row : rows) {
        const double produced = to_double(row.produced_cf) * scale;
        const double err = to_double(row.cf_error) * scale;
        const double abs_err = to_double(row.scaled_abs_error);
        out << row.vector.str() << ',' << row.gray_position << ','
            << fmt(produced) << ',' << fmt(err) << ',' << fmt(abs_err) << ','
            << yesno(row.within_tolerance) << "\n";
        if (row.within_tolerance) ++within;
        if (abs_err > max_err) max_err = abs_err;
    }
    diag << "enumerate: " << rows.size() << " vectors, max |error|x2^n = "
         << fmt(max_err) << ", " << within << " within tolerance\n";
}

template <class S>
void run_worst_case(const Command& cmd, std::ostream& out) {
    const MixSplitPlan plan = load_plan(cmd);
    check_search_space(cmd, plan.target.accuracy);
    const auto wc =
        worst_case<S>(plan, cmd.epsilon, cmd.include_skip, cmd.threads);
    const std::string vector_str = wc.argmax.str();
    const std::string position =
        cmd.include_skip ? "" : std::to_string(gray_position(wc.argmax));
    if (cmd.format == Format::Json) {
        nlohmann::json j{{"target", plan.target.str()},
                         {"epsilon", cmd.epsilon.as<double>()},
                         {"max_error_x2n", to_double(wc.max_scaled_abs_error)},
                         {"argmax_vector", vector_str}};
        if (!cmd.include_skip) j["gray_position"] = gray_position(wc.argmax);
        out << j.dump(2) << "\n";
        return;
    }
    out << "numerator,accuracy,max_error_x2n,argmax_vector,gray_position\n";
    out << plan.target.numerator << ',' << plan.target.accuracy << ','
        << fmt(to_double(wc.max_scaled_abs_error)) << ',' << vector_str << ','
        << position << "\n";
}

template <class S>
void run_classify(const Command& cmd, std::ostream& out) {
    const MixSplitPlan plan = load_plan(cmd);
    const auto report =
        classify_critical_steps<S>(plan, cmd.epsilon, tolerance_for<S>(cmd));
    out << "step,error_larger_x2n,error_smaller_x2n,critical\n";
    for (const auto& entry : report)
        out << entry.step << ',' << fmt(to_double(entry.larger_error)) << ','
            << fmt(to_double(entry.smaller_error)) << ','
            << yesno(entry.critical) << "\n";
}

template <class S>
void run_sweep(const Command& cmd, std::ostream& out, std::ostream& diag) {
    check_search_space(cmd, cmd.accuracy);
    const auto rows = sweep_targets<S>(cmd.accuracy, cmd.epsilon, cmd.threads);
    out << "numerator,accuracy,max_error_x2n,argmax_vector\n";
    double max_err = -1.0;
    std::vector<std::int64_t> argmax_targets;
    for (const auto& row : rows) {
        const double err = to_double(row.max_scaled_error);
        out << row.target.numerator << ',' << row.target.accuracy << ','
            << fmt(err) << ',' << row.argmax_vector.str() << "\n";
        if (err > max_err + 1e-9) {
            max_err = err;
            argmax_targets.assign(1, row.target.numerator);
        } else if (std::fabs(err - max_err) <= 1e-9) {
            argmax_targets.push_back(row.target.numerator);
        }
    }
    diag << "sweep: " << rows.size() << " targets, global max |error|x2^n = "
         << fmt(max_err) << " at numerator";
    for (const auto x : argmax_targets) diag << ' ' << x;
    diag << "\n";
}

int execute_streams(const Command& cmd, std::ostream& out, std::ostream& diag) {
    const bool rational = cmd.backend == Backend::Rational;
    switch (cmd.action) {
        case Action::Plan:
            run_plan(cmd, out);
            break;
        case Action::Simulate:
            rational ? run_simulate<Rational>(cmd, out)
                     : run_simulate<double>(cmd, out);
            break;
        case Action::Enumerate:
            rational ? run_enumerate<Rational>(cmd, out, diag)
                     : run_enumerate<double>(cmd, out, diag);
            break;
        case Action::WorstCase:
            rational ? run_worst_case<Rational>(cmd, out)
                     : run_worst_case<double>(cmd, out);
            break;
        case Action::Classify:
            rational ? run_classify<Rational>(cmd, out)
                     : run_classify<double>(cmd, out);
            break;
        case Action::Sweep:
            rational ? run_sweep<Rational>(cmd, out, diag)
                     : run_sweep<double>(cmd, out, diag);
            break;
    }
    return 0;
}

struct ParsedOptions {
    std::string target_text;
    std::string epsilon_text;
    std::string backend_text = "float";
    std::string format_text;
    std::string positions_text;
};

}  // namespace

Command parse_args(const std::vector<std::string>& args) {
    CLI::App app{"mix-split dilution planning and split-error analysis"};
    app.require_subcommand(1);

    Command cmd;
    ParsedOptions opt;

    auto add_common = [&](CLI::App* sub, bool needs_epsilon) {
        sub->add_option("--backend", opt.backend_text,
                        "arithmetic backend: float or rational")
            ->check(CLI::IsMember({"float", "rational"}));
        sub->add_option("--format", opt.format_text, "output format");
        sub->add_option("--output,-o", cmd.output_path, "write data to a file");
        if (needs_epsilon)
            sub->add_option("--epsilon,-e", opt.epsilon_text,
                            "split-error magnitude, e.g. 0.07 or 7%")
                ->required();
    };

    auto* plan = app.add_subcommand("plan", "emit the mix-split plan for a target");
    plan->add_option("--target,-t", opt.target_text)->required();
    add_common(plan, false);

    auto* sim = app.add_subcommand("simulate", "propagate one error vector");
    sim->add_option("--target,-t", opt.target_text);
    sim->add_option("--plan-file", cmd.plan_file, "plan JSON produced by `plan`");
    sim->add_option("--vector,-v", cmd.vector_text,
                    "dispositions over {+,-,0}, length accuracy-1");
    add_common(sim, true);

    auto* enumerate = app.add_subcommand("enumerate", "tabulate error vectors");
    enumerate->add_option("--target,-t", opt.target_text)->required();
    enumerate->add_option("--positions", opt.positions_text,
                          "comma-separated split steps, e.g. 1,3,6");
    enumerate->add_flag("--include-skip", cmd.include_skip,
                        "enumerate {+,-,skip} instead of signs only");
    enumerate->add_option("--tolerance", cmd.tolerance_text,
                          "CF-scale tolerance (default 0.5/2^n)");
    enumerate->add_flag("--force", cmd.force, "lift the search-space guard");
    add_common(enumerate, true);

    auto* worst = app.add_subcommand("worst-case", "exhaustive maximum CF-error");
    worst->add_option("--target,-t", opt.target_text)->required();
    worst->add_flag("--include-skip", cmd.include_skip);
    worst->add_flag("--force", cmd.force);
    worst->add_option("--threads", cmd.threads);
    add_common(worst, true);

    auto* classify = app.add_subcommand("classify", "critical-step report");
    classify->add_option("--target,-t", opt.target_text)->required();
    classify->add_option("--tolerance", cmd.tolerance_text);
    add_common(classify, true);

    auto* sweep = app.add_subcommand("sweep", "worst case for every target");
    sweep->add_option("--accuracy,-n", cmd.accuracy, "accuracy level")
        ->required()
        ->check(CLI::Range(2, 62));
    sweep->add_flag("--force", cmd.force);
    sweep->add_option("--threads", cmd.threads);
    add_common(sweep, true);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    if (plan->parsed()) cmd.action = Action::Plan;
    if (sim->parsed()) cmd.action = Action::Simulate;
    if (enumerate->parsed()) cmd.action = Action::Enumerate;
    if (worst->parsed()) cmd.action = Action::WorstCase;
    if (classify->parsed()) cmd.action = Action::Classify;
    if (sweep->parsed()) cmd.action = Action::Sweep;

    if (!opt.target_text.empty()) cmd.target = parse_target(opt.target_text);
    if (!opt.epsilon_text.empty()) cmd.epsilon = Epsilon::parse(opt.epsilon_text);
    cmd.backend = opt.backend_text == "rational" ? Backend::Rational : Backend::Float;

    if (opt.format_text.empty()) {
        cmd.format = cmd.action == Action::Plan || cmd.action == Action::Simulate
                         ? Format::Json
                         : Format::Csv;
    } else if (opt.format_text == "csv") {
        cmd.format = Format::Csv;
    } else if (opt.format_text == "json") {
        cmd.format = Format::Json;
    } else if (opt.format_text == "dot" && cmd.action == Action::Plan) {
        cmd.format = Format::Dot;
    } else {
        throw UsageError("unsupported --format '" + opt.format_text + "'");
    }

    if (!opt.positions_text.empty()) {
        std::stringstream ss(opt.positions_text);
        std::string field;
        while (std::getline(ss, field, ','))
            cmd.positions.push_back(static_cast<int>(std::stoll(field)));
    }
    return cmd;
}

int execute(const Command& cmd, std::ostream& data, std::ostream& diag) {
    try {
        if (cmd.output_path) {
            std::ofstream file(*cmd.output_path);
            if (!file) {
                diag << "error: cannot open output file '" << *cmd.output_path
                     << "'\n";
                return 2;
            }
            const int rc = execute_streams(cmd, file, diag);
            if (!file.good()) {
                diag << "error: write to '" << *cmd.output_path << "' failed\n";
                return 2;
            }
            return rc;
        }
        return execute_streams(cmd, data, diag);
    } catch (const std::ios_base::failure& e) {
        diag << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << "\n";
        return 1;
    }
}

int run(const std::vector<std::string>& args, std::ostream& data,
        std::ostream& diag) {
    Command cmd;
    try {
        cmd = parse_args(args);
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << "\n";
        return 1;
    }
    return execute(cmd, data, diag);
}

}  // namespace dmf::cli
