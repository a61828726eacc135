// homcert command-line surface: negativity checks, derived Hom tables,
// approximation runs, the quantitative counterexample, witness rebracketing,
// and certificate replay.  All inputs and outputs are JSON; see README.
//
// Exit codes: 0 success; 2 hypothesis failed / partial / not weakly negative;
// 3 malformed input; 4 replay failure.

#include "CLI11.hpp"

#include "homcert/json_io.hpp"

#include <fstream>
#include <iostream>

namespace {

using homcert::Json;

Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw homcert::Error("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw homcert::Error("invalid JSON in '" + path + "': " + e.what());
    }
}

void write_json(const Json& j, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw homcert::Error("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

std::pair<int, int> parse_range(const std::string& text) {
    auto sep = text.find("..");
    if (sep == std::string::npos) throw homcert::Error("range must look like lo..hi");
    return {std::stoi(text.substr(0, sep)), std::stoi(text.substr(sep + 2))};
}

struct CommonOpts {
    std::string input, output;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int trials = 0;
    bool trials_set = false;
};

homcert::Problem load_problem(const CommonOpts& opts) {
    homcert::Problem p = homcert::problem_from_json(read_json(opts.input));
    if (opts.seed_set) p.seed = opts.seed;
    if (opts.trials_set) p.trials = opts.trials;
    return p;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certificate toolkit for derived-category approximation"};
    app.require_subcommand(1);

    CommonOpts opts;
    int max_depth = -1;
    bool as_weights = false;
    std::string range_text, verify_path, prime_text;
    int bound = 1;

    auto add_common = [&](CLI::App* cmd, bool needs_input) {
        auto* in = cmd->add_option("--input,-i", opts.input, "problem or certificate JSON file");
        if (needs_input) in->required();
        cmd->add_option("--output,-o", opts.output, "write the certificate here (default stdout)");
        cmd->add_option("--seed", opts.seed, "override the input's seed")
            ->each([&](const std::string&) { opts.seed_set = true; });
        cmd->add_option("--trials", opts.trials, "override the input's trial count")
            ->each([&](const std::string&) { opts.trials_set = true; });
    };

    CLI::App* neg = app.add_subcommand("check-negativity",
                                       "classify a generator system (weak/strict/partition)");
    add_common(neg, true);

    CLI::App* ext = app.add_subcommand("ext-table",
                                       "derived Hom groups between all generator pairs");
    add_common(ext, true);
    ext->add_option("--range", range_text, "degree range lo..hi (default: the hom windows)");

    CLI::App* apx = app.add_subcommand("approximate",
                                       "build the approximation triangle E -> F -> D");
    add_common(apx, false);
    apx->add_option("--max-depth", max_depth, "depth cap for the non-partitioned mode");
    apx->add_flag("--weight-decomposition", as_weights,
                  "emit the same triangle labeled as a weight decomposition");
    apx->add_option("--verify", verify_path, "replay a stored certificate instead of running");

    CLI::App* cex = app.add_subcommand("counterexample",
                                       "minimal-depth obstruction for F = Z/p^{A+1} over Z/p");
    cex->add_option("--prime,-p", prime_text, "the prime p")->required();
    cex->add_option("--bound,-A", bound, "the depth bound A")->required();
    cex->add_option("--output,-o", opts.output, "write the certificate here (default stdout)");

    CLI::App* reb = app.add_subcommand("rebracket",
                                       "octahedral rebracketing of a stored witness tower");
    add_common(reb, true);

    CLI::App* ver = app.add_subcommand("verify", "replay any stored certificate");
    add_common(ver, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (neg->parsed()) {
            homcert::Problem problem = load_problem(opts);
            auto report = homcert::check_negativity(problem.system());
            write_json(homcert::negativity_to_json(problem, report), opts.output);
            return report.weakly_negative ? 0 : 2;
        }
        if (ext->parsed()) {
            homcert::Problem problem = load_problem(opts);
            int lo, hi;
            if (!range_text.empty()) {
                std::tie(lo, hi) = parse_range(range_text);
            } else {
                lo = 0, hi = 1;
                auto s = problem.system();
                for (const auto& [pn, pobj] : s.generators)
                    for (const auto& [qn, qobj] : s.generators) {
                        auto w = homcert::hom_window(pobj, qobj);
                        if (!w.empty()) lo = std::min(lo, w.lo), hi = std::max(hi, w.hi);
                    }
            }
            write_json(homcert::ext_table_to_json(problem, lo, hi), opts.output);
            return 0;
        }
        if (apx->parsed()) {
            if (!verify_path.empty()) {
                auto result = homcert::verify_certificate(read_json(verify_path));
                std::cerr << result.message << "\n";
                return result.ok ? 0 : 4;
            }
            if (opts.input.empty()) throw homcert::Error("--input is required to run");
            homcert::Problem problem = load_problem(opts);
            if (max_depth > 0) problem.max_depth = max_depth;
            if (problem.target.empty()) throw homcert::Error("problem has no target object");
            auto system = problem.system();
            auto cert = as_weights
                            ? homcert::weight_decomposition(problem.object(problem.target), system,
                                                            problem.max_depth)
                            : homcert::approximate(problem.object(problem.target), system,
                                                   problem.max_depth);
            write_json(homcert::approximation_to_json(problem, cert), opts.output);
            return cert.status == homcert::ApproxStatus::success ? 0 : 2;
        }
        if (cex->parsed()) {
            auto result = homcert::minimal_depth(homcert::parse_decimal(prime_text), bound);
            write_json(homcert::counterexample_to_json(result), opts.output);
            return 0;
        }
        if (reb->parsed()) {
            auto tf = homcert::tower_file_from_json(read_json(opts.input));
            auto result = homcert::octahedral_rebracket(tf.tower);
            write_json(homcert::rebracket_to_json(*tf.base, *tf.pool, tf.tower, result),
                       opts.output);
            return 0;
        }
        if (ver->parsed()) {
            auto result = homcert::verify_certificate(read_json(opts.input));
            std::cerr << result.message << "\n";
            return result.ok ? 0 : 4;
        }
    } catch (const homcert::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed JSON: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
