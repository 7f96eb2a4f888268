#include "cardbounds/cli.hpp"

#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cardbounds/debruijn.hpp"
#include "cardbounds/deck.hpp"
#include "cardbounds/entropy.hpp"
#include "cardbounds/errors.hpp"
#include "cardbounds/experiments.hpp"
#include "cardbounds/records.hpp"

namespace cardbounds {

namespace {

enum class OutputFormat { table, records };

struct Usage : Error {
    using Error::Error;
};

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
        throw Usage(what + " expects a non-negative integer, got \"" + text + "\"");
    }
    try {
        return std::stoull(text);
    } catch (const std::out_of_range&) {
        throw Usage(what + " value \"" + text + "\" is too large");
    }
}

/// "A..B" or "A".
std::pair<std::size_t, std::size_t> parse_k_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const auto k = parse_u64(text, "--k");
        return {k, k};
    }
    const auto lo = parse_u64(text.substr(0, dots), "--k");
    const auto hi = parse_u64(text.substr(dots + 2), "--k");
    if (lo > hi) throw Usage("--k range " + text + " is empty");
    return {lo, hi};
}

std::vector<std::uint64_t> parse_list(const std::string& text, const std::string& what) {
    std::vector<std::uint64_t> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find(',', start);
        if (end == std::string::npos) end = text.size();
        values.push_back(parse_u64(text.substr(start, end - start), what));
        start = end + 1;
    }
    return values;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint64_t fresh_seed() {
    std::random_device device;
    return (static_cast<std::uint64_t>(device()) << 32) | device();
}

void add_format_option(CLI::App* app, std::string& format) {
    app->add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "records"}));
}

OutputFormat to_format(const std::string& text) {
    return text == "records" ? OutputFormat::records : OutputFormat::table;
}

// ---------------------------------------------------------------------------
// entropy

struct EntropyArgs {
    std::string input;
    std::string inline_text;
    std::string mode;
    std::uint64_t sigma = 0;
    std::string k_range = "0..8";
    std::string convention = "linear";
    double epsilon = 0.0;
    std::string format = "table";
};

int run_entropy(const EntropyArgs& a, bool sigma_given, std::ostream& out) {
    if (a.input.empty() == a.inline_text.empty()) {
        throw Usage("entropy needs exactly one of an input file or --inline");
    }
    const bool from_inline = !a.inline_text.empty();
    std::string mode = a.mode.empty() ? (from_inline ? "digits" : "raw") : a.mode;
    const auto input_mode = mode == "raw" ? InputMode::raw_bytes : InputMode::digit_text;
    const std::string raw = from_inline ? a.inline_text : read_file(a.input);
    const auto seq = parse_sequence(raw, input_mode, sigma_given ? std::optional(a.sigma) : std::nullopt);
    const auto [k_lo, k_hi] = parse_k_range(a.k_range);
    const auto convention = *parse_convention(a.convention);
    const auto rows = compressibility_report(seq, k_hi, a.epsilon, convention);
    const std::vector<CompressibilityRow> shown(rows.begin() + static_cast<std::ptrdiff_t>(k_lo), rows.end());
    if (to_format(a.format) == OutputFormat::records) {
        for (const auto& row : shown) out << to_record(row, a.epsilon).dump() << '\n';
    } else {
        write_table(out, shown, a.epsilon);
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// debruijn

struct DeBruijnArgs {
    std::uint64_t sigma = 2;
    std::size_t order = 1;
    std::string strategy = "greedy-least";
    std::uint64_t seed = 0;
    std::string inline_text;
    std::string input;
};

int run_debruijn(const std::string& action, const DeBruijnArgs& a, bool seed_given, std::ostream& out,
                 std::ostream& err) {
    const DeBruijnSpec spec(a.sigma, a.order);
    if (action == "gen") {
        const auto strategy = *parse_strategy(a.strategy);
        std::optional<RngSpec> rng;
        if (strategy == GenerationStrategy::eulerian_random) {
            const std::uint64_t seed = seed_given ? a.seed : fresh_seed();
            err << "seed: " << seed << '\n';
            rng = RngSpec{seed, 0};
        }
        out << to_digit_text(db_generate(spec, strategy, rng).seq) << '\n';
        return kExitOk;
    }
    if (action == "verify") {
        if (a.input.empty() == a.inline_text.empty()) {
            throw Usage("verify needs exactly one of an input file or --inline");
        }
        const std::string raw = a.inline_text.empty() ? read_file(a.input) : a.inline_text;
        const auto candidate = parse_sequence(raw, InputMode::digit_text, a.sigma);
        const auto result = db_verify(candidate, spec);
        out << result.describe() << '\n';
        return result.ok() ? kExitOk : kExitViolated;
    }
    if (action == "count") {
        out << db_count(spec).str() << '\n';
        return kExitOk;
    }
    if (action == "bits") {
        const auto bits = db_count_bits(spec);
        std::ostringstream line;
        line << std::setprecision(17) << "log2_count " << bits.log2_count << "\nratio " << bits.ratio << '\n';
        out << line.str();
        return kExitOk;
    }
    // enum
    for (const auto& s : db_enumerate(spec)) out << to_digit_text(s.seq) << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------
// experiment / trick

struct ExperimentArgs {
    std::string name;
    std::string n, sigma, k, m, draw;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::string distinguisher = "repeat-successor";
    double epsilon = 0.0;
    bool fixed_string = false;
    bool exhaustive = false;
    bool timing = false;
    std::string format = "table";
};

void emit(const ExperimentResult& r, const ExperimentArgs& a, std::ostream& out) {
    if (to_format(a.format) == OutputFormat::records) {
        out << to_record(r, a.timing).dump() << '\n';
    } else {
        write_table(out, r, a.timing);
    }
}

int run_experiments(const ExperimentArgs& a, bool seed_given, std::ostream& out) {
    ExperimentConfig base;
    base.name = a.name;
    base.trials = a.trials;
    base.seed = seed_given ? a.seed : fresh_seed();
    base.workers = a.workers;
    base.distinguisher = *parse_distinguisher(a.distinguisher);
    base.epsilon = a.epsilon;
    base.fixed_string = a.fixed_string;
    base.exhaustive = a.exhaustive;

    std::string sweep_param;
    std::vector<std::uint64_t> sweep_values;
    auto take = [&](const std::string& text, const char* param, auto& field) {
        if (text.empty()) return;
        const auto values = parse_list(text, std::string("--") + param);
        if (values.size() == 1) {
            field = values.front();
            return;
        }
        if (!sweep_param.empty()) throw Usage("only one parameter can be swept at a time");
        sweep_param = param;
        sweep_values = values;
    };
    take(a.n, "n", base.n);
    take(a.sigma, "sigma", base.sigma);
    take(a.k, "k", base.k);
    take(a.m, "m", base.m);
    take(a.draw, "draw", base.draw_size);

    std::vector<ExperimentResult> results;
    if (sweep_param.empty()) {
        results.push_back(run_experiment(base));
    } else {
        results = run_sweep(base, sweep_param, sweep_values);
    }
    bool violated = false;
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (i > 0 && to_format(a.format) == OutputFormat::table) out << '\n';
        emit(results[i], a, out);
        violated |= results[i].verdict == Verdict::violated;
    }
    if (!sweep_param.empty() && *parse_experiment(a.name) == ExperimentKind::distinguish && sweep_param == "m") {
        const auto crossing = crossing_point(results, "m", 2.0 / 3.0);
        if (to_format(a.format) == OutputFormat::records) {
            Record summary;
            summary["name"] = "sweep-summary";
            summary["param"] = sweep_param;
            summary["threshold"] = 2.0 / 3.0;
            summary["crossing"] = crossing ? Record(*crossing) : Record(nullptr);
            out << summary.dump() << '\n';
        } else {
            out << "\nsuccess first exceeds 2/3 at m = " << (crossing ? std::to_string(*crossing) : "none") << '\n';
        }
    }
    return violated ? kExitViolated : kExitOk;
}

int run_decode(const std::string& colors_text, std::uint64_t seed, bool seed_given, std::ostream& out) {
    const auto colors = parse_colors(colors_text);
    const Deck deck = arrange_deck_debruijn();
    const auto candidates = decode_draw(deck, colors);
    out << "candidates " << candidates.size() << '\n';
    for (const auto& c : candidates) {
        out << "  position " << c.position + 1 << ':';
        for (const auto& card : c.cards) out << ' ' << card.name();
        out << '\n';
    }
    if (candidates.size() > 1) {
        const std::uint64_t s = seed_given ? seed : fresh_seed();
        Rng rng(RngSpec{s, 0});
        out << "seed " << s << "\nguess position " << guess_draw(candidates, rng).position + 1 << '\n';
    }
    return candidates.empty() ? kExitViolated : kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Empirical entropy, De Bruijn cycles and card-trick bounds"};
    app.name("cardbounds");
    app.require_subcommand(1);

    EntropyArgs ent;
    auto* entropy = app.add_subcommand("entropy", "k-th order empirical entropy of a string");
    entropy->add_option("input", ent.input, "Input file");
    entropy->add_option("--inline", ent.inline_text, "Digit-text input given directly");
    entropy->add_option("--mode", ent.mode, "Input mode (default: digits for --inline, raw for files)")
        ->check(CLI::IsMember({"raw", "digits"}));
    auto* ent_sigma = entropy->add_option("--sigma", ent.sigma, "Alphabet size");
    entropy->add_option("--k", ent.k_range, "Order or range A..B")->capture_default_str();
    entropy->add_option("--convention", ent.convention, "Context convention")
        ->check(CLI::IsMember({"linear", "cyclic"}))
        ->capture_default_str();
    entropy->add_option("--epsilon", ent.epsilon, "Epsilon for the threshold flags")->check(CLI::NonNegativeNumber);
    add_format_option(entropy, ent.format);

    DeBruijnArgs db;
    auto* debruijn = app.add_subcommand("debruijn", "Generate, verify, count and enumerate De Bruijn cycles");
    debruijn->require_subcommand(1);
    std::vector<std::pair<std::string, CLI::App*>> db_actions;
    std::vector<CLI::Option*> db_seed_options;
    for (const auto* action : {"gen", "verify", "count", "bits", "enum"}) {
        auto* sub = debruijn->add_subcommand(action);
        sub->add_option("--sigma", db.sigma, "Alphabet size")->required();
        sub->add_option("--order", db.order, "Order k")->required();
        if (std::string(action) == "gen") {
            sub->add_option("--strategy", db.strategy)
                ->check(CLI::IsMember({"greedy-least", "eulerian-random", "greedy", "eulerian"}))
                ->capture_default_str();
            db_seed_options.push_back(sub->add_option("--seed", db.seed, "Seed for eulerian-random"));
        }
        if (std::string(action) == "verify") {
            sub->add_option("input", db.input, "File with the candidate in digit-text");
            sub->add_option("--inline", db.inline_text, "Candidate in digit-text");
        }
        db_actions.emplace_back(action, sub);
    }

    ExperimentArgs ex;
    CLI::Option* ex_seed = nullptr;
    auto add_experiment_options = [&](CLI::App* sub, bool full) {
        sub->add_option("--trials", ex.trials, "Number of trials")->check(CLI::PositiveNumber)->capture_default_str();
        auto* seed = sub->add_option("--seed", ex.seed, "Master seed (64-bit unsigned)");
        sub->add_option("--workers", ex.workers, "Worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--draw", ex.draw, "Draw size (comma list to sweep)");
        sub->add_flag("--timing", ex.timing, "Include elapsed time in the output");
        add_format_option(sub, ex.format);
        if (full) {
            sub->add_option("--n", ex.n, "String length (comma list to sweep)");
            sub->add_option("--sigma", ex.sigma, "Alphabet size (comma list to sweep)");
            sub->add_option("--k", ex.k, "Order (comma list to sweep)");
            sub->add_option("--m", ex.m, "Symbols read by the distinguisher (comma list to sweep)");
            sub->add_option("--distinguisher", ex.distinguisher)
                ->check(CLI::IsMember({"repeat-successor", "repeat-any"}));
            sub->add_option("--epsilon", ex.epsilon)->check(CLI::NonNegativeNumber);
            sub->add_flag("--fixed-string", ex.fixed_string, "distinguish: one adversarial string for all trials");
        }
        sub->add_flag("--exhaustive", ex.exhaustive, "trick-prearranged: every cut and draw position");
        return seed;
    };
    auto* experiment = app.add_subcommand("experiment", "Run a Monte Carlo experiment");
    experiment->add_option("name", ex.name, "Experiment: " + experiment_names())->required();
    auto* experiment_seed = add_experiment_options(experiment, true);

    auto* trick = app.add_subcommand("trick", "Card trick simulations");
    trick->require_subcommand(1);
    auto* prearranged = trick->add_subcommand("prearranged", "De Bruijn-arranged deck");
    auto* prearranged_seed = add_experiment_options(prearranged, false);
    auto* shuffled = trick->add_subcommand("shuffled", "Shuffled deck");
    auto* shuffled_seed = add_experiment_options(shuffled, false);
    auto* deck_cmd = trick->add_subcommand("deck", "Print the prearranged deck");
    std::string decode_colors;
    std::uint64_t decode_seed = 0;
    auto* decode = trick->add_subcommand("decode", "Name the cards for a list of colours (0 black, 1 red)");
    decode->add_option("colors", decode_colors, "Colour digits")->required();
    auto* decode_seed_opt = decode->add_option("--seed", decode_seed, "Seed for guessing among candidates");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (entropy->parsed()) return run_entropy(ent, ent_sigma->count() > 0, out);
        for (const auto& [action, sub] : db_actions) {
            if (!sub->parsed()) continue;
            const bool seed_given = std::any_of(db_seed_options.begin(), db_seed_options.end(),
                                                [](const CLI::Option* o) { return o->count() > 0; });
            return run_debruijn(action, db, seed_given, out, err);
        }
        if (experiment->parsed()) {
            ex_seed = experiment_seed;
            return run_experiments(ex, ex_seed->count() > 0, out);
        }
        if (prearranged->parsed() || shuffled->parsed()) {
            ex.name = prearranged->parsed() ? "trick-prearranged" : "trick-shuffled";
            ex_seed = prearranged->parsed() ? prearranged_seed : shuffled_seed;
            return run_experiments(ex, ex_seed->count() > 0, out);
        }
        if (deck_cmd->parsed()) {
            const Deck deck = arrange_deck_debruijn();
            out << deck.serialize() << '\n' << deck.color_string() << '\n';
            return kExitOk;
        }
        if (decode->parsed()) return run_decode(decode_colors, decode_seed, decode_seed_opt->count() > 0, out);
    } catch (const Usage& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    err << app.help();
    return kExitUsage;
}

}  // namespace cardbounds
