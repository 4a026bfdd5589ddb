// dsa -- command-line front end for the doubly stochastic automata toolkit.
//
// Exit codes: 0 success, 1 validation/data failure, 2 usage error.
// Data goes to stdout (or --out); diagnostics go to stderr.

#include "dsa/constructions.hpp"
#include "dsa/json_io.hpp"
#include "dsa/markov.hpp"
#include "dsa/prototype.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace dsa;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::ostream& data_stream(const std::string& out_path, std::ofstream& file) {
    if (out_path.empty()) return std::cout;
    file.open(out_path);
    if (!file) throw DataError("cannot write \"" + out_path + "\"");
    return file;
}

AutomatonFile load_automaton(const std::string& path) {
    return automaton_from_json(load_json_file(path));
}

PraC load_prac(const std::string& path) {
    AutomatonFile a = load_automaton(path);
    if (auto* p = std::get_if<PraC>(&a)) return std::move(*p);
    throw DataError("\"" + path + "\" is not a prac automaton");
}

std::string interval_text(const RecognitionInterval& iv) {
    const std::string lo = iv.saw_nonmember ? iv.p1.str() : "none";
    const std::string hi = iv.saw_member ? iv.p2.str() : "none";
    return "(" + lo + ", " + hi + ")";
}

void print_report(const ValidationReport& report, std::ostream& os) {
    if (report.ok()) {
        os << "valid\n";
        return;
    }
    for (const auto& v : report.violations) {
        os << "violation:";
        if (v.symbol) os << " symbol '" << v.symbol << "'";
        if (v.index >= 0) os << " index " << v.index;
        os << ": " << v.message << "\n";
    }
}

Rational parse_rational_flag(const std::string& text, const char* flag) {
    try {
        return Rational::parse(text);
    } catch (const Error& e) {
        throw UsageError(std::string(flag) + ": " + e.what());
    }
}

int run(int argc, char** argv) {
    CLI::App app{"doubly stochastic (probabilistic reversible) automata toolkit"};
    app.require_subcommand(1);

    std::string in_path, in_path_b, word, out_path;
    std::string regex_text, alphabet_override;
    std::string p1_text, p2_text, eps_text, threshold_text;
    std::string omega_text, x_text, y_text, z_text;
    std::string map_path;
    int max_len = 6, copies = 1, m_param = 1, m_max = 16, ln_n = 1;
    long trials = 10000, max_steps = 1000, budget = 10000;
    std::uint64_t seed = 0;
    bool float_column = false;

    auto* validate_cmd = app.add_subcommand("validate", "check an automaton file");
    validate_cmd->add_option("file", in_path)->required();

    auto* accept_cmd = app.add_subcommand("accept", "exact acceptance probability of a word");
    accept_cmd->add_option("file", in_path)->required();
    accept_cmd->add_option("word", word);

    auto* interval_cmd = app.add_subcommand("interval", "exhaustive recognition interval");
    interval_cmd->add_option("file", in_path)->required();
    interval_cmd->add_option("--regex", regex_text)->required();
    interval_cmd->add_option("--max-len", max_len)->required();
    interval_cmd->add_option("--alphabet", alphabet_override);
    interval_cmd->add_flag("--float", float_column);
    interval_cmd->add_option("--out", out_path);

    auto* construct_cmd = app.add_subcommand("construct", "build a new automaton");
    construct_cmd->require_subcommand(1);
    auto* ln_cmd = construct_cmd->add_subcommand("ln", "the a1*...an* family automaton");
    ln_cmd->add_option("--n", ln_n)->required();
    auto* boost_cmd = construct_cmd->add_subcommand("boost", "majority vote over tensor copies");
    boost_cmd->add_option("file", in_path)->required();
    boost_cmd->add_option("--copies", copies)->required();
    boost_cmd->add_option("--p1", p1_text)->required();
    boost_cmd->add_option("--p2", p2_text)->required();
    boost_cmd->add_option("--threshold", threshold_text);
    auto* normalize_cmd = construct_cmd->add_subcommand("normalize", "interval to single probability");
    normalize_cmd->add_option("file", in_path)->required();
    normalize_cmd->add_option("--p1", p1_text)->required();
    normalize_cmd->add_option("--p2", p2_text)->required();
    auto* union_cmd = construct_cmd->add_subcommand("union", "boolean union construction");
    union_cmd->add_option("file_a", in_path)->required();
    union_cmd->add_option("file_b", in_path_b)->required();
    auto* intersect_cmd = construct_cmd->add_subcommand("intersect", "boolean intersection construction");
    intersect_cmd->add_option("file_a", in_path)->required();
    intersect_cmd->add_option("file_b", in_path_b)->required();
    auto* complement_cmd = construct_cmd->add_subcommand("complement", "swap accepting and rejecting");
    complement_cmd->add_option("file", in_path)->required();
    auto* invhom_cmd = construct_cmd->add_subcommand("invhom", "inverse homomorphism");
    invhom_cmd->add_option("file", in_path)->required();
    invhom_cmd->add_option("--map", map_path)->required();
    auto* quotient_cmd = construct_cmd->add_subcommand("quotient", "left word quotient");
    quotient_cmd->add_option("file", in_path)->required();
    quotient_cmd->add_option("--word", word)->required();
    auto* strip_dollar_cmd = construct_cmd->add_subcommand("strip-dollar", "eliminate the '$' end-marker");
    strip_dollar_cmd->add_option("file", in_path)->required();
    strip_dollar_cmd->add_option("--m", m_param)->required();
    auto* strip_hash_cmd = construct_cmd->add_subcommand("strip-hash", "eliminate the '#' end-marker");
    strip_hash_cmd->add_option("file", in_path)->required();
    strip_hash_cmd->add_option("--eps", eps_text)->required();
    strip_hash_cmd->add_option("--copies", copies)->required();
    strip_hash_cmd->add_option("--p1", p1_text)->required();
    strip_hash_cmd->add_option("--p2", p2_text)->required();
    for (auto* c : construct_cmd->get_subcommands({})) c->add_option("--out", out_path);

    auto* classify_cmd = app.add_subcommand("classify", "type (*) classification of a regular language");
    classify_cmd->add_option("--regex", regex_text)->required();
    classify_cmd->add_option("--alphabet", alphabet_override);

    auto* markov_cmd = app.add_subcommand("markov", "chain structure report for a matrix file");
    markov_cmd->add_option("file", in_path)->required();
    markov_cmd->add_option("--out", out_path);

    auto* probe_cmd = app.add_subcommand("probe", "convergence probe gap sweep (CSV)");
    probe_cmd->add_option("file", in_path)->required();
    probe_cmd->add_option("--omega", omega_text);
    probe_cmd->add_option("--x", x_text)->required();
    probe_cmd->add_option("--y", y_text)->required();
    probe_cmd->add_option("--z", z_text);
    probe_cmd->add_option("--m-max", m_max);
    probe_cmd->add_flag("--float", float_column);
    probe_cmd->add_option("--out", out_path);

    auto* prototype_cmd = app.add_subcommand("prototype", "unitary prototype check for a matrix file");
    prototype_cmd->add_option("file", in_path)->required();
    prototype_cmd->add_option("--budget", budget);
    prototype_cmd->add_option("--seed", seed)->required();
    prototype_cmd->add_option("--out", out_path);

    auto* sim15_cmd = app.add_subcommand("simulate15", "Monte Carlo run of a 1.5-way automaton");
    sim15_cmd->add_option("file", in_path)->required();
    sim15_cmd->add_option("word", word);
    sim15_cmd->add_option("--trials", trials)->required();
    sim15_cmd->add_option("--max-steps", max_steps)->required();
    sim15_cmd->add_option("--seed", seed)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    std::ofstream out_file;

    if (*validate_cmd) {
        const AutomatonFile a = load_automaton(in_path);
        const ValidationReport report = std::visit(
            [](const auto& value) {
                using T = std::decay_t<decltype(value)>;
                if constexpr (std::is_same_v<T, Pra15>) return validate_pra15(value);
                else return validate(value);
            },
            a);
        print_report(report, std::cout);
        return report.ok() ? 0 : 1;
    }

    if (*accept_cmd) {
        const AutomatonFile a = load_automaton(in_path);
        if (const auto* c = std::get_if<PraC>(&a)) {
            std::cout << accept_prob_c(*c, word) << "\n";
            return 0;
        }
        if (const auto* dh = std::get_if<PraDh>(&a)) {
            const DhOutcome o = accept_prob_dh(*dh, word);
            std::cout << "accept=" << o.accept << " reject=" << o.reject
                      << " nonhalt=" << o.nonhalt << "\n";
            return 0;
        }
        throw UsageError("accept applies to prac/pradh; use simulate15 for pra15");
    }

    if (*interval_cmd) {
        const AutomatonFile a = load_automaton(in_path);
        const Dfa lang = alphabet_override.empty()
                             ? minimal_dfa_from_regex(regex_text)
                             : minimal_dfa_from_regex(regex_text, alphabet_override);
        RecognitionInterval iv;
        if (const auto* c = std::get_if<PraC>(&a)) {
            iv = recognition_interval(*c, lang, max_len);
        } else if (const auto* dh = std::get_if<PraDh>(&a)) {
            iv = recognition_interval(
                *dh, [&lang](const Word& w) { return lang.accepts(w); }, max_len);
        } else {
            throw UsageError("interval applies to prac/pradh automata");
        }
        std::ostream& os = data_stream(out_path, out_file);
        os << interval_text(iv) << "\n";
        if (float_column)
            os << "(" << iv.p1.to_double() << ", " << iv.p2.to_double() << ")\n";
        return 0;
    }

    if (*construct_cmd) {
        PraC result;
        if (*ln_cmd) {
            result = ln_family(ln_n);
        } else if (*boost_cmd) {
            BoostPlan plan = BoostPlan::from_interval(copies,
                                                      parse_rational_flag(p1_text, "--p1"),
                                                      parse_rational_flag(p2_text, "--p2"));
            if (!threshold_text.empty())
                plan.threshold = parse_rational_flag(threshold_text, "--threshold");
            result = boost(load_prac(in_path), plan);
        } else if (*normalize_cmd) {
            result = normalize_probability(load_prac(in_path),
                                           parse_rational_flag(p1_text, "--p1"),
                                           parse_rational_flag(p2_text, "--p2"));
        } else if (*union_cmd || *intersect_cmd) {
            std::cerr << "note: the construction assumes both inputs recognize their languages "
                         "with probability > 2/3\n";
            result = boolean_combine(load_prac(in_path), load_prac(in_path_b),
                                     *union_cmd ? BoolOp::Union : BoolOp::Intersection);
        } else if (*complement_cmd) {
            result = complement(load_prac(in_path));
        } else if (*invhom_cmd) {
            result = inverse_hom(load_prac(in_path),
                                 homomorphism_from_json(load_json_file(map_path)));
        } else if (*quotient_cmd) {
            result = left_quotient(load_prac(in_path), word);
        } else if (*strip_dollar_cmd) {
            result = strip_dollar(load_prac(in_path), m_param);
        } else {
            result = strip_hash(load_prac(in_path),
                                parse_rational_flag(p1_text, "--p1"),
                                parse_rational_flag(p2_text, "--p2"),
                                parse_rational_flag(eps_text, "--eps"), copies);
        }
        const Json j = prac_to_json(result);
        if (out_path.empty())
            std::cout << j.dump(2) << "\n";
        else
            save_json_file(out_path, j);
        return 0;
    }

    if (*classify_cmd) {
        const Dfa d = alphabet_override.empty()
                          ? minimal_dfa_from_regex(regex_text)
                          : minimal_dfa_from_regex(regex_text, alphabet_override);
        const auto witness = classify_star(d);
        if (!witness) {
            std::cout << "not type (*)\n";
            return 0;
        }
        std::cout << "type (*) via " << to_string(witness->kind) << "; witness x=" << witness->x
                  << " y=" << witness->y << "\n";
        return 0;
    }

    if (*markov_cmd) {
        const StochMatrix m = matrix_from_json(load_json_file(in_path));
        const Json j = chain_report_to_json(analyze_chain(m));
        if (out_path.empty())
            std::cout << j.dump(2) << "\n";
        else
            save_json_file(out_path, j);
        return 0;
    }

    if (*probe_cmd) {
        const PraC a = load_prac(in_path);
        const ProbeResult r = convergence_probe(a, {omega_text, x_text, y_text, z_text}, m_max);
        std::ostream& os = data_stream(out_path, out_file);
        os << (float_column ? "m,gap,gap_float\n" : "m,gap\n");
        for (std::size_t i = 0; i < r.gaps.size(); ++i) {
            os << r.m[i] << "," << r.gaps[i];
            if (float_column) os << "," << r.gaps[i].to_double();
            os << "\n";
        }
        std::cerr << "K=" << r.k_power << "\n";
        return 0;
    }

    if (*prototype_cmd) {
        const StochMatrix m = matrix_from_json(load_json_file(in_path));
        if (!m.is_doubly_stochastic()) throw DataError("matrix is not doubly stochastic");
        std::optional<ComplexMatrix> found;
        if (m.order() == 3) {
            const auto verdict = unistochastic_3x3(m);
            std::cout << (verdict.yes ? "unistochastic: yes\n" : "unistochastic: no\n");
            if (verdict.yes) found = verdict.prototype;
        } else {
            found = search_prototype(m, budget, seed);
            std::cout << (found ? "prototype: found\n"
                                : "prototype: absent within budget (not a nonexistence proof)\n");
        }
        if (found && !out_path.empty()) save_json_file(out_path, complex_to_json(*found));
        return 0;
    }

    if (*sim15_cmd) {
        const AutomatonFile a = load_automaton(in_path);
        const auto* p15 = std::get_if<Pra15>(&a);
        if (!p15) throw UsageError("simulate15 needs a pra15 automaton");
        const Pra15RunStats stats = simulate_pra15(*p15, word, trials, max_steps, seed);
        std::cout << "trials=" << stats.trials << " accepted=" << stats.accepted
                  << " rejected=" << stats.rejected << " timeouts=" << stats.timeouts
                  << " mean_steps=" << stats.mean_steps_halting << "\n";
        return 0;
    }

    throw UsageError("no subcommand selected");
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
