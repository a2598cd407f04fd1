#include "frobsub/cli.hpp"

#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "frobsub/errors.hpp"
#include "frobsub/freq.hpp"
#include "frobsub/io.hpp"
#include "frobsub/report.hpp"

namespace frobsub {

namespace {

std::vector<ExactVector> parse_vectors(const std::vector<std::string>& specs) {
    std::vector<ExactVector> out;
    for (const auto& spec : specs) {
        std::vector<BigInt> coords;
        std::string cur;
        auto flush = [&] {
            if (cur.empty() || cur.find_first_not_of("0123456789") != std::string::npos)
                throw ParseError("--vector expects comma-separated non-negative integers, got '" + spec + "'");
            coords.emplace_back(cur);
            cur.clear();
        };
        for (char c : spec) {
            if (c == ',')
                flush();
            else if (c != ' ')
                cur += c;
        }
        flush();
        out.emplace_back(std::move(coords));
    }
    return out;
}

Letter letter_arg(const Substitution& s, const std::string& name) {
    if (!s.alphabet().contains(name)) throw ParseError("unknown letter '" + name + "'");
    return s.alphabet().index(name);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Limit directions of non-negative matrices and frequencies of substitutions", "frobsub"};
    app.require_subcommand(1);

    std::string file;
    std::vector<std::string> vectors;
    bool require_expanding = false;
    bool as_json = false;
    std::size_t blowup = 0;
    std::string letter;
    std::size_t max_len = 1;
    double tol = kDefaultTol;
    std::string word;

    auto* am = app.add_subcommand("analyze-matrix", "Block structure, eigenvalues, growth types, principal eigenvectors");
    am->add_option("file", file, "Matrix file")->required();
    am->add_option("--vector", vectors, "Starting vector c1,c2,... for a normalized limit (repeatable)");
    am->add_flag("--require-expanding", require_expanding, "Exit with code 3 unless the matrix is expanding");
    am->add_flag("--json", as_json, "JSON output");

    auto* as = app.add_subcommand("analyze-subst", "Incidence analysis of a substitution");
    as->add_option("file", file, "Substitution file")->required();
    as->add_option("--blowup", blowup, "Also build the level-N blow-up")->check(CLI::Range(2, 12));
    as->add_flag("--json", as_json, "JSON output");

    auto* fq = app.add_subcommand("freq", "Factor frequency table as JSON");
    fq->add_option("file", file, "Substitution file")->required();
    fq->add_option("--letter", letter, "Base letter")->required();
    fq->add_option("--max-len", max_len, "Longest factor length")->check(CLI::Range(1, 12));
    fq->add_option("--tol", tol, "Convergence tolerance")->check(CLI::PositiveNumber);

    auto* ms = app.add_subcommand("measure", "Measure of the cylinder of a word");
    ms->add_option("file", file, "Substitution file")->required();
    ms->add_option("--letter", letter, "Base letter")->required();
    ms->add_option("--word", word, "Cylinder word")->required();

    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    try {
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitParse;
    }

    try {
        if (am->parsed()) {
            const auto m = read_matrix_file(file);
            if (require_expanding && !is_expanding(m)) throw NotExpanding("matrix is not expanding");
            auto report = analyze_matrix(m, parse_vectors(vectors));
            report.input = file;
            if (as_json)
                out << nlohmann::json(report).dump(2) << '\n';
            else
                out << render_text(report);
        } else if (as->parsed()) {
            const auto s = read_substitution_file(file);
            auto report = analyze_substitution(s, blowup ? std::optional<std::size_t>(blowup) : std::nullopt);
            report.input = file;
            if (as_json)
                out << nlohmann::json(report).dump(2) << '\n';
            else
                out << render_text(report);
        } else if (fq->parsed()) {
            const auto s = read_substitution_file(file);
            const auto a = letter_arg(s, letter);
            const auto tab = frequency_table(s, a, max_len, tol);
            const auto k = kirchhoff_check(tab);
            out << table_to_json(tab, s.alphabet(), k).dump(2) << '\n';
        } else if (ms->parsed()) {
            const auto s = read_substitution_file(file);
            const auto a = letter_arg(s, letter);
            Word w;
            try {
                w = s.alphabet().parse(word);
            } catch (const InvalidArgument& e) {
                throw ParseError(e.what());
            }
            if (w.empty()) throw ParseError("--word is empty");
            out << format_float(measure_cylinder(s, a, w)) << '\n';
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const InvalidArgument& e) {
        err << "invalid argument: " << e.what() << '\n';
        return kExitParse;
    } catch (const HypothesisViolated& e) {
        err << "hypothesis violated: " << e.what() << '\n';
        return kExitHypothesis;
    } catch (const MaxIterExceeded& e) {
        err << "no convergence: " << e.what() << '\n';
        return kExitConvergence;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitOk;
}

}  // namespace frobsub
