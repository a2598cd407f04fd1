#include "frobsub/report.hpp"

#include <algorithm>
#include <sstream>

#include "frobsub/errors.hpp"
#include "frobsub/io.hpp"

namespace frobsub {

using nlohmann::json;

namespace {

FloatVector rounded(FloatVector v) {
    for (auto& x : v) x = round12(x);
    return v;
}

template <class T>
std::vector<T> opt_list(const json& j, const char* key) {
    return j.contains(key) ? j.at(key).get<std::vector<T>>() : std::vector<T>{};
}

std::string join_floats(const FloatVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_float(v[i]);
    return s + ")";
}

}  // namespace

void to_json(json& j, const AnalysisReport& r) {
    j = json::object();
    j["kind"] = r.kind;
    j["input"] = r.input;
    j["dimension"] = r.dimension;
    if (!r.alphabet.empty()) j["alphabet"] = r.alphabet;
    j["expanding"] = r.expanding;
    j["pb_frobenius"] = r.pb_frobenius;
    j["pb_power"] = r.pb_power;
    j["analysis_power"] = r.analysis_power;
    if (r.stabilizing_power) j["stabilizing_power"] = *r.stabilizing_power;

    json blocks = json::array();
    for (const auto& b : r.blocks) {
        json jb = {{"index", b.index},           {"indices", b.indices},   {"class", b.cls},
                   {"period", b.period},         {"eigenvalue", b.eigenvalue},
                   {"growth_degree", b.growth_degree}, {"limit_case", b.limit_case},
                   {"principal", b.principal}};
        if (!b.letters.empty()) jb["letters"] = b.letters;
        blocks.push_back(std::move(jb));
    }
    j["blocks"] = std::move(blocks);
    j["order"] = r.order;

    json principal = json::array();
    for (const auto& p : r.principal)
        principal.push_back(
            {{"block", p.block}, {"eigenvalue", p.eigenvalue}, {"vector", p.vector}, {"residual", p.residual}});
    j["principal"] = std::move(principal);

    json limits = json::array();
    for (const auto& l : r.limits)
        limits.push_back({{"start", l.start},
                          {"power", l.power},
                          {"limit", l.limit},
                          {"eigenvalue", l.eigenvalue},
                          {"iterations", l.iterations},
                          {"residual", l.residual},
                          {"growth_degree", l.growth_degree}});
    j["limits"] = std::move(limits);

    if (r.blowup)
        j["blowup"] = {{"n", r.blowup->n},
                       {"alphabet_size", r.blowup->alphabet_size},
                       {"factors", r.blowup->factors},
                       {"pb_frobenius", r.blowup->pb_frobenius},
                       {"primitive", r.blowup->primitive}};

    if (!r.frequencies.empty()) {
        json freqs = json::array();
        for (const auto& f : r.frequencies)
            freqs.push_back({{"letter", f.letter}, {"frequencies", f.frequencies}, {"growth_rate", f.growth_rate}});
        j["letter_frequencies"] = std::move(freqs);
    }
    j["notes"] = r.notes;
}

void from_json(const json& j, AnalysisReport& r) {
    r = AnalysisReport{};
    j.at("kind").get_to(r.kind);
    j.at("input").get_to(r.input);
    j.at("dimension").get_to(r.dimension);
    r.alphabet = opt_list<std::string>(j, "alphabet");
    j.at("expanding").get_to(r.expanding);
    j.at("pb_frobenius").get_to(r.pb_frobenius);
    j.at("pb_power").get_to(r.pb_power);
    j.at("analysis_power").get_to(r.analysis_power);
    if (j.contains("stabilizing_power")) r.stabilizing_power = j.at("stabilizing_power").get<std::uint64_t>();

    for (const auto& jb : j.at("blocks")) {
        BlockReport b;
        jb.at("index").get_to(b.index);
        jb.at("indices").get_to(b.indices);
        b.letters = opt_list<std::string>(jb, "letters");
        jb.at("class").get_to(b.cls);
        jb.at("period").get_to(b.period);
        jb.at("eigenvalue").get_to(b.eigenvalue);
        jb.at("growth_degree").get_to(b.growth_degree);
        jb.at("limit_case").get_to(b.limit_case);
        jb.at("principal").get_to(b.principal);
        r.blocks.push_back(std::move(b));
    }
    j.at("order").get_to(r.order);

    for (const auto& jp : j.at("principal")) {
        PrincipalReport p;
        jp.at("block").get_to(p.block);
        jp.at("eigenvalue").get_to(p.eigenvalue);
        jp.at("vector").get_to(p.vector);
        jp.at("residual").get_to(p.residual);
        r.principal.push_back(std::move(p));
    }
    for (const auto& jl : j.at("limits")) {
        LimitReport l;
        jl.at("start").get_to(l.start);
        jl.at("power").get_to(l.power);
        jl.at("limit").get_to(l.limit);
        jl.at("eigenvalue").get_to(l.eigenvalue);
        jl.at("iterations").get_to(l.iterations);
        jl.at("residual").get_to(l.residual);
        jl.at("growth_degree").get_to(l.growth_degree);
        r.limits.push_back(std::move(l));
    }
    if (j.contains("blowup")) {
        const auto& jb = j.at("blowup");
        BlowupReport b;
        jb.at("n").get_to(b.n);
        jb.at("alphabet_size").get_to(b.alphabet_size);
        jb.at("factors").get_to(b.factors);
        jb.at("pb_frobenius").get_to(b.pb_frobenius);
        jb.at("primitive").get_to(b.primitive);
        r.blowup = std::move(b);
    }
    if (j.contains("letter_frequencies"))
        for (const auto& jf : j.at("letter_frequencies")) {
            LetterFrequencyReport f;
            jf.at("letter").get_to(f.letter);
            jf.at("frequencies").get_to(f.frequencies);
            jf.at("growth_rate").get_to(f.growth_rate);
            r.frequencies.push_back(std::move(f));
        }
    r.notes = opt_list<std::string>(j, "notes");
}

AnalysisReport analyze_matrix(const ExactMatrix& m, const std::vector<ExactVector>& vectors) {
    AnalysisReport r;
    r.kind = "matrix";
    r.dimension = m.size();
    r.expanding = is_expanding(m);
    r.pb_frobenius = scc_blocks(m).is_pb_frobenius();

    const auto pb = pb_frobenius_power(m);
    const auto prim = primitive_frobenius_power(m);
    r.pb_power = pb.exponent;
    r.analysis_power = prim.exponent;
    const auto& a = prim.power;
    const auto& dec = prim.decomposition;

    const auto eig = block_eigenvalues(a, dec);
    std::vector<std::size_t> principal;
    try {
        principal = principal_blocks(a, dec, eig);
    } catch (const HypothesisViolated& e) {
        r.notes.push_back(std::string("principal eigenvectors skipped: ") + e.what());
    }

    for (std::size_t i = 0; i < dec.block_count(); ++i) {
        const auto& blk = dec.block(i);
        BlockReport b;
        b.index = i;
        b.indices = blk.indices;
        b.cls = to_string(blk.cls);
        b.period = blk.period;
        b.eigenvalue = round12(eig[i]);
        b.growth_degree = growth_type(dec, eig, i).degree;
        b.limit_case = static_cast<int>(classify_limit_case(dec, eig, i));
        b.principal = std::find(principal.begin(), principal.end(), i) != principal.end();
        r.blocks.push_back(std::move(b));
    }
    r.order = dec.order_pairs();

    for (std::size_t i : principal) {
        try {
            const auto pe = principal_eigenvector(a, dec, eig, i);
            r.principal.push_back({i, round12(pe.lambda), rounded(pe.vector), round12(pe.residual)});
        } catch (const Error& e) {
            r.notes.push_back("principal eigenvector of block " + std::to_string(i) + " failed: " + e.what());
        }
    }

    for (const auto& v : vectors) {
        const auto rep = normalized_limit(pb.power, v);
        LimitReport l;
        for (const auto& c : v.coords()) l.start.push_back(c.get_str());
        l.power = pb.exponent;
        l.limit = rounded(rep.limit);
        l.eigenvalue = round12(rep.eigenvalue);
        l.iterations = rep.iterations;
        l.residual = round12(rep.residual);
        l.growth_degree = rep.growth.degree;
        r.limits.push_back(std::move(l));
    }
    return r;
}

AnalysisReport analyze_substitution(const Substitution& s, std::optional<std::size_t> blowup) {
    if (!is_expanding_subst(s)) throw NotExpanding("substitution is not expanding");
    AnalysisReport r = analyze_matrix(incidence_matrix(s));
    r.kind = "substitution";
    r.alphabet = s.alphabet().letters();
    r.stabilizing_power = stabilizing_power(s);
    for (auto& b : r.blocks)
        for (std::size_t idx : b.indices) b.letters.push_back(s.alphabet().name(static_cast<Letter>(idx)));

    for (Letter x = 0; x < s.size(); ++x) {
        LetterFrequencyReport f;
        f.letter = s.alphabet().name(x);
        f.frequencies = rounded(letter_frequencies(s, x));
        f.growth_rate = round12(growth_rate(s, x));
        r.frequencies.push_back(std::move(f));
    }

    if (blowup) {
        const auto p = *r.stabilizing_power;
        const auto powered = p == 1 ? s : substitution_power(s, p);
        const auto blow = blow_up(powered, *blowup);
        const auto mn = incidence_matrix(blow.substitution);
        BlowupReport b;
        b.n = *blowup;
        b.alphabet_size = blow.factors.size();
        for (const auto& w : blow.factors.words) b.factors.push_back(s.alphabet().render(w));
        b.pb_frobenius = scc_blocks(mn).is_pb_frobenius();
        b.primitive = is_primitive(mn);
        r.blowup = std::move(b);
    }
    return r;
}

std::string render_text(const AnalysisReport& r) {
    std::ostringstream os;
    os << r.kind << ' ' << r.input << " (dimension " << r.dimension << ")\n";
    if (!r.alphabet.empty()) {
        os << "alphabet:";
        for (const auto& l : r.alphabet) os << ' ' << l;
        os << '\n';
    }
    os << "expanding: " << (r.expanding ? "yes" : "no") << '\n';
    os << "PB-Frobenius: " << (r.pb_frobenius ? "yes" : "no") << " (power " << r.pb_power << ")\n";
    if (r.stabilizing_power) os << "stabilizing power: " << *r.stabilizing_power << '\n';
    os << "blocks of M^" << r.analysis_power << ":\n";
    for (const auto& b : r.blocks) {
        os << "  B" << b.index + 1 << " {";
        for (std::size_t k = 0; k < b.indices.size(); ++k) {
            os << (k ? "," : "");
            if (b.letters.empty())
                os << b.indices[k] + 1;
            else
                os << b.letters[k];
        }
        os << "} " << b.cls << " eigenvalue " << format_float(b.eigenvalue) << " growth degree " << b.growth_degree
           << " case " << b.limit_case << (b.principal ? " principal" : "") << '\n';
    }
    if (!r.order.empty()) {
        os << "order:";
        for (const auto& [i, j] : r.order) os << " B" << i + 1 << ">B" << j + 1;
        os << '\n';
    }
    for (const auto& p : r.principal)
        os << "principal eigenvector B" << p.block + 1 << " (eigenvalue " << format_float(p.eigenvalue)
           << "): " << join_floats(p.vector) << '\n';
    for (const auto& l : r.limits) {
        os << "limit from (";
        for (std::size_t k = 0; k < l.start.size(); ++k) os << (k ? "," : "") << l.start[k];
        os << "): " << join_floats(l.limit) << " eigenvalue " << format_float(l.eigenvalue) << " after "
           << l.iterations << " iterations\n";
    }
    for (const auto& f : r.frequencies)
        os << "letter frequencies from " << f.letter << ": " << join_floats(f.frequencies) << " growth rate "
           << format_float(f.growth_rate) << '\n';
    if (r.blowup) {
        os << "blow-up n=" << r.blowup->n << ": " << r.blowup->alphabet_size << " factors {";
        for (std::size_t k = 0; k < r.blowup->factors.size(); ++k) os << (k ? ", " : "") << r.blowup->factors[k];
        os << "} PB-Frobenius " << (r.blowup->pb_frobenius ? "yes" : "no") << ", primitive "
           << (r.blowup->primitive ? "yes" : "no") << '\n';
    }
    for (const auto& n : r.notes) os << "note: " << n << '\n';
    return os.str();
}

json table_to_json(const FrequencyTable& tab, const Alphabet& alphabet, const KirchhoffReport& k) {
    json freqs = json::object();
    for (const auto& [w, f] : tab.entries) freqs[alphabet.render(w)] = round12(f);
    return {{"base_letter", alphabet.name(tab.base_letter)},
            {"power_used", tab.power_used},
            {"max_len", tab.max_len},
            {"frequencies", std::move(freqs)},
            {"growth_rate", round12(tab.growth_rate)},
            {"kirchhoff",
             {{"max_residual", round12(k.max_residual)}, {"worst", alphabet.render(k.worst)}, {"passed", k.passed}}}};
}

}  // namespace frobsub
