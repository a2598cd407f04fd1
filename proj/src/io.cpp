#include "frobsub/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "frobsub/errors.hpp"

namespace frobsub {

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = text.find('\n', start);
        out.push_back(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return out;
}

// Drops a '#' comment that starts the line or follows whitespace.
std::string_view strip_comment(std::string_view line) {
    for (std::size_t i = 0; i < line.size(); ++i)
        if (line[i] == '#' && (i == 0 || std::isspace(static_cast<unsigned char>(line[i - 1]))))
            return line.substr(0, i);
    return line;
}

std::vector<std::string> tokens(std::string_view s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

ExactMatrix square(std::vector<std::vector<BigInt>> rows) {
    if (rows.empty()) throw ParseError("matrix has no rows");
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].size() != rows.size())
            throw ParseError("row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                             " entries, expected " + std::to_string(rows.size()));
    return ExactMatrix(std::move(rows));
}

ExactMatrix parse_json_matrix(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_array()) throw ParseError("JSON matrix must be an array of rows");
    std::vector<std::vector<BigInt>> rows;
    for (const auto& row : j) {
        if (!row.is_array()) throw ParseError("JSON matrix row is not an array");
        auto& r = rows.emplace_back();
        for (const auto& x : row) {
            if (x.is_number_unsigned())
                r.emplace_back(std::to_string(x.get<std::uint64_t>()));
            else if (x.is_number_integer() && x.get<std::int64_t>() >= 0)
                r.emplace_back(std::to_string(x.get<std::int64_t>()));
            else
                throw ParseError("matrix entries must be non-negative integers, got " + x.dump());
        }
    }
    return square(std::move(rows));
}

}  // namespace

ExactMatrix parse_matrix(std::string_view text) {
    std::vector<std::string_view> content;
    for (auto line : split_lines(text)) {
        const auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        content.push_back(t);
    }
    if (content.empty()) throw ParseError("matrix input is empty");
    if (content.front().front() == '[') return parse_json_matrix(text);

    std::vector<std::vector<BigInt>> rows;
    for (auto line : content) {
        auto& r = rows.emplace_back();
        std::string cur;
        auto flush = [&] {
            if (cur.empty()) return;
            for (char c : cur)
                if (!std::isdigit(static_cast<unsigned char>(c)))
                    throw ParseError("not a non-negative integer: '" + cur + "'");
            r.emplace_back(cur);
            cur.clear();
        };
        for (char c : line) {
            if (std::isspace(static_cast<unsigned char>(c)) || c == ',')
                flush();
            else
                cur += c;
        }
        flush();
    }
    return square(std::move(rows));
}

ExactMatrix read_matrix_file(const std::filesystem::path& path) {
    return parse_matrix(read_file(path));
}

Substitution parse_substitution(std::string_view text) {
    struct Rule {
        std::string lhs;
        std::string rhs;
        std::size_t line;
    };
    std::vector<Rule> rules;
    std::size_t lineno = 0;
    for (auto raw : split_lines(text)) {
        ++lineno;
        const auto line = trim(strip_comment(raw));
        if (line.empty()) continue;
        std::size_t arrow = line.find("->");
        std::size_t arrow_len = 2;
        if (arrow == std::string_view::npos) {
            arrow = line.find("\xE2\x86\x92");  // U+2192
            arrow_len = 3;
        }
        if (arrow == std::string_view::npos)
            throw ParseError("line " + std::to_string(lineno) + ": expected '<letter> -> <image>'");
        const auto lhs = trim(line.substr(0, arrow));
        if (lhs.empty() || tokens(lhs).size() != 1)
            throw ParseError("line " + std::to_string(lineno) + ": left side must be a single letter");
        rules.push_back({std::string(lhs), std::string(trim(line.substr(arrow + arrow_len))), lineno});
    }
    if (rules.empty()) throw ParseError("substitution has no rules");

    bool single_char = true;
    std::map<std::string, std::size_t> rule_of;
    for (std::size_t k = 0; k < rules.size(); ++k) {
        if (!rule_of.emplace(rules[k].lhs, k).second)
            throw ParseError("line " + std::to_string(rules[k].line) + ": duplicate rule for '" + rules[k].lhs + "'");
        if (rules[k].lhs.size() != 1) single_char = false;
    }

    std::vector<std::vector<std::string>> images(rules.size());
    for (std::size_t k = 0; k < rules.size(); ++k) {
        auto toks = tokens(rules[k].rhs);
        if (toks.size() == 1 && single_char) {
            const std::string s = toks.front();
            toks.clear();
            for (char c : s) toks.emplace_back(1, c);
        }
        for (const auto& t : toks)
            if (!rule_of.count(t))
                throw ParseError("line " + std::to_string(rules[k].line) + ": letter '" + t + "' has no rule");
        images[k] = std::move(toks);
    }

    std::vector<std::string> order;
    std::map<std::string, Letter> index;
    auto see = [&](const std::string& l) {
        if (index.emplace(l, static_cast<Letter>(order.size())).second) order.push_back(l);
    };
    for (std::size_t k = 0; k < rules.size(); ++k) {
        see(rules[k].lhs);
        for (const auto& t : images[k]) see(t);
    }

    std::vector<Word> words(order.size());
    for (std::size_t k = 0; k < rules.size(); ++k) {
        Word w;
        for (const auto& t : images[k]) w.push_back(index.at(t));
        words[index.at(rules[k].lhs)] = std::move(w);
    }
    try {
        return Substitution(Alphabet(order), std::move(words));
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what());
    }
}

Substitution read_substitution_file(const std::filesystem::path& path) {
    return parse_substitution(read_file(path));
}

double round12(double x) {
    if (!std::isfinite(x) || x == 0.0) return x;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

std::string format_float(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    std::string s = buf;
    if (s == "-0") s = "0";
    if (std::isfinite(x) && s.find_first_of(".e") == std::string::npos) s += ".0";
    return s;
}

}  // namespace frobsub
