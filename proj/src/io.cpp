#include "symeof/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

namespace symeof {

std::string format_sig(double v, int significant) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::general, significant);
    return std::string(buf, res.ptr);
}

namespace {

struct Token {
    double value;
    int line;
    int column;
};

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    int line = 1, col = 1;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r' || c == ',') {
            ++col;
            ++i;
            continue;
        }
        const int tok_line = line, tok_col = col;
        std::size_t j = i;
        while (j < text.size() && text[j] != ' ' && text[j] != '\t' &&
               text[j] != '\n' && text[j] != '\r' && text[j] != ',')
            ++j;
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + j, value);
        if (ec != std::errc() || ptr != text.data() + j)
            throw ParseError("not a number: '" + std::string(text.substr(i, j - i)) + "'",
                             tok_line, tok_col);
        if (!std::isfinite(value))
            throw ParseError("non-finite value", tok_line, tok_col);
        tokens.push_back({value, tok_line, tok_col});
        col += static_cast<int>(j - i);
        i = j;
    }
    return tokens;
}

}  // namespace

CmInput parse_cm_text(std::string_view text) {
    const std::vector<Token> tokens = tokenize(text);
    CmInput in;
    if (tokens.size() == 3) {
        in.from_triple = true;
        in.triple = StandardForm{tokens[0].value, tokens[0].value, tokens[1].value,
                                 tokens[2].value};
        in.gamma = standard_form_cm(in.triple);
        return in;
    }
    if (tokens.size() == 16) {
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                in.gamma(i, j) = tokens[static_cast<std::size_t>(4 * i + j)].value;
        return in;
    }
    const int line = tokens.empty() ? 1 : tokens.back().line;
    throw ParseError("expected 3 values (n kx kp) or 16 values (4x4 matrix), got " +
                         std::to_string(tokens.size()),
                     line, 1);
}

CmInput load_cm_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open input file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_cm_text(ss.str());
}

namespace {

std::string flag(bool v) { return v ? "1" : "0"; }

// NaN is not representable in JSON; emit null there.
std::string json_number(double v) {
    return std::isfinite(v) ? format_sig(v) : std::string("null");
}

}  // namespace

std::string report_text(const EntanglementReport& rep) {
    std::ostringstream os;
    os << "valid:      " << (rep.valid ? "yes" : "no") << "\n"
       << "symmetric:  " << (rep.symmetric ? "yes" : "no") << "\n"
       << "separable:  " << (rep.separable ? "yes" : "no") << "\n"
       << "n:          " << format_sig(rep.standard_form.n) << "\n"
       << "m:          " << format_sig(rep.standard_form.m) << "\n"
       << "k_x:        " << format_sig(rep.standard_form.kx) << "\n"
       << "k_p:        " << format_sig(rep.standard_form.kp) << "\n"
       << "delta:      " << format_sig(rep.delta) << "\n"
       << "r_delta:    " << format_sig(rep.r_delta) << "\n"
       << "eof_bits:   " << format_sig(rep.eof_bits) << "\n";
    return os.str();
}

std::string report_csv_header() {
    return "n,m,kx,kp,valid,symmetric,separable,delta,r_delta,eof_bits\n";
}

std::string report_csv_row(const EntanglementReport& rep) {
    std::ostringstream os;
    os << format_sig(rep.standard_form.n) << ',' << format_sig(rep.standard_form.m)
       << ',' << format_sig(rep.standard_form.kx) << ','
       << format_sig(rep.standard_form.kp) << ',' << flag(rep.valid) << ','
       << flag(rep.symmetric) << ',' << flag(rep.separable) << ','
       << format_sig(rep.delta) << ',' << format_sig(rep.r_delta) << ','
       << format_sig(rep.eof_bits) << '\n';
    return os.str();
}

std::string report_json(const EntanglementReport& rep) {
    std::ostringstream os;
    os << "{\"valid\": " << (rep.valid ? "true" : "false")
       << ", \"symmetric\": " << (rep.symmetric ? "true" : "false")
       << ", \"separable\": " << (rep.separable ? "true" : "false")
       << ", \"n\": " << json_number(rep.standard_form.n)
       << ", \"m\": " << json_number(rep.standard_form.m)
       << ", \"kx\": " << json_number(rep.standard_form.kx)
       << ", \"kp\": " << json_number(rep.standard_form.kp)
       << ", \"delta\": " << json_number(rep.delta)
       << ", \"r_delta\": " << json_number(rep.r_delta)
       << ", \"eof_bits\": " << json_number(rep.eof_bits) << "}\n";
    return os.str();
}

}  // namespace symeof
