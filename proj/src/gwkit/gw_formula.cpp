#include "gwkit/gw_formula.hpp"

#include <algorithm>
#include <cctype>

namespace gwkit {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

struct Cursor {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    std::string identifier(const char* what) {
        skip_ws();
        if (pos >= s.size() || !ident_start(s[pos]))
            throw formula_error(std::string("expected ") + what, pos);
        const std::size_t start = pos;
        while (pos < s.size() && ident_char(s[pos])) ++pos;
        return s.substr(start, pos - start);
    }
};

}  // namespace

FormulaSpec parse_formula(const std::string& text) {
    Cursor c{text};
    FormulaSpec out;
    out.response = c.identifier("response name");
    c.skip_ws();
    if (c.pos >= text.size() || text[c.pos] != '~')
        throw formula_error("expected '~' after response", c.pos);
    ++c.pos;

    for (;;) {
        const std::size_t at = (c.skip_ws(), c.pos);
        const std::string name = c.identifier("predictor name");
        if (name == out.response)
            throw formula_error("response '" + name + "' repeated as predictor", at);
        if (std::find(out.predictors.begin(), out.predictors.end(), name) !=
            out.predictors.end())
            throw formula_error("duplicate predictor '" + name + "'", at);
        out.predictors.push_back(name);
        c.skip_ws();
        if (c.pos < text.size() && text[c.pos] == '+') {
            ++c.pos;
            continue;
        }
        break;
    }
    if (!c.done()) throw formula_error("unexpected trailing input", c.pos);
    return out;
}

}  // namespace gwkit
