#include "ncycle/textio.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>

namespace ncycle {

namespace {

std::string strip_ws(const std::string& in) {
    std::string out;
    out.reserve(in.size());
    for (char c : in)
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    return out;
}

u64 parse_u64(std::string_view sv, const char* what) {
    u64 v = 0;
    auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
    if (ec != std::errc{} || ptr != sv.data() + sv.size())
        throw std::invalid_argument(std::string("failed to parse ") + what + ": '" +
                                    std::string(sv) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view sv, char sep) {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = sv.find(sep, pos);
        if (next == std::string_view::npos) {
            parts.push_back(sv.substr(pos));
            return parts;
        }
        parts.push_back(sv.substr(pos, next - pos));
        pos = next + 1;
    }
}

}  // namespace

FieldSpec parse_field_spec(const std::string& text) {
    const std::string t = strip_ws(text);
    FieldSpec spec;
    const auto caret = t.find('^');
    if (caret == std::string::npos) {
        spec.p = static_cast<std::uint32_t>(parse_u64(t, "field characteristic"));
        spec.m = 1;
    } else {
        spec.p = static_cast<std::uint32_t>(parse_u64(t.substr(0, caret), "field characteristic"));
        spec.m = static_cast<std::uint32_t>(parse_u64(t.substr(caret + 1), "field degree"));
    }
    if (spec.p < 2 || spec.m < 1)
        throw std::invalid_argument("invalid field spec: '" + text + "'");
    return spec;
}

SparsePoly parse_poly(const std::string& text, const FieldCtx& ctx) {
    const std::string t = strip_ws(text);
    if (t.empty()) throw std::invalid_argument("empty polynomial");
    std::vector<std::pair<u64, Elem>> terms;
    for (std::string_view term : split(t, '+')) {
        if (term.empty()) throw std::invalid_argument("empty term in polynomial '" + text + "'");
        u64 coeff = 1;
        bool have_coeff = false;
        auto xpos = term.find('x');
        if (xpos == std::string_view::npos) {
            // constant term "C"
            coeff = parse_u64(term, "coefficient");
            if (coeff >= ctx.q)
                throw std::invalid_argument("coefficient out of range in '" + text + "'");
            terms.emplace_back(0, static_cast<Elem>(coeff));
            continue;
        }
        if (xpos > 0) {
            if (term[xpos - 1] != '*')
                throw std::invalid_argument("expected '*' before x in '" + std::string(term) + "'");
            coeff = parse_u64(term.substr(0, xpos - 1), "coefficient");
            have_coeff = true;
        }
        u64 exp = 1;
        std::string_view rest = term.substr(xpos + 1);
        if (!rest.empty()) {
            if (rest[0] != '^')
                throw std::invalid_argument("expected '^' after x in '" + std::string(term) + "'");
            exp = parse_u64(rest.substr(1), "exponent");
        }
        if (have_coeff && coeff >= ctx.q)
            throw std::invalid_argument("coefficient out of range in '" + text + "'");
        terms.emplace_back(exp, static_cast<Elem>(coeff));
    }
    return make_poly(std::move(terms), ctx);
}

std::string print_poly(const SparsePoly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (auto it = f.terms.rbegin(); it != f.terms.rend(); ++it) {
        const auto [e, c] = *it;
        if (!out.empty()) out += " + ";
        if (e == 0) {
            out += std::to_string(c);
            continue;
        }
        if (c != 1) {
            out += std::to_string(c);
            out += "*";
        }
        out += "x";
        if (e != 1) {
            out += "^";
            out += std::to_string(e);
        }
    }
    return out;
}

std::vector<std::uint32_t> parse_u32_list(const std::string& text) {
    std::vector<std::uint32_t> out;
    for (auto part : split(strip_ws(text), ','))
        out.push_back(static_cast<std::uint32_t>(parse_u64(part, "list entry")));
    return out;
}

std::vector<u64> parse_u64_list(const std::string& text) {
    std::vector<u64> out;
    for (auto part : split(strip_ws(text), ','))
        out.push_back(parse_u64(part, "list entry"));
    return out;
}

std::string print_u64_list(const std::vector<u64>& v) {
    std::string out;
    for (u64 x : v) {
        if (!out.empty()) out += ",";
        out += std::to_string(x);
    }
    return out;
}

}  // namespace ncycle
