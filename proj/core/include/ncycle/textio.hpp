#pragma once

#include <string>
#include <vector>

#include "ncycle/field.hpp"
#include "ncycle/permpoly.hpp"

namespace ncycle {

// Text forms used at every external surface.
//
// Field:      "p^m" or "p" for prime fields, optional modulus as a
//             comma-separated low-to-high coefficient list.
// Element:    canonical integer encoding, base 10.
// Polynomial: terms "C*x^E", "x^E", "x" or "C" joined by '+',
//             whitespace ignored, e.g. "x^521 + x^417 + x^105 + x".

struct FieldSpec {
    std::uint32_t p = 0;
    std::uint32_t m = 1;
};

FieldSpec parse_field_spec(const std::string& text);

SparsePoly parse_poly(const std::string& text, const FieldCtx& ctx);
std::string print_poly(const SparsePoly& f);

std::vector<std::uint32_t> parse_u32_list(const std::string& text);  // "0,1,2"
std::vector<u64> parse_u64_list(const std::string& text);
std::string print_u64_list(const std::vector<u64>& v);

}  // namespace ncycle
