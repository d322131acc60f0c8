#pragma once

#include <string>

#include "nfold/encoders.hpp"
#include "nfold/instance.hpp"
#include "nfold/transform.hpp"

namespace nfold::io {

// Instance files are UTF-8 JSON with fields r, t, n, D, b0, b_local, lower,
// upper, objective and an optional relations object. Integers whose
// magnitude reaches 2^53 are written as decimal strings; both forms parse.
// parse(print(x)) == x bit-exact for all integer fields.

RelationalInstance parse_instance(const std::string& text);
std::string print_instance(const RelationalInstance& rel);

std::string report_json(const SolveReport& rep);
std::string report_text(const SolveReport& rep);

encoders::Decoder parse_decoder(const std::string& text);
std::string print_decoder(const encoders::Decoder& dec);

// Application inputs.
encoders::MultiStringsInstance parse_multi_strings(const std::string& text);
std::vector<std::string> parse_string_lines(const std::string& text);
encoders::WsmInstance parse_wsm(const std::string& text);
encoders::BriberyInstance parse_bribery(const std::string& text);
encoders::HugeNFoldInstance parse_huge(const std::string& text);

std::string answer_json(const encoders::DecodedAnswer& ans);
std::string answer_text(const encoders::DecodedAnswer& ans);

}  // namespace nfold::io
