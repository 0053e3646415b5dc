#pragma once

#include "anoncontract/contract.hpp"
#include "anoncontract/instance.hpp"

#include <string>

namespace anoncontract {

// Instance files: {"agents": [{"q": <value>, "c": <value>}, ...]}.
// Contract files: {"w": [<value> | "blocked", ...]}.
// A <value> is a JSON number, or a string holding a rational "p/q" or a
// decimal. Numeric literals are captured as written (never via double),
// so exact mode sees exactly the digits in the file.

Instance parse_instance(const std::string& json_text, Mode mode);
AnonymousContract parse_contract(const std::string& json_text, Mode mode);

Instance load_instance(const std::string& path, Mode mode);
AnonymousContract load_contract(const std::string& path, Mode mode);

// Canonical, byte-deterministic emitters (fixed key order, one agent per
// line, canonical value tokens).
std::string instance_to_json(const Instance& inst);
std::string contract_to_json(const AnonymousContract& w);

// Canonical JSON fragment for one value: a bare number when the token is
// valid JSON, otherwise a quoted string (rationals like "1/3").
std::string json_value_token(const Scalar& s);

// Whole-file helpers; failures raise ValidationError naming the path.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace anoncontract
