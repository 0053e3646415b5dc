#include "anoncontract/json_io.hpp"

#include "anoncontract/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

namespace anoncontract {

namespace {

using json = nlohmann::json;

// SAX-to-DOM bridge that stores every numeric literal as the string it was
// written as. Doubles only ever appear downstream when float mode asks for
// them, so exact mode never loses digits.
class RawNumberSax : public nlohmann::json_sax<json> {
public:
    json root;
    std::string error;

    bool null() override { return value(nullptr); }
    bool boolean(bool v) override { return value(v); }
    bool number_integer(number_integer_t v) override { return value(std::to_string(v)); }
    bool number_unsigned(number_unsigned_t v) override { return value(std::to_string(v)); }
    bool number_float(number_float_t, const string_t& raw) override { return value(raw); }
    bool string(string_t& v) override { return value(v); }
    bool binary(binary_t&) override {
        error = "binary values are not part of the schema";
        return false;
    }
    bool start_object(std::size_t) override {
        open(json::object());
        return true;
    }
    bool key(string_t& k) override {
        pending_key_ = k;
        return true;
    }
    bool end_object() override {
        stack_.pop_back();
        return true;
    }
    bool start_array(std::size_t) override {
        open(json::array());
        return true;
    }
    bool end_array() override {
        stack_.pop_back();
        return true;
    }
    bool parse_error(std::size_t position, const std::string&,
                     const nlohmann::detail::exception& ex) override {
        error = "malformed JSON near byte " + std::to_string(position) + ": " + ex.what();
        return false;
    }

private:
    std::vector<json*> stack_;
    std::string pending_key_;

    json* place(json v) {
        if (stack_.empty()) {
            root = std::move(v);
            return &root;
        }
        json& top = *stack_.back();
        if (top.is_array()) {
            top.push_back(std::move(v));
            return &top.back();
        }
        json& slot = top[pending_key_];
        slot = std::move(v);
        return &slot;
    }
    bool value(json v) {
        place(std::move(v));
        return true;
    }
    void open(json v) { stack_.push_back(place(std::move(v))); }
};

json parse_tokens(const std::string& text) {
    RawNumberSax sax;
    if (!json::sax_parse(text, &sax)) {
        if (sax.error.empty()) sax.error = "malformed JSON";
        throw ValidationError(sax.error);
    }
    return std::move(sax.root);
}

Scalar scalar_field(const json& v, const std::string& where, Mode mode) {
    if (!v.is_string())
        throw ValidationError(where + " must be a number or a rational string");
    return scalar_from_token(v.get<std::string>(), mode);
}

} // namespace

Instance parse_instance(const std::string& json_text, Mode mode) {
    const json doc = parse_tokens(json_text);
    if (!doc.is_object() || !doc.contains("agents"))
        throw ValidationError("instance file must be an object with an \"agents\" array");
    for (const auto& [key, v] : doc.items())
        if (key != "agents")
            throw ValidationError("unknown key in instance file: " + key);
    const json& arr = doc["agents"];
    if (!arr.is_array())
        throw ValidationError("\"agents\" must be an array");

    std::vector<Agent> agents;
    agents.reserve(arr.size());
    std::size_t idx = 0;
    for (const json& entry : arr) {
        ++idx;
        const std::string where = "agent " + std::to_string(idx);
        if (!entry.is_object())
            throw ValidationError(where + " must be an object with keys q and c");
        if (!entry.contains("q") || !entry.contains("c"))
            throw ValidationError(where + " is missing q or c");
        for (const auto& [key, v] : entry.items())
            if (key != "q" && key != "c")
                throw ValidationError("unknown key in " + where + ": " + key);
        agents.push_back(Agent{scalar_field(entry["q"], where + " q", mode),
                               scalar_field(entry["c"], where + " c", mode)});
    }
    return Instance(std::move(agents), mode);
}

AnonymousContract parse_contract(const std::string& json_text, Mode mode) {
    const json doc = parse_tokens(json_text);
    if (!doc.is_object() || !doc.contains("w"))
        throw ValidationError("contract file must be an object with a \"w\" array");
    for (const auto& [key, v] : doc.items())
        if (key != "w")
            throw ValidationError("unknown key in contract file: " + key);
    const json& arr = doc["w"];
    if (!arr.is_array())
        throw ValidationError("\"w\" must be an array");

    std::vector<Payment> entries;
    entries.reserve(arr.size());
    std::size_t idx = 0;
    for (const json& entry : arr) {
        ++idx;
        if (entry.is_string() && entry.get<std::string>() == "blocked") {
            entries.push_back(Payment::make_blocked());
            continue;
        }
        entries.push_back(Payment::finite(
            scalar_field(entry, "contract entry " + std::to_string(idx), mode)));
    }
    return AnonymousContract(std::move(entries), mode);
}

Instance load_instance(const std::string& path, Mode mode) {
    return parse_instance(read_text_file(path), mode);
}

AnonymousContract load_contract(const std::string& path, Mode mode) {
    return parse_contract(read_text_file(path), mode);
}

std::string json_value_token(const Scalar& s) {
    const std::string tok = s.str();
    // Rational tokens carry '/'; everything else the canonical printer emits
    // is a valid JSON number.
    if (tok.find('/') != std::string::npos) return "\"" + tok + "\"";
    return tok;
}

std::string instance_to_json(const Instance& inst) {
    std::ostringstream out;
    out << "{\"agents\":[";
    for (int i = 0; i < inst.n(); ++i) {
        out << (i == 0 ? "\n" : ",\n");
        out << "{\"q\":" << json_value_token(inst.agent(i).q)
            << ",\"c\":" << json_value_token(inst.agent(i).c) << "}";
    }
    out << "\n]}\n";
    return out.str();
}

std::string contract_to_json(const AnonymousContract& w) {
    std::ostringstream out;
    out << "{\"w\":[";
    for (int j = 1; j <= w.n(); ++j) {
        if (j > 1) out << ",";
        const Payment& p = w.at(j);
        if (p.blocked) out << "\"blocked\"";
        else out << json_value_token(p.value);
    }
    out << "]}\n";
    return out.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw ValidationError("error reading file: " + path);
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot open file for writing: " + path);
    out << content;
    out.flush();
    if (!out) throw ValidationError("error writing file: " + path);
}

} // namespace anoncontract
