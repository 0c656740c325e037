#include "incluse/toml_lite.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace incluse {

namespace {

struct Cursor {
    const std::string& s;
    size_t i = 0;
    int line = 1;

    bool done() const { return i >= s.size(); }
    char peek() const { return s[i]; }
    char get() {
        char c = s[i++];
        if (c == '\n') ++line;
        return c;
    }
    void skip_ws() {
        while (!done() && (s[i] == ' ' || s[i] == '\t')) ++i;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw std::runtime_error("toml parse error, line " + std::to_string(line) + ": " + msg);
    }
};

TomlValue parse_value(Cursor& c);

std::string parse_bare_key(Cursor& c) {
    std::string k;
    while (!c.done() && (std::isalnum(static_cast<unsigned char>(c.peek())) || c.peek() == '_' ||
                         c.peek() == '-' || c.peek() == '.'))
        k += c.get();
    if (k.empty()) c.fail("expected key");
    return k;
}

std::string parse_string_lit(Cursor& c) {
    c.get(); // opening quote
    std::string v;
    while (!c.done() && c.peek() != '"') {
        char ch = c.get();
        if (ch == '\\' && !c.done()) {
            char e = c.get();
            switch (e) {
            case 'n': v += '\n'; break;
            case 't': v += '\t'; break;
            case '"': v += '"'; break;
            case '\\': v += '\\'; break;
            default: c.fail("unsupported escape");
            }
        } else {
            v += ch;
        }
    }
    if (c.done()) c.fail("unterminated string");
    c.get();
    return v;
}

TomlValue parse_value(Cursor& c) {
    c.skip_ws();
    if (c.done()) c.fail("expected value");
    TomlValue v;
    char ch = c.peek();
    if (ch == '"') {
        v.kind = TomlValue::Kind::string;
        v.str = parse_string_lit(c);
    } else if (ch == '[') {
        c.get();
        v.kind = TomlValue::Kind::array;
        c.skip_ws();
        while (true) {
            c.skip_ws();
            while (!c.done() && c.peek() == '\n') { c.get(); c.skip_ws(); }
            if (c.done()) c.fail("unterminated array");
            if (c.peek() == ']') { c.get(); break; }
            v.array.push_back(parse_value(c));
            c.skip_ws();
            while (!c.done() && c.peek() == '\n') { c.get(); c.skip_ws(); }
            if (!c.done() && c.peek() == ',') c.get();
        }
    } else if (ch == '{') {
        c.get();
        v.kind = TomlValue::Kind::table;
        while (true) {
            c.skip_ws();
            if (c.done()) c.fail("unterminated inline table");
            if (c.peek() == '}') { c.get(); break; }
            std::string k = parse_bare_key(c);
            c.skip_ws();
            if (c.done() || c.get() != '=') c.fail("expected '=' in inline table");
            v.table[k] = parse_value(c);
            c.skip_ws();
            if (!c.done() && c.peek() == ',') c.get();
        }
    } else if (std::isalpha(static_cast<unsigned char>(ch))) {
        std::string word = parse_bare_key(c);
        if (word == "true") { v.kind = TomlValue::Kind::boolean; v.b = true; }
        else if (word == "false") { v.kind = TomlValue::Kind::boolean; v.b = false; }
        else c.fail("unknown literal '" + word + "'");
    } else {
        std::string num;
        while (!c.done() && (std::isdigit(static_cast<unsigned char>(c.peek())) || c.peek() == '+' ||
                             c.peek() == '-' || c.peek() == '.' || c.peek() == 'e' || c.peek() == 'E' ||
                             c.peek() == '_'))
            num += c.get();
        if (num.empty()) c.fail("expected value");
        std::string clean;
        for (char d : num)
            if (d != '_') clean += d;
        try {
            size_t used = 0;
            v.num = std::stod(clean, &used);
            if (used != clean.size()) throw std::invalid_argument("trailing");
        } catch (...) {
            c.fail("bad number '" + num + "'");
        }
        v.kind = TomlValue::Kind::number;
    }
    return v;
}

} // namespace

TomlDoc TomlDoc::parse_string(const std::string& text) {
    TomlDoc doc;
    Cursor c{text};
    std::string section;
    while (!c.done()) {
        c.skip_ws();
        if (c.done()) break;
        char ch = c.peek();
        if (ch == '\n') { c.get(); continue; }
        if (ch == '#') {
            while (!c.done() && c.peek() != '\n') c.get();
            continue;
        }
        if (ch == '[') {
            c.get();
            c.skip_ws();
            section = parse_bare_key(c);
            c.skip_ws();
            if (c.done() || c.get() != ']') c.fail("expected ']'");
            continue;
        }
        std::string key = parse_bare_key(c);
        c.skip_ws();
        if (c.done() || c.get() != '=') c.fail("expected '=' after key '" + key + "'");
        TomlValue v = parse_value(c);
        c.skip_ws();
        if (!c.done() && c.peek() == '#')
            while (!c.done() && c.peek() != '\n') c.get();
        std::string full = section.empty() ? key : section + "." + key;
        doc.values_[full] = std::move(v);
    }
    return doc;
}

TomlDoc TomlDoc::parse_file(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw std::runtime_error("cannot open scenario file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_string(ss.str());
}

bool TomlDoc::has(const std::string& key) const { return values_.count(key) != 0; }

const TomlValue& TomlDoc::at(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end())
        throw std::runtime_error("missing scenario key: " + key);
    return it->second;
}

double TomlDoc::number(const std::string& key) const {
    const TomlValue& v = at(key);
    if (v.kind != TomlValue::Kind::number)
        throw std::runtime_error("scenario key is not a number: " + key);
    return v.num;
}

double TomlDoc::number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
}

std::string TomlDoc::string_or(const std::string& key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    const TomlValue& v = at(key);
    if (v.kind != TomlValue::Kind::string)
        throw std::runtime_error("scenario key is not a string: " + key);
    return v.str;
}

bool TomlDoc::bool_or(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const TomlValue& v = at(key);
    if (v.kind != TomlValue::Kind::boolean)
        throw std::runtime_error("scenario key is not a boolean: " + key);
    return v.b;
}

std::vector<double> TomlDoc::numbers(const std::string& key) const {
    const TomlValue& v = at(key);
    if (v.kind != TomlValue::Kind::array)
        throw std::runtime_error("scenario key is not an array: " + key);
    std::vector<double> out;
    for (const TomlValue& e : v.array) {
        if (e.kind != TomlValue::Kind::number)
            throw std::runtime_error("scenario array is not numeric: " + key);
        out.push_back(e.num);
    }
    return out;
}

} // namespace incluse
