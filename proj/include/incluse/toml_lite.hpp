#ifndef INCLUSE_TOML_LITE_HPP
#define INCLUSE_TOML_LITE_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace incluse {

/// Minimal TOML subset: [section] headers (dotted), key = value with
/// strings, numbers, booleans, arrays, and inline tables. Keys are
/// flattened to dotted paths.
struct TomlValue {
    enum class Kind { string, number, boolean, array, table };
    Kind kind = Kind::number;
    std::string str;
    double num = 0.0;
    bool b = false;
    std::vector<TomlValue> array;
    std::map<std::string, TomlValue> table;
};

class TomlDoc {
public:
    static TomlDoc parse_file(const std::string& path);
    static TomlDoc parse_string(const std::string& text);

    bool has(const std::string& key) const;
    const TomlValue& at(const std::string& key) const; // throws if missing

    double number(const std::string& key) const;
    double number_or(const std::string& key, double fallback) const;
    std::string string_or(const std::string& key, const std::string& fallback) const;
    bool bool_or(const std::string& key, bool fallback) const;
    std::vector<double> numbers(const std::string& key) const; // flat numeric array

    const std::map<std::string, TomlValue>& entries() const { return values_; }

private:
    std::map<std::string, TomlValue> values_;
};

} // namespace incluse

#endif
