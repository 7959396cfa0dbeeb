#pragma once

#include <map>
#include <string>

namespace rotstar::config {

/// Flat `section.key = value` configuration, `#` starts a comment. Unknown
/// and duplicate keys are rejected at parse time; values are checked against
/// the consuming module's preconditions before any computation starts.
class RunConfig {
public:
    static RunConfig parse_file(const std::string& path);
    static RunConfig parse_string(const std::string& text);

    bool has(const std::string& key) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key) const;
    int get_int(const std::string& key, int fallback) const;
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;

    /// Throws ConfigError naming the key when it is absent.
    void require(const std::string& key) const;

private:
    std::map<std::string, std::string> values_;
};

} // namespace rotstar::config
