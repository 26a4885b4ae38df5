#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "wnlink/error.hpp"
#include "wnlink/text.hpp"

namespace wnlink {

/// Flat "key = value" configuration file; '#' starts a comment. Relative
/// paths in values resolve against the config file's own directory.
class IniConfig {
public:
    IniConfig() = default;

    static IniConfig load(const std::string& path) {
        IniConfig cfg;
        cfg.dir_ = std::filesystem::path(path).parent_path().string();
        auto in = open_input(path);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            strip_cr(line);
            const std::size_t hash = line.find('#');
            if (hash != std::string::npos) line.resize(hash);
            const std::string stripped = trim(line);
            if (stripped.empty()) continue;
            const std::size_t eq = stripped.find('=');
            if (eq == std::string::npos)
                throw IoError(path, lineno, "expected 'key = value'");
            const std::string key = trim(stripped.substr(0, eq));
            const std::string value = trim(stripped.substr(eq + 1));
            if (key.empty()) throw IoError(path, lineno, "empty key");
            if (!cfg.values_.emplace(key, value).second)
                throw IoError(path, lineno, "duplicate key '" + key + "'");
        }
        return cfg;
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get(const std::string& key) const {
        auto it = values_.find(key);
        if (it == values_.end()) throw Error("config key '" + key + "' not set");
        return it->second;
    }

    std::string get_path(const std::string& key) const {
        std::filesystem::path p(get(key));
        if (p.is_relative() && !dir_.empty()) p = std::filesystem::path(dir_) / p;
        return p.string();
    }

    const std::map<std::string, std::string>& values() const { return values_; }

    void set(const std::string& key, const std::string& value) { values_[key] = value; }

private:
    std::string dir_;
    std::map<std::string, std::string> values_;
};

}  // namespace wnlink
