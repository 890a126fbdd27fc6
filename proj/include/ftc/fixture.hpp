#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

// Minimal key = value fixture format. Values are a scalar or a
// whitespace-separated list of numbers; '#' starts a comment.

namespace ftc {

struct FixtureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Fixture {
public:
    static Fixture load(const std::string& path);
    static Fixture parse(const std::string& text);

    bool has(const std::string& key) const { return values_.count(key) > 0; }
    double scalar(const std::string& key) const;
    double scalar_or(const std::string& key, double fallback) const;
    const std::vector<double>& list(const std::string& key) const;
    std::string text(const std::string& key) const;

    void set(const std::string& key, std::vector<double> v) { values_[key] = std::move(v); }

private:
    std::map<std::string, std::vector<double>> values_;
    std::map<std::string, std::string> raw_;
};

}  // namespace ftc
