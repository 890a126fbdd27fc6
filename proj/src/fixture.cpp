#include "ftc/fixture.hpp"

#include <fstream>
#include <sstream>

namespace ftc {

Fixture Fixture::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FixtureError("cannot open fixture file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

Fixture Fixture::parse(const std::string& text) {
    Fixture f;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            // blank or comment-only line
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw FixtureError("fixture line " + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = strip(line.substr(0, eq));
        const std::string val = strip(line.substr(eq + 1));
        if (key.empty()) throw FixtureError("fixture line " + std::to_string(lineno) + ": empty key");
        f.raw_[key] = val;
        std::istringstream vs(val);
        std::vector<double> nums;
        double x;
        while (vs >> x) nums.push_back(x);
        if (vs.eof() && !nums.empty()) f.values_[key] = std::move(nums);
    }
    return f;
}

double Fixture::scalar(const std::string& key) const {
    const auto& v = list(key);
    if (v.size() != 1) throw FixtureError("fixture key is not a scalar: " + key);
    return v[0];
}

double Fixture::scalar_or(const std::string& key, double fallback) const {
    return has(key) ? scalar(key) : fallback;
}

const std::vector<double>& Fixture::list(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw FixtureError("missing fixture key: " + key);
    return it->second;
}

std::string Fixture::text(const std::string& key) const {
    const auto it = raw_.find(key);
    if (it == raw_.end()) throw FixtureError("missing fixture key: " + key);
    return it->second;
}

}  // namespace ftc
