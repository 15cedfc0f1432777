#include "hetlab/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "hetlab/errors.hpp"
#include "hetlab/version.hpp"

namespace hetlab {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

void write_manifest(const std::string& path, const Manifest& manifest) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot write manifest: " + path);
    os << "# hetlab run manifest\n";
    os << "# version = " << kVersion << "\n";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", manifest.wall_seconds);
    os << "# wall_seconds = " << buf << "\n";
    for (const auto& f : manifest.outputs) os << "# output = " << f << "\n";
    os << manifest.config_body;
}

std::map<std::string, std::string> read_kv_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot read config file: " + path);
    std::map<std::string, std::string> out;
    std::string line, section;
    while (std::getline(is, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("malformed config line: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        out[section.empty() ? key : section + "." + key] = value;
    }
    return out;
}

}  // namespace hetlab
