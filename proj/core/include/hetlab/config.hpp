#pragma once

#include <map>
#include <string>
#include <vector>

namespace hetlab {

// Reproducibility record written next to each output file. The body is
// the resolved configuration in the same [subcommand] / key = value
// format the --config flag accepts, so a manifest can be fed straight
// back in to reproduce the run; metadata rides along as comments.
struct Manifest {
    std::string subcommand;
    std::string config_body;
    std::vector<std::string> outputs;
    double wall_seconds = 0.0;
};

void write_manifest(const std::string& path, const Manifest& manifest);

// Minimal reader for the flat key = value format ('#' comments,
// [section] headers; keys are returned as "section.key").
std::map<std::string, std::string> read_kv_file(const std::string& path);

}  // namespace hetlab
