#include "fdlab/manifest.hpp"

#include <json.hpp>

#include "fdlab/io.hpp"

namespace fdlab {

std::string manifest_to_json(const RunManifest& m) {
    nlohmann::json j;
    j["subcommand"] = m.subcommand;
    j["config"] = m.config;
    j["seed"] = m.seed;
    j["version"] = m.version;
    j["wall_clock_sec"] = m.wall_clock_sec;
    j["outputs"] = m.outputs;
    j["pass"] = m.pass;
    j["summary"] = m.summary;
    return j.dump(2) + "\n";
}

void write_manifest(const std::string& path, const RunManifest& m) {
    write_text_atomic(path, manifest_to_json(m));
}

} // namespace fdlab
