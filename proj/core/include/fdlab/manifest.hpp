#pragma once

#include <map>
#include <string>
#include <vector>

namespace fdlab {

/// Run record written (atomically, last) next to the outputs.  The
/// wall-clock entry is the only field exempt from byte-determinism.
struct RunManifest {
    std::string subcommand;
    std::map<std::string, std::string> config; // fully resolved
    std::string seed;
    std::string version;
    double wall_clock_sec = 0.0;
    std::vector<std::string> outputs; // every file the run wrote
    bool pass = false;
    std::map<std::string, std::string> summary;
};

std::string manifest_to_json(const RunManifest& m);

/// Serialize and atomically rename into place; call only after all other
/// outputs exist so an interrupted run never claims success.
void write_manifest(const std::string& path, const RunManifest& m);

} // namespace fdlab
