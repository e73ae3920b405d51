#include "bsopt/manifest.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>

#include "bsopt/errors.hpp"
#include "bsopt/version.hpp"

namespace bsopt {

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file for digest: " + path);
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    char buf[1 << 14];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        const std::streamsize n = in.gcount();
        for (std::streamsize i = 0; i < n; ++i) {
            hash ^= static_cast<unsigned char>(buf[i]);
            hash *= 0x100000001b3ULL;
        }
    }
    char hex[32];
    std::snprintf(hex, sizeof(hex), "fnv1a64:%016llx", static_cast<unsigned long long>(hash));
    return hex;
}

void save_manifest(const std::string& path, const RunManifest& manifest) {
    nlohmann::ordered_json j;
    j["tool"] = manifest.tool;
    j["version"] = manifest.version;
    j["command"] = manifest.command;
    j["parameters"] = manifest.parameters;
    j["inputs"] = manifest.inputs;
    j["outputs"] = manifest.outputs;
    std::ofstream out(path);
    if (!out) throw DataError("cannot write manifest: " + path);
    out << j.dump(2) << '\n';
}

RunManifest load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open manifest: " + path);
    nlohmann::ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("manifest " + path + ": invalid JSON: " + e.what());
    }
    RunManifest m;
    try {
        m.tool = j.at("tool").get<std::string>();
        m.version = j.at("version").get<std::string>();
        m.command = j.at("command").get<std::string>();
        m.parameters = j.at("parameters");
        m.inputs = j.at("inputs");
        m.outputs = j.at("outputs").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw DataError("manifest " + path + ": missing field: " + e.what());
    }
    return m;
}

}  // namespace bsopt
