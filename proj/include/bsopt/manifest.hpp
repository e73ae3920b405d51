#ifndef BSOPT_MANIFEST_HPP
#define BSOPT_MANIFEST_HPP

#include <string>
#include <vector>

#include <json.hpp>

namespace bsopt {

// Reproducibility record written next to every command's outputs: the
// fully resolved parameters, digests of the input files, and the list of
// files produced. Re-running a manifest regenerates the outputs
// byte-for-byte as long as the inputs still match their digests.
struct RunManifest {
    std::string tool;
    std::string version;
    std::string command;
    nlohmann::ordered_json parameters;
    nlohmann::ordered_json inputs;  // absolute path -> digest
    std::vector<std::string> outputs;
};

// FNV-1a 64-bit digest of a file's bytes, as "fnv1a64:<hex>".
std::string file_digest(const std::string& path);

void save_manifest(const std::string& path, const RunManifest& manifest);
RunManifest load_manifest(const std::string& path);

}  // namespace bsopt

#endif  // BSOPT_MANIFEST_HPP
