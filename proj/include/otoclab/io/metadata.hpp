#pragma once

#include <filesystem>

#include <json.hpp>

namespace otoclab::io {

/// Conventions that every output depends on: map definitions, DFT sign, window choices.
nlohmann::json pinned_conventions();

/// Sidecar of an output file: `<file>.meta.json` next to it.
std::filesystem::path sidecar_path(const std::filesystem::path& output);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);
void write_sidecar(const std::filesystem::path& output, const nlohmann::json& meta);

nlohmann::json read_json(const std::filesystem::path& path);

const char* code_version();

}  // namespace otoclab::io
