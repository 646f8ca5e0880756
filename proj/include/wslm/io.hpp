#pragma once

#include <filesystem>
#include <string>

namespace wslm {

/// Writes `content` to a temporary file next to `path` and renames it into
/// place, so a failed write never leaves a partial file at `path`.
/// Throws std::runtime_error on I/O failure.
void atomic_write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace wslm
