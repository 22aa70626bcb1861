#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "evcs/image.hpp"

namespace evcs {

enum class PbmVariant { P1, P4 };

struct PbmError : std::runtime_error {
  std::size_t offset;
  PbmError(const std::string& what, std::size_t at)
      : std::runtime_error(what + " (byte " + std::to_string(at) + ")"), offset(at) {}
};

// Parses PBM P1 (ASCII) or P4 (binary). Black bit set in the file maps to
// pixel value 1 (opaque).
BinaryImage load_pbm(std::span<const std::uint8_t> bytes);

// Canonical writer: "Pn\n<w> <h>\n" header, P4 rows padded to a byte
// boundary with 0, P1 rows as space-separated digits, one row per line.
std::vector<std::uint8_t> save_pbm(const BinaryImage& img, PbmVariant variant);

BinaryImage load_pbm_file(const std::filesystem::path& path);
void save_pbm_file(const std::filesystem::path& path, const BinaryImage& img,
                   PbmVariant variant = PbmVariant::P4);

}  // namespace evcs
