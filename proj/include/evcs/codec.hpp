#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace evcs {

// CRC-32 (IEEE, reflected). Chainable: pass the previous value to continue.
std::uint32_t crc32(std::span<const std::uint8_t> data, std::uint32_t crc = 0);

std::string base64_encode(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> base64_decode(std::string_view text);  // throws on bad input

}  // namespace evcs
