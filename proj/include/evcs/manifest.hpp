#pragma once

#include <stdexcept>
#include <string>
#include <variant>

#include "evcs/better.hpp"
#include "evcs/evolving.hpp"

namespace evcs {

struct ManifestError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kManifestVersion = 1;
inline constexpr const char* kSchemeKGrouped = "kgrouped-evolving";
inline constexpr const char* kSchemeBetter2 = "better2";
inline constexpr const char* kSchemeBetter3 = "better3";

// JSON manifest with embedded base64 P4 shadow payloads and the per-pixel
// index table. The checksum field is the CRC32 of all decoded payload
// sections in order (shadows, q_table, then the secret when present).
std::string dealer_save(const EvolvingDealer& dealer);
std::string dealer_save(const Better2Dealer& dealer);
std::string dealer_save(const Better3Dealer& dealer);

using AnyDealer = std::variant<EvolvingDealer, Better2Dealer, Better3Dealer>;

// Throws ManifestError on version mismatch, checksum failure, or any field
// that violates a state invariant (e.g. k < 2). Unknown fields are ignored.
AnyDealer dealer_load(const std::string& json_text);

std::string scheme_name(const AnyDealer& dealer);

}  // namespace evcs
