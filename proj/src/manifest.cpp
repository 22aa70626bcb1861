#include "evcs/manifest.hpp"

#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"

#include "evcs/codec.hpp"
#include "evcs/pbm.hpp"

namespace evcs {

namespace {

using nlohmann::json;

// Per-pixel masks are serialized little-endian, ceil(bits/8) bytes each.
std::vector<std::uint8_t> pack_masks(std::span<const std::uint64_t> masks, int bits) {
  const int bytes = (bits + 7) / 8;
  std::vector<std::uint8_t> out;
  out.reserve(masks.size() * static_cast<std::size_t>(bytes));
  for (std::uint64_t m : masks) {
    for (int b = 0; b < bytes; ++b) out.push_back(static_cast<std::uint8_t>(m >> (8 * b)));
  }
  return out;
}

std::vector<std::uint64_t> unpack_masks(std::span<const std::uint8_t> raw, std::size_t count,
                                        int bits) {
  const int bytes = (bits + 7) / 8;
  if (raw.size() != count * static_cast<std::size_t>(bytes)) {
    throw ManifestError("manifest: q_table size mismatch");
  }
  std::vector<std::uint64_t> out(count, 0);
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t m = 0;
    for (int b = 0; b < bytes; ++b) {
      m |= static_cast<std::uint64_t>(raw[i * static_cast<std::size_t>(bytes) +
                                          static_cast<std::size_t>(b)])
           << (8 * b);
    }
    out[i] = m;
  }
  return out;
}

struct PayloadHasher {
  std::uint32_t crc = 0;
  void add(std::span<const std::uint8_t> bytes) { crc = crc32(bytes, crc); }
};

json common_header(const char* scheme, int k, int n, int next_t, std::uint64_t seed, int h,
                   int w) {
  json j;
  j["version"] = kManifestVersion;
  j["scheme"] = scheme;
  j["k"] = k;
  j["n"] = n;
  j["next_t"] = next_t;
  j["seed"] = seed;
  j["dims"] = {{"height", h}, {"width", w}};
  return j;
}

json require(const json& j, const char* field) {
  if (!j.contains(field)) throw ManifestError(std::string("manifest: missing field ") + field);
  return j.at(field);
}

std::vector<std::uint8_t> decode_b64(const json& j, const char* field) {
  try {
    return base64_decode(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ManifestError(std::string("manifest: bad base64 in ") + field + ": " + e.what());
  }
}

BinaryImage decode_shadow(std::span<const std::uint8_t> bytes, int h, int w,
                          PayloadHasher& hasher) {
  hasher.add(bytes);
  BinaryImage img;
  try {
    img = load_pbm(bytes);
  } catch (const PbmError& e) {
    throw ManifestError(std::string("manifest: bad shadow payload: ") + e.what());
  }
  if (img.height != h || img.width != w) {
    throw ManifestError("manifest: shadow dimensions disagree with dims");
  }
  return img;
}

void verify_checksum(const json& j, const PayloadHasher& hasher) {
  auto stored = require(j, "checksum").get<std::uint32_t>();
  if (stored != hasher.crc) throw ManifestError("manifest: checksum failure");
}

}  // namespace

std::string dealer_save(const EvolvingDealer& dealer) {
  json j = common_header(kSchemeKGrouped, dealer.k(), dealer.n(), dealer.next_t(),
                         dealer.seed(), dealer.height(), dealer.width());
  PayloadHasher hasher;
  json shadows = json::array();
  for (const auto& sc : dealer.base_shadows()) {
    auto bytes = save_pbm(sc, PbmVariant::P4);
    hasher.add(bytes);
    shadows.push_back(base64_encode(bytes));
  }
  j["shadows"] = std::move(shadows);
  auto packed = pack_masks(dealer.q_table().mask, dealer.k());
  hasher.add(packed);
  j["q_table"] = base64_encode(packed);
  j["checksum"] = hasher.crc;
  return j.dump(1);
}

std::string dealer_save(const Better2Dealer& dealer) {
  json j = common_header(kSchemeBetter2, 2, 2, dealer.next_t(), dealer.seed(),
                         dealer.secret().height, dealer.secret().width);
  PayloadHasher hasher;
  j["shadows"] = json::array();
  std::vector<std::uint64_t> wide(dealer.p_table().begin(), dealer.p_table().end());
  auto packed = pack_masks(wide, 1);
  hasher.add(packed);
  j["q_table"] = base64_encode(packed);
  // Algorithm coupling, not an oversight: every extension reads the secret,
  // so it rides along in the manifest. The dealer is trusted in this model;
  // the manifest must be kept as private as the secret itself.
  auto secret_bytes = save_pbm(dealer.secret(), PbmVariant::P4);
  hasher.add(secret_bytes);
  j["secret"] = base64_encode(secret_bytes);
  j["checksum"] = hasher.crc;
  return j.dump(1);
}

std::string dealer_save(const Better3Dealer& dealer) {
  json j = common_header(kSchemeBetter3, 3, Better3Dealer::kGroupSize, dealer.next_t(),
                         dealer.seed(), dealer.height(), dealer.width());
  PayloadHasher hasher;
  json shadows = json::array();
  for (const auto& sc : dealer.base_shadows()) {
    auto bytes = save_pbm(sc, PbmVariant::P4);
    hasher.add(bytes);
    shadows.push_back(base64_encode(bytes));
  }
  j["shadows"] = std::move(shadows);
  std::vector<std::uint64_t> wide(dealer.p_mask().begin(), dealer.p_mask().end());
  auto packed = pack_masks(wide, Better3Dealer::kGroupSize);
  hasher.add(packed);
  j["q_table"] = base64_encode(packed);
  j["checksum"] = hasher.crc;
  return j.dump(1);
}

AnyDealer dealer_load(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ManifestError(std::string("manifest: not valid JSON: ") + e.what());
  }
  if (require(j, "version").get<int>() != kManifestVersion) {
    throw ManifestError("manifest: version mismatch");
  }
  const auto scheme = require(j, "scheme").get<std::string>();
  const int k = require(j, "k").get<int>();
  const int n = require(j, "n").get<int>();
  const int next_t = require(j, "next_t").get<int>();
  const auto seed = require(j, "seed").get<std::uint64_t>();
  const json dims = require(j, "dims");
  const int h = require(dims, "height").get<int>();
  const int w = require(dims, "width").get<int>();
  if (h < 1 || w < 1) throw ManifestError("manifest: dimensions must be >= 1");
  const auto px = static_cast<std::size_t>(h) * static_cast<std::size_t>(w);

  try {
    if (scheme == kSchemeKGrouped) {
      if (k < 2 || k > 64) throw ManifestError("manifest: k out of range for this scheme");
      PayloadHasher hasher;
      const json shadows = require(j, "shadows");
      if (!shadows.is_array() || static_cast<int>(shadows.size()) != k) {
        throw ManifestError("manifest: expected k base shadows");
      }
      std::vector<BinaryImage> base;
      for (const auto& s : shadows) {
        base.push_back(decode_shadow(decode_b64(s, "shadows"), h, w, hasher));
      }
      auto packed = decode_b64(require(j, "q_table"), "q_table");
      hasher.add(packed);
      verify_checksum(j, hasher);
      QTable q(h, w, k);
      q.mask = unpack_masks(packed, px, k);
      return EvolvingDealer(k, n, next_t, seed, std::move(base), std::move(q));
    }
    if (scheme == kSchemeBetter2) {
      PayloadHasher hasher;
      auto packed = decode_b64(require(j, "q_table"), "q_table");
      hasher.add(packed);
      auto secret_bytes = decode_b64(require(j, "secret"), "secret");
      BinaryImage secret = decode_shadow(secret_bytes, h, w, hasher);
      verify_checksum(j, hasher);
      auto wide = unpack_masks(packed, px, 1);
      std::vector<std::uint8_t> p(wide.size());
      for (std::size_t i = 0; i < wide.size(); ++i) {
        if (wide[i] > 1) throw ManifestError("manifest: P entries must be 0 or 1");
        p[i] = static_cast<std::uint8_t>(wide[i]);
      }
      return Better2Dealer(std::move(secret), std::move(p), next_t, seed);
    }
    if (scheme == kSchemeBetter3) {
      PayloadHasher hasher;
      const json shadows = require(j, "shadows");
      if (!shadows.is_array() || shadows.size() != Better3Dealer::kGroupSize) {
        throw ManifestError("manifest: expected 4 base shadows");
      }
      std::vector<BinaryImage> base;
      for (const auto& s : shadows) {
        base.push_back(decode_shadow(decode_b64(s, "shadows"), h, w, hasher));
      }
      auto packed = decode_b64(require(j, "q_table"), "q_table");
      hasher.add(packed);
      verify_checksum(j, hasher);
      auto wide = unpack_masks(packed, px, Better3Dealer::kGroupSize);
      std::vector<std::uint8_t> p(wide.size());
      for (std::size_t i = 0; i < wide.size(); ++i) p[i] = static_cast<std::uint8_t>(wide[i]);
      return Better3Dealer(std::move(base), std::move(p), next_t, seed);
    }
  } catch (const std::invalid_argument& e) {
    throw ManifestError(std::string("manifest: ") + e.what());
  }
  throw ManifestError("manifest: unknown scheme tag '" + scheme + "'");
}

std::string scheme_name(const AnyDealer& dealer) {
  if (std::holds_alternative<EvolvingDealer>(dealer)) return kSchemeKGrouped;
  if (std::holds_alternative<Better2Dealer>(dealer)) return kSchemeBetter2;
  return kSchemeBetter3;
}

}  // namespace evcs
