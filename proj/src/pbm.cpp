#include "evcs/pbm.hpp"

#include <fstream>

namespace evcs {

namespace {

constexpr long long kMaxDim = 1 << 20;

struct Cursor {
  std::span<const std::uint8_t> data;
  std::size_t pos = 0;

  bool eof() const { return pos >= data.size(); }
  std::uint8_t peek() const { return data[pos]; }

  static bool is_space(std::uint8_t c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
  }

  // Skips whitespace and '#' comments (comment runs to end of line).
  void skip_separators() {
    while (!eof()) {
      if (is_space(peek())) {
        ++pos;
      } else if (peek() == '#') {
        while (!eof() && peek() != '\n') ++pos;
      } else {
        break;
      }
    }
  }

  long long read_dimension(const char* name) {
    skip_separators();
    if (eof()) throw PbmError(std::string("truncated header: missing ") + name, pos);
    if (peek() < '0' || peek() > '9') {
      throw PbmError(std::string("malformed ") + name, pos);
    }
    std::size_t start = pos;
    long long v = 0;
    while (!eof() && peek() >= '0' && peek() <= '9') {
      v = v * 10 + (peek() - '0');
      if (v > kMaxDim) throw PbmError(std::string(name) + " too large", start);
      ++pos;
    }
    if (v <= 0) throw PbmError(std::string(name) + " must be positive", start);
    return v;
  }
};

}  // namespace

BinaryImage load_pbm(std::span<const std::uint8_t> bytes) {
  Cursor cur{bytes};
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '1' && bytes[1] != '4')) {
    throw PbmError("not a PBM P1/P4 stream", 0);
  }
  bool raw = bytes[1] == '4';
  cur.pos = 2;

  int w = static_cast<int>(cur.read_dimension("width"));
  int h = static_cast<int>(cur.read_dimension("height"));
  BinaryImage img(h, w);

  if (raw) {
    if (cur.eof() || !Cursor::is_space(cur.peek())) {
      throw PbmError("missing whitespace after P4 header", cur.pos);
    }
    ++cur.pos;  // exactly one separator byte before the raster
    std::size_t row_bytes = (static_cast<std::size_t>(w) + 7) / 8;
    std::size_t need = row_bytes * static_cast<std::size_t>(h);
    if (bytes.size() - cur.pos < need) {
      throw PbmError("truncated P4 payload", bytes.size());
    }
    for (int r = 0; r < h; ++r) {
      const std::uint8_t* row = bytes.data() + cur.pos + static_cast<std::size_t>(r) * row_bytes;
      for (int c = 0; c < w; ++c) {
        img.at(r, c) = static_cast<std::uint8_t>((row[c / 8] >> (7 - c % 8)) & 1);
      }
    }
  } else {
    for (std::size_t i = 0; i < img.size(); ++i) {
      cur.skip_separators();
      if (cur.eof()) throw PbmError("truncated P1 payload", bytes.size());
      std::uint8_t ch = cur.peek();
      if (ch != '0' && ch != '1') throw PbmError("invalid P1 pixel character", cur.pos);
      img.bits[i] = static_cast<std::uint8_t>(ch - '0');
      ++cur.pos;
    }
  }
  return img;
}

std::vector<std::uint8_t> save_pbm(const BinaryImage& img, PbmVariant variant) {
  std::string header = (variant == PbmVariant::P4 ? "P4\n" : "P1\n");
  header += std::to_string(img.width) + " " + std::to_string(img.height) + "\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());

  if (variant == PbmVariant::P4) {
    std::size_t row_bytes = (static_cast<std::size_t>(img.width) + 7) / 8;
    for (int r = 0; r < img.height; ++r) {
      std::size_t base = out.size();
      out.resize(base + row_bytes, 0);
      for (int c = 0; c < img.width; ++c) {
        if (img.at(r, c)) out[base + c / 8] |= static_cast<std::uint8_t>(0x80 >> (c % 8));
      }
    }
  } else {
    for (int r = 0; r < img.height; ++r) {
      for (int c = 0; c < img.width; ++c) {
        if (c) out.push_back(' ');
        out.push_back(static_cast<std::uint8_t>('0' + img.at(r, c)));
      }
      out.push_back('\n');
    }
  }
  return out;
}

BinaryImage load_pbm_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return load_pbm(bytes);
}

void save_pbm_file(const std::filesystem::path& path, const BinaryImage& img,
                   PbmVariant variant) {
  auto bytes = save_pbm(img, variant);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

}  // namespace evcs
