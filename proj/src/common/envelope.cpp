#include "herald/common/envelope.hpp"

#include <bit>
#include <fstream>
#include <iterator>

namespace herald {

void ByteWriter::u16(std::uint16_t v) {
  u8(static_cast<std::uint8_t>(v));
  u8(static_cast<std::uint8_t>(v >> 8));
}

void ByteWriter::u32(std::uint32_t v) {
  for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::u64(std::uint64_t v) {
  for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

void ByteWriter::header(const EnvelopeHeader& h) {
  for (char c : {'H', 'R', 'L', 'D'}) u8(static_cast<std::uint8_t>(c));
  u16(kEnvelopeVersion);
  u8(static_cast<std::uint8_t>(h.model));
  u8(static_cast<std::uint8_t>(h.payload));
  u32(h.features);
}

void ByteReader::need(std::size_t n) const {
  if (bytes_.size() - pos_ < n) {
    throw FormatError("truncated model record at byte " + std::to_string(pos_));
  }
}

std::uint8_t ByteReader::u8() {
  need(1);
  return bytes_[pos_++];
}

std::uint16_t ByteReader::u16() {
  need(2);
  std::uint16_t v = static_cast<std::uint16_t>(bytes_[pos_] | (bytes_[pos_ + 1] << 8));
  pos_ += 2;
  return v;
}

std::uint32_t ByteReader::u32() {
  need(4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes_[pos_ + i]) << (8 * i);
  pos_ += 4;
  return v;
}

std::uint64_t ByteReader::u64() {
  need(8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
  pos_ += 8;
  return v;
}

double ByteReader::f64() { return std::bit_cast<double>(u64()); }

EnvelopeHeader ByteReader::header() {
  need(4);
  if (bytes_[pos_] != 'H' || bytes_[pos_ + 1] != 'R' || bytes_[pos_ + 2] != 'L' ||
      bytes_[pos_ + 3] != 'D') {
    throw FormatError("bad magic, expected HRLD");
  }
  pos_ += 4;
  const std::uint16_t version = u16();
  if (version != kEnvelopeVersion) {
    throw FormatError("unsupported envelope version " + std::to_string(version));
  }
  EnvelopeHeader h;
  const std::uint8_t model = u8();
  const std::uint8_t payload = u8();
  if (model != 1 && model != 2) throw FormatError("unknown model kind " + std::to_string(model));
  if (payload > 2) throw FormatError("unknown payload kind " + std::to_string(payload));
  h.model = static_cast<ModelKind>(model);
  h.payload = static_cast<PayloadKind>(payload);
  h.features = u32();
  return h;
}

void ByteReader::expect_end() const {
  if (!at_end()) {
    throw FormatError("trailing bytes after model record (" +
                      std::to_string(bytes_.size() - pos_) + ")");
  }
}

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_bytes(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

}  // namespace herald
