#pragma once

// Versioned little-endian binary envelope shared by router and Q-models.
//
//   offset  size  field
//   0       4     magic "HRLD"
//   4       2     version (u16, currently 1)
//   6       1     model kind   (1 = router, 2 = q-model)
//   7       1     payload kind (0 = raw f64, 1 = 8-bit quantized, 2 = constant)
//   8       4     feature count F (u32)
//   12      ...   payload
//
// Doubles are written as their IEEE-754 bit pattern, least significant byte
// first, so files are bit-identical across hosts.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace herald {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ModelKind : std::uint8_t { Router = 1, QModel = 2 };
enum class PayloadKind : std::uint8_t { Raw = 0, Quantized = 1, Constant = 2 };

inline constexpr std::uint16_t kEnvelopeVersion = 1;

struct EnvelopeHeader {
  ModelKind model = ModelKind::Router;
  PayloadKind payload = PayloadKind::Raw;
  std::uint32_t features = 0;
};

class ByteWriter {
 public:
  void u8(std::uint8_t v) { bytes_.push_back(v); }
  void u16(std::uint16_t v);
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void f64(double v);
  void header(const EnvelopeHeader& h);

  const std::vector<std::uint8_t>& bytes() const { return bytes_; }
  std::vector<std::uint8_t> take() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint8_t u8();
  std::uint16_t u16();
  std::uint32_t u32();
  std::uint64_t u64();
  double f64();
  EnvelopeHeader header();

  bool at_end() const { return pos_ == bytes_.size(); }
  void expect_end() const;

 private:
  void need(std::size_t n) const;

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::vector<std::uint8_t> read_file_bytes(const std::string& path);
void write_file_bytes(const std::string& path, std::span<const std::uint8_t> bytes);

}  // namespace herald
