#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <string_view>

#include "mlsds/validation.hpp"

namespace mlsds::wire {

// Identifier for the one-byte confidence payload; manifests reference it
// through communication.payload_schema.
inline constexpr std::string_view kPayloadSchemaId = "confidence-byte/1";

// Worst-case quantization error of the byte mapping: half a step of 1/255.
inline constexpr double kQuantizationBound = 0.5 / 255.0;

struct ConfidenceByte {
  std::uint8_t raw = 0;

  friend bool operator==(ConfidenceByte, ConfidenceByte) = default;
};

// raw = round(p * 255), round-half-up. DomainError outside [0,1].
ConfidenceByte encode_confidence(double p);

// raw / 255.
double decode_confidence(ConfidenceByte b);

// One latched read-only register holding the latest confidence byte.
// Single writer, any number of readers; reads and writes are atomic at
// byte granularity.
class SimDevice {
 public:
  static constexpr std::uint8_t kDefaultAddress = 0x62;
  static constexpr std::uint8_t kMinAddress = 0x08;
  static constexpr std::uint8_t kMaxAddress = 0x77;

  explicit SimDevice(std::uint8_t address = kDefaultAddress,
                     ConfidenceByte initial = {});

  SimDevice(const SimDevice&) = delete;
  SimDevice& operator=(const SimDevice&) = delete;

  std::uint8_t address() const noexcept { return address_; }

  // Returns the latched byte and bumps the read counter. Never blocks.
  ConfidenceByte read() noexcept;

  // Encodes p and latches it. DomainError leaves the register unchanged.
  void update(double p);

  std::uint64_t read_count() const noexcept;

 private:
  std::uint8_t address_;
  std::atomic<std::uint8_t> latest_;
  std::atomic<std::uint64_t> read_count_{0};
};

// In-process loopback transport: the host side issues read transactions
// against attached devices by bus address.
class SimBus {
 public:
  void attach(SimDevice& dev);
  ConfidenceByte host_read(std::uint8_t address);

 private:
  std::map<std::uint8_t, SimDevice*> devices_;
};

}  // namespace mlsds::wire
