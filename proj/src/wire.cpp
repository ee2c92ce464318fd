#include "mlsds/wire.hpp"

#include <cmath>

namespace mlsds::wire {

ConfidenceByte encode_confidence(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw DomainError("confidence", "expected a value in [0,1]");
  return {static_cast<std::uint8_t>(std::floor(p * 255.0 + 0.5))};
}

double decode_confidence(ConfidenceByte b) { return b.raw / 255.0; }

SimDevice::SimDevice(std::uint8_t address, ConfidenceByte initial)
    : address_(address), latest_(initial.raw) {
  if (address < kMinAddress || address > kMaxAddress)
    throw DomainError("address", "bus address outside the valid 7-bit range");
}

ConfidenceByte SimDevice::read() noexcept {
  read_count_.fetch_add(1, std::memory_order_relaxed);
  return {latest_.load(std::memory_order_relaxed)};
}

void SimDevice::update(double p) {
  latest_.store(encode_confidence(p).raw, std::memory_order_relaxed);
}

std::uint64_t SimDevice::read_count() const noexcept {
  return read_count_.load(std::memory_order_relaxed);
}

void SimBus::attach(SimDevice& dev) {
  auto [it, inserted] = devices_.emplace(dev.address(), &dev);
  if (!inserted)
    throw DomainError("address", "bus address already in use");
}

ConfidenceByte SimBus::host_read(std::uint8_t address) {
  auto it = devices_.find(address);
  if (it == devices_.end())
    throw DomainError("address", "no device acknowledged the address");
  return it->second->read();
}

}  // namespace mlsds::wire
