#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <thread>
#include <vector>

#include "mlsds/wire.hpp"

using namespace mlsds;
using namespace mlsds::wire;

TEST_CASE("confidence encoding hits the documented bytes") {
  CHECK(encode_confidence(0.0).raw == 0);
  CHECK(encode_confidence(1.0).raw == 255);
  CHECK(encode_confidence(0.52).raw == 133);
  CHECK(encode_confidence(0.5).raw == 128);
  CHECK(decode_confidence({133}) == doctest::Approx(133.0 / 255.0).epsilon(1e-15));
  CHECK(decode_confidence({0}) == 0.0);
  CHECK(decode_confidence({255}) == 1.0);
}

TEST_CASE("encoding rejects values outside the unit interval") {
  for (double p : {-0.01, 1.01, -1e9, 1e9,
                   std::numeric_limits<double>::quiet_NaN()}) {
    try {
      encode_confidence(p);
      FAIL("expected DomainError, value " << p);
    } catch (const DomainError& e) {
      CHECK(e.path() == "confidence");
    }
  }
}

TEST_CASE("round trip error stays within half a quantization step") {
  for (int i = 0; i <= 10000; ++i) {
    double p = static_cast<double>(i) / 10000.0;
    double back = decode_confidence(encode_confidence(p));
    CHECK(std::abs(back - p) <= kQuantizationBound + 1e-12);
  }
}

TEST_CASE("every byte value round trips exactly") {
  for (int raw = 0; raw <= 255; ++raw) {
    ConfidenceByte b{static_cast<std::uint8_t>(raw)};
    CHECK(encode_confidence(decode_confidence(b)) == b);
  }
}

TEST_CASE("encoding is monotone") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<double> ps(500);
  for (double& p : ps) p = dist(rng);
  std::sort(ps.begin(), ps.end());
  for (std::size_t i = 1; i < ps.size(); ++i)
    CHECK(encode_confidence(ps[i - 1]).raw <= encode_confidence(ps[i]).raw);
}

TEST_CASE("payload schema id names the byte format") {
  CHECK(kPayloadSchemaId == "confidence-byte/1");
}

TEST_CASE("device latches the most recent update") {
  SimDevice dev;
  CHECK(dev.address() == 0x62);
  CHECK(dev.read().raw == 0);
  dev.update(0.52);
  CHECK(dev.read().raw == 133);
  dev.update(0.0);
  CHECK(dev.read().raw == 0);
  CHECK(dev.read_count() == 3);

  dev.update(0.9);
  CHECK_THROWS_AS(dev.update(-0.1), DomainError);
  CHECK(dev.read().raw == 230);  // failed update left the register alone
}

TEST_CASE("device addresses are restricted to the 7-bit usable range") {
  CHECK_NOTHROW(SimDevice{0x08});
  CHECK_NOTHROW(SimDevice{0x77});
  CHECK_THROWS_AS(SimDevice{0x07}, DomainError);
  CHECK_THROWS_AS(SimDevice{0x78}, DomainError);
  CHECK_THROWS_AS(SimDevice{0x00}, DomainError);
}

TEST_CASE("bus routes host reads by address") {
  SimDevice a{0x10};
  SimDevice b{0x62};
  a.update(0.25);
  b.update(0.75);
  SimBus bus;
  bus.attach(a);
  bus.attach(b);
  CHECK(bus.host_read(0x10).raw == encode_confidence(0.25).raw);
  CHECK(bus.host_read(0x62).raw == encode_confidence(0.75).raw);
  CHECK(a.read_count() == 1);

  SimDevice clash{0x10};
  CHECK_THROWS_AS(bus.attach(clash), DomainError);
  CHECK_THROWS_AS(bus.host_read(0x33), DomainError);
}

TEST_CASE("concurrent readers only ever observe written bytes") {
  SimDevice dev;
  const std::vector<double> values = {0.1, 0.5, 0.9};
  std::set<std::uint8_t> allowed;
  for (double v : values) allowed.insert(encode_confidence(v).raw);
  dev.update(values[0]);

  std::atomic<bool> stop{false};
  std::atomic<bool> bad{false};
  std::vector<std::thread> readers;
  for (int t = 0; t < 4; ++t) {
    readers.emplace_back([&] {
      while (!stop.load(std::memory_order_relaxed)) {
        std::uint8_t raw = dev.read().raw;
        if (!allowed.contains(raw)) bad.store(true);
      }
    });
  }
  for (int i = 0; i < 20000; ++i) dev.update(values[i % values.size()]);
  while (dev.read_count() == 0) std::this_thread::yield();
  stop.store(true);
  for (auto& t : readers) t.join();
  CHECK_FALSE(bad.load());
  CHECK(dev.read_count() > 0);
}
