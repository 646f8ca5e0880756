#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <string>

#include "test_util.hpp"
#include "wslm/channel.hpp"

using namespace wslm;
namespace fs = std::filesystem;

namespace {

SystemConfig base_cfg() { return {3, 9, 9, 6, 3, 1.0, 1.0}; }

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("wslm_test_" + name);
}

std::string read_all(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool throws_naming(const std::function<void()>& fn, const std::string& needle) {
  try {
    fn();
  } catch (const std::exception& e) {
    return std::string(e.what()).find(needle) != std::string::npos;
  }
  return false;
}

}  // namespace

TEST_CASE("config validation names the violated field") {
  SystemConfig c = base_cfg();
  validate(c);  // sane baseline must pass

  c = base_cfg(); c.K = 0;
  CHECK(throws_naming([&] { validate(c); }, "K"));
  c = base_cfg(); c.Pt = 0.0;
  CHECK(throws_naming([&] { validate(c); }, "Pt"));
  c = base_cfg(); c.sigma2 = -1.0;
  CHECK(throws_naming([&] { validate(c); }, "sigma2"));
  c = base_cfg(); c.d = 10;
  CHECK(throws_naming([&] { validate(c); }, "d"));
  c = base_cfg(); c.Nre = 2;  // d > Nre
  CHECK(throws_naming([&] { validate(c); }, "Nre"));
  c = base_cfg(); c.Nr = 3;  // Nr - d < 1
  CHECK(throws_naming([&] { validate(c); }, "Nr"));
}

TEST_CASE("generate_channels is deterministic per seed and link") {
  ChannelSet a = generate_channels(base_cfg(), 5);
  ChannelSet b = generate_channels(base_cfg(), 5);
  for (std::size_t i = 0; i < a.mats.size(); ++i) CHECK((a.mats[i] - b.mats[i]).norm() == 0.0);

  ChannelSet c = generate_channels(base_cfg(), 6);
  CHECK((a.H(0, 0) - c.H(0, 0)).norm() > 1e-6);

  // per-link streams: a link's draw does not depend on how many pairs exist
  SystemConfig small = base_cfg();
  small.K = 2;
  ChannelSet d = generate_channels(small, 5);
  CHECK((a.H(0, 0) - d.H(0, 0)).norm() == 0.0);
  CHECK((a.H(1, 1) - d.H(1, 1)).norm() == 0.0);
}

TEST_CASE("generate_channels draws unit-variance complex entries") {
  SystemConfig c{2, 40, 40, 40, 2, 1.0, 1.0};
  ChannelSet cs = generate_channels(c, 99);
  double sum_sq = 0.0;
  double sum_re = 0.0;
  int n = 0;
  for (const CMat& H : cs.mats) {
    sum_sq += H.squaredNorm();
    sum_re += H.real().sum();
    n += static_cast<int>(H.size());
  }
  CHECK(sum_sq / n == doctest::Approx(1.0).epsilon(0.05));
  CHECK(std::abs(sum_re / n) < 0.05);
}

TEST_CASE("generate_channels sizes the eavesdropper row separately") {
  SystemConfig c{2, 5, 4, 7, 2, 1.0, 1.0};
  ChannelSet cs = generate_channels(c, 1);
  CHECK(cs.H(0, 0).rows() == 4);
  CHECK(cs.H(2, 0).rows() == 7);
  CHECK(cs.H(2, 1).cols() == 5);
}

TEST_CASE("channel files round-trip bit for bit") {
  ChannelSet cs = generate_channels(base_cfg(), 123);
  const fs::path p = temp_file("roundtrip.json");
  save_channels(cs, p);
  ChannelSet back = load_channels(p);
  CHECK(back.seed == cs.seed);
  CHECK(back.config.K == cs.config.K);
  for (std::size_t i = 0; i < cs.mats.size(); ++i) {
    REQUIRE(back.mats[i].rows() == cs.mats[i].rows());
    CHECK((back.mats[i] - cs.mats[i]).norm() == 0.0);
  }
  fs::remove(p);
}

TEST_CASE("load_channels reports malformed input by name") {
  const fs::path p = temp_file("bad.json");

  std::ofstream(p) << "{ not json";
  CHECK(throws_naming([&] { load_channels(p); }, "parse error"));

  std::ofstream(p) << R"({"seed": 1, "channels": []})";
  CHECK(throws_naming([&] { load_channels(p); }, "config"));

  // valid config but one channel has the wrong shape
  ChannelSet cs = generate_channels(base_cfg(), 3);
  save_channels(cs, p);
  std::string text = read_all(p);
  const std::string from = "\"rows\":9";
  text.replace(text.find(from), from.size(), "\"rows\":8");
  std::ofstream(p) << text;
  CHECK(throws_naming([&] { load_channels(p); }, "integrity error"));
  fs::remove(p);
}

TEST_CASE("load_channels rejects missing and duplicate links") {
  ChannelSet cs = generate_channels(base_cfg(), 3);
  const fs::path p = temp_file("links.json");
  save_channels(cs, p);
  std::string text = read_all(p);

  // duplicate: rewrite link (2,3) as a second copy of (1,1)... simpler, swap
  // one link's tx so a pair appears twice and another is missing
  const std::string from = "\"rx\":1,\"tx\":2";
  REQUIRE(text.find(from) != std::string::npos);
  std::string dup = text;
  dup.replace(dup.find(from), from.size(), "\"rx\":1,\"tx\":1");
  std::ofstream(p) << dup;
  CHECK(throws_naming([&] { load_channels(p); }, "integrity error"));
  fs::remove(p);
}

TEST_CASE("load_channels rejects malformed data entries") {
  ChannelSet cs = generate_channels(base_cfg(), 3);
  const fs::path p = temp_file("badentry.json");
  save_channels(cs, p);
  std::string text = read_all(p);
  const std::size_t at = text.find("\"data\":[[");
  REQUIRE(at != std::string::npos);
  const std::size_t open = text.find("[[", at) + 2;
  const std::size_t comma = text.find(',', open);
  text.replace(open, comma - open, "null");
  std::ofstream(p) << text;
  CHECK_THROWS(load_channels(p));
  fs::remove(p);
}
