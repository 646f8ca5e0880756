#include "wslm/channel.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <stdexcept>
#include <string>

#include "wslm/io.hpp"
#include "json_util.hpp"
#include "wslm/rng.hpp"

namespace wslm {

using nlohmann::json;

void validate(const SystemConfig& cfg) {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("config error: " + msg); };
  if (cfg.K < 1) fail("K must be >= 1 (got " + std::to_string(cfg.K) + ")");
  if (cfg.Nt < 1) fail("Nt must be >= 1 (got " + std::to_string(cfg.Nt) + ")");
  if (cfg.Nr < 1) fail("Nr must be >= 1 (got " + std::to_string(cfg.Nr) + ")");
  if (cfg.Nre < 1) fail("Nre must be >= 1 (got " + std::to_string(cfg.Nre) + ")");
  if (cfg.d < 1) fail("d must be >= 1 (got " + std::to_string(cfg.d) + ")");
  if (!(cfg.Pt > 0.0)) fail("Pt must be > 0 (got " + std::to_string(cfg.Pt) + ")");
  if (!(cfg.sigma2 > 0.0)) fail("sigma2 must be > 0 (got " + std::to_string(cfg.sigma2) + ")");
  if (cfg.d > cfg.Nt || cfg.d > cfg.Nr)
    fail("d must satisfy d <= min(Nt, Nr) (got d=" + std::to_string(cfg.d) + ", Nt=" +
         std::to_string(cfg.Nt) + ", Nr=" + std::to_string(cfg.Nr) + ")");
  if (cfg.d > cfg.Nre)
    fail("d must satisfy d <= Nre (got d=" + std::to_string(cfg.d) + ", Nre=" +
         std::to_string(cfg.Nre) + ")");
  if (cfg.Nr - cfg.d < 1)
    fail("Nr - d must be >= 1 (got Nr=" + std::to_string(cfg.Nr) + ", d=" + std::to_string(cfg.d) +
         ")");
}

ChannelSet generate_channels(const SystemConfig& cfg, std::uint64_t seed) {
  validate(cfg);
  ChannelSet cs;
  cs.config = cfg;
  cs.seed = seed;
  cs.mats.resize(static_cast<std::size_t>(cfg.K + 1) * cfg.K);
  const double comp_sigma = 1.0 / std::sqrt(2.0);  // unit variance per complex entry
  for (int rx = 0; rx <= cfg.K; ++rx) {
    const int rows = rx == cfg.K ? cfg.Nre : cfg.Nr;
    for (int tx = 0; tx < cfg.K; ++tx) {
      auto rng = make_rng(seed_mix({seed, static_cast<std::uint64_t>(rx + 1),
                                    static_cast<std::uint64_t>(tx + 1)}));
      std::normal_distribution<double> gauss(0.0, comp_sigma);
      CMat& H = cs.H(rx, tx);
      H.resize(rows, cfg.Nt);
      for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cfg.Nt; ++j) {
          double re = gauss(rng);
          double im = gauss(rng);
          H(i, j) = Complex(re, im);
        }
      }
    }
  }
  return cs;
}

json config_to_json(const SystemConfig& c) {
  return json{{"K", c.K},   {"Nt", c.Nt}, {"Nr", c.Nr},     {"Nre", c.Nre},
              {"d", c.d},   {"Pt", c.Pt}, {"sigma2", c.sigma2}};
}

SystemConfig config_from_json(const json& j) {
  SystemConfig c;
  auto get = [&j](const char* field, auto& dst) {
    if (!j.contains(field)) {
      throw std::runtime_error(std::string("parse error: config is missing field '") + field + "'");
    }
    try {
      j.at(field).get_to(dst);
    } catch (const json::exception&) {
      throw std::runtime_error(std::string("parse error: config field '") + field +
                               "' has the wrong type");
    }
  };
  get("K", c.K);
  get("Nt", c.Nt);
  get("Nr", c.Nr);
  get("Nre", c.Nre);
  get("d", c.d);
  get("Pt", c.Pt);
  get("sigma2", c.sigma2);
  return c;
}

void save_channels(const ChannelSet& cs, const std::filesystem::path& path) {
  json j;
  j["config"] = config_to_json(cs.config);
  j["seed"] = cs.seed;
  json chans = json::array();
  for (int rx = 0; rx <= cs.config.K; ++rx) {
    for (int tx = 0; tx < cs.config.K; ++tx) {
      const CMat& H = cs.H(rx, tx);
      json data = json::array();
      for (Eigen::Index i = 0; i < H.rows(); ++i) {
        for (Eigen::Index jx = 0; jx < H.cols(); ++jx) {
          data.push_back(json::array({H(i, jx).real(), H(i, jx).imag()}));
        }
      }
      chans.push_back(json{{"rx", rx + 1},
                           {"tx", tx + 1},
                           {"rows", H.rows()},
                           {"cols", H.cols()},
                           {"data", std::move(data)}});
    }
  }
  j["channels"] = std::move(chans);
  atomic_write_text(path, j.dump());
}

ChannelSet load_channels(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open channel file '" + path.string() + "'");
  }
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("parse error: channel file '" + path.string() +
                             "' is not valid JSON: " + e.what());
  }
  if (!j.contains("config")) throw std::runtime_error("parse error: missing field 'config'");
  if (!j.contains("seed")) throw std::runtime_error("parse error: missing field 'seed'");
  if (!j.contains("channels")) throw std::runtime_error("parse error: missing field 'channels'");

  ChannelSet cs;
  cs.config = config_from_json(j.at("config"));
  validate(cs.config);
  try {
    j.at("seed").get_to(cs.seed);
  } catch (const json::exception&) {
    throw std::runtime_error("parse error: field 'seed' has the wrong type");
  }

  const int K = cs.config.K;
  cs.mats.assign(static_cast<std::size_t>(K + 1) * K, CMat());
  std::vector<bool> seen(cs.mats.size(), false);
  const json& chans = j.at("channels");
  if (!chans.is_array()) throw std::runtime_error("parse error: field 'channels' must be an array");
  for (const json& e : chans) {
    int rx1 = 0, tx1 = 0;
    long long rows = 0, cols = 0;
    try {
      e.at("rx").get_to(rx1);
      e.at("tx").get_to(tx1);
      e.at("rows").get_to(rows);
      e.at("cols").get_to(cols);
    } catch (const json::exception&) {
      throw std::runtime_error("parse error: channel entry missing rx/tx/rows/cols");
    }
    std::string link = "(" + std::to_string(rx1) + "," + std::to_string(tx1) + ")";
    if (rx1 < 1 || rx1 > K + 1 || tx1 < 1 || tx1 > K) {
      throw std::runtime_error("integrity error: channel " + link + " is out of range for K=" +
                               std::to_string(K));
    }
    const int rx = rx1 - 1, tx = tx1 - 1;
    const long long want_rows = rx == K ? cs.config.Nre : cs.config.Nr;
    const long long want_cols = cs.config.Nt;
    if (rows != want_rows || cols != want_cols) {
      throw std::runtime_error("integrity error: channel " + link + " has size " +
                               std::to_string(rows) + "x" + std::to_string(cols) + ", expected " +
                               std::to_string(want_rows) + "x" + std::to_string(want_cols));
    }
    const json& data = e.at("data");
    if (!data.is_array() || data.size() != static_cast<std::size_t>(rows * cols)) {
      throw std::runtime_error("parse error: channel " + link + " field 'data' must hold " +
                               std::to_string(rows * cols) + " [re, im] pairs");
    }
    CMat H(rows, cols);
    std::size_t idx = 0;
    for (long long i = 0; i < rows; ++i) {
      for (long long jx = 0; jx < cols; ++jx, ++idx) {
        const json& pair = data[idx];
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
          throw std::runtime_error("parse error: channel " + link + " entry " +
                                   std::to_string(idx) + " is not an [re, im] pair");
        }
        double re = pair[0].get<double>();
        double im = pair[1].get<double>();
        if (!std::isfinite(re) || !std::isfinite(im)) {
          throw std::runtime_error("integrity error: channel " + link + " entry " +
                                   std::to_string(idx) + " is not finite");
        }
        H(i, jx) = Complex(re, im);
      }
    }
    const std::size_t slot = static_cast<std::size_t>(rx) * K + tx;
    if (seen[slot]) {
      throw std::runtime_error("integrity error: channel " + link + " appears more than once");
    }
    seen[slot] = true;
    cs.mats[slot] = std::move(H);
  }
  for (int rx = 0; rx <= K; ++rx) {
    for (int tx = 0; tx < K; ++tx) {
      if (!seen[static_cast<std::size_t>(rx) * K + tx]) {
        throw std::runtime_error("integrity error: channel (" + std::to_string(rx + 1) + "," +
                                 std::to_string(tx + 1) + ") is missing");
      }
    }
  }
  return cs;
}

}  // namespace wslm
