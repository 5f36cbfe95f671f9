#pragma once

#include <openssl/evp.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "padic/io.hpp"

namespace padic::cache {

namespace fs = std::filesystem;

inline std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

/// PADIC_CACHE_DIR, else $XDG_CACHE_HOME/padic, else ~/.cache/padic.
inline fs::path default_dir() {
  if (const char* d = std::getenv("PADIC_CACHE_DIR"); d && *d) return d;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return fs::path(x) / "padic";
  if (const char* h = std::getenv("HOME"); h && *h) return fs::path(h) / ".cache" / "padic";
  return fs::temp_directory_path() / "padic-cache";
}

inline std::string key(const std::string& command, const io::Json& params) {
  return sha256_hex(command + "\n" + params.dump() + "\n" + io::kArtifactVersion);
}

class Store {
 public:
  explicit Store(fs::path dir) : dir_(std::move(dir)) {}

  const fs::path& dir() const { return dir_; }

  std::optional<std::string> get(const std::string& k) const {
    std::ifstream in(dir_ / (k + ".json"));
    if (!in) return std::nullopt;
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      auto rec = io::Json::parse(ss.str());
      if (rec.at("content_hash").get<std::string>() != k) return std::nullopt;
      return rec.at("payload").get<std::string>();
    } catch (const std::exception&) {
      return std::nullopt;  // unreadable entries count as misses
    }
  }

  void put(const std::string& k, const std::string& command, const io::Json& params, const std::string& payload) {
    fs::create_directories(dir_);
    auto now = std::chrono::system_clock::now().time_since_epoch();
    io::Json rec{{"content_hash", k},
                 {"command", command},
                 {"params", params},
                 {"artifact_version", io::kArtifactVersion},
                 {"timestamp", std::to_string(std::chrono::duration_cast<std::chrono::seconds>(now).count())},
                 {"payload", payload}};
    std::random_device rd;
    fs::path tmp = dir_ / (k + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(rd()));
    {
      std::ofstream out(tmp, std::ios::binary);
      out << rec.dump();
      if (!out) throw std::runtime_error("cache write failed: " + tmp.string());
    }
    fs::rename(tmp, dir_ / (k + ".json"));
  }

 private:
  fs::path dir_;
};

}  // namespace padic::cache
