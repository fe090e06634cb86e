// Shipped table files: location, SHA-256 checksums, JSON loading.
//
// The data directory is COHOMONE_DATA_DIR when set, else the compiled-in
// default.  Every file is listed in SHA256SUMS and verified on load.
#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "lie_catalog.hpp"

#ifndef COHOMONE_DEFAULT_DATA_DIR
#define COHOMONE_DEFAULT_DATA_DIR "data"
#endif

namespace cohomone {

using json = nlohmann::json;

struct ChecksumError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string data_dir() {
  if (const char* env = std::getenv("COHOMONE_DATA_DIR"); env && *env) return env;
  return COHOMONE_DEFAULT_DATA_DIR;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx, md, &len) != 1) {
    EVP_MD_CTX_free(ctx);
    fail("sha256 computation failed");
  }
  EVP_MD_CTX_free(ctx);
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

// SHA256SUMS lines: "<hex>  <file>"
inline std::map<std::string, std::string> read_checksums(const std::string& dir) {
  std::map<std::string, std::string> out;
  std::istringstream in(read_file(dir + "/SHA256SUMS"));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string hex, file;
    if (!(ls >> hex >> file)) fail("malformed SHA256SUMS line: " + line);
    out[file] = hex;
  }
  return out;
}

// Throws ChecksumError when the file is not listed or its digest differs.
inline std::string read_verified(const std::string& dir, const std::string& file) {
  auto sums = read_checksums(dir);
  auto it = sums.find(file);
  if (it == sums.end()) throw ChecksumError(file + " is not listed in SHA256SUMS");
  std::string bytes = read_file(dir + "/" + file);
  std::string got = sha256_hex(bytes);
  if (got != it->second)
    throw ChecksumError("checksum mismatch for " + file + ": expected " + it->second + ", got " + got);
  return bytes;
}

inline void verify_all_checksums(const std::string& dir) {
  for (auto& [file, hex] : read_checksums(dir)) {
    std::string got = sha256_hex(read_file(dir + "/" + file));
    if (got != hex) throw ChecksumError("checksum mismatch for " + file + ": expected " + hex + ", got " + got);
  }
}

inline json load_json(const std::string& dir, const std::string& file) {
  try {
    return json::parse(read_verified(dir, file));
  } catch (const json::parse_error& e) {
    fail(file + ": " + e.what());
  }
}

// Process-wide cache keyed by directory and file; loads are immutable.
inline const json& cached_json(const std::string& file) {
  static std::mutex mu;
  static std::map<std::string, json> cache;
  std::string key = data_dir() + "/" + file;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, load_json(data_dir(), file)).first;
  return it->second;
}

// SECTION affine parameter expressions

// Evaluates "2n+1", "n", "4k-1", "k+2", "7": an optional integer
// coefficient times one variable letter plus an optional constant.
inline int eval_affine(const std::string& expr, char var, int value) {
  std::string s;
  for (char c : expr)
    if (c != ' ') s += c;
  if (s.empty()) fail("empty parameter expression");
  long total = 0;
  size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    }
    long coef = 0;
    bool digits = false;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      coef = coef * 10 + (s[pos] - '0');
      ++pos;
      digits = true;
    }
    if (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) {
      if (s[pos] != var) fail("unknown variable in '" + expr + "'");
      ++pos;
      total += sign * (digits ? coef : 1) * value;
    } else {
      if (!digits) fail("bad parameter expression '" + expr + "'");
      total += sign * coef;
    }
  }
  return int(total);
}

// Replaces every {expr} in a template by its value.
inline std::string expand_template(const std::string& t, char var, int value) {
  std::string out;
  for (size_t i = 0; i < t.size(); ++i) {
    if (t[i] != '{') {
      out += t[i];
      continue;
    }
    size_t close = t.find('}', i);
    if (close == std::string::npos) fail("unclosed '{' in '" + t + "'");
    out += std::to_string(eval_affine(t.substr(i + 1, close - i - 1), var, value));
    i = close;
  }
  return out;
}

}  // namespace cohomone
