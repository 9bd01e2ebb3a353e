#include "sepprob/pipeline/manifest.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <chrono>
#include <ctime>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "sepprob/errors.hpp"

namespace sepprob {

using json = nlohmann::ordered_json;

namespace {

std::string utc_now() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json digests(const std::vector<FileDigest>& ds) {
  json out = json::array();
  for (const auto& d : ds) out.push_back({{"path", d.path}, {"sha256", d.sha256}});
  return out;
}

}  // namespace

const char* tool_version() { return SEPPROB_VERSION; }

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw NumericalError("sha256: digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return sha256_hex(ss.str());
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw InputError("write failed for " + path.string());
  }
  std::filesystem::rename(tmp, path);
}

RunManifest::RunManifest(std::string command, std::vector<std::string> argv)
    : command_(std::move(command)), argv_(std::move(argv)), started_(utc_now()) {}

void RunManifest::add_input(const std::filesystem::path& path) { inputs_.push_back({path.string(), sha256_file(path)}); }

void RunManifest::add_output(const std::filesystem::path& path) {
  outputs_.push_back({path.string(), sha256_file(path)});
}

std::string RunManifest::to_json() const {
  json doc;
  doc["command"] = command_;
  doc["argv"] = argv_;
  doc["flags"] = flags_;
  doc["seeds"] = seeds_;
  doc["inputs"] = digests(inputs_);
  doc["outputs"] = digests(outputs_);
  doc["tool_version"] = tool_version();
  doc["started"] = started_;
  doc["finished"] = utc_now();
  return doc.dump(2) + "\n";
}

void RunManifest::write(const std::filesystem::path& path) const { write_file_atomic(path, to_json()); }

}  // namespace sepprob
