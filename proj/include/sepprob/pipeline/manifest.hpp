#ifndef SEPPROB_PIPELINE_MANIFEST_HPP
#define SEPPROB_PIPELINE_MANIFEST_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace sepprob {

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

/// Writes `content` to `path` through a temporary file and a rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

struct FileDigest {
  std::string path;
  std::string sha256;
};

/// Record of one CLI run: what was asked, what was read, what was written.
/// Timestamps live only here, never in the primary outputs.
class RunManifest {
 public:
  RunManifest(std::string command, std::vector<std::string> argv);

  void set_flag(const std::string& name, const std::string& value) { flags_[name] = value; }
  void add_seed(std::uint64_t seed) { seeds_.push_back(seed); }
  void add_input(const std::filesystem::path& path);
  void add_output(const std::filesystem::path& path);

  const std::vector<FileDigest>& outputs() const { return outputs_; }
  std::string to_json() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::string command_;
  std::vector<std::string> argv_;
  std::map<std::string, std::string> flags_;
  std::vector<std::uint64_t> seeds_;
  std::vector<FileDigest> inputs_;
  std::vector<FileDigest> outputs_;
  std::string started_;
};

const char* tool_version();

}  // namespace sepprob

#endif  // SEPPROB_PIPELINE_MANIFEST_HPP
