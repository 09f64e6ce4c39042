#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace testsupport {

inline std::filesystem::path data_dir() { return GEOSCI_DATA_DIR; }
inline std::filesystem::path wos_fixture() { return data_dir() / "fixtures/wos_is2009.txt"; }
inline std::filesystem::path scopus_fixture() { return data_dir() / "fixtures/scopus_is2009.csv"; }
inline std::filesystem::path gazetteer_file() { return data_dir() / "gazetteer.tsv"; }
inline std::filesystem::path coastline_file() { return data_dir() / "coastline/eurcoast.net"; }
inline std::string geosci_bin() { return GEOSCI_BIN; }

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// fresh scratch directory, removed on destruction
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::mt19937_64 rng{std::random_device{}()};
    dir_ = std::filesystem::temp_directory_path() /
           ("geosci-" + tag + "-" + std::to_string(rng()));
    std::filesystem::create_directories(dir_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(dir_, ec);
  }
  const std::filesystem::path& path() const { return dir_; }
  std::filesystem::path operator/(const std::string& name) const { return dir_ / name; }

 private:
  std::filesystem::path dir_;
};

// run a command, capture exit code (and optionally redirect stdout to a file)
inline int run_cmd(const std::string& cmd) {
  int rc = std::system(cmd.c_str());
  return rc < 0 ? rc : WEXITSTATUS(rc);
}

}  // namespace testsupport
