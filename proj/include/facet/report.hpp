#pragma once

#include <chrono>
#include <filesystem>
#include <string>

#include <json.hpp>

namespace facet {

inline constexpr const char* kArtifactVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

/// Run report serialized to JSON. Wall-times go to a side file so the main
/// report stays bit-identical across runs of the same config.
class RunReport {
public:
  explicit RunReport(std::string command);

  nlohmann::json& inputs() { return j_["inputs"]; }
  nlohmann::json& outputs() { return j_["outputs"]; }
  nlohmann::json& diagnostics() { return j_["diagnostics"]; }

  void add_artifact(const std::string& key, const std::string& relpath);
  void time_section(const std::string& name, double seconds);

  void write(const std::filesystem::path& out_dir) const;
  const nlohmann::json& json() const { return j_; }

private:
  nlohmann::json j_;
  nlohmann::json timings_;
};

class StopWatch {
public:
  StopWatch() : t0_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_)
        .count();
  }

private:
  std::chrono::steady_clock::time_point t0_;
};

std::string format_double(double v);

} // namespace facet
