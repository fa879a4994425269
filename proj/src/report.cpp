#include "facet/report.hpp"

#include <cstdio>
#include <fstream>

namespace facet {

RunReport::RunReport(std::string command) {
  j_["artifact_version"] = kArtifactVersion;
  j_["schema_version"] = kSchemaVersion;
  j_["command"] = std::move(command);
  j_["timings_file"] = "timings.json";
  j_["inputs"] = nlohmann::json::object();
  j_["outputs"] = nlohmann::json::object();
  j_["diagnostics"] = nlohmann::json::object();
  j_["artifacts"] = nlohmann::json::object();
  timings_ = nlohmann::json::object();
}

void RunReport::add_artifact(const std::string& key,
                             const std::string& relpath) {
  j_["artifacts"][key] = relpath;
}

void RunReport::time_section(const std::string& name, double seconds) {
  timings_[name] = seconds;
}

void RunReport::write(const std::filesystem::path& out_dir) const {
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream os(out_dir / "report.json");
    os << j_.dump(2) << "\n";
  }
  {
    std::ofstream os(out_dir / "timings.json");
    os << timings_.dump(2) << "\n";
  }
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

} // namespace facet
