#include "epsrw/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace epsrw {

void to_json(nlohmann::json& j, const RunManifest& m) {
  j = nlohmann::json{{"config", m.config},   {"seed", m.seed},
                     {"code_version", m.code_version}, {"started", m.started},
                     {"finished", m.finished},         {"result", m.result}};
}

void from_json(const nlohmann::json& j, RunManifest& m) {
  m.config = j.at("config").get<SimConfig>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.code_version = j.at("code_version").get<std::string>();
  m.started = j.value("started", std::string{});
  m.finished = j.value("finished", std::string{});
  m.result = j.value("result", nlohmann::json::object());
}

std::string iso8601_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
  return buf;
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path.string());
  }
  out << content;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open for reading: " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // prefer the shortest representation that round-trips
  for (int prec = 1; prec <= 17; ++prec) {
    char cand[32];
    std::snprintf(cand, sizeof cand, "%.*g", prec, v);
    double back;
    std::sscanf(cand, "%lf", &back);
    if (back == v) return cand;
  }
  return buf;
}

std::string trajectory_csv_header(TimeMode mode) {
  return mode == TimeMode::discrete ? "trial,step,position" : "trial,time,position";
}

void append_trajectory_csv(std::string& out, std::int64_t trial, const Trajectory& traj) {
  for (std::size_t n = 0; n < traj.positions.size(); ++n) {
    out += std::to_string(trial);
    out += ',';
    if (traj.jump_times.empty()) {
      out += std::to_string(n);
    } else {
      out += n == 0 ? std::string("0") : format_double(traj.jump_times[n - 1]);
    }
    out += ',';
    out += std::to_string(traj.positions[n]);
    out += '\n';
  }
}

void append_pair_csv(std::string& out, std::int64_t pair_id, const Trajectory& forward,
                     const Trajectory& backward) {
  const auto emit = [&](const char* role, const Trajectory& traj) {
    for (std::size_t n = 0; n < traj.positions.size(); ++n) {
      out += std::to_string(pair_id);
      out += ',';
      out += role;
      out += ',';
      out += std::to_string(n);
      out += ',';
      out += std::to_string(traj.positions[n]);
      out += '\n';
    }
  };
  emit("forward", forward);
  emit("backward", backward);
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "epsilon,mean,se,ci_low,ci_high,exact_speed\n";
  for (const auto& r : rows) {
    out += format_double(r.epsilon);
    out += ',';
    out += format_double(r.mean);
    out += ',';
    out += format_double(r.se);
    out += ',';
    out += format_double(r.ci_low);
    out += ',';
    out += format_double(r.ci_high);
    out += ',';
    if (r.exact) out += format_double(*r.exact);
    out += '\n';
  }
  return out;
}

}  // namespace epsrw
