#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ghzpump {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flat key/value run configuration (dotted namespaces, '#' comments,
/// strict schema: unknown keys are rejected, values are type-checked).
class RunConfig {
  public:
    static RunConfig from_file(const std::string& path);
    static RunConfig from_string(const std::string& text);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    double number(const std::string& key) const;
    double number(const std::string& key, double fallback) const;
    int integer(const std::string& key, int fallback) const;
    bool boolean(const std::string& key, bool fallback) const;
    std::string text(const std::string& key, const std::string& fallback) const;
    std::vector<double> number_list(const std::string& key) const;
    std::vector<int> integer_list(const std::string& key, const std::vector<int>& fallback) const;

    /// Sorted "key = value" lines; the byte string the hash is taken over.
    std::string canonical() const;
    /// FNV-1a 64-bit hash of the canonical form, hex.
    std::string hash() const;

  private:
    std::map<std::string, std::string> values_;
};

struct RunOptions {
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    int threads = 1;
};

int run_params(const RunConfig& cfg, const RunOptions& opts);
int run_simulate(const RunConfig& cfg, const RunOptions& opts);
int run_sweep(const RunConfig& cfg, const RunOptions& opts);
int run_optimize(const RunConfig& cfg, const RunOptions& opts);
int run_ratemodel(const RunConfig& cfg, const RunOptions& opts);

/// Entry point shared by the CLI binary and the tests. Returns the process
/// exit code: 0 success, 2 configuration error, 3 numerical failure.
int run_command(const std::string& command, const RunConfig& cfg, const RunOptions& opts);

}  // namespace ghzpump
