#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "brownspec/simkit.hpp"

namespace brownspec::cli {

// Shortest decimal form that parses back to the same double.
std::string format_double(double x);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;
};

std::string csv_text(const CsvTable& table);
void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);
CsvTable parse_csv(const std::string& text, const std::string& source = "<string>");

// Binary trajectory file, little-endian throughout:
//   char[8] "BSTRAJ\0\0", u32 version, u32 dims, f64 dt, u64 n_steps,
//   u32 medium tag, u32 reserved (0), u64 trajectory index, u64 seed,
//   then dims*n_steps velocity values (axis-major), then the same for position.
inline constexpr std::uint32_t kTrajectoryVersion = 1;

struct TrajectoryFile {
    std::uint32_t version = kTrajectoryVersion;
    std::uint32_t dims = 0;
    double dt = 0.0;
    std::uint64_t n_steps = 0;
    std::uint32_t medium_tag = 0; // MediumKind as integer
    std::uint64_t index = 0;
    std::uint64_t seed = 0;
    std::vector<double> velocity;
    std::vector<double> position;
};

std::string trajectory_bytes(const Ensemble& ens, std::size_t local_index);
void write_trajectory(const std::string& path, const Ensemble& ens, std::size_t local_index);
TrajectoryFile read_trajectory(const std::string& path);

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::string& path);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

} // namespace brownspec::cli
