#pragma once

// Episode CSV files, summary documents and the on-disk result layout
// <out>/<scenario>/<mode>/seed<k>.csv consumed by the plotting scripts.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "vlcsec/experiment.hpp"

namespace vlcsec {

/// "slot,M,w_1,...,w_N,C_s_bits,ber_bob,ber_eve,utility,epsilon,greedy"
std::string csv_header(int num_leds);

/// One row per slot; reals with 17 significant digits, greedy as 0/1.
void write_episode_csv(std::ostream& os, const std::vector<TimeSlotLog>& logs, int num_leds);

std::filesystem::path episode_dir(const std::filesystem::path& out, const std::string& scenario,
                                  const std::string& mode);
std::filesystem::path episode_csv_path(const std::filesystem::path& out, const std::string& scenario,
                                       const std::string& mode, std::uint64_t seed);

nlohmann::ordered_json to_json(const Summary& s);

/// Writes `text` to `path`, creating parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace vlcsec
