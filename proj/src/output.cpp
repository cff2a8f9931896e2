#include "vlcsec/output.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace vlcsec {

namespace {

void put_real(std::ostream& os, double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
}

nlohmann::ordered_json stat_json(const Stat& s) { return {{"mean", s.mean}, {"min", s.min}, {"max", s.max}}; }

}  // namespace

std::string csv_header(int num_leds)
{
    std::string h = "slot,M";
    for (int n = 1; n <= num_leds; ++n) h += ",w_" + std::to_string(n);
    h += ",C_s_bits,ber_bob,ber_eve,utility,epsilon,greedy";
    return h;
}

void write_episode_csv(std::ostream& os, const std::vector<TimeSlotLog>& logs, int num_leds)
{
    os << csv_header(num_leds) << '\n';
    for (const auto& l : logs) {
        if (static_cast<int>(l.weights.size()) != num_leds)
            throw std::invalid_argument("log record precoder length does not match the CSV header");
        os << l.slot << ',' << l.order;
        for (double w : l.weights) {
            os << ',';
            put_real(os, w);
        }
        for (double v : {l.secrecy_capacity, l.ber_bob, l.ber_eve, l.utility, l.epsilon}) {
            os << ',';
            put_real(os, v);
        }
        os << ',' << (l.greedy ? 1 : 0) << '\n';
    }
}

std::filesystem::path episode_dir(const std::filesystem::path& out, const std::string& scenario,
                                  const std::string& mode)
{
    return out / scenario / mode;
}

std::filesystem::path episode_csv_path(const std::filesystem::path& out, const std::string& scenario,
                                       const std::string& mode, std::uint64_t seed)
{
    return episode_dir(out, scenario, mode) / ("seed" + std::to_string(seed) + ".csv");
}

nlohmann::ordered_json to_json(const Summary& s)
{
    nlohmann::ordered_json j;
    j["window"] = s.window;
    j["C_s_bits"] = stat_json(s.secrecy_capacity);
    j["ber_bob"] = stat_json(s.ber_bob);
    j["ber_eve"] = stat_json(s.ber_eve);
    j["utility"] = stat_json(s.utility);
    j["modal_action"] = {{"index", s.modal_action}, {"M", s.modal_order}, {"w", s.modal_weights}};
    j["greedy_fraction"] = s.greedy_fraction;
    return j;
}

void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace vlcsec
