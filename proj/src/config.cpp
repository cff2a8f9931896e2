#include "vlcsec/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace vlcsec {

namespace pt = boost::property_tree;

ConfigError::ConfigError(const std::string& what, int line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line)
{
}

namespace {

const std::vector<std::string> kSections{"room", "luminaires", "led", "pd", "noise", "modulation",
                                         "utility", "learner", "run", "setups"};

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

// Line numbers of section headers and keys, for diagnostics. The INI
// grammar itself is validated by boost's parser.
struct LineIndex {
    std::map<std::string, int> sections;
    std::map<std::pair<std::string, std::string>, int> keys;

    explicit LineIndex(const std::string& text)
    {
        std::istringstream in(text);
        std::string line;
        std::string section;
        int n = 0;
        while (std::getline(in, line)) {
            ++n;
            const std::string t = trim(line);
            if (t.empty() || t[0] == ';') continue;
            if (t.front() == '[' && t.back() == ']') {
                section = trim(std::string_view(t).substr(1, t.size() - 2));
                sections.emplace(section, n);
            } else if (const auto eq = t.find('='); eq != std::string::npos) {
                keys.emplace(std::make_pair(section, trim(std::string_view(t).substr(0, eq))), n);
            }
        }
    }

    int key_line(const std::string& section, const std::string& key) const
    {
        const auto it = keys.find({section, key});
        return it == keys.end() ? 0 : it->second;
    }
    int section_line(const std::string& section) const
    {
        const auto it = sections.find(section);
        return it == sections.end() ? 0 : it->second;
    }
};

class Section {
public:
    Section(const pt::ptree& tree, std::string name, const LineIndex& lines)
        : name_(std::move(name)), lines_(lines)
    {
        const auto it = tree.find(name_);
        if (it == tree.not_found()) throw ConfigError("missing [" + name_ + "] section");
        node_ = &it->second;
    }

    const pt::ptree& node() const { return *node_; }
    const std::string& name() const { return name_; }

    bool has(const std::string& key) const { return node_->find(key) != node_->not_found(); }

    std::string raw(const std::string& key)
    {
        const auto it = node_->find(key);
        if (it == node_->not_found())
            throw ConfigError("[" + name_ + "] missing key '" + key + "'", lines_.section_line(name_));
        used_.insert(key);
        return trim(it->second.data());
    }

    [[noreturn]] void fail(const std::string& key, const std::string& what) const
    {
        throw ConfigError("[" + name_ + "] " + key + ": " + what, lines_.key_line(name_, key));
    }

    double real(const std::string& key) { return to_real(key, raw(key)); }

    std::optional<double> optional_real(const std::string& key)
    {
        if (!has(key)) return std::nullopt;
        return real(key);
    }

    template <class Int>
    Int integer(const std::string& key)
    {
        return to_int<Int>(key, raw(key));
    }

    bool boolean(const std::string& key)
    {
        const std::string v = raw(key);
        if (v == "true") return true;
        if (v == "false") return false;
        fail(key, "expected true or false, got '" + v + "'");
    }

    std::vector<double> reals(const std::string& key) { return reals_of(key, raw(key)); }

    std::vector<int> ints(const std::string& key)
    {
        std::vector<int> out;
        for (const auto& item : split(raw(key), ',')) out.push_back(to_int<int>(key, item));
        return out;
    }

    std::vector<std::string> words(const std::string& key)
    {
        std::vector<std::string> out;
        const std::string v = raw(key);
        if (v.empty()) return out;
        for (auto& item : split(v, ',')) {
            if (item.empty()) fail(key, "empty list item");
            out.push_back(std::move(item));
        }
        return out;
    }

    Vec3 vec3(const std::string& key, const std::string& text)
    {
        const auto v = reals_of(key, text);
        if (v.size() != 3) fail(key, "expected three coordinates, got " + std::to_string(v.size()));
        return Vec3{v[0], v[1], v[2]};
    }

    void reject_unknown() const
    {
        for (const auto& [key, value] : *node_)
            if (!used_.contains(key)) fail(key, "unknown key");
    }

    void mark_used(const std::string& key) { used_.insert(key); }

private:
    double to_real(const std::string& key, const std::string& text) const
    {
        double v = 0.0;
        const auto* end = text.data() + text.size();
        const auto [ptr, ec] = std::from_chars(text.data(), end, v);
        if (ec != std::errc() || ptr != end || !std::isfinite(v)) fail(key, "expected a real number, got '" + text + "'");
        return v;
    }

    template <class Int>
    Int to_int(const std::string& key, const std::string& text) const
    {
        Int v = 0;
        const auto* end = text.data() + text.size();
        const auto [ptr, ec] = std::from_chars(text.data(), end, v);
        if (ec != std::errc() || ptr != end) fail(key, "expected an integer, got '" + text + "'");
        return v;
    }

    std::vector<double> reals_of(const std::string& key, const std::string& text) const
    {
        std::vector<double> out;
        for (const auto& item : split(text, ',')) out.push_back(to_real(key, item));
        return out;
    }

    std::string name_;
    const LineIndex& lines_;
    const pt::ptree* node_ = nullptr;
    std::set<std::string> used_;
};

template <class Fn>
void checked(Section& s, const std::string& key, Fn&& validate)
{
    try {
        validate();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        s.fail(key, e.what());
    }
}

std::string fmt_real(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string fmt_vec3(const Vec3& v) { return fmt_real(v.x) + ", " + fmt_real(v.y) + ", " + fmt_real(v.z); }

template <class T, class F>
std::string join(const std::vector<T>& items, F&& fmt)
{
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ", ";
        out += fmt(items[i]);
    }
    return out;
}

}  // namespace

ExperimentConfig parse_config(std::istream& is)
{
    const std::string text{std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
    const LineIndex lines(text);

    pt::ptree tree;
    try {
        std::istringstream in(text);
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(e.message(), static_cast<int>(e.line()));
    }

    for (const auto& [name, node] : tree) {
        if (std::find(kSections.begin(), kSections.end(), name) == kSections.end())
            throw ConfigError("unknown section [" + name + "]", lines.section_line(name));
    }

    ExperimentConfig c;

    Section room(tree, "room", lines);
    c.room_dimensions = room.vec3("dimensions_m", room.raw("dimensions_m"));
    room.reject_unknown();

    Section lum(tree, "luminaires", lines);
    c.luminaire_positions.clear();
    for (const auto& [key, value] : lum.node()) {
        lum.mark_used(key);
        c.luminaire_positions.push_back(lum.vec3(key, trim(value.data())));
    }
    if (c.luminaire_positions.empty()) throw ConfigError("[luminaires] lists no luminaires", lines.section_line("luminaires"));

    Section led(tree, "led", lines);
    c.beam_angle_deg = led.real("beam_angle_deg");
    c.transmit_power_w = led.real("transmit_power_w");
    c.conversion_factor_w_per_a = led.real("conversion_factor_w_per_a");
    c.modulation_index = led.real("modulation_index");
    checked(led, "beam_angle_deg", [&] { lambertian_order(c.beam_angle_deg / 2.0); });
    if (!(c.transmit_power_w > 0.0)) led.fail("transmit_power_w", "must be positive");
    if (!(c.conversion_factor_w_per_a > 0.0)) led.fail("conversion_factor_w_per_a", "must be positive");
    if (!(c.modulation_index >= 0.0 && c.modulation_index <= 1.0)) led.fail("modulation_index", "must lie in [0, 1]");
    led.reject_unknown();

    Section pd(tree, "pd", lines);
    c.active_area_cm2 = pd.real("active_area_cm2");
    c.responsivity_a_per_w = pd.real("responsivity_a_per_w");
    c.fov_deg = pd.real("fov_deg");
    c.filter_gain = pd.real("filter_gain");
    c.concentrator_index = pd.real("concentrator_index");
    checked(pd, "fov_deg", [&] {
        Receiver{{}, c.active_area_cm2 * 1e-4, c.fov_deg / 2.0, c.filter_gain, c.concentrator_index}.validate();
    });
    if (!(c.responsivity_a_per_w > 0.0)) pd.fail("responsivity_a_per_w", "must be positive");
    pd.reject_unknown();

    Section noise(tree, "noise", lines);
    c.average_power_dbm = noise.real("average_power_dbm");
    c.bob_power_dbm = noise.optional_real("bob_power_dbm");
    c.eve_power_dbm = noise.optional_real("eve_power_dbm");
    if (noise.has("half_width_sigmas")) c.half_width_sigmas = noise.real("half_width_sigmas");
    if (noise.has("rel_tol")) c.rel_tol = noise.real("rel_tol");
    if (noise.has("max_subdivisions")) c.max_subdivisions = noise.integer<int>("max_subdivisions");
    checked(noise, "half_width_sigmas",
            [&] { QuadratureConfig{c.half_width_sigmas, c.rel_tol, c.max_subdivisions}.validate(); });
    noise.reject_unknown();

    Section mod(tree, "modulation", lines);
    c.orders = mod.ints("orders");
    for (int m : c.orders)
        if (!is_supported_order(m)) mod.fail("orders", "unsupported PAM order " + std::to_string(m));
    c.quant_levels = mod.integer<int>("quant_levels");
    if (c.quant_levels < 1) mod.fail("quant_levels", "must be >= 1");
    if (mod.has("max_actions")) c.max_actions = mod.integer<std::uint64_t>("max_actions");
    mod.reject_unknown();

    Section util(tree, "utility", lines);
    c.weights.delta = util.real("bob_ber_coefficient");
    c.weights.zeta = util.real("eve_ber_coefficient");
    if (util.has("clamp_secrecy")) c.clamp_secrecy = util.boolean("clamp_secrecy");
    checked(util, "bob_ber_coefficient", [&] { c.weights.validate(); });
    util.reject_unknown();

    Section learn(tree, "learner", lines);
    c.learner.learning_rate = learn.real("learning_rate");
    c.learner.discount = learn.real("discount");
    c.learner.epsilon_start = learn.real("epsilon_start");
    c.learner.epsilon_end = learn.real("epsilon_end");
    c.learner.epsilon_decay_slots = learn.integer<int>("epsilon_decay_slots");
    checked(learn, "learning_rate", [&] { c.learner.validate(); });
    if (learn.has("ber_bins")) c.bins.ber_bins = learn.integer<int>("ber_bins");
    if (learn.has("ber_floor")) c.bins.ber_floor = learn.real("ber_floor");
    if (learn.has("cs_bins")) c.bins.cs_bins = learn.integer<int>("cs_bins");
    if (learn.has("cs_min_bits")) c.bins.cs_min = learn.real("cs_min_bits");
    if (learn.has("cs_max_bits")) c.bins.cs_max = learn.real("cs_max_bits");
    checked(learn, "ber_bins", [&] { c.bins.validate(); });
    learn.reject_unknown();

    Section run(tree, "run", lines);
    c.num_slots = run.integer<int>("num_slots");
    if (c.num_slots < 1) run.fail("num_slots", "must be >= 1");
    c.seed = run.integer<std::uint64_t>("seed");
    c.summary_window = run.integer<int>("summary_window");
    if (c.summary_window < 1 || c.summary_window > c.num_slots)
        run.fail("summary_window", "must lie in [1, num_slots]");
    c.baselines = run.words("baselines");
    if (run.has("static_precoder")) c.static_precoder = run.reals("static_precoder");
    run.reject_unknown();

    Section setups(tree, "setups", lines);
    for (const auto& [key, value] : setups.node()) {
        setups.mark_used(key);
        const auto halves = split(value.data(), '|');
        if (halves.size() != 2) setups.fail(key, "expected '<bob x, y, z> | <eve x, y, z>'");
        c.setups.push_back(SetupPositions{key, setups.vec3(key, halves[0]), setups.vec3(key, halves[1])});
    }
    if (c.setups.empty()) throw ConfigError("[setups] lists no setups", lines.section_line("setups"));

    for (const auto& token : c.baselines) {
        try {
            parse_mode(token, c);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("[run] baselines: ") + e.what(), lines.key_line("run", "baselines"));
        }
    }
    for (const auto& s : c.setups) {
        for (const Vec3* rx : {&s.bob, &s.eve})
            for (const auto& p : c.luminaire_positions)
                if (!(p.z > rx->z))
                    throw ConfigError("[setups] " + s.name + ": receivers must sit below every luminaire",
                                      lines.key_line("setups", s.name));
    }
    return c;
}

ExperimentConfig parse_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in);
}

std::string emit_config(const ExperimentConfig& c)
{
    std::ostringstream os;
    os << "[room]\n"
       << "dimensions_m = " << fmt_vec3(c.room_dimensions) << "\n\n";

    os << "[luminaires]\n";
    for (std::size_t i = 0; i < c.luminaire_positions.size(); ++i)
        os << "led" << i + 1 << " = " << fmt_vec3(c.luminaire_positions[i]) << '\n';

    os << "\n[led]\n"
       << "beam_angle_deg = " << fmt_real(c.beam_angle_deg) << '\n'
       << "transmit_power_w = " << fmt_real(c.transmit_power_w) << '\n'
       << "conversion_factor_w_per_a = " << fmt_real(c.conversion_factor_w_per_a) << '\n'
       << "modulation_index = " << fmt_real(c.modulation_index) << '\n';

    os << "\n[pd]\n"
       << "active_area_cm2 = " << fmt_real(c.active_area_cm2) << '\n'
       << "responsivity_a_per_w = " << fmt_real(c.responsivity_a_per_w) << '\n'
       << "fov_deg = " << fmt_real(c.fov_deg) << '\n'
       << "filter_gain = " << fmt_real(c.filter_gain) << '\n'
       << "concentrator_index = " << fmt_real(c.concentrator_index) << '\n';

    os << "\n[noise]\n"
       << "average_power_dbm = " << fmt_real(c.average_power_dbm) << '\n';
    if (c.bob_power_dbm) os << "bob_power_dbm = " << fmt_real(*c.bob_power_dbm) << '\n';
    if (c.eve_power_dbm) os << "eve_power_dbm = " << fmt_real(*c.eve_power_dbm) << '\n';
    os << "half_width_sigmas = " << fmt_real(c.half_width_sigmas) << '\n'
       << "rel_tol = " << fmt_real(c.rel_tol) << '\n'
       << "max_subdivisions = " << c.max_subdivisions << '\n';

    os << "\n[modulation]\n"
       << "orders = " << join(c.orders, [](int m) { return std::to_string(m); }) << '\n'
       << "quant_levels = " << c.quant_levels << '\n'
       << "max_actions = " << c.max_actions << '\n';

    os << "\n[utility]\n"
       << "bob_ber_coefficient = " << fmt_real(c.weights.delta) << '\n'
       << "eve_ber_coefficient = " << fmt_real(c.weights.zeta) << '\n'
       << "clamp_secrecy = " << (c.clamp_secrecy ? "true" : "false") << '\n';

    os << "\n[learner]\n"
       << "learning_rate = " << fmt_real(c.learner.learning_rate) << '\n'
       << "discount = " << fmt_real(c.learner.discount) << '\n'
       << "epsilon_start = " << fmt_real(c.learner.epsilon_start) << '\n'
       << "epsilon_end = " << fmt_real(c.learner.epsilon_end) << '\n'
       << "epsilon_decay_slots = " << c.learner.epsilon_decay_slots << '\n'
       << "ber_bins = " << c.bins.ber_bins << '\n'
       << "ber_floor = " << fmt_real(c.bins.ber_floor) << '\n'
       << "cs_bins = " << c.bins.cs_bins << '\n'
       << "cs_min_bits = " << fmt_real(c.bins.cs_min) << '\n'
       << "cs_max_bits = " << fmt_real(c.bins.cs_max) << '\n';

    os << "\n[run]\n"
       << "num_slots = " << c.num_slots << '\n'
       << "seed = " << c.seed << '\n'
       << "summary_window = " << c.summary_window << '\n'
       << "baselines = " << join(c.baselines, [](const std::string& s) { return s; }) << '\n';
    if (!c.static_precoder.empty()) os << "static_precoder = " << join(c.static_precoder, fmt_real) << '\n';

    os << "\n[setups]\n";
    for (const auto& s : c.setups) os << s.name << " = " << fmt_vec3(s.bob) << " | " << fmt_vec3(s.eve) << '\n';
    return os.str();
}

ExperimentConfig default_config()
{
    ExperimentConfig c;
    const double r = std::sqrt(5.0);
    c.luminaire_positions = {{-r, -r, 3.0}, {r, -r, 3.0}, {r, r, 3.0}, {-r, r, 3.0}};
    c.setups = {{"setup1", {0.0, 0.0, 0.5}, {1.0, 0.0, 0.5}},
                {"setup2", {-1.0, -1.0, 0.5}, {-3.0, -3.0, 0.5}},
                {"setup3", {-2.0, -2.0, 0.5}, {-5.0, -5.0, 0.5}}};
    return c;
}

double sigma_from_dbm(double dbm) { return std::sqrt(std::pow(10.0, (dbm - 30.0) / 10.0)); }

std::vector<Scenario> build_scenarios(const ExperimentConfig& c)
{
    const double semi_angle = c.beam_angle_deg / 2.0;
    std::vector<Luminaire> lums;
    for (const auto& p : c.luminaire_positions) lums.push_back(Luminaire::at(p, semi_angle));

    DriveParams drive;
    drive.dc_bias = c.transmit_power_w / c.conversion_factor_w_per_a;
    drive.modulation_index = c.modulation_index;
    drive.led_conversion = c.conversion_factor_w_per_a;
    drive.pd_responsivity = c.responsivity_a_per_w;

    auto receiver = [&c](const Vec3& at) {
        return Receiver{at, c.active_area_cm2 * 1e-4, c.fov_deg / 2.0, c.filter_gain, c.concentrator_index};
    };

    std::vector<Scenario> out;
    for (const auto& s : c.setups) {
        Scenario sc;
        sc.name = s.name;
        sc.luminaires = lums;
        sc.drive = drive;
        sc.bob = receiver(s.bob);
        sc.eve = receiver(s.eve);
        sc.sigma_bob = sigma_from_dbm(c.bob_power_dbm.value_or(c.average_power_dbm));
        sc.sigma_eve = sigma_from_dbm(c.eve_power_dbm.value_or(c.average_power_dbm));
        sc.validate();
        out.push_back(std::move(sc));
    }
    return out;
}

RunMode parse_mode(const std::string& token, const ExperimentConfig& c)
{
    auto order_after = [&token](std::size_t prefix) {
        int m = 0;
        const auto* end = token.data() + token.size();
        const auto [ptr, ec] = std::from_chars(token.data() + prefix, end, m);
        if (ec != std::errc() || ptr != end || !is_supported_order(m))
            throw std::invalid_argument("bad run mode '" + token + "'");
        return m;
    };
    if (token == "adaptive") return RunMode::adaptive();
    if (token.starts_with("fixed")) return RunMode::fixed_order(order_after(5));
    if (token.starts_with("static")) {
        const int m = order_after(6);
        if (c.static_precoder.size() != c.luminaire_positions.size())
            throw std::invalid_argument("mode '" + token + "' needs [run] static_precoder with one weight per luminaire");
        Precoder w{c.static_precoder};
        if (w.inf_norm() > 1.0) throw std::invalid_argument("static_precoder violates |w_n| <= 1");
        return RunMode::fixed_both(m, w);
    }
    throw std::invalid_argument("unknown run mode '" + token + "' (expected adaptive, fixed<M> or static<M>)");
}

std::vector<RunMode> configured_modes(const ExperimentConfig& c)
{
    std::vector<RunMode> modes{RunMode::adaptive()};
    for (const auto& token : c.baselines) modes.push_back(parse_mode(token, c));
    return modes;
}

RunConfig make_run_config(const ExperimentConfig& c, const RunMode& mode, std::uint64_t seed)
{
    RunConfig r;
    r.num_slots = c.num_slots;
    r.seed = seed;
    r.weights = c.weights;
    r.learner = c.learner;
    r.mode = mode;
    r.summary_window = c.summary_window;
    r.orders = c.orders;
    r.quant_levels = c.quant_levels;
    r.max_actions = static_cast<std::size_t>(c.max_actions);
    r.bins = c.bins;
    r.quadrature = QuadratureConfig{c.half_width_sigmas, c.rel_tol, c.max_subdivisions};
    r.clamp_secrecy = c.clamp_secrecy;
    return r;
}

}  // namespace vlcsec
